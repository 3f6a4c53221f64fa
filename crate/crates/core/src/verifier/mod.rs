//! The congruence catalog and the identity checkers.
//!
//! Every check is a pure function of its parameters returning a
//! [`CheckResult`]. Out-of-range parameters are not errors: they produce
//! [`CheckStatus::SkippedPrecondition`], so rectangular parameter sweeps are
//! total.

pub mod families;
pub mod karlsson_minton;
pub mod parametric;
pub mod proof_steps;
pub mod qbinomial;
pub mod theorems;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::polyarith::{Field, Fp0, Fp1, Fp2, Fp3, Fp4, Fp5, Rational, FAST_PRIMES};

pub use families::{a_exponent, ABase, ClosedForm, LinearTerm, Mutation, PochTerm, Rhs, SumFamily, Summand};
pub use karlsson_minton::verify_karlsson_minton;
pub use parametric::{verify_parametric, ParametricFamily};
pub use proof_steps::{verify_proof_step, ProofStep, StepArgs};
pub use qbinomial::{qbinomial_vanishing_sum, verify_qbinomial_at, verify_qbinomial_vanishing};
pub use theorems::{lhs_sum, lhs_sum_oracle, rhs_closed_form, verify_divisibility, verify_theorem, TheoremId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckStatus {
    Holds,
    Fails,
    SkippedPrecondition,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Holds => "HOLDS",
            CheckStatus::Fails => "FAILS",
            CheckStatus::SkippedPrecondition => "SKIPPED_PRECONDITION",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    List(Vec<i64>),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::List(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

pub type Params = BTreeMap<String, ParamValue>;

/// Build a parameter map from `(name, value)` pairs.
pub fn params(pairs: &[(&str, i64)]) -> Params {
    pairs
        .iter()
        .map(|&(k, v)| (k.to_string(), ParamValue::Int(v)))
        .collect()
}

/// Canonical `key=value;...` rendering used by the CSV report.
pub fn params_string(p: &Params) -> String {
    p.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

/// Outcome record of one verification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub params: Params,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub elapsed_ms: f64,
}

impl CheckResult {
    pub fn holds(&self) -> bool {
        self.status == CheckStatus::Holds
    }

    pub fn fails(&self) -> bool {
        self.status == CheckStatus::Fails
    }

    pub fn skipped(&self) -> bool {
        self.status == CheckStatus::SkippedPrecondition
    }
}

/// Result of a check body before timing and labelling.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Holds,
    Fails(String),
    Skipped(String),
}

impl Outcome {
    pub fn from_bool(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::Holds
        } else {
            Outcome::Fails(witness())
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::Fails(format!("error: {e}"))
    }
}

/// Exact rational arithmetic, or the probabilistic prime-field mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Arithmetic {
    #[default]
    Exact,
    Fast { seed: u64 },
}

/// Indices into [`FAST_PRIMES`] of the two distinct primes picked by `seed`.
pub fn fast_prime_indices(seed: u64) -> [usize; 2] {
    let n = FAST_PRIMES.len() as u64;
    let mixed = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17);
    let first = (mixed % n) as usize;
    let second = ((mixed / n) % (n - 1)) as usize;
    let second = if second >= first { second + 1 } else { second };
    [first, second]
}

/// A computation that can run over any coefficient field.
pub trait FieldTask {
    type Output;
    fn run<F: Field>(&self) -> Self::Output;
}

fn run_prime<T: FieldTask>(task: &T, idx: usize) -> T::Output {
    match idx {
        0 => task.run::<Fp0>(),
        1 => task.run::<Fp1>(),
        2 => task.run::<Fp2>(),
        3 => task.run::<Fp3>(),
        4 => task.run::<Fp4>(),
        5 => task.run::<Fp5>(),
        _ => unreachable!("prime index out of range"),
    }
}

/// Run a check body in the requested arithmetic. In fast mode the check must
/// hold modulo both sampled primes.
pub fn run_task<T: FieldTask<Output = Outcome>>(task: &T, arith: Arithmetic) -> Outcome {
    match arith {
        Arithmetic::Exact => task.run::<Rational>(),
        Arithmetic::Fast { seed } => {
            let mut out = Outcome::Holds;
            for idx in fast_prime_indices(seed) {
                match run_prime(task, idx) {
                    Outcome::Holds => {}
                    Outcome::Fails(w) => {
                        return Outcome::Fails(format!("mod {}: {w}", FAST_PRIMES[idx]));
                    }
                    skipped @ Outcome::Skipped(_) => out = skipped,
                }
            }
            out
        }
    }
}

/// Time a check body and wrap its outcome.
pub fn timed(id: &str, params: Params, body: impl FnOnce() -> Outcome) -> CheckResult {
    let start = Instant::now();
    let outcome = body();
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let (status, witness, note) = match outcome {
        Outcome::Holds => (CheckStatus::Holds, None, None),
        Outcome::Fails(w) => (CheckStatus::Fails, Some(w), None),
        Outcome::Skipped(why) => (CheckStatus::SkippedPrecondition, None, Some(why)),
    };
    CheckResult {
        id: id.to_string(),
        params,
        status,
        witness,
        note,
        elapsed_ms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_primes_are_distinct() {
        for seed in 0..200 {
            let [a, b] = fast_prime_indices(seed);
            assert_ne!(a, b);
            assert!(a < FAST_PRIMES.len() && b < FAST_PRIMES.len());
        }
    }

    #[test]
    fn params_render_canonically() {
        let mut p = params(&[("n", 7), ("d", 4)]);
        p.insert("n_list".into(), ParamValue::List(vec![1, 2]));
        assert_eq!(params_string(&p), "d=4;n=7;n_list=[1,2]");
    }

    #[test]
    fn status_serializes_in_screaming_case() {
        let s = serde_json::to_string(&CheckStatus::SkippedPrecondition).unwrap();
        assert_eq!(s, "\"SKIPPED_PRECONDITION\"");
    }
}
