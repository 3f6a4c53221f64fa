//! Consistency checks between independent routes to the same value, and the
//! negative-control mutation harness.

use crate::error::Result;
use crate::factored::FactoredSum;
use crate::padic::{balanced_sum_mod_p2, shadow_factors, PadicResidue};
use crate::cyclotomic::is_prime;
use crate::polyarith::{Field, Rational};
use crate::residue::ResidueRing;
use crate::verifier::parametric::check_parametric;
use crate::verifier::theorems::check_theorem;
use crate::verifier::{
    lhs_sum, lhs_sum_oracle, params, rhs_closed_form, run_task, timed, Arithmetic, FieldTask, CheckResult, Mutation, Outcome,
    ParametricFamily, SumFamily, TheoremId,
};

/// Which general-`r` sum a `q = 1` comparison uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShadowFamily {
    /// `F5_THM41`, the sum with a `(q^{r-d};q^d)_k` factor.
    Thm41,
    /// `F6_THM42`.
    Thm42,
}

impl ShadowFamily {
    pub fn name(self) -> &'static str {
        match self {
            ShadowFamily::Thm41 => "F5_THM41",
            ShadowFamily::Thm42 => "F6_THM42",
        }
    }

    pub fn theorem(self) -> TheoremId {
        match self {
            ShadowFamily::Thm41 => TheoremId::Thm41,
            ShadowFamily::Thm42 => TheoremId::Thm42,
        }
    }

    fn sum_family(self) -> SumFamily {
        match self {
            ShadowFamily::Thm41 => SumFamily::F5Thm41,
            ShadowFamily::Thm42 => SumFamily::F6Thm42,
        }
    }
}

/// Sum of the exact summands at `q = 1` for `k < p`, as a rational.
pub fn q_one_value(fam: ShadowFamily, d: i64, r: i64, p: i64) -> Result<Rational> {
    let s = fam.sum_family().summand(d, r);
    let mut sum = FactoredSum::new();
    for k in 0..p {
        sum.push_opt(s.factored(k, 0)?);
    }
    sum.eval_at_one()
}

/// The `q = 1` specialization of the cyclotomic-product summands, reduced
/// mod `p^2`, against the rising-factorial sum of the p-adic module.
pub fn verify_q_one_shadow(fam: ShadowFamily, d: i64, r: i64, p: i64) -> CheckResult {
    let id = format!("Q1_SHADOW_{}", fam.theorem().name());
    timed(&id, params(&[("d", d), ("r", r), ("p", p)]), || {
        if !(p >= 3 && is_prime(p as u64) && d > r && r >= 1) {
            return Outcome::Skipped("needs an odd prime p and d > r >= 1".into());
        }
        let body = || -> Result<Outcome> {
            let exact = q_one_value(fam, d, r, p)?;
            let lhs = PadicResidue::from_rational(&exact, p as u64, 2)?;
            let rhs = balanced_sum_mod_p2(&shadow_factors(fam == ShadowFamily::Thm41, d, r), p as u64)?;
            Ok(Outcome::from_bool(lhs == rhs, || format!("q = 1 route {lhs}, p-adic route {rhs}")))
        };
        body().unwrap_or_else(Outcome::from)
    })
}

/// The `r = 1` closed forms of the general-`r` theorems coincide with the
/// single-parameter closed forms, as elements of the `Phi_n^2` ring.
pub fn verify_r_one_collapse(d: i64, n: i64, arith: Arithmetic) -> CheckResult {
    timed("R1_COLLAPSE", params(&[("d", d), ("n", n)]), || {
        let (mixed, squared) = if d % 2 == 1 {
            (TheoremId::Eq14, TheoremId::Thm12)
        } else {
            (TheoremId::Thm11, TheoremId::Eq15)
        };
        let pairs: Vec<_> = [(TheoremId::Thm41, mixed), (TheoremId::Thm42, squared)]
            .into_iter()
            .filter(|(g, s)| g.precondition(d, 1, n).is_ok() && s.precondition(d, 1, n).is_ok())
            .collect();
        if pairs.is_empty() {
            return Outcome::Skipped("no shared range at this (d, n)".into());
        }
        run_task(&CollapseTask { d, n, pairs }, arith)
    })
}

struct CollapseTask {
    d: i64,
    n: i64,
    pairs: Vec<(TheoremId, TheoremId)>,
}

impl FieldTask for CollapseTask {
    type Output = Outcome;

    fn run<F: Field>(&self) -> Outcome {
        let body = || -> Result<Outcome> {
            let ring = ResidueRing::<F>::phi_squared(self.n)?;
            for &(general, single) in &self.pairs {
                let a = rhs_closed_form(general, self.d, 1, self.n)?.to_ring(&ring)?;
                let b = rhs_closed_form(single, self.d, 1, self.n)?.to_ring(&ring)?;
                if a != b {
                    return Ok(Outcome::Fails(format!(
                        "{} at r = 1 gives {a}, {} gives {b}",
                        general.name(),
                        single.name()
                    )));
                }
            }
            Ok(Outcome::Holds)
        };
        body().unwrap_or_else(Outcome::from)
    }
}

/// The incremental ring sum against the one-shot whole-sum build.
pub fn verify_lhs_oracle(id: TheoremId, d: i64, r: i64, n: i64, arith: Arithmetic) -> CheckResult {
    timed(&format!("LHS_ORACLE_{}", id.name()), id.params(d, r, n), || {
        if let Err(why) = id.precondition(d, r, n) {
            return Outcome::Skipped(why);
        }
        let r = if id.takes_r() { r } else { 1 };
        run_task(&OracleTask { id, d, r, n }, arith)
    })
}

struct OracleTask {
    id: TheoremId,
    d: i64,
    r: i64,
    n: i64,
}

impl FieldTask for OracleTask {
    type Output = Outcome;

    fn run<F: Field>(&self) -> Outcome {
        let body = || -> Result<Outcome> {
            let ring = ResidueRing::<F>::phi_squared(self.n)?;
            let a = lhs_sum(self.id.family(), self.d, self.r, self.n, &ring)?;
            let b = lhs_sum_oracle(self.id.family(), self.d, self.r, self.n, &ring)?;
            Ok(Outcome::from_bool(a == b, || format!("incremental {a}, oracle {b}")))
        };
        body().unwrap_or_else(Outcome::from)
    }
}

/// A closed-form check that can be run with a perturbed right-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MutationTarget {
    Theorem(TheoremId, i64, i64, i64),
    Parametric(ParametricFamily, i64, i64, i64),
}

impl MutationTarget {
    pub fn label(&self) -> String {
        match *self {
            MutationTarget::Theorem(id, d, r, n) => format!("{} d={d} r={r} n={n}", id.name()),
            MutationTarget::Parametric(f, d, r, n) => format!("{} d={d} r={r} n={n}", f.name()),
        }
    }

    /// Whether the unperturbed right-hand side is nonzero.
    pub fn has_closed_form(&self) -> bool {
        match *self {
            MutationTarget::Theorem(id, ..) => !matches!(id, TheoremId::Lemma21 | TheoremId::Lemma21R1),
            MutationTarget::Parametric(f, ..) => f.collapse_theorem().is_some(),
        }
    }

    pub fn run(&self, mutation: Option<Mutation>) -> CheckResult {
        match *self {
            MutationTarget::Theorem(id, d, r, n) => check_theorem(id, d, r, n, Arithmetic::Exact, mutation),
            MutationTarget::Parametric(f, d, r, n) => check_parametric(f, d, r, n, Arithmetic::Exact, mutation),
        }
    }
}

/// The perturbations applied by [`negative_control`].
pub const MUTATIONS: [Mutation; 2] = [Mutation::FlipSign, Mutation::ShiftExponent(1)];

/// One line of the mutation harness.
#[derive(Clone, Debug)]
pub struct MutationOutcome {
    pub target: MutationTarget,
    pub mutation: Mutation,
    pub result: CheckResult,
}

impl MutationOutcome {
    /// The perturbed check was rejected.
    pub fn caught(&self) -> bool {
        self.result.fails()
    }
}

/// Run every mutation on every target with a nonzero closed form.
pub fn negative_control(targets: &[MutationTarget]) -> Vec<MutationOutcome> {
    use rayon::prelude::*;
    let jobs: Vec<(MutationTarget, Mutation)> = targets
        .iter()
        .filter(|t| t.has_closed_form())
        .flat_map(|t| MUTATIONS.iter().map(move |m| (*t, *m)))
        .collect();
    jobs.into_par_iter()
        .map(|(target, mutation)| MutationOutcome {
            target,
            mutation,
            result: target.run(Some(mutation)),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shadow_matches_padic() {
        assert!(verify_q_one_shadow(ShadowFamily::Thm42, 3, 1, 5).holds());
        assert!(verify_q_one_shadow(ShadowFamily::Thm41, 4, 1, 7).holds());
    }

    #[test]
    fn r_one_collapse_small() {
        assert!(verify_r_one_collapse(3, 5, Arithmetic::Exact).holds());
        assert!(verify_r_one_collapse(4, 7, Arithmetic::Fast { seed: 1 }).holds());
        assert!(verify_r_one_collapse(3, 4, Arithmetic::Exact).skipped());
    }

    #[test]
    fn oracle_small() {
        assert!(verify_lhs_oracle(TheoremId::Thm12, 3, 1, 5, Arithmetic::Exact).holds());
    }

    #[test]
    fn harness_catches_small_mutations() {
        let out = negative_control(&[MutationTarget::Theorem(TheoremId::Thm12, 3, 1, 5)]);
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|o| o.caught()));
    }
}
