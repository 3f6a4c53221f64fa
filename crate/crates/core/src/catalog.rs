//! Check identifiers, their argument lists, and dispatch from a parameter map.

use std::fmt;

use crate::crosscheck::{verify_lhs_oracle, verify_q_one_shadow, verify_r_one_collapse, ShadowFamily};
use crate::error::{Error, Result};
use crate::padic::{verify_classical, ClassicalArgs, ClassicalId};
use crate::verifier::{
    verify_divisibility, verify_karlsson_minton, verify_parametric, verify_proof_step, verify_qbinomial_at,
    verify_qbinomial_vanishing, verify_theorem, Arithmetic, CheckResult, ParamValue, ParametricFamily, Params,
    ProofStep, StepArgs, TheoremId,
};

/// Execution settings shared by every check of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub fast_mode: bool,
    pub seed: u64,
    pub trials: usize,
}

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: usize = 5;

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            fast_mode: false,
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
        }
    }
}

impl RunConfig {
    pub fn arithmetic(&self) -> Arithmetic {
        if self.fast_mode {
            Arithmetic::Fast { seed: self.seed }
        } else {
            Arithmetic::Exact
        }
    }
}

/// One entry of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Theorem(TheoremId),
    Divisibility,
    Parametric(ParametricFamily),
    KarlssonMinton,
    QBinomial,
    Step(ProofStep),
    Classical(ClassicalId),
    QOneShadow(ShadowFamily),
    ROneCollapse,
    LhsOracle(TheoremId),
}

impl Check {
    /// Every check, in listing order.
    pub fn all() -> Vec<Check> {
        let mut out: Vec<Check> = TheoremId::ALL.into_iter().map(Check::Theorem).collect();
        out.push(Check::Divisibility);
        out.extend(ParametricFamily::ALL.into_iter().map(Check::Parametric));
        out.push(Check::KarlssonMinton);
        out.push(Check::QBinomial);
        out.extend(ProofStep::ALL.into_iter().map(Check::Step));
        out.extend(ClassicalId::ALL.into_iter().map(Check::Classical));
        out.push(Check::QOneShadow(ShadowFamily::Thm41));
        out.push(Check::QOneShadow(ShadowFamily::Thm42));
        out.push(Check::ROneCollapse);
        out.extend(TheoremId::ALL.into_iter().map(Check::LhsOracle));
        out
    }

    /// Identifier as it appears in reports.
    pub fn id(&self) -> String {
        match self {
            Check::Theorem(t) => t.name().into(),
            Check::Divisibility => "DIVISIBILITY".into(),
            Check::Parametric(f) => f.name().into(),
            Check::KarlssonMinton => "KM".into(),
            Check::QBinomial => "QBINOM_VANISHING".into(),
            Check::Step(s) => s.name().into(),
            Check::Classical(c) => c.name().into(),
            Check::QOneShadow(f) => format!("Q1_SHADOW_{}", f.theorem().name()),
            Check::ROneCollapse => "R1_COLLAPSE".into(),
            Check::LhsOracle(t) => format!("LHS_ORACLE_{}", t.name()),
        }
    }

    /// Case-insensitive lookup by identifier.
    pub fn from_id(s: &str) -> Option<Check> {
        Check::all().into_iter().find(|c| c.id().eq_ignore_ascii_case(s))
    }

    /// Required arguments, in display order.
    pub fn arg_names(&self) -> &'static [&'static str] {
        match self {
            Check::Theorem(t) | Check::LhsOracle(t) if t.takes_r() => &["d", "r", "n"],
            Check::Theorem(_) | Check::LhsOracle(_) => &["d", "n"],
            Check::Divisibility | Check::ROneCollapse => &["d", "n"],
            Check::Parametric(_) => &["d", "r", "n"],
            Check::KarlssonMinton => &["n_list"],
            Check::QBinomial => &["n"],
            Check::Step(s) => s.arg_names(),
            Check::Classical(c) => c.arg_names(),
            Check::QOneShadow(_) => &["d", "r", "p"],
        }
    }

    /// Arguments accepted beyond [`Check::arg_names`].
    pub fn optional_args(&self) -> &'static [&'static str] {
        match self {
            Check::QBinomial => &["j"],
            _ => &[],
        }
    }

    /// One-line statement of what the check asserts.
    pub fn describe(&self) -> String {
        match self {
            Check::Theorem(t) => match t {
                TheoremId::Eq13 => "sum of (q^{d-1};q^d)_k^d q^{dk} / (q^d;q^d)_k^d is the closed form mod Phi_n^2, n = 1 (mod d)",
                TheoremId::Eq14 => "mixed-base sum with (q^{1-d};q^d)_k, odd d, closed form mod Phi_n^2, n = -1 (mod d)",
                TheoremId::Eq15 => "squared-base sum, even d, closed form mod Phi_n^2, n = -1 (mod d)",
                TheoremId::Thm11 => "mixed-base sum with (q^{1-d};q^d)_k, even d, closed form mod Phi_n^2",
                TheoremId::Thm12 => "squared-base sum, odd d, closed form mod Phi_n^2, n = -1 (mod d)",
                TheoremId::Lemma21 => "the lemma sum with (q^{r-d};q^d)_k vanishes mod Phi_n^2, n = -r (mod d)",
                TheoremId::Lemma21R1 => "the lemma sum at r = 1 vanishes mod Phi_n^2, n = -1 (mod d), d >= 2",
                TheoremId::Thm41 => "general-r mixed sum with (q^{r-d};q^d)_k, closed form mod Phi_n^2",
                TheoremId::Thm42 => "general-r sum with (q^r;q^d)_k^{r+1}, closed form mod Phi_n^2",
            }
            .into(),
            Check::Divisibility => "the scaled truncated sum minus its closed form is divisible by [n]^2".into(),
            Check::Parametric(f) => match f.collapse_theorem() {
                Some(t) => format!("a-deformed sum equals its closed form at a = q^n and a = q^-n; collapses to {}", t.name()),
                None => "a-deformed lemma sum vanishes at a = q^n and a = q^-n".into(),
            },
            Check::KarlssonMinton => "terminating Karlsson-Minton summation at seeded random points".into(),
            Check::QBinomial => "sum_k (-1)^k q^{k(k-1)/2} [n k] q^{jk} vanishes for 0 <= j < n".into(),
            Check::Step(s) => match s {
                ProofStep::RatioShiftGeneric => "term ratio after shifting k by n - j outside the central band",
                ProofStep::RatioShiftCentral => "term ratio after the central shift",
                ProofStep::QbinomRewrite => "Pochhammer quotient rewritten as a q-binomial coefficient",
                ProofStep::ExponentIdentity => "integer identity between the q-exponents of both rewrites",
                ProofStep::SumDecomposition => "a sum over k < n splits into residue classes mod d",
                ProofStep::PochhammerSplitR1 => "(q;q)_{dk} as a product of d shifted Pochhammers, r = 1",
                ProofStep::PochhammerSplitGeneral => "(q^r;q)_{dk} as a product of d shifted Pochhammers",
                ProofStep::LemmaSplit => "the split lemma summand times a constant is the lemma summand",
                ProofStep::PrefactorDivisibility => "the divisibility prefactor cancels every denominator",
                ProofStep::BracketFactorization => "[n] is the product of Phi_m over divisors m > 1 of n",
            }
            .into(),
            Check::Classical(c) => match c {
                ClassicalId::Rv11 => "sum (1/2)_k^2/k!^2 = (-1)^{(p-1)/2} mod p^2",
                ClassicalId::Deines12 => "sum ((d-1)/d)_k^d/k!^d = -Gamma_p(1/d)^d mod p^2, p = 1 (mod d)",
                ClassicalId::Cor41I => "q = 1 limit of the general-r mixed sum mod p^2",
                ClassicalId::Cor41II => "q = 1 limit of the general-r sum with (r/d)_k^{r+1} mod p^2",
                ClassicalId::GammaFactorial => "factorial quotient equals -(-1)^{(p+r)/d} Gamma_p(-r/d)^d mod p^2",
                ClassicalId::WltIntegrality => "the scaled q = 1 divisibility quotient is an integer",
            }
            .into(),
            Check::QOneShadow(f) => format!(
                "{} summands at q = 1 agree mod p^2 with the rising-factorial sum",
                f.name()
            ),
            Check::ROneCollapse => "general-r closed forms at r = 1 equal the single-parameter closed forms".into(),
            Check::LhsOracle(t) => format!("incremental and whole-sum builds of the {} sum agree", t.name()),
        }
    }

    /// Run the check with arguments taken from `args`. Missing or unknown
    /// arguments are an error; out-of-range values give a skipped result.
    pub fn run(&self, args: &Params, cfg: &RunConfig) -> Result<CheckResult> {
        for key in args.keys() {
            if !self.arg_names().contains(&key.as_str()) && !self.optional_args().contains(&key.as_str()) {
                return Err(Error::InvalidArgument(format!("{} does not take `{key}`", self.id())));
            }
        }
        let int = |name: &str| -> Result<i64> {
            match args.get(name) {
                Some(ParamValue::Int(v)) => Ok(*v),
                Some(ParamValue::List(_)) => Err(Error::InvalidArgument(format!("`{name}` must be an integer"))),
                None => Err(Error::InvalidArgument(format!("{} needs `{name}`", self.id()))),
            }
        };
        let r_or_one = || if args.contains_key("r") { int("r") } else { Ok(1) };
        let arith = cfg.arithmetic();
        Ok(match *self {
            Check::Theorem(t) => {
                let r = if t.takes_r() { int("r")? } else { 1 };
                verify_theorem(t, int("d")?, r, int("n")?, arith)
            }
            Check::Divisibility => verify_divisibility(int("d")?, int("n")?, arith),
            Check::Parametric(f) => verify_parametric(f, int("d")?, int("r")?, int("n")?, arith),
            Check::KarlssonMinton => {
                let list = match args.get("n_list") {
                    Some(ParamValue::List(v)) => v.clone(),
                    Some(ParamValue::Int(v)) => vec![*v],
                    None => return Err(Error::InvalidArgument("KM needs `n_list`".into())),
                };
                if list.iter().any(|&x| x < 0) {
                    return Err(Error::InvalidArgument("n_list entries must be nonnegative".into()));
                }
                let list: Vec<u64> = list.into_iter().map(|x| x as u64).collect();
                verify_karlsson_minton(&list, cfg.trials, cfg.seed, arith)
            }
            Check::QBinomial => match args.get("j") {
                Some(_) => verify_qbinomial_at(int("n")?, int("j")?, arith),
                None => verify_qbinomial_vanishing(int("n")?, arith),
            },
            Check::Step(s) => {
                let mut a = StepArgs::default();
                for &name in s.arg_names() {
                    let v = int(name)?;
                    match name {
                        "d" => a.d = v,
                        "r" => a.r = v,
                        "n" => a.n = v,
                        "j" => a.j = v,
                        _ => a.k = v,
                    }
                }
                verify_proof_step(s, a, arith)
            }
            Check::Classical(c) => {
                let mut a = ClassicalArgs::default();
                for &name in c.arg_names() {
                    let v = int(name)?;
                    match name {
                        "d" => a.d = v,
                        "r" => a.r = v,
                        "p" if v < 0 => return Err(Error::InvalidArgument("`p` must be positive".into())),
                        "p" => a.p = v as u64,
                        _ => a.n = v,
                    }
                }
                verify_classical(c, a)
            }
            Check::QOneShadow(f) => verify_q_one_shadow(f, int("d")?, int("r")?, int("p")?),
            Check::ROneCollapse => verify_r_one_collapse(int("d")?, int("n")?, arith),
            Check::LhsOracle(t) => verify_lhs_oracle(t, int("d")?, r_or_one()?, int("n")?, arith),
        })
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::params;

    #[test]
    fn ids_are_unique_and_resolve() {
        let all = Check::all();
        for c in &all {
            assert_eq!(Check::from_id(&c.id().to_lowercase()), Some(*c));
        }
        let mut ids: Vec<String> = all.iter().map(|c| c.id()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), all.len());
    }

    #[test]
    fn dispatch_thm12() {
        let c = Check::from_id("thm12").unwrap();
        let res = c.run(&params(&[("d", 3), ("n", 5)]), &RunConfig::default()).unwrap();
        assert!(res.holds());
    }

    #[test]
    fn missing_and_unknown_args_are_errors() {
        let c = Check::from_id("thm12").unwrap();
        assert!(c.run(&params(&[("d", 3)]), &RunConfig::default()).is_err());
        assert!(c.run(&params(&[("d", 3), ("n", 5), ("p", 7)]), &RunConfig::default()).is_err());
    }
}
