//! Exact identities used inside the proofs, each checked on its own.

use num_integer::Integer;

use super::families::{exact_div, new_cache, SumFamily};
use super::{params, run_task, timed, Arithmetic, CheckResult, FieldTask, Outcome, Params};
use crate::cyclotomic::{cyclotomic, divisors, q_integer};
use crate::error::{Error, Result};
use crate::factored::{CycloProduct, FactoredSum};
use crate::polyarith::{poly_divrem, DensePolynomial, Field, LaurentPolynomial, RationalFunction};
use crate::qobjects::{q_binomial, q_pochhammer, QMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProofStep {
    /// `(q^{d+r-(d-2j-1)n};q^d)_k / (q^{d-(d-2j)n};q^d)_k` as a ratio of
    /// length-`(n+r)/d` products, `j` outside the central band.
    RatioShiftGeneric,
    /// The `k-2` variant of the ratio shift for `j` in the central band.
    RatioShiftCentral,
    /// `(q^{d+r-(d-1)n};q^d)_k q^{dk} / (q^d;q^d)_k` as a signed `q^d`-binomial.
    QbinomRewrite,
    /// `d C(k,2) + (n+2d+r-dn) k = d C(N-k,2) - d C(N,2)`, `N = n-1-(n+r)/d`.
    ExponentIdentity,
    /// `S_mixed = [d] S_lemma - q [d-1] S_squared` over `k < n`.
    SumDecomposition,
    /// `(q^{d+1}, q^{1-d};q^d)_k = -q [d-1] (1 + (1-q^d)/(q^d-q^{dk+1})) (q;q^d)_k^2`.
    PochhammerSplitR1,
    /// `(q^{d+r}, q^{r-d};q^d)_k = -q^r [d-r]/[r] (1 + (1-q^d)/(q^d-q^{dk+r})) (q^r;q^d)_k^2`.
    PochhammerSplitGeneral,
    /// `(q^r;q^d)_k^r (q^{r-d};q^d)_k = (1-q^{r-d})(1-q^r)^{r+1} (q^{d+r};q^d)_{k-2}^{r+1} (1-q^{dk-d+r})^r`.
    LemmaSplit,
    /// `prod_{1<=m<n} [md]^d` is divisible by `prod_{1<m<n, m|n} Phi_m^2`.
    PrefactorDivisibility,
    /// `[n] = Phi_n prod_{1<m<n, m|n} Phi_m`.
    BracketFactorization,
}

/// Integer arguments of a proof step; unused fields are ignored.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepArgs {
    pub d: i64,
    pub r: i64,
    pub n: i64,
    pub j: i64,
    pub k: i64,
}

impl ProofStep {
    pub const ALL: [ProofStep; 10] = [
        ProofStep::RatioShiftGeneric,
        ProofStep::RatioShiftCentral,
        ProofStep::QbinomRewrite,
        ProofStep::ExponentIdentity,
        ProofStep::SumDecomposition,
        ProofStep::PochhammerSplitR1,
        ProofStep::PochhammerSplitGeneral,
        ProofStep::LemmaSplit,
        ProofStep::PrefactorDivisibility,
        ProofStep::BracketFactorization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProofStep::RatioShiftGeneric => "RATIO_SHIFT_GENERIC",
            ProofStep::RatioShiftCentral => "RATIO_SHIFT_CENTRAL",
            ProofStep::QbinomRewrite => "QBINOM_REWRITE",
            ProofStep::ExponentIdentity => "EXPONENT_IDENTITY",
            ProofStep::SumDecomposition => "SUM_DECOMPOSITION",
            ProofStep::PochhammerSplitR1 => "POCHHAMMER_SPLIT_R1",
            ProofStep::PochhammerSplitGeneral => "POCHHAMMER_SPLIT_GENERAL",
            ProofStep::LemmaSplit => "LEMMA_SPLIT",
            ProofStep::PrefactorDivisibility => "PREFACTOR_DIVISIBILITY",
            ProofStep::BracketFactorization => "BRACKET_FACTORIZATION",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name().eq_ignore_ascii_case(s))
    }

    /// Names of the arguments this step reads.
    pub fn arg_names(self) -> &'static [&'static str] {
        match self {
            ProofStep::RatioShiftGeneric | ProofStep::RatioShiftCentral => &["d", "r", "n", "j", "k"],
            ProofStep::QbinomRewrite | ProofStep::ExponentIdentity => &["d", "r", "n", "k"],
            ProofStep::SumDecomposition | ProofStep::PrefactorDivisibility => &["d", "n"],
            ProofStep::PochhammerSplitR1 => &["d", "k"],
            ProofStep::PochhammerSplitGeneral | ProofStep::LemmaSplit => &["d", "r", "k"],
            ProofStep::BracketFactorization => &["n"],
        }
    }

    pub fn params(self, a: StepArgs) -> Params {
        let pairs: Vec<(&str, i64)> = self
            .arg_names()
            .iter()
            .map(|&name| {
                let v = match name {
                    "d" => a.d,
                    "r" => a.r,
                    "n" => a.n,
                    "j" => a.j,
                    _ => a.k,
                };
                (name, v)
            })
            .collect();
        params(&pairs)
    }

    pub fn precondition(self, a: StepArgs) -> std::result::Result<(), String> {
        let StepArgs { d, r, n, j, k } = a;
        let coprime_pair = d > r && r >= 1 && d.gcd(&r) == 1;
        let residue = d >= 2 && n.rem_euclid(d) == (-r).rem_euclid(d);
        let in_band = 2 * j >= d - r - 1 && 2 * j < d + r;
        let ok = match self {
            ProofStep::RatioShiftGeneric => {
                coprime_pair && residue && n >= 2 * d - r && (1..d).contains(&j) && !in_band && k >= 0
            }
            ProofStep::RatioShiftCentral => {
                coprime_pair && residue && n >= 2 * d - r && (0..d).contains(&j) && in_band && k >= 0
            }
            ProofStep::QbinomRewrite | ProofStep::ExponentIdentity => {
                coprime_pair && residue && n - 1 - (n + r) / d >= 0 && k >= 0
            }
            ProofStep::SumDecomposition => d >= 2 && n >= 1,
            ProofStep::PochhammerSplitR1 => d >= 2 && k >= 0,
            ProofStep::PochhammerSplitGeneral | ProofStep::LemmaSplit => d > r && r >= 1 && k >= 0,
            ProofStep::PrefactorDivisibility => d >= 2 && n >= 2,
            ProofStep::BracketFactorization => n >= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(format!("{} arguments out of range", self.name()))
        }
    }
}

fn poch<F: Field>(e: i64, step: i64, len: i64) -> Result<RationalFunction<F>> {
    Ok(q_pochhammer(&QMonomial::<F>::q_pow(e), step, len)?.into_rational())
}

fn mono<F: Field>(c: i64, e: i64) -> RationalFunction<F> {
    LaurentPolynomial::monomial(F::from_i64(c), e).into()
}

fn one_minus<F: Field>(e: i64) -> RationalFunction<F> {
    LaurentPolynomial::one_minus(F::one(), e).into()
}

fn bracket<F: Field>(m: i64) -> Result<RationalFunction<F>> {
    Ok(q_integer::<F>(m)?.into())
}

fn choose2(x: i64) -> i64 {
    x * (x - 1) / 2
}

fn compare<F: Field>(lhs: RationalFunction<F>, rhs: RationalFunction<F>) -> Outcome {
    Outcome::from_bool(lhs == rhs, || format!("lhs = {lhs}, rhs = {rhs}"))
}

/// `(q^top; q^d)_top_len / (q^bot; q^d)_bot_len`, `None` when it is zero.
fn cyclo_ratio(top: i64, top_len: i64, bot: i64, bot_len: i64, d: i64) -> Result<Option<CycloProduct>> {
    let den = CycloProduct::pochhammer(bot, d, bot_len)?
        .ok_or_else(|| Error::Degenerate(format!("(q^{bot};q^{d})_{bot_len} vanishes")))?;
    Ok(CycloProduct::pochhammer(top, d, top_len)?.map(|num| num.div(&den)))
}

fn show(x: &Option<CycloProduct>) -> String {
    x.as_ref().map_or_else(|| "0".to_string(), |c| c.to_string())
}

/// `1 + (1 - q^d) / (q^d - q^{dk+r})`
fn split_bracket<F: Field>(d: i64, r: i64, k: i64) -> Result<RationalFunction<F>> {
    let den = &mono::<F>(1, d) - &mono(1, d * k + r);
    Ok(&RationalFunction::one() + &(&one_minus::<F>(d) / &den))
}

struct StepTask {
    step: ProofStep,
    a: StepArgs,
}

impl StepTask {
    fn body<F: Field>(&self) -> Result<Outcome> {
        let StepArgs { d, r, n, j, k } = self.a;
        Ok(match self.step {
            ProofStep::RatioShiftGeneric | ProofStep::RatioShiftCentral => {
                let m = exact_div(n + r, d, "(n+r)/d")?;
                let b = d - (d - 2 * j) * n;
                let top = d + r - (d - 2 * j - 1) * n;
                let (top_len, rhs_len) = if self.step == ProofStep::RatioShiftGeneric {
                    (k, m)
                } else {
                    (k - 2, m - 2)
                };
                // Both sides are products of 1 - q^e factors, so equality of
                // the canonical cyclotomic factorizations is exact equality.
                let lhs = cyclo_ratio(top, top_len, b, k, d)?;
                let rhs = cyclo_ratio(b + d * k, rhs_len, b, m, d)?;
                Outcome::from_bool(lhs == rhs, || format!("lhs = {}, rhs = {}", show(&lhs), show(&rhs)))
            }
            ProofStep::QbinomRewrite => {
                let big_n = n - 1 - exact_div(n + r, d, "(n+r)/d")?;
                let lhs = &(&poch::<F>(d + r - (d - 1) * n, d, k)? * &mono(1, d * k)) / &poch(d, d, k)?;
                let binom = q_binomial::<F>(big_n as u64, k).substitute_power(d as usize);
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let e = d * choose2(k) + (n + 2 * d + r - d * n) * k;
                let rhs = &RationalFunction::from(binom) * &mono(sign, e);
                compare(lhs, rhs)
            }
            ProofStep::ExponentIdentity => {
                let big_n = n - 1 - exact_div(n + r, d, "(n+r)/d")?;
                let lhs = d * choose2(k) + (n + 2 * d + r - d * n) * k;
                let rhs = d * choose2(big_n - k) - d * choose2(big_n);
                Outcome::from_bool(lhs == rhs, || format!("lhs = {lhs}, rhs = {rhs}"))
            }
            ProofStep::SumDecomposition => {
                let one_minus_c = |e: i64| {
                    CycloProduct::one_minus_q_pow(e).ok_or_else(|| Error::Internal("1 - q^0".into()))
                };
                let bracket_d = one_minus_c(d)?.div(&one_minus_c(1)?);
                let bracket_d1 = one_minus_c(d - 1)?.div(&one_minus_c(1)?);
                let q_bracket = bracket_d1.mul(&CycloProduct::q_pow(1));
                let mixed = SumFamily::F2Mixed.summand(d, 1);
                let lemma = SumFamily::F4Lemma.summand(d, 1);
                let squared = SumFamily::F3Squared.summand(d, 1);
                // The combination vanishes term by term, which implies the
                // identity for the truncated sums; the whole-sum numerator
                // is only built when some term does not vanish.
                let mut cache = new_cache();
                let mut terms = Vec::with_capacity(n as usize);
                for k in 0..n {
                    let mut t = FactoredSum::new();
                    t.push_opt(mixed.factored(k, 0)?);
                    t.push_opt(lemma.factored(k, 0)?.map(|t| t.mul(&bracket_d).neg()));
                    t.push_opt(squared.factored(k, 0)?.map(|t| t.mul(&q_bracket)));
                    terms.push(t);
                }
                let mut termwise = true;
                for t in &terms {
                    if !t.reduced_numerator::<F>(&mut cache)?.is_zero() {
                        termwise = false;
                        break;
                    }
                }
                if termwise {
                    Outcome::Holds
                } else {
                    let mut sum = FactoredSum::new();
                    for t in terms {
                        for term in t.terms() {
                            sum.push(term.clone());
                        }
                    }
                    let num = sum.reduced_numerator::<F>(&mut cache)?;
                    Outcome::from_bool(num.is_zero(), || format!("difference numerator {num}"))
                }
            }
            ProofStep::PochhammerSplitR1 => {
                let lhs = &poch::<F>(d + 1, d, k)? * &poch(1 - d, d, k)?;
                let sq = poch::<F>(1, d, k)?.pow(2)?;
                let rhs = &(&(&mono::<F>(-1, 1) * &bracket(d - 1)?) * &split_bracket(d, 1, k)?) * &sq;
                compare(lhs, rhs)
            }
            ProofStep::PochhammerSplitGeneral => {
                let lhs = &poch::<F>(d + r, d, k)? * &poch(r - d, d, k)?;
                let ratio = &bracket::<F>(d - r)? / &bracket(r)?;
                let sq = poch::<F>(r, d, k)?.pow(2)?;
                let rhs = &(&(&mono::<F>(-1, r) * &ratio) * &split_bracket(d, r, k)?) * &sq;
                compare(lhs, rhs)
            }
            ProofStep::LemmaSplit => {
                let lhs = &poch::<F>(r, d, k)?.pow(r)? * &poch(r - d, d, k)?;
                let rhs = &(&(&one_minus::<F>(r - d) * &one_minus(r).pow(r + 1)?)
                    * &poch(d + r, d, k - 2)?.pow(r + 1)?)
                    * &one_minus(d * k - d + r).pow(r)?;
                compare(lhs, rhs)
            }
            ProofStep::PrefactorDivisibility => {
                let mut modulus = DensePolynomial::<F>::one();
                for m in proper_divisors(n) {
                    let phi = cyclotomic::<F>(m)?;
                    modulus = &modulus * &(&phi * &phi);
                }
                // Reducing after every factor keeps the product small.
                let mut rem = poly_divrem(&DensePolynomial::<F>::one(), &modulus)?.1;
                for m in 1..n {
                    let factor = poly_divrem(&q_integer::<F>(m * d)?, &modulus)?.1;
                    for _ in 0..d {
                        rem = poly_divrem(&(&rem * &factor), &modulus)?.1;
                    }
                }
                Outcome::from_bool(rem.is_zero(), || format!("remainder {rem}"))
            }
            ProofStep::BracketFactorization => {
                let mut prod = cyclotomic::<F>(n)?;
                for m in proper_divisors(n) {
                    prod = &prod * &cyclotomic::<F>(m)?;
                }
                let target = q_integer::<F>(n)?;
                Outcome::from_bool(prod == target, || format!("product {prod} != [n] {target}"))
            }
        })
    }
}

/// Divisors `m` of `n` with `1 < m < n`.
fn proper_divisors(n: i64) -> Vec<i64> {
    divisors(n as u64)
        .into_iter()
        .map(|m| m as i64)
        .filter(|&m| m > 1 && m < n)
        .collect()
}

impl FieldTask for StepTask {
    type Output = Outcome;

    fn run<F: Field>(&self) -> Outcome {
        self.body::<F>().unwrap_or_else(Outcome::from)
    }
}

/// Check one proof-step identity instance.
pub fn verify_proof_step(step: ProofStep, args: StepArgs, arith: Arithmetic) -> CheckResult {
    timed(step.name(), step.params(args), || {
        if let Err(why) = step.precondition(args) {
            return Outcome::Skipped(why);
        }
        run_task(&StepTask { step, a: args }, arith)
    })
}

/// Legal `j` values of the ratio-shift steps for `(d, r)`.
pub fn ratio_shift_js(step: ProofStep, d: i64, r: i64) -> Vec<i64> {
    (0..d)
        .filter(|&j| {
            step.precondition(StepArgs {
                d,
                r,
                n: 2 * d - r,
                j,
                k: 0,
            })
            .is_ok()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(step: ProofStep, d: i64, r: i64, n: i64, j: i64, k: i64) -> CheckResult {
        verify_proof_step(step, StepArgs { d, r, n, j, k }, Arithmetic::Exact)
    }

    #[test]
    fn exponent_identity_value() {
        // d=4, r=1, n=7, k=3: N = 4; lhs 4*3 + (7+8+1-28)*3 = -24; rhs 4*0 - 4*6 = -24
        assert!(check(ProofStep::ExponentIdentity, 4, 1, 7, 0, 3).holds());
    }

    #[test]
    fn general_split_example() {
        assert!(check(ProofStep::PochhammerSplitGeneral, 5, 2, 0, 0, 3).holds());
    }

    #[test]
    fn bracket_factorization_twelve() {
        assert!(check(ProofStep::BracketFactorization, 0, 0, 12, 0, 0).holds());
        assert!(check(ProofStep::BracketFactorization, 0, 0, 1, 0, 0).skipped());
    }

    #[test]
    fn band_partition() {
        // d = 5, r = 2: band is 1 <= j <= 3
        assert_eq!(ratio_shift_js(ProofStep::RatioShiftGeneric, 5, 2), vec![4]);
        assert_eq!(ratio_shift_js(ProofStep::RatioShiftCentral, 5, 2), vec![1, 2, 3]);
    }

    #[test]
    fn lemma_grid_small() {
        for k in 0..=6 {
            for step in [ProofStep::RatioShiftGeneric, ProofStep::RatioShiftCentral] {
                for j in ratio_shift_js(step, 4, 1) {
                    let res = check(step, 4, 1, 7, j, k);
                    assert!(res.holds(), "{res:?}");
                }
            }
            assert!(check(ProofStep::QbinomRewrite, 4, 1, 7, 0, k).holds());
            assert!(check(ProofStep::LemmaSplit, 4, 1, 0, 0, k).holds());
            assert!(check(ProofStep::PochhammerSplitR1, 4, 0, 0, 0, k).holds());
        }
        assert!(check(ProofStep::SumDecomposition, 4, 0, 7, 0, 0).holds());
        assert!(check(ProofStep::PrefactorDivisibility, 2, 0, 9, 0, 0).holds());
    }
}
