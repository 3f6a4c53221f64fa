//! Congruences modulo `Phi_n(q)^2` between a truncated sum and a closed form,
//! and the `[n]^2` divisibility statement.

use num_integer::Integer;

use super::families::{a_exponent, e_exponent, exact_div, new_cache, sign_pow, ABase, ClosedForm, Mutation, Rhs, SumFamily};
use super::{params, run_task, timed, Arithmetic, CheckResult, FieldTask, Outcome, Params};
use crate::cyclotomic::q_integer;
use crate::error::{Error, Result};
use crate::factored::{CycloProduct, FactoredSum};
use crate::polyarith::{poly_divrem, Field, LaurentPolynomial};
use crate::residue::{ModulusKind, ResidueRing, RingElement};

/// The non-parametric congruences of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// `F1_GUO` sum, `n = 1 (mod d)`.
    Eq13,
    /// `F2_MIXED` sum, `d` odd.
    Eq14,
    /// `F3_SQUARED` sum, `d` even.
    Eq15,
    /// `F2_MIXED` sum, `d` even.
    Thm11,
    /// `F3_SQUARED` sum, `d` odd.
    Thm12,
    /// `F4_LEMMA` sum vanishes.
    Lemma21,
    /// `F4_LEMMA` at `r = 1`, including `d = 2, 3`.
    Lemma21R1,
    /// `F5_THM41` sum, general `r`.
    Thm41,
    /// `F6_THM42` sum, general `r`.
    Thm42,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::Eq13,
        TheoremId::Eq14,
        TheoremId::Eq15,
        TheoremId::Thm11,
        TheoremId::Thm12,
        TheoremId::Lemma21,
        TheoremId::Lemma21R1,
        TheoremId::Thm41,
        TheoremId::Thm42,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Eq13 => "EQ13",
            TheoremId::Eq14 => "EQ14",
            TheoremId::Eq15 => "EQ15",
            TheoremId::Thm11 => "THM11",
            TheoremId::Thm12 => "THM12",
            TheoremId::Lemma21 => "LEMMA21",
            TheoremId::Lemma21R1 => "LEMMA21_R1",
            TheoremId::Thm41 => "THM41",
            TheoremId::Thm42 => "THM42",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name().eq_ignore_ascii_case(s))
    }

    /// Whether `r` is a free parameter (otherwise it is fixed to 1).
    pub fn takes_r(self) -> bool {
        matches!(self, TheoremId::Lemma21 | TheoremId::Thm41 | TheoremId::Thm42)
    }

    pub fn family(self) -> SumFamily {
        match self {
            TheoremId::Eq13 => SumFamily::F1Guo,
            TheoremId::Eq14 | TheoremId::Thm11 => SumFamily::F2Mixed,
            TheoremId::Eq15 | TheoremId::Thm12 => SumFamily::F3Squared,
            TheoremId::Lemma21 | TheoremId::Lemma21R1 => SumFamily::F4Lemma,
            TheoremId::Thm41 => SumFamily::F5Thm41,
            TheoremId::Thm42 => SumFamily::F6Thm42,
        }
    }

    /// `Err(reason)` when `(d, r, n)` is outside the statement's range.
    pub fn precondition(self, d: i64, r: i64, n: i64) -> std::result::Result<(), String> {
        let r = if self.takes_r() { r } else { 1 };
        let cong = |res: i64| n.rem_euclid(d) == res.rem_euclid(d);
        let ok = match self {
            TheoremId::Eq13 => d >= 2 && n >= 2 && cong(1),
            TheoremId::Eq14 => d >= 3 && d.is_odd() && cong(-1) && n >= 2 * d - 1,
            TheoremId::Eq15 => d >= 4 && d.is_even() && cong(-1) && n >= 2,
            TheoremId::Thm11 => d >= 4 && d.is_even() && cong(-1) && n >= 2 * d - 1,
            TheoremId::Thm12 => d >= 3 && d.is_odd() && cong(-1) && n >= 2,
            TheoremId::Lemma21 => lemma_range(d, r, n),
            TheoremId::Lemma21R1 => d >= 2 && cong(-1) && n >= 2 * d - 1,
            TheoremId::Thm41 => lemma_range(d, r, n) || (r == 1 && (d == 2 || d == 3) && cong(-1) && n >= 2 * d - 1),
            TheoremId::Thm42 => r >= 1 && d > r && d.gcd(&r) == 1 && n > 1 && cong(-r),
        };
        if ok {
            Ok(())
        } else {
            Err(format!("{} needs {}", self.name(), self.range_text()))
        }
    }

    fn range_text(self) -> &'static str {
        match self {
            TheoremId::Eq13 => "d >= 2, n >= 2, n = 1 (mod d)",
            TheoremId::Eq14 => "odd d >= 3, n = -1 (mod d), n >= 2d-1",
            TheoremId::Eq15 => "even d >= 4, n = -1 (mod d)",
            TheoremId::Thm11 => "even d >= 4, n = -1 (mod d), n >= 2d-1",
            TheoremId::Thm12 => "odd d >= 3, n = -1 (mod d), n >= 2",
            TheoremId::Lemma21 => "d >= 3+r, gcd(d,r) = 1, n = -r (mod d), n >= 2d-r",
            TheoremId::Lemma21R1 => "d >= 2, n = -1 (mod d), n >= 2d-1",
            TheoremId::Thm41 => "d >= 3+r, gcd(d,r) = 1, n = -r (mod d), n >= 2d-r; or r = 1, d in {2,3}",
            TheoremId::Thm42 => "d > r >= 1, gcd(d,r) = 1, n > 1, n = -r (mod d)",
        }
    }

    /// Parameter map recorded in reports.
    pub fn params(self, d: i64, r: i64, n: i64) -> Params {
        if self.takes_r() {
            params(&[("d", d), ("r", r), ("n", n)])
        } else {
            params(&[("d", d), ("n", n)])
        }
    }
}

fn lemma_range(d: i64, r: i64, n: i64) -> bool {
    r >= 1 && d >= 3 + r && d.gcd(&r) == 1 && n.rem_euclid(d) == (-r).rem_euclid(d) && n >= 2 * d - r
}

/// The closed form of a theorem's right-hand side. Every exponent formula is
/// checked for integrality.
pub fn rhs_closed_form(id: TheoremId, d: i64, r: i64, n: i64) -> Result<Rhs> {
    let r = if id.takes_r() { r } else { 1 };
    let qd = ABase::q(d);
    Ok(match id {
        TheoremId::Eq13 => {
            let big = exact_div((d - 1) * (n - 1), d, "(d-1)(n-1)/d")?;
            let small = exact_div(n - 1, d, "(n-1)/d")?;
            let e = exact_div((d - 1) * (n - 1) * (d + n - 1), 2 * d, "(d-1)(n-1)(d+n-1)/(2d)")?;
            Rhs::Form(ClosedForm::new(sign_pow(big), e, d).poch(qd, big, 1).poch(qd, small, -(d - 1)))
        }
        TheoremId::Eq14 | TheoremId::Thm11 | TheoremId::Eq15 | TheoremId::Thm12 => {
            let m = exact_div(n + 1, d, "(n+1)/d")?;
            let e = e_exponent(d, n)?;
            let (sign, mixed) = match id {
                TheoremId::Eq14 => (-1, true),
                TheoremId::Thm11 => (-sign_pow(m), true),
                TheoremId::Eq15 => (sign_pow(m), false),
                _ => (1, false),
            };
            let base = if mixed {
                ClosedForm::new(sign, e - 1, d)
                    .linear(ABase::q(1), 1)
                    .linear(ABase::q(d - 1), 1)
            } else {
                ClosedForm::new(sign, e - 2, d).linear(ABase::q(1), 2)
            };
            Rhs::Form(base.poch(qd, n - 1 - m, 1).poch(qd, m, -(d - 1)))
        }
        TheoremId::Lemma21 | TheoremId::Lemma21R1 => Rhs::Zero,
        TheoremId::Thm41 | TheoremId::Thm42 => {
            let m = exact_div(n + r, d, "(n+r)/d")?;
            let big_n = n - 1 - m;
            let a = a_exponent(d, n, r)?;
            let form = if id == TheoremId::Thm41 {
                ClosedForm::new(-sign_pow(big_n), a, d)
                    .linear(ABase::q(r), r)
                    .linear(ABase::q(d - r), 1)
            } else {
                ClosedForm::new(sign_pow(big_n), a - r, d).linear(ABase::q(r), r + 1)
            };
            Rhs::Form(form.poch(qd, big_n, 1).poch(qd, m, -(d - 1)))
        }
    })
}

/// `sum_{k=0}^{n-1}` of the family's summand, reduced in `ring`. Each
/// Pochhammer product is a running ring element; the denominator is
/// inverted once per `k`.
pub fn lhs_sum<'r, F: Field>(
    family: SumFamily,
    d: i64,
    r: i64,
    n: i64,
    ring: &'r ResidueRing<F>,
) -> Result<RingElement<'r, F>> {
    let s = family.summand(d, r);
    if s.is_parametric() || s.pochs.iter().any(|p| p.offset != 0) || !s.linears.is_empty() {
        return Err(Error::Internal(format!("{} is not a plain Pochhammer sum", family.name())));
    }
    let mut running: Vec<RingElement<'r, F>> = s.pochs.iter().map(|_| ring.one()).collect();
    let mut total = ring.zero();
    for k in 0..n {
        if k > 0 {
            for (acc, p) in running.iter_mut().zip(&s.pochs) {
                *acc = acc.clone() * ring.one_minus_q_pow(p.base.q + s.step * (k - 1));
            }
        }
        let mut num = ring.pow_q(s.q_per_k * k);
        let mut den = ring.one();
        for (acc, p) in running.iter().zip(&s.pochs) {
            let f = acc.pow(p.mult.unsigned_abs());
            if p.mult > 0 {
                num = num * f;
            } else {
                den = den * f;
            }
        }
        total = total + num * den.invert()?;
    }
    Ok(total)
}

/// Whole-sum oracle for [`lhs_sum`]: expand every term as a cyclotomic
/// product, add them over a common denominator, and reduce once.
pub fn lhs_sum_oracle<'r, F: Field>(
    family: SumFamily,
    d: i64,
    r: i64,
    n: i64,
    ring: &'r ResidueRing<F>,
) -> Result<RingElement<'r, F>> {
    let s = family.summand(d, r);
    let mut sum = FactoredSum::new();
    for k in 0..n {
        sum.push_opt(s.factored(k, 0)?);
    }
    let mut cache = new_cache::<F>();
    let (num, den) = sum.to_fraction(&mut cache)?;
    Ok(ring.reduce(&num) * ring.reduce_dense(&den).invert()?)
}

struct TheoremTask {
    id: TheoremId,
    d: i64,
    r: i64,
    n: i64,
    mutation: Option<Mutation>,
}

impl FieldTask for TheoremTask {
    type Output = Outcome;

    fn run<F: Field>(&self) -> Outcome {
        let body = || -> Result<Outcome> {
            let mut rhs = rhs_closed_form(self.id, self.d, self.r, self.n)?;
            if let Some(m) = self.mutation {
                match rhs.mutated(m) {
                    Some(x) => rhs = x,
                    None => return Err(Error::InvalidArgument("zero right-hand side has nothing to mutate".into())),
                }
            }
            let ring = ResidueRing::<F>::phi_squared(self.n)?;
            let r = if self.id.takes_r() { self.r } else { 1 };
            let lhs = lhs_sum(self.id.family(), self.d, r, self.n, &ring)?;
            let rhs = rhs.to_ring(&ring)?;
            let diff = lhs - rhs;
            Ok(Outcome::from_bool(diff.is_zero(), || format!("lhs - rhs = {diff}")))
        };
        body().unwrap_or_else(Outcome::from)
    }
}

/// Check a theorem instance modulo `Phi_n(q)^2`.
pub fn verify_theorem(id: TheoremId, d: i64, r: i64, n: i64, arith: Arithmetic) -> CheckResult {
    check_theorem(id, d, r, n, arith, None)
}

/// As [`verify_theorem`], optionally with a perturbed right-hand side.
pub fn check_theorem(
    id: TheoremId,
    d: i64,
    r: i64,
    n: i64,
    arith: Arithmetic,
    mutation: Option<Mutation>,
) -> CheckResult {
    let mut res = timed(id.name(), id.params(d, r, n), || {
        if let Err(why) = id.precondition(d, r, n) {
            return Outcome::Skipped(why);
        }
        run_task(
            &TheoremTask {
                id,
                d,
                r,
                n,
                mutation,
            },
            arith,
        )
    });
    if id == TheoremId::Thm12 && n == 2 && !res.skipped() {
        res.note = Some("boundary case n = 2".into());
    }
    res
}

/// Preconditions of the `[n]^2` divisibility statement.
pub fn divisibility_precondition(d: i64, n: i64) -> std::result::Result<(), String> {
    if d >= 2 && n.rem_euclid(d) == d - 1 && n >= 2 * d - 1 {
        Ok(())
    } else {
        Err("divisibility needs d >= 2, n = -1 (mod d), n >= 2d-1".into())
    }
}

/// The full expression `(q^d;q^d)_{n-1}^d / (1-q)^{dn-d} * sum_k term_k` as a
/// Laurent polynomial. Every term's denominator cancels against the prefactor.
pub fn divisibility_expression<F: Field>(d: i64, n: i64) -> Result<LaurentPolynomial<F>> {
    let prefactor = CycloProduct::pochhammer(d, d, n - 1)?
        .ok_or_else(|| Error::Internal("prefactor vanishes".into()))?
        .pow(d)
        .div(&CycloProduct::one_minus_q_pow(1).expect("1 - q is nonzero").pow(d * n - d));
    let s = SumFamily::F7Divisibility.summand(d, 1);
    let mut sum = FactoredSum::new();
    for k in 0..n {
        if let Some(t) = s.factored(k, 0)? {
            let t = t.mul(&prefactor);
            if t.exponents().values().any(|&e| e < 0) {
                return Err(Error::Internal(format!("term {k} keeps a denominator: {t}")));
            }
            sum.push(t);
        }
    }
    let mut cache = new_cache::<F>();
    let (num, den) = sum.to_fraction(&mut cache)?;
    if !den.is_one() {
        return Err(Error::Internal("assembled expression is not a Laurent polynomial".into()));
    }
    Ok(num)
}

struct DivisibilityTask {
    d: i64,
    n: i64,
}

impl FieldTask for DivisibilityTask {
    type Output = Outcome;

    fn run<F: Field>(&self) -> Outcome {
        let body = || -> Result<Outcome> {
            let expr = divisibility_expression::<F>(self.d, self.n)?;
            if let Some((e, c)) = expr.terms().find(|(_, c)| !c.is_integer()) {
                return Err(Error::Integrality(format!("coefficient {c} of q^{e}")));
            }
            let bracket = q_integer::<F>(self.n)?;
            let modulus = &bracket * &bracket;
            let (_, rem) = poly_divrem(&expr.to_shifted_dense(), &modulus)?;
            Ok(Outcome::from_bool(rem.is_zero(), || format!("remainder mod [n]^2 = {rem}")))
        };
        body().unwrap_or_else(Outcome::from)
    }
}

/// Check that the prefactor times the `r = 1` lemma sum is divisible by `[n]^2`.
pub fn verify_divisibility(d: i64, n: i64, arith: Arithmetic) -> CheckResult {
    timed("DIVISIBILITY", params(&[("d", d), ("n", n)]), || {
        if let Err(why) = divisibility_precondition(d, n) {
            return Outcome::Skipped(why);
        }
        run_task(&DivisibilityTask { d, n }, arith)
    })
}

/// The `[n]^2` ring for callers that want the divisibility class directly.
pub fn bracket_ring<F: Field>(n: i64) -> Result<ResidueRing<F>> {
    ResidueRing::new(n, ModulusKind::BracketSquared)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::Rational;

    fn exact(id: TheoremId, d: i64, r: i64, n: i64) -> CheckResult {
        verify_theorem(id, d, r, n, Arithmetic::Exact)
    }

    #[test]
    fn thm12_small_instance_holds() {
        let res = exact(TheoremId::Thm12, 3, 1, 5);
        assert!(res.holds(), "{res:?}");
    }

    #[test]
    fn thm11_instance_holds_and_bad_residue_skips() {
        assert!(exact(TheoremId::Thm11, 4, 1, 7).holds());
        assert!(exact(TheoremId::Thm11, 4, 1, 6).skipped());
    }

    #[test]
    fn lemma_sum_vanishes() {
        let ring = ResidueRing::<Rational>::phi_squared(7).unwrap();
        let s = lhs_sum(SumFamily::F4Lemma, 4, 1, 7, &ring).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn incremental_matches_oracle() {
        let ring = ResidueRing::<Rational>::phi_squared(3).unwrap();
        let a = lhs_sum(SumFamily::F1Guo, 2, 1, 3, &ring).unwrap();
        let b = lhs_sum_oracle(SumFamily::F1Guo, 2, 1, 3, &ring).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn guo_rhs_at_d2_n3() {
        // sign (-1)^1, (q^2;q^2)_1 / (q^2;q^2)_1, exponent 1*2*4/4 = 2
        let Rhs::Form(c) = rhs_closed_form(TheoremId::Eq13, 2, 1, 3).unwrap() else {
            panic!("expected a closed form")
        };
        let ring = ResidueRing::<Rational>::phi_squared(3).unwrap();
        assert_eq!(c.to_ring(&ring).unwrap(), -ring.pow_q(2));
    }

    #[test]
    fn f3_two_term_sum_by_hand() {
        // d = 3, n = 2: 1 + (1-q^4)(1-q)^2 q^3 / (1-q^3)^3
        let ring = ResidueRing::<Rational>::phi_squared(2).unwrap();
        let term = ring.one_minus_q_pow(4) * ring.one_minus_q_pow(1).pow(2) * ring.pow_q(3);
        let den = ring.one_minus_q_pow(3).pow(3);
        let expected = ring.one() + term * den.invert().unwrap();
        assert_eq!(lhs_sum(SumFamily::F3Squared, 3, 1, 2, &ring).unwrap(), expected);
    }

    #[test]
    fn mutated_rhs_fails() {
        let res = check_theorem(TheoremId::Thm12, 3, 1, 5, Arithmetic::Exact, Some(Mutation::FlipSign));
        assert!(res.fails());
        assert!(res.witness.is_some());
    }

    #[test]
    fn divisibility_small() {
        assert!(verify_divisibility(2, 3, Arithmetic::Exact).holds());
        assert!(verify_divisibility(3, 5, Arithmetic::Exact).holds());
        assert!(verify_divisibility(3, 4, Arithmetic::Exact).skipped());
    }

    #[test]
    fn boundary_note_on_n_two() {
        let res = exact(TheoremId::Thm12, 3, 1, 2);
        assert!(res.holds());
        assert!(res.note.is_some());
    }
}
