//! Two-variable congruences modulo `(1 - a q^n)(a - q^n)`, checked by exact
//! substitution `a = q^n` and `a = q^{-n}`.
//!
//! Each family is written out as explicit exponent ladders. The ladders are
//! pinned by two structural checks: they are symmetric under `a -> 1/a`, and
//! at `a = 1` every summand collapses onto the corresponding non-parametric
//! summand (and every closed form onto the theorem's closed form).

use num_integer::Integer;

use super::families::{a_exponent, e_exponent, exact_div, new_cache, ladder, sign_pow, sym_ladder, ABase, ClosedForm, Mutation, Rhs, SumFamily, Summand};
use super::theorems::{rhs_closed_form, TheoremId};
use super::{params, run_task, timed, Arithmetic, CheckResult, FieldTask, Outcome};
use crate::error::{Error, Result};
use crate::factored::{CycloProduct, FactoredSum};
use crate::polyarith::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParametricFamily {
    /// Parametric form of the split lemma sum, `d + r` odd; vanishes.
    P1_24,
    /// Parametric form of the split lemma sum, `d`, `r` odd; vanishes.
    P2_25,
    /// Squared-family congruence, odd `d >= 5`, `r = 1`.
    P3_32,
    /// Squared-family congruence at `d = 3`.
    P4_33,
    /// General-`r` congruence, `d + r` odd, `d - r >= 3`.
    P5_43,
    /// General-`r` congruence with `d - r = 1`.
    P6_44,
    /// General-`r` congruence, `d`, `r` odd, `d - r >= 4`.
    P7_45,
    /// General-`r` congruence with `d - r = 2`.
    P8_46,
}

impl ParametricFamily {
    pub const ALL: [ParametricFamily; 8] = [
        ParametricFamily::P1_24,
        ParametricFamily::P2_25,
        ParametricFamily::P3_32,
        ParametricFamily::P4_33,
        ParametricFamily::P5_43,
        ParametricFamily::P6_44,
        ParametricFamily::P7_45,
        ParametricFamily::P8_46,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ParametricFamily::P1_24 => "P1_24",
            ParametricFamily::P2_25 => "P2_25",
            ParametricFamily::P3_32 => "P3_32",
            ParametricFamily::P4_33 => "P4_33",
            ParametricFamily::P5_43 => "P5_43",
            ParametricFamily::P6_44 => "P6_44",
            ParametricFamily::P7_45 => "P7_45",
            ParametricFamily::P8_46 => "P8_46",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name().eq_ignore_ascii_case(s))
    }

    pub fn precondition(self, d: i64, r: i64, n: i64) -> std::result::Result<(), String> {
        let cong = n.rem_euclid(d.max(1)) == (-r).rem_euclid(d.max(1));
        let base = r >= 1 && d > r && d.gcd(&r) == 1 && cong && n > 1;
        let lemma = d >= 3 + r && n >= 2 * d - r;
        let ok = base
            && match self {
                ParametricFamily::P1_24 => lemma && (d + r).is_odd(),
                ParametricFamily::P2_25 => lemma && d.is_odd() && r.is_odd(),
                ParametricFamily::P3_32 => r == 1 && d >= 5 && d.is_odd(),
                ParametricFamily::P4_33 => r == 1 && d == 3,
                ParametricFamily::P5_43 => (d + r).is_odd() && d - r >= 3,
                ParametricFamily::P6_44 => d - r == 1,
                ParametricFamily::P7_45 => d.is_odd() && r.is_odd() && d - r >= 4,
                ParametricFamily::P8_46 => d.is_odd() && r.is_odd() && d - r == 2,
            };
        if ok {
            Ok(())
        } else {
            Err(format!("{} needs {}", self.name(), self.range_text()))
        }
    }

    fn range_text(self) -> &'static str {
        match self {
            ParametricFamily::P1_24 => "d + r odd, d >= 3+r, gcd(d,r) = 1, n = -r (mod d), n >= 2d-r",
            ParametricFamily::P2_25 => "d, r odd, d >= 3+r, gcd(d,r) = 1, n = -r (mod d), n >= 2d-r",
            ParametricFamily::P3_32 => "odd d >= 5, r = 1, n = -1 (mod d), n > 1",
            ParametricFamily::P4_33 => "d = 3, r = 1, n = -1 (mod 3), n > 1",
            ParametricFamily::P5_43 => "d + r odd, d - r >= 3, gcd(d,r) = 1, n = -r (mod d), n > 1",
            ParametricFamily::P6_44 => "d - r = 1, n = -r (mod d), n > 1",
            ParametricFamily::P7_45 => "d, r odd, d - r >= 4, gcd(d,r) = 1, n = -r (mod d), n > 1",
            ParametricFamily::P8_46 => "d, r odd, d - r = 2, n = -r (mod d), n > 1",
        }
    }

    /// Last summation index.
    pub fn upper(self, d: i64, r: i64, n: i64) -> Result<i64> {
        Ok(match self {
            ParametricFamily::P1_24 | ParametricFamily::P2_25 => n - 1 - exact_div(n + r, d, "(n+r)/d")?,
            _ => n - 1,
        })
    }

    /// The summand with `a` symbolic.
    pub fn summand(self, d: i64, r: i64) -> Summand {
        let den = ladder(d - 2, 2 - d);
        let base = Summand::new(d, d).poch(ABase::q(d), 0, -1).den_ladder(&den, d);
        match self {
            ParametricFamily::P1_24 => base
                .num_ladder(&sym_ladder(d - 1, r + 2), d + r, 0)
                .num_ladder(&ladder(r, -r), d + r, -2)
                .linear(d, r - d, r),
            ParametricFamily::P2_25 => base
                .num_ladder(&sym_ladder(d - 1, r + 3), d + r, 0)
                .poch(ABase::q(d + r), 0, 1)
                .num_ladder(&sym_ladder(r + 1, 2), d + r, -2)
                .linear(d, r - d, r),
            ParametricFamily::P3_32 | ParametricFamily::P4_33 => base
                .num_ladder(&sym_ladder(d - 1, 4), d + 1, 0)
                .poch(ABase::q(d + 1), 0, 1)
                .num_ladder(&[2, -2], 1, 0),
            ParametricFamily::P5_43 | ParametricFamily::P6_44 => base
                .num_ladder(&sym_ladder(d - 1, r + 2), d + r, 0)
                .num_ladder(&ladder(r, -r), r, 0),
            ParametricFamily::P7_45 | ParametricFamily::P8_46 => base
                .num_ladder(&sym_ladder(d - 1, r + 3), d + r, 0)
                .poch(ABase::q(d + r), 0, 1)
                .num_ladder(&sym_ladder(r + 1, 2), r, 0),
        }
    }

    /// The non-parametric summand the family reduces to at `a = 1`.
    pub fn collapse_family(self) -> SumFamily {
        match self {
            ParametricFamily::P1_24 | ParametricFamily::P2_25 => SumFamily::F4Lemma,
            ParametricFamily::P3_32 | ParametricFamily::P4_33 => SumFamily::F3Squared,
            _ => SumFamily::F6Thm42,
        }
    }

    /// The theorem whose closed form the right-hand side reduces to at `a = 1`.
    pub fn collapse_theorem(self) -> Option<TheoremId> {
        match self {
            ParametricFamily::P1_24 | ParametricFamily::P2_25 => None,
            ParametricFamily::P3_32 | ParametricFamily::P4_33 => Some(TheoremId::Thm12),
            _ => Some(TheoremId::Thm42),
        }
    }

    /// The right-hand side with `a` symbolic.
    pub fn rhs(self, d: i64, r: i64, n: i64) -> Result<Rhs> {
        let den = ladder(d - 2, 2 - d);
        let with_den = |mut c: ClosedForm, big_n: i64, m: i64| {
            c = c.poch(ABase::q(d), big_n, 1);
            for &e in &den {
                c = c.poch(ABase::new(e, d), m, -1);
            }
            c
        };
        Ok(match self {
            ParametricFamily::P1_24 | ParametricFamily::P2_25 => Rhs::Zero,
            ParametricFamily::P3_32 | ParametricFamily::P4_33 => {
                let m = exact_div(n + 1, d, "(n+1)/d")?;
                let c = ClosedForm::new(1, e_exponent(d, n)? - 2, d)
                    .linear(ABase::new(2, 1), 1)
                    .linear(ABase::new(-2, 1), 1);
                Rhs::Form(with_den(c, n - 1 - m, m))
            }
            _ => {
                let m = exact_div(n + r, d, "(n+r)/d")?;
                let big_n = n - 1 - m;
                let a = a_exponent(d, n, r)?;
                let (sign, cs) = match self {
                    ParametricFamily::P5_43 | ParametricFamily::P6_44 => (sign_pow(big_n), ladder(r, -r)),
                    _ => (1, sym_ladder(r + 1, 2)),
                };
                let mut c = ClosedForm::new(sign, a - r, d);
                for e in cs {
                    c = c.linear(ABase::new(e, r), 1);
                }
                Rhs::Form(with_den(c, big_n, m))
            }
        })
    }
}

/// `(q^{d+r};q^d)_k^{d-r-1} (q^{d+r};q^d)_{k-2}^{r+1} (1 - q^{dk-d+r})^r q^{dk} / (q^d;q^d)_k^d`,
/// the lemma summand with `(q^r;q^d)_k^r (q^{r-d};q^d)_k` split off.
pub fn split_lemma_summand(d: i64, r: i64) -> Summand {
    Summand::new(d, d)
        .poch(ABase::q(d), 0, -d)
        .poch(ABase::q(d + r), 0, d - r - 1)
        .poch(ABase::q(d + r), -2, r + 1)
        .linear(d, r - d, r)
}

/// Structural checks that need no field arithmetic: `a -> 1/a` symmetry and
/// the `a = 1` collapse onto the non-parametric sum and closed form.
pub fn structural_checks(fam: ParametricFamily, d: i64, r: i64, n: i64) -> Result<Outcome> {
    let s = fam.summand(d, r);
    if !s.is_a_symmetric() {
        return Ok(Outcome::Fails("summand is not symmetric under a -> 1/a".into()));
    }
    let rhs = fam.rhs(d, r, n)?;
    if let Rhs::Form(c) = &rhs {
        if !c.is_a_symmetric() {
            return Ok(Outcome::Fails("closed form is not symmetric under a -> 1/a".into()));
        }
    }
    let reference = fam.collapse_family().summand(d, r);
    let split = matches!(fam, ParametricFamily::P1_24 | ParametricFamily::P2_25);
    // the split lemma summand is the lemma summand divided by this constant
    let scale = if split {
        let one_minus = |e| CycloProduct::one_minus_q_pow(e).ok_or_else(|| Error::Degenerate("1 - q^0".into()));
        Some(one_minus(r - d)?.mul(&one_minus(r)?.pow(r + 1)))
    } else {
        None
    };
    for k in 0..=fam.upper(d, r, n)? {
        let lhs = s.factored(k, 0)?;
        let mut rhs = reference.factored(k, 0)?;
        if let Some(c) = &scale {
            if lhs != split_lemma_summand(d, r).factored(k, 0)? {
                return Ok(Outcome::Fails(format!("a = 1 collapse differs from the split lemma summand at k = {k}")));
            }
            rhs = rhs.map(|t| t.div(c));
        }
        if lhs != rhs {
            return Ok(Outcome::Fails(format!(
                "a = 1 collapse differs from {} at k = {k}",
                fam.collapse_family().name()
            )));
        }
    }
    if let Some(t) = fam.collapse_theorem() {
        if rhs.factored(0)? != rhs_closed_form(t, d, r, n)?.factored(0)? {
            return Ok(Outcome::Fails(format!("closed form at a = 1 differs from {}", t.name())));
        }
    }
    Ok(Outcome::Holds)
}

/// `lhs - rhs` after `a = q^a_sub`, as a sum of cyclotomic products.
pub fn substituted_difference(
    fam: ParametricFamily,
    d: i64,
    r: i64,
    n: i64,
    a_sub: i64,
    rhs: &Rhs,
) -> Result<FactoredSum> {
    let s = fam.summand(d, r);
    let mut sum = FactoredSum::new();
    for k in 0..=fam.upper(d, r, n)? {
        sum.push_opt(s.factored(k, a_sub)?);
    }
    if let Some(t) = rhs.factored(a_sub)? {
        sum.push(t.neg());
    }
    Ok(sum)
}

struct ParametricTask {
    fam: ParametricFamily,
    d: i64,
    r: i64,
    n: i64,
    rhs: Rhs,
}

impl FieldTask for ParametricTask {
    type Output = Outcome;

    fn run<F: Field>(&self) -> Outcome {
        let body = || -> Result<Outcome> {
            let mut cache = new_cache::<F>();
            for a_sub in [self.n, -self.n] {
                let diff = substituted_difference(self.fam, self.d, self.r, self.n, a_sub, &self.rhs)?;
                let num = diff.reduced_numerator(&mut cache)?;
                if !num.is_zero() {
                    return Ok(Outcome::Fails(format!("a = q^{a_sub}: lhs - rhs has numerator {num}")));
                }
            }
            Ok(Outcome::Holds)
        };
        body().unwrap_or_else(Outcome::from)
    }
}

/// Check a parametric congruence at `a = q^{+-n}` plus its structural checks.
pub fn verify_parametric(fam: ParametricFamily, d: i64, r: i64, n: i64, arith: Arithmetic) -> CheckResult {
    check_parametric(fam, d, r, n, arith, None)
}

/// As [`verify_parametric`], optionally with a perturbed right-hand side.
pub fn check_parametric(
    fam: ParametricFamily,
    d: i64,
    r: i64,
    n: i64,
    arith: Arithmetic,
    mutation: Option<Mutation>,
) -> CheckResult {
    timed(fam.name(), params(&[("d", d), ("r", r), ("n", n)]), || {
        if let Err(why) = fam.precondition(d, r, n) {
            return Outcome::Skipped(why);
        }
        let body = || -> Result<Outcome> {
            let structural = structural_checks(fam, d, r, n)?;
            if structural != Outcome::Holds {
                return Ok(structural);
            }
            let mut rhs = fam.rhs(d, r, n)?;
            if let Some(m) = mutation {
                rhs = rhs
                    .mutated(m)
                    .ok_or_else(|| Error::InvalidArgument("zero right-hand side has nothing to mutate".into()))?;
            }
            Ok(run_task(&ParametricTask { fam, d, r, n, rhs }, arith))
        };
        body().unwrap_or_else(Outcome::from)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_parametric_vanishes() {
        let res = verify_parametric(ParametricFamily::P1_24, 4, 1, 7, Arithmetic::Exact);
        assert!(res.holds(), "{res:?}");
    }

    #[test]
    fn d_three_family_holds() {
        let res = verify_parametric(ParametricFamily::P4_33, 3, 1, 5, Arithmetic::Exact);
        assert!(res.holds(), "{res:?}");
    }

    #[test]
    fn consecutive_family_holds() {
        let res = verify_parametric(ParametricFamily::P6_44, 2, 1, 3, Arithmetic::Exact);
        assert!(res.holds(), "{res:?}");
    }

    #[test]
    fn out_of_range_skips() {
        assert!(verify_parametric(ParametricFamily::P6_44, 4, 1, 7, Arithmetic::Exact).skipped());
        assert!(verify_parametric(ParametricFamily::P4_33, 5, 1, 4, Arithmetic::Exact).skipped());
    }

    #[test]
    fn mutation_is_detected() {
        let res = check_parametric(
            ParametricFamily::P4_33,
            3,
            1,
            5,
            Arithmetic::Exact,
            Some(Mutation::ShiftExponent(1)),
        );
        assert!(res.fails());
    }

    #[test]
    fn ladders_are_symmetric() {
        for fam in ParametricFamily::ALL {
            for d in 2..10 {
                for r in 1..d {
                    let n = 3 * d - r;
                    if fam.precondition(d, r, n).is_ok() {
                        assert!(fam.summand(d, r).is_a_symmetric(), "{} d={d} r={r}", fam.name());
                    }
                }
            }
        }
    }
}
