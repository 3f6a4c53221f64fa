//! Summands and closed forms of every sum in the catalog, described
//! symbolically so that one description feeds the residue ring, the
//! cyclotomic-factored expansion and the parametric substitution.

use crate::cyclotomic::CyclotomicCache;
use crate::error::{Error, Result};
use crate::factored::CycloProduct;
use crate::polyarith::Field;
use crate::residue::{ResidueRing, RingElement};

/// The monomial `a^a * q^q`. Non-parametric sums use `a = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ABase {
    pub a: i64,
    pub q: i64,
}

impl ABase {
    pub const fn q(q: i64) -> Self {
        Self { a: 0, q }
    }

    pub const fn new(a: i64, q: i64) -> Self {
        Self { a, q }
    }

    /// q-exponent after substituting `a = q^a_sub`.
    pub fn at(self, a_sub: i64) -> i64 {
        self.q + self.a * a_sub
    }

    pub fn mirrored(self) -> Self {
        Self { a: -self.a, q: self.q }
    }
}

/// `(base; q^step)_{k + offset}^mult`; negative `mult` puts it in the
/// denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PochTerm {
    pub base: ABase,
    pub offset: i64,
    pub mult: i64,
}

/// `(1 - q^{k_coef * k + constant})^mult`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearTerm {
    pub k_coef: i64,
    pub constant: i64,
    pub mult: i64,
}

/// The k-th term of a truncated q-hypergeometric sum with Pochhammer step
/// `q^step`, times `q^{q_per_k * k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub step: i64,
    pub pochs: Vec<PochTerm>,
    pub linears: Vec<LinearTerm>,
    pub q_per_k: i64,
}

impl Summand {
    pub fn new(step: i64, q_per_k: i64) -> Self {
        Self {
            step,
            pochs: Vec::new(),
            linears: Vec::new(),
            q_per_k,
        }
    }

    pub fn poch(mut self, base: ABase, offset: i64, mult: i64) -> Self {
        if mult != 0 {
            self.pochs.push(PochTerm { base, offset, mult });
        }
        self
    }

    /// Numerator factors `(base; q^step)_k` for each `a`-exponent in `exps`.
    pub fn num_ladder(mut self, exps: &[i64], q: i64, offset: i64) -> Self {
        for &a in exps {
            self = self.poch(ABase::new(a, q), offset, 1);
        }
        self
    }

    /// Denominator factors `(base; q^step)_k` for each `a`-exponent in `exps`.
    pub fn den_ladder(mut self, exps: &[i64], q: i64) -> Self {
        for &a in exps {
            self = self.poch(ABase::new(a, q), 0, -1);
        }
        self
    }

    pub fn linear(mut self, k_coef: i64, constant: i64, mult: i64) -> Self {
        if mult != 0 {
            self.linears.push(LinearTerm {
                k_coef,
                constant,
                mult,
            });
        }
        self
    }

    /// Whether any factor depends on `a`.
    pub fn is_parametric(&self) -> bool {
        self.pochs.iter().any(|p| p.base.a != 0)
    }

    /// The multiset of factors is unchanged by `a -> 1/a`.
    pub fn is_a_symmetric(&self) -> bool {
        let mut fwd: Vec<PochTerm> = self.pochs.clone();
        let mut rev: Vec<PochTerm> = self
            .pochs
            .iter()
            .map(|p| PochTerm {
                base: p.base.mirrored(),
                ..*p
            })
            .collect();
        fwd.sort();
        rev.sort();
        fwd == rev
    }

    /// Exact value of the k-th term after `a = q^a_sub`, as a cyclotomic
    /// product. `Ok(None)` is the zero term; a vanishing denominator factor
    /// is a degenerate error.
    pub fn factored(&self, k: i64, a_sub: i64) -> Result<Option<CycloProduct>> {
        let mut out = CycloProduct::q_pow(self.q_per_k * k);
        let mut vanishes = false;
        for p in &self.pochs {
            let len = k + p.offset;
            let base = p.base.at(a_sub);
            match CycloProduct::pochhammer(base, self.step, len)? {
                Some(v) => out = out.mul(&v.pow(p.mult)),
                None if p.mult > 0 => vanishes = true,
                None => {
                    return Err(Error::Degenerate(format!(
                        "denominator (q^{base};q^{})_{len} vanishes at k = {k}",
                        self.step
                    )))
                }
            }
        }
        for l in &self.linears {
            let e = l.k_coef * k + l.constant;
            match CycloProduct::one_minus_q_pow(e) {
                Some(v) => out = out.mul(&v.pow(l.mult)),
                None if l.mult > 0 => vanishes = true,
                None => {
                    return Err(Error::Degenerate(format!(
                        "denominator factor (1 - q^{e}) vanishes at k = {k}"
                    )))
                }
            }
        }
        Ok(if vanishes { None } else { Some(out) })
    }
}

/// A closed form `sign * q^q_exp * prod (base;q^step)_len^mult * prod (1 - base)^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub sign: i64,
    pub q_exp: i64,
    pub step: i64,
    pub pochs: Vec<(ABase, i64, i64)>,
    pub linears: Vec<(ABase, i64)>,
}

impl ClosedForm {
    pub fn new(sign: i64, q_exp: i64, step: i64) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Self {
            sign,
            q_exp,
            step,
            pochs: Vec::new(),
            linears: Vec::new(),
        }
    }

    pub fn poch(mut self, base: ABase, len: i64, mult: i64) -> Self {
        if mult != 0 {
            self.pochs.push((base, len, mult));
        }
        self
    }

    pub fn linear(mut self, base: ABase, mult: i64) -> Self {
        if mult != 0 {
            self.linears.push((base, mult));
        }
        self
    }

    pub fn mutated(&self, m: Mutation) -> Self {
        let mut out = self.clone();
        match m {
            Mutation::FlipSign => out.sign = -out.sign,
            Mutation::ShiftExponent(delta) => out.q_exp += delta,
        }
        out
    }

    /// The factors are unchanged by `a -> 1/a`.
    pub fn is_a_symmetric(&self) -> bool {
        let mirror_p = |v: &[(ABase, i64, i64)]| {
            let mut m: Vec<_> = v.iter().map(|&(b, l, e)| (b.mirrored(), l, e)).collect();
            m.sort();
            m
        };
        let mirror_l = |v: &[(ABase, i64)]| {
            let mut m: Vec<_> = v.iter().map(|&(b, e)| (b.mirrored(), e)).collect();
            m.sort();
            m
        };
        let mut p = self.pochs.clone();
        let mut l = self.linears.clone();
        p.sort();
        l.sort();
        p == mirror_p(&self.pochs) && l == mirror_l(&self.linears)
    }

    /// Exact value after `a = q^a_sub`.
    pub fn factored(&self, a_sub: i64) -> Result<Option<CycloProduct>> {
        let mut out = CycloProduct::constant(crate::polyarith::rat_int(self.sign))
            .mul(&CycloProduct::q_pow(self.q_exp));
        let mut vanishes = false;
        for &(base, len, mult) in &self.pochs {
            match CycloProduct::pochhammer(base.at(a_sub), self.step, len)? {
                Some(v) => out = out.mul(&v.pow(mult)),
                None if mult > 0 => vanishes = true,
                None => return Err(Error::Degenerate("closed-form denominator vanishes".into())),
            }
        }
        for &(base, mult) in &self.linears {
            match CycloProduct::one_minus_q_pow(base.at(a_sub)) {
                Some(v) => out = out.mul(&v.pow(mult)),
                None if mult > 0 => vanishes = true,
                None => return Err(Error::Degenerate("closed-form denominator vanishes".into())),
            }
        }
        Ok(if vanishes { None } else { Some(out) })
    }

    /// Build the closed form directly in the ring: Pochhammer products from
    /// their factors, q-powers by square-and-multiply. Only for `a`-free forms.
    pub fn to_ring<'r, F: Field>(&self, ring: &'r ResidueRing<F>) -> Result<RingElement<'r, F>> {
        let mut num = ring.from_i64(self.sign) * ring.pow_q(self.q_exp);
        let mut den = ring.one();
        let mut put = |x: RingElement<'r, F>, mult: i64| {
            let p = x.pow(mult.unsigned_abs());
            if mult > 0 {
                num = num.clone() * p;
            } else {
                den = den.clone() * p;
            }
        };
        for &(base, len, mult) in &self.pochs {
            if base.a != 0 || len < 0 {
                return Err(Error::Internal("to_ring needs a-free, nonnegative-length factors".into()));
            }
            let mut acc = ring.one();
            for j in 0..len {
                acc = acc * ring.one_minus_q_pow(base.q + self.step * j);
            }
            put(acc, mult);
        }
        for &(base, mult) in &self.linears {
            if base.a != 0 {
                return Err(Error::Internal("to_ring needs a-free factors".into()));
            }
            put(ring.one_minus_q_pow(base.q), mult);
        }
        Ok(num * den.invert()?)
    }
}

/// Right-hand side of a congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rhs {
    Zero,
    Form(ClosedForm),
}

impl Rhs {
    pub fn factored(&self, a_sub: i64) -> Result<Option<CycloProduct>> {
        match self {
            Rhs::Zero => Ok(None),
            Rhs::Form(c) => c.factored(a_sub),
        }
    }

    pub fn to_ring<'r, F: Field>(&self, ring: &'r ResidueRing<F>) -> Result<RingElement<'r, F>> {
        match self {
            Rhs::Zero => Ok(ring.zero()),
            Rhs::Form(c) => c.to_ring(ring),
        }
    }

    /// `None` when the right-hand side is zero (nothing to mutate).
    pub fn mutated(&self, m: Mutation) -> Option<Rhs> {
        match self {
            Rhs::Zero => None,
            Rhs::Form(c) => Some(Rhs::Form(c.mutated(m))),
        }
    }
}

/// Negative-control perturbations of a closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    FlipSign,
    ShiftExponent(i64),
}

/// Families of non-parametric summands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SumFamily {
    /// `(q^{d-1};q^d)_k^d q^{dk} / (q^d;q^d)_k^d`
    F1Guo,
    /// `(q^{d+1};q^d)_k^{d-1} (q^{1-d};q^d)_k q^{dk} / (q^d;q^d)_k^d`
    F2Mixed,
    /// `(q^{d+1};q^d)_k^{d-2} (q;q^d)_k^2 q^{dk} / (q^d;q^d)_k^d`
    F3Squared,
    /// `(q^{d+r};q^d)_k^{d-r-1} (q^r;q^d)_k^r (q^{r-d};q^d)_k q^{dk} / (q^d;q^d)_k^d`
    F4Lemma,
    /// `(q^{d+r};q^d)_k^{d-r} (q^r;q^d)_k^{r-1} (q^{r-d};q^d)_k q^{dk} / (q^d;q^d)_k^d`
    F5Thm41,
    /// `(q^{d+r};q^d)_k^{d-r-1} (q^r;q^d)_k^{r+1} q^{dk} / (q^d;q^d)_k^d`
    F6Thm42,
    /// The `r = 1` case of `F4Lemma`, scaled by `(q^d;q^d)_{n-1}^d / (1-q)^{dn-d}`.
    F7Divisibility,
}

impl SumFamily {
    pub fn name(self) -> &'static str {
        match self {
            SumFamily::F1Guo => "F1_GUO",
            SumFamily::F2Mixed => "F2_MIXED",
            SumFamily::F3Squared => "F3_SQUARED",
            SumFamily::F4Lemma => "F4_LEMMA",
            SumFamily::F5Thm41 => "F5_THM41",
            SumFamily::F6Thm42 => "F6_THM42",
            SumFamily::F7Divisibility => "F7_DIVISIBILITY",
        }
    }

    /// The summand (without any prefactor) for parameters `d`, `r`.
    pub fn summand(self, d: i64, r: i64) -> Summand {
        let base = Summand::new(d, d).poch(ABase::q(d), 0, -d);
        match self {
            SumFamily::F1Guo => base.poch(ABase::q(d - 1), 0, d),
            SumFamily::F2Mixed => base
                .poch(ABase::q(d + 1), 0, d - 1)
                .poch(ABase::q(1 - d), 0, 1),
            SumFamily::F3Squared => base.poch(ABase::q(d + 1), 0, d - 2).poch(ABase::q(1), 0, 2),
            SumFamily::F4Lemma => base
                .poch(ABase::q(d + r), 0, d - r - 1)
                .poch(ABase::q(r), 0, r)
                .poch(ABase::q(r - d), 0, 1),
            SumFamily::F5Thm41 => base
                .poch(ABase::q(d + r), 0, d - r)
                .poch(ABase::q(r), 0, r - 1)
                .poch(ABase::q(r - d), 0, 1),
            SumFamily::F6Thm42 => base
                .poch(ABase::q(d + r), 0, d - r - 1)
                .poch(ABase::q(r), 0, r + 1),
            SumFamily::F7Divisibility => SumFamily::F4Lemma.summand(d, 1),
        }
    }
}

/// `hi, hi-2, ..., lo` (empty when `hi < lo`).
pub fn ladder(hi: i64, lo: i64) -> Vec<i64> {
    debug_assert!(hi < lo || (hi - lo) % 2 == 0, "ladder endpoints of mixed parity");
    let mut out = Vec::new();
    let mut c = hi;
    while c >= lo {
        out.push(c);
        c -= 2;
    }
    out
}

/// `ladder(hi, lo)` followed by its negatives.
pub fn sym_ladder(hi: i64, lo: i64) -> Vec<i64> {
    let pos = ladder(hi, lo);
    let mut out = pos.clone();
    out.extend(pos.iter().rev().map(|c| -c));
    out
}

pub(crate) fn exact_div(num: i64, den: i64, what: &str) -> Result<i64> {
    if den == 0 || num % den != 0 {
        Err(Error::Integrality(format!("{what}: {num}/{den}")))
    } else {
        Ok(num / den)
    }
}

/// `A(d,n,r) = [d(d+n)(n+r) + dn(r-1) - (n+r)^2] / (2d) - r(r+1)/2`.
pub fn a_exponent(d: i64, n: i64, r: i64) -> Result<i64> {
    let num = d * (d + n) * (n + r) + d * n * (r - 1) - (n + r) * (n + r);
    Ok(exact_div(num, 2 * d, "A(d,n,r)")? - r * (r + 1) / 2)
}

/// `(d(d+n)(n+1) - (n+1)^2) / (2d)`, the shared exponent of the `r = 1` forms.
pub fn e_exponent(d: i64, n: i64) -> Result<i64> {
    exact_div(d * (d + n) * (n + 1) - (n + 1) * (n + 1), 2 * d, "(d(d+n)(n+1)-(n+1)^2)/(2d)")
}

pub(crate) fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Cache shared by the expansions of one check.
pub(crate) fn new_cache<F: Field>() -> CyclotomicCache<F> {
    CyclotomicCache::new()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_exponent_values() {
        assert_eq!(a_exponent(3, 5, 1).unwrap(), 17);
        assert_eq!(a_exponent(2, 3, 1).unwrap(), 5);
        // A - r agrees with the r = 1 exponent of the squared family
        assert_eq!(a_exponent(3, 5, 1).unwrap() - 1, e_exponent(3, 5).unwrap() - 2);
        assert!(a_exponent(3, 4, 1).is_err());
    }

    #[test]
    fn a_exponent_matches_r_one_forms() {
        for d in 2..9 {
            for m in 1..6 {
                let n = d * m - 1;
                assert_eq!(a_exponent(d, n, 1).unwrap(), e_exponent(d, n).unwrap() - 1);
            }
        }
    }

    #[test]
    fn ladders() {
        assert_eq!(ladder(5, 1), vec![5, 3, 1]);
        assert_eq!(ladder(2, 4), Vec::<i64>::new());
        assert_eq!(sym_ladder(4, 2), vec![4, 2, -2, -4]);
        assert_eq!(ladder(1, -1), vec![1, -1]);
    }

    #[test]
    fn thm41_and_mixed_share_r_one_summand() {
        for d in 2..8 {
            let a = SumFamily::F5Thm41.summand(d, 1);
            let b = SumFamily::F2Mixed.summand(d, 1);
            let c = SumFamily::F6Thm42.summand(d, 1);
            let e = SumFamily::F3Squared.summand(d, 1);
            for k in 0..6 {
                assert_eq!(a.factored(k, 0).unwrap(), b.factored(k, 0).unwrap());
                assert_eq!(c.factored(k, 0).unwrap(), e.factored(k, 0).unwrap());
            }
        }
    }

    #[test]
    fn mutation_changes_form() {
        let c = ClosedForm::new(1, 3, 2).linear(ABase::q(1), 2);
        assert_eq!(c.mutated(Mutation::FlipSign).sign, -1);
        assert_eq!(c.mutated(Mutation::ShiftExponent(1)).q_exp, 4);
        assert!(Rhs::Zero.mutated(Mutation::FlipSign).is_none());
    }
}
