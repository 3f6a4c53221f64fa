//! Products of cyclotomic polynomials, `c * q^s * prod_m Phi_m(q)^{e_m}`.
//!
//! Every factor `1 - q^e` with `e != 0` splits into cyclotomic polynomials, so
//! all Pochhammer products with unit-coefficient bases live here with exact
//! cancellation for free. Sums of such products are assembled over a common
//! denominator only at the end.

use std::collections::BTreeMap;
use std::fmt;


use crate::cyclotomic::{cyclotomic_at_one, divisors, CyclotomicCache};
use crate::error::{Error, Result};
use crate::polyarith::{rat_int, DensePolynomial, Field, LaurentPolynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloProduct {
    coeff: Rational,
    q_shift: i64,
    exps: BTreeMap<u64, i64>,
}

impl CycloProduct {
    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(coeff: Rational) -> Self {
        assert!(!coeff.is_zero(), "CycloProduct coefficient must be nonzero");
        Self {
            coeff,
            q_shift: 0,
            exps: BTreeMap::new(),
        }
    }

    pub fn q_pow(e: i64) -> Self {
        Self {
            coeff: Rational::one(),
            q_shift: e,
            exps: BTreeMap::new(),
        }
    }

    pub fn phi(m: u64, e: i64) -> Self {
        let mut out = Self::one();
        out.bump(m, e);
        out
    }

    /// `1 - q^e`; `None` when `e == 0` (the zero polynomial).
    pub fn one_minus_q_pow(e: i64) -> Option<Self> {
        if e == 0 {
            return None;
        }
        let f = e.unsigned_abs();
        let mut out = if e > 0 {
            // 1 - q^f = -(q^f - 1)
            Self::constant(rat_int(-1))
        } else {
            // 1 - q^{-f} = q^{-f} (q^f - 1)
            Self::q_pow(e)
        };
        for m in divisors(f) {
            out.bump(m, 1);
        }
        Some(out)
    }

    /// `(q^base; q^step)_len` for a unit-coefficient base.
    /// `Ok(None)` when a numerator factor vanishes; a vanishing denominator
    /// factor (negative `len`) is a degenerate error.
    pub fn pochhammer(base: i64, step: i64, len: i64) -> Result<Option<Self>> {
        let mut out = Self::one();
        if len >= 0 {
            for j in 0..len {
                match Self::one_minus_q_pow(base + step * j) {
                    Some(f) => out = out.mul(&f),
                    None => return Ok(None),
                }
            }
        } else {
            for j in 1..=-len {
                match Self::one_minus_q_pow(base - step * j) {
                    Some(f) => out = out.div(&f),
                    None => {
                        return Err(Error::Degenerate(format!(
                            "(q^{base};q^{step})_{len} has a vanishing denominator factor"
                        )))
                    }
                }
            }
        }
        Ok(Some(out))
    }

    fn bump(&mut self, m: u64, e: i64) {
        let slot = self.exps.entry(m).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exps.remove(&m);
        }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn q_shift(&self) -> i64 {
        self.q_shift
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exps
    }

    pub fn exponent_of(&self, m: u64) -> i64 {
        self.exps.get(&m).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.coeff *= &other.coeff;
        out.q_shift += other.q_shift;
        for (&m, &e) in &other.exps {
            out.bump(m, e);
        }
        out
    }

    pub fn inv(&self) -> Self {
        Self {
            coeff: self.coeff.recip(),
            q_shift: -self.q_shift,
            exps: self.exps.iter().map(|(&m, &e)| (m, -e)).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let k = e.unsigned_abs();
        let mut coeff = Rational::one();
        for _ in 0..k {
            coeff *= &base.coeff;
        }
        Self {
            coeff,
            q_shift: base.q_shift * k as i64,
            exps: base.exps.iter().map(|(&m, &x)| (m, x * k as i64)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        out.coeff *= c;
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat_int(-1))
    }

    /// Value at `q = 1`; requires the exponent of `Phi_1 = q - 1` to be zero.
    pub fn eval_at_one(&self) -> Result<Rational> {
        if self.exponent_of(1) != 0 {
            return Err(Error::Pole(format!(
                "q = 1 (Phi_1 exponent {})",
                self.exponent_of(1)
            )));
        }
        let mut out = self.coeff.clone();
        for (&m, &e) in &self.exps {
            let v = rat_int(cyclotomic_at_one(m) as i64);
            if e >= 0 {
                for _ in 0..e {
                    out *= &v;
                }
            } else {
                for _ in 0..-e {
                    out /= &v;
                }
            }
        }
        Ok(out)
    }

    /// Expand into `numerator / denominator` over `F`.
    pub fn to_fraction<F: Field>(
        &self,
        cache: &mut CyclotomicCache<F>,
    ) -> Result<(LaurentPolynomial<F>, DensePolynomial<F>)> {
        let mut num = DensePolynomial::constant(F::from_rational(&self.coeff)?);
        let mut den = DensePolynomial::one();
        for (&m, &e) in &self.exps {
            let p = cache.get(m)?.pow(e.unsigned_abs());
            if e > 0 {
                num = &num * &p;
            } else {
                den = &den * &p;
            }
        }
        Ok((LaurentPolynomial::new(num, self.q_shift), den))
    }

    /// Expand a product with no denominator into a Laurent polynomial.
    pub fn to_laurent<F: Field>(&self, cache: &mut CyclotomicCache<F>) -> Result<LaurentPolynomial<F>> {
        if self.exps.values().any(|&e| e < 0) {
            return Err(Error::Internal("product has a nontrivial denominator".into()));
        }
        Ok(self.to_fraction(cache)?.0)
    }
}

impl fmt::Display for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        if self.q_shift != 0 {
            write!(f, "*q^{}", self.q_shift)?;
        }
        for (m, e) in &self.exps {
            write!(f, "*Phi_{m}^{e}")?;
        }
        Ok(())
    }
}

/// A finite sum of cyclotomic products, written over the common denominator
/// `q^{s} prod Phi_m^{g_m}` where `s` and `g_m` are the termwise minima.
#[derive(Clone, Debug)]
pub struct FactoredSum {
    terms: Vec<CycloProduct>,
}

impl FactoredSum {
    pub fn new() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn push(&mut self, t: CycloProduct) {
        self.terms.push(t);
    }

    /// Push an optional term; `None` stands for zero.
    pub fn push_opt(&mut self, t: Option<CycloProduct>) {
        if let Some(t) = t {
            self.terms.push(t);
        }
    }

    pub fn terms(&self) -> &[CycloProduct] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common factor `q^s prod Phi_m^{g_m}` pulled out of every term.
    pub fn common_factor(&self) -> CycloProduct {
        let mut out = CycloProduct::one();
        if self.terms.is_empty() {
            return out;
        }
        out.q_shift = self.terms.iter().map(|t| t.q_shift).min().unwrap_or(0);
        let mut ms: Vec<u64> = self.terms.iter().flat_map(|t| t.exps.keys().copied()).collect();
        ms.sort_unstable();
        ms.dedup();
        for m in ms {
            let g = self.terms.iter().map(|t| t.exponent_of(m)).min().unwrap_or(0);
            out.bump(m, g);
        }
        out
    }

    /// The polynomial `sum_t t / common_factor`; the sum vanishes iff this does.
    pub fn reduced_numerator<F: Field>(&self, cache: &mut CyclotomicCache<F>) -> Result<DensePolynomial<F>> {
        let common = self.common_factor();
        let mut acc = DensePolynomial::zero();
        for t in &self.terms {
            let r = t.div(&common);
            let lp = r.to_laurent(cache)?;
            debug_assert!(lp.is_zero() || lp.min_exponent() >= 0);
            acc = &acc + &lp.to_dense().expect("nonnegative exponents after factoring");
        }
        Ok(acc)
    }

    /// The whole sum as `numerator / denominator` over `F`.
    pub fn to_fraction<F: Field>(
        &self,
        cache: &mut CyclotomicCache<F>,
    ) -> Result<(LaurentPolynomial<F>, DensePolynomial<F>)> {
        let reduced = self.reduced_numerator(cache)?;
        let (cnum, cden) = self.common_factor().to_fraction(cache)?;
        Ok((&cnum * &LaurentPolynomial::from_dense(reduced), cden))
    }

    /// Exact value at `q = 1`, term by term.
    pub fn eval_at_one(&self) -> Result<Rational> {
        let mut acc = Rational::zero();
        for t in &self.terms {
            acc += t.eval_at_one()?;
        }
        Ok(acc)
    }
}

impl Default for FactoredSum {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qobjects::{q_pochhammer, QMonomial};

    type C = CyclotomicCache<Rational>;

    #[test]
    fn one_minus_q_pow_expands() {
        let mut cache = C::new();
        for e in [-7i64, -3, -1, 1, 2, 6, 12] {
            let f = CycloProduct::one_minus_q_pow(e).unwrap();
            let (num, den) = f.to_fraction(&mut cache).unwrap();
            assert!(den.is_one());
            assert_eq!(num, LaurentPolynomial::one_minus(rat_int(1), e), "e = {e}");
        }
        assert!(CycloProduct::one_minus_q_pow(0).is_none());
    }

    #[test]
    fn pochhammer_agrees_with_qobjects() {
        let mut cache = C::new();
        for (b, s, k) in [(1, 3, 4), (-5, 3, 3), (4, 2, 0), (7, 5, -2), (3, 4, -1)] {
            let f = CycloProduct::pochhammer(b, s, k).unwrap().unwrap();
            let (num, den) = f.to_fraction(&mut cache).unwrap();
            let direct = q_pochhammer(&QMonomial::<Rational>::q_pow(b), s, k)
                .unwrap()
                .into_rational();
            let ours = crate::polyarith::RationalFunction::new(num, LaurentPolynomial::from_dense(den)).unwrap();
            assert_eq!(ours, direct, "({b};{s})_{k}");
        }
    }

    #[test]
    fn vanishing_numerator_and_degenerate_denominator() {
        assert_eq!(CycloProduct::pochhammer(-6, 3, 3).unwrap(), None);
        assert!(CycloProduct::pochhammer(-6, 3, 2).unwrap().is_some());
        assert!(CycloProduct::pochhammer(6, 3, -2).is_err());
    }

    #[test]
    fn value_at_one_is_a_limit() {
        // (1-q^6)/(1-q^2) -> 3 at q = 1
        let f = CycloProduct::one_minus_q_pow(6)
            .unwrap()
            .div(&CycloProduct::one_minus_q_pow(2).unwrap());
        assert_eq!(f.eval_at_one().unwrap(), rat_int(3));
        assert!(CycloProduct::one_minus_q_pow(1).unwrap().eval_at_one().is_err());
    }

    #[test]
    fn sum_cancels_to_zero() {
        // (1-q^2) - (1-q)(1+q) = 0
        let mut s = FactoredSum::new();
        s.push(CycloProduct::one_minus_q_pow(2).unwrap());
        let p = CycloProduct::one_minus_q_pow(1).unwrap().mul(&CycloProduct::phi(2, 1));
        s.push(p.neg());
        let mut cache = C::new();
        assert!(s.reduced_numerator(&mut cache).unwrap().is_zero());
    }
}
