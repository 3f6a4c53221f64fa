//! The quotient ring `F[q] / (M(q))` for `M = Phi_n^2` or `M = [n]^2`.
//!
//! `q` is a unit because `M(0) = 1`, so Laurent polynomials reduce directly.
//! Rational-function congruences are compared after inverting denominators
//! inside the ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{cyclotomic, q_integer};
use crate::error::{Error, Result};
use crate::factored::CycloProduct;
use crate::polyarith::{poly_divrem, poly_xgcd, DensePolynomial, Field, LaurentPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModulusKind {
    PhiSquared,
    BracketSquared,
}

#[derive(Clone, Debug)]
pub struct ResidueRing<F> {
    modulus: DensePolynomial<F>,
    n: u64,
    kind: ModulusKind,
    inverse_of_q: DensePolynomial<F>,
}

impl<F: Field> ResidueRing<F> {
    pub fn new(n: i64, kind: ModulusKind) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("n = {n}; every modulus here needs n >= 2")));
        }
        let base = match kind {
            ModulusKind::PhiSquared => cyclotomic::<F>(n)?,
            ModulusKind::BracketSquared => q_integer::<F>(n)?,
        };
        let modulus = &base * &base;
        Self::from_modulus(modulus, n as u64, kind)
    }

    fn from_modulus(modulus: DensePolynomial<F>, n: u64, kind: ModulusKind) -> Result<Self> {
        let c0 = modulus.coeff(0);
        let c0_inv = c0
            .inv()
            .ok_or_else(|| Error::InvalidRing("modulus has zero constant term".into()))?;
        // M = c0 + q * M'  =>  q^{-1} = -M' / c0
        let tail = modulus.unshift_lossy();
        let inverse_of_q = tail.scale(&(-c0_inv));
        let ring = Self {
            modulus,
            n,
            kind,
            inverse_of_q,
        };
        debug_assert!(ring.mul_rep(&DensePolynomial::q(), &ring.inverse_of_q).is_one());
        Ok(ring)
    }

    pub fn phi_squared(n: i64) -> Result<Self> {
        Self::new(n, ModulusKind::PhiSquared)
    }

    pub fn modulus(&self) -> &DensePolynomial<F> {
        &self.modulus
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn kind(&self) -> ModulusKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("nonzero modulus")
    }

    fn rem(&self, p: &DensePolynomial<F>) -> DensePolynomial<F> {
        if p.degree().is_none_or(|d| d < self.degree()) {
            return p.clone();
        }
        poly_divrem(p, &self.modulus).expect("nonzero modulus").1
    }

    fn mul_rep(&self, a: &DensePolynomial<F>, b: &DensePolynomial<F>) -> DensePolynomial<F> {
        self.rem(&(a * b))
    }

    fn wrap(&self, rep: DensePolynomial<F>) -> RingElement<'_, F> {
        RingElement { ring: self, rep }
    }

    pub fn zero(&self) -> RingElement<'_, F> {
        self.wrap(DensePolynomial::zero())
    }

    pub fn one(&self) -> RingElement<'_, F> {
        self.wrap(DensePolynomial::one())
    }

    pub fn constant(&self, c: F) -> RingElement<'_, F> {
        self.wrap(DensePolynomial::constant(c))
    }

    pub fn from_i64(&self, c: i64) -> RingElement<'_, F> {
        self.constant(F::from_i64(c))
    }

    pub fn inverse_of_q(&self) -> RingElement<'_, F> {
        self.wrap(self.inverse_of_q.clone())
    }

    pub fn reduce_dense(&self, f: &DensePolynomial<F>) -> RingElement<'_, F> {
        self.wrap(self.rem(f))
    }

    /// Canonical residue of a Laurent polynomial.
    pub fn reduce(&self, f: &LaurentPolynomial<F>) -> RingElement<'_, F> {
        let body = self.reduce_dense(f.body());
        if f.min_exponent() == 0 {
            body
        } else {
            body * self.pow_q(f.min_exponent())
        }
    }

    /// Class of `q^e` by square-and-multiply, using the cached inverse of `q`
    /// for negative `e`.
    pub fn pow_q(&self, e: i64) -> RingElement<'_, F> {
        let base = if e >= 0 {
            self.reduce_dense(&DensePolynomial::q())
        } else {
            self.inverse_of_q()
        };
        base.pow(e.unsigned_abs())
    }

    /// Class of `1 - q^e`.
    pub fn one_minus_q_pow(&self, e: i64) -> RingElement<'_, F> {
        self.one() - self.pow_q(e)
    }

    /// Map a cyclotomic product into the ring; negative exponents are inverted.
    pub fn from_cyclo(
        &self,
        p: &CycloProduct,
        cache: &mut crate::cyclotomic::CyclotomicCache<F>,
    ) -> Result<RingElement<'_, F>> {
        let mut num = self.constant(F::from_rational(p.coeff())?) * self.pow_q(p.q_shift());
        let mut den = self.one();
        for (&m, &e) in p.exponents() {
            let phi = self.reduce_dense(cache.get(m)?).pow(e.unsigned_abs());
            if e > 0 {
                num = num * phi;
            } else {
                den = den * phi;
            }
        }
        Ok(num * den.invert()?)
    }
}

trait UnshiftLossy {
    fn unshift_lossy(&self) -> Self;
}

impl<F: Field> UnshiftLossy for DensePolynomial<F> {
    /// Drop the constant term and divide by `q`.
    fn unshift_lossy(&self) -> Self {
        DensePolynomial::from_coeffs(self.coeffs().iter().skip(1).cloned().collect())
    }
}

/// A residue class, stored as the canonical remainder modulo `M`.
#[derive(Clone)]
pub struct RingElement<'r, F> {
    ring: &'r ResidueRing<F>,
    rep: DensePolynomial<F>,
}

impl<'r, F: Field> RingElement<'r, F> {
    pub fn ring(&self) -> &'r ResidueRing<F> {
        self.ring
    }

    pub fn rep(&self) -> &DensePolynomial<F> {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Signed power; negative exponents invert first.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.invert()?.pow(e.unsigned_abs()))
        }
    }

    /// Inverse by extended Euclid; the witness of a failure is the gcd.
    pub fn invert(&self) -> Result<Self> {
        if self.rep.is_zero() {
            return Err(Error::NonUnit {
                gcd: self.ring.modulus.to_string(),
            });
        }
        let (g, s, _) = poly_xgcd(&self.rep, &self.ring.modulus)?;
        if !g.is_one() {
            return Err(Error::NonUnit { gcd: g.to_string() });
        }
        Ok(self.ring.reduce_dense(&s))
    }

    fn same_ring(&self, other: &Self) {
        assert!(
            std::ptr::eq(self.ring, other.ring),
            "ring elements from different rings"
        );
    }
}

impl<F: Field> PartialEq for RingElement<'_, F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other);
        self.rep == other.rep
    }
}

impl<F: Field> fmt::Debug for RingElement<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod {:?}(n={})", self.rep, self.ring.kind, self.ring.n)
    }
}

impl<F: Field> fmt::Display for RingElement<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl<'r, F: Field> Add for RingElement<'r, F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.same_ring(&rhs);
        RingElement {
            ring: self.ring,
            rep: &self.rep + &rhs.rep,
        }
    }
}

impl<'r, F: Field> Sub for RingElement<'r, F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.same_ring(&rhs);
        RingElement {
            ring: self.ring,
            rep: &self.rep - &rhs.rep,
        }
    }
}

impl<'r, F: Field> Mul for RingElement<'r, F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.same_ring(&rhs);
        RingElement {
            ring: self.ring,
            rep: self.ring.mul_rep(&self.rep, &rhs.rep),
        }
    }
}

impl<'r, F: Field> Neg for RingElement<'r, F> {
    type Output = Self;
    fn neg(self) -> Self {
        RingElement {
            ring: self.ring,
            rep: -&self.rep,
        }
    }
}

/// Free-function form of [`ResidueRing::reduce`].
pub fn ring_reduce<'r, F: Field>(ring: &'r ResidueRing<F>, f: &LaurentPolynomial<F>) -> RingElement<'r, F> {
    ring.reduce(f)
}

/// Free-function form of [`RingElement::invert`].
pub fn ring_invert<'r, F: Field>(x: &RingElement<'r, F>) -> Result<RingElement<'r, F>> {
    x.invert()
}

/// Free-function form of [`ResidueRing::pow_q`].
pub fn ring_pow_q<F: Field>(ring: &ResidueRing<F>, e: i64) -> RingElement<'_, F> {
    ring.pow_q(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::{rat_int, Rational};

    type R = ResidueRing<Rational>;
    type L = LaurentPolynomial<Rational>;

    #[test]
    fn n_one_rejected() {
        assert!(R::new(1, ModulusKind::PhiSquared).is_err());
        assert!(R::new(0, ModulusKind::BracketSquared).is_err());
    }

    #[test]
    fn constant_term_is_one_and_q_is_a_unit() {
        for n in 2..=12 {
            for kind in [ModulusKind::PhiSquared, ModulusKind::BracketSquared] {
                let ring = R::new(n, kind).unwrap();
                assert_eq!(ring.modulus().coeff(0), rat_int(1));
                assert!((ring.pow_q(1) * ring.inverse_of_q()).is_one());
            }
        }
    }

    #[test]
    fn q_to_the_n_is_not_one() {
        let ring = R::phi_squared(5).unwrap();
        let qn = ring.reduce(&L::monomial(rat_int(1), 5));
        assert!(!qn.is_one());
        // but q^n - 1 squares to zero
        let x = qn - ring.one();
        assert!(!x.is_zero());
        assert!((x.clone() * x).is_zero());
    }

    #[test]
    fn unit_consistency_for_negative_powers() {
        let ring = R::phi_squared(5).unwrap();
        let f = &(&L::constant(rat_int(2)) - &L::monomial(rat_int(1), 1)) - &L::monomial(rat_int(1), -1);
        let g = L::monomial(rat_int(-1), -1) * L::from_dense(DensePolynomial::from_i64(&[1, -2, 1]));
        assert_eq!(ring.reduce(&f), ring.reduce(&g));
        assert_eq!(ring.reduce(&f) * ring.pow_q(1), ring.reduce(&f.shift(1)));
    }

    #[test]
    fn inversion() {
        let ring = R::phi_squared(5).unwrap();
        let q = ring.pow_q(1);
        assert_eq!(q.invert().unwrap(), ring.inverse_of_q());
        let x = ring.one_minus_q_pow(3);
        assert!((x.invert().unwrap() * x).is_one());
        let bad = ring.one_minus_q_pow(5);
        assert!(matches!(bad.invert(), Err(Error::NonUnit { .. })));
    }

    #[test]
    fn pow_q_consistency() {
        let ring = R::phi_squared(7).unwrap();
        assert!(ring.pow_q(0).is_one());
        let e = ring.degree() as i64 + 3;
        assert_eq!(ring.pow_q(e), ring.reduce(&L::monomial(rat_int(1), e)));
        assert!((ring.pow_q(-1) * ring.pow_q(1)).is_one());
        assert_eq!(ring.pow_q(-9) * ring.pow_q(4), ring.pow_q(-5));
    }
}
