//! Laurent polynomials: a dense body times `q^min_exponent`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::dense::{write_terms, DensePolynomial};
use super::field::Field;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Debug)]
pub struct LaurentPolynomial<F> {
    body: DensePolynomial<F>,
    min_exponent: i64,
}

impl<F: Field> LaurentPolynomial<F> {
    pub fn zero() -> Self {
        Self {
            body: DensePolynomial::zero(),
            min_exponent: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_dense(DensePolynomial::one())
    }

    pub fn constant(c: F) -> Self {
        Self::from_dense(DensePolynomial::constant(c))
    }

    /// `c * q^e`, `e` of any sign.
    pub fn monomial(c: F, e: i64) -> Self {
        Self::new(DensePolynomial::constant(c), e)
    }

    /// `1 - c q^e`.
    pub fn one_minus(c: F, e: i64) -> Self {
        &Self::one() - &Self::monomial(c, e)
    }

    pub fn from_dense(p: DensePolynomial<F>) -> Self {
        Self::new(p, 0)
    }

    /// `body * q^shift`, normalized so the body has a nonzero constant term.
    pub fn new(body: DensePolynomial<F>, shift: i64) -> Self {
        match body.valuation() {
            None => Self::zero(),
            Some(0) => Self {
                body,
                min_exponent: shift,
            },
            Some(v) => Self {
                body: body.unshift(v),
                min_exponent: shift + v as i64,
            },
        }
    }

    pub fn body(&self) -> &DensePolynomial<F> {
        &self.body
    }

    pub fn min_exponent(&self) -> i64 {
        self.min_exponent
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.body
            .degree()
            .map(|d| d as i64 + self.min_exponent)
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: i64) -> F {
        let i = e - self.min_exponent;
        if i < 0 {
            F::zero()
        } else {
            self.body.coeff(i as usize)
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            body: self.body.clone(),
            min_exponent: self.min_exponent + k,
        }
    }

    /// The dense polynomial equal to `self * q^{-min_exponent}`.
    pub fn to_shifted_dense(&self) -> DensePolynomial<F> {
        self.body.clone()
    }

    /// Exact conversion when no negative powers occur.
    pub fn to_dense(&self) -> Option<DensePolynomial<F>> {
        if self.is_zero() {
            Some(DensePolynomial::zero())
        } else if self.min_exponent >= 0 {
            Some(self.body.shift(self.min_exponent as usize))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.body.scale(c), self.min_exponent)
    }

    pub fn pow(&self, e: u64) -> Self {
        Self::new(self.body.pow(e), self.min_exponent * e as i64)
    }

    pub fn eval(&self, x: &F) -> Result<F> {
        if self.is_zero() {
            return Ok(F::zero());
        }
        if x.is_zero() {
            if self.min_exponent < 0 {
                return Err(Error::ZeroBase(self.min_exponent));
            }
            return Ok(if self.min_exponent == 0 {
                self.body.coeff(0)
            } else {
                F::zero()
            });
        }
        let body = self.body.eval(x);
        let scale = if self.min_exponent >= 0 {
            x.pow(self.min_exponent as u64)
        } else {
            x.inv().expect("nonzero").pow(self.min_exponent.unsigned_abs())
        };
        Ok(body.mul_ref(&scale))
    }

    /// Iterate `(exponent, coefficient)` over nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> {
        let m = self.min_exponent;
        self.body
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (i as i64 + m, c))
    }
}

impl<F: Field> Add for &LaurentPolynomial<F> {
    type Output = LaurentPolynomial<F>;
    fn add(self, rhs: Self) -> LaurentPolynomial<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let m = self.min_exponent.min(rhs.min_exponent);
        let a = self.body.shift((self.min_exponent - m) as usize);
        let b = rhs.body.shift((rhs.min_exponent - m) as usize);
        LaurentPolynomial::new(&a + &b, m)
    }
}

impl<F: Field> Sub for &LaurentPolynomial<F> {
    type Output = LaurentPolynomial<F>;
    fn sub(self, rhs: Self) -> LaurentPolynomial<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul for &LaurentPolynomial<F> {
    type Output = LaurentPolynomial<F>;
    fn mul(self, rhs: Self) -> LaurentPolynomial<F> {
        LaurentPolynomial::new(&self.body * &rhs.body, self.min_exponent + rhs.min_exponent)
    }
}

impl<F: Field> Neg for &LaurentPolynomial<F> {
    type Output = LaurentPolynomial<F>;
    fn neg(self) -> LaurentPolynomial<F> {
        LaurentPolynomial {
            body: -&self.body,
            min_exponent: self.min_exponent,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for LaurentPolynomial<F> {
            type Output = LaurentPolynomial<F>;
            fn $m(self, rhs: Self) -> LaurentPolynomial<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> From<DensePolynomial<F>> for LaurentPolynomial<F> {
    fn from(p: DensePolynomial<F>) -> Self {
        Self::from_dense(p)
    }
}

impl<F: Field> fmt::Display for LaurentPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::field::{rat, rat_int, Rational};

    type L = LaurentPolynomial<Rational>;

    #[test]
    fn q_plus_inverse_at_two() {
        let f = &L::monomial(rat_int(1), 1) + &L::monomial(rat_int(1), -1);
        assert_eq!(f.eval(&rat_int(2)).unwrap(), rat(5, 2));
    }

    #[test]
    fn inverse_at_zero_is_an_error() {
        let f = L::monomial(rat_int(1), -1);
        assert_eq!(f.eval(&rat_int(0)), Err(Error::ZeroBase(-1)));
    }

    #[test]
    fn min_exponent_is_tight() {
        let f = L::new(DensePolynomial::from_i64(&[0, 0, 3, 1]), -5);
        assert_eq!(f.min_exponent(), -3);
        assert_eq!(f.body().coeff(0), rat_int(3));
        assert_eq!(f.coeff(-2), rat_int(1));
    }

    #[test]
    fn two_minus_q_minus_inverse() {
        // (1 - q^{-1})(1 - q) = 2 - q - q^{-1}
        let f = &L::one_minus(rat_int(1), -1) * &L::one_minus(rat_int(1), 1);
        let g = &(&L::constant(rat_int(2)) - &L::monomial(rat_int(1), 1))
            - &L::monomial(rat_int(1), -1);
        assert_eq!(f, g);
    }

    #[test]
    fn cancellation_to_zero() {
        let f = L::monomial(rat_int(3), -4);
        assert!((&f - &f).is_zero());
        assert_eq!((&f - &f).min_exponent(), 0);
    }
}
