//! Rational functions in `q` with a canonical reduced form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::dense::{poly_exact_div, poly_gcd, DensePolynomial};
use super::field::Field;
use super::laurent::LaurentPolynomial;
use crate::error::{Error, Result};

/// `numerator / denominator` where the denominator is monic, has nonzero
/// constant term, and is coprime to the numerator body.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalFunction<F> {
    numerator: LaurentPolynomial<F>,
    denominator: DensePolynomial<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn zero() -> Self {
        Self::from_laurent(LaurentPolynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPolynomial::one())
    }

    pub fn from_laurent(numerator: LaurentPolynomial<F>) -> Self {
        Self {
            numerator,
            denominator: DensePolynomial::one(),
        }
    }

    pub fn new(numerator: LaurentPolynomial<F>, denominator: LaurentPolynomial<F>) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if numerator.is_zero() {
            return Ok(Self::zero());
        }
        // move all q-powers into the numerator's offset
        let shift = numerator.min_exponent() - denominator.min_exponent();
        let num = numerator.body().clone();
        let den = denominator.body().clone();
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (poly_exact_div(&num, &g)?, poly_exact_div(&den, &g)?)
        };
        let lead = den.leading().cloned().expect("nonzero denominator");
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(Self {
            numerator: LaurentPolynomial::new(num, shift),
            denominator: den,
        })
    }

    pub fn numerator(&self) -> &LaurentPolynomial<F> {
        &self.numerator
    }

    pub fn denominator(&self) -> &DensePolynomial<F> {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(LaurentPolynomial::from_dense(self.denominator.clone()), self.numerator.clone())
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Self {
            numerator: base.numerator.pow(k),
            denominator: base.denominator.pow(k),
        })
    }

    pub fn eval(&self, x: &F) -> Result<F> {
        let den = self.denominator.eval(x);
        let inv = den.inv().ok_or_else(|| Error::Pole(x.to_string()))?;
        Ok(self.numerator.eval(x)?.mul_ref(&inv))
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Self::new(
            &self.numerator * &LaurentPolynomial::from_dense(rhs.denominator.clone()),
            &LaurentPolynomial::from_dense(self.denominator.clone()) * &rhs.numerator,
        )
    }
}

impl<F: Field> Add for &RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn add(self, rhs: Self) -> RationalFunction<F> {
        if self.denominator == rhs.denominator {
            return RationalFunction::new(
                &self.numerator + &rhs.numerator,
                LaurentPolynomial::from_dense(self.denominator.clone()),
            )
            .expect("nonzero denominator");
        }
        let a = LaurentPolynomial::from_dense(self.denominator.clone());
        let b = LaurentPolynomial::from_dense(rhs.denominator.clone());
        RationalFunction::new(&(&self.numerator * &b) + &(&rhs.numerator * &a), &a * &b)
            .expect("nonzero denominator")
    }
}

impl<F: Field> Neg for &RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn neg(self) -> RationalFunction<F> {
        RationalFunction {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }
}

impl<F: Field> Sub for &RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn sub(self, rhs: Self) -> RationalFunction<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul for &RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn mul(self, rhs: Self) -> RationalFunction<F> {
        RationalFunction::new(
            &self.numerator * &rhs.numerator,
            LaurentPolynomial::from_dense(&self.denominator * &rhs.denominator),
        )
        .expect("nonzero denominator")
    }
}

/// Panics on division by zero; use [`RationalFunction::inv`] to handle it.
impl<F: Field> Div for &RationalFunction<F> {
    type Output = RationalFunction<F>;
    fn div(self, rhs: Self) -> RationalFunction<F> {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl<F: Field> From<LaurentPolynomial<F>> for RationalFunction<F> {
    fn from(p: LaurentPolynomial<F>) -> Self {
        Self::from_laurent(p)
    }
}

impl<F: Field> From<DensePolynomial<F>> for RationalFunction<F> {
    fn from(p: DensePolynomial<F>) -> Self {
        Self::from_laurent(LaurentPolynomial::from_dense(p))
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::field::{rat_int, Rational};

    type R = RationalFunction<Rational>;
    type L = LaurentPolynomial<Rational>;

    #[test]
    fn cancellation_at_three() {
        // (q^2 - 1)/(q - 1) at 3 is 4
        let f = R::new(
            L::from_dense(DensePolynomial::from_i64(&[-1, 0, 1])),
            L::from_dense(DensePolynomial::from_i64(&[-1, 1])),
        )
        .unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.eval(&rat_int(3)).unwrap(), rat_int(4));
    }

    #[test]
    fn pole_is_reported() {
        let f = R::new(L::one(), L::from_dense(DensePolynomial::from_i64(&[-1, 1]))).unwrap();
        assert!(matches!(f.eval(&rat_int(1)), Err(Error::Pole(_))));
    }

    #[test]
    fn canonical_form_is_unique() {
        // q/(q^2 - q) == 1/(q - 1)
        let a = R::new(
            L::monomial(rat_int(1), 1),
            L::from_dense(DensePolynomial::from_i64(&[0, -1, 1])),
        )
        .unwrap();
        let b = R::new(
            L::constant(rat_int(2)),
            L::from_dense(DensePolynomial::from_i64(&[-2, 2])),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn inverse_round_trip() {
        let f = R::new(
            L::one_minus(rat_int(1), -3),
            L::from_dense(DensePolynomial::from_i64(&[1, 1, 1])),
        )
        .unwrap();
        let g = f.inv().unwrap();
        assert_eq!(&f * &g, R::one());
        assert_eq!(g.inv().unwrap(), f);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(R::new(L::one(), L::zero()), Err(Error::DivisionByZero));
    }
}
