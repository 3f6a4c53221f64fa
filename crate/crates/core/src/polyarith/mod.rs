//! Exact scalar and univariate polynomial arithmetic.

mod dense;
mod field;
mod laurent;
mod ratfunc;

pub use dense::{poly_divrem, poly_exact_div, poly_gcd, poly_xgcd, DensePolynomial};
pub use field::{
    rat, rat_int, rational_mod, Field, Fp0, Fp1, Fp2, Fp3, Fp4, Fp5, PrimeField, Rational,
    FAST_PRIMES,
};
pub use laurent::LaurentPolynomial;
pub use ratfunc::RationalFunction;

use crate::error::Result;

/// Things that can be evaluated at a point of their coefficient field.
pub trait Evaluate<F: Field> {
    fn evaluate(&self, x: &F) -> Result<F>;
}

impl<F: Field> Evaluate<F> for DensePolynomial<F> {
    fn evaluate(&self, x: &F) -> Result<F> {
        Ok(self.eval(x))
    }
}

impl<F: Field> Evaluate<F> for LaurentPolynomial<F> {
    fn evaluate(&self, x: &F) -> Result<F> {
        self.eval(x)
    }
}

impl<F: Field> Evaluate<F> for RationalFunction<F> {
    fn evaluate(&self, x: &F) -> Result<F> {
        self.eval(x)
    }
}

/// Exact evaluation at a rational point.
pub fn eval_at_rational<E: Evaluate<Rational>>(f: &E, x: &Rational) -> Result<Rational> {
    f.evaluate(x)
}
