//! Coefficient fields.
//!
//! Exact work happens over [`Rational`]. The optional fast mode runs the very
//! same code over [`PrimeField`], a word-sized prime field.

use std::fmt;
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; `num-rational` keeps it in lowest terms with
/// a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Field operations needed by the polynomial and residue-ring code.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Result<Self>;

    /// Whether the value is an integer; always true in a prime field.
    fn is_integer(&self) -> bool {
        true
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out *= other;
        out
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out += other;
        out
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out -= other;
        out
    }

    /// Coefficients of the product of two nonempty coefficient vectors.
    fn poly_mul(a: &[Self], b: &[Self]) -> Vec<Self> {
        let mut out = vec![Self::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += &x.mul_ref(y);
                }
            }
        }
        out
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        rat_int(v)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &Rational) -> Result<Self> {
        Ok(r.clone())
    }
    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }

    /// Clears denominators and multiplies over `BigInt`, so only the final
    /// coefficients are normalized.
    fn poly_mul(a: &[Self], b: &[Self]) -> Vec<Self> {
        let (ia, da) = clear_denominators(a);
        let (ib, db) = clear_denominators(b);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in ia.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in ib.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        out.into_iter()
            .map(|c| if den.is_one() { Ratio::from_integer(c) } else { Ratio::new(c, den.clone()) })
            .collect()
    }
}

/// Integer numerators over the lcm of the denominators.
fn clear_denominators(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (ints, l)
}

/// Integers modulo a fixed prime `P < 2^63`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PrimeField<const P: u64>(u64);

impl<const P: u64> PrimeField<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: u64) -> Self {
        Self(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn from_bigint(v: &BigInt) -> Self {
        let m = BigInt::from(P);
        let r = v.mod_floor(&m);
        Self(r.to_u64().expect("reduced residue fits in u64"))
    }
}

impl<const P: u64> fmt::Debug for PrimeField<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> fmt::Display for PrimeField<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // symmetric representative reads better in witnesses
        if self.0 > P / 2 {
            write!(f, "-{}", P - self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl<const P: u64> Neg for PrimeField<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Self(P - self.0)
        }
    }
}

impl<'a, const P: u64> AddAssign<&'a Self> for PrimeField<P> {
    fn add_assign(&mut self, rhs: &'a Self) {
        let s = self.0 as u128 + rhs.0 as u128;
        self.0 = (s % P as u128) as u64;
    }
}

impl<'a, const P: u64> SubAssign<&'a Self> for PrimeField<P> {
    fn sub_assign(&mut self, rhs: &'a Self) {
        self.0 = if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            P - (rhs.0 - self.0)
        };
    }
}

impl<'a, const P: u64> MulAssign<&'a Self> for PrimeField<P> {
    fn mul_assign(&mut self, rhs: &'a Self) {
        self.0 = ((self.0 as u128 * rhs.0 as u128) % P as u128) as u64;
    }
}

impl<const P: u64> Field for PrimeField<P> {
    fn zero() -> Self {
        Self(0)
    }
    fn one() -> Self {
        Self(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn from_i64(v: i64) -> Self {
        Self(v.rem_euclid(P as i64) as u64)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(Field::pow(self, P - 2))
        }
    }
    fn from_rational(r: &Rational) -> Result<Self> {
        let den = Self::from_bigint(r.denom());
        let inv = den
            .inv()
            .ok_or_else(|| Error::NotRepresentable(format!("{r} has denominator divisible by {P}")))?;
        let mut out = Self::from_bigint(r.numer());
        out *= &inv;
        Ok(out)
    }
}

/// Primes just below 2^61 used by the fast mode.
pub const FAST_PRIMES: [u64; 6] = [
    2305843009213693951,
    2305843009213693921,
    2305843009213693907,
    2305843009213693723,
    2305843009213693693,
    2305843009213693669,
];

pub type Fp0 = PrimeField<{ FAST_PRIMES[0] }>;
pub type Fp1 = PrimeField<{ FAST_PRIMES[1] }>;
pub type Fp2 = PrimeField<{ FAST_PRIMES[2] }>;
pub type Fp3 = PrimeField<{ FAST_PRIMES[3] }>;
pub type Fp4 = PrimeField<{ FAST_PRIMES[4] }>;
pub type Fp5 = PrimeField<{ FAST_PRIMES[5] }>;

/// Reduce a rational modulo an arbitrary integer `m`; fails when the
/// denominator is not invertible.
pub fn rational_mod(r: &Rational, m: &BigInt) -> Option<BigInt> {
    let den = r.denom().mod_floor(m);
    let g = den.extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    let inv = g.x.mod_floor(m);
    Some((r.numer().mod_floor(m) * inv).mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let a = Fp0::from_i64(-12345);
        let b = a.inv().unwrap();
        assert!(a.mul_ref(&b).is_one());
        assert!(Fp0::zero().inv().is_none());
    }

    #[test]
    fn rational_maps_into_prime_field() {
        let half = Fp1::from_rational(&rat(1, 2)).unwrap();
        let two = Fp1::from_i64(2);
        assert!(half.mul_ref(&two).is_one());
    }

    #[test]
    fn rational_mod_small() {
        // 3/4 mod 25: 4^{-1} = 19, 3*19 = 57 = 7
        let r = rational_mod(&rat(3, 4), &BigInt::from(25)).unwrap();
        assert_eq!(r, BigInt::from(7));
        assert!(rational_mod(&rat(1, 5), &BigInt::from(25)).is_none());
    }

    #[test]
    fn rational_stays_reduced() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rat(0, 7).denom(), &BigInt::from(1));
    }
}
