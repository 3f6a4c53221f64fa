//! Dense univariate polynomials in `q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use crate::error::{Error, Result};

/// Coefficient list indexed by exponent; the zero polynomial is the empty list
/// and the highest stored coefficient is never zero.
#[derive(Clone, PartialEq, Debug)]
pub struct DensePolynomial<F> {
    coeffs: Vec<F>,
}

impl<F: Field> DensePolynomial<F> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^e`.
    pub fn monomial(c: F, e: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); e + 1];
        coeffs[e] = c;
        Self { coeffs }
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    /// `1 - c q^e` for `e >= 0`.
    pub fn one_minus(c: F, e: usize) -> Self {
        Self::one() - Self::monomial(c, e)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Divide by `q^k`; the caller guarantees the low `k` coefficients vanish.
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replace `q` by `q^k`.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self { coeffs }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn divrem(&self, b: &Self) -> Result<(Self, Self)> {
        poly_divrem(self, b)
    }
}

/// Euclidean division: `a = b * quotient + remainder` with
/// `deg(remainder) < deg(b)`.
pub fn poly_divrem<F: Field>(
    a: &DensePolynomial<F>,
    b: &DensePolynomial<F>,
) -> Result<(DensePolynomial<F>, DensePolynomial<F>)> {
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    let da = match a.degree() {
        Some(da) if da >= db => da,
        _ => return Ok((DensePolynomial::zero(), a.clone())),
    };
    let lead_inv = b.coeffs[db].inv().expect("nonzero leading coefficient");
    let monic_divisor = lead_inv.is_one();
    let mut rem = a.coeffs.clone();
    let mut quot = vec![F::zero(); da - db + 1];
    for i in (0..=da - db).rev() {
        let top = &rem[i + db];
        if top.is_zero() {
            continue;
        }
        let c = if monic_divisor {
            top.clone()
        } else {
            top.mul_ref(&lead_inv)
        };
        for (j, bj) in b.coeffs.iter().enumerate() {
            if !bj.is_zero() {
                rem[i + j] -= &c.mul_ref(bj);
            }
        }
        quot[i] = c;
    }
    rem.truncate(db);
    Ok((
        DensePolynomial::from_coeffs(quot),
        DensePolynomial::from_coeffs(rem),
    ))
}

/// Exact division; errors when the remainder is nonzero.
pub fn poly_exact_div<F: Field>(
    a: &DensePolynomial<F>,
    b: &DensePolynomial<F>,
) -> Result<DensePolynomial<F>> {
    let (q, r) = poly_divrem(a, b)?;
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::Internal(format!(
            "inexact polynomial division (remainder of degree {:?})",
            r.degree()
        )))
    }
}

/// Extended Euclid: returns monic `g = gcd(a, b)` with `g = s*a + t*b`.
pub fn poly_xgcd<F: Field>(
    a: &DensePolynomial<F>,
    b: &DensePolynomial<F>,
) -> Result<(DensePolynomial<F>, DensePolynomial<F>, DensePolynomial<F>)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidArgument("xgcd of two zero polynomials".into()));
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (DensePolynomial::one(), DensePolynomial::zero());
    let (mut t0, mut t1) = (DensePolynomial::zero(), DensePolynomial::one());
    while !r1.is_zero() {
        let (quo, rem) = poly_divrem(&r0, &r1)?;
        let s2 = &s0 - &(&quo * &s1);
        let t2 = &t0 - &(&quo * &t1);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let lead_inv = r0.leading().and_then(|l| l.inv()).expect("nonzero gcd");
    Ok((r0.scale(&lead_inv), s0.scale(&lead_inv), t0.scale(&lead_inv)))
}

pub fn poly_gcd<F: Field>(a: &DensePolynomial<F>, b: &DensePolynomial<F>) -> DensePolynomial<F> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let rem = poly_divrem(&r0, &r1).expect("nonzero divisor").1;
        r0 = std::mem::replace(&mut r1, rem);
    }
    r0.monic()
}

impl<F: Field> Add for &DensePolynomial<F> {
    type Output = DensePolynomial<F>;
    fn add(self, rhs: Self) -> DensePolynomial<F> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        DensePolynomial::from_coeffs(coeffs)
    }
}

impl<F: Field> Sub for &DensePolynomial<F> {
    type Output = DensePolynomial<F>;
    fn sub(self, rhs: Self) -> DensePolynomial<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, F::zero());
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        DensePolynomial::from_coeffs(coeffs)
    }
}

impl<F: Field> Mul for &DensePolynomial<F> {
    type Output = DensePolynomial<F>;
    fn mul(self, rhs: Self) -> DensePolynomial<F> {
        if self.is_zero() || rhs.is_zero() {
            return DensePolynomial::zero();
        }
        DensePolynomial::from_coeffs(F::poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl<F: Field> Neg for &DensePolynomial<F> {
    type Output = DensePolynomial<F>;
    fn neg(self) -> DensePolynomial<F> {
        DensePolynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for DensePolynomial<F> {
            type Output = DensePolynomial<F>;
            fn $m(self, rhs: Self) -> DensePolynomial<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> Neg for DensePolynomial<F> {
    type Output = DensePolynomial<F>;
    fn neg(self) -> DensePolynomial<F> {
        -&self
    }
}

impl<F: Field> fmt::Display for DensePolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c)))
    }
}

/// Shared pretty-printer for dense and Laurent polynomials; long polynomials
/// are elided in the middle.
pub(crate) fn write_terms<'a, F: Field>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a F)>,
) -> fmt::Result {
    const SHOWN: usize = 12;
    let nonzero: Vec<(i64, &F)> = terms.filter(|(_, c)| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return write!(f, "0");
    }
    let total = nonzero.len();
    for (idx, (e, c)) in nonzero.iter().enumerate() {
        if total > SHOWN && idx == SHOWN / 2 {
            write!(f, " + ...({} terms)...", total - SHOWN)?;
        }
        if total > SHOWN && idx >= SHOWN / 2 && idx < total - SHOWN / 2 {
            continue;
        }
        if idx > 0 {
            write!(f, " + ")?;
        }
        match *e {
            0 => write!(f, "{c}")?,
            1 => write!(f, "({c})*q")?,
            _ => write!(f, "({c})*q^{e}")?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::field::Rational;

    type P = DensePolynomial<Rational>;

    #[test]
    fn divrem_difference_of_squares() {
        let (q, r) = poly_divrem(&P::from_i64(&[-1, 0, 1]), &P::from_i64(&[-1, 1])).unwrap();
        assert_eq!(q, P::from_i64(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn divrem_identity_case() {
        let (q, r) = poly_divrem(&P::q(), &P::q()).unwrap();
        assert_eq!(q, P::one());
        assert!(r.is_zero());
    }

    #[test]
    fn divrem_hand_checked() {
        // q^3 + 2q + 1 = (q^2 + 1) q + (q + 1)
        let (q, r) = poly_divrem(&P::from_i64(&[1, 2, 0, 1]), &P::from_i64(&[1, 0, 1])).unwrap();
        assert_eq!(q, P::q());
        assert_eq!(r, P::from_i64(&[1, 1]));
    }

    #[test]
    fn divrem_by_zero_fails() {
        assert_eq!(poly_divrem(&P::q(), &P::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn xgcd_coprime_linear() {
        let a = P::from_i64(&[-1, 1]);
        let b = P::from_i64(&[1, 1]);
        let (g, s, t) = poly_xgcd(&a, &b).unwrap();
        assert!(g.is_one());
        assert!((&(&s * &a) + &(&t * &b)).is_one());
    }

    #[test]
    fn xgcd_divisor_case() {
        let a = P::from_i64(&[-1, 0, 1]);
        let b = P::from_i64(&[-1, 1]);
        let (g, s, t) = poly_xgcd(&a, &b).unwrap();
        assert_eq!(g, b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn xgcd_cyclotomic_five_and_q() {
        let phi5 = P::from_i64(&[1, 1, 1, 1, 1]);
        let (g, s, t) = poly_xgcd(&phi5, &P::q()).unwrap();
        assert!(g.is_one());
        assert!((&(&s * &phi5) + &(&t * &P::q())).is_one());
    }

    #[test]
    fn xgcd_rejects_two_zeros() {
        assert!(poly_xgcd(&P::zero(), &P::zero()).is_err());
    }

    #[test]
    fn normalization_trims_zeros() {
        let p = P::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(P::from_i64(&[0, 0]).is_zero());
        assert_eq!(P::zero().degree(), None);
    }

    #[test]
    fn display_elides_long_polynomials() {
        let p = P::from_i64(&[1; 40]);
        let s = p.to_string();
        assert!(s.contains("28 terms"));
    }
}
