//! q-shifted factorials and Gaussian binomial coefficients as exact objects.

use crate::error::{Error, Result};
use crate::polyarith::{
    poly_exact_div, DensePolynomial, Field, LaurentPolynomial, RationalFunction,
};

/// A single term `c * q^e` used as a Pochhammer base.
#[derive(Clone, Debug, PartialEq)]
pub struct QMonomial<F> {
    coefficient: F,
    exponent: i64,
}

impl<F: Field> QMonomial<F> {
    pub fn new(coefficient: F, exponent: i64) -> Result<Self> {
        if coefficient.is_zero() {
            return Err(Error::InvalidArgument("QMonomial coefficient must be nonzero".into()));
        }
        Ok(Self {
            coefficient,
            exponent,
        })
    }

    /// `q^e`.
    pub fn q_pow(exponent: i64) -> Self {
        Self {
            coefficient: F::one(),
            exponent,
        }
    }

    pub fn coefficient(&self) -> &F {
        &self.coefficient
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// `self * q^k`.
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            coefficient: self.coefficient.clone(),
            exponent: self.exponent + k,
        }
    }

    /// `1 - self`.
    pub fn one_minus(&self) -> LaurentPolynomial<F> {
        LaurentPolynomial::one_minus(self.coefficient.clone(), self.exponent)
    }

    /// True when `1 - self` is the zero polynomial.
    pub fn is_one(&self) -> bool {
        self.exponent == 0 && self.coefficient.is_one()
    }
}

/// `(base; q^step)_length`.
#[derive(Clone, Debug, PartialEq)]
pub struct PochhammerSpec<F> {
    pub base: QMonomial<F>,
    pub step: i64,
    pub length: i64,
}

impl<F: Field> PochhammerSpec<F> {
    pub fn new(base: QMonomial<F>, step: i64, length: i64) -> Result<Self> {
        if step < 1 {
            return Err(Error::InvalidArgument(format!("Pochhammer step must be >= 1, got {step}")));
        }
        Ok(Self { base, step, length })
    }

    pub fn evaluate(&self) -> Result<QProduct<F>> {
        q_pochhammer(&self.base, self.step, self.length)
    }
}

/// Value of a q-shifted factorial: a Laurent polynomial for nonnegative
/// length, the reciprocal of one for negative length.
#[derive(Clone, Debug, PartialEq)]
pub enum QProduct<F> {
    Polynomial(LaurentPolynomial<F>),
    Reciprocal(RationalFunction<F>),
}

impl<F: Field> QProduct<F> {
    pub fn into_rational(self) -> RationalFunction<F> {
        match self {
            QProduct::Polynomial(p) => RationalFunction::from_laurent(p),
            QProduct::Reciprocal(r) => r,
        }
    }

    pub fn as_polynomial(&self) -> Option<&LaurentPolynomial<F>> {
        match self {
            QProduct::Polynomial(p) => Some(p),
            QProduct::Reciprocal(_) => None,
        }
    }
}

/// `(x; q^step)_k`. For `k < 0` this is `1 / prod_{j=1}^{-k} (1 - x q^{-step j})`,
/// the only convention compatible with `(x;q)_k = (x;q)_inf / (x q^k;q)_inf`.
pub fn q_pochhammer<F: Field>(x: &QMonomial<F>, step: i64, k: i64) -> Result<QProduct<F>> {
    if step < 1 {
        return Err(Error::InvalidArgument(format!("Pochhammer step must be >= 1, got {step}")));
    }
    if k >= 0 {
        let mut acc = LaurentPolynomial::one();
        for j in 0..k {
            acc = &acc * &x.shifted(step * j).one_minus();
        }
        return Ok(QProduct::Polynomial(acc));
    }
    let mut den = LaurentPolynomial::one();
    for j in 1..=-k {
        let factor = x.shifted(-step * j);
        if factor.is_one() {
            return Err(Error::Degenerate(format!(
                "(q^{};q^{step})_{k} has a vanishing denominator factor",
                x.exponent
            )));
        }
        den = &den * &factor.one_minus();
    }
    Ok(QProduct::Reciprocal(RationalFunction::new(
        LaurentPolynomial::one(),
        den,
    )?))
}

/// `(q;q)_n` as a dense polynomial.
pub fn q_factorial<F: Field>(n: u64) -> DensePolynomial<F> {
    let mut acc = DensePolynomial::one();
    for j in 1..=n as usize {
        acc = &acc * &DensePolynomial::one_minus(F::one(), j);
    }
    acc
}

/// Gaussian binomial `[n k]`, computed by exact division of q-factorials.
/// Zero when `k < 0` or `k > n`.
pub fn q_binomial<F: Field>(n: u64, k: i64) -> DensePolynomial<F> {
    if k < 0 || k as u64 > n {
        return DensePolynomial::zero();
    }
    let k = k as u64;
    let den = &q_factorial::<F>(k) * &q_factorial(n - k);
    poly_exact_div(&q_factorial(n), &den).expect("Gaussian binomial divides exactly")
}

/// The row `[n 0], ..., [n n]` via `[n k] = [n k-1] (1-q^{n-k+1}) / (1-q^k)`.
/// Multiplying and dividing by a binomial `1 - q^m` is linear in the degree.
pub fn q_binomial_row<F: Field>(n: u64) -> Vec<DensePolynomial<F>> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut cur = DensePolynomial::<F>::one();
    row.push(cur.clone());
    for k in 1..=n as usize {
        let up = n as usize - k + 1;
        let times = &cur - &cur.shift(up);
        cur = div_one_minus_q_pow(&times, k);
        row.push(cur.clone());
    }
    row
}

/// `p / (1 - q^m)`, assuming the division is exact.
fn div_one_minus_q_pow<F: Field>(p: &DensePolynomial<F>, m: usize) -> DensePolynomial<F> {
    let c = p.coeffs();
    if c.len() <= m {
        debug_assert!(p.is_zero());
        return DensePolynomial::zero();
    }
    let mut out: Vec<F> = Vec::with_capacity(c.len() - m);
    for i in 0..c.len() - m {
        let mut v = c[i].clone();
        if i >= m {
            v += &out[i - m];
        }
        out.push(v);
    }
    DensePolynomial::from_coeffs(out)
}

/// Pascal-recurrence table of `[m k]` for all `m <= n`. Test oracle for
/// [`q_binomial`].
pub fn q_binomial_pascal<F: Field>(n: u64) -> Vec<Vec<DensePolynomial<F>>> {
    let mut rows: Vec<Vec<DensePolynomial<F>>> = vec![vec![DensePolynomial::one()]];
    for m in 1..=n as usize {
        let prev = &rows[m - 1];
        let mut row = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let left = if k >= 1 { prev[k - 1].clone() } else { DensePolynomial::zero() };
            let right = if k < m { prev[k].shift(k) } else { DensePolynomial::zero() };
            row.push(&left + &right);
        }
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_matches_pascal_and_division() {
        let table = q_binomial_pascal::<Rational>(12);
        for n in 0..=12u64 {
            let row = q_binomial_row::<Rational>(n);
            for k in 0..=n as usize {
                assert_eq!(row[k], table[n as usize][k]);
                assert_eq!(row[k], q_binomial::<Rational>(n, k as i64));
            }
        }
    }
    use crate::polyarith::{rat_int, Rational};

    type L = LaurentPolynomial<Rational>;

    fn qm(e: i64) -> QMonomial<Rational> {
        QMonomial::q_pow(e)
    }

    #[test]
    fn two_factor_product() {
        let p = q_pochhammer(&qm(-1), 2, 2).unwrap();
        let expected = &(&L::constant(rat_int(2)) - &L::monomial(rat_int(1), 1))
            - &L::monomial(rat_int(1), -1);
        assert_eq!(p, QProduct::Polynomial(expected));
    }

    #[test]
    fn empty_product() {
        let x = QMonomial::new(rat_int(7), -3).unwrap();
        assert_eq!(q_pochhammer(&x, 5, 0).unwrap(), QProduct::Polynomial(L::one()));
    }

    #[test]
    fn negative_index() {
        // (q^3; q^2)_{-1} = 1/(1 - q)
        let p = q_pochhammer(&qm(3), 2, -1).unwrap().into_rational();
        let expected = RationalFunction::new(L::one(), L::one_minus(rat_int(1), 1)).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn negative_index_degenerate() {
        // (q^2; q^2)_{-1} = 1/(1 - q^0)
        assert!(matches!(q_pochhammer(&qm(2), 2, -1), Err(Error::Degenerate(_))));
    }

    #[test]
    fn invalid_step() {
        assert!(q_pochhammer(&qm(1), 0, 3).is_err());
        assert!(PochhammerSpec::new(qm(1), -1, 2).is_err());
        assert!(QMonomial::new(rat_int(0), 1).is_err());
    }

    #[test]
    fn binomial_values() {
        assert!(q_binomial::<Rational>(6, 0).is_one());
        assert_eq!(
            q_binomial::<Rational>(4, 2),
            DensePolynomial::from_i64(&[1, 1, 2, 1, 1])
        );
        assert!(q_binomial::<Rational>(3, 5).is_zero());
        assert!(q_binomial::<Rational>(3, -1).is_zero());
    }

    #[test]
    fn binomial_matches_pascal_and_is_symmetric() {
        let table = q_binomial_pascal::<Rational>(20);
        for n in 0..=20u64 {
            for k in 0..=n {
                let b = q_binomial::<Rational>(n, k as i64);
                assert_eq!(b, table[n as usize][k as usize], "[{n} {k}]");
                assert_eq!(b, q_binomial::<Rational>(n, (n - k) as i64));
            }
        }
    }

    #[test]
    fn telescoping_and_inverse_consistency() {
        let x = QMonomial::new(rat_int(3), -2).unwrap();
        for s in 1..=3 {
            for k in 0..5 {
                let next = q_pochhammer(&x, s, k + 1).unwrap().into_rational();
                let cur = q_pochhammer(&x, s, k).unwrap().into_rational();
                let factor = RationalFunction::from_laurent(x.shifted(s * k).one_minus());
                assert_eq!(next, &cur * &factor);
            }
            for k in -4..=4 {
                let a = q_pochhammer(&x, s, k).unwrap().into_rational();
                let b = q_pochhammer(&x.shifted(s * k), s, -k).unwrap().into_rational();
                assert_eq!(&a * &b, RationalFunction::one(), "s={s} k={k}");
            }
        }
    }
}
