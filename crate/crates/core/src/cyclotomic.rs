//! Cyclotomic polynomials, q-integers and the arithmetic functions behind them.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::polyarith::{poly_exact_div, DensePolynomial, Field};

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn check_positive(n: i64, what: &str) -> Result<u64> {
    if n <= 0 {
        Err(Error::InvalidArgument(format!("{what} requires n >= 1, got {n}")))
    } else {
        Ok(n as u64)
    }
}

pub fn euler_phi(n: i64) -> Result<u64> {
    let n = check_positive(n, "euler_phi")?;
    Ok(factorize(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product())
}

pub fn mobius(n: i64) -> Result<i8> {
    let n = check_positive(n, "mobius")?;
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        Ok(0)
    } else if f.len().is_multiple_of(2) {
        Ok(1)
    } else {
        Ok(-1)
    }
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).first() == Some(&(n, 1))
}

/// `q^n - 1`.
fn q_pow_minus_one<F: Field>(n: u64) -> DensePolynomial<F> {
    &DensePolynomial::monomial(F::one(), n as usize) - &DensePolynomial::one()
}

/// The n-th cyclotomic polynomial, from the Möbius product
/// `prod_{m | n} (q^{n/m} - 1)^{mu(m)}` with the negative factors removed by
/// exact division.
pub fn cyclotomic<F: Field>(n: i64) -> Result<DensePolynomial<F>> {
    let n = check_positive(n, "cyclotomic")?;
    let mut num = DensePolynomial::one();
    let mut den = DensePolynomial::one();
    for m in divisors(n) {
        match mobius(m as i64)? {
            1 => num = &num * &q_pow_minus_one(n / m),
            -1 => den = &den * &q_pow_minus_one(n / m),
            _ => {}
        }
    }
    poly_exact_div(&num, &den)
}

/// The q-integer `[n] = 1 + q + ... + q^{n-1}`.
pub fn q_integer<F: Field>(n: i64) -> Result<DensePolynomial<F>> {
    let n = check_positive(n, "q_integer")?;
    Ok(DensePolynomial::from_coeffs(vec![F::one(); n as usize]))
}

/// Value of `Phi_m(1)`: `p` when `m` is a power of the prime `p`, else 1
/// (and 0 for `m = 1`).
pub fn cyclotomic_at_one(m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    match factorize(m).as_slice() {
        [(p, _)] => *p,
        _ => 1,
    }
}

/// Append-only cache of cyclotomic polynomials. Each insertion is checked
/// against `prod_{m | n} Phi_m = q^n - 1`.
///
/// One cache per worker; it is deliberately not `Sync`-shared.
#[derive(Debug, Default)]
pub struct CyclotomicCache<F> {
    polys: HashMap<u64, DensePolynomial<F>>,
}

impl<F: Field> CyclotomicCache<F> {
    pub fn new() -> Self {
        Self {
            polys: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn get(&mut self, n: u64) -> Result<&DensePolynomial<F>> {
        if !self.polys.contains_key(&n) {
            let phi = cyclotomic::<F>(n as i64)?;
            self.verify_insertion(n, &phi)?;
            self.polys.insert(n, phi);
        }
        Ok(&self.polys[&n])
    }

    fn verify_insertion(&mut self, n: u64, phi: &DensePolynomial<F>) -> Result<()> {
        if phi.degree() != Some(euler_phi(n as i64)? as usize) {
            return Err(Error::Internal(format!("deg Phi_{n} != phi({n})")));
        }
        let mut prod = phi.clone();
        for m in divisors(n) {
            if m != n {
                prod = &prod * self.get(m)?;
            }
        }
        if prod != q_pow_minus_one(n) {
            return Err(Error::Internal(format!(
                "product of Phi_m over m | {n} is not q^{n} - 1"
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::Rational;

    type P = DensePolynomial<Rational>;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic::<Rational>(1).unwrap(), P::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic::<Rational>(5).unwrap(), P::from_i64(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic::<Rational>(6).unwrap(), P::from_i64(&[1, -1, 1]));
    }

    #[test]
    fn phi_six_by_mobius_oracle() {
        // (q^6 - 1)(q - 1) / ((q^2 - 1)(q^3 - 1)) computed independently
        let num = &q_pow_minus_one::<Rational>(6) * &q_pow_minus_one(1);
        let den = &q_pow_minus_one::<Rational>(2) * &q_pow_minus_one(3);
        let oracle = poly_exact_div(&num, &den).unwrap();
        assert_eq!(oracle, cyclotomic::<Rational>(6).unwrap());
    }

    #[test]
    fn q_integers() {
        assert!(q_integer::<Rational>(1).unwrap().is_one());
        assert_eq!(q_integer::<Rational>(4).unwrap(), P::from_i64(&[1, 1, 1, 1]));
        let mut prod = P::one();
        for m in divisors(12).into_iter().filter(|&m| m > 1) {
            prod = &prod * &cyclotomic(m as i64).unwrap();
        }
        assert_eq!(prod, q_integer(12).unwrap());
    }

    #[test]
    fn arithmetic_functions() {
        assert_eq!(euler_phi(6).unwrap(), 2);
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert!(is_prime(47) && !is_prime(49) && !is_prime(1));
    }

    #[test]
    fn nonpositive_arguments_rejected() {
        assert!(cyclotomic::<Rational>(0).is_err());
        assert!(q_integer::<Rational>(-3).is_err());
        assert!(euler_phi(0).is_err());
        assert!(mobius(-1).is_err());
    }

    #[test]
    fn product_over_divisors_up_to_sixty() {
        let mut cache = CyclotomicCache::<Rational>::new();
        for n in 1..=60u64 {
            let mut prod = P::one();
            for m in divisors(n) {
                prod = &prod * cache.get(m).unwrap();
            }
            assert_eq!(prod, q_pow_minus_one(n), "n = {n}");
        }
    }

    #[test]
    fn bracket_factorization_up_to_sixty() {
        for n in 2..=60i64 {
            let mut prod = cyclotomic::<Rational>(n).unwrap();
            for m in divisors(n as u64).into_iter().filter(|&m| m > 1 && m < n as u64) {
                prod = &prod * &cyclotomic(m as i64).unwrap();
            }
            assert_eq!(prod, q_integer(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn degree_and_constant_term() {
        for n in 1..=60i64 {
            let phi = cyclotomic::<Rational>(n).unwrap();
            assert_eq!(phi.degree().unwrap() as u64, euler_phi(n).unwrap());
            let c0 = phi.coeff(0);
            let expected = if n == 1 { -1 } else { 1 };
            assert_eq!(c0, crate::polyarith::rat_int(expected));
        }
    }

    #[test]
    fn value_at_one() {
        for n in 2..=40u64 {
            let phi = cyclotomic::<Rational>(n as i64).unwrap();
            let v = phi.eval(&crate::polyarith::rat_int(1));
            assert_eq!(v, crate::polyarith::rat_int(cyclotomic_at_one(n) as i64));
        }
    }
}
