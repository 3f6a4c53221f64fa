//! Residues modulo `p^k`, rising factorials at rational arguments, Morita's
//! p-adic Gamma function, and the classical supercongruences mod `p^2`.
//!
//! Everything here is exact integer arithmetic; fast mode does not apply.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cyclotomic::is_prime;
use crate::error::{Error, Result};
use crate::polyarith::{rat, rational_mod, Rational};
use crate::verifier::{params, timed, CheckResult, Outcome, Params};

/// An element of `Z / p^k Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicResidue {
    p: u64,
    k: u32,
    value: u64,
}

impl PadicResidue {
    pub fn new(p: u64, k: u32, value: i128) -> Self {
        let m = p.pow(k) as i128;
        Self {
            p,
            k,
            value: value.rem_euclid(m) as u64,
        }
    }

    pub fn zero(p: u64, k: u32) -> Self {
        Self::new(p, k, 0)
    }

    pub fn one(p: u64, k: u32) -> Self {
        Self::new(p, k, 1)
    }

    /// Residue of `a/b` with `p` not dividing `b`.
    pub fn from_rational(x: &Rational, p: u64, k: u32) -> Result<Self> {
        let m = BigInt::from(p.pow(k));
        let v = rational_mod(x, &m).ok_or(Error::DenominatorDivisibleByP(p))?;
        Ok(Self::new(p, k, v.to_i128().expect("residue fits")))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.k)
    }

    /// Representative in `[0, p^k)`.
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Representative in `(-p^k/2, p^k/2]`.
    pub fn symmetric(&self) -> i64 {
        let m = self.modulus();
        if self.value > m / 2 {
            self.value as i64 - m as i64
        } else {
            self.value as i64
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &Self) {
        assert!(self.p == other.p && self.k == other.k, "residues modulo different p^k");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Self::new(self.p, self.k, self.value as i128 + other.value as i128)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        Self::new(self.p, self.k, self.value as i128 - other.value as i128)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        Self::new(self.p, self.k, self.value as i128 * other.value as i128)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.k, -(self.value as i128))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::one(self.p, self.k);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Inverse when `p` does not divide the value.
    pub fn inv(&self) -> Option<Self> {
        let m = self.modulus() as i128;
        let g = (self.value as i128).extended_gcd(&m);
        if g.gcd != 1 {
            return None;
        }
        Some(Self::new(self.p, self.k, g.x))
    }
}

impl fmt::Display for PadicResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.value, self.p, self.k)
    }
}

/// A rational number together with its residue modulo `p^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalResidue {
    source: Rational,
    residue: PadicResidue,
}

impl RationalResidue {
    pub fn new(x: Rational, p: u64, k: u32) -> Result<Self> {
        let residue = PadicResidue::from_rational(&x, p, k)?;
        Ok(Self { source: x, residue })
    }

    pub fn source(&self) -> &Rational {
        &self.source
    }

    pub fn residue(&self) -> PadicResidue {
        self.residue
    }
}

fn check_prime(p: u64, k: u32) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidArgument(format!("precision k = {k}; only 1 and 2 are supported")));
    }
    Ok(())
}

/// `Gamma_p(x) mod p^k` from the representative `m` of `x` in `[0, p^k)`:
/// `Gamma_p(m) = (-1)^m prod_{0<j<m, p∤j} j`.
pub fn padic_gamma(x: &PadicResidue) -> Result<PadicResidue> {
    let (p, k) = (x.p, x.k);
    check_prime(p, k)?;
    let m = x.value;
    let mut acc = PadicResidue::one(p, k);
    for j in 1..m {
        if j % p != 0 {
            acc = acc.mul(&PadicResidue::new(p, k, j as i128));
        }
    }
    Ok(if m % 2 == 1 { acc.neg() } else { acc })
}

/// `Gamma_p` at a rational argument with denominator prime to `p`.
pub fn padic_gamma_rational(x: &Rational, p: u64, k: u32) -> Result<PadicResidue> {
    padic_gamma(&PadicResidue::from_rational(x, p, k)?)
}

/// `(x)_j = x (x+1) ... (x+j-1) mod p^k`.
pub fn rising_factorial_mod(x: &Rational, j: u64, p: u64, k: u32) -> Result<PadicResidue> {
    let base = PadicResidue::from_rational(x, p, k)?;
    let mut acc = PadicResidue::one(p, k);
    for i in 0..j {
        acc = acc.mul(&base.add(&PadicResidue::new(p, k, i as i128)));
    }
    Ok(acc)
}

/// `j! mod p^k`.
fn factorial_mod(j: u64, p: u64, k: u32) -> PadicResidue {
    (1..=j).fold(PadicResidue::one(p, k), |acc, i| acc.mul(&PadicResidue::new(p, k, i as i128)))
}

/// `sum_{k=0}^{p-1} prod_i (a_i)_k^{e_i} / k!^{sum e_i}` modulo `p^2`, for
/// balanced parameter lists (as many rising factorials as factorials).
pub fn balanced_sum_mod_p2(factors: &[(Rational, u64)], p: u64) -> Result<PadicResidue> {
    let depth: u64 = factors.iter().map(|f| f.1).sum();
    let mut acc = PadicResidue::zero(p, 2);
    for k in 0..p {
        let mut term = PadicResidue::one(p, 2);
        for (a, e) in factors {
            term = term.mul(&rising_factorial_mod(a, k, p, 2)?.pow(*e));
        }
        let den = factorial_mod(k, p, 2).pow(depth);
        let inv = den.inv().ok_or(Error::Internal("k! not a unit for k < p".into()))?;
        acc = acc.add(&term.mul(&inv));
    }
    Ok(acc)
}

/// The classical congruences modulo `p^2` and the integrality assertion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassicalId {
    /// `sum (1/2)_k^2 / k!^2 = (-1)^{(p-1)/2}`.
    Rv11,
    /// `sum ((d-1)/d)_k^d / k!^d = -Gamma_p(1/d)^d`, `p = 1 (mod d)`.
    Deines12,
    /// `q -> 1` limit of the general-`r` theorem with the `(r-d)/d` factor.
    Cor41I,
    /// `q -> 1` limit of the general-`r` theorem with `(r/d)_k^{r+1}`.
    Cor41II,
    /// `(p-1-(p+r)/d)! / ((p+r)/d)!^{d-1} = -(-1)^{(p+r)/d} Gamma_p(-r/d)^d`.
    GammaFactorial,
    /// `(n-1)!^d d^{dn-d} / n^2 * sum ...` is an integer.
    WltIntegrality,
}

/// Integer arguments of a classical check; unused fields are ignored.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassicalArgs {
    pub d: i64,
    pub r: i64,
    pub p: u64,
    pub n: i64,
}

impl ClassicalId {
    pub const ALL: [ClassicalId; 6] = [
        ClassicalId::Rv11,
        ClassicalId::Deines12,
        ClassicalId::Cor41I,
        ClassicalId::Cor41II,
        ClassicalId::GammaFactorial,
        ClassicalId::WltIntegrality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassicalId::Rv11 => "RV_11",
            ClassicalId::Deines12 => "DEINES_12",
            ClassicalId::Cor41I => "COR41_I",
            ClassicalId::Cor41II => "COR41_II",
            ClassicalId::GammaFactorial => "GAMMA_FACTORIAL",
            ClassicalId::WltIntegrality => "WLT_INTEGRALITY",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name().eq_ignore_ascii_case(s))
    }

    pub fn arg_names(self) -> &'static [&'static str] {
        match self {
            ClassicalId::Rv11 => &["p"],
            ClassicalId::Deines12 => &["d", "p"],
            ClassicalId::Cor41I | ClassicalId::Cor41II | ClassicalId::GammaFactorial => &["d", "r", "p"],
            ClassicalId::WltIntegrality => &["d", "n"],
        }
    }

    pub fn params(self, a: ClassicalArgs) -> Params {
        let pairs: Vec<(&str, i64)> = self
            .arg_names()
            .iter()
            .map(|&name| {
                let v = match name {
                    "d" => a.d,
                    "r" => a.r,
                    "p" => a.p as i64,
                    _ => a.n,
                };
                (name, v)
            })
            .collect();
        params(&pairs)
    }

    pub fn precondition(self, a: ClassicalArgs) -> std::result::Result<(), String> {
        let ClassicalArgs { d, r, p, n } = a;
        let odd_prime = p >= 3 && is_prime(p);
        let p_i = p as i64;
        let residue = d >= 1 && p_i.rem_euclid(d.max(1)) == (-r).rem_euclid(d.max(1));
        let ok = match self {
            ClassicalId::Rv11 => odd_prime,
            ClassicalId::Deines12 => odd_prime && d >= 2 && p_i % d == 1,
            ClassicalId::Cor41I => {
                odd_prime && p >= 5 && r >= 1 && d >= 3 + r && d.gcd(&r) == 1 && residue && p_i >= 2 * d - r
            }
            ClassicalId::Cor41II | ClassicalId::GammaFactorial => {
                odd_prime && p >= 5 && r >= 1 && d > r && d.gcd(&r) == 1 && residue
            }
            ClassicalId::WltIntegrality => d >= 2 && n.rem_euclid(d) == d - 1 && n >= 2 * d - 1,
        };
        if ok {
            Ok(())
        } else {
            Err(format!("{} arguments out of range", self.name()))
        }
    }
}

fn congruence(lhs: PadicResidue, rhs: PadicResidue) -> Outcome {
    Outcome::from_bool(lhs == rhs, || format!("lhs = {lhs}, rhs = {rhs}"))
}

/// Rising-factorial parameters of the `q = 1` shadow of the general-`r`
/// sums: `((d+r)/d)^{d-r} (r/d)^{r-1} ((r-d)/d)^1` and
/// `((d+r)/d)^{d-r-1} (r/d)^{r+1}`.
pub fn shadow_factors(with_r_minus_d: bool, d: i64, r: i64) -> Vec<(Rational, u64)> {
    let mut out = Vec::new();
    let mut push = |a: Rational, e: i64| {
        if e > 0 {
            out.push((a, e as u64));
        }
    };
    if with_r_minus_d {
        push(rat(d + r, d), d - r);
        push(rat(r, d), r - 1);
        push(rat(r - d, d), 1);
    } else {
        push(rat(d + r, d), d - r - 1);
        push(rat(r, d), r + 1);
    }
    out
}

fn classical_body(id: ClassicalId, a: ClassicalArgs) -> Result<Outcome> {
    let ClassicalArgs { d, r, p, n } = a;
    let res = |x: Rational| PadicResidue::from_rational(&x, p, 2);
    Ok(match id {
        ClassicalId::Rv11 => {
            let lhs = balanced_sum_mod_p2(&[(rat(1, 2), 2)], p)?;
            let sign = if ((p - 1) / 2) % 2 == 0 { 1 } else { -1 };
            congruence(lhs, PadicResidue::new(p, 2, sign))
        }
        ClassicalId::Deines12 => {
            let lhs = balanced_sum_mod_p2(&[(rat(d - 1, d), d as u64)], p)?;
            let rhs = padic_gamma_rational(&rat(1, d), p, 2)?.pow(d as u64).neg();
            congruence(lhs, rhs)
        }
        ClassicalId::Cor41I => {
            let lhs = balanced_sum_mod_p2(&shadow_factors(true, d, r), p)?;
            let g = padic_gamma_rational(&rat(-r, d), p, 2)?.pow(d as u64);
            let rhs = res(rat(d - r, d))?.mul(&res(rat(r, d))?.pow(r as u64)).mul(&g);
            congruence(lhs, rhs)
        }
        ClassicalId::Cor41II => {
            let lhs = balanced_sum_mod_p2(&shadow_factors(false, d, r), p)?;
            let g = padic_gamma_rational(&rat(-r, d), p, 2)?.pow(d as u64);
            let rhs = res(rat(r, d))?.pow(r as u64 + 1).mul(&g).neg();
            congruence(lhs, rhs)
        }
        ClassicalId::GammaFactorial => {
            let m = (p as i64 + r) / d;
            let top = factorial_mod((p as i64 - 1 - m) as u64, p, 2);
            let bottom = factorial_mod(m as u64, p, 2).pow(d as u64 - 1);
            let lhs = top.mul(&bottom.inv().ok_or(Error::Internal("factorial not a unit".into()))?);
            let g = padic_gamma_rational(&rat(-r, d), p, 2)?.pow(d as u64);
            let rhs = if m % 2 == 0 { g.neg() } else { g };
            congruence(lhs, rhs)
        }
        ClassicalId::WltIntegrality => {
            let v = wlt_value(d, n);
            Outcome::from_bool(v.is_integer(), || format!("value {v} is not an integer"))
        }
    })
}

/// `(n-1)!^d d^{dn-d} / n^2 * sum_{k<n} ((d+1)/d)_k^{d-2} (1/d)_k ((1-d)/d)_k / k!^d`, exactly.
pub fn wlt_value(d: i64, n: i64) -> Rational {
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    let a = rat(d + 1, d);
    let b = rat(1, d);
    let c = rat(1 - d, d);
    for k in 0..n {
        sum += &term;
        let kk = Rational::from_integer(BigInt::from(k));
        let mut ratio = (&a + &kk).pow(d as i32 - 2) * (&b + &kk) * (&c + &kk);
        ratio /= (&kk + Rational::one()).pow(d as i32);
        term *= ratio;
    }
    let fact: BigInt = (1..n).map(BigInt::from).product();
    let pre = Rational::from_integer(fact.pow(d as u32) * BigInt::from(d).pow((d * n - d) as u32))
        / Rational::from_integer(BigInt::from(n * n));
    pre * sum
}

/// Check one classical congruence instance.
pub fn verify_classical(id: ClassicalId, args: ClassicalArgs) -> CheckResult {
    timed(id.name(), id.params(args), || {
        if let Err(why) = id.precondition(args) {
            return Outcome::Skipped(why);
        }
        classical_body(id, args).unwrap_or_else(Outcome::from)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_small_values() {
        assert_eq!(padic_gamma(&PadicResidue::new(5, 2, 1)).unwrap().value(), 24);
        assert_eq!(padic_gamma(&PadicResidue::new(5, 2, 0)).unwrap().value(), 1);
        // (-1)^3 * 1 * 2 = -2 = 23 mod 25
        assert_eq!(padic_gamma(&PadicResidue::new(5, 2, 3)).unwrap().value(), 23);
        assert_eq!(padic_gamma(&PadicResidue::new(4, 2, 3)), Err(Error::InvalidPrime(4)));
    }

    #[test]
    fn gamma_functional_equation() {
        for p in [3u64, 5, 7, 11] {
            for m in 1..p * p {
                if m % p == 0 {
                    continue;
                }
                let g = padic_gamma(&PadicResidue::new(p, 2, m as i128)).unwrap();
                let g1 = padic_gamma(&PadicResidue::new(p, 2, m as i128 + 1)).unwrap();
                if m + 1 < p * p {
                    assert_eq!(g1, g.mul(&PadicResidue::new(p, 2, -(m as i128))), "p={p} m={m}");
                }
            }
        }
    }

    #[test]
    fn rising_factorials() {
        assert_eq!(rising_factorial_mod(&rat(3, 7), 0, 5, 2).unwrap().value(), 1);
        assert_eq!(rising_factorial_mod(&rat(1, 1), 4, 5, 2).unwrap().value(), 24);
        // (1/2)(3/2) = 3/4; 4^{-1} = 19 mod 25; 3 * 19 = 57 = 7
        assert_eq!(rising_factorial_mod(&rat(1, 2), 2, 5, 2).unwrap().value(), 7);
        assert_eq!(
            rising_factorial_mod(&rat(1, 5), 2, 5, 2),
            Err(Error::DenominatorDivisibleByP(5))
        );
    }

    #[test]
    fn classical_examples() {
        let a = |d, r, p, n| ClassicalArgs { d, r, p, n };
        assert!(verify_classical(ClassicalId::Rv11, a(0, 0, 5, 0)).holds());
        assert!(verify_classical(ClassicalId::Cor41II, a(3, 1, 5, 0)).holds());
        assert!(verify_classical(ClassicalId::WltIntegrality, a(3, 0, 0, 5)).holds());
        assert!(verify_classical(ClassicalId::Rv11, a(0, 0, 9, 0)).skipped());
    }

    #[test]
    fn rv_sum_at_five() {
        // exact sum: 1 + 1/4 + 9/64 + 25/256 + 1225/16384
        let lhs = balanced_sum_mod_p2(&[(rat(1, 2), 2)], 5).unwrap();
        let exact = rat(1, 1) + rat(1, 4) + rat(9, 64) + rat(25, 256) + rat(1225, 16384);
        assert_eq!(lhs, PadicResidue::from_rational(&exact, 5, 2).unwrap());
        assert_eq!(lhs.value(), 1);
    }
}
