//! Karlsson–Minton type summation
//!
//! `sum_{k=0}^N (q^{-N}, b_1 q^{n_1}, ..., b_m q^{n_m}; q)_k q^k / (q, b_1, ..., b_m; q)_k
//!   = (-1)^N (q;q)_N prod b_j^{n_j} / prod (b_j;q)_{n_j} * q^{sum C(n_j,2)}`
//! with `N = sum n_j`, checked at seeded random rational points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{run_task, timed, Arithmetic, CheckResult, FieldTask, Outcome, ParamValue, Params};
use crate::error::{Error, Result};
use crate::polyarith::{rat, Field, Rational};

/// Consecutive degenerate samples allowed before giving up.
pub const MAX_RESAMPLES: usize = 100;

/// A sample point: `q` and the `b_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct KmPoint {
    pub q: Rational,
    pub b: Vec<Rational>,
}

fn sample_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(2..=100);
    let den: i64 = rng.gen_range(2..=100);
    rat(num, den)
}

/// Independent stream per instance so results do not depend on run order.
fn instance_rng(seed: u64, n_list: &[u64]) -> ChaCha8Rng {
    let mut h = seed ^ 0x5851_F42D_4C95_7F2D;
    for &n in n_list {
        h = h.wrapping_mul(6364136223846793005).wrapping_add(n + 1);
    }
    h = h.wrapping_mul(6364136223846793005).wrapping_add(n_list.len() as u64);
    ChaCha8Rng::seed_from_u64(h)
}

/// `(x; q)_len` in `F`.
fn poch<F: Field>(x: &F, q: &F, len: u64) -> F {
    let mut acc = F::one();
    let mut t = x.clone();
    for _ in 0..len {
        acc *= &F::one().sub_ref(&t);
        t *= q;
    }
    acc
}

/// Both sides at one point, or `None` if some denominator vanishes there.
pub fn km_sides<F: Field>(n_list: &[u64], point: &KmPoint) -> Result<Option<(F, F)>> {
    let q = F::from_rational(&point.q)?;
    let bs: Vec<F> = point.b.iter().map(F::from_rational).collect::<Result<_>>()?;
    let big_n: u64 = n_list.iter().sum();
    let q_inv = match q.inv() {
        Some(v) => v,
        None => return Ok(None),
    };
    let q_pow = |e: u64| q.pow(e);
    // ratio of consecutive terms, built factor by factor
    let mut lhs = F::one();
    let mut term = F::one();
    let mut top_q = q_inv.pow(big_n); // q^{-N} q^k
    let mut tops: Vec<F> = bs.iter().zip(n_list).map(|(b, &n)| b.mul_ref(&q_pow(n))).collect();
    let mut bottoms: Vec<F> = bs.clone();
    let mut q_k1 = q.clone(); // q^{k+1}
    for _ in 0..big_n {
        let mut num = F::one().sub_ref(&top_q);
        num *= &q;
        let mut den = F::one().sub_ref(&q_k1);
        for (t, b) in tops.iter_mut().zip(bottoms.iter_mut()) {
            num *= &F::one().sub_ref(t);
            den *= &F::one().sub_ref(b);
            *t *= &q;
            *b *= &q;
        }
        let Some(den_inv) = den.inv() else {
            return Ok(None);
        };
        term *= &num;
        term *= &den_inv;
        lhs += &term;
        top_q *= &q;
        q_k1 *= &q;
    }
    let mut rhs = poch(&q, &q, big_n);
    if big_n % 2 == 1 {
        rhs = -rhs;
    }
    let mut den = F::one();
    let mut c2 = 0u64;
    for (b, &n) in bs.iter().zip(n_list) {
        rhs *= &b.pow(n);
        den *= &poch(b, &q, n);
        c2 += n * n.saturating_sub(1) / 2;
    }
    let Some(den_inv) = den.inv() else {
        return Ok(None);
    };
    rhs *= &den_inv;
    rhs *= &q_pow(c2);
    Ok(Some((lhs, rhs)))
}

/// The sample points of an instance, resampling degenerate ones. Degeneracy
/// is decided with exact arithmetic so every field sees the same points.
pub fn km_points(n_list: &[u64], trials: usize, seed: u64) -> Result<Vec<KmPoint>> {
    let mut rng = instance_rng(seed, n_list);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let mut attempts = 0;
        loop {
            let point = KmPoint {
                q: sample_rational(&mut rng),
                b: n_list.iter().map(|_| sample_rational(&mut rng)).collect(),
            };
            if km_sides::<Rational>(n_list, &point)?.is_some() {
                out.push(point);
                break;
            }
            attempts += 1;
            if attempts >= MAX_RESAMPLES {
                return Err(Error::ResampleExhausted(attempts));
            }
        }
    }
    Ok(out)
}

struct KmTask {
    n_list: Vec<u64>,
    points: Vec<KmPoint>,
}

impl FieldTask for KmTask {
    type Output = Outcome;

    fn run<F: Field>(&self) -> Outcome {
        for (i, p) in self.points.iter().enumerate() {
            match km_sides::<F>(&self.n_list, p) {
                Ok(Some((l, r))) if l == r => {}
                Ok(Some((l, r))) => {
                    return Outcome::Fails(format!("trial {i} at q = {}, b = {:?}: lhs {l} != rhs {r}", p.q, p.b))
                }
                // the point is regular over Q but not modulo this prime
                Ok(None) => {
                    return Outcome::Fails(format!("trial {i}: denominator vanishes in this field"))
                }
                Err(e) => return e.into(),
            }
        }
        Outcome::Holds
    }
}

/// Check the summation at `trials` seeded random points.
pub fn verify_karlsson_minton(n_list: &[u64], trials: usize, seed: u64, arith: Arithmetic) -> CheckResult {
    let mut p = Params::new();
    p.insert("m".into(), ParamValue::Int(n_list.len() as i64));
    p.insert("n_list".into(), ParamValue::List(n_list.iter().map(|&n| n as i64).collect()));
    p.insert("seed".into(), ParamValue::Int(seed as i64));
    p.insert("trials".into(), ParamValue::Int(trials as i64));
    timed("KM", p, || {
        if n_list.is_empty() {
            return Outcome::Skipped("needs m >= 1".into());
        }
        match km_points(n_list, trials, seed) {
            Ok(points) => run_task(
                &KmTask {
                    n_list: n_list.to_vec(),
                    points,
                },
                arith,
            ),
            Err(e) => e.into(),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::rat_int;

    #[test]
    fn empty_sum_is_one() {
        let p = KmPoint {
            q: rat(3, 7),
            b: vec![rat(5, 2)],
        };
        let (l, r) = km_sides::<Rational>(&[0], &p).unwrap().unwrap();
        assert_eq!(l, rat_int(1));
        assert_eq!(r, rat_int(1));
    }

    #[test]
    fn single_step_by_hand() {
        // m = 1, n_1 = 1, N = 1: 1 + (1-q^{-1})(1-bq) q / ((1-q)(1-b)) = -(q;q)_1 b / (1-b)
        let p = KmPoint {
            q: rat(2, 1),
            b: vec![rat(3, 1)],
        };
        let (l, r) = km_sides::<Rational>(&[1], &p).unwrap().unwrap();
        // lhs: 1 + (1/2)(-5)(2) / ((-1)(-2)) = 1 - 5/2 = -3/2; rhs: -(-1)(3)/(-2) = -3/2
        assert_eq!(l, rat(-3, 2));
        assert_eq!(r, rat(-3, 2));
    }

    #[test]
    fn seeded_instances_hold() {
        assert!(verify_karlsson_minton(&[1, 1], 5, 42, Arithmetic::Exact).holds());
        assert!(verify_karlsson_minton(&[2, 0, 1], 5, 42, Arithmetic::Exact).holds());
    }

    #[test]
    fn points_are_reproducible() {
        let a = km_points(&[2, 3], 5, 7).unwrap();
        let b = km_points(&[2, 3], 5, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, km_points(&[2, 3], 5, 8).unwrap());
    }
}
