//! The terminating q-binomial vanishing sums
//! `sum_k (-1)^k [n k] q^{C(n-k,2) + jk} = 0` for `0 <= j < n`.

use super::{params, run_task, timed, Arithmetic, CheckResult, FieldTask, Outcome};
use crate::polyarith::{DensePolynomial, Field};
use crate::qobjects::q_binomial_row;

fn choose2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// `sum_{k=0}^n (-1)^k [n k] q^{C(n-k,2) + jk}` as a polynomial.
pub fn qbinomial_vanishing_sum<F: Field>(n: u64, j: u64) -> DensePolynomial<F> {
    vanishing_sum_from_row(&q_binomial_row::<F>(n), j)
}

fn vanishing_sum_from_row<F: Field>(row: &[DensePolynomial<F>], j: u64) -> DensePolynomial<F> {
    let n = row.len() as u64 - 1;
    let mut acc = DensePolynomial::zero();
    for (k, binom) in row.iter().enumerate() {
        let k = k as u64;
        let e = choose2((n - k) as i64) + (j * k) as i64;
        let term = binom.shift(e as usize);
        acc = if k.is_multiple_of(2) { &acc + &term } else { &acc - &term };
    }
    acc
}

struct VanishingTask {
    n: u64,
    js: std::ops::Range<u64>,
    expect_zero: bool,
}

impl FieldTask for VanishingTask {
    type Output = Outcome;

    fn run<F: Field>(&self) -> Outcome {
        let row = q_binomial_row::<F>(self.n);
        for j in self.js.clone() {
            let s = vanishing_sum_from_row(&row, j);
            if s.is_zero() != self.expect_zero {
                let what = if self.expect_zero { "nonzero" } else { "unexpectedly zero" };
                return Outcome::Fails(format!("j = {j}: sum is {what}: {s}"));
            }
        }
        Outcome::Holds
    }
}

/// The sum vanishes for every `j` in `0..n`.
pub fn verify_qbinomial_vanishing(n: i64, arith: Arithmetic) -> CheckResult {
    timed("QBINOM_VANISHING", params(&[("n", n)]), || {
        if n < 1 {
            return Outcome::Skipped("needs n >= 1".into());
        }
        let n = n as u64;
        run_task(
            &VanishingTask {
                n,
                js: 0..n,
                expect_zero: true,
            },
            arith,
        )
    })
}

/// Single `(n, j)`. For `j >= n` the sum is expected not to vanish and the
/// check holds when it does not.
pub fn verify_qbinomial_at(n: i64, j: i64, arith: Arithmetic) -> CheckResult {
    let mut res = timed("QBINOM_VANISHING", params(&[("n", n), ("j", j)]), || {
        if n < 1 || j < 0 {
            return Outcome::Skipped("needs n >= 1, j >= 0".into());
        }
        let (n, j) = (n as u64, j as u64);
        run_task(
            &VanishingTask {
                n,
                js: j..j + 1,
                expect_zero: j < n,
            },
            arith,
        )
    });
    if j >= n && n >= 1 {
        res.note = Some("expected-nonvanishing (j >= n)".into());
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::Rational;

    #[test]
    fn n_one_cancels() {
        assert!(qbinomial_vanishing_sum::<Rational>(1, 0).is_zero());
        assert!(verify_qbinomial_vanishing(1, Arithmetic::Exact).holds());
    }

    #[test]
    fn n_five_vanishes_for_all_j() {
        assert!(verify_qbinomial_vanishing(5, Arithmetic::Exact).holds());
    }

    #[test]
    fn j_equal_n_does_not_vanish() {
        // n = 2, j = 2: q - (1+q) q^2 + q^4
        let s = qbinomial_vanishing_sum::<Rational>(2, 2);
        assert_eq!(s, DensePolynomial::from_i64(&[0, 1, -1, -1, 1]));
        let res = verify_qbinomial_at(2, 2, Arithmetic::Exact);
        assert!(res.holds());
        assert!(res.note.is_some());
    }
}
