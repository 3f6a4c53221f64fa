//! Check every non-parametric congruence over a small rectangle of (d, r, n).
//! Out-of-range points come back as SKIPPED_PRECONDITION rather than errors.

use qsupercong::verifier::{verify_divisibility, verify_theorem, Arithmetic, CheckStatus, TheoremId};

fn main() {
    for id in TheoremId::ALL {
        let (mut holds, mut skipped, mut fails) = (0, 0, 0);
        for d in 2..=5 {
            for r in 1..d {
                for n in 2..=10 {
                    if !id.takes_r() && r > 1 {
                        continue;
                    }
                    match verify_theorem(id, d, r, n, Arithmetic::Exact).status {
                        CheckStatus::Holds => holds += 1,
                        CheckStatus::SkippedPrecondition => skipped += 1,
                        CheckStatus::Fails => fails += 1,
                    }
                }
            }
        }
        println!("{:<11} holds {holds:>3}  skipped {skipped:>3}  fails {fails}", id.name());
    }

    let res = verify_divisibility(3, 8, Arithmetic::Exact);
    println!("DIVISIBILITY d=3 n=8: {} in {:.1} ms", res.status, res.elapsed_ms);
}
