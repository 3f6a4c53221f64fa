//! Karlsson-Minton summation at seeded random points, exactly and in the
//! two-prime fast mode. The same seed gives the same points in both modes.

use qsupercong::verifier::{verify_karlsson_minton, Arithmetic};

fn main() {
    let seed = 2024;
    for n_list in [vec![0], vec![1, 1], vec![2, 0, 1], vec![3, 1, 2]] {
        let exact = verify_karlsson_minton(&n_list, 5, seed, Arithmetic::Exact);
        let fast = verify_karlsson_minton(&n_list, 5, seed, Arithmetic::Fast { seed });
        println!(
            "n_list={n_list:?}: exact {} ({:.1} ms), fast {} ({:.1} ms)",
            exact.status, exact.elapsed_ms, fast.status, fast.elapsed_ms
        );
    }
}
