//! The a-deformed sums: substitute a = q^n and a = q^-n exactly, and check the
//! a <-> 1/a symmetry and the a = 1 collapse onto the undeformed sums.

use qsupercong::verifier::{verify_parametric, Arithmetic, ParametricFamily};

fn main() {
    let points = [(4, 1, 7), (5, 2, 8), (3, 1, 5), (5, 1, 9), (3, 2, 4)];
    for fam in ParametricFamily::ALL {
        for &(d, r, n) in &points {
            let res = verify_parametric(fam, d, r, n, Arithmetic::Exact);
            let why = res.note.as_deref().or(res.witness.as_deref()).unwrap_or("");
            println!("{:<6} d={d} r={r} n={n:<2} {:<20} {why}", fam.name(), res.status.to_string());
        }
    }
}
