//! Perturb each closed form (flip its sign, or shift its q-exponent by one)
//! and confirm that the perturbed congruence is rejected.

use qsupercong::crosscheck::{negative_control, MutationTarget};
use qsupercong::verifier::{ParametricFamily, TheoremId};

fn main() {
    let targets = [
        MutationTarget::Theorem(TheoremId::Eq13, 3, 1, 7),
        MutationTarget::Theorem(TheoremId::Thm12, 5, 1, 9),
        MutationTarget::Theorem(TheoremId::Thm42, 4, 3, 5),
        MutationTarget::Parametric(ParametricFamily::P6_44, 3, 2, 4),
    ];
    for o in negative_control(&targets) {
        let verdict = if o.caught() { "rejected" } else { "NOT rejected" };
        println!("{:<24} {:<18} {verdict}", o.target.label(), format!("{:?}", o.mutation));
    }

    let unperturbed = targets[1].run(None);
    println!("unperturbed {}: {}", targets[1].label(), unperturbed.status);
}
