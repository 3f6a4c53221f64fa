//! The intermediate identities used to derive the congruences, each checked on
//! its own: term ratios, Pochhammer splittings, exponent bookkeeping.

use qsupercong::verifier::proof_steps::ratio_shift_js;
use qsupercong::verifier::{verify_proof_step, Arithmetic, ProofStep, StepArgs};

fn main() {
    let (d, r, n) = (5, 2, 13);
    for step in ProofStep::ALL {
        let js = match step {
            ProofStep::RatioShiftGeneric | ProofStep::RatioShiftCentral => ratio_shift_js(step, d, r),
            _ => vec![0],
        };
        let mut statuses = Vec::new();
        for j in js {
            for k in 0..=4 {
                let n = if step == ProofStep::PrefactorDivisibility { 8 } else { n };
                let res = verify_proof_step(step, StepArgs { d, r, n, j, k }, Arithmetic::Exact);
                statuses.push(res.status.to_string());
            }
        }
        statuses.dedup();
        println!("{:<26} {}", step.name(), statuses.join(", "));
    }
}
