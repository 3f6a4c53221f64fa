//! Arithmetic in Q[q]/(Phi_n(q)^2): reduction, inversion of units, and the
//! reduced truncated sum of a congruence next to its closed form.

use qsupercong::polyarith::Rational;
use qsupercong::residue::ResidueRing;
use qsupercong::verifier::{lhs_sum, rhs_closed_form, TheoremId};

fn main() -> qsupercong::Result<()> {
    let ring = ResidueRing::<Rational>::phi_squared(5)?;
    println!("modulus Phi_5^2 = {}", ring.modulus());

    let x = ring.one_minus_q_pow(3);
    let inv = x.invert()?;
    println!("1/(1-q^3) = {inv}");
    println!("check: {}", x * inv);

    // q^{-7} reduces to a polynomial because q is a unit.
    println!("q^-7 = {}", ring.pow_q(-7));

    // Odd d = 3, n = 5: the truncated sum and its closed form agree mod Phi_5^2.
    let id = TheoremId::Thm12;
    let lhs = lhs_sum(id.family(), 3, 1, 5, &ring)?;
    let rhs = rhs_closed_form(id, 3, 1, 5)?.to_ring(&ring)?;
    println!("{} d=3 n=5: lhs = {lhs}", id.name());
    println!("{} d=3 n=5: rhs = {rhs}", id.name());
    println!("equal: {}", lhs == rhs);
    Ok(())
}
