//! Cyclotomic polynomials, q-integers, Gaussian binomials and q-Pochhammer
//! symbols over the rationals.

use qsupercong::cyclotomic::{cyclotomic, q_integer};
use qsupercong::polyarith::Rational;
use qsupercong::qobjects::{q_binomial, q_pochhammer, QMonomial};

fn main() -> qsupercong::Result<()> {
    for n in [1, 2, 6, 12] {
        println!("Phi_{n}(q) = {}", cyclotomic::<Rational>(n)?);
    }
    println!("[5] = {}", q_integer::<Rational>(5)?);
    println!("[6 2] = {}", q_binomial::<Rational>(6, 2));

    // (q^{-2}; q^3)_3 picks up negative exponents; (q^5; q)_{-2} is a reciprocal.
    let a = q_pochhammer(&QMonomial::<Rational>::q_pow(-2), 3, 3)?;
    let b = q_pochhammer(&QMonomial::<Rational>::q_pow(5), 1, -2)?;
    println!("(q^-2;q^3)_3 = {}", a.into_rational());
    println!("(q^5;q)_-2 = {}", b.into_rational());
    Ok(())
}
