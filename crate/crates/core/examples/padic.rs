//! Morita's p-adic gamma function modulo p^2 and the classical congruences
//! obtained as q -> 1 limits.

use qsupercong::padic::{padic_gamma_rational, verify_classical, ClassicalArgs, ClassicalId};
use qsupercong::polyarith::rat;
use qsupercong::verifier::params_string;

fn main() -> qsupercong::Result<()> {
    for p in [5, 7, 11, 13] {
        let g = padic_gamma_rational(&rat(1, 3), p, 2)?;
        println!("Gamma_{p}(1/3) mod {p}^2 = {g}");
    }

    let runs = [
        (ClassicalId::Rv11, ClassicalArgs { p: 13, ..Default::default() }),
        (ClassicalId::Deines12, ClassicalArgs { d: 3, p: 13, ..Default::default() }),
        (ClassicalId::Cor41I, ClassicalArgs { d: 5, r: 2, p: 13, n: 0 }),
        (ClassicalId::Cor41II, ClassicalArgs { d: 4, r: 3, p: 13, n: 0 }),
        (ClassicalId::GammaFactorial, ClassicalArgs { d: 7, r: 2, p: 19, n: 0 }),
        (ClassicalId::WltIntegrality, ClassicalArgs { d: 3, n: 11, ..Default::default() }),
    ];
    for (id, args) in runs {
        let res = verify_classical(id, args);
        println!("{:<16} {:<14} {}", id.name(), params_string(&res.params), res.status);
    }
    Ok(())
}
