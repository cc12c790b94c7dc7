//! The limiting measures on [-1, 1]: Sato-Tate for curves without CM, and
//! half an arcsine law plus an atom of 1/2 at zero for CM curves.
//!
//!     cargo run --example measures

use gmf_exponents::coeffs::Sign;
use gmf_exponents::measures::{self, Interval, MeasureKind};
use gmf_exponents::Result;

pub fn run_example() -> Result<()> {
    let intervals = [
        Interval::closed(-1.0, 1.0)?,
        Interval::closed(0.0, 1.0)?,
        Interval::open_closed(0.0, 1.0)?,
        Interval::closed(0.5, 1.0)?,
        Interval::closed(-1.0, 0.5)?,
    ];
    println!("{:<12} {:>10} {:>10}", "interval", "Sato-Tate", "CM");
    for i in &intervals {
        println!("{:<12} {:>10.6} {:>10.6}", i.to_string(), measures::st_mass(i), measures::cm_mass(i));
    }

    let d = MeasureKind::SatoTate.density(0.0);
    println!("Sato-Tate density at 0: {d:.6} (= 2/π)");

    for kind in [MeasureKind::SatoTate, MeasureKind::DeuringCm] {
        let [p, n, z] = [Sign::Pos, Sign::Neg, Sign::Zero].map(|s| measures::theoretical_sign_density(kind, s));
        println!("{kind:?}: sign densities pos {p}, neg {n}, zero {z}");
    }

    assert!(Interval::closed(0.5, 0.2).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
