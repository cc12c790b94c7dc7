//! Expands f = ∏ (1 - q^n)^c(n) exactly and checks that q·f'/f gives back
//! the eigenform Σ b(n) qⁿ.
//!
//!     cargo run --release --example series_roundtrip -- 500

use std::collections::BTreeMap;
use std::time::Instant;

use gmf_exponents::coeffs::CoefficientTable;
use gmf_exponents::curves::{self, EllipticCurve};
use gmf_exponents::series;
use gmf_exponents::Result;

pub fn run_example(order: usize) -> Result<()> {
    let e = EllipticCurve::new([0, -1, 1, -10, -20])?;
    let n = order as u64;
    let table = CoefficientTable::build(&curves::ap_table(&e, n), &BTreeMap::from([(11, 1)]), n)?;

    let t = Instant::now();
    let f = series::product_expand(table.c_values(), order)?;
    print!("f = 1");
    for k in 1..=6 {
        print!(" + ({})q^{k}", f.coeff(k));
    }
    println!(" + …");
    let bits = f.coeffs().iter().map(|a| a.denom().bits()).max().unwrap_or(0);
    println!("largest denominator through q^{order}: {bits} bits");

    let check = series::roundtrip_verify(&table, order)?;
    assert!(check.is_exact());
    println!("q·f'/f = Σ b(n) qⁿ exactly through q^{order} ({:.2?})", t.elapsed());

    // f cannot have integral coefficients unless it is constant
    let k = series::integrality_probe(&f).unwrap();
    println!("first non-integral coefficient: a({k}) = {}", f.coeff(k));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let order = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    run_example(order)
}
