//! Primes where c(p) is zero or a nonzero integer. The second can only
//! happen for p ∈ {2, 3, 5}; anything else means the input is corrupt.
//!
//!     cargo run --release --example integrality_scan

use std::path::Path;

use gmf_exponents::coeffs::CoefficientTable;
use gmf_exponents::curves;
use gmf_exponents::integrality;
use gmf_exponents::io;
use gmf_exponents::{Error, Result};

pub fn run_example() -> Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/curves");
    for name in ["11a1", "37a1", "32a2", "36a1", "53a1"] {
        let loaded = io::load_curve(&dir.join(format!("{name}.json")))?;
        let scan = integrality::scan(&curves::ap_table(&loaded.curve, 10_000), 10_000)?;
        let hits: Vec<String> = scan.nonzero_integral.iter().map(|(p, c)| format!("c({p}) = {c}")).collect();
        println!("{name:>5}: integral {:?}, c(p) = 0 at {} primes", hits, scan.zero_set.len());
    }
    println!("candidate bound (1 + √2)² = {:.4}", integrality::candidate_bound(1));

    // b(7) = -6 would make c(7) = 1, which no eigenform allows
    let b = vec![0, 1, -2, -1, 2, 1, 2, -6, 0, -2, -2];
    let forged = CoefficientTable::from_b(b, vec![11]);
    match integrality::scan(&forged, 10) {
        Err(e @ Error::TheoremContradiction { .. }) => println!("forged table: {e}"),
        other => panic!("forged table passed: {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
