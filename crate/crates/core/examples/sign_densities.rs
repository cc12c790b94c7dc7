//! How often c(p) is positive, negative or zero, for a curve with and one
//! without complex multiplication, with convergence checkpoints.
//!
//!     cargo run --release --example sign_densities -- 1000000

use gmf_exponents::coeffs::Sign;
use gmf_exponents::curves::{self, EllipticCurve};
use gmf_exponents::density::{self, Predicate};
use gmf_exponents::measures::{self, MeasureKind};
use gmf_exponents::Result;

fn census(name: &str, e: &EllipticCurve, x: u64) -> Result<()> {
    let table = curves::ap_table_parallel(e, x);
    let kind = if e.is_cm() { MeasureKind::DeuringCm } else { MeasureKind::SatoTate };
    let c = density::sign_census(&table, x)?;
    println!("{name} up to {x}: {} primes, {} good", c.n_all, c.n_good);
    for sign in [Sign::Pos, Sign::Neg, Sign::Zero] {
        println!(
            "  {:<4} {:>8} {:.4}  (limit {})",
            sign.as_str(),
            c.count(sign),
            c.ratio(sign),
            measures::theoretical_sign_density(kind, sign)
        );
    }
    let limit = measures::theoretical_sign_density(kind, Sign::Pos);
    let report = density::convergence_report(&table, &density::default_checkpoints(x), &Predicate::Sign(Sign::Pos), limit)?;
    for row in &report.rows {
        println!("  x = {:>8}: pos ratio {:.4}, off by {:.4}", row.x, row.ratio, row.deviation);
    }
    Ok(())
}

pub fn run_example(x: u64) -> Result<()> {
    census("11a1", &EllipticCurve::new([0, -1, 1, -10, -20])?, x)?;
    census("y² = x³ - x", &EllipticCurve::new([0, 0, 0, -1, 0])?.with_cm(-4), x)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let x = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    run_example(x)
}
