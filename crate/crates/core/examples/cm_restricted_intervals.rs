//! For a CM curve, c(p)√p/2 in a closed interval of (0, 1] or in [-1, 0]
//! follows the continuous arcsine part. Intervals that reach 0 from the
//! right would also pick up the atom and are refused.
//!
//!     cargo run --release --example cm_restricted_intervals

use gmf_exponents::curves::{self, EllipticCurve};
use gmf_exponents::density;
use gmf_exponents::measures::Interval;
use gmf_exponents::{Error, Result};

pub fn run_example(x: u64) -> Result<()> {
    let e = EllipticCurve::new([0, 0, 0, -1, 0])?.with_cm(-4);
    let table = curves::ap_table_parallel(&e, x);

    for i in [Interval::closed(0.5, 1.0)?, Interval::closed(0.1, 0.9)?, Interval::closed(-1.0, 0.0)?, Interval::open(-0.5, 0.0)?] {
        let (empirical, mass) = density::cm_interval_density(&table, x, &i)?;
        println!("{:<12} empirical {:.4}  arcsine {:.4}", i.to_string(), empirical, mass);
    }

    match density::cm_interval_density(&table, x, &Interval::open_closed(0.0, 1.0)?) {
        Err(e @ Error::AtomAmbiguity(_)) => println!("(0, 1]: {e}"),
        other => panic!("expected a refusal, got {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example(100_000)
}
