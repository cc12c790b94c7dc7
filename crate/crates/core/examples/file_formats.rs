//! Curve specs, a_p tables, coefficient caches and density reports on disk.
//!
//!     cargo run --example file_formats

use std::fs::File;
use std::path::Path;

use gmf_exponents::coeffs::{CoefficientTable, Sign};
use gmf_exponents::curves;
use gmf_exponents::density::{self, Predicate};
use gmf_exponents::io;
use gmf_exponents::Result;

pub fn run_example() -> Result<()> {
    let spec = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/curves/37a1.json");
    println!("{}", std::fs::read_to_string(&spec).unwrap().trim());
    let loaded = io::load_curve(&spec)?;

    let dir = std::env::temp_dir().join(format!("gmf-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let ap = curves::ap_table(&loaded.curve, 2000);
    let ap_path = dir.join("37a1_ap.csv");
    io::write_ap_csv(&ap, File::create(&ap_path).unwrap()).unwrap();
    let back = io::import_ap_csv(&ap_path)?;
    assert_eq!(back.len(), ap.len());

    let table = CoefficientTable::build(&ap, &loaded.overrides, 2000)?;
    let cache = dir.join("37a1.cache");
    io::write_cache(&table, "37a1", File::create(&cache).unwrap()).unwrap();
    let (label, reread) = io::read_cache(&cache)?;
    assert_eq!(reread, table);
    let head: Vec<String> = std::fs::read_to_string(&cache).unwrap().lines().take(8).map(String::from).collect();
    println!("cache for {label}:\n{}", head.join("\n"));

    let report = density::convergence_report(&ap, &[500, 1000, 2000], &Predicate::Sign(Sign::Neg), 0.5)?;
    let mut csv = Vec::new();
    io::write_report_csv(&report.rows, &mut csv).unwrap();
    print!("{}", String::from_utf8(csv).unwrap());
    println!("{}", io::report_json(&report.rows)[0]);

    // bad rows are reported with their row number
    let err = io::parse_ap_csv("p,ap\n2,1\n5,7\n".as_bytes(), Path::new("inline")).unwrap_err();
    println!("{err}");

    std::fs::remove_dir_all(&dir).unwrap();
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
