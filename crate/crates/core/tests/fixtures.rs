use std::path::PathBuf;

use gmf_exponents::coeffs::{rational, CoefficientTable, Sign};
use gmf_exponents::curves::{self, is_inert};
use gmf_exponents::density::{self, Predicate, PrimeCoefficients};
use gmf_exponents::io::{self, LoadedCurve};
use gmf_exponents::{arith, series};

const ALL: [&str; 5] = ["11a1", "37a1", "32a2", "36a1", "53a1"];

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn load(name: &str) -> LoadedCurve {
    io::load_curve(&root().join("curves").join(format!("{name}.json"))).unwrap()
}

#[test]
fn overrides_cover_bad_primes_and_match_local_traces() {
    for name in ALL {
        let c = load(name);
        let keys: Vec<u64> = c.overrides.keys().copied().collect();
        assert_eq!(keys, c.curve.bad_primes(), "{name}");
        for (&p, &v) in &c.overrides {
            assert_eq!(c.curve.reduction_trace(p), v, "{name} at {p}");
        }
    }
}

#[test]
fn golden_tables_match_point_counts() {
    for name in ALL {
        let c = load(name);
        let golden = io::import_ap_csv(&root().join("ap").join(format!("{name}.csv"))).unwrap();
        let bound = *golden.keys().last().unwrap();
        assert!(bound > 9900, "{name}: golden table stops at {bound}");
        let fresh = curves::ap_table(&c.curve, 10_000);
        assert_eq!(golden.into_iter().collect::<Vec<_>>(), fresh.entries(), "{name}");
    }
}

#[test]
fn known_expansions() {
    // b(n) for n = 1..=12
    let known: [(&str, [i64; 12]); 3] = [
        ("11a1", [1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2]),
        ("37a1", [1, -2, -3, 2, -2, 6, -1, 0, 6, 4, -5, -6]),
        ("32a2", [1, 0, 0, 0, -2, 0, 0, 0, -3, 0, 0, 0]),
    ];
    for (name, b) in known {
        let c = load(name);
        let t = CoefficientTable::build(&curves::ap_table(&c.curve, 12), &c.overrides, 12).unwrap();
        assert_eq!(&t.b_values()[1..], &b, "{name}");
    }
}

#[test]
fn product_coefficients_stop_being_integral_early() {
    for name in ALL {
        let c = load(name);
        let t = CoefficientTable::build(&curves::ap_table(&c.curve, 30), &c.overrides, 30).unwrap();
        let f = series::product_expand(t.c_values(), 30).unwrap();
        let k = series::integrality_probe(&f).unwrap_or(usize::MAX);
        assert!(k <= 10, "{name}: first non-integral coefficient at {k}");
    }
}

#[test]
fn some_small_prime_exponent_is_fractional() {
    for name in ALL {
        let c = load(name);
        let t = CoefficientTable::build(&curves::ap_table(&c.curve, 7), &c.overrides, 7).unwrap();
        let fractional = [2u64, 3, 5, 7].iter().any(|&p| !t.c(p).unwrap().is_integer());
        assert!(fractional, "{name}");
    }
}

#[test]
fn cm_inert_primes_have_exponent_one_over_p() {
    for name in ["32a2", "36a1"] {
        let c = load(name);
        let d = c.curve.cm_discriminant().unwrap();
        let t = CoefficientTable::build(&curves::ap_table(&c.curve, 5000), &c.overrides, 5000).unwrap();
        for p in arith::sieve_primes(5000).iter().filter(|&p| !c.curve.is_bad(p)) {
            let inert = is_inert(p, d).unwrap();
            assert_eq!(*t.c(p).unwrap() == rational(1, p as i64), inert, "{name} at {p}");
        }
    }
}

#[test]
fn zero_set_is_sparse() {
    for name in ["37a1", "36a1"] {
        let table = curves::ap_table(&load(name).curve, 100_000);
        let census = density::sign_census(&table, 100_000).unwrap();
        assert!(census.ratio(Sign::Zero) <= 0.01, "{name}");
    }
}

#[test]
fn report_counts_are_monotone_and_use_all_primes_as_denominator() {
    let c = load("37a1");
    let table = curves::ap_table(&c.curve, 20_000);
    let checkpoints = [100, 1000, 5000, 10_000, 20_000];
    for predicate in [Predicate::All, Predicate::Sign(Sign::Neg)] {
        let report = density::convergence_report(&table, &checkpoints, &predicate, 0.5).unwrap();
        for w in report.rows.windows(2) {
            assert!(w[0].count <= w[1].count);
            assert!(w[0].pi_x < w[1].pi_x);
        }
        for row in &report.rows {
            assert_eq!(row.pi_x, arith::sieve_primes(row.x).len() as u64);
        }
    }
    // bad primes are in π(x) but never counted
    let all = density::convergence_report(&table, &[1000], &Predicate::All, 1.0).unwrap();
    assert_eq!(all.rows[0].count + 1, all.rows[0].pi_x);
    assert_eq!(table.prime_count(1000), 168);
}
