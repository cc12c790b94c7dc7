//! Exact q-exponents of the weight-0 generalized modular function
//! `f = ∏ (1 - q^n)^c(n)` whose logarithmic derivative `q·f'/f` is the
//! weight-2 eigenform `g = Σ b(n) q^n` of a rational elliptic curve, plus
//! the machinery to test the limiting behaviour of `c(p)` over primes:
//!
//! * [`curves`]: Weierstrass models and point-counted `a_p = b(p)`
//! * [`coeffs`]: Hecke extension of `b`, Möbius inversion to `c`, normalisations
//! * [`measures`]: Sato-Tate and CM measures in closed form
//! * [`density`]: sign censuses, interval and progression counts, convergence reports
//! * [`integrality`]: primes with `c(p)` zero or a nonzero integer
//! * [`series`]: exact truncated power series and the `f ↔ g` round trip
//! * [`io`] and [`cli`]: file formats and the `gmf` command line
//!
//! ```
//! use gmf_exponents::curves::{ap_table, EllipticCurve};
//! use gmf_exponents::density::sign_census;
//!
//! let e = EllipticCurve::new([0, -1, 1, -10, -20]).unwrap(); // 11a1
//! let census = sign_census(&ap_table(&e, 10), 10).unwrap();
//! assert_eq!((census.n_pos, census.n_neg, census.n_zero), (3, 0, 1));
//! ```

pub mod arith;
pub mod cli;
pub mod coeffs;
pub mod curves;
pub mod density;
pub mod error;
pub mod integrality;
pub mod io;
pub mod measures;
pub mod series;

pub use coeffs::{CoefficientTable, Rational, Sign};
pub use curves::{ApTable, EllipticCurve};
pub use error::{Error, Result};
pub use measures::{Interval, MeasureKind};
pub use series::PowerSeries;
