use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("prime {p} is a bad prime for this curve")]
    BadPrime { p: u64 },

    #[error("singular Weierstrass model (discriminant 0)")]
    SingularCurve,

    #[error("could not factor the discriminant {0}; supply bad_primes explicitly")]
    UnfactoredDiscriminant(i128),

    #[error("a_p is missing for prime {p} (needed to extend b(n) up to {bound})")]
    MissingPrime { p: u64, bound: u64 },

    #[error("missing a_p for bad primes {primes:?}; supply them via ap_overrides")]
    MissingBadPrimes { primes: Vec<u64> },

    #[error("coefficient |{value}| exceeds the Deligne bound 2p^(k-1/2) at p = {p}, k = {k}")]
    DeligneBound { p: u64, value: i64, k: u32 },

    #[error("index {index} is outside the table (bound {bound})")]
    OutOfRange { index: u64, bound: u64 },

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error(
        "interval {0} is not allowed for CM densities: it must lie in [-1,0] or be a closed \
         interval inside (0,1]; inert primes have c(p) = 1/p > 0 and pile up at 0+, so the \
         Dirac atom at 0 makes the comparison with the continuous measure ill-posed"
    )]
    AtomAmbiguity(String),

    #[error("residue {a} is not coprime to modulus {q}")]
    NotCoprime { a: i64, q: u64 },

    #[error("checkpoints must be ascending and at most {bound}")]
    BadCheckpoints { bound: u64 },

    #[error("series has zero constant term; cannot divide")]
    NonUnitConstant,

    #[error("series orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),

    #[error(
        "nonzero integral c(p) found at p = {p} (c = {value}), outside the candidates {{2, 3, 5}}"
    )]
    TheoremContradiction { p: u64, value: String },

    #[error("curve has no CM discriminant")]
    NotCm,

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("{path}, row {row}: {message}")]
    Row {
        path: PathBuf,
        row: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
