//! Closed forms for the two limiting measures on `[-1, 1]`:
//!
//! * Sato-Tate: `(2/π) √(1 - t²) dt`
//! * CM: `(1/2π) (1 - t²)^(-1/2) dt` plus a Dirac mass 1/2 at 0
//!
//! Both continuous parts are atomless, so endpoint openness only matters for
//! the CM atom at 0.

use std::f64::consts::PI;
use std::fmt;

use crate::coeffs::Sign;
use crate::error::{Error, Result};

/// A subinterval of `[-1, 1]` with independently open or closed ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidInterval(format!("non-finite endpoint ({lo}, {hi})")));
        }
        if lo > hi {
            return Err(Error::InvalidInterval(format!("lower end {lo} exceeds upper end {hi}")));
        }
        if lo < -1.0 || hi > 1.0 {
            return Err(Error::InvalidInterval(format!(
                "[{lo}, {hi}] is not contained in [-1, 1]"
            )));
        }
        Ok(Self {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn closed(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    /// `(lo, hi]`
    pub fn open_closed(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, false, true)
    }

    /// `[lo, hi)`
    pub fn closed_open(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, true, false)
    }

    pub fn open(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, false, false)
    }

    pub fn full() -> Self {
        Self {
            lo: -1.0,
            hi: 1.0,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_closed(&self) -> bool {
        self.lo_closed && self.hi_closed
    }

    pub fn contains(&self, t: f64) -> bool {
        let above = if self.lo_closed { t >= self.lo } else { t > self.lo };
        let below = if self.hi_closed { t <= self.hi } else { t < self.hi };
        above && below
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    SatoTate,
    DeuringCm,
}

impl MeasureKind {
    /// Weight of the Dirac mass at 0.
    pub fn atom_at_zero(self) -> f64 {
        match self {
            MeasureKind::SatoTate => 0.0,
            MeasureKind::DeuringCm => 0.5,
        }
    }

    pub fn mass(self, interval: &Interval) -> f64 {
        match self {
            MeasureKind::SatoTate => st_mass(interval),
            MeasureKind::DeuringCm => cm_mass(interval),
        }
    }

    /// Density of the continuous part at `t`.
    pub fn density(self, t: f64) -> f64 {
        match self {
            MeasureKind::SatoTate => 2.0 / PI * (1.0 - t * t).sqrt(),
            MeasureKind::DeuringCm => 1.0 / (2.0 * PI * (1.0 - t * t).sqrt()),
        }
    }
}

// antiderivative of √(1 - t²)
fn semicircle_primitive(t: f64) -> f64 {
    (t * (1.0 - t * t).max(0.0).sqrt() + t.asin()) / 2.0
}

/// Sato-Tate mass of an interval.
pub fn st_mass(interval: &Interval) -> f64 {
    2.0 / PI * (semicircle_primitive(interval.hi) - semicircle_primitive(interval.lo))
}

/// Continuous (arcsine) part of the CM measure.
pub fn cm_continuous_mass(interval: &Interval) -> f64 {
    (interval.hi.asin() - interval.lo.asin()) / (2.0 * PI)
}

/// CM mass of an interval, including the atom 1/2 when 0 lies in it.
pub fn cm_mass(interval: &Interval) -> f64 {
    let atom = if interval.contains_zero() {
        MeasureKind::DeuringCm.atom_at_zero()
    } else {
        0.0
    };
    cm_continuous_mass(interval) + atom
}

/// Limiting density of primes with `c(p)` of the given sign.
pub fn theoretical_sign_density(kind: MeasureKind, sign: Sign) -> f64 {
    match (kind, sign) {
        (_, Sign::Zero) => 0.0,
        (MeasureKind::SatoTate, _) => 0.5,
        (MeasureKind::DeuringCm, Sign::Pos) => 0.75,
        (MeasureKind::DeuringCm, Sign::Neg) => 0.25,
    }
}
