//! Elements of the unit circle group, the gain group of every graph in this crate.

use std::fmt;
use std::ops::{Mul, Neg};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance under which two gains are considered equal.
pub const EPS_GAIN: f64 = 1e-9;

/// Maximum deviation of `|z|` from one accepted by [`UnitGain::new`].
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// A complex number of modulus one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitGain(Complex64);

impl UnitGain {
    pub const ONE: UnitGain = UnitGain(Complex64 { re: 1.0, im: 0.0 });
    pub const NEG_ONE: UnitGain = UnitGain(Complex64 { re: -1.0, im: 0.0 });
    pub const I: UnitGain = UnitGain(Complex64 { re: 0.0, im: 1.0 });

    pub fn new(z: Complex64) -> Result<Self> {
        if !z.re.is_finite() || !z.im.is_finite() || (z.norm() - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::NonUnitGain { re: z.re, im: z.im });
        }
        Ok(UnitGain(z))
    }

    /// Accepts `z` when `| |z| - 1 | <= tol` and rescales it onto the circle.
    /// Values already unit within [`UNIT_TOLERANCE`] are kept bit for bit.
    pub fn normalized(z: Complex64, tol: f64) -> Result<Self> {
        let r = z.norm();
        if !r.is_finite() || (r - 1.0).abs() > tol {
            return Err(Error::NonUnitGain { re: z.re, im: z.im });
        }
        if (r - 1.0).abs() <= UNIT_TOLERANCE {
            return Ok(UnitGain(z));
        }
        Ok(UnitGain(z / r))
    }

    /// `e^{i theta}`.
    pub fn from_angle(theta: f64) -> Self {
        UnitGain(Complex64::from_polar(1.0, theta))
    }

    /// `e^{i pi p / q}`, with the quarter turns evaluated exactly.
    pub fn from_pi_fraction(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Precondition("zero denominator in pi fraction".into()));
        }
        // reduce to p/q in [0, 2) so that multiples of pi/2 come out exact
        let two_q = 2 * q.abs();
        let p = if q < 0 { -p } else { p };
        let p = p.rem_euclid(two_q);
        let q = q.abs();
        if (2 * p) % q == 0 {
            let quarter = (2 * p) / q;
            return Ok(match quarter {
                0 => UnitGain::ONE,
                1 => UnitGain::I,
                2 => UnitGain::NEG_ONE,
                _ => UnitGain(Complex64::new(0.0, -1.0)),
            });
        }
        Ok(UnitGain::from_angle(std::f64::consts::PI * p as f64 / q as f64))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    /// The inverse, which on the unit circle is the conjugate.
    pub fn conj(self) -> Self {
        UnitGain(self.0.conj())
    }

    pub fn arg(self) -> f64 {
        self.0.arg()
    }

    pub fn approx_eq(self, other: UnitGain) -> bool {
        (self.0 - other.0).norm() <= EPS_GAIN
    }

    pub fn is_one(self) -> bool {
        self.approx_eq(UnitGain::ONE)
    }
}

impl Default for UnitGain {
    fn default() -> Self {
        UnitGain::ONE
    }
}

impl Mul for UnitGain {
    type Output = UnitGain;

    fn mul(self, rhs: UnitGain) -> UnitGain {
        let z = self.0 * rhs.0;
        // renormalize so long products do not drift off the circle
        UnitGain(z / z.norm())
    }
}

impl Neg for UnitGain {
    type Output = UnitGain;

    fn neg(self) -> UnitGain {
        UnitGain(-self.0)
    }
}

impl fmt::Display for UnitGain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.0.re, self.0.im)
    }
}
