//! Exact finite shadows of the rotation equilibrium: when the rotation number
//! is rational every orbit is periodic, and the measure supported on one
//! orbit is a cycle measure.

use num_traits::{One, Signed, Zero};

use super::Orientation;
use crate::cycle::CyclePattern;
use crate::error::{Error, Result};
use crate::measure::FiniteMeasure;
use crate::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRotation {
    pub a: Rational,
    pub b: Rational,
    pub alpha: Rational,
}

impl RationalRotation {
    /// Requires `0 < a < b < 1` and `0 < alpha <= b - a`; `alpha = b - a` is
    /// the identity rotation with rotation number 1/1.
    pub fn new(a: Rational, b: Rational, alpha: Rational) -> Result<Self> {
        if !(a.is_positive() && a < b && b < Rational::one()) {
            return Err(Error::InvalidRotation(format!(
                "need 0 < a < b < 1, got a = {}, b = {}",
                format_rational(&a),
                format_rational(&b)
            )));
        }
        if !(alpha.is_positive() && alpha <= &b - &a) {
            return Err(Error::InvalidRotation(format!(
                "need 0 < alpha <= b - a, got alpha = {}",
                format_rational(&alpha)
            )));
        }
        Ok(Self { a, b, alpha })
    }

    /// Rotation with the given rotation number `alpha / (b - a)`.
    pub fn with_rotation_number(a: Rational, b: Rational, number: Rational) -> Result<Self> {
        let alpha = (&b - &a) * number;
        Self::new(a, b, alpha)
    }

    pub fn width(&self) -> Rational {
        &self.b - &self.a
    }

    pub fn rotation_number(&self) -> Rational {
        &self.alpha / self.width()
    }

    /// Period of every orbit: the reduced denominator of the rotation number.
    pub fn period(&self) -> usize {
        let r = self.rotation_number();
        usize::try_from(r.denom()).unwrap_or(usize::MAX)
    }

    fn check(&self, x: &Rational) -> Result<()> {
        if x < &self.a || x >= &self.b {
            return Err(Error::OutsideRotationInterval(format_rational(x)));
        }
        Ok(())
    }

    pub fn map(&self, x: &Rational) -> Result<Rational> {
        self.check(x)?;
        let mut s = x - &self.a + &self.alpha;
        let w = self.width();
        if s >= w {
            s -= w;
        }
        Ok(s + &self.a)
    }

    pub fn inverse_map(&self, x: &Rational) -> Result<Rational> {
        self.check(x)?;
        let mut s = x - &self.a - &self.alpha;
        if s.is_negative() {
            s += self.width();
        }
        Ok(s + &self.a)
    }

    /// The points `x0, f(x0), ...` up to (excluding) the first return.
    pub fn orbit(&self, x0: &Rational) -> Result<Vec<Rational>> {
        let q = self.period();
        let mut out = vec![x0.clone()];
        let mut x = self.map(x0)?;
        while &x != x0 {
            if out.len() >= q {
                return Err(Error::Internal(format!(
                    "orbit of {} did not close after {q} steps",
                    format_rational(x0)
                )));
            }
            out.push(x.clone());
            x = self.map(&x)?;
        }
        if out.len() != q {
            return Err(Error::Internal(format!(
                "orbit of {} has period {}, expected {q}",
                format_rational(x0),
                out.len()
            )));
        }
        Ok(out)
    }

    /// Exact quadrant map on the orbit support (see
    /// [`super::quadrant_map`]).
    pub fn quadrant_map(
        &self,
        (x, y): (&Rational, &Rational),
        orientation: Orientation,
    ) -> Result<(Rational, Rational)> {
        let off = || {
            Error::OutsideRotationInterval(format!(
                "({}, {})",
                format_rational(x),
                format_rational(y)
            ))
        };
        if x.is_zero() || y.is_zero() {
            return Err(off());
        }
        match (orientation, x.is_positive(), y.is_positive()) {
            (Orientation::CounterClockwise, true, false) => Ok((x.clone(), self.map(x)?)),
            (Orientation::CounterClockwise, true, true) => Ok((-y, y.clone())),
            (Orientation::CounterClockwise, false, true) => Ok((x.clone(), x.clone())),
            (Orientation::CounterClockwise, false, false) => Ok((-y, y.clone())),
            (Orientation::Clockwise, true, true) => Ok((x.clone(), -x)),
            (Orientation::Clockwise, false, true) => Ok((self.inverse_map(y)?, y.clone())),
            (Orientation::Clockwise, false, false) => Ok((x.clone(), -x)),
            (Orientation::Clockwise, true, false) => Ok((-x, -x)),
        }
    }
}

/// The cycle pattern (`k = 2q`) whose measure is the rotation equilibrium
/// restricted to the orbit of `x0`: atoms `(t, -t)`, `(t, f(t))`, `(-t, t)`
/// and `(-t, -t)` for each orbit point `t`, weighted by `1/|x y|`.
pub fn rational_orbit_to_cycle(rot: &RationalRotation, x0: &Rational) -> Result<CyclePattern> {
    let orbit = rot.orbit(x0)?;
    let q = orbit.len();
    let mut x_odd = Vec::with_capacity(2 * q);
    let mut y_odd = Vec::with_capacity(2 * q);
    for i in 0..q {
        let (t, next) = (&orbit[i], &orbit[(i + 1) % q]);
        x_odd.extend([t.clone(), -next]);
        y_odd.extend([-t, next.clone()]);
    }
    CyclePattern::from_odd(&x_odd, &y_odd)
}

/// Whether the quadrant map permutes the support of `mu` and keeps the
/// weights of `|x y| mu` unchanged.
pub fn preserves_kappa(
    rot: &RationalRotation,
    mu: &FiniteMeasure,
    orientation: Orientation,
) -> Result<bool> {
    let mut images = std::collections::BTreeSet::new();
    for (x, y, w) in mu.iter() {
        let (gx, gy) = rot.quadrant_map((x, y), orientation)?;
        let before = (x * y).abs() * w;
        let after = (&gx * &gy).abs() * mu.weight(&gx, &gy);
        if before != after {
            return Ok(false);
        }
        images.insert((gx, gy));
    }
    Ok(images.len() == mu.len())
}
