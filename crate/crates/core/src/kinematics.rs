//! Energies, thresholds and the projective matching ratio.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::PhysicalScale;

/// One of the two continuum thresholds `E = +M` or `E = -M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Threshold {
    Plus,
    Minus,
}

impl Threshold {
    pub fn sign(self) -> f64 {
        match self {
            Threshold::Plus => 1.0,
            Threshold::Minus => -1.0,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Threshold::Plus => Threshold::Minus,
            Threshold::Minus => Threshold::Plus,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Threshold::Plus => "plus",
            Threshold::Minus => "minus",
        })
    }
}

/// An energy together with `E - M` and `E + M` carried separately.
///
/// Near a threshold one of the offsets is far smaller than `ulp(M)`, so it
/// is stored directly instead of being recovered from `E` by subtraction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyPoint {
    energy: f64,
    minus_mass: f64,
    plus_mass: f64,
    mass: f64,
}

impl EnergyPoint {
    pub fn new(scale: &PhysicalScale, energy: f64) -> Self {
        let m = scale.mass();
        Self { energy, minus_mass: energy - m, plus_mass: energy + m, mass: m }
    }

    /// Exactly at a threshold.
    pub fn threshold(scale: &PhysicalScale, t: Threshold) -> Self {
        let m = scale.mass();
        match t {
            Threshold::Plus => Self { energy: m, minus_mass: 0.0, plus_mass: 2.0 * m, mass: m },
            Threshold::Minus => Self { energy: -m, minus_mass: -2.0 * m, plus_mass: 0.0, mass: m },
        }
    }

    /// Scattering energy `E = ±sqrt(M^2 + k^2)` on the side of `t`.
    pub fn scattering(scale: &PhysicalScale, k: f64, t: Threshold) -> Self {
        let m = scale.mass();
        let abs_e = m.hypot(k);
        let near = k * k / (abs_e + m);
        match t {
            Threshold::Plus => Self { energy: abs_e, minus_mass: near, plus_mass: abs_e + m, mass: m },
            Threshold::Minus => {
                Self { energy: -abs_e, minus_mass: -abs_e - m, plus_mass: -near, mass: m }
            }
        }
    }

    /// `E = -M + eps` inside the gap.
    pub fn above_lower(scale: &PhysicalScale, eps: f64) -> Self {
        let m = scale.mass();
        Self { energy: -m + eps, minus_mass: eps - 2.0 * m, plus_mass: eps, mass: m }
    }

    /// `E = M - eps` inside the gap.
    pub fn below_upper(scale: &PhysicalScale, eps: f64) -> Self {
        let m = scale.mass();
        Self { energy: m - eps, minus_mass: -eps, plus_mass: 2.0 * m - eps, mass: m }
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// `E - M`.
    pub fn minus_mass(&self) -> f64 {
        self.minus_mass
    }

    /// `E + M`.
    pub fn plus_mass(&self) -> f64 {
        self.plus_mass
    }

    /// `k = sqrt(E^2 - M^2)` for `|E| > M`.
    pub fn momentum(&self) -> Option<f64> {
        let k2 = self.minus_mass * self.plus_mass;
        (k2 > 0.0).then(|| k2.sqrt())
    }

    /// `tau = sqrt(M^2 - E^2)` for `|E| < M`.
    pub fn decay_constant(&self) -> Option<f64> {
        let t2 = -self.minus_mass * self.plus_mass;
        (t2 > 0.0).then(|| t2.sqrt())
    }

    pub fn is_scattering(&self) -> bool {
        self.minus_mass * self.plus_mass > 0.0
    }

    pub fn in_gap(&self) -> bool {
        self.minus_mass < 0.0 && self.plus_mass > 0.0
    }

    /// The mirrored energy `-E`.
    pub fn negated(&self) -> Self {
        Self {
            energy: -self.energy,
            minus_mass: -self.plus_mass,
            plus_mass: -self.minus_mass,
            mass: self.mass,
        }
    }

    /// Midpoint of two gap energies, taken geometrically in the distance to
    /// the nearer threshold when both lie close to the same one. `None` once
    /// the pair can no longer be split.
    pub(crate) fn gap_midpoint(scale: &PhysicalScale, a: &Self, b: &Self) -> Option<Self> {
        let m = scale.mass();
        let mid = |x: f64, y: f64| {
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            let c = if lo > 0.0 && hi > 4.0 * lo { (lo * hi).sqrt() } else { 0.5 * (x + y) };
            (c != x && c != y).then_some(c)
        };
        if a.plus_mass < m && b.plus_mass < m {
            mid(a.plus_mass, b.plus_mass).map(|eps| Self::above_lower(scale, eps))
        } else if -a.minus_mass < m && -b.minus_mass < m {
            mid(-a.minus_mass, -b.minus_mass).map(|eps| Self::below_upper(scale, eps))
        } else {
            mid(a.energy, b.energy).map(|e| Self::new(scale, e))
        }
    }

    /// Distance to the nearer threshold.
    pub fn threshold_offset(&self) -> f64 {
        self.plus_mass.abs().min(self.minus_mass.abs())
    }
}

/// The matching ratio `A = f/g` stored as a unit ray `(f, g)`, so that
/// `A = ∞` (`g = 0`) is an ordinary value.
///
/// The sign is fixed by making the first nonzero entry positive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectiveRatio {
    f: f64,
    g: f64,
}

impl ProjectiveRatio {
    pub fn new(f: f64, g: f64) -> Result<Self> {
        if !(f.is_finite() && g.is_finite()) {
            return Err(Error::NonFinite { r: f64::NAN });
        }
        let norm = f.hypot(g);
        if norm == 0.0 {
            return Err(Error::VanishingComponent);
        }
        let s = if f > 0.0 || (f == 0.0 && g > 0.0) { 1.0 } else { -1.0 };
        Ok(Self { f: s * f / norm, g: s * g / norm })
    }

    /// From a finite or infinite value of `A`.
    pub fn from_value(a: f64) -> Self {
        if a.is_infinite() {
            Self { f: 1.0, g: if a > 0.0 { 0.0 } else { -0.0 } }
        } else {
            Self::new(a, 1.0).expect("finite ray")
        }
    }

    pub fn infinity() -> Self {
        Self { f: 1.0, g: 0.0 }
    }

    pub fn f(&self) -> f64 {
        self.f
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    /// `A = f/g`, infinite when `g = 0`.
    pub fn value(&self) -> f64 {
        self.f / self.g
    }

    pub fn is_infinite_within(&self, tol: f64) -> bool {
        self.g.abs() < tol
    }

    /// `1/A`: the ray with the components exchanged.
    pub fn inverted(&self) -> Self {
        Self::new(self.g, self.f).expect("unit ray")
    }

    /// `|sin|` of the angle between the two rays.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.f * other.g - self.g * other.f).abs()
    }

    /// Angle `phi` in `[0, pi)` with `A = tan(phi)`.
    pub fn angle(&self) -> f64 {
        let a = self.f.atan2(self.g);
        if a < 0.0 {
            a + PI
        } else if a >= PI {
            a - PI
        } else {
            a
        }
    }
}

impl fmt::Display for ProjectiveRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.value();
        if v.is_infinite() {
            f.write_str(if v > 0.0 { "inf" } else { "-inf" })
        } else if v == 0.0 {
            f.write_str("0")
        } else {
            write!(f, "{v}")
        }
    }
}
