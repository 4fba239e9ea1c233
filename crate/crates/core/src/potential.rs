//! Cutoff potentials, angular channels and the mass scale.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rest mass `M` in natural units (`hbar = c = 1`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalScale {
    mass: f64,
}

impl PhysicalScale {
    pub fn new(mass: f64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::InvalidMass(mass));
        }
        Ok(Self { mass })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }
}

impl Default for PhysicalScale {
    fn default() -> Self {
        Self { mass: 1.0 }
    }
}

/// The Dirac quantum number `kappa`.
///
/// `kappa = j + 1/2` when `l = j + 1/2` and `kappa = -(j + 1/2)` when `l = j - 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub struct AngularChannel {
    kappa: i32,
}

impl AngularChannel {
    pub fn new(kappa: i32) -> Result<Self> {
        if kappa == 0 {
            return Err(Error::ZeroKappa);
        }
        Ok(Self { kappa })
    }

    pub fn kappa(&self) -> i32 {
        self.kappa
    }

    /// Total angular momentum `j = |kappa| - 1/2`.
    pub fn j(&self) -> f64 {
        self.kappa.unsigned_abs() as f64 - 0.5
    }

    /// Orbital angular momentum of the upper component.
    pub fn l(&self) -> u32 {
        if self.kappa > 0 {
            self.kappa as u32
        } else {
            (-self.kappa - 1) as u32
        }
    }

    pub fn is_positive(&self) -> bool {
        self.kappa > 0
    }

    /// The partner channel `-kappa`.
    pub fn mirrored(&self) -> Self {
        Self { kappa: -self.kappa }
    }

    /// Returns `kappa` as `u32`, or an error for negative channels.
    pub(crate) fn require_positive(&self) -> Result<u32> {
        if self.kappa >= 1 {
            Ok(self.kappa as u32)
        } else {
            Err(Error::NegativeKappa(self.kappa))
        }
    }
}

impl TryFrom<i32> for AngularChannel {
    type Error = Error;
    fn try_from(kappa: i32) -> Result<Self> {
        Self::new(kappa)
    }
}

impl From<AngularChannel> for i32 {
    fn from(ch: AngularChannel) -> i32 {
        ch.kappa
    }
}

/// A constant piece of a cutoff potential, extending out to `outer_radius`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub outer_radius: f64,
    pub value: f64,
}

/// Piecewise-constant spherically symmetric potential that vanishes beyond `r0`.
///
/// Segment `i` covers `(r_{i-1}, r_i]` with `r_{-1} = 0`; the boundary radius
/// belongs to the inner segment, so `evaluate(r0)` returns the last value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PotentialFile", into = "PotentialFile")]
pub struct CutoffPotential {
    segments: Vec<Segment>,
}

/// On-disk JSON form: `{"segments": [[r, V], ...], "r0": number}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PotentialFile {
    pub segments: Vec<(f64, f64)>,
    pub r0: f64,
}

impl CutoffPotential {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidPotential("no segments".into()));
        }
        let mut last = 0.0;
        for s in &segments {
            if !(s.outer_radius.is_finite() && s.value.is_finite()) {
                return Err(Error::InvalidPotential("non-finite segment".into()));
            }
            if s.outer_radius <= last {
                return Err(Error::InvalidPotential(format!(
                    "segment radii must be positive and strictly increasing (got {} after {})",
                    s.outer_radius, last
                )));
            }
            last = s.outer_radius;
        }
        Ok(Self { segments })
    }

    /// Square well `V = -lambda` for `r <= r0`; attractive for `lambda > 0`.
    pub fn square_well(lambda: f64, r0: f64) -> Result<Self> {
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(Error::NonPositiveArgument(r0));
        }
        if !lambda.is_finite() {
            return Err(Error::InvalidPotential("non-finite depth".into()));
        }
        Self::new(vec![Segment { outer_radius: r0, value: -lambda }])
    }

    pub fn free(r0: f64) -> Result<Self> {
        Self::square_well(0.0, r0)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn cutoff_radius(&self) -> f64 {
        self.segments.last().map(|s| s.outer_radius).unwrap_or(0.0)
    }

    /// `V(r)`; exactly zero beyond the cutoff.
    pub fn evaluate(&self, r: f64) -> f64 {
        self.segments
            .iter()
            .find(|s| r <= s.outer_radius)
            .map(|s| s.value)
            .unwrap_or(0.0)
    }

    /// `V -> -V` with the same radii.
    pub fn reflect(&self) -> Self {
        Self {
            segments: self
                .segments
                .iter()
                .map(|s| Segment { outer_radius: s.outer_radius, value: -s.value })
                .collect(),
        }
    }

    /// Scales every segment value, `V -> mu V`.
    pub fn scaled(&self, mu: f64) -> Self {
        Self {
            segments: self
                .segments
                .iter()
                .map(|s| Segment { outer_radius: s.outer_radius, value: mu * s.value })
                .collect(),
        }
    }

    /// Depth `lambda` if this is a single-segment square well.
    pub fn square_well_depth(&self) -> Option<f64> {
        match self.segments.as_slice() {
            [only] => Some(-only.value),
            _ => None,
        }
    }

    pub fn max_abs_value(&self) -> f64 {
        self.segments.iter().map(|s| s.value.abs()).fold(0.0, f64::max)
    }

    pub fn is_free(&self) -> bool {
        self.segments.iter().all(|s| s.value == 0.0)
    }
}

impl TryFrom<PotentialFile> for CutoffPotential {
    type Error = Error;

    fn try_from(file: PotentialFile) -> Result<Self> {
        let p = Self::new(
            file.segments
                .iter()
                .map(|&(outer_radius, value)| Segment { outer_radius, value })
                .collect(),
        )?;
        if (p.cutoff_radius() - file.r0).abs() > 1e-12 * file.r0.abs().max(1.0) {
            return Err(Error::InvalidPotential(format!(
                "last segment radius {} does not match r0 = {}",
                p.cutoff_radius(),
                file.r0
            )));
        }
        Ok(p)
    }
}

impl From<CutoffPotential> for PotentialFile {
    fn from(p: CutoffPotential) -> Self {
        let r0 = p.cutoff_radius();
        Self {
            segments: p.segments.iter().map(|s| (s.outer_radius, s.value)).collect(),
            r0,
        }
    }
}
