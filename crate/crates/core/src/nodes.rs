//! Node counts of `f` and `g` at the thresholds `E = ±M`.
//!
//! Inside `r0` nodes are counted as sign changes of sampled solutions.
//! Outside, the threshold solutions are power laws, so at most one node
//! per component can occur and its presence is read off from `A(±M)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{threshold_constants, ThresholdConstants};
use crate::interior::{integrate_radial, RadialSamples, DEFAULT_STEPS};
use crate::kinematics::{EnergyPoint, ProjectiveRatio, Threshold};
use crate::potential::{AngularChannel, CutoffPotential, PhysicalScale};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    F,
    G,
}

/// Strict sign changes of one component over the sampled interior.
///
/// A sample that is exactly zero is skipped, so a zero at the outermost
/// sample (`r0` itself) is not counted here.
pub fn count_interior_nodes(samples: &RadialSamples, component: Component) -> Result<usize> {
    let values = match component {
        Component::F => samples.f(),
        Component::G => samples.g(),
    };
    let mut last = 0.0f64;
    let mut count = 0;
    for &v in values {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            count += 1;
        }
        last = v;
    }
    if last == 0.0 {
        return Err(Error::VanishingComponent);
    }
    Ok(count)
}

/// Exterior node bookkeeping for one threshold.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExteriorNodes {
    pub f_count: usize,
    pub g_count: usize,
    pub node_at_r0_f: bool,
    pub node_at_r0_g: bool,
    /// `f` decays like `r^-kappa` at `-M`; recorded, never counted.
    pub node_at_infinity_f: bool,
}

/// Exterior nodes for a threshold solution with `A = a` at `r0`.
///
/// At `+M`, `f` has one node beyond `r0` iff `A > 0` and `g` has none. At
/// `-M`, `f` has none and `g` has one iff `A >= rho1`; when `A = ∞` that node
/// is the zero of `g` at `r0` itself.
pub fn exterior_nodes(t: Threshold, a: &ProjectiveRatio, tc: &ThresholdConstants) -> ExteriorNodes {
    let (f, g) = (a.f(), a.g());
    match t {
        Threshold::Plus => ExteriorNodes {
            f_count: usize::from(f > 0.0 && g > 0.0),
            g_count: 0,
            node_at_r0_f: f == 0.0,
            node_at_r0_g: g == 0.0,
            node_at_infinity_f: false,
        },
        Threshold::Minus => ExteriorNodes {
            f_count: 0,
            g_count: usize::from(g >= 0.0 && f >= tc.rho1 * g && f > 0.0),
            node_at_r0_f: f == 0.0,
            node_at_r0_g: g == 0.0,
            node_at_infinity_f: true,
        },
    }
}

/// Complete node bookkeeping at one threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeReport {
    pub threshold: Threshold,
    pub f_nodes_interior: usize,
    pub g_nodes_interior: usize,
    pub f_nodes_exterior: usize,
    pub g_nodes_exterior: usize,
    pub node_at_r0_f: bool,
    pub node_at_r0_g: bool,
    pub node_at_infinity_f: bool,
    /// Only set on reports mirrored from a positive channel.
    pub node_at_infinity_g: bool,
}

impl NodeReport {
    /// Nodes of `f` on `(0, ∞)`: interior sign changes plus the exterior
    /// node, where a zero exactly at `r0` counts once.
    pub fn f_total(&self) -> usize {
        self.f_nodes_interior + self.f_nodes_exterior.max(usize::from(self.node_at_r0_f))
    }

    pub fn g_total(&self) -> usize {
        self.g_nodes_interior + self.g_nodes_exterior.max(usize::from(self.node_at_r0_g))
    }

    /// Report for `-kappa` in `V` from the one for `kappa` in `-V` at the
    /// opposite threshold: the components trade places.
    pub fn mirrored(&self) -> Self {
        Self {
            threshold: self.threshold.opposite(),
            f_nodes_interior: self.g_nodes_interior,
            g_nodes_interior: self.f_nodes_interior,
            f_nodes_exterior: self.g_nodes_exterior,
            g_nodes_exterior: self.f_nodes_exterior,
            node_at_r0_f: self.node_at_r0_g,
            node_at_r0_g: self.node_at_r0_f,
            node_at_infinity_f: self.node_at_infinity_g,
            node_at_infinity_g: self.node_at_infinity_f,
        }
    }
}

/// Node counts of the regular threshold solution at `t`.
pub fn node_report(
    p: &CutoffPotential,
    ch: AngularChannel,
    scale: &PhysicalScale,
    t: Threshold,
) -> Result<NodeReport> {
    node_report_with_steps(p, ch, scale, t, DEFAULT_STEPS)
}

pub fn node_report_with_steps(
    p: &CutoffPotential,
    ch: AngularChannel,
    scale: &PhysicalScale,
    t: Threshold,
    n_steps: usize,
) -> Result<NodeReport> {
    if !ch.is_positive() {
        return Ok(node_report_with_steps(&p.reflect(), ch.mirrored(), scale, t.opposite(), n_steps)?
            .mirrored());
    }
    let samples = integrate_radial(p, ch, &EnergyPoint::threshold(scale, t), n_steps)?;
    let tc = threshold_constants(scale, p.cutoff_radius(), ch)?;
    let ext = exterior_nodes(t, &samples.ratio()?, &tc);
    // When E - V + M (or E - V - M) vanishes throughout, one component of the
    // regular solution is identically zero and has no nodes at all.
    let interior = |c| match count_interior_nodes(&samples, c) {
        Err(Error::VanishingComponent) => Ok(None),
        other => other.map(Some),
    };
    let f_in = interior(Component::F)?;
    let g_in = interior(Component::G)?;
    Ok(NodeReport {
        threshold: t,
        f_nodes_interior: f_in.unwrap_or(0),
        g_nodes_interior: g_in.unwrap_or(0),
        f_nodes_exterior: ext.f_count,
        g_nodes_exterior: ext.g_count,
        node_at_r0_f: ext.node_at_r0_f && f_in.is_some(),
        node_at_r0_g: ext.node_at_r0_g && g_in.is_some(),
        node_at_infinity_f: ext.node_at_infinity_f,
        node_at_infinity_g: false,
    })
}
