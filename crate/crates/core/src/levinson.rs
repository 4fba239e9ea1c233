//! Levinson's theorem for the Dirac equation and two node-count refinements.
//!
//! The theorem itself ties the number of bound states to the threshold
//! phase shifts:
//!
//! ```text
//! N = (delta(M) + delta(-M)) / pi - (sin^2 delta(M) + sin^2 delta(-M)) / 2
//! ```
//!
//! The stronger node form splits `N` per threshold into node counts; it is
//! checked literally and fails for strong wells. The modified form replaces
//! it with four sign-dependent cases written in terms of `g` only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::Threshold;
use crate::nodes::{node_report, NodeReport};
use crate::phase::{delta_curve, threshold_limit_by_jumps, DeltaGrid};
use crate::potential::{AngularChannel, CutoffPotential, PhysicalScale};
use crate::spectrum::{find_bound_states, SpectrumReport, DEFAULT_TOL};

/// Whether `max |V| < 2M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Weak,
    Strong,
}

impl Regime {
    pub fn of(p: &CutoffPotential, scale: &PhysicalScale) -> Self {
        if p.max_abs_value() < 2.0 * scale.mass() {
            Regime::Weak
        } else {
            Regime::Strong
        }
    }
}

/// Everything the three statements need, computed once.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdAnalysis {
    pub channel: AngularChannel,
    /// `delta(+M)` in units of `pi/2`.
    pub plus_units: i64,
    pub minus_units: i64,
    pub spectrum: SpectrumReport,
    pub nodes_plus: NodeReport,
    pub nodes_minus: NodeReport,
    pub regime: Regime,
}

fn sin2(units: i64) -> f64 {
    if units % 2 == 0 {
        0.0
    } else {
        1.0
    }
}

fn over_pi(units: i64) -> f64 {
    units as f64 / 2.0
}

impl ThresholdAnalysis {
    pub fn delta_plus(&self) -> f64 {
        self.plus_units as f64 * std::f64::consts::FRAC_PI_2
    }

    pub fn delta_minus(&self) -> f64 {
        self.minus_units as f64 * std::f64::consts::FRAC_PI_2
    }

    /// The same data for `-kappa` in `-V`: thresholds swap and `f`, `g`
    /// trade places.
    pub fn mirrored(&self) -> Self {
        Self {
            channel: self.channel.mirrored(),
            plus_units: self.minus_units,
            minus_units: self.plus_units,
            spectrum: self.spectrum.mirrored(),
            nodes_plus: self.nodes_minus.mirrored(),
            nodes_minus: self.nodes_plus.mirrored(),
            regime: self.regime,
        }
    }
}

/// Threshold limits, spectrum and node counts for `(p, ch)`.
///
/// For a single square well the continuity limits are cross-checked
/// against the jump rules and any disagreement is an error.
pub fn analyze(
    p: &CutoffPotential,
    ch: AngularChannel,
    scale: &PhysicalScale,
) -> Result<ThresholdAnalysis> {
    let grid = DeltaGrid::default();
    let plus = delta_curve(p, ch, scale, Threshold::Plus, &grid)?;
    let minus = delta_curve(p, ch, scale, Threshold::Minus, &grid)?;
    if let Some(lambda) = p.square_well_depth() {
        let r0 = p.cutoff_radius();
        for rec in [&plus, &minus] {
            let jumps = threshold_limit_by_jumps(lambda, ch, scale, r0, rec.threshold)?;
            if jumps.half_pi_units != rec.threshold_in_half_pi_units {
                return Err(Error::MethodDisagreement {
                    continuity: rec.threshold_limit,
                    jumps: jumps.delta,
                });
            }
        }
    }
    Ok(ThresholdAnalysis {
        channel: ch,
        plus_units: plus.threshold_in_half_pi_units,
        minus_units: minus.threshold_in_half_pi_units,
        spectrum: find_bound_states(p, ch, scale, DEFAULT_TOL)?,
        nodes_plus: node_report(p, ch, scale, Threshold::Plus)?,
        nodes_minus: node_report(p, ch, scale, Threshold::Minus)?,
        regime: Regime::of(p, scale),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevinsonReport {
    pub kappa: i32,
    pub delta_plus: f64,
    pub delta_minus: f64,
    pub sin2_plus: f64,
    pub sin2_minus: f64,
    #[serde(rename = "N")]
    pub n_kappa: usize,
    pub eq2_lhs: f64,
    pub eq2_rhs: f64,
    pub residual: f64,
    pub eq3_plus_holds: bool,
    pub eq3_minus_holds: bool,
    pub modified_c_holds: bool,
    pub regime: Regime,
    pub half_bound_at_plus_m: bool,
    pub half_bound_at_minus_m: bool,
}

impl LevinsonReport {
    pub fn from_analysis(a: &ThresholdAnalysis) -> Result<Self> {
        let rhs = over_pi(a.plus_units) + over_pi(a.minus_units)
            - 0.5 * (sin2(a.plus_units) + sin2(a.minus_units));
        let lhs = a.spectrum.count as f64;
        let strong = strong_statement(a);
        let modified = if a.channel.is_positive() {
            modified_statement(a)?
        } else {
            modified_statement(&a.mirrored())?
        };
        Ok(Self {
            kappa: a.channel.kappa(),
            delta_plus: a.delta_plus(),
            delta_minus: a.delta_minus(),
            sin2_plus: sin2(a.plus_units),
            sin2_minus: sin2(a.minus_units),
            n_kappa: a.spectrum.count,
            eq2_lhs: lhs,
            eq2_rhs: rhs,
            residual: (lhs - rhs).abs(),
            eq3_plus_holds: strong.plus_holds,
            eq3_minus_holds: strong.minus_holds,
            modified_c_holds: modified.holds,
            regime: a.regime,
            half_bound_at_plus_m: a.spectrum.half_bound_at_plus_m,
            half_bound_at_minus_m: a.spectrum.half_bound_at_minus_m,
        })
    }
}

/// Full check of `N = sum over thresholds of (delta/pi - sin^2(delta)/2)`.
pub fn verify_levinson(
    p: &CutoffPotential,
    ch: AngularChannel,
    scale: &PhysicalScale,
) -> Result<LevinsonReport> {
    LevinsonReport::from_analysis(&analyze(p, ch, scale)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeRange {
    /// `0 < r < r0` only.
    Interior,
    /// `0 < r < ∞`, the node at infinity excluded.
    Total,
}

/// One way of reading "number of nodes" at one threshold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeReading {
    pub threshold: Threshold,
    pub component: crate::nodes::Component,
    pub range: NodeRange,
    pub nodes: usize,
    /// `delta/pi - sin^2(delta)/2` at this threshold.
    pub phase_side: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrongStatement {
    /// `f` at `+M`, all nodes.
    pub plus_holds: bool,
    /// `g` at `-M`, all nodes.
    pub minus_holds: bool,
    /// Every component/range combination, for comparison.
    pub details: Vec<NodeReading>,
}

fn node_count(r: &NodeReport, c: crate::nodes::Component, range: NodeRange) -> usize {
    use crate::nodes::Component::{F, G};
    match (c, range) {
        (F, NodeRange::Interior) => r.f_nodes_interior,
        (G, NodeRange::Interior) => r.g_nodes_interior,
        (F, NodeRange::Total) => r.f_total(),
        (G, NodeRange::Total) => r.g_total(),
    }
}

/// Per-threshold node form: `n(±M) = delta(±M)/pi - sin^2(delta(±M))/2`,
/// with `n(M)` counting `f` at `+M` and `n(-M)` counting `g` at `-M`.
pub fn strong_statement(a: &ThresholdAnalysis) -> StrongStatement {
    use crate::nodes::Component::{F, G};
    let mut details = Vec::new();
    for (t, units, report) in [
        (Threshold::Plus, a.plus_units, &a.nodes_plus),
        (Threshold::Minus, a.minus_units, &a.nodes_minus),
    ] {
        let phase_side = over_pi(units) - 0.5 * sin2(units);
        for component in [F, G] {
            for range in [NodeRange::Total, NodeRange::Interior] {
                let nodes = node_count(report, component, range);
                details.push(NodeReading {
                    threshold: t,
                    component,
                    range,
                    nodes,
                    phase_side,
                    holds: nodes as f64 == phase_side,
                });
            }
        }
    }
    let pick = |t, c| {
        details
            .iter()
            .find(|d| d.threshold == t && d.component == c && d.range == NodeRange::Total)
            .map(|d| d.holds)
            .expect("reading present")
    };
    StrongStatement {
        plus_holds: pick(Threshold::Plus, F),
        minus_holds: pick(Threshold::Minus, G),
        details,
    }
}

pub fn check_strong_statement(
    p: &CutoffPotential,
    ch: AngularChannel,
    scale: &PhysicalScale,
) -> Result<StrongStatement> {
    Ok(strong_statement(&analyze(p, ch, scale)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModifiedCase {
    /// `delta(M) >= 0`: `delta(M)/pi` equals the nodes of `g` at `+M`.
    PlusNonNegative,
    /// `delta(M) < 0`: `-delta(M)/pi` equals the nodes of `g` at `+M` inside `r0`.
    PlusNegative,
    /// `delta(-M) >= 0`: `delta(-M)/pi - sin^2/2` equals the nodes of `g` at `-M`.
    MinusNonNegative,
    /// `delta(-M) < 0`: `-delta(-M)/pi + sin^2/2` equals the nodes of `g` at
    /// `-M` inside `r0` minus those outside.
    MinusNegative,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseVerdict {
    pub case: ModifiedCase,
    pub applies: bool,
    pub phase_side: f64,
    pub node_side: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModifiedStatement {
    pub kappa: i32,
    /// All applicable cases hold.
    pub holds: bool,
    pub cases: Vec<CaseVerdict>,
    /// Total node counts of `f` and `g` at `+M`, which the first case
    /// expects to coincide.
    pub f_nodes_plus: usize,
    pub g_nodes_plus: usize,
    /// Interior minus exterior nodes of `g` at `-M`, the count the last
    /// case uses. Reported so the third case can be compared against it.
    pub g_nodes_minus_signed: i64,
}

/// The four sign-dependent cases, stated for positive `kappa`; a negative
/// channel is evaluated on its mirrored positive problem.
pub fn modified_statement(a: &ThresholdAnalysis) -> Result<ModifiedStatement> {
    if !a.channel.is_positive() {
        return Err(Error::NegativeKappa(a.channel.kappa()));
    }
    let (p, m) = (a.plus_units, a.minus_units);
    let np = &a.nodes_plus;
    let nm = &a.nodes_minus;
    let g_signed = nm.g_nodes_interior as i64 - nm.g_nodes_exterior.max(usize::from(nm.node_at_r0_g)) as i64;
    let verdict = |case, applies: bool, phase_side: f64, node_side: i64| CaseVerdict {
        case,
        applies,
        phase_side,
        node_side,
        holds: !applies || phase_side == node_side as f64,
    };
    let cases = vec![
        verdict(ModifiedCase::PlusNonNegative, p >= 0, over_pi(p), np.g_total() as i64),
        verdict(ModifiedCase::PlusNegative, p < 0, -over_pi(p), np.g_nodes_interior as i64),
        verdict(
            ModifiedCase::MinusNonNegative,
            m >= 0,
            over_pi(m) - 0.5 * sin2(m),
            nm.g_total() as i64,
        ),
        verdict(
            ModifiedCase::MinusNegative,
            m < 0,
            -over_pi(m) + 0.5 * sin2(m),
            g_signed,
        ),
    ];
    Ok(ModifiedStatement {
        kappa: a.channel.kappa(),
        holds: cases.iter().all(|c| c.holds),
        cases,
        f_nodes_plus: np.f_total(),
        g_nodes_plus: np.g_total(),
        g_nodes_minus_signed: g_signed,
    })
}

pub fn check_modified_statement(
    p: &CutoffPotential,
    ch: AngularChannel,
    scale: &PhysicalScale,
) -> Result<ModifiedStatement> {
    let a = analyze(p, ch, scale)?;
    if ch.is_positive() {
        modified_statement(&a)
    } else {
        modified_statement(&a.mirrored())
    }
}
