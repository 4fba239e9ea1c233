//! Square-well depth sweeps with jump-event detection.

use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interior::square_well_ray;
use crate::kinematics::{EnergyPoint, ProjectiveRatio, Threshold};
use crate::levinson::{analyze, LevinsonReport};
use crate::phase::{lambda_nodes, locate_crossings, threshold_angle_path};
use crate::potential::{AngularChannel, CutoffPotential, PhysicalScale};

/// Events closer than this to a queried depth count as sitting on it.
pub const EVENT_TOL: f64 = 1e-9;

const EVENT_SCAN_STEP: f64 = 0.01;

/// CSV header, in column order.
pub const CSV_COLUMNS: [&str; 15] = [
    "lambda",
    "A_plus",
    "A_minus",
    "delta_plus_over_pi",
    "delta_minus_over_pi",
    "N",
    "f_nodes_plus",
    "g_nodes_plus",
    "f_nodes_minus_interior",
    "g_nodes_minus_interior",
    "g_nodes_minus_exterior",
    "eq2_residual",
    "eq3_plus",
    "eq3_minus",
    "modified_c",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventKind {
    /// `A(+M)` passes through `∞` (`g(r0) = 0`).
    #[serde(rename = "A_plus_through_infinity")]
    APlusThroughInfinity,
    /// `A(-M)` passes through `rho1`, `kappa >= 2`.
    #[serde(rename = "A_minus_through_rho1")]
    AMinusThroughRho1,
    /// `A(-M)` passes through `rho1` for `kappa = 1`, where the passage goes
    /// through a half-bound state and the jump comes in two halves.
    #[serde(rename = "half_bound_touch")]
    HalfBoundTouch,
}

/// A jump of a threshold phase shift along the depth axis.
///
/// For negative `kappa` the event is found on the mirrored positive channel
/// (`lambda -> -lambda`, thresholds exchanged) and `kind` refers to that
/// channel; `threshold`, `lambda_star`, `direction` and `phase_jump` are
/// those of the requested channel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JumpEvent {
    pub lambda_star: f64,
    pub kind: EventKind,
    pub threshold: Threshold,
    /// `+1` when the angle of `A` grows through the critical value as
    /// `lambda` increases.
    pub direction: i32,
    /// Change of `delta` at `threshold` as `lambda` increases through
    /// `lambda_star`.
    pub phase_jump: f64,
}

impl JumpEvent {
    fn mirrored(&self) -> Self {
        Self {
            lambda_star: -self.lambda_star,
            kind: self.kind,
            threshold: self.threshold.opposite(),
            direction: -self.direction,
            phase_jump: -self.phase_jump,
        }
    }
}

/// Jump events of a square well of radius `r0` for depths in `[lo, hi]`.
pub fn detect_events(
    ch: AngularChannel,
    scale: &PhysicalScale,
    r0: f64,
    lo: f64,
    hi: f64,
) -> Result<Vec<JumpEvent>> {
    if !ch.is_positive() {
        let mut ev: Vec<JumpEvent> = detect_events(ch.mirrored(), scale, r0, -hi, -lo)?
            .iter()
            .map(JumpEvent::mirrored)
            .collect();
        ev.sort_by(|a, b| a.lambda_star.total_cmp(&b.lambda_star));
        return Ok(ev);
    }
    let lambdas = lambda_nodes(lo, hi, EVENT_SCAN_STEP);
    let mut events = Vec::new();
    for t in [Threshold::Plus, Threshold::Minus] {
        let path = threshold_angle_path(ch, scale, r0, t, &lambdas)?;
        for c in locate_crossings(ch, scale, r0, t, &path)? {
            let (kind, phase_jump) = match t {
                Threshold::Plus => (EventKind::APlusThroughInfinity, -PI * c.direction as f64),
                Threshold::Minus if ch.kappa() == 1 => (EventKind::HalfBoundTouch, PI * c.direction as f64),
                Threshold::Minus => (EventKind::AMinusThroughRho1, PI * c.direction as f64),
            };
            events.push(JumpEvent { lambda_star: c.lambda, kind, threshold: t, direction: c.direction, phase_jump });
        }
    }
    events.sort_by(|a, b| a.lambda_star.total_cmp(&b.lambda_star));
    Ok(events)
}

/// `delta` at threshold `t` for depth `lambda`, summed from the events on
/// the path from 0.
///
/// A depth sitting on a half-bound event receives half of that jump. A
/// depth sitting on any other event receives the side the threshold limit
/// takes there: the full jump when it is positive, none otherwise.
pub fn event_ledger_to_threshold_delta(events: &[JumpEvent], lambda: f64, t: Threshold) -> f64 {
    let mut delta = 0.0;
    for e in events.iter().filter(|e| e.threshold == t) {
        let on = (e.lambda_star - lambda).abs() <= EVENT_TOL;
        let half = e.kind == EventKind::HalfBoundTouch;
        if lambda >= 0.0 {
            if on {
                delta += if half { 0.5 * e.phase_jump } else { e.phase_jump.max(0.0) };
            } else if e.lambda_star > 0.0 && e.lambda_star < lambda {
                delta += e.phase_jump;
            }
        } else if on {
            delta -= if half { 0.5 * e.phase_jump } else { e.phase_jump.min(0.0) };
        } else if e.lambda_star < 0.0 && e.lambda_star > lambda {
            delta -= e.phase_jump;
        }
    }
    delta
}

/// One depth of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub a_plus: ProjectiveRatio,
    pub a_minus: ProjectiveRatio,
    pub delta_plus_over_pi: f64,
    pub delta_minus_over_pi: f64,
    pub n: usize,
    /// All nodes of `f` at `+M`.
    pub f_nodes_plus: usize,
    /// All nodes of `g` at `+M`.
    pub g_nodes_plus: usize,
    pub f_nodes_minus_interior: usize,
    pub g_nodes_minus_interior: usize,
    pub g_nodes_minus_exterior: usize,
    pub eq2_residual: f64,
    pub eq3_plus: bool,
    pub eq3_minus: bool,
    pub modified_c: bool,
    /// An event lies within one grid step.
    pub near_event: bool,
}

impl SweepRow {
    fn csv_record(&self) -> [String; 15] {
        [
            self.lambda.to_string(),
            self.a_plus.to_string(),
            self.a_minus.to_string(),
            self.delta_plus_over_pi.to_string(),
            self.delta_minus_over_pi.to_string(),
            self.n.to_string(),
            self.f_nodes_plus.to_string(),
            self.g_nodes_plus.to_string(),
            self.f_nodes_minus_interior.to_string(),
            self.g_nodes_minus_interior.to_string(),
            self.g_nodes_minus_exterior.to_string(),
            self.eq2_residual.to_string(),
            self.eq3_plus.to_string(),
            self.eq3_minus.to_string(),
            self.modified_c.to_string(),
        ]
    }
}

/// Matching ratio of a square well at a threshold, any sign of `kappa`.
pub fn square_well_threshold_ratio(
    lambda: f64,
    r0: f64,
    ch: AngularChannel,
    scale: &PhysicalScale,
    t: Threshold,
) -> Result<ProjectiveRatio> {
    if !ch.is_positive() {
        return Ok(square_well_threshold_ratio(-lambda, r0, ch.mirrored(), scale, t.opposite())?.inverted());
    }
    let (f, g) = square_well_ray(lambda, r0, ch.kappa() as u32, &EnergyPoint::threshold(scale, t));
    ProjectiveRatio::new(f, g)
}

/// Rows and events of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepOutput {
    pub kappa: i32,
    pub rows: Vec<SweepRow>,
    pub events: Vec<JumpEvent>,
}

impl SweepOutput {
    pub fn max_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.eq2_residual).fold(0.0, f64::max)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_COLUMNS)?;
        for row in &self.rows {
            w.write_record(row.csv_record())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_events_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, &self.events)?;
        Ok(())
    }
}

/// Depths `lambda_min, lambda_min + step, ...` up to `lambda_max`.
pub fn sweep_grid(lambda_min: f64, lambda_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(lambda_min.is_finite() && lambda_max.is_finite()) || lambda_max < lambda_min {
        return Err(Error::InvalidRange(format!("[{lambda_min}, {lambda_max}]")));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidRange(format!("step {step} must be positive")));
    }
    let n = ((lambda_max - lambda_min) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| lambda_min + i as f64 * step).collect())
}

fn sweep_row(
    lambda: f64,
    ch: AngularChannel,
    scale: &PhysicalScale,
    r0: f64,
    events: &[JumpEvent],
    step: f64,
) -> Result<SweepRow> {
    let p = CutoffPotential::square_well(lambda, r0)?;
    let analysis = analyze(&p, ch, scale)?;
    let report = LevinsonReport::from_analysis(&analysis)?;
    Ok(SweepRow {
        lambda,
        a_plus: square_well_threshold_ratio(lambda, r0, ch, scale, Threshold::Plus)?,
        a_minus: square_well_threshold_ratio(lambda, r0, ch, scale, Threshold::Minus)?,
        delta_plus_over_pi: analysis.plus_units as f64 / 2.0,
        delta_minus_over_pi: analysis.minus_units as f64 / 2.0,
        n: analysis.spectrum.count,
        f_nodes_plus: analysis.nodes_plus.f_total(),
        g_nodes_plus: analysis.nodes_plus.g_total(),
        f_nodes_minus_interior: analysis.nodes_minus.f_nodes_interior,
        g_nodes_minus_interior: analysis.nodes_minus.g_nodes_interior,
        g_nodes_minus_exterior: analysis.nodes_minus.g_nodes_exterior,
        eq2_residual: report.residual,
        eq3_plus: report.eq3_plus_holds,
        eq3_minus: report.eq3_minus_holds,
        modified_c: report.modified_c_holds,
        near_event: events.iter().any(|e| (e.lambda_star - lambda).abs() < step),
    })
}

/// Full analysis on every grid depth plus the jump events on the range
/// spanned by the grid and `lambda = 0`.
///
/// Rows are computed in parallel and returned in depth order; the output
/// does not depend on the number of threads.
pub fn lambda_sweep(
    ch: AngularChannel,
    scale: &PhysicalScale,
    r0: f64,
    lambda_min: f64,
    lambda_max: f64,
    step: f64,
) -> Result<SweepOutput> {
    let grid = sweep_grid(lambda_min, lambda_max, step)?;
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(Error::NonPositiveArgument(r0));
    }
    let events = detect_events(ch, scale, r0, lambda_min.min(0.0), lambda_max.max(0.0))?;
    log::info!("kappa = {}: {} rows, {} events", ch.kappa(), grid.len(), events.len());
    let rows = grid
        .par_iter()
        .map(|&lambda| sweep_row(lambda, ch, scale, r0, &events, step))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepOutput { kappa: ch.kappa(), rows, events })
}
