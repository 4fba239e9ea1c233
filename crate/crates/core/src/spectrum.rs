//! Bound states in the gap `-M < E < M`.
//!
//! A bound state sits where the interior ray and the decaying exterior ray
//! coincide at `r0`. Writing `psi(E)` for the difference of their angles,
//! the interior angle falls and the exterior angle rises with `E`, so the
//! roots are the passages of `psi` through multiples of `pi` and their
//! number is fixed by `psi(-M)` and `psi(+M)` alone.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{bound_exterior_ray, threshold_constants};
use crate::interior::{interior_ray, InteriorMethod};
use crate::kinematics::{EnergyPoint, ProjectiveRatio, Threshold};
use crate::phase::{follow_periodic_by, lift, threshold_criticality, CRITICAL_TOL};
use crate::potential::{AngularChannel, CutoffPotential, PhysicalScale};

/// Default bisection tolerance in `E`.
pub const DEFAULT_TOL: f64 = 1e-12;

const UNIFORM_POINTS: usize = 2000;
const EDGE_OFFSET: f64 = 1e-4;
const DEEPEST_OFFSET_DECADES: i32 = 24;
const EDGE_POINTS_PER_DECADE: i32 = 4;
const MAX_ANGLE_STEP: f64 = PI / 8.0;
const MATCH_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// Ascending.
    pub bound_energies: Vec<f64>,
    /// Distance of each bound energy from the nearer threshold, kept
    /// separately because it can be far below `ulp(M)`.
    pub threshold_offsets: Vec<f64>,
    pub count: usize,
    pub half_bound_at_plus_m: bool,
    pub half_bound_at_minus_m: bool,
    /// Largest projective distance between interior and exterior rays at a
    /// reported root.
    pub max_match_distance: f64,
}

impl SpectrumReport {
    /// Report for `-kappa` in `V` from the one for `kappa` in `-V`.
    pub fn mirrored(&self) -> Self {
        Self {
            bound_energies: self.bound_energies.iter().rev().map(|e| -e).collect(),
            threshold_offsets: self.threshold_offsets.iter().rev().copied().collect(),
            count: self.count,
            half_bound_at_plus_m: self.half_bound_at_minus_m,
            half_bound_at_minus_m: self.half_bound_at_plus_m,
            max_match_distance: self.max_match_distance,
        }
    }
}

/// The positive-`kappa` problem equivalent to `(p, ch)` with `kappa <= -1`:
/// `kappa -> -kappa` and `V -> -V`, to be solved at `-E` with the roles of
/// `f` and `g` exchanged.
pub fn mirrored_problem(
    p: &CutoffPotential,
    ch: AngularChannel,
) -> Result<(CutoffPotential, AngularChannel)> {
    if ch.is_positive() {
        return Err(Error::InvalidRange(format!("kappa = {} is already positive", ch.kappa())));
    }
    Ok((p.reflect(), ch.mirrored()))
}

/// Scan points from `-M` to `+M`, both thresholds included, dense near
/// each threshold.
fn scan_grid(scale: &PhysicalScale) -> Vec<EnergyPoint> {
    let m = scale.mass();
    let edge: Vec<f64> = (0..=DEEPEST_OFFSET_DECADES * EDGE_POINTS_PER_DECADE)
        .map(|i| {
            m * 10f64.powf(-DEEPEST_OFFSET_DECADES as f64 + i as f64 / EDGE_POINTS_PER_DECADE as f64)
        })
        .take_while(|&eps| eps < EDGE_OFFSET * m)
        .collect();
    let mut grid = vec![EnergyPoint::threshold(scale, Threshold::Minus)];
    grid.extend(edge.iter().map(|&eps| EnergyPoint::above_lower(scale, eps)));
    let span = 2.0 * m * (1.0 - EDGE_OFFSET);
    for i in 0..=UNIFORM_POINTS {
        let above = EDGE_OFFSET * m + span * i as f64 / UNIFORM_POINTS as f64;
        grid.push(if above <= m {
            EnergyPoint::above_lower(scale, above)
        } else {
            EnergyPoint::below_upper(scale, 2.0 * m - above)
        });
    }
    grid.extend(edge.iter().rev().map(|&eps| EnergyPoint::below_upper(scale, eps)));
    grid.push(EnergyPoint::threshold(scale, Threshold::Plus));
    grid
}

fn mismatch_angle(
    p: &CutoffPotential,
    ch: AngularChannel,
    kappa: u32,
    method: InteriorMethod,
    e: &EnergyPoint,
) -> Result<f64> {
    let (fi, gi) = interior_ray(p, ch, e, method)?;
    let (fe, ge) = bound_exterior_ray(kappa, e, p.cutoff_radius());
    Ok(fi.atan2(gi) - fe.atan2(ge))
}

fn match_distance(
    p: &CutoffPotential,
    ch: AngularChannel,
    kappa: u32,
    method: InteriorMethod,
    e: &EnergyPoint,
) -> Result<f64> {
    let (fi, gi) = interior_ray(p, ch, e, method)?;
    let (fe, ge) = bound_exterior_ray(kappa, e, p.cutoff_radius());
    Ok(ProjectiveRatio::new(fi, gi)?.distance(&ProjectiveRatio::new(fe, ge)?))
}

/// All bound states of `p` in channel `ch`, located to `tol`.
///
/// The interior ray comes from the closed form for a single square well
/// and from integration otherwise. Thresholds where the rays meet within
/// [`CRITICAL_TOL`] are not counted.
pub fn find_bound_states(
    p: &CutoffPotential,
    ch: AngularChannel,
    scale: &PhysicalScale,
    tol: f64,
) -> Result<SpectrumReport> {
    find_bound_states_with(p, ch, scale, tol, InteriorMethod::Auto)
}

pub fn find_bound_states_with(
    p: &CutoffPotential,
    ch: AngularChannel,
    scale: &PhysicalScale,
    tol: f64,
    method: InteriorMethod,
) -> Result<SpectrumReport> {
    if !ch.is_positive() {
        let (q, c) = mirrored_problem(p, ch)?;
        return Ok(find_bound_states_with(&q, c, scale, tol, method)?.mirrored());
    }
    if !(tol >= 1e-12 && tol.is_finite()) {
        return Err(Error::InvalidRange(format!("tolerance {tol} must be at least 1e-12")));
    }
    let kappa = ch.require_positive()?;
    let m = scale.mass();
    let psi = |e: EnergyPoint| mismatch_angle(p, ch, kappa, method, &e);
    let path = follow_periodic_by(
        &scan_grid(scale),
        0.0,
        PI,
        MAX_ANGLE_STEP,
        psi,
        |a, b| EnergyPoint::gap_midpoint(scale, &a, &b),
        |a, b| Error::RefinementFailed { lo: a.energy(), hi: b.energy() },
    )?;

    let first = path[0].1;
    let last = path.last().expect("non-empty").1;
    let on_level = |v: f64| {
        let n = (v / PI).round();
        ((v - n * PI).abs() < CRITICAL_TOL).then_some(n as i64)
    };
    let (lo, hi) = (first.min(last), first.max(last));
    let levels: Vec<i64> = ((lo / PI).ceil() as i64..=(hi / PI).floor() as i64)
        .filter(|&n| on_level(first) != Some(n) && on_level(last) != Some(n))
        .collect();

    // Separation measured on the offset from the shared nearer threshold,
    // relative to that offset, so roots hugging a threshold keep full
    // relative precision.
    let close_enough = |a: &EnergyPoint, b: &EnergyPoint| {
        let gap = if a.energy() < 0.0 && b.energy() < 0.0 {
            (a.plus_mass() - b.plus_mass()).abs()
        } else if a.energy() > 0.0 && b.energy() > 0.0 {
            (a.minus_mass() - b.minus_mass()).abs()
        } else {
            (a.energy() - b.energy()).abs()
        };
        gap <= tol * a.threshold_offset().max(b.threshold_offset()).min(m)
    };

    let mut roots: Vec<EnergyPoint> = Vec::new();
    for &n in &levels {
        let level = n as f64 * PI;
        for w in path.windows(2) {
            let ((ea, va), (eb, vb)) = (w[0], w[1]);
            let (da, db) = (va - level, vb - level);
            let crosses = (da < 0.0 && db >= 0.0) || (da > 0.0 && db <= 0.0);
            if !crosses {
                continue;
            }
            let (mut a, mut b, sa) = (ea, eb, da.signum());
            while !close_enough(&a, &b) {
                let Some(mid) = EnergyPoint::gap_midpoint(scale, &a, &b) else {
                    break;
                };
                let d = lift(psi(mid)?, va) - level;
                if d == 0.0 {
                    (a, b) = (mid, mid);
                    break;
                }
                if d.signum() == sa {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            roots.push(EnergyPoint::gap_midpoint(scale, &a, &b).unwrap_or(a));
        }
    }
    if roots.len() != levels.len() {
        return Err(Error::SpectrumMismatch { found: roots.len(), expected: levels.len() });
    }
    roots.sort_by(|a, b| {
        a.energy().total_cmp(&b.energy()).then_with(|| {
            // Equal rounded energies: order by the exact offsets.
            if a.energy() < 0.0 {
                a.plus_mass().total_cmp(&b.plus_mass())
            } else {
                a.minus_mass().total_cmp(&b.minus_mass())
            }
        })
    });
    let mut max_match_distance: f64 = 0.0;
    for e in &roots {
        max_match_distance = max_match_distance.max(match_distance(p, ch, kappa, method, e)?);
    }
    if max_match_distance > MATCH_TOL {
        log::warn!("bound-state match distance {max_match_distance:e} exceeds {MATCH_TOL:e}");
    }
    let (half_plus, half_minus) = detect_half_bound(p, ch, scale, CRITICAL_TOL)?;
    Ok(SpectrumReport {
        bound_energies: roots.iter().map(EnergyPoint::energy).collect(),
        threshold_offsets: roots.iter().map(EnergyPoint::threshold_offset).collect(),
        count: roots.len(),
        half_bound_at_plus_m: half_plus,
        half_bound_at_minus_m: half_minus,
        max_match_distance,
    })
}

/// Half-bound states at `(+M, -M)`.
///
/// For `kappa = 1` this happens at `-M` when `A(-M) = rho1`. For
/// `kappa = -1` the mirrored condition puts it at `+M`. Other channels never
/// have one: their threshold solutions are either normalizable or absent.
pub fn detect_half_bound(
    p: &CutoffPotential,
    ch: AngularChannel,
    scale: &PhysicalScale,
    tol: f64,
) -> Result<(bool, bool)> {
    if !ch.is_positive() {
        let (q, c) = mirrored_problem(p, ch)?;
        let (plus, minus) = detect_half_bound(&q, c, scale, tol)?;
        return Ok((minus, plus));
    }
    if ch.kappa() != 1 {
        return Ok((false, false));
    }
    let r0 = p.cutoff_radius();
    threshold_constants(scale, r0, ch)?;
    let e = EnergyPoint::threshold(scale, Threshold::Minus);
    let ray = interior_ray(p, ch, &e, InteriorMethod::Auto)?;
    let minus = threshold_criticality(ray, ch, scale, r0, Threshold::Minus)? < tol;
    Ok((false, minus))
}
