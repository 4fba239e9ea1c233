//! Phase shifts for `|E| > M` and their limits at the thresholds `E = ±M`.
//!
//! Two independent routes lead to `delta(±M)`:
//!
//! * continuity: follow `delta(E)` from high energy down to the threshold
//!   and extrapolate;
//! * jumps: follow the threshold ratio `A(±M)` as the well deepens from
//!   zero and add `±pi` every time it passes its critical value.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::exterior::{scattering_pair, threshold_constants, ScatteringPair};
use crate::interior::{integrate_radial, square_well_ray, InteriorMethod, DEFAULT_STEPS};
use crate::kinematics::{EnergyPoint, ProjectiveRatio, Threshold};
use crate::potential::{AngularChannel, CutoffPotential, PhysicalScale};
use crate::special::double_factorial;

/// Largest accepted distance, in units of `pi`, between a threshold limit
/// and the `pi/2` lattice.
pub const LATTICE_TOL: f64 = 1e-6;

/// Projective distance below which a threshold ratio counts as sitting on
/// its critical value (`∞` at `+M`, `rho1` at `-M`).
pub const CRITICAL_TOL: f64 = 1e-9;

const MAX_PHASE_STEP: f64 = PI / 8.0;
const MAX_LAMBDA_STEP: f64 = 0.01;
const STRENGTH_STEPS: usize = 32;
const HALF_BOUND_PROBE_KR0: f64 = 1e-3;

/// Nearest multiple of `pi/2` (as an integer count) and the distance to it
/// in units of `pi`.
pub fn snap_to_lattice(delta: f64) -> (i64, f64) {
    let units = (delta / FRAC_PI_2).round();
    (units as i64, (delta - units * FRAC_PI_2).abs() / PI)
}

/// Representative of `raw + n pi` closest to `reference`.
pub(crate) fn lift(raw: f64, reference: f64) -> f64 {
    lift_by(raw, reference, PI)
}

fn lift_by(raw: f64, reference: f64, period: f64) -> f64 {
    raw + period * ((reference - raw) / period).round()
}

/// Follows a quantity known modulo `pi` along the parameters `ts`, inserting
/// midpoints wherever consecutive values differ by more than `max_step`.
///
/// The first value is lifted next to `anchor`. Returns every evaluated
/// `(t, value)` in order, nominal points included.
pub(crate) fn follow_mod_pi<F>(
    ts: &[f64],
    anchor: f64,
    max_step: f64,
    raw: F,
) -> Result<Vec<(f64, f64)>>
where
    F: FnMut(f64) -> Result<f64>,
{
    follow_periodic(ts, anchor, PI, max_step, raw)
}

fn follow_periodic<F>(ts: &[f64], anchor: f64, period: f64, max_step: f64, raw: F) -> Result<Vec<(f64, f64)>>
where
    F: FnMut(f64) -> Result<f64>,
{
    follow_periodic_by(
        ts,
        anchor,
        period,
        max_step,
        raw,
        |a, b| {
            let m = 0.5 * (a + b);
            (m != a && m != b).then_some(m)
        },
        |lo, hi| Error::RefinementFailed { lo, hi },
    )
}

/// Generic form of [`follow_mod_pi`] for any period; `mid` returns `None`
/// once an interval can no longer be split, and `fail` builds the error for
/// it.
pub(crate) fn follow_periodic_by<T, F, M, X>(
    ts: &[T],
    anchor: f64,
    period: f64,
    max_step: f64,
    mut raw: F,
    mid: M,
    fail: X,
) -> Result<Vec<(T, f64)>>
where
    T: Copy,
    F: FnMut(T) -> Result<f64>,
    M: Fn(T, T) -> Option<T>,
    X: Fn(T, T) -> Error,
{
    let Some(&t0) = ts.first() else {
        return Ok(Vec::new());
    };
    let mut out = vec![(t0, lift_by(raw(t0)?, anchor, period))];
    let mut pending: Vec<T> = ts[1..].iter().rev().copied().collect();
    while let Some(tb) = pending.pop() {
        let (ta, va) = *out.last().expect("non-empty");
        let vb = lift_by(raw(tb)?, va, period);
        if (vb - va).abs() <= max_step {
            out.push((tb, vb));
            continue;
        }
        let Some(tm) = mid(ta, tb) else {
            return Err(fail(ta, tb));
        };
        pending.push(tb);
        pending.push(tm);
    }
    Ok(out)
}

/// `(sin delta, cos delta)` up to a common factor, for the interior ray
/// `(f, g)` matched against `cos(delta) * regular - sin(delta) * irregular`.
fn matching_pair(ray: (f64, f64), pair: &ScatteringPair) -> (f64, f64) {
    let (f, g) = ray;
    let (fr, gr) = pair.regular;
    let (fi, gi) = pair.irregular;
    (f * gr - g * fr, f * gi - g * fi)
}

/// Matches the interior ratio `a` at `r0` to the free scattering solutions.
///
/// Returns `(sin delta, cos delta)` up to a common (possibly negative)
/// factor, so `atan2` of the pair gives `delta` modulo `pi`. The free
/// interior ratio gives `delta = 0`.
pub fn tan_delta(
    a: &ProjectiveRatio,
    ch: AngularChannel,
    e: &EnergyPoint,
    r0: f64,
) -> Result<(f64, f64)> {
    ch.require_positive()?;
    let pair = scattering_pair(ch, e, r0)?;
    Ok(matching_pair((a.f(), a.g()), &pair))
}

/// Source of the interior ray, optionally with the potential scaled by `mu`.
enum RaySource<'a> {
    Well { lambda: f64, r0: f64 },
    Integrate { p: &'a CutoffPotential, n_steps: usize },
}

impl<'a> RaySource<'a> {
    fn new(p: &'a CutoffPotential, method: InteriorMethod) -> Result<Self> {
        let r0 = p.cutoff_radius();
        Ok(match (method, p.square_well_depth()) {
            (InteriorMethod::Auto | InteriorMethod::Exact, Some(lambda)) => Self::Well { lambda, r0 },
            (InteriorMethod::Exact, None) => return Err(Error::NotSquareWell),
            (InteriorMethod::Auto, None) => Self::Integrate { p, n_steps: DEFAULT_STEPS },
            (InteriorMethod::Integrate { n_steps }, _) => Self::Integrate { p, n_steps },
        })
    }

    fn ray(&self, ch: AngularChannel, mu: f64, e: &EnergyPoint) -> Result<(f64, f64)> {
        let (f, g) = match *self {
            Self::Well { lambda, r0 } => square_well_ray(mu * lambda, r0, ch.kappa() as u32, e),
            Self::Integrate { p, n_steps } => {
                if mu == 1.0 {
                    integrate_radial(p, ch, e, n_steps)?.last()
                } else {
                    integrate_radial(&p.scaled(mu), ch, e, n_steps)?.last()
                }
            }
        };
        let n = f.hypot(g);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::VanishingComponent);
        }
        Ok((f / n, g / n))
    }
}

/// Sampling plan for [`delta_curve`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaGrid {
    /// `k r0` at the high-energy end.
    pub start_kr0: f64,
    /// `k r0` closest to the threshold on the first pass.
    pub end_kr0: f64,
    /// Deeper end used when the first pass does not land on the lattice.
    pub extended_end_kr0: f64,
    pub points_per_decade: usize,
    pub method: InteriorMethod,
}

impl Default for DeltaGrid {
    fn default() -> Self {
        Self {
            start_kr0: 40.0,
            end_kr0: 1e-4,
            extended_end_kr0: 1e-10,
            points_per_decade: 24,
            method: InteriorMethod::Auto,
        }
    }
}

impl DeltaGrid {
    fn validate(&self) -> Result<()> {
        let ok = self.start_kr0.is_finite()
            && self.start_kr0 > self.end_kr0
            && self.end_kr0 >= self.extended_end_kr0
            && self.extended_end_kr0 > 0.0
            && self.points_per_decade >= 3;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidRange(format!("bad phase-shift grid {self:?}")))
        }
    }
}

/// Nodes `ln(k r0)` spaced evenly from `from` down to `to`, both included.
fn log_nodes(from: f64, to: f64, per_decade: usize) -> Vec<f64> {
    let (a, b) = (from.ln(), to.ln());
    let n = (((from / to).log10() * per_decade as f64).ceil() as usize).max(2);
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}

/// Unwrapped phase shift approaching one threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseShiftRecord {
    pub threshold: Threshold,
    /// Ordered from high `|E|` toward the threshold.
    pub energies: Vec<EnergyPoint>,
    /// Radians, continuous along `energies`.
    pub delta: Vec<f64>,
    /// Extrapolated and snapped `delta(±M)`.
    pub threshold_limit: f64,
    /// The extrapolated value before snapping. At a `kappa = 1` half-bound
    /// point this is the value at the probe energy instead.
    pub unsnapped_limit: f64,
    pub threshold_in_half_pi_units: i64,
    /// Set when the limit is an odd multiple of `pi/2`, which only happens
    /// for `|kappa| = 1`.
    pub half_bound_flag: bool,
}

impl PhaseShiftRecord {
    pub fn limit_over_pi(&self) -> f64 {
        self.threshold_in_half_pi_units as f64 / 2.0
    }
}

fn aitken(v: [f64; 3]) -> f64 {
    let d1 = v[1] - v[0];
    let d2 = v[2] - v[1];
    let denom = d2 - d1;
    let ratio = d2 / d1;
    if d2 == 0.0 || denom == 0.0 || !(ratio > 0.0 && ratio < 1.0) {
        return v[2];
    }
    v[2] - d2 * d2 / denom
}

/// Aitken extrapolation over the last three nominal nodes of `path`.
fn extrapolate(path: &[(f64, f64)], nominal: &[f64]) -> f64 {
    let n = nominal.len();
    let at = |t: f64| {
        path.iter().rev().find(|(s, _)| *s == t).map(|&(_, v)| v).expect("nominal node in path")
    };
    aitken([at(nominal[n - 3]), at(nominal[n - 2]), at(nominal[n - 1])])
}

/// Whether the threshold ratio of the regular interior solution sits on its
/// critical value within `tol`.
pub(crate) fn threshold_criticality(
    ray: (f64, f64),
    ch: AngularChannel,
    scale: &PhysicalScale,
    r0: f64,
    threshold: Threshold,
) -> Result<f64> {
    let a = ProjectiveRatio::new(ray.0, ray.1)?;
    let target = match threshold {
        Threshold::Plus => ProjectiveRatio::infinity(),
        Threshold::Minus => ProjectiveRatio::from_value(threshold_constants(scale, r0, ch)?.rho1),
    };
    Ok(a.distance(&target))
}

/// Phase shift `delta(E)` approaching the threshold `t`, with its limit.
///
/// `delta` is fixed at the high-energy end by switching the potential on
/// continuously (`V -> mu V`, `mu` from 0 to 1, starting from the free value
/// 0), then followed toward the threshold on a geometric `k` grid with
/// automatic refinement. The limit is extrapolated from the last three
/// nodes and must land on the `pi/2` lattice. Negative `kappa` is handled
/// through the `kappa -> -kappa`, `E -> -E`, `V -> -V` correspondence.
pub fn delta_curve(
    p: &CutoffPotential,
    ch: AngularChannel,
    scale: &PhysicalScale,
    t: Threshold,
    grid: &DeltaGrid,
) -> Result<PhaseShiftRecord> {
    if !ch.is_positive() {
        let mut rec = delta_curve(&p.reflect(), ch.mirrored(), scale, t.opposite(), grid)?;
        rec.threshold = t;
        rec.energies = rec.energies.iter().map(EnergyPoint::negated).collect();
        return Ok(rec);
    }
    grid.validate()?;
    let r0 = p.cutoff_radius();
    let source = RaySource::new(p, grid.method)?;
    let raw = |mu: f64, e: &EnergyPoint| -> Result<f64> {
        let pair = scattering_pair(ch, e, r0)?;
        let (s, c) = matching_pair(source.ray(ch, mu, e)?, &pair);
        Ok(s.atan2(c))
    };
    let energy_at = |lnx: f64| EnergyPoint::scattering(scale, lnx.exp() / r0, t);

    let nominal = log_nodes(grid.start_kr0, grid.end_kr0, grid.points_per_decade);
    let e_start = energy_at(nominal[0]);
    let strengths: Vec<f64> =
        (0..=STRENGTH_STEPS).map(|i| i as f64 / STRENGTH_STEPS as f64).collect();
    // The matching pair varies continuously, so its angle is followed modulo
    // 2 pi: a resonance narrower than the grid spacing then still shows up
    // as a half turn and gets refined instead of aliasing to nothing.
    let theta0 = raw(0.0, &e_start)?;
    let offset = theta0 - lift(theta0, 0.0);
    let shifted = |mu: f64, e: &EnergyPoint| raw(mu, e).map(|v| v - offset);
    let anchor = follow_periodic(&strengths, 0.0, 2.0 * PI, MAX_PHASE_STEP, |mu| shifted(mu, &e_start))?
        .last()
        .expect("non-empty")
        .1;

    let mut path =
        follow_periodic(&nominal, anchor, 2.0 * PI, MAX_PHASE_STEP, |x| shifted(1.0, &energy_at(x)))?;

    let threshold_ray = source.ray(ch, 1.0, &EnergyPoint::threshold(scale, t))?;
    let critical = ch.kappa() == 1
        && t == Threshold::Minus
        && threshold_criticality(threshold_ray, ch, scale, r0, t)? < CRITICAL_TOL;

    let (units, unsnapped) = if critical {
        // Right at the half-bound point the limit is approached only
        // logarithmically slowly; away from it tan(delta) ~ 1/(k r0).
        let probe = HALF_BOUND_PROBE_KR0.ln();
        let near = path
            .iter()
            .min_by(|a, b| (a.0 - probe).abs().total_cmp(&(b.0 - probe).abs()))
            .expect("non-empty")
            .1;
        let value = lift(raw(1.0, &energy_at(probe))?, near);
        let u = value / FRAC_PI_2;
        let odd = 2.0 * ((u - 1.0) / 2.0).round() + 1.0;
        (odd as i64, value)
    } else {
        let mut limit = extrapolate(&path, &nominal);
        let (mut units, mut dist) = snap_to_lattice(limit);
        if dist > LATTICE_TOL && grid.extended_end_kr0 < grid.end_kr0 {
            let deeper = log_nodes(grid.end_kr0, grid.extended_end_kr0, grid.points_per_decade);
            let last = path.last().expect("non-empty").1;
            let more =
                follow_periodic(&deeper, last, 2.0 * PI, MAX_PHASE_STEP, |x| shifted(1.0, &energy_at(x)))?;
            path.extend(more.into_iter().skip(1));
            limit = extrapolate(&path, &deeper);
            (units, dist) = snap_to_lattice(limit);
        }
        if dist > LATTICE_TOL {
            return Err(Error::NonLatticeLimit { value: limit, distance: dist });
        }
        (units, limit)
    };

    Ok(PhaseShiftRecord {
        threshold: t,
        energies: path.iter().map(|&(x, _)| energy_at(x)).collect(),
        delta: path.iter().map(|&(_, v)| v).collect(),
        threshold_limit: units as f64 * FRAC_PI_2,
        unsnapped_limit: unsnapped,
        threshold_in_half_pi_units: units,
        half_bound_flag: units % 2 != 0,
    })
}

/// Leading small-`k` form of `tan delta` near a threshold.
///
/// `x = k r0`. Above `+M`:
///
/// ```text
/// tan delta ~ -x^(2k-1) / ((2k-1)!! (2k-3)!!) * (A + 2 M r0/(2k+1)) / (A + 2 M (2k-1)/(k^2 r0))
/// ```
///
/// and below `-M` the ratio becomes
/// `(A - k^2 r0/(2M(2k+1))) / (A - rho1 (1 - x^2/((2k-1)(2k-3))))`.
/// `(-1)!!` is taken as 1. The ratio is evaluated projectively, so `A = ∞`
/// is allowed.
pub fn threshold_tan_asymptotic(
    a: &ProjectiveRatio,
    ch: AngularChannel,
    e: &EnergyPoint,
    scale: &PhysicalScale,
    r0: f64,
) -> Result<f64> {
    let kappa = ch.require_positive()? as i64;
    let k = e.momentum().ok_or(Error::EnergyOutOfRange {
        energy: e.energy(),
        expected: "|E| > M",
    })?;
    let m = scale.mass();
    let kf = kappa as f64;
    let x = k * r0;
    let prefactor = -x.powi(2 * kappa as i32 - 1)
        / (double_factorial(2 * kappa - 1) * double_factorial(2 * kappa - 3));
    let (f, g) = (a.f(), a.g());
    let (num, den) = if e.energy() > 0.0 {
        (
            f + g * 2.0 * m * r0 / (2.0 * kf + 1.0),
            f + g * 2.0 * m * (2.0 * kf - 1.0) / (k * k * r0),
        )
    } else {
        let rho1 = (2.0 * kf - 1.0) / (2.0 * m * r0);
        (
            f - g * k * k * r0 / (2.0 * m * (2.0 * kf + 1.0)),
            f - g * rho1 * (1.0 - x * x / ((2.0 * kf - 1.0) * (2.0 * kf - 3.0))),
        )
    };
    Ok(prefactor * num / den)
}

/// [`threshold_tan_asymptotic`] with an extra overall factor of `pi`.
///
/// This variant does not follow from the matching: its ratio to the exact
/// `tan delta` tends to `pi` rather than 1 as `k -> 0`. Kept for comparison.
pub fn threshold_tan_asymptotic_with_pi(
    a: &ProjectiveRatio,
    ch: AngularChannel,
    e: &EnergyPoint,
    scale: &PhysicalScale,
    r0: f64,
) -> Result<f64> {
    Ok(PI * threshold_tan_asymptotic(a, ch, e, scale, r0)?)
}

/// Angle of the critical ray: `∞` at `+M`, `rho1` at `-M`.
pub(crate) fn critical_angle(
    ch: AngularChannel,
    scale: &PhysicalScale,
    r0: f64,
    t: Threshold,
) -> Result<f64> {
    Ok(match t {
        Threshold::Plus => FRAC_PI_2,
        Threshold::Minus => threshold_constants(scale, r0, ch)?.rho1.atan(),
    })
}

/// Unwrapped angle `atan2(f, g)` of the square-well threshold ray along
/// `lambdas`, refined so that neighbouring values differ by less than `pi/8`.
pub(crate) fn threshold_angle_path(
    ch: AngularChannel,
    scale: &PhysicalScale,
    r0: f64,
    t: Threshold,
    lambdas: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let kappa = ch.require_positive()?;
    let e = EnergyPoint::threshold(scale, t);
    let raw = |lambda: f64| {
        let (f, g) = square_well_ray(lambda, r0, kappa, &e);
        Ok(f.atan2(g))
    };
    let anchor = match lambdas.first() {
        Some(&l) => {
            let (f, g) = square_well_ray(l, r0, kappa, &e);
            ProjectiveRatio::new(f, g)?.angle()
        }
        None => 0.0,
    };
    follow_mod_pi(lambdas, anchor, MAX_PHASE_STEP, raw)
}

/// Evenly spaced depths from `from` to `to` with spacing at most `max_step`.
pub(crate) fn lambda_nodes(from: f64, to: f64, max_step: f64) -> Vec<f64> {
    let n = (((to - from).abs() / max_step).ceil() as usize).max(1);
    (0..=n).map(|i| from + (to - from) * i as f64 / n as f64).collect()
}

/// Count of critical levels at or below `phi`, with the convention matching
/// the one-sided threshold limits exactly on a level: at `+M` a ray exactly
/// at `∞` behaves like large positive `A`, at `-M` a ray exactly at `rho1`
/// like `A` slightly above it.
pub(crate) fn level_count(phi: f64, level: f64, t: Threshold) -> f64 {
    let d = (phi - level) / PI;
    match t {
        Threshold::Plus => d.ceil() - 1.0,
        Threshold::Minus => d.floor(),
    }
}

/// Threshold limit reached by the jump rules.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JumpLimit {
    pub delta: f64,
    pub half_pi_units: i64,
    /// The path ends on a `kappa = 1` half-bound point, where the last jump
    /// is only `±pi/2`.
    pub half_bound_flag: bool,
}

/// `delta(±M)` for a square well of depth `lambda_target`, by following the
/// threshold ratio from `lambda = 0`.
///
/// At `+M` each decrease of `A` across `∞` adds `pi` and each increase
/// subtracts `pi`. At `-M` each decrease across `rho1` subtracts `pi` and
/// each increase adds `pi`. For `kappa = 1` a path ending exactly on `rho1`
/// at `-M` gets half of the jump.
pub fn threshold_limit_by_jumps(
    lambda_target: f64,
    ch: AngularChannel,
    scale: &PhysicalScale,
    r0: f64,
    t: Threshold,
) -> Result<JumpLimit> {
    if !ch.is_positive() {
        return threshold_limit_by_jumps(-lambda_target, ch.mirrored(), scale, r0, t.opposite());
    }
    if !lambda_target.is_finite() {
        return Err(Error::NanArgument);
    }
    let lambdas = lambda_nodes(0.0, lambda_target, MAX_LAMBDA_STEP);
    let path = threshold_angle_path(ch, scale, r0, t, &lambdas)?;
    let phi0 = path[0].1;
    let phi = path.last().expect("non-empty").1;
    let level = critical_angle(ch, scale, r0, t)?;
    let sign = match t {
        Threshold::Plus => -1.0,
        Threshold::Minus => 1.0,
    };
    let kappa = ch.require_positive()?;
    let ray = square_well_ray(lambda_target, r0, kappa, &EnergyPoint::threshold(scale, t));
    let half = kappa == 1
        && t == Threshold::Minus
        && threshold_criticality(ray, ch, scale, r0, t)? < CRITICAL_TOL;
    let start = level_count(phi0, level, t);
    let units = if half {
        let end = ((phi - level) / PI).round() - 0.5;
        (2.0 * sign * (end - start)).round() as i64
    } else {
        (2.0 * sign * (level_count(phi, level, t) - start)).round() as i64
    };
    Ok(JumpLimit { delta: units as f64 * FRAC_PI_2, half_pi_units: units, half_bound_flag: half })
}

/// A passage of the threshold ratio through its critical value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Crossing {
    pub lambda: f64,
    /// `+1` when the angle of `A` increases through the level as `lambda` grows.
    pub direction: i32,
}

/// All critical crossings on a path from [`threshold_angle_path`], each
/// located by bisection to near machine precision.
pub(crate) fn locate_crossings(
    ch: AngularChannel,
    scale: &PhysicalScale,
    r0: f64,
    t: Threshold,
    path: &[(f64, f64)],
) -> Result<Vec<Crossing>> {
    let kappa = ch.require_positive()?;
    let e = EnergyPoint::threshold(scale, t);
    let level = critical_angle(ch, scale, r0, t)?;
    let mut out = Vec::new();
    for w in path.windows(2) {
        let ((la, pa), (lb, pb)) = (w[0], w[1]);
        let (na, nb) = (level_count(pa, level, t), level_count(pb, level, t));
        if na == nb {
            continue;
        }
        let up = nb > na;
        let target = level + PI * if up { nb } else { na };
        let below = |lambda: f64| {
            let (f, g) = square_well_ray(lambda, r0, kappa, &e);
            lift(f.atan2(g), pa) < target
        };
        let (mut lo, mut hi) = (la, lb);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if below(mid) == up {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(Crossing { lambda: 0.5 * (lo + hi), direction: if up { 1 } else { -1 } });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interior::closed_form_threshold_ratio;

    fn scale() -> PhysicalScale {
        PhysicalScale::new(1.0).unwrap()
    }
    fn ch(k: i32) -> AngularChannel {
        AngularChannel::new(k).unwrap()
    }
    fn well(l: f64) -> CutoffPotential {
        CutoffPotential::square_well(l, 1.0).unwrap()
    }

    fn delta_mod_pi(a: &ProjectiveRatio, kappa: i32, e: &EnergyPoint) -> f64 {
        let (s, c) = tan_delta(a, ch(kappa), e, 1.0).unwrap();
        lift(s.atan2(c), 0.0)
    }

    #[test]
    fn lattice_snapping() {
        assert_eq!(snap_to_lattice(PI).0, 2);
        assert_eq!(snap_to_lattice(-FRAC_PI_2 + 1e-9).0, -1);
        assert!(snap_to_lattice(PI / 4.0).1 > 0.24);
    }

    #[test]
    fn free_ratio_has_zero_phase() {
        let s = scale();
        for kappa in 1..=3 {
            for t in [Threshold::Plus, Threshold::Minus] {
                let e = EnergyPoint::scattering(&s, 0.8, t);
                let free = square_well_ray(0.0, 1.0, kappa as u32, &e);
                let a = ProjectiveRatio::new(free.0, free.1).unwrap();
                assert!(delta_mod_pi(&a, kappa, &e).abs() < 1e-13);
            }
        }
        let gap = EnergyPoint::new(&s, 0.5);
        assert!(tan_delta(&ProjectiveRatio::from_value(1.0), ch(1), &gap, 1.0).is_err());
    }

    #[test]
    fn phase_is_monotone_in_ratio() {
        let s = scale();
        for (t, sign) in [(Threshold::Plus, -1.0), (Threshold::Minus, 1.0)] {
            let e = EnergyPoint::scattering(&s, 0.6, t);
            let mut prev: Option<f64> = None;
            for i in 0..200 {
                let a = -3.0 + 0.03 * i as f64;
                let d = delta_mod_pi(&ProjectiveRatio::from_value(a), 2, &e);
                if let Some(p) = prev {
                    let step = lift(d, p) - p;
                    assert!(sign * step > 0.0, "{t}: A={a}");
                }
                prev = Some(d);
            }
        }
    }

    #[test]
    fn free_curve_is_flat() {
        for kappa in [1, 2, 3, -1, -2] {
            for t in [Threshold::Plus, Threshold::Minus] {
                let rec = delta_curve(&well(0.0), ch(kappa), &scale(), t, &DeltaGrid::default())
                    .unwrap();
                assert_eq!(rec.threshold_in_half_pi_units, 0);
                assert!(rec.delta.iter().all(|d| d.abs() < 1e-9));
                assert!(!rec.half_bound_flag);
            }
        }
    }

    #[test]
    fn curve_examples() {
        let grid = DeltaGrid::default();
        let rec = delta_curve(&well(3.0), ch(1), &scale(), Threshold::Plus, &grid).unwrap();
        assert_eq!(rec.threshold_limit, PI);
        assert!(rec.delta.windows(2).all(|w| (w[1] - w[0]).abs() < FRAC_PI_2));
        for t in [Threshold::Plus, Threshold::Minus] {
            let rec = delta_curve(&well(0.5), ch(2), &scale(), t, &grid).unwrap();
            assert_eq!(rec.threshold_limit, 0.0);
        }
        // High-energy phase of a well tends to lambda r0, not to zero.
        let rec = delta_curve(&well(2.0), ch(1), &scale(), Threshold::Plus, &grid).unwrap();
        assert!((rec.delta[0] - 2.0).abs() < 0.1, "{}", rec.delta[0]);
    }

    #[test]
    fn integration_route_matches_closed_form() {
        let grid = DeltaGrid { method: InteriorMethod::Integrate { n_steps: 2048 }, ..Default::default() };
        for lambda in [-3.0, 2.5, 4.5] {
            for t in [Threshold::Plus, Threshold::Minus] {
                let a = delta_curve(&well(lambda), ch(1), &scale(), t, &grid).unwrap();
                let b = delta_curve(&well(lambda), ch(1), &scale(), t, &DeltaGrid::default()).unwrap();
                assert_eq!(a.threshold_in_half_pi_units, b.threshold_in_half_pi_units);
            }
        }
    }

    #[test]
    fn asymptotic_zeros_and_value() {
        let s = scale();
        let k = 0.01;
        let e = EnergyPoint::scattering(&s, k, Threshold::Plus);
        let free = ProjectiveRatio::from_value(-0.4);
        assert!(threshold_tan_asymptotic(&free, ch(2), &e, &s, 1.0).unwrap().abs() < 1e-25);
        let e_minus = EnergyPoint::scattering(&s, k, Threshold::Minus);
        let zero = ProjectiveRatio::from_value(k * k / 10.0);
        assert!(threshold_tan_asymptotic(&zero, ch(2), &e_minus, &s, 1.0).unwrap().abs() < 1e-25);

        let a = ProjectiveRatio::from_value(0.0);
        let want = -(1e-6 / 3.0) * 0.4 / 6e4;
        let got = threshold_tan_asymptotic(&a, ch(2), &e, &s, 1.0).unwrap();
        assert!((got - want).abs() < 1e-9 * want.abs(), "{got} vs {want}");
        let with_pi = threshold_tan_asymptotic_with_pi(&a, ch(2), &e, &s, 1.0).unwrap();
        assert!((with_pi + 6.98e-12).abs() < 1e-14);
    }

    #[test]
    fn asymptotic_form_matches_full_matching() {
        let s = scale();
        let k = 1e-3;
        for kappa in [2, 3] {
            for t in [Threshold::Plus, Threshold::Minus] {
                for lambda in [0.5, 1.0, -1.0] {
                    let e = EnergyPoint::scattering(&s, k, t);
                    let (f, g) = square_well_ray(lambda, 1.0, kappa as u32, &e);
                    let a = ProjectiveRatio::new(f, g).unwrap();
                    let (sn, cs) = tan_delta(&a, ch(kappa), &e, 1.0).unwrap();
                    let exact = sn / cs;
                    let approx = threshold_tan_asymptotic(&a, ch(kappa), &e, &s, 1.0).unwrap();
                    let ratio = exact / approx;
                    assert!((0.98..=1.02).contains(&ratio), "kappa={kappa} {t} lambda={lambda}: {ratio}");
                    let printed = threshold_tan_asymptotic_with_pi(&a, ch(kappa), &e, &s, 1.0).unwrap();
                    assert!((exact / printed - 1.0 / PI).abs() < 0.02 / PI);
                }
            }
        }
    }

    #[test]
    fn jump_examples() {
        let s = scale();
        assert_eq!(threshold_limit_by_jumps(0.0, ch(1), &s, 1.0, Threshold::Plus).unwrap().delta, 0.0);
        let j = threshold_limit_by_jumps(2.5, ch(1), &s, 1.0, Threshold::Plus).unwrap();
        assert_eq!((j.delta, j.half_bound_flag), (PI, false));
        assert_eq!(threshold_limit_by_jumps(2.29, ch(1), &s, 1.0, Threshold::Plus).unwrap().delta, 0.0);
    }

    /// Bisects the closed-form threshold ratio at `-M` for its first
    /// downward passage through `rho1` in `lambda > 2M`.
    fn first_rho1_crossing(kappa: i32) -> f64 {
        let s = scale();
        let rho1 = (2.0 * kappa as f64 - 1.0) / 2.0;
        let h = |l: f64| {
            let a = closed_form_threshold_ratio(l, &s, 1.0, ch(kappa), Threshold::Minus).unwrap();
            a.f() - rho1 * a.g()
        };
        let mut lo = 2.0 + 1e-6;
        let mut step_hi = lo;
        while h(lo).signum() == h(step_hi + 1e-3).signum() {
            step_hi += 1e-3;
        }
        let mut hi = step_hi + 1e-3;
        lo = step_hi;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if h(mid).signum() == h(lo).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    #[test]
    fn rho1_crossing_lowers_minus_limit() {
        let s = scale();
        for kappa in [1, 2] {
            let l = first_rho1_crossing(kappa);
            let before = threshold_limit_by_jumps(l - 1e-3, ch(kappa), &s, 1.0, Threshold::Minus).unwrap();
            let after = threshold_limit_by_jumps(l + 1e-3, ch(kappa), &s, 1.0, Threshold::Minus).unwrap();
            assert_eq!(after.delta - before.delta, -PI, "kappa={kappa} at {l}");
            if kappa == 1 {
                let at = threshold_limit_by_jumps(l, ch(1), &s, 1.0, Threshold::Minus).unwrap();
                assert!(at.half_bound_flag);
                assert_eq!(at.delta - before.delta, -FRAC_PI_2);
                let rec = delta_curve(&well(l), ch(1), &s, Threshold::Minus, &DeltaGrid::default()).unwrap();
                assert!(rec.half_bound_flag);
                assert_eq!(rec.threshold_limit, at.delta);
            }
        }
    }

    #[test]
    fn crossings_match_analytic_pole() {
        let s = scale();
        let lambdas = lambda_nodes(0.0, 3.0, 0.01);
        let path = threshold_angle_path(ch(1), &s, 1.0, Threshold::Plus, &lambdas).unwrap();
        let xs = locate_crossings(ch(1), &s, 1.0, Threshold::Plus, &path).unwrap();
        assert_eq!(xs.len(), 1);
        let want = (1.0 + PI * PI).sqrt() - 1.0;
        assert!((xs[0].lambda - want).abs() < 1e-9, "{}", xs[0].lambda);
        assert_eq!(xs[0].direction, -1);
    }

    #[test]
    fn continuity_agrees_with_jumps() {
        let s = scale();
        let grid = DeltaGrid::default();
        for kappa in 1..=3 {
            for lambda in [-5.0, -3.0, -1.0, 0.5, 1.0, 2.5, 3.0, 4.5, 6.0] {
                for t in [Threshold::Plus, Threshold::Minus] {
                    let c = delta_curve(&well(lambda), ch(kappa), &s, t, &grid).unwrap();
                    let j = threshold_limit_by_jumps(lambda, ch(kappa), &s, 1.0, t).unwrap();
                    assert_eq!(
                        c.threshold_in_half_pi_units, j.half_pi_units,
                        "kappa={kappa} lambda={lambda} {t}"
                    );
                }
            }
        }
    }
}
