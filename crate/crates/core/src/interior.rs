//! Interior solution of the radial Dirac equation on `(0, r0]`.
//!
//! The coupled first-order system is
//!
//! ```text
//! f' + (kappa/r) f = -(E - V + M) g
//! g' - (kappa/r) g =  (E - V - M) f
//! ```
//!
//! Two independent routes are provided for the matching ratio `A = f/g` at
//! `r0`: fixed-step RK4 integration (any piecewise-constant potential) and
//! the spherical-Bessel closed forms for a single square well.

use crate::error::{Error, Result};
use crate::kinematics::{EnergyPoint, ProjectiveRatio, Threshold};
use crate::potential::{AngularChannel, CutoffPotential, PhysicalScale};
use crate::special::{regular_scaled_pair, sph_i_scaled, sph_j};

/// Steps per potential segment used when the caller does not choose.
pub const DEFAULT_STEPS: usize = 4096;
/// Minimum accepted step count.
pub const MIN_STEPS: usize = 100;
/// Integration starts at `r0 * START_FRACTION`.
pub const START_FRACTION: f64 = 1e-6;

const RENORM_HIGH: f64 = 1e100;
const RENORM_LOW: f64 = 1e-100;

/// How the interior matching ray is obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum InteriorMethod {
    /// Closed form for square wells, integration otherwise.
    #[default]
    Auto,
    /// Closed form only; fails for multi-segment potentials.
    Exact,
    Integrate { n_steps: usize },
}

/// Radial functions `(f, g)` sampled on `(0, r0]`.
///
/// The overall normalization is arbitrary; rescalings are applied to every
/// sample at once so the arrays always describe one solution.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialSamples {
    radii: Vec<f64>,
    f: Vec<f64>,
    g: Vec<f64>,
}

impl RadialSamples {
    pub fn new(radii: Vec<f64>, f: Vec<f64>, g: Vec<f64>) -> Result<Self> {
        if radii.len() != f.len() || radii.len() != g.len() || radii.is_empty() {
            return Err(Error::InvalidPotential("sample arrays differ in length".into()));
        }
        if radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidPotential("sample radii must increase".into()));
        }
        Ok(Self { radii, f, g })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    /// `(f, g)` at the outermost sample.
    pub fn last(&self) -> (f64, f64) {
        let n = self.radii.len() - 1;
        (self.f[n], self.g[n])
    }

    pub fn ratio(&self) -> Result<ProjectiveRatio> {
        let (f, g) = self.last();
        ProjectiveRatio::new(f, g)
    }
}

/// Integrates the regular solution from `r0 * 1e-6` to `r0`.
///
/// Uses `n_steps` fixed RK4 steps per segment in the variable
/// `u = r + c ln r` (`c` a tenth of the segment's outer radius), which is
/// logarithmic near the origin where `kappa/r` is large and linear near `r0`.
pub fn integrate_radial(
    p: &CutoffPotential,
    ch: AngularChannel,
    e: &EnergyPoint,
    n_steps: usize,
) -> Result<RadialSamples> {
    ch.require_positive()?;
    integrate_radial_signed(p, ch, e, n_steps)
}

/// Like [`integrate_radial`] but also accepts `kappa < 0`, where the regular
/// solution starts as `f ~ r^|kappa|`.
pub fn integrate_radial_signed(
    p: &CutoffPotential,
    ch: AngularChannel,
    e: &EnergyPoint,
    n_steps: usize,
) -> Result<RadialSamples> {
    let r_start = p.cutoff_radius() * START_FRACTION;
    let kappa = ch.kappa() as f64;
    let v0 = p.evaluate(r_start);
    let (wm, wp) = (e.minus_mass() - v0, e.plus_mass() - v0);
    // Leading powers: g ~ r^k, f ~ -(W+M) r^{k+1}/(2k+1) for k > 0, and the
    // mirror image for k < 0. A common factor r^|k| is dropped.
    let start = if kappa > 0.0 {
        (-wp * r_start / (2.0 * kappa + 1.0), 1.0)
    } else {
        (1.0, wm * r_start / (1.0 - 2.0 * kappa))
    };
    integrate_radial_from(p, ch, e, r_start, start, n_steps)
}

/// Integrates from an arbitrary starting ray `(f, g)` at `r_start` to `r0`.
pub fn integrate_radial_from(
    p: &CutoffPotential,
    ch: AngularChannel,
    e: &EnergyPoint,
    r_start: f64,
    start: (f64, f64),
    n_steps: usize,
) -> Result<RadialSamples> {
    if n_steps < MIN_STEPS {
        return Err(Error::TooFewSteps { got: n_steps, min: MIN_STEPS });
    }
    let r0 = p.cutoff_radius();
    if !(r_start > 0.0 && r_start < r0) {
        return Err(Error::RadiusOutOfRange { r: r_start, lo: 0.0, hi: r0 });
    }
    let kappa = ch.kappa() as f64;
    let mut radii = vec![r_start];
    let (mut f, mut g) = start;
    let mut fs = vec![f];
    let mut gs = vec![g];
    let mut r = r_start;

    for seg in p.segments() {
        if seg.outer_radius <= r {
            continue;
        }
        let b = seg.outer_radius;
        let c = 0.1 * b;
        let wm = e.minus_mass() - seg.value;
        let wp = e.plus_mass() - seg.value;
        let span = (b - r) + c * (b / r).ln();
        let h = span / n_steps as f64;
        let rhs = |r: f64, f: f64, g: f64| -> (f64, f64, f64) {
            let d = 1.0 / (r + c);
            (r * d, (-kappa * f - r * wp * g) * d, (kappa * g + r * wm * f) * d)
        };
        for step in 0..n_steps {
            let k1 = rhs(r, f, g);
            let k2 = rhs(r + 0.5 * h * k1.0, f + 0.5 * h * k1.1, g + 0.5 * h * k1.2);
            let k3 = rhs(r + 0.5 * h * k2.0, f + 0.5 * h * k2.1, g + 0.5 * h * k2.2);
            let k4 = rhs(r + h * k3.0, f + h * k3.1, g + h * k3.2);
            r += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            f += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
            g += h / 6.0 * (k1.2 + 2.0 * k2.2 + 2.0 * k3.2 + k4.2);
            if step + 1 == n_steps {
                r = b;
            }
            if !(f.is_finite() && g.is_finite()) {
                return Err(Error::NonFinite { r });
            }
            let size = f.abs().max(g.abs());
            if size > RENORM_HIGH || (size < RENORM_LOW && size > 0.0) {
                f /= size;
                g /= size;
                fs.iter_mut().for_each(|x| *x /= size);
                gs.iter_mut().for_each(|x| *x /= size);
            }
            radii.push(r);
            fs.push(f);
            gs.push(g);
        }
    }
    RadialSamples::new(radii, fs, gs)
}

/// Matching ratio `A(E) = f/g` at `r0-` by integration with the default step count.
pub fn interior_ratio(
    p: &CutoffPotential,
    ch: AngularChannel,
    e: &EnergyPoint,
) -> Result<ProjectiveRatio> {
    integrate_radial(p, ch, e, DEFAULT_STEPS)?.ratio()
}

/// Unnormalized regular ray `(f, g)` at `r0` for a square well of depth
/// `lambda`, valid at any energy.
///
/// Continuous in both `E` and `lambda` (including where the interior
/// momentum changes from real to imaginary).
pub fn square_well_ray(lambda: f64, r0: f64, kappa: u32, e: &EnergyPoint) -> (f64, f64) {
    let wm = e.minus_mass() + lambda;
    let wp = e.plus_mass() + lambda;
    let z = wm * wp * r0 * r0;
    let (upper, lower) = regular_scaled_pair(kappa, z);
    (-wp * r0 / (2 * kappa + 1) as f64 * upper, lower)
}

/// Unnormalized interior ray for any supported method.
pub fn interior_ray(
    p: &CutoffPotential,
    ch: AngularChannel,
    e: &EnergyPoint,
    method: InteriorMethod,
) -> Result<(f64, f64)> {
    let kappa = ch.require_positive()?;
    let steps = match (method, p.square_well_depth()) {
        (InteriorMethod::Auto | InteriorMethod::Exact, Some(lambda)) => {
            return Ok(square_well_ray(lambda, p.cutoff_radius(), kappa, e));
        }
        (InteriorMethod::Exact, None) => return Err(Error::NotSquareWell),
        (InteriorMethod::Auto, None) => DEFAULT_STEPS,
        (InteriorMethod::Integrate { n_steps }, _) => n_steps,
    };
    Ok(integrate_radial(p, ch, e, steps)?.last())
}

/// Threshold ratio `A_kappa(±M)` of a square well from the Bessel closed forms.
///
/// Branches are selected by `lambda` against `0` and `±2M`: ordinary Bessel
/// ratios where the interior momentum is real, modified-`I` ratios where it
/// is imaginary, and the analytic limits exactly on the branch boundaries.
/// Zeros of the denominator give `A = ∞`.
pub fn closed_form_threshold_ratio(
    lambda: f64,
    scale: &PhysicalScale,
    r0: f64,
    ch: AngularChannel,
    threshold: Threshold,
) -> Result<ProjectiveRatio> {
    let kappa = ch.require_positive()?;
    if !(r0 > 0.0) {
        return Err(Error::NonPositiveArgument(r0));
    }
    let m2 = 2.0 * scale.mass();
    let l = lambda.abs();
    let free_limit = m2 * r0 / (2 * kappa + 1) as f64;
    let oscillating = |prefactor: f64, p: f64| {
        let x = p * r0;
        ProjectiveRatio::new(prefactor * sph_j(kappa, x), sph_j(kappa - 1, x))
    };
    let growing = |prefactor: f64, p: f64| {
        let x = p * r0;
        ProjectiveRatio::new(prefactor * sph_i_scaled(kappa, x), sph_i_scaled(kappa - 1, x))
    };
    match threshold {
        Threshold::Plus => {
            if lambda > 0.0 {
                oscillating(-((m2 + l) / l).sqrt(), (l * (l + m2)).sqrt())
            } else if lambda == 0.0 {
                Ok(ProjectiveRatio::from_value(-free_limit))
            } else if l < m2 {
                // i J_{k+1/2}(ix) / J_{k-1/2}(ix) = -I_{k+1/2}(x) / I_{k-1/2}(x)
                growing(-((m2 - l) / l).sqrt(), (l * (m2 - l)).sqrt())
            } else if l == m2 {
                Ok(ProjectiveRatio::from_value(0.0))
            } else {
                oscillating(((l - m2) / l).sqrt(), (l * (l - m2)).sqrt())
            }
        }
        Threshold::Minus => {
            if lambda < 0.0 {
                oscillating((l / (l + m2)).sqrt(), (l * (l + m2)).sqrt())
            } else if lambda == 0.0 {
                Ok(ProjectiveRatio::from_value(0.0))
            } else if l < m2 {
                // Sign chosen so that the branch joins its neighbours at 0 and 2M.
                growing(-(l / (m2 - l)).sqrt(), (l * (m2 - l)).sqrt())
            } else if l == m2 {
                Ok(ProjectiveRatio::from_value(-free_limit))
            } else {
                oscillating(-(l / (l - m2)).sqrt(), (l * (l - m2)).sqrt())
            }
        }
    }
}
