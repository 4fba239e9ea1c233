//! Free-field solutions for `r > r0`, where `V = 0`.

use crate::error::{Error, Result};
use crate::kinematics::{EnergyPoint, ProjectiveRatio, Threshold};
use crate::potential::{AngularChannel, PhysicalScale};
use crate::special::{k_polynomial, sph_j, sph_y};

/// The two threshold anchors for the exterior ratio `f/g` at `r0+`.
///
/// `rho1 = (2 kappa - 1) / (2 M r0)` is the exterior ratio at `E = -M`;
/// `-rho2 = -2 M r0 / (2 kappa + 1)` is the free interior ratio at `E = +M`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdConstants {
    pub rho1: f64,
    pub rho2: f64,
}

pub fn threshold_constants(
    scale: &PhysicalScale,
    r0: f64,
    ch: AngularChannel,
) -> Result<ThresholdConstants> {
    let kappa = ch.require_positive()? as f64;
    if !(r0 > 0.0) {
        return Err(Error::NonPositiveArgument(r0));
    }
    let two_m_r0 = 2.0 * scale.mass() * r0;
    Ok(ThresholdConstants { rho1: (2.0 * kappa - 1.0) / two_m_r0, rho2: two_m_r0 / (2.0 * kappa + 1.0) })
}

/// Values of the regular and irregular free scattering solutions at one radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScatteringPair {
    /// `(c r j_kappa(kr), r j_{kappa-1}(kr))` with `c = -(E+M)/k`.
    pub regular: (f64, f64),
    /// Same with `y` in place of `j`.
    pub irregular: (f64, f64),
}

impl ScatteringPair {
    /// `f_reg g_irr - f_irr g_reg`, independent of `r` and equal to `c/k^2`.
    pub fn wronskian(&self) -> f64 {
        self.regular.0 * self.irregular.1 - self.irregular.0 * self.regular.1
    }
}

/// Both oscillatory free solutions at radius `r` for `|E| > M`.
///
/// The upper component carries order `kappa` and the lower one `kappa - 1`;
/// the coupling constant follows from substituting into the radial system
/// with `V = 0`.
pub fn scattering_pair(ch: AngularChannel, e: &EnergyPoint, r: f64) -> Result<ScatteringPair> {
    let kappa = ch.require_positive()?;
    let k = e.momentum().ok_or(Error::EnergyOutOfRange {
        energy: e.energy(),
        expected: "|E| > M",
    })?;
    if !(r > 0.0) {
        return Err(Error::NonPositiveArgument(r));
    }
    let x = k * r;
    let c = -e.plus_mass() / k;
    Ok(ScatteringPair {
        regular: (c * r * sph_j(kappa, x), r * sph_j(kappa - 1, x)),
        irregular: (c * r * sph_y(kappa, x), r * sph_y(kappa - 1, x)),
    })
}

/// Continuous exterior ray for the decaying solution, valid on the closed
/// gap `-M <= E <= M`.
///
/// Built from the polynomial part of `k_n`, so both endpoints are regular:
/// `(1, 0)` at `E = M` and the ratio `rho1` at `E = -M`.
pub(crate) fn bound_exterior_ray(kappa: u32, e: &EnergyPoint, r0: f64) -> (f64, f64) {
    let gap_above = -e.minus_mass();
    let x = e.decay_constant().unwrap_or(0.0) * r0;
    (k_polynomial(kappa, x), gap_above * r0 * k_polynomial(kappa - 1, x))
}

/// Ratio `B(E) = f/g` at `r0+` of the solution decaying at infinity, for `|E| < M`.
///
/// Strictly increasing in `E`, from `rho1` at `-M` to `∞` at `+M`.
pub fn bound_exterior_ratio(
    ch: AngularChannel,
    e: &EnergyPoint,
    r0: f64,
) -> Result<ProjectiveRatio> {
    let kappa = ch.require_positive()?;
    if !e.in_gap() {
        return Err(Error::EnergyOutOfRange { energy: e.energy(), expected: "-M < E < M" });
    }
    let (f, g) = bound_exterior_ray(kappa, e, r0);
    ProjectiveRatio::new(f, g)
}

/// Continues a threshold solution from its boundary values at `r0` out to `r`.
///
/// The exterior forms are exact power laws: at `+M`, `g ∝ (r/r0)^kappa`
/// while `f` mixes `(r/r0)^{-kappa}` with a growing piece weighted by
/// `rho2`; at `-M`, `f ∝ (r/r0)^{-kappa}` while `g` mixes `(r/r0)^kappa`
/// with a piece weighted by `1/rho1`.
pub fn threshold_exterior(
    ch: AngularChannel,
    scale: &PhysicalScale,
    r0: f64,
    threshold: Threshold,
    boundary: (f64, f64),
    r: f64,
) -> Result<(f64, f64)> {
    let tc = threshold_constants(scale, r0, ch)?;
    if r < r0 {
        return Err(Error::RadiusOutOfRange { r, lo: r0, hi: f64::INFINITY });
    }
    let kappa = ch.kappa();
    let s = r / r0;
    let (f0, g0) = boundary;
    let decaying = s.powi(-kappa);
    let growing = s.powi(kappa);
    Ok(match threshold {
        Threshold::Plus => {
            let f = f0 * decaying - tc.rho2 * g0 * (s.powi(kappa + 1) - decaying);
            (f, g0 * growing)
        }
        Threshold::Minus => {
            let g = g0 * growing + f0 / tc.rho1 * (s.powi(1 - kappa) - growing);
            (f0 * decaying, g)
        }
    })
}
