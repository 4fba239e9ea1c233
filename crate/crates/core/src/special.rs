//! Spherical Bessel functions of integer order (half-integer cylinder order).
//!
//! Only orders `n + 1/2` ever appear in threshold matching, so everything
//! here is elementary: trigonometric or hyperbolic closed forms, three-term
//! recurrences, and power series where those lose digits.
//!
//! Normalizations follow the usual spherical conventions:
//! `j_n(x) = sqrt(pi/2x) J_{n+1/2}(x)`, `y_n(x) = sqrt(pi/2x) Y_{n+1/2}(x)`,
//! `i_n(x) = sqrt(pi/2x) I_{n+1/2}(x)`, `k_n(x) = sqrt(pi/2x) K_{n+1/2}(x)`,
//! so `k_0(x) = (pi/2) e^{-x} / x`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Order `n` of a spherical Bessel function; the cylinder order is `n + 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BesselOrder(u32);

impl BesselOrder {
    pub const fn new(n: u32) -> Self {
        Self(n)
    }

    pub const fn n(self) -> u32 {
        self.0
    }
}

impl From<u32> for BesselOrder {
    fn from(n: u32) -> Self {
        Self(n)
    }
}

/// Below this argument the Taylor series is used for every order.
pub const SMALL_ARGUMENT: f64 = 1e-4;

/// `n!!` with the conventions `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> f64 {
    let mut acc = 1.0;
    let mut k = n;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    acc
}

fn check_nan(x: f64) -> Result<()> {
    if x.is_nan() {
        Err(Error::NanArgument)
    } else {
        Ok(())
    }
}

/// Regular spherical Bessel function `j_n(x)`.
pub fn spherical_j(order: BesselOrder, x: f64) -> Result<f64> {
    check_nan(x)?;
    Ok(sph_j(order.n(), x))
}

/// Irregular spherical Bessel function `y_n(x)`; singular at the origin.
pub fn spherical_y(order: BesselOrder, x: f64) -> Result<f64> {
    check_nan(x)?;
    if x <= 0.0 {
        return Err(Error::NonPositiveArgument(x));
    }
    Ok(sph_y(order.n(), x))
}

/// Modified spherical function `i_n(x)`, growing like `e^x / 2x`.
pub fn modified_i(order: BesselOrder, x: f64) -> Result<f64> {
    check_nan(x)?;
    if x < 0.0 {
        return Err(Error::NonPositiveArgument(x));
    }
    let value = sph_i_scaled(order.n(), x) * x.exp();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(x))
    }
}

/// Decaying modified spherical function `k_n(x)`. Underflows to zero for
/// large `x` without error.
pub fn modified_k(order: BesselOrder, x: f64) -> Result<f64> {
    check_nan(x)?;
    if x <= 0.0 {
        return Err(Error::NonPositiveArgument(x));
    }
    Ok(sph_k_scaled(order.n(), x) * (-x).exp())
}

/// `x^n / (2n+1)!!` accumulated as a product so that neither factor overflows.
fn leading_power(n: u32, x: f64) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * x / (2 * i + 1) as f64)
}

/// Sum of `sum_m (s z/2)^m / (m! (2n+3)(2n+5)...(2n+2m+1))`, the reduced
/// power series shared by `j_n` (`s = -1`) and `i_n` (`s = +1`) with `z = x^2`.
fn reduced_series(n: u32, half_z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..400u32 {
        term *= half_z / (m as f64 * (2 * n + 2 * m + 1) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn use_series(n: u32, ax: f64) -> bool {
    ax < SMALL_ARGUMENT || ax < n as f64 + 1.0
}

pub(crate) fn sph_j(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let ax = x.abs();
    let parity = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    if use_series(n, ax) {
        return parity * leading_power(n, ax) * reduced_series(n, -0.5 * ax * ax);
    }
    let (s, c) = ax.sin_cos();
    let j0 = s / ax;
    if n == 0 {
        return j0;
    }
    let mut prev = j0;
    let mut cur = s / (ax * ax) - c / ax;
    for l in 1..n {
        let next = (2 * l + 1) as f64 / ax * cur - prev;
        prev = cur;
        cur = next;
    }
    parity * cur
}

pub(crate) fn sph_y(n: u32, x: f64) -> f64 {
    let (s, c) = x.sin_cos();
    let y0 = -c / x;
    if n == 0 {
        return y0;
    }
    let mut prev = y0;
    let mut cur = -c / (x * x) - s / x;
    for l in 1..n {
        let next = (2 * l + 1) as f64 / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficient `(n+k)! / (k! (n-k)!)` of the finite expansions of `i_n`, `k_n`.
fn expansion_coefficient(n: u32, k: u32) -> f64 {
    // (n+k)!/(n-k)! / k!
    let mut acc = 1.0;
    for i in (n - k + 1)..=(n + k) {
        acc *= i as f64;
    }
    for i in 1..=k {
        acc /= i as f64;
    }
    acc
}

/// `e^{-x} i_n(x)` for `x >= 0`.
pub(crate) fn sph_i_scaled(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x < 30.0 + (n * n) as f64 {
        return leading_power(n, x) * reduced_series(n, 0.5 * x * x) * (-x).exp();
    }
    let two_x = 2.0 * x;
    let mut alternating = 0.0;
    let mut plain = 0.0;
    let mut inv_pow = 1.0;
    for k in 0..=n {
        let a = expansion_coefficient(n, k) * inv_pow;
        alternating += if k % 2 == 0 { a } else { -a };
        plain += a;
        inv_pow /= two_x;
    }
    let tail_sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    (alternating + tail_sign * (-two_x).exp() * plain) / two_x
}

/// `e^{x} k_n(x)` for `x > 0`.
pub(crate) fn sph_k_scaled(n: u32, x: f64) -> f64 {
    let two_x = 2.0 * x;
    let mut sum = 0.0;
    let mut inv_pow = 1.0;
    for k in 0..=n {
        sum += expansion_coefficient(n, k) * inv_pow;
        inv_pow /= two_x;
    }
    FRAC_PI_2 * sum / x
}

/// The polynomial `(2/pi) x^{n+1} e^x k_n(x) = sum_k (n+k)!/(k!(n-k)!) x^{n-k} / 2^k`.
///
/// Finite at `x = 0`, where it equals `(2n-1)!!`.
pub(crate) fn k_polynomial(n: u32, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut half_pow = 1.0;
    for k in 0..=n {
        sum += expansion_coefficient(n, k) * x.powi((n - k) as i32) * half_pow;
        half_pow *= 0.5;
    }
    sum
}

/// The entire function `(2n+1)!! j_n(x) / x^n` viewed as a function of `z = x^2`.
///
/// For `z < 0` it continues to `(2n+1)!! i_n(|x|) / |x|^n`. Equals 1 at `z = 0`.
/// Returns the pair `(jhat_n(z), jhat_{n-1}(z))` (with `n >= 1`), both
/// multiplied by the same positive factor when `z` is large and negative so
/// that the pair stays finite; only their ratio and sign pattern matter.
pub(crate) fn regular_scaled_pair(n: u32, z: f64) -> (f64, f64) {
    debug_assert!(n >= 1);
    let x = z.abs().sqrt();
    if use_series(n, x) {
        let lower = reduced_series(n - 1, -0.5 * z);
        let upper = reduced_series(n, -0.5 * z);
        return (upper, lower);
    }
    if z > 0.0 {
        let upper = sph_j(n, x) / leading_power(n, x);
        let lower = sph_j(n - 1, x) / leading_power(n - 1, x);
        (upper, lower)
    } else {
        let upper = sph_i_scaled(n, x) / leading_power(n, x);
        let lower = sph_i_scaled(n - 1, x) / leading_power(n - 1, x);
        (upper, lower)
    }
}

/// Positive zeros of `j_n` below `x_max`, found by bisection on sign changes
/// over unit-length brackets.
pub fn spherical_j_zeros(order: BesselOrder, x_max: f64) -> Vec<f64> {
    let n = order.n();
    let mut zeros = Vec::new();
    let mut lo = 0.5;
    let mut f_lo = sph_j(n, lo);
    while lo < x_max {
        let hi = (lo + 1.0).min(x_max);
        let f_hi = sph_j(n, hi);
        if f_lo == 0.0 {
            zeros.push(lo);
        } else if f_lo * f_hi < 0.0 {
            let (mut a, mut b, mut fa) = (lo, hi, f_lo);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                let fm = sph_j(n, mid);
                if fa * fm <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
                if b - a < 1e-15 * b {
                    break;
                }
            }
            zeros.push(0.5 * (a + b));
        }
        lo = hi;
        f_lo = f_hi;
    }
    zeros
}
