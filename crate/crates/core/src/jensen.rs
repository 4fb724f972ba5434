//! Jensen's formula for semi-regular functions, the zero-counting bound and
//! the Schwarz-type zero-free radius.

use serde::{Deserialize, Serialize};

use crate::blaschke::BOUNDARY_MARGIN;
use crate::divisor::{divisor_of_poly, divisor_semiregular, sup_modulus_poly, zero_counts};
use crate::error::{Error, Result};
use crate::measure::{CircleRule, SphereMeasure};
use crate::poly::{SemiRegular, SlicePolynomial};
use crate::quaternion::Quaternion;

/// Jensen balance for one function and radius.
///
/// The inequality reads `lhs <= boundary_integral + divisor_sum`; `gap` is
/// the slack and stays nonnegative up to quadrature error. Slice-preserving
/// inputs achieve equality.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct JensenReport {
    /// `log |f(0)|`.
    pub lhs: f64,
    /// Mean of `log |f|` over the boundary sphere, circle by slice circle.
    pub boundary_integral: f64,
    /// Signed correction `-sum_{|p_k| < rho} m_k log(rho / |p_k|)`.
    pub divisor_sum: f64,
    /// `boundary_integral + divisor_sum - lhs`.
    pub gap: f64,
    /// Whether equality is guaranteed (all coefficients real).
    pub equality_expected: bool,
}

/// Evaluates both sides of Jensen's formula for `f = g^{-*} h` on the ball of
/// radius `rho`.
///
/// Preconditions: `f(0)` finite and nonzero, and no zero or pole of either
/// polynomial within [`BOUNDARY_MARGIN`] of the boundary sphere.
pub fn jensen(
    f: &SemiRegular,
    rho: f64,
    mu: &SphereMeasure,
    rule: CircleRule,
) -> Result<JensenReport> {
    if rho.is_nan() || rho <= 0.0 {
        return Err(Error::Precondition("jensen needs a positive radius".into()));
    }
    for (poly, side) in [(f.numer(), "zero"), (f.denom(), "pole")] {
        if poly.is_zero() {
            return Err(Error::Degenerate(format!("{side} polynomial is identically zero")));
        }
        for e in divisor_of_poly(poly)?.entries() {
            let distance = (e.radius() - rho).abs();
            if distance <= BOUNDARY_MARGIN {
                return Err(Error::Precondition(format!(
                    "{side} sphere at ({}, {}) lies within {distance:.3e} of the boundary |q| = {rho}",
                    e.point[0], e.point[1]
                )));
            }
        }
    }
    let origin = Quaternion::from_real(0.0);
    let f0 = f.eval(&origin).map_err(|_| {
        Error::Precondition("f has a pole at the origin".into())
    })?;
    if f0.norm() <= 1e-12 {
        return Err(Error::Precondition("f vanishes at the origin".into()));
    }
    let lhs = f0.norm().ln();

    let n = rule.len() as f64;
    let mut boundary_integral = 0.0;
    for (axis, w) in mu.support() {
        let aq = axis.as_quaternion();
        let mut slice_mean = 0.0;
        for theta in rule.angles() {
            let p = Quaternion::from_real(rho * theta.cos()) + aq.scale(rho * theta.sin());
            slice_mean += f.eval(&p)?.norm().ln();
        }
        boundary_integral += w * slice_mean / n;
    }

    let divisor = divisor_semiregular(f)?;
    let mut divisor_sum = 0.0;
    for e in divisor.entries() {
        let radius = e.radius();
        if radius < rho {
            divisor_sum -= e.mult as f64 * (rho / radius).ln();
        }
    }

    let gap = boundary_integral + divisor_sum - lhs;
    Ok(JensenReport {
        lhs,
        boundary_integral,
        divisor_sum,
        gap,
        equality_expected: f.is_slice_preserving(),
    })
}

/// Zero-counting bound: `n(r) <= (log M(R) - log |f(0)|) / (log R - log r)`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ZeroBoundReport {
    pub n: usize,
    pub bound: f64,
    pub holds: bool,
}

pub fn zero_bound_check(
    f: &SlicePolynomial,
    r: f64,
    big_r: f64,
    grid: usize,
) -> Result<ZeroBoundReport> {
    if !(0.0 < r && r < big_r) {
        return Err(Error::Precondition(format!(
            "zero bound needs 0 < r < R, got r = {r}, R = {big_r}"
        )));
    }
    let f0 = f.eval(&Quaternion::from_real(0.0));
    if f0.norm() <= 1e-12 * f.coeff_scale().max(1.0) {
        return Err(Error::Precondition("f vanishes at the origin".into()));
    }
    let (_, _, n) = zero_counts(f, r)?;
    let sup = sup_modulus_poly(f, big_r, grid);
    let bound = (sup.ln() - f0.norm().ln()) / (big_r.ln() - r.ln());
    Ok(ZeroBoundReport { n, bound, holds: (n as f64) <= bound + 1e-9 })
}

/// Schwarz-type zero gap: a self-map of the unit ball with `f(0) != 0` has no
/// zero in the ball of radius `r` for any `r < |f(0)|`.
///
/// Returns whether the divisor of `f` indeed avoids `|p| <= r`.
pub fn schwarz_zero_gap(f: &SlicePolynomial, r: f64) -> Result<bool> {
    let eps = 1e-3;
    let sup = sup_modulus_poly(f, 1.0 - eps, 16);
    if sup > 1.0 + 1e-9 {
        return Err(Error::Precondition(format!(
            "f is not a self-map of the unit ball: sup |f| = {sup}"
        )));
    }
    let f0 = f.eval(&Quaternion::from_real(0.0)).norm();
    if f0 <= 1e-12 * f.coeff_scale().max(1.0) {
        return Err(Error::Precondition("f vanishes at the origin".into()));
    }
    if r >= f0 {
        return Err(Error::Precondition(format!(
            "radius {r} is not below |f(0)| = {f0}"
        )));
    }
    Ok(divisor_of_poly(f)?.within(r).next().is_none())
}
