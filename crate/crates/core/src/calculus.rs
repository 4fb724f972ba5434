//! Slice calculus: Cullen derivative, the first-order operators and the three
//! second-order Laplacians, rotation averaging, the global operator G and
//! harmonic-conjugate reconstruction for polynomial data.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::SlicePolynomial;
use crate::quaternion::{self, rotate, to_slice, ImaginaryUnit, Quaternion, UNIT_I, UNIT_J, UNIT_K};
use crate::stem::StemEvaluator;

/// Default central-difference step, `1e-4 * (1 + |q|)`; balances O(h^2)
/// truncation against double-precision cancellation.
pub fn default_step(q: &Quaternion) -> f64 {
    1e-4 * (1.0 + q.norm())
}

/// Cullen derivative of a polynomial: power rule with right coefficients.
pub fn cullen_derivative(f: &SlicePolynomial) -> SlicePolynomial {
    let coeffs: Vec<Quaternion> = f
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, a)| a.scale(k as f64))
        .collect();
    SlicePolynomial::new(coeffs)
}

/// Coefficients of the averaged function `int R_w f`, i.e. `Re(a_k)`;
/// equals `trace(f)/2`.
pub fn rotation_average(f: &SlicePolynomial) -> SlicePolynomial {
    SlicePolynomial::new(
        f.coeffs()
            .iter()
            .map(|a| Quaternion::from_real(a.w))
            .collect(),
    )
}

/// `R_w f` for a polynomial: coefficients conjugated by `w`.
pub fn rotate_function(w: &ImaginaryUnit, f: &SlicePolynomial) -> SlicePolynomial {
    SlicePolynomial::new(f.coeffs().iter().map(|a| rotate(w, a)).collect())
}

/// Average of `S_w(q)` over the eight-element unit quaternion group
/// `{±1, ±i, ±j, ±k}`; projects exactly onto the real axis. This is the
/// coarsest quadrature reproducing the rotation-averaging identity
/// `avg S_w(q) = Re(q)`; no finite rule supported on imaginary units alone
/// can do so, since conjugations by imaginary units have trace -1 on the
/// imaginary 3-space.
pub fn rotation_group_average(q: &Quaternion) -> Quaternion {
    let s = *q + rotate(&UNIT_I, q) + rotate(&UNIT_J, q) + rotate(&UNIT_K, q);
    s.scale(0.25)
}

fn slice_value(stem: &StemEvaluator, axis: &ImaginaryUnit, a: f64, b: f64) -> Quaternion {
    let (f1, f2) = stem.components(a, b);
    f1 + axis.as_quaternion() * f2
}

fn check_step(h: f64) {
    assert!(h > 0.0, "finite-difference step must be positive");
}

fn check_stencil(stem: &StemEvaluator, pts: &[(f64, f64)]) -> Result<()> {
    for &(a, b) in pts {
        if !stem.contains(a, b) && !stem.contains(a, -b) {
            return Err(Error::Domain(format!(
                "finite-difference stencil point ({a}, {b}) outside the stem domain"
            )));
        }
    }
    Ok(())
}

/// Central-difference evaluation of `(1/2)(d_1 - I d_I) f` on the slice of `q`.
/// Well-defined at real points too, since the input is a slice function.
pub fn dstar_numeric(stem: &StemEvaluator, q: &Quaternion, h: f64) -> Result<Quaternion> {
    check_step(h);
    let c = to_slice(q);
    let (a, b, axis) = (c.alpha, c.beta, c.axis);
    check_stencil(stem, &[(a + h, b), (a - h, b), (a, b + h), (a, b - h)])?;
    let d1 = (slice_value(stem, &axis, a + h, b) - slice_value(stem, &axis, a - h, b))
        .scale(0.5 / h);
    let di = (slice_value(stem, &axis, a, b + h) - slice_value(stem, &axis, a, b - h))
        .scale(0.5 / h);
    Ok((d1 - axis.as_quaternion() * di).scale(0.5))
}

/// Central-difference evaluation of `(1/2)(d_1 + I d_I) f`; vanishes on
/// regular stems.
pub fn dbarstar_numeric(stem: &StemEvaluator, q: &Quaternion, h: f64) -> Result<Quaternion> {
    check_step(h);
    let c = to_slice(q);
    let (a, b, axis) = (c.alpha, c.beta, c.axis);
    check_stencil(stem, &[(a + h, b), (a - h, b), (a, b + h), (a, b - h)])?;
    let d1 = (slice_value(stem, &axis, a + h, b) - slice_value(stem, &axis, a - h, b))
        .scale(0.5 / h);
    let di = (slice_value(stem, &axis, a, b + h) - slice_value(stem, &axis, a, b - h))
        .scale(0.5 / h);
    Ok((d1 + axis.as_quaternion() * di).scale(0.5))
}

/// Slice Laplacian `4 d* dbar*` through the stem: five-point Laplacian of the
/// components in slice coordinates. Declared-holomorphic stems short-circuit
/// to exact zero.
pub fn laplace_star(stem: &StemEvaluator, q: &Quaternion, h: f64) -> Result<Quaternion> {
    check_step(h);
    if stem.declared_holomorphic() {
        return Ok(quaternion::ZERO);
    }
    let c = to_slice(q);
    let (a, b, axis) = (c.alpha, c.beta, c.axis);
    check_stencil(
        stem,
        &[(a + h, b), (a - h, b), (a, b + h), (a, b - h), (a, b)],
    )?;
    let center = slice_value(stem, &axis, a, b);
    let sum = slice_value(stem, &axis, a + h, b)
        + slice_value(stem, &axis, a - h, b)
        + slice_value(stem, &axis, a, b + h)
        + slice_value(stem, &axis, a, b - h);
    Ok((sum - center.scale(4.0)).scale(1.0 / (h * h)))
}

/// `(1/2) laplace_star` of the trace stem `F + F^c`; exact zero for regular
/// inputs since the conjugate of a holomorphic stem is holomorphic.
pub fn delta_prime(
    stem_f: &StemEvaluator,
    stem_fc: &StemEvaluator,
    q: &Quaternion,
    h: f64,
) -> Result<Quaternion> {
    let trace = stem_f.sum(stem_fc);
    Ok(laplace_star(&trace, q, h)?.scale(0.5))
}

/// `laplace_star` of the normal `N(f) = f * f^c`; identically zero for
/// polynomials because the normal is again regular.
pub fn delta_second(f: &SlicePolynomial, q: &Quaternion, h: f64) -> Result<Quaternion> {
    laplace_star(&StemEvaluator::from_poly(&f.normal()), q, h)
}

/// Numeric path of the second Laplacian for stem inputs: `laplace_star` of
/// the stem product `F F^c`.
pub fn delta_second_stem(stem: &StemEvaluator, q: &Quaternion, h: f64) -> Result<Quaternion> {
    laplace_star(&stem.normal(), q, h)
}

/// The global first-order operator, evaluated by central differences in the
/// four real coordinates:
///
/// `G f = (1/2) [ (x1^2+x2^2+x3^2) d f/d x0 + (x1 i + x2 j + x3 k) sum_m x_m d f/d x_m ]`.
///
/// The normalization makes `G = y^2 dbar*` hold exactly on slice functions.
pub fn apply_g(f: impl Fn(Quaternion) -> Quaternion, q: &Quaternion, h: f64) -> Quaternion {
    check_step(h);
    let partial = |dir: Quaternion| {
        (f(*q + dir.scale(h)) - f(*q - dir.scale(h))).scale(0.5 / h)
    };
    let d0 = partial(quaternion::ONE);
    let radial = partial(quaternion::I).scale(q.x)
        + partial(quaternion::J).scale(q.y)
        + partial(quaternion::K).scale(q.z);
    let y_sq = q.x * q.x + q.y * q.y + q.z * q.z;
    (d0.scale(y_sq) + q.im() * radial).scale(0.5)
}

/// Companion operator `y^2 d*`, the mirrored variant of [`apply_g`]; exposed
/// for experimenting with second-order compositions.
pub fn apply_g_bar(f: impl Fn(Quaternion) -> Quaternion, q: &Quaternion, h: f64) -> Quaternion {
    check_step(h);
    let partial = |dir: Quaternion| {
        (f(*q + dir.scale(h)) - f(*q - dir.scale(h))).scale(0.5 / h)
    };
    let d0 = partial(quaternion::ONE);
    let radial = partial(quaternion::I).scale(q.x)
        + partial(quaternion::J).scale(q.y)
        + partial(quaternion::K).scale(q.z);
    let y_sq = q.x * q.x + q.y * q.y + q.z * q.z;
    (d0.scale(y_sq) - q.im() * radial).scale(0.5)
}

/// A real polynomial in the slice coordinates `(a, b)`, `coeffs[j][k] a^j b^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BivariatePoly {
    coeffs: Vec<Vec<f64>>,
}

impl BivariatePoly {
    pub fn new(coeffs: Vec<Vec<f64>>) -> Self {
        Self { coeffs }
    }

    /// The harmonic basis element `Re((a + b i)^k)`.
    pub fn re_zk(k: usize) -> Self {
        let mut rows = vec![vec![0.0; k + 1]; k + 1];
        let mut binom = 1.0f64;
        for m in (0..=k).step_by(2) {
            let sign = if m % 4 == 0 { 1.0 } else { -1.0 };
            rows[k - m][m] = sign * binom;
            // next even binomial C(k, m+2) from C(k, m)
            if m + 2 <= k {
                binom *= ((k - m) * (k - m - 1)) as f64 / ((m + 1) * (m + 2)) as f64;
            }
        }
        Self { coeffs: rows }
    }

    pub fn eval(&self, a: f64, b: f64) -> f64 {
        let mut total = 0.0;
        for (j, row) in self.coeffs.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                if *c != 0.0 {
                    total += c * a.powi(j as i32) * b.powi(k as i32);
                }
            }
        }
        total
    }

    pub fn coeff(&self, j: usize, k: usize) -> f64 {
        self.coeffs.get(j).and_then(|r| r.get(k)).copied().unwrap_or(0.0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .flat_map(|r| r.iter().map(|c| c.abs()))
            .fold(0.0, f64::max)
    }

    pub fn total_degree(&self) -> usize {
        let mut deg = 0;
        for (j, row) in self.coeffs.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                if *c != 0.0 {
                    deg = deg.max(j + k);
                }
            }
        }
        deg
    }

    /// Symbolic Laplacian `P_aa + P_bb`.
    pub fn laplacian(&self) -> Self {
        let rows = self.coeffs.len().max(2);
        let cols = self.coeffs.iter().map(Vec::len).max().unwrap_or(0).max(2);
        let mut out = vec![vec![0.0; cols]; rows];
        for (j, row) in self.coeffs.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                if *c == 0.0 {
                    continue;
                }
                if j >= 2 {
                    out[j - 2][k] += c * (j * (j - 1)) as f64;
                }
                if k >= 2 {
                    out[j][k - 2] += c * (k * (k - 1)) as f64;
                }
            }
        }
        Self { coeffs: out }
    }

    fn sub_scaled(&mut self, other: &Self, s: f64) {
        let rows = self.coeffs.len().max(other.coeffs.len());
        let cols = self
            .coeffs
            .iter()
            .chain(other.coeffs.iter())
            .map(Vec::len)
            .max()
            .unwrap_or(0);
        let mut grid = vec![vec![0.0; cols]; rows];
        for (j, row) in self.coeffs.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                grid[j][k] = *c;
            }
        }
        for (j, row) in other.coeffs.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                grid[j][k] -= s * c;
            }
        }
        self.coeffs = grid;
    }
}

/// Reconstructs the slice-preserving regular polynomial whose real part is
/// the harmonic `P`, by matching against the `Re(z^k)` basis top-down.
///
/// Fails with [`Error::NotHarmonic`] when the symbolic Laplacian of `P` is
/// nonzero, and with [`Error::NotRepresentable`] when `P` is harmonic but not
/// even in the imaginary coordinate (such functions are no slice functions).
pub fn harmonic_conjugate_poly(p: &BivariatePoly) -> Result<SlicePolynomial> {
    let scale = p.max_abs_coeff().max(1.0);
    let lap = p.laplacian();
    if lap.max_abs_coeff() > 1e-12 * scale {
        return Err(Error::NotHarmonic { residual: lap.max_abs_coeff() });
    }
    let deg = p.total_degree();
    let mut residual = p.clone();
    let mut coeffs = vec![0.0; deg + 1];
    for n in (0..=deg).rev() {
        let c = residual.coeff(n, 0);
        if c != 0.0 {
            coeffs[n] = c;
            residual.sub_scaled(&BivariatePoly::re_zk(n), c);
        }
    }
    let defect = residual.max_abs_coeff();
    if defect > 1e-12 * scale {
        return Err(Error::NotRepresentable { residual: defect });
    }
    Ok(SlicePolynomial::from_real(&coeffs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorName {
    Dstar,
    Dbarstar,
    Lapstar,
    Lapprime,
    Lapsecond,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMethod {
    ExactPoly,
    FiniteDifference,
}

/// One evaluated differential-operator record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SliceDifferentialReport {
    pub operator_name: OperatorName,
    pub value: Quaternion,
    pub method: EvalMethod,
    pub step: f64,
}

impl SliceDifferentialReport {
    pub fn exact(operator_name: OperatorName, value: Quaternion) -> Self {
        Self { operator_name, value, method: EvalMethod::ExactPoly, step: 0.0 }
    }

    pub fn finite_difference(operator_name: OperatorName, value: Quaternion, step: f64) -> Self {
        assert!(step > 0.0);
        Self { operator_name, value, method: EvalMethod::FiniteDifference, step }
    }
}
