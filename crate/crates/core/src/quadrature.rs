//! Evaluators for the integral formulas: general mean value, harmonicity
//! functional, generalized representation coefficients, Poisson formula,
//! 3-sphere volume averages and discretized Poisson measures.

use crate::error::{Error, Result};
use crate::measure::{CircleRule, SphereMeasure};
use crate::quaternion::{self, ImaginaryUnit, Quaternion};

/// Angular separation below which `R(J)` is treated as singular at `J = I`.
pub const EPS_ANGLE: f64 = 1e-8;

/// The three integrals of the mean value formula.
#[derive(Debug, Clone, Copy)]
pub struct MeanValue {
    /// Circle-and-sphere average of `f`, the first stem component at `a + b i`.
    pub f1: Quaternion,
    /// Weighted average of `-J f`, the second stem component.
    pub f2: Quaternion,
    /// `f1 + I f2 = f(a + b I)`.
    pub reconstructed: Quaternion,
}

/// General mean value formula: integrates `f` over circles of radius `r`
/// centered at `a + bJ` in each slice, averaged over the measure, and
/// reconstructs `f(a + b I)`.
///
/// Exact (up to quadrature of the circle rule) for slice regular `f` whenever
/// the measure is invariant under `J -> -J`.
pub fn mean_value(
    f: impl Fn(&Quaternion) -> Result<Quaternion>,
    a: f64,
    b: f64,
    axis: ImaginaryUnit,
    r: f64,
    mu: &SphereMeasure,
    rule: CircleRule,
) -> Result<MeanValue> {
    let mut f1 = quaternion::ZERO;
    let mut f2 = quaternion::ZERO;
    let n = rule.len() as f64;
    for (j, w) in mu.support() {
        let jq = j.as_quaternion();
        let mut circle = quaternion::ZERO;
        for theta in rule.angles() {
            let p = Quaternion::from_real(a + r * theta.cos()) + jq.scale(b + r * theta.sin());
            circle += f(&p)?;
        }
        let circle = circle.scale(w / n);
        f1 += circle;
        f2 += (-jq) * circle;
    }
    Ok(MeanValue { f1, f2, reconstructed: f1 + axis.as_quaternion() * f2 })
}

/// The harmonicity functional `M_{p,r}`: equals `f(p)` exactly when `f` is a
/// sum of a regular and an anti-regular function, and detects failure of
/// harmonicity otherwise.
pub fn harmonicity_functional(
    f: impl Fn(&Quaternion) -> Result<Quaternion>,
    p: &Quaternion,
    r: f64,
    mu: &SphereMeasure,
    rule: CircleRule,
) -> Result<Quaternion> {
    let c = quaternion::to_slice(p);
    Ok(mean_value(f, c.alpha, c.beta, c.axis, r, mu, rule)?.reconstructed)
}

/// Representation kernel `R(J) = ((1+JI)/2)^{-1} ((1-JI)/2)`, in the closed
/// form `(IJ - JI) / |1 + JI|^2`. Vanishes exactly at `J = -I` and blows up
/// as `J` approaches `I`.
pub fn rep_r(i: &ImaginaryUnit, j: &ImaginaryUnit) -> Result<Quaternion> {
    let angle = i.angle(j);
    if angle <= EPS_ANGLE {
        return Err(Error::Pole { angle });
    }
    let iq = i.as_quaternion();
    let jq = j.as_quaternion();
    let num = iq * jq - jq * iq;
    let denom = (quaternion::ONE + jq * iq).norm_sq();
    Ok(num.scale(1.0 / denom))
}

fn half_one_plus(a: &ImaginaryUnit, i: &ImaginaryUnit) -> Quaternion {
    (quaternion::ONE + a.as_quaternion() * i.as_quaternion()).scale(0.5)
}

fn half_one_minus(a: &ImaginaryUnit, i: &ImaginaryUnit) -> Quaternion {
    (quaternion::ONE - a.as_quaternion() * i.as_quaternion()).scale(0.5)
}

/// Coefficients `(M1, M2)` with `f(x+yI) = M1 f(x+yJ) + M2 f(x+yH)` for every
/// regular `f`.
///
/// Away from the poles these are
/// `M1 = (R(J)-R(H))^{-1} ((1+JI)/2)^{-1}` and
/// `M2 = -(R(J)-R(H))^{-1} ((1+HI)/2)^{-1}`;
/// near `J = I` (resp. `H = I`) the equivalent pole-free forms
/// `M1 = ((1-JI)/2 - (1+JI)/2 R(H))^{-1}` etc. take over, with the exact
/// limits `(1, 0)` resp. `(0, 1)` at coincidence.
pub fn rep_coefficients(
    i: &ImaginaryUnit,
    j: &ImaginaryUnit,
    h: &ImaginaryUnit,
) -> Result<(Quaternion, Quaternion)> {
    let angle_jh = j.angle(h);
    if angle_jh <= EPS_ANGLE {
        return Err(Error::Diagonal { angle: angle_jh });
    }
    let angle_ji = i.angle(j);
    let angle_hi = i.angle(h);

    // Pole-free equivalents: multiplying M1 by (1+JI)/2 (resp. M2 by
    // (1+HI)/2) turns R(J) - R(H) into a difference of half-terms, absorbing
    // the sign of M2.
    if angle_ji <= EPS_ANGLE {
        // J at (or next to) I: regularized M1; M2 carries the 1/R(J) decay.
        let m1 = (half_one_minus(j, i) - half_one_plus(j, i) * rep_r(i, h)?).inverse();
        let m2 = if angle_ji == 0.0 {
            quaternion::ZERO
        } else {
            (half_one_minus(h, i) - half_one_plus(h, i) * rep_r(i, j)?).inverse()
        };
        return Ok((m1, m2));
    }
    if angle_hi <= EPS_ANGLE {
        let m2 = (half_one_minus(h, i) - half_one_plus(h, i) * rep_r(i, j)?).inverse();
        let m1 = if angle_hi == 0.0 {
            quaternion::ZERO
        } else {
            (half_one_minus(j, i) - half_one_plus(j, i) * rep_r(i, h)?).inverse()
        };
        return Ok((m1, m2));
    }

    let diff = rep_r(i, j)? - rep_r(i, h)?;
    let diff_inv = diff.inverse();
    let m1 = diff_inv * half_one_plus(j, i).inverse();
    let m2 = -(diff_inv * half_one_plus(h, i).inverse());
    Ok((m1, m2))
}

/// The alternative closed form `M1 = (I-H)(J-H)^{-1}`, `M2 = -(I-J)(J-H)^{-1}`;
/// used as an independent cross-check of [`rep_coefficients`].
pub fn rep_coefficients_alt(
    i: &ImaginaryUnit,
    j: &ImaginaryUnit,
    h: &ImaginaryUnit,
) -> Result<(Quaternion, Quaternion)> {
    let angle_jh = j.angle(h);
    if angle_jh <= EPS_ANGLE {
        return Err(Error::Diagonal { angle: angle_jh });
    }
    let iq = i.as_quaternion();
    let jq = j.as_quaternion();
    let hq = h.as_quaternion();
    let d = (jq - hq).inverse();
    Ok(((iq - hq) * d, -((iq - jq) * d)))
}

/// Poisson formula for real rotationally invariant `u` on the closed ball of
/// radius `big_r`: reproduces `u(a)` at real `a` whenever `u` is in the
/// kernel of the averaged Laplacian.
pub fn poisson(
    u: impl Fn(&Quaternion) -> Result<f64>,
    a: f64,
    big_r: f64,
    mu: &SphereMeasure,
    rule: CircleRule,
) -> Result<f64> {
    if a.abs() >= big_r {
        return Err(Error::Domain(format!(
            "poisson formula needs |a| < R, got |{a}| >= {big_r}"
        )));
    }
    let n = rule.len() as f64;
    let mut total = 0.0;
    for (i, w) in mu.support() {
        let iq = i.as_quaternion();
        let mut slice_sum = 0.0;
        for theta in rule.angles() {
            let p = Quaternion::from_real(big_r * theta.cos()) + iq.scale(big_r * theta.sin());
            let kernel = (big_r * big_r - a * a)
                / ((big_r * theta.cos() - a).powi(2) + (big_r * theta.sin()).powi(2));
            slice_sum += kernel * u(&p)?;
        }
        total += w * slice_sum / n;
    }
    Ok(total)
}

/// Average of `f` over the euclidean 3-sphere `|q| = r`, by product
/// quadrature in hyperspherical angles with the `sin^2 psi sin phi` Jacobian.
///
/// This is the volume-element average, not the slice-circle average: it does
/// not reproduce values of regular functions (`q^2` averages to `-1/2` on the
/// unit sphere, not to `0`).
pub fn volume_average_s3(
    f: impl Fn(&Quaternion) -> Result<Quaternion>,
    r: f64,
    n_grid: usize,
) -> Result<Quaternion> {
    assert!(n_grid >= 8, "volume average needs a grid of at least 8");
    let n = n_grid;
    let mut acc = quaternion::ZERO;
    let mut weight_total = 0.0;
    for ip in 0..n {
        // midpoint rule in psi over [0, pi], weight sin^2 psi
        let psi = std::f64::consts::PI * (ip as f64 + 0.5) / n as f64;
        let (sp, cp) = psi.sin_cos();
        let w_psi = sp * sp;
        for iu in 0..n {
            // midpoint rule in u = cos phi over [-1, 1] absorbs sin phi
            let u = -1.0 + 2.0 * (iu as f64 + 0.5) / n as f64;
            let su = (1.0 - u * u).max(0.0).sqrt();
            for ic in 0..n {
                let chi = std::f64::consts::TAU * ic as f64 / n as f64;
                let q = Quaternion::new(
                    r * cp,
                    r * sp * u,
                    r * sp * su * chi.cos(),
                    r * sp * su * chi.sin(),
                );
                acc += f(&q)?.scale(w_psi);
                weight_total += w_psi;
            }
        }
    }
    Ok(acc.scale(1.0 / weight_total))
}

/// Discretized reproducing measure on the 3-sphere `|q - c| = rho` (real
/// center `c`) for a real evaluation point `p` in its interior: per slice the
/// classical Poisson weights on the circle, averaged over the sphere measure.
///
/// The returned pairs `(q_k, w_k)` satisfy `sum w_k f(q_k) ~= f(p)` for every
/// slice regular `f` on a neighborhood of the closed ball.
pub fn poisson_measure_real_center(
    p: f64,
    center: &Quaternion,
    radius: f64,
    mu: &SphereMeasure,
    rule: CircleRule,
) -> Result<Vec<(Quaternion, f64)>> {
    if !center.is_real() {
        return Err(Error::Domain(
            "reproducing measure construction needs a sphere centered on the real axis".into(),
        ));
    }
    let c = center.w;
    let d = (p - c).abs();
    if d >= radius {
        return Err(Error::Domain(format!(
            "evaluation point {p} is not interior to the sphere (center {c}, radius {radius})"
        )));
    }
    let n = rule.len() as f64;
    let mut atoms = Vec::with_capacity(mu.len() * rule.len());
    for (i, w_sphere) in mu.support() {
        let iq = i.as_quaternion();
        for theta in rule.angles() {
            let q = Quaternion::from_real(c + radius * theta.cos()) + iq.scale(radius * theta.sin());
            let dist_sq = (c + radius * theta.cos() - p).powi(2) + (radius * theta.sin()).powi(2);
            let kernel = (radius * radius - d * d) / dist_sq;
            atoms.push((q, w_sphere * kernel / n));
        }
    }
    Ok(atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::SlicePolynomial;
    use crate::quaternion::{sample_unit_imaginary, UNIT_I, UNIT_J, ONE, ZERO};

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    fn poly_fn(f: &SlicePolynomial) -> impl Fn(&Quaternion) -> Result<Quaternion> + '_ {
        move |p| Ok(f.eval(p))
    }

    #[test]
    fn mean_value_examples() {
        let mu = SphereMeasure::octahedral6();
        let rule = CircleRule::new(64);

        // q^2 around the origin: circle mean of e^{2J theta} vanishes
        let sq = SlicePolynomial::monomial(2, ONE);
        let mv = mean_value(poly_fn(&sq), 0.0, 0.0, UNIT_I, 1.0, &mu, rule).unwrap();
        assert!(mv.reconstructed.norm() < 1e-13);

        // constants reproduce for any configuration
        let c = q(0.3, -1.0, 0.2, 0.7);
        let cc = SlicePolynomial::constant(c);
        let mv = mean_value(poly_fn(&cc), 0.4, 0.9, UNIT_J, 0.3, &mu, rule).unwrap();
        assert!(mv.reconstructed.dist(&c) < 1e-13);

        // q^3 + q j against direct evaluation, antipodal measure
        let f = &SlicePolynomial::monomial(3, ONE) + &SlicePolynomial::monomial(1, quaternion::J);
        let mu2 = SphereMeasure::antipodal_pair(UNIT_J);
        let mv = mean_value(poly_fn(&f), 0.2, 0.5, UNIT_I, 0.3, &mu2, rule).unwrap();
        let want = f.eval(&q(0.2, 0.5, 0.0, 0.0));
        assert!(mv.reconstructed.dist(&want) < 1e-10);
    }

    #[test]
    fn harmonicity_functional_cases() {
        let mu = SphereMeasure::octahedral6();
        let rule = CircleRule::new(128);

        // regular polynomial reproduces its value
        let f = SlicePolynomial::new(vec![q(0.2, 0.4, 0.0, -1.0), ONE, quaternion::I]);
        let p = q(0.3, -0.2, 0.5, 0.1);
        let m = harmonicity_functional(poly_fn(&f), &p, 0.4, &mu, rule).unwrap();
        assert!(m.dist(&f.eval(&p)) < 1e-9);

        // |q|^2 is not harmonic: the functional sees r^2 at the origin
        let norm_sq = |x: &Quaternion| Ok(Quaternion::from_real(x.norm_sq()));
        let m = harmonicity_functional(norm_sq, &ZERO, 1.0, &mu, rule).unwrap();
        assert!(m.dist(&ONE) < 1e-12);
        assert!(m.dist(&ZERO).abs() >= 0.5);

        // sum of regular and anti-regular reproduces
        let g = SlicePolynomial::new(vec![ZERO, ONE]);
        let anti = crate::stem::StemEvaluator::anti_from_poly(&SlicePolynomial::new(vec![
            ZERO,
            q(0.0, 0.3, -0.2, 0.0),
        ]));
        let sum = move |x: &Quaternion| Ok(g.eval(x) + anti.eval(x)?);
        let m = harmonicity_functional(sum.clone(), &p, 0.35, &mu, rule).unwrap();
        assert!(m.dist(&sum(&p).unwrap()) < 1e-9);
    }

    #[test]
    fn rep_r_examples() {
        // R(-I) = 0
        let r = rep_r(&UNIT_I, &(-UNIT_I)).unwrap();
        assert!(r.norm() < 1e-15);
        // R(j) with I = i equals k
        let r = rep_r(&UNIT_I, &UNIT_J).unwrap();
        assert!(r.dist(&quaternion::K) < 1e-15);
        // |R(J)|^2 = (1 - Re(IJ)) / (1 + Re(IJ)) = |I+J|^2 / |I-J|^2
        for seed in 0..20 {
            let i = sample_unit_imaginary(2 * seed);
            let j = sample_unit_imaginary(2 * seed + 1);
            if i.angle(&j) <= EPS_ANGLE {
                continue;
            }
            let r = rep_r(&i, &j).unwrap();
            let (iq, jq) = (i.as_quaternion(), j.as_quaternion());
            let want = (iq + jq).norm_sq() / (iq - jq).norm_sq();
            assert!((r.norm_sq() - want).abs() < 1e-12 * want.max(1.0));
        }
        // pole at J = I
        assert!(matches!(rep_r(&UNIT_I, &UNIT_I), Err(Error::Pole { .. })));
    }

    #[test]
    fn rep_coefficients_limits_and_reconstruction() {
        // exact coincidence J = I gives (1, 0)
        let h = sample_unit_imaginary(5);
        let (m1, m2) = rep_coefficients(&UNIT_I, &UNIT_I, &h).unwrap();
        assert!(m1.dist(&ONE) < 1e-12);
        assert_eq!(m2, ZERO);
        // H = I gives (0, 1)
        let (m1, m2) = rep_coefficients(&UNIT_I, &h, &UNIT_I).unwrap();
        assert_eq!(m1, ZERO);
        assert!(m2.dist(&ONE) < 1e-12);
        // diagonal rejected
        assert!(matches!(
            rep_coefficients(&UNIT_I, &h, &h),
            Err(Error::Diagonal { .. })
        ));

        // reconstruction and agreement of the two closed forms
        let f = SlicePolynomial::new(vec![q(0.1, -0.4, 0.2, 0.0), quaternion::K, ONE]);
        for seed in 0..30 {
            let i = sample_unit_imaginary(3 * seed);
            let j = sample_unit_imaginary(3 * seed + 1);
            let h = sample_unit_imaginary(3 * seed + 2);
            if j.angle(&h) < 1e-3 {
                continue;
            }
            let (x, y) = (0.3, 0.8);
            let (m1, m2) = rep_coefficients(&i, &j, &h).unwrap();
            let (a1, a2) = rep_coefficients_alt(&i, &j, &h).unwrap();
            assert!(m1.dist(&a1) < 1e-12 * (1.0 + m1.norm()));
            assert!(m2.dist(&a2) < 1e-12 * (1.0 + m2.norm()));
            let val = |axis: &ImaginaryUnit| {
                f.eval(&(Quaternion::from_real(x) + axis.as_quaternion().scale(y)))
            };
            let rebuilt = m1 * val(&j) + m2 * val(&h);
            assert!(rebuilt.dist(&val(&i)) < 1e-10);
        }
    }

    #[test]
    fn poisson_examples() {
        let mu = SphereMeasure::octahedral6();
        let rule = CircleRule::new(128);
        // u = Re(q^2) = a^2 - b^2
        let u = |p: &Quaternion| {
            let c = quaternion::to_slice(p);
            Ok(c.alpha * c.alpha - c.beta * c.beta)
        };
        let v = poisson(u, 0.0, 1.0, &mu, rule).unwrap();
        assert!(v.abs() < 1e-12);
        let v = poisson(u, 0.3, 1.0, &mu, rule).unwrap();
        assert!((v - 0.09).abs() < 1e-9);
        // normalization
        let v = poisson(|_| Ok(1.0), 0.4, 0.9, &mu, rule).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        // domain guard
        assert!(matches!(
            poisson(|_| Ok(1.0), 1.0, 1.0, &mu, rule),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn volume_average_cases() {
        // q^2 averages to -1/2 over the unit 3-sphere
        let avg = volume_average_s3(|p| Ok(*p * *p), 1.0, 32).unwrap();
        assert!((avg.w + 0.5).abs() < 2e-3);
        assert!(avg.w < 0.0);
        assert!(avg.im_norm() < 1e-12);
        // constants survive
        let c = q(0.7, -0.1, 0.3, 0.0);
        let avg = volume_average_s3(|_| Ok(c), 2.0, 8).unwrap();
        assert!(avg.dist(&c) < 1e-13);
        // odd symmetry kills q
        let avg = volume_average_s3(|p| Ok(*p), 1.5, 16).unwrap();
        assert!(avg.norm() < 1e-12);
    }

    #[test]
    fn poisson_measure_reproduces_regular_values() {
        let mu = SphereMeasure::octahedral6();
        let rule = CircleRule::new(256);
        let f = SlicePolynomial::new(vec![
            q(0.3, 0.1, 0.0, -0.5),
            ONE,
            quaternion::J,
            q(0.0, 0.2, 0.0, 0.0),
            ZERO,
            q(0.1, 0.0, 0.0, 0.1),
        ]);
        let atoms = poisson_measure_real_center(0.1, &ZERO, 1.0, &mu, rule).unwrap();
        let total: f64 = atoms.iter().map(|(_, w)| w).sum();
        assert!((total - 1.0).abs() < 1e-10);
        let mut acc = ZERO;
        for (p, w) in &atoms {
            acc += f.eval(p).scale(*w);
        }
        assert!(acc.dist(&f.eval(&Quaternion::from_real(0.1))) < 1e-8);
        // linear reproduces the evaluation point
        let mut acc = ZERO;
        for (p, w) in &atoms {
            acc += p.scale(*w);
        }
        assert!(acc.dist(&Quaternion::from_real(0.1)) < 1e-10);
        // interior requirement
        assert!(matches!(
            poisson_measure_real_center(1.5, &ZERO, 1.0, &mu, rule),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn poisson_measure_off_center_sphere() {
        let mu = SphereMeasure::random_symmetrized(6, 3);
        let rule = CircleRule::new(256);
        let center = Quaternion::from_real(0.2);
        let f = SlicePolynomial::new(vec![q(0.1, -0.3, 0.0, 0.7), quaternion::I, ONE]);
        let atoms = poisson_measure_real_center(0.5, &center, 0.8, &mu, rule).unwrap();
        let mut acc = ZERO;
        for (p, w) in &atoms {
            acc += f.eval(p).scale(*w);
        }
        assert!(acc.dist(&f.eval(&Quaternion::from_real(0.5))) < 1e-8);
        // sphere centers off the real axis are out of scope
        let tilted = Quaternion::new(0.2, 0.1, 0.0, 0.0);
        assert!(matches!(
            poisson_measure_real_center(0.3, &tilted, 0.8, &mu, rule),
            Err(Error::Domain(_))
        ));
    }
}
