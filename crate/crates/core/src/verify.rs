//! The verification battery: every formula and bound the toolkit implements,
//! checked against independent oracles on seeded random inputs. The command
//! line `suite` command and the acceptance test suite both run this.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::blaschke::{factorize, BlaschkeFactor};
use crate::calculus::{
    apply_g, dbarstar_numeric, delta_second_stem, dstar_numeric, laplace_star,
    rotation_average, rotation_group_average,
};
use crate::divisor::divisor_of_poly;
use crate::jensen::{jensen, zero_bound_check};
use crate::measure::{CircleRule, SphereMeasure};
use crate::poly::{SemiRegular, SlicePolynomial};
use crate::quadrature::{
    mean_value, poisson, rep_coefficients, rep_coefficients_alt, rep_r, volume_average_s3,
};
use crate::quaternion::{self, sample_unit_imaginary_with, ImaginaryUnit, Quaternion};
use crate::report::CaseReport;
use crate::stem::StemEvaluator;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub nodes: usize,
    pub tolerance_overrides: BTreeMap<String, f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 42, nodes: 64, tolerance_overrides: BTreeMap::new() }
    }
}

impl SuiteConfig {
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    fn tol(&self, case: &str, default: f64) -> f64 {
        self.tolerance_overrides.get(case).copied().unwrap_or(default)
    }

    fn report(&self, case: &str, property: &str, lhs: f64, rhs: f64, err: f64, default_tol: f64) -> CaseReport {
        CaseReport::scalar(case, property, lhs, rhs, err, self.tol(case, default_tol))
    }
}

pub fn all_pass(reports: &[CaseReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

/// Runs the whole battery in a fixed order.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut out = Vec::new();
    out.extend(mean_value_cases(cfg));
    out.extend(divisor_cases(cfg));
    out.extend(representation_cases(cfg));
    out.extend(laplacian_cases(cfg));
    out.push(product_rule_case(cfg));
    out.extend(averaging_cases(cfg));
    out.extend(global_operator_cases(cfg));
    out.push(poisson_case(cfg));
    out.push(blaschke_boundary_case(cfg));
    out.extend(jensen_cases(cfg));
    out.push(zero_bound_case(cfg));
    out.push(volume_average_case(cfg));
    out.push(factorization_case(cfg));
    out
}

// ---------------------------------------------------------------- helpers

fn rand_quat_ball(rng: &mut ChaCha8Rng, radius: f64) -> Quaternion {
    loop {
        let q = Quaternion::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if q.norm_sq() <= 1.0 {
            return q.scale(radius);
        }
    }
}

fn rand_poly(rng: &mut ChaCha8Rng, max_deg: usize, radius: f64) -> SlicePolynomial {
    let deg = rng.random_range(1..=max_deg);
    let mut coeffs: Vec<Quaternion> = (0..=deg).map(|_| rand_quat_ball(rng, radius)).collect();
    while coeffs[deg].norm() < 0.1 * radius {
        coeffs[deg] = rand_quat_ball(rng, radius);
    }
    SlicePolynomial::new(coeffs)
}

fn rand_real_poly(rng: &mut ChaCha8Rng, max_deg: usize, radius: f64) -> SlicePolynomial {
    let deg = rng.random_range(1..=max_deg);
    let mut coeffs: Vec<f64> = (0..=deg).map(|_| rng.random_range(-radius..radius)).collect();
    if coeffs[deg].abs() < 0.1 * radius {
        coeffs[deg] = 0.5 * radius;
    }
    SlicePolynomial::from_real(&coeffs)
}

fn rand_nonreal_point(rng: &mut ChaCha8Rng, radius: f64, min_im: f64) -> Quaternion {
    loop {
        let q = rand_quat_ball(rng, radius);
        if q.im_norm() >= min_im {
            return q;
        }
    }
}

/// Symmetric bivariate stem: `F1` even and `F2` odd in the second coordinate,
/// low degree, quaternion coefficients. Deliberately non-holomorphic.
fn rand_symmetric_stem(rng: &mut ChaCha8Rng, radius: f64) -> StemEvaluator {
    let c: Vec<Quaternion> = (0..5).map(|_| rand_quat_ball(rng, radius)).collect();
    let d: Vec<Quaternion> = (0..2).map(|_| rand_quat_ball(rng, radius)).collect();
    StemEvaluator::new(
        move |a, b| {
            c[0] + c[1].scale(a) + c[2].scale(a * a) + c[3].scale(b * b) + c[4].scale(a * b * b)
        },
        move |a, b| d[0].scale(b) + d[1].scale(a * b),
    )
}

/// Random semi-regular function with divisor radii kept away from `rho`.
fn rand_semiregular(rng: &mut ChaCha8Rng, rho: f64, slice_preserving: bool) -> SemiRegular {
    let factor_radius = |rng: &mut ChaCha8Rng| {
        if rng.random_range(0.0..1.0) < 0.6 {
            rng.random_range(0.15 * rho..0.65 * rho)
        } else {
            rng.random_range(1.35 * rho..2.0 * rho)
        }
    };
    let build = |count: usize, rng: &mut ChaCha8Rng| {
        let mut p = SlicePolynomial::one();
        for _ in 0..count {
            let r = factor_radius(rng);
            let factor = if slice_preserving {
                if rng.random_range(0.0..1.0) < 0.5 {
                    let sign = if rng.random_range(0.0..1.0) < 0.5 { 1.0 } else { -1.0 };
                    SlicePolynomial::from_real(&[-sign * r, 1.0])
                } else {
                    let phi = rng.random_range(0.3..std::f64::consts::PI - 0.3);
                    crate::divisor::characteristic_poly(r * phi.cos(), r * phi.sin())
                }
            } else {
                let dir = rand_quat_ball(rng, 1.0);
                let b = if dir.norm() < 1e-3 { Quaternion::from_real(1.0) } else { dir };
                let b = b.scale(r / b.norm());
                SlicePolynomial::new(vec![-b, quaternion::ONE])
            };
            p = p.slice_mul(&factor);
        }
        p
    };
    let numer = build(rng.random_range(1..=3), rng);
    let denom = build(rng.random_range(0..=2), rng);
    SemiRegular::new(denom, numer).expect("nonzero denominator")
}

// --------------------------------------------------------------- criteria

fn mean_value_cases(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut rng = cfg.rng(1);
    let rule = CircleRule::new(cfg.nodes.max(64));
    let mut worst_recon = 0.0f64;
    let mut worst_spread = 0.0f64;
    for case in 0..50 {
        let f = rand_poly(&mut rng, 8, 1.0);
        let a = rng.random_range(-1.0..1.0);
        let b = rng.random_range(0.0..1.0);
        let axis = sample_unit_imaginary_with(&mut rng);
        let r = rng.random_range(0.05..0.5);
        let direct = f.eval(&(Quaternion::from_real(a) + axis.as_quaternion().scale(b)));
        let measures = [
            SphereMeasure::antipodal_pair(sample_unit_imaginary_with(&mut rng)),
            SphereMeasure::octahedral6(),
            SphereMeasure::random_symmetrized(8, cfg.seed.wrapping_add(case)),
        ];
        let mut f1_values = Vec::new();
        for mu in &measures {
            let mv = mean_value(|p| Ok(f.eval(p)), a, b, axis, r, mu, rule)
                .expect("entire function");
            worst_recon = worst_recon.max(mv.reconstructed.dist(&direct));
            f1_values.push(mv.f1);
        }
        for i in 0..f1_values.len() {
            for j in (i + 1)..f1_values.len() {
                worst_spread = worst_spread.max(f1_values[i].dist(&f1_values[j]));
            }
        }
    }
    vec![
        cfg.report(
            "01-mean-value",
            "general mean value formula",
            worst_recon,
            0.0,
            worst_recon,
            1e-9,
        ),
        cfg.report(
            "02-measure-independence",
            "mean value measure independence",
            worst_spread,
            0.0,
            worst_spread,
            1e-10,
        ),
    ]
}

fn divisor_cases(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut rng = cfg.rng(3);
    let mut mismatches = 0usize;
    for _ in 0..100 {
        let f = rand_poly(&mut rng, 6, 1.0);
        let g = rand_poly(&mut rng, 6, 1.0);
        let product = divisor_of_poly(&f.slice_mul(&g));
        let sum = divisor_of_poly(&f).and_then(|df| Ok(df.add(&divisor_of_poly(&g)?)));
        match (product, sum) {
            (Ok(p), Ok(s)) => {
                if !p.same_as(&s) {
                    mismatches += 1;
                }
            }
            _ => mismatches += 1,
        }
    }
    let additivity = cfg.report(
        "03-divisor-additivity",
        "divisor additivity under the slice product",
        mismatches as f64,
        0.0,
        mismatches as f64,
        0.0,
    );

    // the worked two-factor example: divisor 2{i}
    let f = SlicePolynomial::new(vec![-quaternion::I, quaternion::ONE])
        .slice_mul(&SlicePolynomial::new(vec![-quaternion::J, quaternion::ONE]));
    let d = divisor_of_poly(&f).expect("nonzero");
    let err = if d.entries().len() == 1 && d.entries()[0].mult == 2 {
        let e = d.entries()[0];
        (e.point[0].powi(2) + (e.point[1] - 1.0).powi(2)).sqrt()
    } else {
        f64::INFINITY
    };
    let example = cfg.report(
        "03b-divisor-example",
        "two-factor divisor example",
        err,
        0.0,
        err,
        1e-6,
    );
    vec![additivity, example]
}

fn representation_cases(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut rng = cfg.rng(4);
    let mut worst_recon = 0.0f64;
    let mut worst_forms = 0.0f64;
    let mut worst_antipode = 0.0f64;
    let mut worst_modulus = 0.0f64;
    for _ in 0..100 {
        let i = sample_unit_imaginary_with(&mut rng);
        let j = sample_unit_imaginary_with(&mut rng);
        let h = loop {
            let h = sample_unit_imaginary_with(&mut rng);
            if j.angle(&h) >= 0.05 {
                break h;
            }
        };
        let f = rand_poly(&mut rng, 6, 1.0);
        let x = rng.random_range(-1.0..1.0);
        let y = rng.random_range(0.1..1.2);

        let (m1, m2) = rep_coefficients(&i, &j, &h).expect("off-diagonal");
        let val = |axis: &ImaginaryUnit| {
            f.eval(&(Quaternion::from_real(x) + axis.as_quaternion().scale(y)))
        };
        let rebuilt = m1 * val(&j) + m2 * val(&h);
        worst_recon = worst_recon.max(rebuilt.dist(&val(&i)));

        let (a1, a2) = rep_coefficients_alt(&i, &j, &h).expect("off-diagonal");
        worst_forms = worst_forms.max(m1.dist(&a1).max(m2.dist(&a2)));

        worst_antipode = worst_antipode.max(rep_r(&i, &-i).expect("antipode").norm());

        if i.angle(&j) > 0.05 {
            let r = rep_r(&i, &j).expect("separated");
            // (1 - Re(IJ)) / (1 + Re(IJ)) through the cancellation-free
            // form |I+J|^2 / |I-J|^2
            let (iq, jq) = (i.as_quaternion(), j.as_quaternion());
            let want = (iq + jq).norm_sq() / (iq - jq).norm_sq();
            worst_modulus = worst_modulus.max((r.norm_sq() - want).abs() / want.max(1.0));
        }
    }
    vec![
        cfg.report(
            "04-representation-reconstruction",
            "generalized representation formula",
            worst_recon,
            0.0,
            worst_recon,
            1e-10,
        ),
        cfg.report(
            "04b-representation-forms",
            "representation coefficient closed forms agree",
            worst_forms,
            0.0,
            worst_forms,
            1e-12,
        ),
        cfg.report(
            "04c-representation-antipode",
            "representation kernel vanishes at the antipode",
            worst_antipode,
            0.0,
            worst_antipode,
            1e-15,
        ),
        cfg.report(
            "04d-representation-kernel-modulus",
            "representation kernel modulus identity",
            worst_modulus,
            0.0,
            worst_modulus,
            1e-12,
        ),
    ]
}

fn laplacian_cases(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut rng = cfg.rng(5);
    let h = 1e-4;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let regular = rand_poly(&mut rng, 4, 1.0);
        let anti = rand_poly(&mut rng, 4, 1.0);
        // the anti-regular part forces the numeric path
        let stem = StemEvaluator::from_poly(&regular).sum(&StemEvaluator::anti_from_poly(&anti));
        for _ in 0..20 {
            let q = rand_nonreal_point(&mut rng, 1.2, 0.2);
            let v = laplace_star(&stem, &q, h).expect("entire");
            worst = worst.max(v.norm());
        }
    }
    let kernel = cfg.report(
        "05-laplacian-kernel",
        "slice laplacian annihilates regular plus anti-regular sums",
        worst,
        0.0,
        worst,
        1e-6,
    );

    let probe = StemEvaluator::new(
        |a, b| Quaternion::from_real(a * a + b * b),
        |_, _| quaternion::ZERO,
    );
    let mut worst_probe = 0.0f64;
    for _ in 0..20 {
        let q = rand_nonreal_point(&mut rng, 1.2, 0.2);
        let v = laplace_star(&probe, &q, h).expect("entire");
        worst_probe = worst_probe.max(v.dist(&Quaternion::from_real(4.0)));
    }
    let nonharmonic = cfg.report(
        "05b-laplacian-probe",
        "slice laplacian detects the non-harmonic stem",
        worst_probe,
        0.0,
        worst_probe,
        1e-5,
    );
    vec![kernel, nonharmonic]
}

fn product_rule_case(cfg: &SuiteConfig) -> CaseReport {
    let mut rng = cfg.rng(6);
    let h = 1e-4;
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let f = rand_symmetric_stem(&mut rng, 0.5);
        let g = rand_symmetric_stem(&mut rng, 0.5);
        let fg = f.product(&g);
        let fs = f.normal();
        let gs = g.normal();
        for _ in 0..10 {
            let q = rand_nonreal_point(&mut rng, 1.2, 0.25);
            let lhs = delta_second_stem(&fg, &q, h).expect("entire");
            let fs_val = fs.eval(&q).expect("entire");
            let gs_val = gs.eval(&q).expect("entire");
            let d2f = delta_second_stem(&f, &q, h).expect("entire");
            let d2g = delta_second_stem(&g, &q, h).expect("entire");
            let t1 = fs_val * d2g;
            let t2 = gs_val * d2f;
            // the cross terms inherit the factor 4 from `lapstar = 4 d* dbar*`
            let t3 = dstar_numeric(&fs, &q, h).expect("entire")
                * dbarstar_numeric(&gs, &q, h).expect("entire");
            let t4 = dbarstar_numeric(&fs, &q, h).expect("entire")
                * dstar_numeric(&gs, &q, h).expect("entire");
            let rhs = t1 + t2 + (t3 + t4).scale(4.0);
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            worst = worst.max(lhs.dist(&rhs) / scale);
        }
    }
    cfg.report(
        "06-product-rule",
        "second laplacian product rule",
        worst,
        0.0,
        worst,
        1e-5,
    )
}

fn averaging_cases(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut rng = cfg.rng(7);
    let mut worst_trace = 0.0f64;
    for _ in 0..100 {
        let f = rand_poly(&mut rng, 6, 1.0);
        let avg = rotation_average(&f);
        let half_trace = f.trace().scale(0.5);
        for k in 0..f.coeffs().len() {
            worst_trace = worst_trace.max(avg.coeff(k).dist(&half_trace.coeff(k)));
        }
    }
    let trace = cfg.report(
        "07-rotation-average-trace",
        "rotation average equals half the trace",
        worst_trace,
        0.0,
        worst_trace,
        0.0,
    );

    let mut worst_group = 0.0f64;
    for _ in 0..100 {
        let q = rand_quat_ball(&mut rng, 2.0);
        let avg = rotation_group_average(&q);
        worst_group = worst_group.max(avg.dist(&Quaternion::from_real(q.w)));
    }
    let group = cfg.report(
        "07b-rotation-group-quadrature",
        "unit-group conjugation average projects onto the real part",
        worst_group,
        0.0,
        worst_group,
        1e-13,
    );
    vec![trace, group]
}

fn global_operator_cases(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut rng = cfg.rng(8);
    let h = 1e-4;
    let mut worst_identity = 0.0f64;
    for _ in 0..20 {
        let stem = rand_symmetric_stem(&mut rng, 0.5);
        let q = rand_nonreal_point(&mut rng, 1.2, 0.25);
        let raw = {
            let stem = stem.clone();
            move |x: Quaternion| stem.eval(&x).expect("entire")
        };
        let lhs = apply_g(raw, &q, h);
        let y_sq = q.im_norm() * q.im_norm();
        let rhs = dbarstar_numeric(&stem, &q, h).expect("entire").scale(y_sq);
        let scale = lhs.norm().max(rhs.norm()).max(1.0);
        worst_identity = worst_identity.max(lhs.dist(&rhs) / scale);
    }
    let identity = cfg.report(
        "08-global-operator-identity",
        "global operator equals the scaled conjugate derivative",
        worst_identity,
        0.0,
        worst_identity,
        1e-5,
    );

    let mut worst_regular = 0.0f64;
    for _ in 0..20 {
        let f = rand_poly(&mut rng, 4, 1.0);
        let q = rand_nonreal_point(&mut rng, 1.2, 0.2);
        let v = apply_g(|x| f.eval(&x), &q, h);
        worst_regular = worst_regular.max(v.norm());
    }
    let regular = cfg.report(
        "08b-global-operator-regular",
        "global operator annihilates regular polynomials",
        worst_regular,
        0.0,
        worst_regular,
        1e-6,
    );
    vec![identity, regular]
}

fn poisson_case(cfg: &SuiteConfig) -> CaseReport {
    let mut rng = cfg.rng(9);
    let rule = CircleRule::new(cfg.nodes.max(128));
    let mu = SphereMeasure::octahedral6();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let f = rand_real_poly(&mut rng, 6, 1.0);
        let big_r = rng.random_range(0.6..1.0);
        let a = rng.random_range(-0.8..0.8) * big_r;
        let u = |p: &Quaternion| Ok(f.eval(p).re());
        let got = poisson(u, a, big_r, &mu, rule).expect("interior point");
        let want = f.eval(&Quaternion::from_real(a)).re();
        worst = worst.max((got - want).abs());
    }
    cfg.report("09-poisson", "poisson formula", worst, 0.0, worst, 1e-8)
}

fn blaschke_boundary_case(cfg: &SuiteConfig) -> CaseReport {
    let mut rng = cfg.rng(10);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let rho = rng.random_range(0.5..2.0);
        let a = rand_quat_ball(&mut rng, 0.9 * rho);
        let a = if a.norm() < 1e-3 { Quaternion::from_real(0.3 * rho) } else { a };
        let factor = BlaschkeFactor::new(a, rho).expect("interior point");
        for _ in 0..32 {
            let axis = sample_unit_imaginary_with(&mut rng);
            let theta = rng.random_range(0.0..std::f64::consts::TAU);
            let q = Quaternion::from_real(rho * theta.cos())
                + axis.as_quaternion().scale(rho * theta.sin());
            let v = factor.eval(&q).expect("boundary is pole-free");
            worst = worst.max((v.norm() - 1.0).abs());
        }
    }
    cfg.report(
        "10-blaschke-boundary",
        "blaschke boundary modulus",
        worst,
        1.0,
        worst,
        1e-9,
    )
}

fn jensen_cases(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut rng = cfg.rng(11);
    let rule = CircleRule::new(cfg.nodes.max(256));
    let rho = 1.0;
    let mut min_gap = f64::INFINITY;
    for case in 0..50 {
        let f = rand_semiregular(&mut rng, rho, false);
        let mu = if case % 2 == 0 {
            SphereMeasure::octahedral6()
        } else {
            SphereMeasure::random_symmetrized(4, cfg.seed.wrapping_add(case))
        };
        let report = jensen(&f, rho, &mu, rule).expect("margins by construction");
        min_gap = min_gap.min(report.gap);
    }
    let lower = cfg.report(
        "11-jensen-gap",
        "jensen inequality",
        min_gap,
        0.0,
        (-min_gap).max(0.0),
        1e-8,
    );

    let mut worst_eq = 0.0f64;
    for _ in 0..20 {
        let f = rand_semiregular(&mut rng, rho, true);
        let report = jensen(&f, rho, &SphereMeasure::octahedral6(), rule)
            .expect("margins by construction");
        assert!(report.equality_expected);
        worst_eq = worst_eq.max(report.gap.abs());
    }
    let equality = cfg.report(
        "11b-jensen-equality",
        "jensen equality for slice-preserving inputs",
        worst_eq,
        0.0,
        worst_eq,
        1e-8,
    );

    let f = SemiRegular::from_poly(SlicePolynomial::from_real(&[-0.5, 1.0]));
    let report = jensen(&f, 1.0, &SphereMeasure::octahedral6(), rule).expect("clean example");
    let err = report
        .gap
        .abs()
        .max((report.lhs - 0.5f64.ln()).abs())
        .max((report.divisor_sum + 2.0f64.ln()).abs());
    let example = cfg.report(
        "11c-jensen-example",
        "jensen halving example",
        report.gap,
        0.0,
        err,
        1e-9,
    );
    vec![lower, equality, example]
}

fn zero_bound_case(cfg: &SuiteConfig) -> CaseReport {
    let mut rng = cfg.rng(12);
    let mut violations = 0usize;
    let mut cases = 0usize;
    while cases < 50 {
        let f = rand_poly(&mut rng, 5, 1.0);
        if f.eval(&Quaternion::from_real(0.0)).norm() < 0.05 {
            continue;
        }
        let r = rng.random_range(0.3..1.2);
        let big_r = rng.random_range(2.0 * r..4.0);
        cases += 1;
        match zero_bound_check(&f, r, big_r, 12) {
            Ok(report) => {
                if !report.holds {
                    violations += 1;
                }
            }
            Err(_) => violations += 1,
        }
    }
    cfg.report(
        "12-zero-bound",
        "zero counting bound",
        violations as f64,
        0.0,
        violations as f64,
        0.0,
    )
}

fn volume_average_case(cfg: &SuiteConfig) -> CaseReport {
    let avg = volume_average_s3(|q| Ok(*q * *q), 1.0, 32).expect("entire");
    let err = (avg.w + 0.5).abs().max(avg.im_norm());
    let mut report = cfg.report(
        "13-volume-average",
        "volume average of the square is negative one half",
        avg.w,
        -0.5,
        err,
        2e-3,
    );
    if avg.w >= 0.0 {
        report.pass = false;
    }
    report
}

fn factorization_case(cfg: &SuiteConfig) -> CaseReport {
    let mut rng = cfg.rng(14);
    let rho = 1.0;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = rand_semiregular(&mut rng, rho, false);
        let (f0, factors) = factorize(&f, rho).expect("margins by construction");
        let mut checked = 0;
        let mut attempts = 0;
        while checked < 20 && attempts < 400 {
            attempts += 1;
            let p = rand_quat_ball(&mut rng, 0.85 * rho);
            let want = match f.eval(&p) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let got = match crate::blaschke::eval_factorization(&f0, &factors, &p) {
                Ok(v) => v,
                Err(_) => continue,
            };
            checked += 1;
            worst = worst.max(got.dist(&want) / want.norm().max(1.0));
        }
        assert!(checked >= 15, "factorization evaluation grid too sparse");
    }
    cfg.report(
        "14-factorization",
        "blaschke factorization reconstructs the function",
        worst,
        0.0,
        worst,
        1e-8,
    )
}
