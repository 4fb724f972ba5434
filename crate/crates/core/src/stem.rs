//! Stem evaluators: slice functions given by a pair of quaternion-valued
//! component maps `F = F1 + F2 imath` on the complex half-plane coordinates
//! `(alpha, beta)`, inducing `f(alpha + I beta) = F1 + I F2`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::SlicePolynomial;
use crate::quaternion::{self, ImaginaryUnit, Quaternion};

type Component = Arc<dyn Fn(f64, f64) -> Quaternion + Send + Sync>;
type DomainFn = Arc<dyn Fn(f64, f64) -> bool + Send + Sync>;

/// A slice function presented through its stem components.
///
/// Stem symmetry (`F1` even and `F2` odd under `beta -> -beta`) is the
/// caller's responsibility for hand-written components; [`Self::symmetry_defect`]
/// measures it on sample points. Components must be reentrant.
#[derive(Clone)]
pub struct StemEvaluator {
    f1: Component,
    f2: Component,
    declared_holomorphic: bool,
    domain: Option<DomainFn>,
}

impl std::fmt::Debug for StemEvaluator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StemEvaluator")
            .field("declared_holomorphic", &self.declared_holomorphic)
            .field("restricted_domain", &self.domain.is_some())
            .finish()
    }
}

impl StemEvaluator {
    pub fn new(
        f1: impl Fn(f64, f64) -> Quaternion + Send + Sync + 'static,
        f2: impl Fn(f64, f64) -> Quaternion + Send + Sync + 'static,
    ) -> Self {
        Self { f1: Arc::new(f1), f2: Arc::new(f2), declared_holomorphic: false, domain: None }
    }

    /// As [`Self::new`], additionally declaring the stem holomorphic, which
    /// lets Laplacian evaluations short-circuit to exact zero.
    pub fn holomorphic(
        f1: impl Fn(f64, f64) -> Quaternion + Send + Sync + 'static,
        f2: impl Fn(f64, f64) -> Quaternion + Send + Sync + 'static,
    ) -> Self {
        Self { f1: Arc::new(f1), f2: Arc::new(f2), declared_holomorphic: true, domain: None }
    }

    pub fn with_domain(
        mut self,
        domain: impl Fn(f64, f64) -> bool + Send + Sync + 'static,
    ) -> Self {
        self.domain = Some(Arc::new(domain));
        self
    }

    pub fn constant(c: Quaternion) -> Self {
        Self {
            f1: Arc::new(move |_, _| c),
            f2: Arc::new(|_, _| quaternion::ZERO),
            declared_holomorphic: true,
            domain: None,
        }
    }

    pub fn declared_holomorphic(&self) -> bool {
        self.declared_holomorphic
    }

    pub fn contains(&self, alpha: f64, beta: f64) -> bool {
        self.domain.as_ref().is_none_or(|d| d(alpha, beta))
    }

    /// Raw component values `(F1, F2)` at `(alpha, beta)`.
    pub fn components(&self, alpha: f64, beta: f64) -> (Quaternion, Quaternion) {
        ((self.f1)(alpha, beta), (self.f2)(alpha, beta))
    }

    /// Induced value `F1 + I F2` at `q = alpha + I beta`.
    pub fn eval(&self, q: &Quaternion) -> Result<Quaternion> {
        let c = quaternion::to_slice(q);
        if !self.contains(c.alpha, c.beta) {
            return Err(Error::Domain(format!(
                "point ({}, {}) outside the stem domain",
                c.alpha, c.beta
            )));
        }
        let (f1, f2) = self.components(c.alpha, c.beta);
        Ok(f1 + c.axis.as_quaternion() * f2)
    }

    /// Stem of a polynomial: `F1 = sum Re(z^k) a_k`, `F2 = sum Im(z^k) a_k`.
    pub fn from_poly(p: &SlicePolynomial) -> Self {
        let c1 = p.coeffs().to_vec();
        let c2 = c1.clone();
        Self {
            f1: Arc::new(move |a, b| power_sum(&c1, a, b).0),
            f2: Arc::new(move |a, b| power_sum(&c2, a, b).1),
            declared_holomorphic: true,
            domain: None,
        }
    }

    /// Anti-regular companion of a polynomial: the slice function
    /// `q -> sum (q^c)^k a_k`, whose stem is anti-holomorphic.
    pub fn anti_from_poly(p: &SlicePolynomial) -> Self {
        let c1 = p.coeffs().to_vec();
        let c2 = c1.clone();
        Self {
            f1: Arc::new(move |a, b| power_sum(&c1, a, b).0),
            f2: Arc::new(move |a, b| -power_sum(&c2, a, b).1),
            declared_holomorphic: false,
            domain: None,
        }
    }

    pub fn sum(&self, other: &Self) -> Self {
        let (a1, b1) = (self.f1.clone(), self.f2.clone());
        let (a2, b2) = (other.f1.clone(), other.f2.clone());
        Self {
            f1: Arc::new(move |a, b| a1(a, b) + a2(a, b)),
            f2: Arc::new(move |a, b| b1(a, b) + b2(a, b)),
            declared_holomorphic: self.declared_holomorphic && other.declared_holomorphic,
            domain: intersect(&self.domain, &other.domain),
        }
    }

    /// Stem of the slice conjugate: both components quaternion-conjugated.
    /// Holomorphy is preserved (the Cauchy-Riemann system is real-linear).
    pub fn conjugate(&self) -> Self {
        let (f1, f2) = (self.f1.clone(), self.f2.clone());
        Self {
            f1: Arc::new(move |a, b| f1(a, b).conj()),
            f2: Arc::new(move |a, b| f2(a, b).conj()),
            declared_holomorphic: self.declared_holomorphic,
            domain: self.domain.clone(),
        }
    }

    /// Stem product `FG = F1 G1 - F2 G2 + (F1 G2 + F2 G1) imath`; this is the
    /// lawful product of slice functions.
    pub fn product(&self, other: &Self) -> Self {
        let (a1, b1) = (self.f1.clone(), self.f2.clone());
        let (a2, b2) = (other.f1.clone(), other.f2.clone());
        let (c1, d1) = (self.f1.clone(), self.f2.clone());
        let (c2, d2) = (other.f1.clone(), other.f2.clone());
        Self {
            f1: Arc::new(move |a, b| a1(a, b) * a2(a, b) - b1(a, b) * b2(a, b)),
            f2: Arc::new(move |a, b| c1(a, b) * d2(a, b) + d1(a, b) * c2(a, b)),
            declared_holomorphic: self.declared_holomorphic && other.declared_holomorphic,
            domain: intersect(&self.domain, &other.domain),
        }
    }

    /// Trace stem `F + F^c`.
    pub fn trace(&self) -> Self {
        self.sum(&self.conjugate())
    }

    /// Normal stem `F F^c`.
    pub fn normal(&self) -> Self {
        self.product(&self.conjugate())
    }

    /// Largest violation of `F1(conj z) = F1(z)`, `F2(conj z) = -F2(z)` over
    /// the sample points.
    pub fn symmetry_defect(&self, samples: &[(f64, f64)]) -> f64 {
        samples
            .iter()
            .map(|&(a, b)| {
                let (p1, p2) = self.components(a, b);
                let (m1, m2) = self.components(a, -b);
                (p1 - m1).norm().max((p2 + m2).norm())
            })
            .fold(0.0, f64::max)
    }
}

fn intersect(a: &Option<DomainFn>, b: &Option<DomainFn>) -> Option<DomainFn> {
    match (a, b) {
        (None, None) => None,
        (Some(d), None) | (None, Some(d)) => Some(d.clone()),
        (Some(d1), Some(d2)) => {
            let (d1, d2) = (d1.clone(), d2.clone());
            Some(Arc::new(move |x, y| d1(x, y) && d2(x, y)))
        }
    }
}

/// `(sum Re(z^k) a_k, sum Im(z^k) a_k)` at `z = a + b i`.
fn power_sum(coeffs: &[Quaternion], a: f64, b: f64) -> (Quaternion, Quaternion) {
    let (mut zr, mut zi) = (1.0f64, 0.0f64);
    let mut re = quaternion::ZERO;
    let mut im = quaternion::ZERO;
    for c in coeffs {
        re += c.scale(zr);
        im += c.scale(zi);
        let (nr, ni) = (zr * a - zi * b, zr * b + zi * a);
        zr = nr;
        zi = ni;
    }
    (re, im)
}

/// Representation formula: reconstructs `f(x + yJ)` from the values on the
/// slice of `I`, as `((1 - JI)/2) f(x+yI) + ((1 + JI)/2) f(x-yI)`.
pub fn representation_eval(
    f_plus: Quaternion,
    f_minus: Quaternion,
    i: ImaginaryUnit,
    j: ImaginaryUnit,
) -> Quaternion {
    let ji = j.as_quaternion() * i.as_quaternion();
    let half = Quaternion::from_real(0.5);
    half * (quaternion::ONE - ji) * f_plus + half * (quaternion::ONE + ji) * f_minus
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::{ONE, UNIT_I, UNIT_J};

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    #[test]
    fn stem_of_identity_and_square() {
        let id = StemEvaluator::from_poly(&SlicePolynomial::variable());
        let (f1, f2) = id.components(0.7, -1.3);
        assert!(f1.dist(&Quaternion::from_real(0.7)) < 1e-15);
        assert!(f2.dist(&Quaternion::from_real(-1.3)) < 1e-15);

        let sq = StemEvaluator::from_poly(&SlicePolynomial::monomial(2, ONE));
        let (f1, f2) = sq.components(0.5, 2.0);
        assert!(f1.dist(&Quaternion::from_real(0.25 - 4.0)) < 1e-15);
        assert!(f2.dist(&Quaternion::from_real(2.0 * 0.5 * 2.0)) < 1e-15);
    }

    #[test]
    fn eval_matches_square() {
        // F1 = Re(z^2), F2 = Im(z^2) at 1 + j gives (1+j)^2 = 2j
        let sq = StemEvaluator::new(
            |a, b| Quaternion::from_real(a * a - b * b),
            |a, b| Quaternion::from_real(2.0 * a * b),
        );
        let p = q(1.0, 0.0, 1.0, 0.0);
        assert!(sq.eval(&p).unwrap().dist(&q(0.0, 0.0, 2.0, 0.0)) < 1e-14);
        // constant stem
        let c = StemEvaluator::constant(q(0.3, 1.0, 0.0, -2.0));
        assert!(c.eval(&p).unwrap().dist(&q(0.3, 1.0, 0.0, -2.0)) < 1e-15);
        // square stem on the real axis: beta = 0 kills F2
        let x = Quaternion::from_real(-1.7);
        assert!(sq.eval(&x).unwrap().dist(&Quaternion::from_real(1.7 * 1.7)) < 1e-14);
    }

    #[test]
    fn stem_eval_agrees_with_horner_on_grid() {
        let f = SlicePolynomial::new(vec![q(0.1, -0.4, 0.0, 1.0), ONE, q(0.0, 0.5, -0.5, 0.0)]);
        let stem = StemEvaluator::from_poly(&f);
        for (n, pt) in [
            q(0.3, 0.1, -0.7, 0.2),
            q(-1.0, 2.0, 0.0, 0.0),
            q(0.0, 0.0, 0.0, 1.3),
            q(2.0, 0.0, 0.0, 0.0),
        ]
        .iter()
        .enumerate()
        {
            let direct = f.eval(pt);
            let via_stem = stem.eval(pt).unwrap();
            assert!(direct.dist(&via_stem) < 1e-12, "point {n}");
        }
    }

    #[test]
    fn anti_poly_evaluates_at_conjugate() {
        let f = SlicePolynomial::new(vec![q(0.2, 0.0, 1.0, 0.0), ONE, q(0.0, 0.0, 0.0, -1.0)]);
        let anti = StemEvaluator::anti_from_poly(&f);
        let p = q(0.4, -0.3, 0.9, 0.1);
        assert!(anti.eval(&p).unwrap().dist(&f.eval(&p.conj())) < 1e-12);
    }

    #[test]
    fn stem_symmetry_holds_for_polynomials() {
        let f = SlicePolynomial::new(vec![q(0.2, 0.0, 1.0, 0.0), ONE, q(0.3, 0.0, 0.0, -1.0)]);
        let samples: Vec<(f64, f64)> = (0..10).map(|k| (0.13 * k as f64 - 0.5, 0.21 * k as f64)).collect();
        assert!(StemEvaluator::from_poly(&f).symmetry_defect(&samples) < 1e-10);
        assert!(StemEvaluator::anti_from_poly(&f).symmetry_defect(&samples) < 1e-10);
    }

    #[test]
    fn domain_violation_reported() {
        let f = StemEvaluator::constant(ONE).with_domain(|a, b| a * a + b * b < 1.0);
        assert!(f.eval(&Quaternion::from_real(0.5)).is_ok());
        assert!(matches!(
            f.eval(&Quaternion::from_real(2.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn representation_formula_cases() {
        // q^2 takes the value -1 on the whole unit sphere of imaginaries.
        let minus_one = -ONE;
        let j = crate::quaternion::sample_unit_imaginary(3);
        let v = representation_eval(minus_one, minus_one, UNIT_I, j);
        assert!(v.dist(&minus_one) < 1e-14);

        // J = I returns the plus value, J = -I the minus value.
        let fp = q(0.3, 1.0, -0.2, 0.0);
        let fm = q(-0.7, 0.1, 0.0, 2.0);
        assert!(representation_eval(fp, fm, UNIT_I, UNIT_I).dist(&fp) < 1e-15);
        assert!(representation_eval(fp, fm, UNIT_I, -UNIT_I).dist(&fm) < 1e-15);
    }

    #[test]
    fn representation_reconstructs_polynomials() {
        let f = SlicePolynomial::new(vec![q(0.1, 0.2, 0.3, 0.4), ONE, q(0.0, -1.0, 0.5, 0.0)]);
        let (x, y) = (0.6, 1.1);
        let i = UNIT_J;
        let j = crate::quaternion::sample_unit_imaginary(9);
        let plus = f.eval(&(Quaternion::from_real(x) + i.as_quaternion().scale(y)));
        let minus = f.eval(&(Quaternion::from_real(x) - i.as_quaternion().scale(y)));
        let want = f.eval(&(Quaternion::from_real(x) + j.as_quaternion().scale(y)));
        assert!(representation_eval(plus, minus, i, j).dist(&want) < 1e-12);
    }

    #[test]
    fn splitting_into_holomorphic_components() {
        // On the slice of I, a regular polynomial splits as g + h J with
        // g, h holomorphic into C_I; checked by discrete Cauchy-Riemann.
        let f = SlicePolynomial::new(vec![
            q(0.3, -0.2, 0.8, 0.1),
            q(0.0, 1.0, 0.0, -0.4),
            q(0.5, 0.0, 0.0, 1.0),
            ONE,
        ]);
        let i = crate::quaternion::sample_unit_imaginary(21);
        let (j, k) = i.orthonormal_complement();
        let basis = [
            crate::quaternion::ONE,
            i.as_quaternion(),
            j.as_quaternion(),
            k.as_quaternion(),
        ];
        // components of f(x + yI) in the orthonormal basis {1, I, J, IJ}
        let comps = |x: f64, y: f64| -> [f64; 4] {
            let v = f.eval(&(Quaternion::from_real(x) + i.as_quaternion().scale(y)));
            basis.map(|e| v.w * e.w + v.x * e.x + v.y * e.y + v.z * e.z)
        };
        let h = 1e-4;
        for gx in -2..=2 {
            for gy in 1..=3 {
                let (x, y) = (0.3 * gx as f64, 0.4 * gy as f64);
                let dx = |m: usize| (comps(x + h, y)[m] - comps(x - h, y)[m]) / (2.0 * h);
                let dy = |m: usize| (comps(x, y + h)[m] - comps(x, y - h)[m]) / (2.0 * h);
                // g = c0 + c1 i and h = c2 + c3 i both satisfy CR
                for (re, im) in [(0, 1), (2, 3)] {
                    assert!((dx(re) - dy(im)).abs() < 1e-6, "CR1 at ({x}, {y})");
                    assert!((dy(re) + dx(im)).abs() < 1e-6, "CR2 at ({x}, {y})");
                }
            }
        }
    }

    #[test]
    fn slice_sum_is_axis_independent() {
        // f(x+yI) + f(x-yI) does not depend on I.
        let f = SlicePolynomial::new(vec![q(0.4, 0.0, 0.0, 1.0), q(0.0, 1.0, 1.0, 0.0), ONE]);
        let (x, y) = (-0.2, 0.8);
        let sum_for = |axis: ImaginaryUnit| {
            let p = Quaternion::from_real(x) + axis.as_quaternion().scale(y);
            let m = Quaternion::from_real(x) - axis.as_quaternion().scale(y);
            f.eval(&p) + f.eval(&m)
        };
        let a = sum_for(UNIT_I);
        for seed in 0..5 {
            let b = sum_for(crate::quaternion::sample_unit_imaginary(seed));
            assert!(a.dist(&b) < 1e-11);
        }
    }
}
