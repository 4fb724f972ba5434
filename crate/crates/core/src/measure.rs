//! Discretized probability measures on the imaginary unit sphere and the
//! uniform circle rule used by the integral formulas.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::quaternion::{sample_unit_imaginary_with, ImaginaryUnit, UNIT_I, UNIT_J, UNIT_K};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeasureKind {
    AntipodalPair,
    Octahedral6,
    RandomSymmetrized { n: usize, seed: u64 },
}

/// A finite weighted point set on the imaginary sphere.
///
/// Every constructor produces a set closed under `J -> -J` with equal
/// weights, the invariance the mean value formula requires, and weights
/// summing to one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SphereMeasure {
    points: Vec<ImaginaryUnit>,
    weights: Vec<f64>,
    kind: MeasureKind,
}

impl SphereMeasure {
    /// The two-point measure `{J, -J}` with weight 1/2 each.
    pub fn antipodal_pair(j: ImaginaryUnit) -> Self {
        Self {
            points: vec![j, -j],
            weights: vec![0.5, 0.5],
            kind: MeasureKind::AntipodalPair,
        }
    }

    /// The six coordinate points `{±i, ±j, ±k}` with weight 1/6 each;
    /// integrates quadratic polynomials on the sphere exactly.
    pub fn octahedral6() -> Self {
        Self {
            points: vec![UNIT_I, -UNIT_I, UNIT_J, -UNIT_J, UNIT_K, -UNIT_K],
            weights: vec![1.0 / 6.0; 6],
            kind: MeasureKind::Octahedral6,
        }
    }

    /// Draws `n` units and includes both `±J` with weight `1/(2n)`, which
    /// enforces the antipodal invariance by construction.
    pub fn random_symmetrized(n: usize, seed: u64) -> Self {
        let n = n.max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points = Vec::with_capacity(2 * n);
        for _ in 0..n {
            let u = sample_unit_imaginary_with(&mut rng);
            points.push(u);
            points.push(-u);
        }
        Self {
            weights: vec![1.0 / (2 * n) as f64; 2 * n],
            points,
            kind: MeasureKind::RandomSymmetrized { n, seed },
        }
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = (ImaginaryUnit, f64)> + '_ {
        self.points.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Distance to exact antipodal symmetry: for every atom `(J, w)` there
    /// must be an atom `(-J, w)`.
    pub fn symmetry_defect(&self) -> f64 {
        self.support()
            .map(|(p, w)| {
                self.support()
                    .filter(|(q, _)| q.as_quaternion().dist(&(-p).as_quaternion()) < 1e-12)
                    .map(|(_, wq)| (w - wq).abs())
                    .min_by(f64::total_cmp)
                    .unwrap_or(f64::INFINITY)
            })
            .fold(0.0, f64::max)
    }
}

/// Uniform nodes `theta_k = 2 pi k / n`; paired with weight `1/n` this is the
/// normalized trapezoid rule, exact for trigonometric polynomials of degree
/// below `n` and spectrally accurate on periodic analytic integrands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleRule {
    n_nodes: usize,
}

impl CircleRule {
    pub fn new(n_nodes: usize) -> Self {
        assert!(n_nodes >= 1, "circle rule needs at least one node");
        Self { n_nodes }
    }

    pub fn len(&self) -> usize {
        self.n_nodes
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.n_nodes;
        (0..n).map(move |k| std::f64::consts::TAU * k as f64 / n as f64)
    }

    /// Normalized mean `(1/2pi) ∮ g dθ` of a periodic integrand.
    pub fn mean(&self, mut g: impl FnMut(f64) -> f64) -> f64 {
        self.angles().map(&mut g).sum::<f64>() / self.n_nodes as f64
    }
}

impl Default for CircleRule {
    fn default() -> Self {
        Self::new(64)
    }
}
