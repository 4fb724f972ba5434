//! Quaternion algebra, the imaginary unit sphere and slice coordinates.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A quaternion `w + x i + y j + z k` in double precision.
///
/// Serialized as the JSON array `[w, x, y, z]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

impl Quaternion {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn from_real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Quaternionic conjugate `w - x i - y j - z k`.
    pub fn conj(&self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Real part as a scalar.
    pub fn re(&self) -> f64 {
        self.w
    }

    /// Imaginary part as a quaternion with zero real part.
    pub fn im(&self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    pub fn norm_sq(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Norm of the imaginary part.
    pub fn im_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Multiplicative inverse; the caller guarantees the value is nonzero.
    pub fn inverse(&self) -> Self {
        let n = self.norm_sq();
        let c = self.conj();
        Self::new(c.w / n, c.x / n, c.y / n, c.z / n)
    }

    pub fn try_inverse(&self) -> Option<Self> {
        if self.norm_sq() == 0.0 {
            None
        } else {
            Some(self.inverse())
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// `q` counts as real when its imaginary part is below a scale-relative
    /// threshold `1e-12 * max(1, |q|)`.
    pub fn is_real(&self) -> bool {
        self.im_norm() < 1e-12 * self.norm().max(1.0)
    }

    pub fn dist(&self, other: &Self) -> f64 {
        (*self - *other).norm()
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, rhs: Quaternion) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, r: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

/// A point of the imaginary unit sphere: `x i + y j + z k` with unit norm.
///
/// Renormalized on construction; serialized as `[x, y, z]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct ImaginaryUnit {
    x: f64,
    y: f64,
    z: f64,
}

/// Canonical axes of the imaginary sphere.
pub const UNIT_I: ImaginaryUnit = ImaginaryUnit { x: 1.0, y: 0.0, z: 0.0 };
pub const UNIT_J: ImaginaryUnit = ImaginaryUnit { x: 0.0, y: 1.0, z: 0.0 };
pub const UNIT_K: ImaginaryUnit = ImaginaryUnit { x: 0.0, y: 0.0, z: 1.0 };

impl ImaginaryUnit {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if n < 1e-300 {
            return Err(Error::Degenerate(
                "imaginary unit needs a nonzero direction".into(),
            ));
        }
        Ok(Self { x: x / n, y: y / n, z: z / n })
    }

    /// Direction of the imaginary part of `q`; `None` for (numerically) real `q`.
    pub fn from_im(q: &Quaternion) -> Option<Self> {
        if q.is_real() {
            None
        } else {
            Some(Self::new(q.x, q.y, q.z).expect("nonzero imaginary part"))
        }
    }

    pub fn as_quaternion(&self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Geodesic angle between two units, in `[0, pi]`.
    pub fn angle(&self, other: &Self) -> f64 {
        self.dot(other).clamp(-1.0, 1.0).acos()
    }

    /// Completes `self` to an orthonormal triple `(self, J, K)` with `self * J = K`.
    pub fn orthonormal_complement(&self) -> (ImaginaryUnit, ImaginaryUnit) {
        // Cross with the least-aligned coordinate axis.
        let candidates = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let a = [self.x, self.y, self.z];
        let pick = candidates
            .iter()
            .min_by(|u, v| {
                let du = (u[0] * a[0] + u[1] * a[1] + u[2] * a[2]).abs();
                let dv = (v[0] * a[0] + v[1] * a[1] + v[2] * a[2]).abs();
                du.total_cmp(&dv)
            })
            .unwrap();
        let j = [
            a[1] * pick[2] - a[2] * pick[1],
            a[2] * pick[0] - a[0] * pick[2],
            a[0] * pick[1] - a[1] * pick[0],
        ];
        let j = ImaginaryUnit::new(j[0], j[1], j[2]).expect("cross product nonzero");
        // For orthogonal imaginary units the quaternion product is the cross product.
        let k_q = self.as_quaternion() * j.as_quaternion();
        let k = ImaginaryUnit::new(k_q.x, k_q.y, k_q.z).expect("unit");
        (j, k)
    }
}

impl Neg for ImaginaryUnit {
    type Output = ImaginaryUnit;
    fn neg(self) -> ImaginaryUnit {
        ImaginaryUnit { x: -self.x, y: -self.y, z: -self.z }
    }
}

impl TryFrom<[f64; 3]> for ImaginaryUnit {
    type Error = Error;
    fn try_from(a: [f64; 3]) -> Result<Self> {
        Self::new(a[0], a[1], a[2])
    }
}

impl From<ImaginaryUnit> for [f64; 3] {
    fn from(u: ImaginaryUnit) -> Self {
        [u.x, u.y, u.z]
    }
}

/// Slice coordinates `q = alpha + axis * beta` with `beta >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceCoords {
    pub alpha: f64,
    pub beta: f64,
    pub axis: ImaginaryUnit,
}

/// Decomposes `q` as `alpha + I beta` with `beta >= 0`.
///
/// Real points (up to `1e-12 * max(1, |q|)`) get `beta = 0` and the canonical
/// axis `i`, which keeps outputs deterministic.
pub fn to_slice(q: &Quaternion) -> SliceCoords {
    match ImaginaryUnit::from_im(q) {
        None => SliceCoords { alpha: q.w, beta: 0.0, axis: UNIT_I },
        Some(axis) => SliceCoords { alpha: q.w, beta: q.im_norm(), axis },
    }
}

pub fn from_slice(c: &SliceCoords) -> Quaternion {
    Quaternion::from_real(c.alpha) + c.axis.as_quaternion().scale(c.beta)
}

/// The rotation `S_w(q) = w^{-1} q w`, an orthogonal map of `R^4` fixing the
/// real axis pointwise. For unit imaginary `w` it is an involution acting as
/// the identity on the slice of `w` and as `-id` on its orthogonal complement.
pub fn rotate(w: &ImaginaryUnit, q: &Quaternion) -> Quaternion {
    let wq = w.as_quaternion();
    // w^{-1} = -w for unit imaginary w; the two signs cancel.
    wq.conj() * *q * wq
}

/// Draws a uniformly distributed imaginary unit, deterministically from `seed`.
pub fn sample_unit_imaginary(seed: u64) -> ImaginaryUnit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_unit_imaginary_with(&mut rng)
}

pub fn sample_unit_imaginary_with<R: Rng>(rng: &mut R) -> ImaginaryUnit {
    // Area-preserving cylindrical coordinates give the rotation-invariant law.
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let s = (1.0 - z * z).max(0.0).sqrt();
    ImaginaryUnit::new(s * phi.cos(), s * phi.sin(), z).expect("unit vector")
}
