//! Polynomials with right quaternionic coefficients and their slice algebra:
//! slice product, conjugate, symmetrization, normal, trace, reciprocal and
//! semi-regular quotients.
//!
//! The slice product is the coefficient convolution; it is the exact carrier
//! for the whole function algebra, while non-polynomial slice functions enter
//! through [`crate::stem::StemEvaluator`].

use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::{self, Quaternion};

/// `sum_k q^k a_k` stored as the coefficient list `(a_0, ..., a_n)`.
///
/// Canonical form: the trailing coefficient is nonzero unless the polynomial
/// is identically zero. File format: JSON array of `[w, x, y, z]` quadruples,
/// index = power.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SlicePolynomial {
    #[serde(deserialize_with = "deserialize_trimmed")]
    coeffs: Vec<Quaternion>,
}

fn deserialize_trimmed<'de, D>(d: D) -> std::result::Result<Vec<Quaternion>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    let mut coeffs: Vec<Quaternion> = Vec::deserialize(d)?;
    while coeffs.last().is_some_and(|c| *c == quaternion::ZERO) {
        coeffs.pop();
    }
    Ok(coeffs)
}

impl SlicePolynomial {
    pub fn new(mut coeffs: Vec<Quaternion>) -> Self {
        while coeffs.last().is_some_and(|c| *c == quaternion::ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(quaternion::ONE)
    }

    pub fn constant(c: Quaternion) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `q`.
    pub fn variable() -> Self {
        Self::new(vec![quaternion::ZERO, quaternion::ONE])
    }

    /// `q^k a`.
    pub fn monomial(k: usize, a: Quaternion) -> Self {
        let mut coeffs = vec![quaternion::ZERO; k + 1];
        coeffs[k] = a;
        Self::new(coeffs)
    }

    /// Real-coefficient polynomial from scalar coefficients.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Quaternion::from_real(c)).collect())
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    /// Coefficient of `q^k`, zero-padded beyond the degree.
    pub fn coeff(&self, k: usize) -> Quaternion {
        self.coeffs.get(k).copied().unwrap_or(quaternion::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff_scale(&self) -> f64 {
        self.coeffs.iter().map(Quaternion::norm).fold(0.0, f64::max)
    }

    /// Horner evaluation of `sum q^k a_k` with right coefficients.
    pub fn eval(&self, q: &Quaternion) -> Quaternion {
        let mut acc = quaternion::ZERO;
        for a in self.coeffs.iter().rev() {
            acc = *q * acc + *a;
        }
        acc
    }

    /// Evaluation with coefficients on the left, `sum a_k q^k`. A point `b`
    /// annihilates this exactly when `q - b` divides the polynomial on the
    /// right in the slice product.
    pub fn eval_left(&self, q: &Quaternion) -> Quaternion {
        let mut acc = quaternion::ZERO;
        for a in self.coeffs.iter().rev() {
            acc = acc * *q + *a;
        }
        acc
    }

    /// Slice product: coefficient convolution `c_n = sum_{k+j=n} a_k b_j`.
    pub fn slice_mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![quaternion::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[k + j] += *a * *b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    /// Coefficient-wise quaternionic conjugate.
    pub fn conjugate(&self) -> Self {
        Self::new(self.coeffs.iter().map(Quaternion::conj).collect())
    }

    /// Symmetrization `f^c * f`. The convolution coefficients are real up to
    /// round-off; they are truncated to exactly real values.
    pub fn symmetrization(&self) -> Self {
        self.conjugate().slice_mul(self).into_real_truncated()
    }

    /// Normal `f * f^c`; coincides with the symmetrization for polynomials.
    pub fn normal(&self) -> Self {
        self.slice_mul(&self.conjugate()).into_real_truncated()
    }

    /// Trace `f + f^c`, i.e. coefficients `2 Re(a_k)`; always slice-preserving.
    pub fn trace(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| Quaternion::from_real(2.0 * c.w))
                .collect(),
        )
    }

    /// Largest imaginary component over all coefficients.
    pub fn imag_defect(&self) -> f64 {
        self.coeffs.iter().map(Quaternion::im_norm).fold(0.0, f64::max)
    }

    fn into_real_truncated(self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| Quaternion::from_real(c.w))
                .collect(),
        )
    }

    pub fn is_real_coeff(&self, tol: f64) -> bool {
        self.imag_defect() <= tol * self.coeff_scale().max(1.0)
    }

    /// Real scalar coefficients, if the polynomial is slice-preserving.
    pub fn real_coeffs(&self) -> Option<Vec<f64>> {
        if self.is_real_coeff(1e-12) {
            Some(self.coeffs.iter().map(|c| c.w).collect())
        } else {
            None
        }
    }

    /// Threshold under which `f^s(q)` counts as a pole of the reciprocal;
    /// scales with the growth bound of the symmetrization,
    /// `coeff_scale * max(1, |q|)^deg`.
    fn eps_zero(&self, q: &Quaternion) -> f64 {
        let deg = 2 * self.degree().unwrap_or(0) as i32;
        let sym_scale = self.coeff_scale().powi(2).max(1.0);
        1e-10 * sym_scale * q.norm().max(1.0).powi(deg)
    }

    /// Slice reciprocal evaluated pointwise: `(f^s(q))^{-1} f^c(q)`.
    pub fn reciprocal_eval(&self, q: &Quaternion) -> Result<Quaternion> {
        let fs = self.symmetrization();
        let denom = fs.eval(q);
        if denom.norm() <= self.eps_zero(q) {
            let c = quaternion::to_slice(q);
            return Err(Error::Singularity { alpha: c.alpha, beta: c.beta });
        }
        Ok(denom.inverse() * self.conjugate().eval(q))
    }
}

impl Add for &SlicePolynomial {
    type Output = SlicePolynomial;
    fn add(self, rhs: &SlicePolynomial) -> SlicePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        SlicePolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &SlicePolynomial {
    type Output = SlicePolynomial;
    fn sub(self, rhs: &SlicePolynomial) -> SlicePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        SlicePolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &SlicePolynomial {
    type Output = SlicePolynomial;
    fn neg(self) -> SlicePolynomial {
        SlicePolynomial::new(self.coeffs.iter().map(|c| -*c).collect())
    }
}

/// A semi-regular function presented globally as `g^{-*} * h`.
///
/// File format: JSON object `{"denom": [...], "numer": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "SemiRegularRepr", into = "SemiRegularRepr")]
pub struct SemiRegular {
    denom: SlicePolynomial,
    numer: SlicePolynomial,
    // Cached: g^s and g^c * h.
    denom_sym: SlicePolynomial,
    conv: SlicePolynomial,
}

#[derive(Serialize, Deserialize)]
struct SemiRegularRepr {
    denom: SlicePolynomial,
    numer: SlicePolynomial,
}

impl TryFrom<SemiRegularRepr> for SemiRegular {
    type Error = Error;
    fn try_from(r: SemiRegularRepr) -> Result<Self> {
        SemiRegular::new(r.denom, r.numer)
    }
}

impl From<SemiRegular> for SemiRegularRepr {
    fn from(f: SemiRegular) -> Self {
        SemiRegularRepr { denom: f.denom, numer: f.numer }
    }
}

impl SemiRegular {
    pub fn new(denom: SlicePolynomial, numer: SlicePolynomial) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::Degenerate("semi-regular denominator is zero".into()));
        }
        let denom_sym = denom.symmetrization();
        let conv = denom.conjugate().slice_mul(&numer);
        Ok(Self { denom, numer, denom_sym, conv })
    }

    pub fn from_poly(f: SlicePolynomial) -> Self {
        Self::new(SlicePolynomial::one(), f).expect("unit denominator")
    }

    pub fn denom(&self) -> &SlicePolynomial {
        &self.denom
    }

    pub fn numer(&self) -> &SlicePolynomial {
        &self.numer
    }

    /// `(g^s(q))^{-1} (g^c * h)(q)`.
    pub fn eval(&self, q: &Quaternion) -> Result<Quaternion> {
        let denom = self.denom_sym.eval(q);
        if denom.norm() <= self.denom.eps_zero(q) {
            let c = quaternion::to_slice(q);
            return Err(Error::Singularity { alpha: c.alpha, beta: c.beta });
        }
        Ok(denom.inverse() * self.conv.eval(q))
    }

    /// Slice product of two semi-regular functions:
    /// `(g1^{-*} h1) * (g2^{-*} h2) = (g1 g2^s)^{-*} (h1 g2^c h2)`.
    pub fn slice_mul(&self, other: &Self) -> Self {
        let denom = self.denom.slice_mul(&other.denom.symmetrization());
        let numer = self
            .numer
            .slice_mul(&other.denom.conjugate())
            .slice_mul(&other.numer);
        Self::new(denom, numer).expect("nonzero denominator")
    }

    /// Both coefficient lists real, i.e. the quotient is slice-preserving.
    pub fn is_slice_preserving(&self) -> bool {
        self.denom.is_real_coeff(1e-12) && self.numer.is_real_coeff(1e-12)
    }
}
