//! Quaternionic Blaschke factors for a ball of radius `rho` and the
//! factorization of semi-regular functions into a zero-free part times
//! Blaschke factors.

use serde::{Deserialize, Serialize};

use crate::divisor::{divisor_of_poly, divisor_semiregular, extract_right_factor, Divisor, DivisorEntry};
use crate::error::{Error, Result};
use crate::poly::{SemiRegular, SlicePolynomial};
use crate::quaternion::{self, Quaternion};

/// Margin keeping zeros and poles away from the integration boundary.
pub const BOUNDARY_MARGIN: f64 = 1e-6;

/// The Blaschke factor `B(q) = (rho^2 - q a^c) * (rho (q - a))^{-*}` at a
/// point `a` interior to the ball of radius `rho`, or its slice reciprocal
/// when `exponent = -1`.
///
/// On the boundary sphere `|q| = rho` the modulus is exactly one; the factor
/// swaps the interior of the ball with the exterior of the unit ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeFactor {
    a: Quaternion,
    rho: f64,
    exponent: i8,
}

impl BlaschkeFactor {
    pub fn new(a: Quaternion, rho: f64) -> Result<Self> {
        if rho.is_nan() || rho <= 0.0 {
            return Err(Error::Precondition("blaschke radius must be positive".into()));
        }
        if a.norm() >= rho * (1.0 - 1e-9) {
            return Err(Error::Precondition(format!(
                "blaschke point must be interior: |a| = {} vs rho = {}",
                a.norm(),
                rho
            )));
        }
        Ok(Self { a, rho, exponent: 1 })
    }

    pub fn reciprocal_at(a: Quaternion, rho: f64) -> Result<Self> {
        Ok(Self::new(a, rho)?.reciprocal())
    }

    pub fn point(&self) -> Quaternion {
        self.a
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn exponent(&self) -> i8 {
        self.exponent
    }

    pub fn reciprocal(&self) -> Self {
        Self { exponent: -self.exponent, ..*self }
    }

    /// Slice conjugate: the factor at the conjugate point, same exponent.
    pub fn conjugate(&self) -> Self {
        Self { a: self.a.conj(), ..*self }
    }

    /// `rho (q - a)`.
    fn linear(&self) -> SlicePolynomial {
        SlicePolynomial::new(vec![-self.a, quaternion::ONE]).scale(self.rho)
    }

    /// `rho^2 - q a^c`.
    fn cofactor(&self) -> SlicePolynomial {
        SlicePolynomial::new(vec![
            Quaternion::from_real(self.rho * self.rho),
            -self.a.conj(),
        ])
    }

    /// Semi-regular presentation. All coefficients live in the commutative
    /// subalgebra generated by `a`, so the two one-sided forms coincide:
    /// `B = (h^s)^{-*} (f h^c)` with `f` the cofactor and `h` the linear part.
    pub fn to_semiregular(&self) -> SemiRegular {
        let (f, h) = (self.cofactor(), self.linear());
        let (denom, numer) = if self.exponent == 1 {
            (h.symmetrization(), f.slice_mul(&h.conjugate()))
        } else {
            (f.symmetrization(), h.slice_mul(&f.conjugate()))
        };
        SemiRegular::new(denom, numer).expect("nonzero denominator")
    }

    pub fn eval(&self, q: &Quaternion) -> Result<Quaternion> {
        self.to_semiregular().eval(q)
    }

    /// Signed divisor: a zero at the reflected sphere `rho^2 / |a|` and a
    /// pole at the sphere of `a` (mirrored for the reciprocal).
    pub fn divisor(&self) -> Result<Divisor> {
        divisor_semiregular(&self.to_semiregular())
    }
}

fn boundary_check(div: &Divisor, rho: f64) -> Result<()> {
    for e in div.entries() {
        let distance = (e.radius() - rho).abs();
        if distance <= BOUNDARY_MARGIN {
            return Err(Error::BoundaryZero { rho, distance });
        }
    }
    Ok(())
}

/// Pulls every zero sphere of `p` inside the open ball of radius `rho` out as
/// reciprocal Blaschke factors: returns `(p_tilde, factors)` with
/// `p = p_tilde * factors[0] * ... * factors[last]` and `p_tilde` zero-free
/// on the closed ball.
///
/// One extraction step rewrites a right factor through
/// `q - b = (1/rho)(rho^2 - q b^c) * B_{b,rho}^{-*}`; the replacement
/// cofactor only has zeros on the reflected sphere outside the ball.
fn extract_ball_zeros(
    p: &SlicePolynomial,
    rho: f64,
) -> Result<(SlicePolynomial, Vec<BlaschkeFactor>)> {
    let mut cur = p.clone();
    let mut factors: Vec<BlaschkeFactor> = Vec::new();
    // each extraction moves one unit of interior multiplicity outside
    let max_steps = p.degree().unwrap_or(0) + 1;
    for _ in 0..=max_steps {
        let div = divisor_of_poly(&cur)?;
        let inside = div
            .entries()
            .iter()
            .find(|e| e.radius() < rho - BOUNDARY_MARGIN)
            .copied();
        let Some(entry) = inside else {
            return Ok((cur, factors));
        };
        let (quotient, b) = extract_right_factor(&cur, entry.point[0], entry.point[1])?;
        let factor = BlaschkeFactor::reciprocal_at(b, rho)?;
        cur = quotient.slice_mul(&factor.cofactor().scale(1.0 / rho));
        factors.insert(0, factor);
    }
    Err(Error::Degenerate(
        "zero extraction did not terminate within the degree budget".into(),
    ))
}

/// Factorizes a semi-regular function over the closed ball of radius `rho`
/// as `f = f0 * B_1 * ... * B_r` with `f0` zero- and pole-free there and
/// each `B_i` a Blaschke factor (exponent +1 for poles of `f`, -1 for
/// zeros).
///
/// Fails with [`Error::BoundaryZero`] when a zero or pole of either
/// polynomial sits within `1e-6` of the boundary sphere.
pub fn factorize(f: &SemiRegular, rho: f64) -> Result<(SemiRegular, Vec<BlaschkeFactor>)> {
    if f.numer().is_zero() {
        return Err(Error::Degenerate("cannot factorize a zero numerator".into()));
    }
    boundary_check(&divisor_of_poly(f.numer())?, rho)?;
    boundary_check(&divisor_of_poly(f.denom())?, rho)?;

    // Zeros of the numerator become reciprocal factors on the right.
    let (h_tilde, zero_factors) = extract_ball_zeros(f.numer(), rho)?;

    // Zeros of g^c (the poles of f) ride along inside g^c * h_tilde; the
    // conjugate-reciprocal dance turns them into direct factors.
    let big = f.denom().conjugate().slice_mul(&h_tilde);
    let (p_tilde, pole_factors) = extract_ball_zeros(&big, rho)?;

    let f0 = SemiRegular::new(p_tilde.conjugate(), h_tilde.symmetrization())?;
    let mut factors: Vec<BlaschkeFactor> = pole_factors
        .iter()
        .map(|b| b.reciprocal().conjugate())
        .collect();
    factors.extend(zero_factors);
    Ok((f0, factors))
}

/// Pointwise evaluation of `f0 * B_1 * ... * B_r` through the slice-product
/// identity `(F * G)(x) = F(x) G(F(x)^{-1} x F(x))`, factor by factor.
///
/// Unlike expanding the product into one semi-regular pair, this keeps the
/// evaluation conditioning of the individual low-degree factors.
pub fn eval_factorization(
    f0: &SemiRegular,
    factors: &[BlaschkeFactor],
    q: &Quaternion,
) -> Result<Quaternion> {
    let mut value = f0.eval(q)?;
    for factor in factors {
        if value.norm() < 1e-150 {
            // a zero of the left partial product annihilates the whole
            // product; the guard also keeps |value|^2 from underflowing
            return Ok(quaternion::ZERO);
        }
        let conjugated = value.inverse() * *q * value;
        value = value * factor.eval(&conjugated)?;
    }
    Ok(value)
}

/// Divisor entries of a factor list restricted to the open ball.
pub fn factors_divisor_within(factors: &[BlaschkeFactor], rho: f64) -> Result<Divisor> {
    let mut total = Divisor::empty();
    for f in factors {
        let d = f.divisor()?;
        let inside: Vec<DivisorEntry> = d
            .entries()
            .iter()
            .filter(|e| e.radius() < rho)
            .copied()
            .collect();
        total = total.add(&Divisor::new(inside));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::{sample_unit_imaginary, I, J, ONE};

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    #[test]
    fn modulus_at_origin() {
        let a = q(0.3, 0.4, -0.2, 0.1);
        let rho = 1.5;
        let b = BlaschkeFactor::new(a, rho).unwrap();
        let v = b.eval(&quaternion::ZERO).unwrap();
        assert!((v.norm() - rho / a.norm()).abs() < 1e-12);
        let v = b.reciprocal().eval(&quaternion::ZERO).unwrap();
        assert!((v.norm() - a.norm() / rho).abs() < 1e-12);
    }

    #[test]
    fn boundary_modulus_one() {
        let a = q(0.2, -0.5, 0.3, 0.6);
        let rho = 1.2;
        let b = BlaschkeFactor::new(a, rho).unwrap();
        for seed in 0..32 {
            let axis = sample_unit_imaginary(seed);
            let theta = 0.37 * seed as f64;
            let p = Quaternion::from_real(rho * theta.cos())
                + axis.as_quaternion().scale(rho * theta.sin());
            let v = b.eval(&p).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-10, "seed {seed}: {}", v.norm());
        }
    }

    #[test]
    fn interior_exterior_swap() {
        let a = q(0.1, 0.2, 0.0, -0.3);
        let rho = 1.0;
        let b = BlaschkeFactor::new(a, rho).unwrap();
        let inner = q(0.4, -0.3, 0.2, 0.0);
        assert!(b.eval(&inner).unwrap().norm() > 1.0);
        let outer = q(1.4, 0.5, -0.2, 0.8);
        assert!(b.eval(&outer).unwrap().norm() < 1.0);
    }

    #[test]
    fn interior_point_rejected() {
        assert!(matches!(
            BlaschkeFactor::new(q(1.0, 0.0, 0.0, 0.0), 1.0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn factor_divisor_shape() {
        let a = q(0.0, 0.5, 0.0, 0.0);
        let b = BlaschkeFactor::new(a, 1.0).unwrap();
        let d = b.divisor().unwrap();
        // pole at the sphere of a (radius 0.5), zero at the reflected sphere (radius 2)
        assert_eq!(d.entries().len(), 2);
        let pole = d.entries().iter().find(|e| e.mult < 0).unwrap();
        let zero = d.entries().iter().find(|e| e.mult > 0).unwrap();
        assert!((pole.radius() - 0.5).abs() < 1e-7);
        assert!((zero.radius() - 2.0).abs() < 1e-7);
    }

    #[test]
    fn factorize_single_zero() {
        let f = SemiRegular::from_poly(SlicePolynomial::new(vec![-I, ONE]));
        let rho = 1.5;
        let (f0, factors) = factorize(&f, rho).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].exponent(), -1);
        assert!(divisor_semiregular(&f0)
            .unwrap()
            .entries()
            .iter()
            .all(|e| e.radius() > rho));
    }

    #[test]
    fn factorize_constant() {
        let c = q(0.3, 0.1, 0.0, -2.0);
        let f = SemiRegular::from_poly(SlicePolynomial::constant(c));
        let (f0, factors) = factorize(&f, 1.0).unwrap();
        assert!(factors.is_empty());
        assert!(f0.eval(&quaternion::ZERO).unwrap().dist(&c) < 1e-12);
    }

    #[test]
    fn factorize_reconstructs_values() {
        // numerator with zeros inside and outside, denominator with one pole inside
        let numer = SlicePolynomial::new(vec![-I.scale(0.5), ONE])
            .slice_mul(&SlicePolynomial::new(vec![q(-2.0, 0.0, 0.4, 0.0), ONE]));
        let denom = SlicePolynomial::new(vec![q(0.1, 0.0, 0.0, -0.4), ONE]);
        let f = SemiRegular::new(denom, numer).unwrap();
        let rho = 1.0;
        let (f0, factors) = factorize(&f, rho).unwrap();

        // the expanded product and the chained pointwise evaluation are two
        // independent routes to the same values
        let mut product = f0.clone();
        for b in &factors {
            product = product.slice_mul(&b.to_semiregular());
        }
        for seed in 0..20 {
            let axis = sample_unit_imaginary(100 + seed);
            let t = 0.23 * seed as f64;
            let r = 0.15 + 0.04 * seed as f64;
            let p = Quaternion::from_real(r * t.cos()) + axis.as_quaternion().scale(r * t.sin());
            let want = match f.eval(&p) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let got = product.eval(&p).unwrap();
            assert!(
                got.dist(&want) <= 1e-8 * want.norm().max(1.0),
                "seed {seed}: {got:?} vs {want:?}"
            );
            let chained = eval_factorization(&f0, &factors, &p).unwrap();
            assert!(chained.dist(&want) <= 1e-9 * want.norm().max(1.0));
        }

        // divisor conservation inside the ball
        let div_f: Vec<_> = divisor_semiregular(&f)
            .unwrap()
            .entries()
            .iter()
            .filter(|e| e.radius() < rho)
            .copied()
            .collect();
        let div_factors = factors_divisor_within(&factors, rho).unwrap();
        assert!(Divisor::new(div_f).same_as(&div_factors));
    }

    #[test]
    fn factorize_spherical_zero_of_slice_preserving_input() {
        // characteristic quadric with sphere radius 0.5 inside, real factor outside
        let chi = crate::divisor::characteristic_poly(0.3, 0.4);
        let numer = chi.slice_mul(&SlicePolynomial::from_real(&[1.6, 1.0]));
        let f = SemiRegular::from_poly(numer);
        let rho = 1.0;
        let (f0, factors) = factorize(&f, rho).unwrap();
        // the spherical zero needs two reciprocal factors
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|b| b.exponent() == -1));
        assert!(factors.iter().all(|b| (b.point().norm() - 0.5).abs() < 1e-7));

        let mut product = f0;
        for b in &factors {
            product = product.slice_mul(&b.to_semiregular());
        }
        for seed in 0..10 {
            let axis = sample_unit_imaginary(500 + seed);
            let t = 0.41 * seed as f64;
            let p = Quaternion::from_real(0.7 * t.cos()) + axis.as_quaternion().scale(0.7 * t.sin());
            let want = f.eval(&p).unwrap();
            let got = product.eval(&p).unwrap();
            assert!(got.dist(&want) <= 1e-8 * want.norm().max(1.0));
        }
    }

    #[test]
    fn boundary_zero_rejected() {
        let f = SemiRegular::from_poly(SlicePolynomial::new(vec![-J, ONE]));
        assert!(matches!(factorize(&f, 1.0), Err(Error::BoundaryZero { .. })));
    }
}
