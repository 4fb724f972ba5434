//! Slice divisors: zero spheres with multiplicities in the closed upper half
//! plane, zero classification, right-factor extraction and zero counting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{SemiRegular, SlicePolynomial};
use crate::quaternion::{self, Quaternion, UNIT_I};
use crate::roots::roots_real_poly;

/// Clustering radius for divisor points.
fn point_radius(a: f64, b: f64) -> f64 {
    1e-6 * (1.0 + (a * a + b * b).sqrt())
}

/// One divisor atom: a closed-upper-half-plane point with an integer
/// multiplicity (negative multiplicities encode poles of semi-regular
/// functions). Serialized as `{"point": [a, b], "mult": m}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DivisorEntry {
    pub point: [f64; 2],
    pub mult: i64,
}

impl DivisorEntry {
    pub fn radius(&self) -> f64 {
        (self.point[0] * self.point[0] + self.point[1] * self.point[1]).sqrt()
    }

    fn same_point(&self, other: &DivisorEntry) -> bool {
        let d = ((self.point[0] - other.point[0]).powi(2)
            + (self.point[1] - other.point[1]).powi(2))
        .sqrt();
        d <= point_radius(self.point[0], self.point[1])
            .max(point_radius(other.point[0], other.point[1]))
    }
}

/// A formal sum of upper-half-plane points with multiplicities, kept in a
/// canonical form: clustered, zero multiplicities dropped, sorted
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Divisor {
    entries: Vec<DivisorEntry>,
}

impl Divisor {
    pub fn new(entries: Vec<DivisorEntry>) -> Self {
        let mut merged: Vec<DivisorEntry> = Vec::new();
        for e in entries {
            debug_assert!(e.point[1] >= 0.0, "divisor points live in the upper half plane");
            match merged.iter_mut().find(|m| m.same_point(&e)) {
                Some(m) => m.mult += e.mult,
                None => merged.push(e),
            }
        }
        merged.retain(|e| e.mult != 0);
        merged.sort_by(|x, y| {
            (x.point[0], x.point[1])
                .partial_cmp(&(y.point[0], y.point[1]))
                .unwrap()
        });
        Self { entries: merged }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[DivisorEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Divisor::new(entries)
    }

    pub fn neg(&self) -> Divisor {
        Divisor::new(
            self.entries
                .iter()
                .map(|e| DivisorEntry { point: e.point, mult: -e.mult })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.neg())
    }

    /// Entries with `|p| <= r`.
    pub fn within(&self, r: f64) -> impl Iterator<Item = &DivisorEntry> + '_ {
        self.entries.iter().filter(move |e| e.radius() <= r)
    }

    /// Same multiset up to the clustering radius.
    pub fn same_as(&self, other: &Divisor) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.same_point(b) && a.mult == b.mult)
    }
}

/// Kind of a zero sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroKind {
    /// An isolated zero on its sphere; carries the evaluation witness.
    Punctual(Quaternion),
    /// The whole sphere vanishes.
    Spherical,
}

/// A classified zero sphere `alpha + S beta` with its total multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereZero {
    pub alpha: f64,
    pub beta: f64,
    pub kind: ZeroKind,
    pub mult: i64,
}

/// Roots of the real-coefficient polynomial lifted from a slice-preserving
/// one; thin wrapper reused by the divisor routines.
fn real_parts(f: &SlicePolynomial) -> Vec<f64> {
    f.coeffs().iter().map(|c| c.w).collect()
}

/// Divisor of a nonzero polynomial: roots of the symmetrization in the
/// closed upper half plane. Non-real points carry the root multiplicity of
/// `f^s`; real points half of it (always even, since `f^s >= 0` on the axis).
///
/// Slice-preserving inputs skip the symmetrization: `f^s = f^2` there, so the
/// roots of `f` itself carry the divisor (non-real multiplicities doubled) at
/// half the degree, avoiding the structural root doubling.
pub fn divisor_of_poly(f: &SlicePolynomial) -> Result<Divisor> {
    if f.is_zero() {
        return Err(Error::Degenerate("divisor of the zero polynomial".into()));
    }
    let mut entries = Vec::new();
    if let Some(real) = f.real_coeffs() {
        for (z, m) in roots_real_poly(&real)? {
            if z.im < 0.0 {
                continue;
            }
            let mult = if z.im == 0.0 { m as i64 } else { 2 * m as i64 };
            entries.push(DivisorEntry { point: [z.re, z.im.max(0.0)], mult });
        }
        return Ok(Divisor::new(entries));
    }
    let fs = f.symmetrization();
    let roots = roots_real_poly(&real_parts(&fs))?;
    for (z, m) in roots {
        if z.im < 0.0 {
            continue;
        }
        if z.im == 0.0 {
            // real roots of a symmetrization come with even multiplicity
            entries.push(DivisorEntry { point: [z.re, 0.0], mult: m.div_ceil(2) as i64 });
        } else {
            entries.push(DivisorEntry { point: [z.re, z.im], mult: m as i64 });
        }
    }
    Ok(Divisor::new(entries))
}

/// Signed divisor of `g^{-*} h`: `div(h) - div(g)`, cluster-merged.
pub fn divisor_semiregular(f: &SemiRegular) -> Result<Divisor> {
    if f.numer().is_zero() {
        return Err(Error::Degenerate("divisor of a zero numerator".into()));
    }
    Ok(divisor_of_poly(f.numer())?.sub(&divisor_of_poly(f.denom())?))
}

/// The characteristic polynomial of the sphere `alpha + S beta`,
/// `q^2 - 2 alpha q + (alpha^2 + beta^2)`; for `beta = 0` this degenerates to
/// `(q - alpha)^2`.
pub fn characteristic_poly(alpha: f64, beta: f64) -> SlicePolynomial {
    SlicePolynomial::from_real(&[alpha * alpha + beta * beta, -2.0 * alpha, 1.0])
}

/// Division of `f` by a monic real-coefficient polynomial: `f = q * d + r`.
fn divide_by_real(f: &SlicePolynomial, d: &SlicePolynomial) -> (SlicePolynomial, SlicePolynomial) {
    let dd = d.degree().expect("nonzero divisor");
    let mut rem: Vec<Quaternion> = f.coeffs().to_vec();
    if rem.len() <= dd {
        return (SlicePolynomial::zero(), f.clone());
    }
    let mut quot = vec![quaternion::ZERO; rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = rem[k];
        quot[k - dd] = c;
        for (i, di) in d.coeffs().iter().enumerate() {
            let delta = c.scale(di.w);
            rem[k - dd + i] = rem[k - dd + i] - delta;
        }
    }
    rem.truncate(dd);
    (SlicePolynomial::new(quot), SlicePolynomial::new(rem))
}

/// How many times the monic real polynomial `d` divides `f` within `tol`.
fn divisibility_count(f: &SlicePolynomial, d: &SlicePolynomial, tol: f64) -> usize {
    let mut count = 0;
    let mut cur = f.clone();
    while !cur.is_zero() {
        let (q, r) = divide_by_real(&cur, d);
        if r.coeff_scale() > tol || q.is_zero() && !r.is_zero() {
            break;
        }
        if q.is_zero() {
            break;
        }
        cur = q;
        count += 1;
    }
    count
}

/// Spherical factor count `s` and punctual remainder count `p` of `f` on the
/// sphere, with `p + 2s` the total multiplicity.
fn sphere_split(f: &SlicePolynomial, alpha: f64, beta: f64) -> (usize, usize) {
    let chi = characteristic_poly(alpha, beta);
    let tol = 1e-9 * f.coeff_scale().max(1.0) * (1.0 + alpha.abs() + beta).powi(2);
    let s = divisibility_count(f, &chi, tol);
    let total = divisibility_count(&f.symmetrization(), &chi, tol * f.coeff_scale().max(1.0));
    let p = total.saturating_sub(2 * s);
    (s, p)
}

/// Classifies the zero set of `f` on the sphere `alpha + S beta` (`beta > 0`):
/// divides by the characteristic polynomial and inspects the linear remainder
/// `q c + d`. Both remainder coefficients vanishing means the whole sphere is
/// a zero; otherwise the single candidate `b = -d c^{-1}` must land on the
/// sphere and annihilate `f`.
pub fn classify_sphere(f: &SlicePolynomial, alpha: f64, beta: f64) -> Option<SphereZero> {
    if f.is_zero() {
        return None;
    }
    let chi = characteristic_poly(alpha, beta);
    let (_, rem) = divide_by_real(f, &chi);
    let scale = f.coeff_scale().max(1.0) * (1.0 + alpha.abs() + beta).powi(2);
    let tol = 1e-9 * scale;
    let c = rem.coeff(1);
    let d = rem.coeff(0);
    let (s, p) = sphere_split(f, alpha, beta);
    let total = (p + 2 * s) as i64;
    if c.norm() <= tol && d.norm() <= tol {
        return Some(SphereZero { alpha, beta, kind: ZeroKind::Spherical, mult: total });
    }
    if c.norm() <= tol {
        return None; // constant nonzero remainder: no zero on this sphere
    }
    let witness = -(d * c.inverse());
    let on_sphere = (witness.re() - alpha).abs() <= 1e-6 * (1.0 + alpha.abs())
        && (witness.im_norm() - beta).abs() <= 1e-6 * (1.0 + beta);
    if on_sphere && f.eval(&witness).norm() <= tol {
        Some(SphereZero { alpha, beta, kind: ZeroKind::Punctual(witness), mult: total })
    } else {
        None
    }
}

/// Extracts a right linear factor on the sphere: returns `(g, b)` with
/// `f = g * (q - b)` and `b` on the sphere `alpha + S beta`.
///
/// The factor point is the zero of the left evaluation of the remainder,
/// `b = -c^{-1} d`; for spherical (or real) zeros the canonical
/// `alpha + i beta` is chosen. The quotient comes from the top-down
/// recurrence `g_{k-1} = f_k + g_k b`.
pub fn extract_right_factor(
    f: &SlicePolynomial,
    alpha: f64,
    beta: f64,
) -> Result<(SlicePolynomial, Quaternion)> {
    let scale = f.coeff_scale().max(1.0) * (1.0 + alpha.abs() + beta).powi(2);
    let tol = 1e-9 * scale;
    let b = if beta.abs() <= 1e-9 * (1.0 + alpha.abs()) {
        let b = Quaternion::from_real(alpha);
        if f.eval(&b).norm() > tol * (1.0 + alpha.abs()).powi(f.degree().unwrap_or(0) as i32) {
            return Err(Error::NoZero { alpha, beta });
        }
        b
    } else {
        let chi = characteristic_poly(alpha, beta);
        let (_, rem) = divide_by_real(f, &chi);
        let c = rem.coeff(1);
        let d = rem.coeff(0);
        if c.norm() <= tol && d.norm() <= tol {
            // spherical zero: any point works, pick the canonical one
            Quaternion::from_real(alpha) + UNIT_I.as_quaternion().scale(beta)
        } else if c.norm() <= tol {
            return Err(Error::NoZero { alpha, beta });
        } else {
            let b = -(c.inverse() * d);
            let on_sphere = (b.re() - alpha).abs() <= 1e-6 * (1.0 + alpha.abs())
                && (b.im_norm() - beta).abs() <= 1e-6 * (1.0 + beta);
            if !on_sphere {
                return Err(Error::NoZero { alpha, beta });
            }
            b
        }
    };

    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::NoZero { alpha, beta }),
    };
    let mut g = vec![quaternion::ZERO; n];
    g[n - 1] = f.coeff(n);
    for k in (1..n).rev() {
        g[k - 1] = f.coeff(k) + g[k] * b;
    }
    let residual = (f.coeff(0) + g[0] * b).norm();
    if residual > tol {
        return Err(Error::NoZero { alpha, beta });
    }
    Ok((SlicePolynomial::new(g), b))
}

/// Counts `(P, S, n)` inside `|q| <= r`: punctual and spherical zeros with
/// multiplicity, and the total `n = P + 2S`, which agrees with the divisor
/// multiplicity sum.
pub fn zero_counts(f: &SlicePolynomial, r: f64) -> Result<(usize, usize, usize)> {
    let div = divisor_of_poly(f)?;
    let mut punctual = 0usize;
    let mut spherical = 0usize;
    for e in div.within(r) {
        let (alpha, beta) = (e.point[0], e.point[1]);
        if beta == 0.0 {
            // real zeros count as isolated points
            punctual += e.mult as usize;
        } else {
            let (s, _) = sphere_split(f, alpha, beta);
            let total = e.mult as usize;
            spherical += s;
            punctual += total.saturating_sub(2 * s);
        }
    }
    Ok((punctual, spherical, punctual + 2 * spherical))
}

/// Lower estimate of `sup_{|q| = r} |f(q)|` on a hyperspherical product grid,
/// refined by doubling until the relative change drops below `1e-4`.
pub fn sup_modulus(
    f: impl Fn(&Quaternion) -> Result<Quaternion>,
    r: f64,
    grid: usize,
) -> Result<f64> {
    let grid = grid.max(8);
    let mut n = grid;
    let mut prev = grid_max(&f, r, n)?;
    for _ in 0..5 {
        n *= 2;
        let cur = grid_max(&f, r, n)?;
        let change = (cur - prev).abs() / cur.max(f64::MIN_POSITIVE);
        prev = cur;
        if change < 1e-4 {
            break;
        }
    }
    Ok(prev)
}

/// Sup of `|f|` over `|q| = r` for a polynomial, exact in the axis direction.
///
/// With `f(alpha + I beta) = F1 + I F2`, the squared modulus is
/// `|F1|^2 + |F2|^2 + 2 <F1, I F2>` and the cross term is linear in the axis
/// components, so its maximum over the axis sphere is a vector norm. Only the
/// half-circle angle needs a refined grid.
pub fn sup_modulus_poly(f: &SlicePolynomial, r: f64, grid: usize) -> f64 {
    let stem = crate::stem::StemEvaluator::from_poly(f);
    let units = [
        quaternion::UNIT_I.as_quaternion(),
        quaternion::UNIT_J.as_quaternion(),
        quaternion::UNIT_K.as_quaternion(),
    ];
    let dot = |p: &Quaternion, q: &Quaternion| p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
    let sup_at = |n: usize| {
        let mut best = 0.0f64;
        for k in 0..=n {
            let psi = std::f64::consts::PI * k as f64 / n as f64;
            let (f1, f2) = stem.components(r * psi.cos(), r * psi.sin());
            let cross_sq: f64 = units.iter().map(|u| dot(&f1, &(*u * f2)).powi(2)).sum();
            best = best.max(f1.norm_sq() + f2.norm_sq() + 2.0 * cross_sq.sqrt());
        }
        best.sqrt()
    };
    // The angle sweep is one-dimensional, so refinement is cheap; aim an
    // order below the documented 1e-4.
    let mut n = grid.max(8);
    let mut prev = sup_at(n);
    for _ in 0..10 {
        n *= 2;
        let cur = sup_at(n);
        let change = (cur - prev).abs() / cur.max(f64::MIN_POSITIVE);
        prev = cur;
        if change < 1e-5 {
            break;
        }
    }
    prev
}

fn grid_max(
    f: &impl Fn(&Quaternion) -> Result<Quaternion>,
    r: f64,
    n: usize,
) -> Result<f64> {
    let mut best = 0.0f64;
    for ip in 0..=n {
        let psi = std::f64::consts::PI * ip as f64 / n as f64;
        let (sp, cp) = psi.sin_cos();
        for iu in 0..=n {
            let phi = std::f64::consts::PI * iu as f64 / n as f64;
            let (sf, cf) = phi.sin_cos();
            for ic in 0..n {
                let chi = std::f64::consts::TAU * ic as f64 / n as f64;
                let q = Quaternion::new(
                    r * cp,
                    r * sp * cf,
                    r * sp * sf * chi.cos(),
                    r * sp * sf * chi.sin(),
                );
                best = best.max(f(&q)?.norm());
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::{I, J, ONE};

    fn lin(b: Quaternion) -> SlicePolynomial {
        SlicePolynomial::new(vec![-b, ONE])
    }

    #[test]
    fn divisor_worked_examples() {
        // (q - i) * (q - j) has divisor 2{i}
        let f = lin(I).slice_mul(&lin(J));
        let d = divisor_of_poly(&f).unwrap();
        assert_eq!(d.entries().len(), 1);
        assert_eq!(d.entries()[0].mult, 2);
        assert!((d.entries()[0].point[0]).abs() < 1e-7);
        assert!((d.entries()[0].point[1] - 1.0).abs() < 1e-7);

        // q^2 + 1 also has divisor 2{i}
        let g = SlicePolynomial::from_real(&[1.0, 0.0, 1.0]);
        assert!(divisor_of_poly(&g).unwrap().same_as(&d));

        // q - 3: halved real multiplicity
        let h = lin(Quaternion::from_real(3.0));
        let dh = divisor_of_poly(&h).unwrap();
        assert_eq!(dh.entries(), &[DivisorEntry { point: [3.0, 0.0], mult: 1 }]);
    }

    #[test]
    fn divisor_additivity() {
        let f = lin(I).slice_mul(&SlicePolynomial::new(vec![Quaternion::new(0.5, 0.0, -1.0, 0.0), ONE]));
        let g = SlicePolynomial::new(vec![Quaternion::new(0.1, 0.3, 0.0, 0.9), Quaternion::new(0.0, 1.0, 1.0, 0.0), ONE]);
        let lhs = divisor_of_poly(&f.slice_mul(&g)).unwrap();
        let rhs = divisor_of_poly(&f).unwrap().add(&divisor_of_poly(&g).unwrap());
        assert!(lhs.same_as(&rhs), "{lhs:?} vs {rhs:?}");
    }

    #[test]
    fn semiregular_divisor_cancellation() {
        // numerator (q-i)*(q-j), denominator q^2+1: divisors cancel
        let numer = lin(I).slice_mul(&lin(J));
        let denom = SlicePolynomial::from_real(&[1.0, 0.0, 1.0]);
        let sr = SemiRegular::new(denom, numer).unwrap();
        assert!(divisor_semiregular(&sr).unwrap().is_empty());

        // unit denominator reduces to the polynomial divisor
        let f = lin(Quaternion::from_real(0.5));
        let sr = SemiRegular::from_poly(f.clone());
        assert!(divisor_semiregular(&sr)
            .unwrap()
            .same_as(&divisor_of_poly(&f).unwrap()));

        // f / f has empty divisor
        let sr = SemiRegular::new(f.clone(), f).unwrap();
        assert!(divisor_semiregular(&sr).unwrap().is_empty());
    }

    #[test]
    fn classification_examples() {
        // q^2 + 1 on (0, 1): spherical
        let f = SlicePolynomial::from_real(&[1.0, 0.0, 1.0]);
        let z = classify_sphere(&f, 0.0, 1.0).unwrap();
        assert_eq!(z.kind, ZeroKind::Spherical);
        assert_eq!(z.mult, 2);

        // q - i on (0, 1): punctual with witness i
        let f = lin(I);
        let z = classify_sphere(&f, 0.0, 1.0).unwrap();
        match z.kind {
            ZeroKind::Punctual(w) => assert!(w.dist(&I) < 1e-9),
            _ => panic!("expected punctual"),
        }
        assert_eq!(z.mult, 1);

        // q - 3 has nothing on (0, 1)
        let f = lin(Quaternion::from_real(3.0));
        assert!(classify_sphere(&f, 0.0, 1.0).is_none());

        // (q-i)*(q-j): punctual witness i with total multiplicity 2
        let f = lin(I).slice_mul(&lin(J));
        let z = classify_sphere(&f, 0.0, 1.0).unwrap();
        match z.kind {
            ZeroKind::Punctual(w) => assert!(w.dist(&I) < 1e-9),
            _ => panic!("expected punctual"),
        }
        assert_eq!(z.mult, 2);
    }

    #[test]
    fn extraction_examples() {
        // (q-i)*(q-j): the right factor point is j, not the zero i
        let f = lin(I).slice_mul(&lin(J));
        let (g, b) = extract_right_factor(&f, 0.0, 1.0).unwrap();
        assert!(b.dist(&J) < 1e-9);
        assert_eq!(g.degree(), Some(1));
        assert!(g.slice_mul(&lin(b)).coeffs()[0].dist(&f.coeffs()[0]) < 1e-10);

        // spherical factor of q^2 + 1 at the canonical point
        let f = SlicePolynomial::from_real(&[1.0, 0.0, 1.0]);
        let (g, b) = extract_right_factor(&f, 0.0, 1.0).unwrap();
        assert!(b.dist(&I) < 1e-12);
        assert_eq!(g.coeffs(), &[I, ONE]);

        // no zero on the sphere
        let f = lin(Quaternion::from_real(3.0));
        assert!(matches!(
            extract_right_factor(&f, 0.0, 1.0),
            Err(Error::NoZero { .. })
        ));
    }

    #[test]
    fn extraction_reconstructs_polynomial() {
        let f = lin(I)
            .slice_mul(&lin(Quaternion::new(0.3, 0.0, 0.8, 0.0)))
            .slice_mul(&lin(Quaternion::from_real(-0.4)));
        let mut cur = f.clone();
        let mut factors = Vec::new();
        while cur.degree().unwrap_or(0) >= 1 {
            let div = divisor_of_poly(&cur).unwrap();
            let e = div.entries()[0];
            let (g, b) = extract_right_factor(&cur, e.point[0], e.point[1]).unwrap();
            factors.push(b);
            cur = g;
        }
        assert_eq!(cur.degree(), Some(0));
        assert!(cur.coeff(0).norm() > 1e-9);
        let mut rebuilt = cur;
        for b in factors.iter().rev() {
            rebuilt = rebuilt.slice_mul(&lin(*b));
        }
        for k in 0..=f.degree().unwrap() {
            assert!(rebuilt.coeff(k).dist(&f.coeff(k)) < 1e-8);
        }
    }

    #[test]
    fn zero_count_examples() {
        let f = lin(I).slice_mul(&lin(J));
        assert_eq!(zero_counts(&f, 2.0).unwrap(), (2, 0, 2));

        let g = SlicePolynomial::from_real(&[1.0, 0.0, 1.0]);
        assert_eq!(zero_counts(&g, 2.0).unwrap(), (0, 1, 2));

        let h = lin(Quaternion::from_real(3.0));
        assert_eq!(zero_counts(&h, 1.0).unwrap(), (0, 0, 0));

        // mixed sphere: (q^2 + 1) * (q - i)
        let mixed = g.slice_mul(&lin(I));
        assert_eq!(zero_counts(&mixed, 2.0).unwrap(), (1, 1, 3));
    }

    #[test]
    fn sup_modulus_examples() {
        let sq = SlicePolynomial::monomial(2, ONE);
        let s = sup_modulus(|q| Ok(sq.eval(q)), 2.0, 8).unwrap();
        assert!((s - 4.0).abs() < 1e-6);
        assert!((sup_modulus_poly(&sq, 2.0, 8) - 4.0).abs() < 1e-9);

        let c = Quaternion::new(0.3, -0.4, 0.0, 1.2);
        let s = sup_modulus(|_| Ok(c), 1.0, 8).unwrap();
        assert!((s - c.norm()).abs() < 1e-12);

        let f = SlicePolynomial::from_real(&[1.0, 1.0]);
        let s = sup_modulus(|q| Ok(f.eval(q)), 1.0, 8).unwrap();
        assert!((s - 2.0).abs() < 1e-4);
        assert!((sup_modulus_poly(&f, 1.0, 8) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn sup_modulus_paths_agree() {
        // the axis-exact path against the raw product grid
        let f = SlicePolynomial::new(vec![
            Quaternion::new(0.4, -0.8, 0.2, 0.0),
            Quaternion::new(0.0, 1.0, 0.0, -0.5),
            Quaternion::new(0.3, 0.0, 0.7, 0.0),
        ]);
        for r in [0.5, 1.0, 1.7] {
            let grid = sup_modulus(|q| Ok(f.eval(q)), r, 16).unwrap();
            let fast = sup_modulus_poly(&f, r, 16);
            assert!((grid - fast).abs() < 2e-3 * fast, "r={r}: {grid} vs {fast}");
        }
    }

    #[test]
    fn symmetrization_vanishes_on_zero_spheres() {
        let f = lin(Quaternion::new(0.2, 0.5, -0.5, 0.0)).slice_mul(&lin(I));
        let fs = f.symmetrization();
        let div = divisor_of_poly(&f).unwrap();
        for e in div.entries() {
            for seed in 0..8 {
                let axis = crate::quaternion::sample_unit_imaginary(seed);
                let p = Quaternion::from_real(e.point[0]) + axis.as_quaternion().scale(e.point[1]);
                assert!(fs.eval(&p).norm() < 1e-7);
            }
        }
        // a sphere away from the divisor stays bounded away from zero
        let p = Quaternion::new(5.0, 1.0, 0.0, 0.0);
        assert!(fs.eval(&p).norm() > 1.0);
    }

    #[test]
    fn zero_set_inclusion_in_products() {
        let f = lin(I).slice_mul(&lin(Quaternion::new(0.0, 0.0, 0.6, 0.8)));
        let g = SlicePolynomial::new(vec![Quaternion::new(0.3, 1.0, 0.0, 0.0), ONE]);
        let fg = f.slice_mul(&g);
        let div = divisor_of_poly(&f).unwrap();
        for e in div.entries() {
            if let Some(SphereZero { kind: ZeroKind::Punctual(w), .. }) =
                classify_sphere(&f, e.point[0], e.point[1])
            {
                assert!(fg.eval(&w).norm() < 1e-9 * fg.coeff_scale());
            }
        }
        // product evaluation identity at points where f does not vanish
        let p = Quaternion::new(0.9, 0.2, -0.3, 0.4);
        let fp = f.eval(&p);
        assert!(fp.norm() > 0.1);
        let lhs = fg.eval(&p);
        let rhs = fp * g.eval(&(fp.inverse() * p * fp));
        assert!(lhs.dist(&rhs) < 1e-9 * lhs.norm().max(1.0));
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(matches!(
            divisor_of_poly(&SlicePolynomial::zero()),
            Err(Error::Degenerate(_))
        ));
    }
}
