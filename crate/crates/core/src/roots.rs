//! Simultaneous polynomial root finding for real-coefficient polynomials via
//! Aberth-Ehrlich iteration with Newton polishing and conjugate-closed
//! multiplicity clustering.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITERS: usize = 400;
const UPDATE_TOL: f64 = 1e-14;

/// All complex roots of `p(x) = c[0] + c[1] x + ...` with multiplicities.
///
/// The returned list is conjugate-closed and clustered within radius
/// `1e-6 * (1 + |root|)`; residuals satisfy `|p(root)| <= 1e-8 * scale` with
/// `scale` the coefficient magnitude at the root.
pub fn roots_real_poly(coeffs: &[f64]) -> Result<Vec<(Complex64, usize)>> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.last().is_some_and(|v| *v == 0.0) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::Degenerate("zero polynomial has no root set".into()));
    }
    if c.len() == 1 {
        return Ok(Vec::new());
    }

    // Exact roots at the origin come off first.
    let mut zeros_at_origin = 0usize;
    let scale = c.iter().map(|v| v.abs()).fold(0.0, f64::max);
    while c.first().is_some_and(|v| v.abs() <= 1e-14 * scale) && c.len() > 1 {
        c.remove(0);
        zeros_at_origin += 1;
    }

    let complex: Vec<Complex64> = c.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut approx = if complex.len() > 1 {
        aberth(&complex)
    } else {
        Vec::new()
    };
    polish(&complex, &mut approx);

    let mut clusters = cluster(&approx);
    refine_multiple(&complex, &mut clusters);
    symmetrize_conjugates(&mut clusters);

    if zeros_at_origin > 0 {
        clusters.push((Complex64::new(0.0, 0.0), zeros_at_origin));
    }

    // Residual sanity on every representative.
    let coeff_scale = coeffs.iter().map(|v| v.abs()).fold(0.0, f64::max);
    for (z, _) in &clusters {
        let r = eval_poly(&coeffs.iter().map(|&v| Complex64::new(v, 0.0)).collect::<Vec<_>>(), *z);
        let growth = (1.0 + z.norm()).powi(coeffs.len() as i32 - 1);
        if r.norm() > 1e-8 * coeff_scale * growth {
            return Err(Error::Degenerate(format!(
                "root finding did not converge: residual {:.3e} at {}",
                r.norm(),
                z
            )));
        }
    }

    clusters.sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).unwrap());
    Ok(clusters)
}

fn eval_poly(c: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        acc = acc * z + a;
    }
    acc
}

fn eval_deriv(c: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, a) in c.iter().enumerate().skip(1).rev() {
        acc = acc * z + a * k as f64;
    }
    acc
}

fn derivative(c: &[Complex64]) -> Vec<Complex64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, a)| a * k as f64)
        .collect()
}

/// Aberth-Ehrlich simultaneous iteration from perturbed-circle starting points.
fn aberth(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n];
    // Cauchy-style radius bound.
    let radius = 1.0
        + c[..n]
            .iter()
            .map(|a| (a / lead).norm())
            .fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * (k as f64 + 0.36) / n as f64 + 0.4;
            Complex64::from_polar(radius.min(1e6) * 0.8, t)
        })
        .collect();

    for _ in 0..MAX_ITERS {
        let mut max_update = 0.0f64;
        for i in 0..n {
            let p = eval_poly(c, z[i]);
            let dp = eval_deriv(c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = if dp.norm() > 0.0 { p / dp } else { p };
            let mut repel = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 1e-300 {
                        repel += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repel;
            let w = if denom.norm() > 1e-300 { newton / denom } else { newton };
            z[i] -= w;
            max_update = max_update.max(w.norm() / (1.0 + z[i].norm()));
        }
        if max_update < UPDATE_TOL {
            break;
        }
    }
    z
}

fn polish(c: &[Complex64], roots: &mut [Complex64]) {
    for z in roots.iter_mut() {
        for _ in 0..4 {
            let p = eval_poly(c, *z);
            let dp = eval_deriv(c, *z);
            if dp.norm() < 1e-300 {
                break;
            }
            let step = p / dp;
            if step.norm() < 1e-16 * (1.0 + z.norm()) {
                break;
            }
            *z -= step;
        }
    }
}

fn cluster_radius(z: &Complex64) -> f64 {
    1e-6 * (1.0 + z.norm())
}

/// Single-linkage clustering within the documented radius.
fn cluster(roots: &[Complex64]) -> Vec<(Complex64, usize)> {
    let mut assigned = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if assigned[i] {
            continue;
        }
        let mut members = vec![i];
        assigned[i] = true;
        let mut cursor = 0;
        while cursor < members.len() {
            let zi = roots[members[cursor]];
            for (j, zj) in roots.iter().enumerate() {
                if !assigned[j] && (zi - zj).norm() <= cluster_radius(&zi).max(cluster_radius(zj)) {
                    assigned[j] = true;
                    members.push(j);
                }
            }
            cursor += 1;
        }
        let centroid = members.iter().map(|&k| roots[k]).sum::<Complex64>() / members.len() as f64;
        out.push((centroid, members.len()));
    }
    out
}

/// A cluster of size m sits at a simple root of the (m-1)-st derivative;
/// polishing there restores full accuracy for exact multiples.
fn refine_multiple(c: &[Complex64], clusters: &mut [(Complex64, usize)]) {
    for (z, m) in clusters.iter_mut() {
        if *m < 2 {
            continue;
        }
        let mut d = c.to_vec();
        for _ in 0..(*m - 1) {
            d = derivative(&d);
        }
        let mut center = *z;
        for _ in 0..8 {
            let p = eval_poly(&d, center);
            let dp = eval_deriv(&d, center);
            if dp.norm() < 1e-300 {
                break;
            }
            let step = p / dp;
            center -= step;
            if step.norm() < 1e-15 * (1.0 + center.norm()) {
                break;
            }
        }
        if (center - *z).norm() <= 2.0 * cluster_radius(z) {
            *z = center;
        }
    }
}

/// Snap near-real clusters onto the axis and average conjugate partners so
/// the output is exactly closed under conjugation.
fn symmetrize_conjugates(clusters: &mut Vec<(Complex64, usize)>) {
    for (z, _) in clusters.iter_mut() {
        if z.im.abs() <= cluster_radius(z) {
            z.im = 0.0;
        }
    }
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    let mut used = vec![false; clusters.len()];
    for i in 0..clusters.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let (zi, mi) = clusters[i];
        if zi.im == 0.0 {
            out.push((zi, mi));
            continue;
        }
        let mirror = clusters.iter().enumerate().find(|(j, (zj, mj))| {
            !used[*j] && *mj == mi && (zj.conj() - zi).norm() <= 2.0 * cluster_radius(&zi)
        });
        match mirror {
            Some((j, (zj, _))) => {
                used[j] = true;
                let re = 0.5 * (zi.re + zj.re);
                let im = 0.5 * (zi.im.abs() + zj.im.abs());
                let signed = if zi.im > 0.0 { im } else { -im };
                out.push((Complex64::new(re, signed), mi));
                out.push((Complex64::new(re, -signed), mi));
            }
            None => out.push((zi, mi)),
        }
    }
    *clusters = out;
}
