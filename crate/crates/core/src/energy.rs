//! Quadratic fairness energies over patches with affinely entering unknowns.
//!
//! `F_k f = ∫∫ Σ_{i+j=k} k!/(i!j!) (∂_s^i ∂_t^j f)² ds dt` over each patch's
//! own unit parameter square, integrated exactly by Gauss-Legendre
//! quadrature.

use nalgebra::{DMatrix, DVector};

use crate::bezier::{binomial, BBPatch};
use crate::error::{domain, GtError, Result};
use crate::point::Point3;

/// Gauss-Legendre nodes and weights on `[0,1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Newton on P_n starting from the Chebyshev-like guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push(((1.0 - x) * 0.5, w * 0.5));
    }
    out
}

/// `a`-th derivative of the Bernstein basis polynomial `B_i^n` at `t`.
fn bernstein_deriv(n: usize, i: usize, a: usize, t: f64) -> f64 {
    if a == 0 {
        return crate::bezier::bernstein(n, i, t);
    }
    if a > n {
        return 0.0;
    }
    let lo = if i >= 1 { bernstein_deriv(n - 1, i - 1, a - 1, t) } else { 0.0 };
    let hi = if i < n { bernstein_deriv(n - 1, i, a - 1, t) } else { 0.0 };
    n as f64 * (lo - hi)
}

/// `G[i][k] = ∫ B_i^(a) B_k^(a)` over `[0,1]`.
fn gram_1d(n: usize, a: usize) -> DMatrix<f64> {
    let q = gauss_legendre(n + 2);
    DMatrix::from_fn(n + 1, n + 1, |i, k| {
        q.iter().map(|&(t, w)| w * bernstein_deriv(n, i, a, t) * bernstein_deriv(n, k, a, t)).sum()
    })
}

/// Energy matrix of one patch over its coefficients (index `i * (dv+1) + j`).
pub fn patch_energy_matrix(deg_u: usize, deg_v: usize, kappa: usize) -> Result<DMatrix<f64>> {
    if kappa > deg_u + deg_v {
        return domain(format!("functional order {kappa} exceeds patch degree {deg_u}x{deg_v}"));
    }
    let (nu, nv) = (deg_u + 1, deg_v + 1);
    let mut m = DMatrix::zeros(nu * nv, nu * nv);
    for a in 0..=kappa {
        let b = kappa - a;
        if a > deg_u || b > deg_v {
            continue;
        }
        let (gu, gv) = (gram_1d(deg_u, a), gram_1d(deg_v, b));
        let c = binomial(kappa, a);
        for i in 0..nu {
            for j in 0..nv {
                for k in 0..nu {
                    for l in 0..nv {
                        m[(i * nv + j, k * nv + l)] += c * gu[(i, k)] * gv[(j, l)];
                    }
                }
            }
        }
    }
    Ok(m)
}

/// `F_kappa` of a concrete patch (sum over the three coordinates).
pub fn patch_energy(p: &BBPatch, kappa: usize) -> Result<f64> {
    let m = patch_energy_matrix(p.deg_u(), p.deg_v(), kappa)?;
    Ok((0..3)
        .map(|c| {
            let x = DVector::from_iterator(p.coeffs().len(), p.coeffs().iter().map(|q| q.component(c)));
            x.dot(&(&m * &x))
        })
        .sum())
}

/// A patch whose coefficients are `base + Σ_k w[k] z_k` for unknown points `z`.
#[derive(Debug, Clone)]
pub struct AffinePatch {
    pub deg_u: usize,
    pub deg_v: usize,
    pub base: Vec<Point3>,
    /// `weights[(coeff, k)]`.
    pub weights: DMatrix<f64>,
}

/// Recover the affine dependence of a patch list on `n` unknown points by
/// probing the (coordinate-wise affine) construction `f`.
pub fn probe_affine(n: usize, f: impl Fn(&[Point3]) -> Result<Vec<BBPatch>>) -> Result<Vec<AffinePatch>> {
    let zero = vec![Point3::ZERO; n];
    let base = f(&zero)?;
    let mut out: Vec<AffinePatch> = base
        .iter()
        .map(|p| AffinePatch {
            deg_u: p.deg_u(),
            deg_v: p.deg_v(),
            base: p.coeffs().to_vec(),
            weights: DMatrix::zeros(p.coeffs().len(), n),
        })
        .collect();
    for k in 0..n {
        let mut z = zero.clone();
        z[k] = Point3::new(1.0, 0.0, 0.0);
        for (ap, p) in out.iter_mut().zip(f(&z)?) {
            for (c, (q, b)) in p.coeffs().iter().zip(&ap.base).enumerate() {
                ap.weights[(c, k)] = q.x - b.x;
            }
        }
    }
    Ok(out)
}

/// `E(z) = Σ_coords z^T H z + 2 g^T z + c`.
#[derive(Debug, Clone)]
pub struct QuadraticEnergy {
    pub kappa: usize,
    pub h: DMatrix<f64>,
    pub g: Vec<Point3>,
    pub c: f64,
}

pub fn assemble_energy(patches: &[AffinePatch], kappa: usize) -> Result<QuadraticEnergy> {
    let n = patches.first().map(|p| p.weights.ncols()).unwrap_or(0);
    let mut h = DMatrix::zeros(n, n);
    let mut g = vec![Point3::ZERO; n];
    let mut c = 0.0;
    for p in patches {
        let m = patch_energy_matrix(p.deg_u, p.deg_v, kappa)?;
        let w = &p.weights;
        h += w.transpose() * &m * w;
        for coord in 0..3 {
            let b = DVector::from_iterator(p.base.len(), p.base.iter().map(|q| q.component(coord)));
            let mb = &m * &b;
            c += b.dot(&mb);
            let gl = w.transpose() * mb;
            for k in 0..n {
                match coord {
                    0 => g[k].x += gl[k],
                    1 => g[k].y += gl[k],
                    _ => g[k].z += gl[k],
                }
            }
        }
    }
    Ok(QuadraticEnergy { kappa, h, g, c })
}

impl QuadraticEnergy {
    pub fn eval(&self, z: &[Point3]) -> f64 {
        let mut e = self.c;
        for coord in 0..3 {
            let x = DVector::from_iterator(z.len(), z.iter().map(|q| q.component(coord)));
            let gl = DVector::from_iterator(z.len(), self.g.iter().map(|q| q.component(coord)));
            e += x.dot(&(&self.h * &x)) + 2.0 * gl.dot(&x);
        }
        e
    }

    /// 2-norm condition number of `H`.
    pub fn condition(&self) -> f64 {
        let s = self.h.clone().singular_values();
        let (mx, mn) = (s.max(), s.min());
        if mn <= 0.0 {
            f64::INFINITY
        } else {
            mx / mn
        }
    }

    /// Minimizer of the energy (solves `H z = -g` per coordinate).
    pub fn minimize(&self) -> Result<Vec<Point3>> {
        let chol = self.h.clone().cholesky().ok_or_else(|| {
            GtError::Numerical(format!("normal equations singular (condition {:e})", self.condition()))
        })?;
        let n = self.g.len();
        let mut z = vec![Point3::ZERO; n];
        for coord in 0..3 {
            let rhs = DVector::from_iterator(n, self.g.iter().map(|q| -q.component(coord)));
            let x = chol.solve(&rhs);
            for k in 0..n {
                match coord {
                    0 => z[k].x = x[k],
                    1 => z[k].y = x[k],
                    _ => z[k].z = x[k],
                }
            }
        }
        Ok(z)
    }
}
