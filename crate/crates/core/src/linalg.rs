//! Small dense linear algebra: 3-vector helpers, a cyclic Jacobi
//! eigensolver for symmetric 3x3 matrices, and a one-sided Jacobi SVD
//! for the small rectangular systems that carry the rank decisions.
//!
//! Everything here is written for matrices with at most a dozen rows, where
//! Jacobi methods converge in a handful of sweeps and deliver singular
//! values accurate enough for relative rank cutoffs near 1e-10.

use crate::tol::Tol;

pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];

pub fn dot(u: Vec3, v: Vec3) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub fn cross(u: Vec3, v: Vec3) -> Vec3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

pub fn norm(u: Vec3) -> f64 {
    dot(u, u).sqrt()
}

pub fn scale(u: Vec3, s: f64) -> Vec3 {
    [u[0] * s, u[1] * s, u[2] * s]
}

pub fn add(u: Vec3, v: Vec3) -> Vec3 {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

pub fn sub(u: Vec3, v: Vec3) -> Vec3 {
    [u[0] - v[0], u[1] - v[1], u[2] - v[2]]
}

pub fn mat3_mul_vec(m: &Mat3, v: Vec3) -> Vec3 {
    [dot(m[0], v), dot(m[1], v), dot(m[2], v)]
}

/// Largest absolute entry of a symmetric 3x3 matrix.
pub fn mat3_max_abs(m: &Mat3) -> f64 {
    m.iter().flatten().fold(0.0_f64, |acc, &x| acc.max(x.abs()))
}

/// Eigendecomposition of a symmetric 3x3 matrix by cyclic Jacobi sweeps.
///
/// Returns eigenvalues in ascending order together with the matching
/// orthonormal eigenvectors as the columns of the returned matrix.
/// Off-diagonal mass is driven below 1e-14 times the matrix scale.
pub fn sym_eigen_3x3(a: &Mat3) -> ([f64; 3], Mat3) {
    let mut m = *a;
    let mut q: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let scale = mat3_max_abs(a).max(f64::MIN_POSITIVE);
    for _sweep in 0..64 {
        let off = (m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2]).sqrt();
        if off <= 1e-14 * scale {
            break;
        }
        for (p, r) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let apr = m[p][r];
            if apr.abs() <= 1e-300 {
                continue;
            }
            let theta = (m[r][r] - m[p][p]) / (2.0 * apr);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = c * t;
            // Two-sided rotation in the (p, r) plane.
            let mpp = m[p][p];
            let mrr = m[r][r];
            m[p][p] = mpp - t * apr;
            m[r][r] = mrr + t * apr;
            m[p][r] = 0.0;
            m[r][p] = 0.0;
            let o = 3 - p - r;
            let mop = m[o][p];
            let mor = m[o][r];
            m[o][p] = c * mop - s * mor;
            m[p][o] = m[o][p];
            m[o][r] = s * mop + c * mor;
            m[r][o] = m[o][r];
            for k in 0..3 {
                let qkp = q[k][p];
                let qkr = q[k][r];
                q[k][p] = c * qkp - s * qkr;
                q[k][r] = s * qkp + c * qkr;
            }
        }
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| m[i][i].partial_cmp(&m[j][j]).unwrap());
    let vals = [
        m[order[0]][order[0]],
        m[order[1]][order[1]],
        m[order[2]][order[2]],
    ];
    let mut vecs = [[0.0; 3]; 3];
    for (col, &src) in order.iter().enumerate() {
        for row in 0..3 {
            vecs[row][col] = q[row][src];
        }
    }
    (vals, vecs)
}

/// Thin SVD of an m x n matrix with m >= n, computed by one-sided Jacobi
/// column orthogonalization.
///
/// `sigma` is sorted in descending order. `v` holds the right singular
/// vectors as columns; `u` holds the left singular vectors for every
/// singular value above roundoff (columns with negligible norm are zero).
pub struct Svd {
    pub sigma: Vec<f64>,
    /// n columns, each of length n.
    pub v: Vec<Vec<f64>>,
    /// n columns, each of length m.
    pub u: Vec<Vec<f64>>,
}

fn dotv(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// One-sided Jacobi SVD. `rows` is the matrix as m rows of n entries, m >= n.
pub fn svd(rows: &[Vec<f64>]) -> Svd {
    let m = rows.len();
    let n = rows[0].len();
    assert!(m >= n, "svd expects at least as many rows as columns");
    let mut w: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..m).map(|i| rows[i][j]).collect())
        .collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();
    for _sweep in 0..60 {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let alpha = dotv(&w[i], &w[i]);
                let beta = dotv(&w[j], &w[j]);
                let gamma = dotv(&w[i], &w[j]);
                if gamma == 0.0 || gamma.abs() <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (zeta * zeta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = c * t;
                for k in 0..m {
                    let wi = w[i][k];
                    let wj = w[j][k];
                    w[i][k] = c * wi - s * wj;
                    w[j][k] = s * wi + c * wj;
                }
                for k in 0..n {
                    let vi = v[i][k];
                    let vj = v[j][k];
                    v[i][k] = c * vi - s * vj;
                    v[j][k] = s * vi + c * vj;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut cols: Vec<(f64, Vec<f64>, Vec<f64>)> = w
        .into_iter()
        .zip(v)
        .map(|(wc, vc)| (dotv(&wc, &wc).sqrt(), wc, vc))
        .collect();
    cols.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut sigma = Vec::with_capacity(n);
    let mut vout = Vec::with_capacity(n);
    let mut uout = Vec::with_capacity(n);
    for (s, wc, vc) in cols {
        sigma.push(s);
        if s > 0.0 {
            uout.push(wc.iter().map(|x| x / s).collect());
        } else {
            uout.push(vec![0.0; m]);
        }
        vout.push(vc);
    }
    Svd {
        sigma,
        v: vout,
        u: uout,
    }
}

impl Svd {
    /// Numeric rank with the cutoff `sigma_i <= atol + rtol * sigma_max`.
    pub fn rank(&self, tol: &Tol) -> usize {
        let smax = self.sigma.first().copied().unwrap_or(0.0);
        self.sigma.iter().filter(|&&s| s > tol.band(smax)).count()
    }

    /// Orthonormal basis of the nullspace (right singular vectors past the rank).
    pub fn nullspace(&self, tol: &Tol) -> Vec<Vec<f64>> {
        let r = self.rank(tol);
        self.v[r..].to_vec()
    }

    /// Minimum-norm least-squares solution of `A x = b`.
    pub fn solve_min_norm(&self, b: &[f64], tol: &Tol) -> Vec<f64> {
        let n = self.v.len();
        let r = self.rank(tol);
        let mut x = vec![0.0; n];
        for i in 0..r {
            let coeff = dotv(&self.u[i], b) / self.sigma[i];
            for k in 0..n {
                x[k] += coeff * self.v[i][k];
            }
        }
        x
    }
}

/// Residual of subspace equality between two spanning sets of R^n vectors.
///
/// Both inputs are orthonormalized internally; the result is the largest
/// component of either basis left unexplained by the other span. Zero means
/// the spans coincide.
pub fn span_distance(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let qa = orthonormalize(a);
    let qb = orthonormalize(b);
    if qa.len() != qb.len() {
        return 1.0;
    }
    let mut worst = 0.0_f64;
    for (from, onto) in [(&qa, &qb), (&qb, &qa)] {
        for vec in from.iter() {
            let mut resid: Vec<f64> = vec.clone();
            for base in onto.iter() {
                let c = dotv(vec, base);
                for (rk, bk) in resid.iter_mut().zip(base) {
                    *rk -= c * bk;
                }
            }
            worst = worst.max(dotv(&resid, &resid).sqrt());
        }
    }
    worst
}

/// Modified Gram-Schmidt, dropping vectors that are dependent to roundoff.
pub fn orthonormalize(vs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        let full = dotv(&w, &w).sqrt();
        for q in &out {
            let c = dotv(&w, q);
            for (wk, qk) in w.iter_mut().zip(q) {
                *wk -= c * qk;
            }
        }
        let nrm = dotv(&w, &w).sqrt();
        if nrm > 1e-12 * full.max(1.0) {
            for wk in w.iter_mut() {
                *wk /= nrm;
            }
            out.push(w);
        }
    }
    out
}
