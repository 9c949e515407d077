//! Metrics compatible with a fixed PT-symmetric matrix.
//!
//! For fixed H and fixed identity coefficient d, the relation H*G = GH is
//! linear in g = (x, y, z): hr x g = d hi and hi.g = 0. The authoritative
//! solve path is the 8-real-equation linear system from the matrix
//! relation itself; the six quadric surfaces in (x, y, z) repackage the
//! same conditions with polynomial multipliers, and every solution lies
//! on all six. The quadrics are kept as a verification artifact and for
//! their surface taxonomy.

use crate::classify::{classify, Cell};
use crate::error::{Error, Result};
use crate::linalg::{dot, mat3_max_abs, norm, svd, sym_eigen_3x3, Mat3, Vec3};
use crate::metric::HermitianMetric;
use crate::pauli::{compose, Mat2, PauliForm};
use crate::tol::Tol;

/// One of the six surfaces v^T A v + b.v + c = 0 cut out by the relation.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticSurface {
    pub a: Mat3,
    pub b: Vec3,
    pub c: f64,
    /// Position in the six-quadric family, 1-based.
    pub index: usize,
}

impl QuadraticSurface {
    /// Polynomial value at a point; zero means the point is on the surface.
    pub fn value(&self, v: Vec3) -> f64 {
        let mut s = self.c;
        for i in 0..3 {
            s += self.b[i] * v[i];
            for j in 0..3 {
                s += v[i] * self.a[i][j] * v[j];
            }
        }
        s
    }

    fn coeff_scale(&self) -> f64 {
        mat3_max_abs(&self.a)
            .max(self.b.iter().fold(0.0, |m, x| m.max(x.abs())))
            .max(self.c.abs())
    }
}

/// Euclidean surface taxonomy for a general quadric in R^3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadricClass {
    QuadricCone,
    Hyperboloid1Sheet,
    Hyperboloid2Sheets,
    Ellipsoid,
    EllipticParaboloid,
    HyperbolicParaboloid,
    Cylinder,
    HyperbolicCylinder,
    ParabolicCylinder,
    TwoIntersectingPlanes,
    TwoParallelPlanes,
    SinglePlane,
    Line,
    Point,
    Empty,
    WholeSpace,
}

impl QuadricClass {
    pub fn name(&self) -> &'static str {
        match self {
            QuadricClass::QuadricCone => "quadric_cone",
            QuadricClass::Hyperboloid1Sheet => "hyperboloid_one_sheet",
            QuadricClass::Hyperboloid2Sheets => "hyperboloid_two_sheets",
            QuadricClass::Ellipsoid => "ellipsoid",
            QuadricClass::EllipticParaboloid => "elliptic_paraboloid",
            QuadricClass::HyperbolicParaboloid => "hyperbolic_paraboloid",
            QuadricClass::Cylinder => "cylinder",
            QuadricClass::HyperbolicCylinder => "hyperbolic_cylinder",
            QuadricClass::ParabolicCylinder => "parabolic_cylinder",
            QuadricClass::TwoIntersectingPlanes => "two_intersecting_planes",
            QuadricClass::TwoParallelPlanes => "two_parallel_planes",
            QuadricClass::SinglePlane => "single_plane",
            QuadricClass::Line => "line",
            QuadricClass::Point => "point",
            QuadricClass::Empty => "empty",
            QuadricClass::WholeSpace => "whole_space",
        }
    }
}

/// Affine solution set {particular + span(basis)} of the metric equations.
///
/// Basis directions are unit vectors with d = 0; the particular offset
/// carries the fixed d and is the minimum-norm solution, present exactly
/// when d != 0. `singular_points` lists parameter values t (along the
/// single basis direction, measured from the particular offset) where the
/// family crosses |g| = |d|.
#[derive(Debug, Clone, PartialEq)]
pub struct GSolutionSet {
    pub dimension: usize,
    pub basis: Vec<HermitianMetric>,
    pub particular: Option<HermitianMetric>,
    pub singular_points: Vec<f64>,
}

impl GSolutionSet {
    /// Materialize the member at the given basis coordinates.
    pub fn member(&self, coords: &[f64], tol: &Tol) -> Result<HermitianMetric> {
        if coords.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: coords.len(),
            });
        }
        let (d, mut g_r) = match &self.particular {
            Some(p) => (p.d, p.g_r),
            None => (0.0, [0.0; 3]),
        };
        for (t, b) in coords.iter().zip(&self.basis) {
            for k in 0..3 {
                g_r[k] += t * b.g_r[k];
            }
        }
        HermitianMetric::new(d, g_r, tol)
    }

    /// The singular members themselves, one per entry of `singular_points`.
    pub fn singular_metrics(&self, tol: &Tol) -> Result<Vec<HermitianMetric>> {
        self.singular_points
            .iter()
            .map(|t| self.member(&[*t], tol))
            .collect()
    }
}

fn require_pt(p: &PauliForm, tol: &Tol) -> Result<()> {
    if classify(p, tol).cell == Cell::NotPt {
        return Err(Error::NotPtSymmetric(
            "matrix has complex trace or hr.hi != 0".into(),
        ));
    }
    Ok(())
}

/// The six quadric surfaces in g = (x, y, z) for fixed H and d.
///
/// Surfaces 1..3 are the components of g x (d hi + g x hr) = 0; surfaces
/// 4..6 combine the components of hr x g = d hi with hi.g = 0. Every
/// admissible g lies on all six.
pub fn build_six_quadrics(p: &PauliForm, d: f64, tol: &Tol) -> Result<[QuadraticSurface; 6]> {
    require_pt(p, tol)?;
    let [r1, r2, r3] = p.hr;
    let [i1, i2, i3] = p.hi;
    let q = |a: Mat3, b: Vec3, c: f64, index: usize| QuadraticSurface { a, b, c, index };
    Ok([
        q(
            [
                [0.0, -r2 / 2.0, -r3 / 2.0],
                [-r2 / 2.0, r1, 0.0],
                [-r3 / 2.0, 0.0, r1],
            ],
            [0.0, -d * i3, d * i2],
            0.0,
            1,
        ),
        q(
            [
                [r2, -r1 / 2.0, 0.0],
                [-r1 / 2.0, 0.0, -r3 / 2.0],
                [0.0, -r3 / 2.0, r2],
            ],
            [d * i3, 0.0, -d * i1],
            0.0,
            2,
        ),
        q(
            [
                [r3, 0.0, -r1 / 2.0],
                [0.0, r3, -r2 / 2.0],
                [-r1 / 2.0, -r2 / 2.0, 0.0],
            ],
            [-d * i2, d * i1, 0.0],
            0.0,
            3,
        ),
        q(
            [
                [-i1, -i2 / 2.0, -i3 / 2.0],
                [-i2 / 2.0, 0.0, 0.0],
                [-i3 / 2.0, 0.0, 0.0],
            ],
            [0.0, d * r3, -d * r2],
            i1 * d * d,
            4,
        ),
        q(
            [
                [0.0, -i1 / 2.0, 0.0],
                [-i1 / 2.0, -i2, -i3 / 2.0],
                [0.0, -i3 / 2.0, 0.0],
            ],
            [-d * r3, 0.0, d * r1],
            i2 * d * d,
            5,
        ),
        q(
            [
                [0.0, 0.0, -i1 / 2.0],
                [0.0, 0.0, -i2 / 2.0],
                [-i1 / 2.0, -i2 / 2.0, -i3],
            ],
            [d * r2, -d * r1, 0.0],
            i3 * d * d,
            6,
        ),
    ])
}

/// Classify the zero set of a quadric by rank, signature, and the
/// centered constant, each decided with the scaled zero band.
pub fn classify_quadric(s: &QuadraticSurface, tol: &Tol) -> QuadricClass {
    let scale = s.coeff_scale();
    if tol.is_zero(scale, 1.0) {
        return QuadricClass::WholeSpace;
    }
    let (lam, qv) = sym_eigen_3x3(&s.a);
    // b in the eigenbasis.
    let mut bt = [0.0; 3];
    for i in 0..3 {
        for j in 0..3 {
            bt[i] += qv[j][i] * s.b[j];
        }
    }
    let live: Vec<usize> = (0..3).filter(|i| !tol.is_zero(lam[*i], scale)).collect();
    let rank = live.len();
    // Kernel-aligned linear part survives completion of the square.
    let kernel_b = (0..3)
        .filter(|i| !live.contains(i))
        .any(|i| !tol.is_zero(bt[i], scale));
    // Constant at the center: c - sum b_i^2 / (4 lam_i) over live axes.
    let mut kappa = s.c;
    let mut kappa_scale = s.c.abs();
    for &i in &live {
        let term = bt[i] * bt[i] / (4.0 * lam[i]);
        kappa -= term;
        kappa_scale += term.abs();
    }
    let kappa_zero = tol.is_zero(kappa, kappa_scale.max(scale));
    let pos = live.iter().filter(|i| lam[**i] > 0.0).count();

    match rank {
        3 => {
            // Surface sum lam_i w_i^2 = -kappa.
            let level = -kappa;
            if pos == 3 || pos == 0 {
                let sgn = if pos == 3 { 1.0 } else { -1.0 };
                if kappa_zero {
                    QuadricClass::Point
                } else if level * sgn > 0.0 {
                    QuadricClass::Ellipsoid
                } else {
                    QuadricClass::Empty
                }
            } else {
                let majority = if pos == 2 { 1.0 } else { -1.0 };
                if kappa_zero {
                    QuadricClass::QuadricCone
                } else if level * majority > 0.0 {
                    QuadricClass::Hyperboloid1Sheet
                } else {
                    QuadricClass::Hyperboloid2Sheets
                }
            }
        }
        2 => {
            if kernel_b {
                if pos == 1 {
                    QuadricClass::HyperbolicParaboloid
                } else {
                    QuadricClass::EllipticParaboloid
                }
            } else if pos == 1 {
                if kappa_zero {
                    QuadricClass::TwoIntersectingPlanes
                } else {
                    QuadricClass::HyperbolicCylinder
                }
            } else {
                let sgn = if pos == 2 { 1.0 } else { -1.0 };
                if kappa_zero {
                    QuadricClass::Line
                } else if -kappa * sgn > 0.0 {
                    QuadricClass::Cylinder
                } else {
                    QuadricClass::Empty
                }
            }
        }
        1 => {
            if kernel_b {
                QuadricClass::ParabolicCylinder
            } else {
                let sgn = lam[live[0]].signum();
                if kappa_zero {
                    QuadricClass::SinglePlane
                } else if -kappa * sgn > 0.0 {
                    QuadricClass::TwoParallelPlanes
                } else {
                    QuadricClass::Empty
                }
            }
        }
        _ => {
            // Purely linear data.
            if !tol.is_zero(norm(s.b), scale) {
                QuadricClass::SinglePlane
            } else if tol.is_zero(s.c, scale) {
                QuadricClass::WholeSpace
            } else {
                QuadricClass::Empty
            }
        }
    }
}

/// Real 8-vector of a complex 2x2 matrix, row-major (re, im) pairs.
fn mat2_reals(m: &Mat2) -> [f64; 8] {
    [
        m.e[0][0].re,
        m.e[0][0].im,
        m.e[0][1].re,
        m.e[0][1].im,
        m.e[1][0].re,
        m.e[1][0].im,
        m.e[1][1].re,
        m.e[1][1].im,
    ]
}

fn sigma(k: usize) -> Mat2 {
    let mut hr = [0.0; 3];
    hr[k] = 1.0;
    compose(&PauliForm::traceless(hr, [0.0; 3]))
}

/// Solve H*G = GH for g with the identity coefficient d fixed.
pub fn solve_metrics(p: &PauliForm, d: f64, tol: &Tol) -> Result<GSolutionSet> {
    require_pt(p, tol)?;
    let h = compose(p);
    let columns: Vec<[f64; 8]> = (0..3)
        .map(|k| {
            let s = sigma(k);
            mat2_reals(&(h.adjoint() * s - s * h))
        })
        .collect();
    let c0 = h.adjoint() - h;
    let rhs8 = mat2_reals(&c0);
    let rows: Vec<Vec<f64>> = (0..8)
        .map(|r| columns.iter().map(|c| c[r]).collect())
        .collect();
    let rhs: Vec<f64> = rhs8.iter().map(|x| -d * x).collect();

    let dec = svd(&rows);
    let x = dec.solve_min_norm(&rhs, tol);

    // Consistency of the projected solve; inconsistent only when d != 0.
    let mut residual = 0.0_f64;
    let mut row_norm = 0.0_f64;
    for (row, b) in rows.iter().zip(&rhs) {
        let ax: f64 = row.iter().zip(&x).map(|(a, v)| a * v).sum();
        residual += (ax - b) * (ax - b);
        row_norm += row.iter().map(|a| a * a).sum::<f64>();
    }
    let residual = residual.sqrt();
    let x_norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let b_norm = rhs.iter().map(|v| v * v).sum::<f64>().sqrt();
    let band = tol.band(row_norm.sqrt() * x_norm + b_norm);
    if residual > band {
        debug_assert!(d != 0.0, "homogeneous system cannot be inconsistent");
        return Err(Error::NoSolution(format!(
            "no metric with identity coefficient {d} exists; residual {residual:.3e}"
        )));
    }

    let null = dec.nullspace(tol);
    let dimension = null.len();
    let basis: Vec<HermitianMetric> = null
        .iter()
        .map(|v| HermitianMetric::new(0.0, [v[0], v[1], v[2]], tol))
        .collect::<Result<_>>()?;
    let particular = if d != 0.0 {
        Some(HermitianMetric::new(d, [x[0], x[1], x[2]], tol)?)
    } else {
        None
    };

    // Singular crossings |g(t)|^2 = d^2 along a one-parameter family.
    let mut singular_points = Vec::new();
    if dimension == 1 && d != 0.0 {
        let u = basis[0].g_r;
        let p0 = particular.as_ref().map(|m| m.g_r).unwrap_or([0.0; 3]);
        let qa = dot(u, u);
        let qb = 2.0 * dot(p0, u);
        let qc = dot(p0, p0) - d * d;
        let disc = qb * qb - 4.0 * qa * qc;
        if disc >= 0.0 {
            let root = disc.sqrt();
            // Stable quadratic: avoid cancellation in the small root.
            let q = -0.5 * (qb + qb.signum() * root);
            let mut ts = if qb == 0.0 {
                let t = root / (2.0 * qa);
                vec![-t, t]
            } else {
                vec![q / qa, if q != 0.0 { qc / q } else { 0.0 }]
            };
            ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            if ts.len() == 2 && (ts[1] - ts[0]).abs() <= tol.band(ts[0].abs().max(1.0)) {
                ts.pop();
            }
            singular_points = ts;
        }
    }

    Ok(GSolutionSet {
        dimension,
        basis,
        particular,
        singular_points,
    })
}

/// Values of the six quadric polynomials at the metric's g vector.
///
/// All six vanish for every admissible metric; away from a thin
/// degenerate locus the converse holds as well.
pub fn surface_residuals(
    p: &PauliForm,
    d: f64,
    g: &HermitianMetric,
    tol: &Tol,
) -> Result<[f64; 6]> {
    let quadrics = build_six_quadrics(p, d, tol)?;
    let mut out = [0.0; 6];
    for (slot, s) in out.iter_mut().zip(&quadrics) {
        *slot = s.value(g.g_r);
    }
    Ok(out)
}
