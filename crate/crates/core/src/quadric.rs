//! Determinant of a metric-compatible family as a quadratic form.
//!
//! On the traceless PT slice det H = -h.h is real and quadratic in the
//! three free parameters, det H(k) = k^T A k. The matrix A is recovered
//! from any 3-parameter basis by polarization, and for every metric cell
//! a closed form of A is known: full rank for invertible G with the sign
//! dichotomy det G > 0 iff A is negative definite, and the rank-1 form
//! -q q^T on the singular boundary. Level sets of the form are the
//! ellipsoid/hyperboloid/plane-pair surfaces this module classifies and
//! samples.

use crate::classify::{classify, Symmetry};
use crate::ensemble::EnsembleBasis;
use crate::error::{Error, Result};
use crate::linalg::{mat3_max_abs, sym_eigen_3x3, Mat3, Vec3};
use crate::metric::{HermitianMetric, MetricCell};
use crate::tol::Tol;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// det H as a quadratic form in the basis parameters, with its spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct DetForm {
    pub a: Mat3,
    pub param_names: Vec<&'static str>,
    /// Eigenvalues of `a` in ascending order.
    pub eigenvalues: [f64; 3],
    pub source_cell: MetricCell,
}

impl DetForm {
    pub fn from_matrix(a: Mat3, param_names: Vec<&'static str>, cell: MetricCell) -> DetForm {
        let (eigenvalues, _) = sym_eigen_3x3(&a);
        DetForm {
            a,
            param_names,
            eigenvalues,
            source_cell: cell,
        }
    }

    /// Value of the form at a parameter point.
    pub fn value(&self, v: Vec3) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += v[i] * self.a[i][j] * v[j];
            }
        }
        s
    }
}

/// Surface type of one level set of the determinant form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelSetClass {
    Ellipsoid,
    Hyperboloid1Sheet,
    Hyperboloid2Sheets,
    QuadricCone,
    TwoParallelPlanes,
    SinglePlane,
    Point,
    Empty,
}

impl LevelSetClass {
    pub fn name(&self) -> &'static str {
        match self {
            LevelSetClass::Ellipsoid => "ellipsoid",
            LevelSetClass::Hyperboloid1Sheet => "hyperboloid_one_sheet",
            LevelSetClass::Hyperboloid2Sheets => "hyperboloid_two_sheets",
            LevelSetClass::QuadricCone => "quadric_cone",
            LevelSetClass::TwoParallelPlanes => "two_parallel_planes",
            LevelSetClass::SinglePlane => "single_plane",
            LevelSetClass::Point => "point",
            LevelSetClass::Empty => "empty",
        }
    }
}

/// Recover A by polarization from a 3-parameter basis:
/// A_ii = det H(e_i), A_ij = (det H(e_i + e_j) - A_ii - A_jj) / 2.
///
/// Singular bases must be PT-restricted first; a 4-parameter basis is
/// rejected.
pub fn det_form(basis: &EnsembleBasis) -> Result<DetForm> {
    if basis.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: basis.dim(),
        });
    }
    let det_at = |v: Vec3| -> Result<f64> {
        let p = basis.generate(&[0.0, v[0], v[1], v[2]])?;
        Ok(p.det().re)
    };
    let mut a = [[0.0; 3]; 3];
    for i in 0..3 {
        let mut e = [0.0; 3];
        e[i] = 1.0;
        a[i][i] = det_at(e)?;
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            let mut e = [0.0; 3];
            e[i] = 1.0;
            e[j] = 1.0;
            let mixed = (det_at(e)? - a[i][i] - a[j][j]) / 2.0;
            a[i][j] = mixed;
            a[j][i] = mixed;
        }
    }
    Ok(DetForm::from_matrix(
        a,
        basis.param_names.clone(),
        basis.metric.cell,
    ))
}

/// The closed form of A for each metric cell, in the same parameter order
/// as `closed_form_basis`. Invertible cells give the full-rank matrices,
/// singular cells give -q q^T, and scalar G gives -I.
pub fn closed_form_a(g: &HermitianMetric) -> Result<Mat3> {
    let [a, b, c] = g.g_r;
    let d = g.d;
    if g.cell == MetricCell::ScalarG {
        if d == 0.0 {
            return Err(Error::InvalidInput(
                "the zero matrix is not a metric candidate".into(),
            ));
        }
        return Ok([[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]);
    }
    if g.singular {
        let q: Vec3 = match g.cell {
            MetricCell::G1 => [d / c, b / c, -a / c],
            MetricCell::G2 => [d / c, b / c, 0.0],
            MetricCell::G3 => [d / c, -a / c, 0.0],
            MetricCell::G4 => [d / b, 0.0, a / b],
            MetricCell::G5 | MetricCell::G6 | MetricCell::G7 => [1.0, 0.0, 0.0],
            MetricCell::ScalarG => unreachable!(),
        };
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = -q[i] * q[j];
            }
        }
        return Ok(m);
    }
    let m = match g.cell {
        MetricCell::G1 => {
            let rr = a * a + b * b;
            [
                [
                    -(a * a + b * b + c * c) / (c * c),
                    rr * d / (a * c * c),
                    b * d / (a * c),
                ],
                [
                    rr * d / (a * c * c),
                    rr * (c * c - d * d) / (a * a * c * c),
                    b * (c * c - d * d) / (a * a * c),
                ],
                [
                    b * d / (a * c),
                    b * (c * c - d * d) / (a * a * c),
                    (a * a + c * c - d * d) / (a * a),
                ],
            ]
        }
        MetricCell::G2 => [
            [-(b * b + c * c) / (c * c), -b * d / (c * c), 0.0],
            [-b * d / (c * c), (c * c - d * d) / (c * c), 0.0],
            [0.0, 0.0, (b * b + c * c - d * d) / (b * b)],
        ],
        MetricCell::G3 => [
            [-(a * a + c * c) / (c * c), a * d / (c * c), 0.0],
            [a * d / (c * c), (c * c - d * d) / (c * c), 0.0],
            [0.0, 0.0, (a * a + c * c - d * d) / (a * a)],
        ],
        MetricCell::G4 => [
            [-(a * a + b * b) / (b * b), 0.0, -a * d / (b * b)],
            [0.0, (a * a + b * b - d * d) / (a * a), 0.0],
            [-a * d / (b * b), 0.0, (b * b - d * d) / (b * b)],
        ],
        MetricCell::G5 => {
            let t = (a * a - d * d) / (a * a);
            [[-1.0, 0.0, 0.0], [0.0, t, 0.0], [0.0, 0.0, t]]
        }
        MetricCell::G6 => {
            let t = (b * b - d * d) / (b * b);
            [[-1.0, 0.0, 0.0], [0.0, t, 0.0], [0.0, 0.0, t]]
        }
        MetricCell::G7 => {
            let t = (c * c - d * d) / (c * c);
            [[-1.0, 0.0, 0.0], [0.0, t, 0.0], [0.0, 0.0, t]]
        }
        MetricCell::ScalarG => unreachable!(),
    };
    Ok(m)
}

/// Classify the level set {v : v^T A v = level}.
///
/// Forms derived from metrics have rank 3 (invertible or scalar G) or
/// rank 1 (singular G); rank 2 and rank 0 inputs are folded onto the
/// nearest of those families so the function stays total.
pub fn classify_level_set(f: &DetForm, level: f64, tol: &Tol) -> LevelSetClass {
    let scale = mat3_max_abs(&f.a).max(level.abs());
    let lam = f.eigenvalues;
    let nonzero: Vec<f64> = lam
        .iter()
        .copied()
        .filter(|l| !tol.is_zero(*l, scale))
        .collect();
    let level_zero = tol.is_zero(level, scale);
    match nonzero.len() {
        3 => {
            let pos = nonzero.iter().filter(|l| **l > 0.0).count();
            if pos == 0 || pos == 3 {
                // Definite: scaled sphere, its apex, or nothing.
                let s = if pos == 0 { -1.0 } else { 1.0 };
                if level_zero {
                    LevelSetClass::Point
                } else if level * s > 0.0 {
                    LevelSetClass::Ellipsoid
                } else {
                    LevelSetClass::Empty
                }
            } else {
                // Mixed signature: the hyperboloid family around its cone.
                let majority = if pos == 2 { 1.0 } else { -1.0 };
                if level_zero {
                    LevelSetClass::QuadricCone
                } else if level * majority > 0.0 {
                    LevelSetClass::Hyperboloid1Sheet
                } else {
                    LevelSetClass::Hyperboloid2Sheets
                }
            }
        }
        2 => {
            // Not producible from a metric; nearest family by sign pattern.
            let pos = nonzero.iter().filter(|l| **l > 0.0).count();
            if pos == 1 {
                if level_zero {
                    LevelSetClass::QuadricCone
                } else {
                    LevelSetClass::Hyperboloid1Sheet
                }
            } else {
                let s = if pos == 0 { -1.0 } else { 1.0 };
                if level_zero {
                    LevelSetClass::Point
                } else if level * s > 0.0 {
                    LevelSetClass::Ellipsoid
                } else {
                    LevelSetClass::Empty
                }
            }
        }
        1 => {
            let s = nonzero[0].signum();
            if level_zero {
                LevelSetClass::SinglePlane
            } else if level * s > 0.0 {
                LevelSetClass::TwoParallelPlanes
            } else {
                LevelSetClass::Empty
            }
        }
        _ => {
            if level_zero {
                LevelSetClass::Point
            } else {
                LevelSetClass::Empty
            }
        }
    }
}

/// Outcome of sampling a level set and classifying each member matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    pub class: LevelSetClass,
    pub expected_broken: bool,
    pub samples: usize,
    pub matching: usize,
    pub fraction: f64,
}

/// Sample `samples` points on the level set det H = level, build each
/// member, classify it, and count agreement with the prediction that the
/// symmetry is broken exactly on the one-sheet hyperboloid.
///
/// The basis must span 3 parameters (PT-restrict singular bases first).
pub fn symmetry_report(
    basis: &EnsembleBasis,
    level: f64,
    samples: usize,
    seed: u64,
    tol: &Tol,
) -> Result<SymmetryReport> {
    let form = det_form(basis)?;
    let class = classify_level_set(&form, level, tol);
    if class == LevelSetClass::Empty {
        return Err(Error::EmptyLevelSet(format!(
            "level {level} misses the range of the determinant form"
        )));
    }
    let expected_broken = class == LevelSetClass::Hyperboloid1Sheet;
    let (lam, q) = sym_eigen_3x3(&form.a);
    let scale = mat3_max_abs(&form.a).max(level.abs());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matching = 0;
    for _ in 0..samples {
        let w = sample_eigen_coords(&lam, level, class, scale, tol, &mut rng);
        // Back to basis coordinates: v = Q w.
        let mut v = [0.0; 3];
        for i in 0..3 {
            for j in 0..3 {
                v[i] += q[i][j] * w[j];
            }
        }
        let p = basis.generate(&[0.0, v[0], v[1], v[2]])?;
        let broken = classify(&p, tol).symmetry == Symmetry::Broken;
        if broken == expected_broken {
            matching += 1;
        }
    }
    Ok(SymmetryReport {
        class,
        expected_broken,
        samples,
        matching,
        fraction: if samples == 0 {
            1.0
        } else {
            matching as f64 / samples as f64
        },
    })
}

/// One point w with sum lam_i w_i^2 = level, drawn in the eigenbasis.
fn sample_eigen_coords(
    lam: &[f64; 3],
    level: f64,
    class: LevelSetClass,
    scale: f64,
    tol: &Tol,
    rng: &mut ChaCha8Rng,
) -> Vec3 {
    match class {
        LevelSetClass::Ellipsoid => {
            // Push a uniform sphere direction onto the ellipsoid.
            let u = unit_vector(rng);
            let mut w = [0.0; 3];
            for i in 0..3 {
                w[i] = u[i] * (level / lam[i]).sqrt();
            }
            w
        }
        LevelSetClass::Hyperboloid1Sheet
        | LevelSetClass::Hyperboloid2Sheets
        | LevelSetClass::QuadricCone => {
            // Normalize the majority sign to +. Indices: p two positive,
            // n one negative after normalization.
            let pos = lam.iter().filter(|l| **l > 0.0).count();
            let flip = if pos == 1 { -1.0 } else { 1.0 };
            let l: Vec<f64> = lam.iter().map(|x| x * flip).collect();
            let lv = level * flip;
            let mut p = Vec::new();
            let mut n = 0;
            for (i, li) in l.iter().enumerate() {
                if *li > 0.0 {
                    p.push(i);
                } else {
                    n = i;
                }
            }
            let phi = rng.gen_range(0.0..std::f64::consts::TAU);
            let mut w = [0.0; 3];
            match class {
                LevelSetClass::Hyperboloid1Sheet => {
                    let t: f64 = rng.gen_range(-1.5..1.5);
                    w[p[0]] = (lv / l[p[0]]).sqrt() * t.cosh() * phi.cos();
                    w[p[1]] = (lv / l[p[1]]).sqrt() * t.cosh() * phi.sin();
                    w[n] = (lv / -l[n]).sqrt() * t.sinh();
                }
                LevelSetClass::Hyperboloid2Sheets => {
                    let t: f64 = rng.gen_range(-1.5..1.5);
                    let sheet = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                    w[p[0]] = (-lv / l[p[0]]).sqrt() * t.sinh() * phi.cos();
                    w[p[1]] = (-lv / l[p[1]]).sqrt() * t.sinh() * phi.sin();
                    w[n] = sheet * (lv / l[n]).sqrt() * t.cosh();
                }
                _ => {
                    let r: f64 = rng.gen_range(-2.0..2.0);
                    w[p[0]] = (-l[n] / l[p[0]]).sqrt() * r.abs() * phi.cos();
                    w[p[1]] = (-l[n] / l[p[1]]).sqrt() * r.abs() * phi.sin();
                    w[n] = r;
                }
            }
            w
        }
        LevelSetClass::TwoParallelPlanes | LevelSetClass::SinglePlane => {
            let k = (0..3)
                .max_by(|i, j| lam[*i].abs().partial_cmp(&lam[*j].abs()).unwrap())
                .unwrap();
            let mut w = [0.0; 3];
            for (i, wi) in w.iter_mut().enumerate() {
                if i != k {
                    *wi = rng.gen_range(-2.0..2.0);
                }
            }
            if !tol.is_zero(level, scale) {
                let side = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                w[k] = side * (level / lam[k]).sqrt();
            }
            w
        }
        LevelSetClass::Point => [0.0; 3],
        LevelSetClass::Empty => unreachable!("empty level set rejected before sampling"),
    }
}

fn unit_vector(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n = crate::linalg::norm(v);
        if n > 1e-3 && n <= 1.0 {
            return crate::linalg::scale(v, 1.0 / n);
        }
    }
}
