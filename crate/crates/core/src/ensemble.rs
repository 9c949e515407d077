//! Solution spaces of H*G = GH for a fixed Hermitian metric G.
//!
//! With (a, b, c) = g and d the identity coefficient of G, the relation
//! H*G = GH reduces to linear conditions on the coefficient 6-vector
//! X = (hr, hi), while h0_re stays free. The conditions assemble into a
//! symmetric 6x6 matrix M with M X = 0. Away from the boundary
//! |d| = |g| the nullspace is 3-dimensional and all members are
//! PT-symmetric; on the boundary it is 4-dimensional and PT symmetry
//! survives exactly on the slice hi.g = 0.
//!
//! Each cell admits a closed-form spanning set in which every free
//! parameter is one of the coefficients of H; those spans are what the
//! quadric module differentiates. The numeric nullspace is kept as an
//! independent route to the same space.

use crate::error::{Error, Result};
use crate::linalg::{cross, dot, norm, svd, Vec3};
use crate::metric::{HermitianMetric, MetricCell};
use crate::pauli::{compose, PauliForm};
use crate::tol::Tol;

/// The symmetric 6x6 matrix whose kernel is the admissible (hr, hi) space.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintMatrix {
    pub m: [[f64; 6]; 6],
}

/// Assemble M from the metric coefficients.
///
/// Blocks, with K the cross-product matrix of g:
/// top-left |g|^2 I - g g^T, top-right -d K, bottom-left d K,
/// bottom-right d^2 I - g g^T.
pub fn build_constraint_matrix(g: &HermitianMetric) -> Result<ConstraintMatrix> {
    if g.cell == MetricCell::ScalarG {
        return Err(Error::ScalarGUnsupported);
    }
    let [a, b, c] = g.g_r;
    let d = g.d;
    let gg = dot(g.g_r, g.g_r);
    let mut m = [[0.0; 6]; 6];
    for i in 0..3 {
        for j in 0..3 {
            let outer = g.g_r[i] * g.g_r[j];
            m[i][j] = if i == j { gg - outer } else { -outer };
            m[i + 3][j + 3] = if i == j { d * d - outer } else { -outer };
        }
    }
    let k = [[0.0, -c, b], [c, 0.0, -a], [-b, a, 0.0]];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j + 3] = -d * k[i][j];
            m[i + 3][j] = d * k[i][j];
        }
    }
    Ok(ConstraintMatrix { m })
}

impl ConstraintMatrix {
    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.m.iter().map(|r| r.to_vec()).collect()
    }

    /// Orthonormal basis of the kernel of M.
    pub fn nullspace(&self, tol: &Tol) -> Vec<[f64; 6]> {
        svd(&self.rows())
            .nullspace(tol)
            .into_iter()
            .map(|v| {
                let mut x = [0.0; 6];
                x.copy_from_slice(&v);
                x
            })
            .collect()
    }
}

/// Trace and invertibility regime of the metric, which fixes the shape of
/// the solution space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Invertible with Tr G != 0: three PT members, one S1 and two S4.
    NonzeroTrace,
    /// Invertible with Tr G = 0: three PT members, one S1 and two S2.
    Traceless,
    /// |d| = |g| != 0: four members, PT on the slice hi.g = 0.
    Singular,
    /// G proportional to the identity: all Hermitian H, spanned by s1..s3.
    Scalar,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::NonzeroTrace => "invertible",
            Regime::Traceless => "invertible_traceless",
            Regime::Singular => "singular",
            Regime::Scalar => "scalar",
        }
    }
}

/// Closed-form spanning set of the admissible coefficient space.
///
/// Each vector is (hr, hi) laid out as 6 entries, and each free parameter
/// is literally one coefficient of H (see `param_names`). The trace
/// coefficient h0_re is always an extra free parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleBasis {
    pub metric: HermitianMetric,
    pub regime: Regime,
    pub vectors: Vec<[f64; 6]>,
    /// Which coefficient of H each basis vector carries.
    pub param_names: Vec<&'static str>,
    /// Name of the free trace coefficient.
    pub trace_param: &'static str,
    /// For the unrestricted singular basis: the last parameter must equal
    /// this functional of the first three for H to be PT-symmetric.
    pub pt_constraint: Option<[f64; 3]>,
}

fn vec6(hr: Vec3, hi: Vec3) -> [f64; 6] {
    [hr[0], hr[1], hr[2], hi[0], hi[1], hi[2]]
}

fn invertible_vectors(cell: MetricCell, g: Vec3, d: f64) -> (Vec<[f64; 6]>, Vec<&'static str>) {
    let [a, b, c] = g;
    match cell {
        MetricCell::G1 => (
            vec![
                vec6([a / c, b / c, 1.0], [0.0; 3]),
                vec6([-d / c, -b * d / (a * c), 0.0], [-b / a, 1.0, 0.0]),
                vec6([0.0, -d / a, 0.0], [-c / a, 0.0, 1.0]),
            ],
            vec!["h3_re", "h2_im", "h3_im"],
        ),
        MetricCell::G2 => (
            vec![
                vec6([0.0, b / c, 1.0], [0.0; 3]),
                vec6([0.0, d / c, 0.0], [1.0, 0.0, 0.0]),
                vec6([d / b, 0.0, 0.0], [0.0, -c / b, 1.0]),
            ],
            vec!["h3_re", "h1_im", "h3_im"],
        ),
        MetricCell::G3 => (
            vec![
                vec6([a / c, 0.0, 1.0], [0.0; 3]),
                vec6([-d / c, 0.0, 0.0], [0.0, 1.0, 0.0]),
                vec6([0.0, -d / a, 0.0], [-c / a, 0.0, 1.0]),
            ],
            vec!["h3_re", "h2_im", "h3_im"],
        ),
        MetricCell::G4 => (
            vec![
                vec6([a / b, 1.0, 0.0], [0.0; 3]),
                vec6([0.0, 0.0, d / a], [-b / a, 1.0, 0.0]),
                vec6([d / b, 0.0, 0.0], [0.0, 0.0, 1.0]),
            ],
            vec!["h2_re", "h2_im", "h3_im"],
        ),
        MetricCell::G5 => (
            vec![
                vec6([1.0, 0.0, 0.0], [0.0; 3]),
                vec6([0.0, 0.0, d / a], [0.0, 1.0, 0.0]),
                vec6([0.0, -d / a, 0.0], [0.0, 0.0, 1.0]),
            ],
            vec!["h1_re", "h2_im", "h3_im"],
        ),
        MetricCell::G6 => (
            vec![
                vec6([0.0, 1.0, 0.0], [0.0; 3]),
                vec6([0.0, 0.0, -d / b], [1.0, 0.0, 0.0]),
                vec6([d / b, 0.0, 0.0], [0.0, 0.0, 1.0]),
            ],
            vec!["h2_re", "h1_im", "h3_im"],
        ),
        MetricCell::G7 => (
            vec![
                vec6([0.0, 0.0, 1.0], [0.0; 3]),
                vec6([0.0, d / c, 0.0], [1.0, 0.0, 0.0]),
                vec6([-d / c, 0.0, 0.0], [0.0, 1.0, 0.0]),
            ],
            vec!["h3_re", "h1_im", "h2_im"],
        ),
        MetricCell::ScalarG => unreachable!("scalar metrics are handled before dispatch"),
    }
}

fn singular_vectors(
    cell: MetricCell,
    g: Vec3,
    d: f64,
) -> (Vec<[f64; 6]>, Vec<&'static str>, [f64; 3]) {
    let [a, b, c] = g;
    match cell {
        MetricCell::G1 => (
            vec![
                vec6([a / c, b / c, 1.0], [0.0; 3]),
                vec6(
                    [a * b / (c * d), (b * b + c * c) / (c * d), 0.0],
                    [1.0, 0.0, 0.0],
                ),
                vec6(
                    [-(a * a + c * c) / (c * d), -a * b / (c * d), 0.0],
                    [0.0, 1.0, 0.0],
                ),
                vec6([b / d, -a / d, 0.0], [0.0, 0.0, 1.0]),
            ],
            vec!["h3_re", "h1_im", "h2_im", "h3_im"],
            [0.0, -a / c, -b / c],
        ),
        MetricCell::G2 => (
            vec![
                vec6([0.0, b / c, 1.0], [0.0; 3]),
                vec6([0.0, d / c, 0.0], [1.0, 0.0, 0.0]),
                vec6([-c / d, 0.0, 0.0], [0.0, 1.0, 0.0]),
                vec6([b / d, 0.0, 0.0], [0.0, 0.0, 1.0]),
            ],
            vec!["h3_re", "h1_im", "h2_im", "h3_im"],
            [0.0, 0.0, -b / c],
        ),
        MetricCell::G3 => (
            vec![
                vec6([a / c, 0.0, 1.0], [0.0; 3]),
                vec6([-d / c, 0.0, 0.0], [0.0, 1.0, 0.0]),
                vec6([0.0, c / d, 0.0], [1.0, 0.0, 0.0]),
                vec6([0.0, -a / d, 0.0], [0.0, 0.0, 1.0]),
            ],
            vec!["h3_re", "h2_im", "h1_im", "h3_im"],
            [0.0, 0.0, -a / c],
        ),
        MetricCell::G4 => (
            vec![
                vec6([a / b, 1.0, 0.0], [0.0; 3]),
                vec6([0.0, 0.0, -b / d], [1.0, 0.0, 0.0]),
                vec6([d / b, 0.0, 0.0], [0.0, 0.0, 1.0]),
                vec6([0.0, 0.0, a / d], [0.0, 1.0, 0.0]),
            ],
            vec!["h2_re", "h1_im", "h3_im", "h2_im"],
            [0.0, -a / b, 0.0],
        ),
        MetricCell::G5 => (
            vec![
                vec6([1.0, 0.0, 0.0], [0.0; 3]),
                vec6([0.0, 0.0, d / a], [0.0, 1.0, 0.0]),
                vec6([0.0, -d / a, 0.0], [0.0, 0.0, 1.0]),
                vec6([0.0, 0.0, 0.0], [1.0, 0.0, 0.0]),
            ],
            vec!["h1_re", "h2_im", "h3_im", "h1_im"],
            [0.0, 0.0, 0.0],
        ),
        MetricCell::G6 => (
            vec![
                vec6([0.0, 1.0, 0.0], [0.0; 3]),
                vec6([0.0, 0.0, -d / b], [1.0, 0.0, 0.0]),
                vec6([d / b, 0.0, 0.0], [0.0, 0.0, 1.0]),
                vec6([0.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
            ],
            vec!["h2_re", "h1_im", "h3_im", "h2_im"],
            [0.0, 0.0, 0.0],
        ),
        MetricCell::G7 => (
            vec![
                vec6([0.0, 0.0, 1.0], [0.0; 3]),
                vec6([0.0, d / c, 0.0], [1.0, 0.0, 0.0]),
                vec6([-d / c, 0.0, 0.0], [0.0, 1.0, 0.0]),
                vec6([0.0, 0.0, 0.0], [0.0, 0.0, 1.0]),
            ],
            vec!["h3_re", "h1_im", "h2_im", "h3_im"],
            [0.0, 0.0, 0.0],
        ),
        MetricCell::ScalarG => unreachable!("scalar metrics are handled before dispatch"),
    }
}

/// Closed-form spanning set for the metric's admissible space.
pub fn closed_form_basis(g: &HermitianMetric, tol: &Tol) -> Result<EnsembleBasis> {
    if g.cell == MetricCell::ScalarG {
        if tol.is_zero(g.d, 1.0) && tol.is_zero(norm(g.g_r), 1.0) {
            return Err(Error::InvalidInput(
                "the zero matrix is not a metric candidate".into(),
            ));
        }
        // Scalar G commutes with everything Hermitian: span s1, s2, s3.
        return Ok(EnsembleBasis {
            metric: *g,
            regime: Regime::Scalar,
            vectors: vec![
                vec6([1.0, 0.0, 0.0], [0.0; 3]),
                vec6([0.0, 1.0, 0.0], [0.0; 3]),
                vec6([0.0, 0.0, 1.0], [0.0; 3]),
            ],
            param_names: vec!["h1_re", "h2_re", "h3_re"],
            trace_param: "k0",
            pt_constraint: None,
        });
    }
    if g.singular {
        let (vectors, param_names, coef) = singular_vectors(g.cell, g.g_r, g.d);
        return Ok(EnsembleBasis {
            metric: *g,
            regime: Regime::Singular,
            vectors,
            param_names,
            trace_param: "m0",
            pt_constraint: Some(coef),
        });
    }
    let (vectors, param_names) = invertible_vectors(g.cell, g.g_r, g.d);
    let regime = if tol.is_zero(g.d, g.coeff_scale()) {
        Regime::Traceless
    } else {
        Regime::NonzeroTrace
    };
    Ok(EnsembleBasis {
        metric: *g,
        regime,
        vectors,
        param_names,
        trace_param: "k0",
        pt_constraint: None,
    })
}

impl EnsembleBasis {
    /// Number of free parameters besides the trace coefficient.
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    fn member_from_coeffs(&self, x: [f64; 6], h0_re: f64) -> PauliForm {
        let hr = [x[0], x[1], x[2]];
        let hi = [x[3], x[4], x[5]];
        // On the singular boundary a general member needs an imaginary
        // trace part fixed by d h0_im = -hi.g; elsewhere it vanishes.
        let h0_im = match self.regime {
            Regime::Singular => -dot(hi, self.metric.g_r) / self.metric.d,
            _ => 0.0,
        };
        PauliForm::new(h0_re, h0_im, hr, hi)
    }

    /// The basis vectors as traceless matrices (imaginary trace part
    /// included for singular general members).
    pub fn matrices(&self) -> Vec<PauliForm> {
        self.vectors
            .iter()
            .map(|&v| self.member_from_coeffs(v, 0.0))
            .collect()
    }

    /// Cell of each basis matrix under the PT partition.
    pub fn member_cells(&self, tol: &Tol) -> Vec<crate::classify::Cell> {
        self.matrices()
            .iter()
            .map(|m| crate::classify::classify(m, tol).cell)
            .collect()
    }

    /// Fold the PT restriction into the basis, leaving three parameters.
    /// Identity on bases that are already PT everywhere.
    pub fn pt_restricted(&self) -> EnsembleBasis {
        let Some(coef) = self.pt_constraint else {
            return self.clone();
        };
        let extra = self.vectors[3];
        let vectors = (0..3)
            .map(|i| {
                let mut v = self.vectors[i];
                for k in 0..6 {
                    v[k] += coef[i] * extra[k];
                }
                v
            })
            .collect();
        EnsembleBasis {
            metric: self.metric,
            regime: self.regime,
            vectors,
            param_names: self.param_names[..3].to_vec(),
            trace_param: self.trace_param,
            pt_constraint: None,
        }
    }

    /// Build the member with the given parameters; `params[0]` is the trace
    /// coefficient and the rest pair with `param_names`.
    pub fn generate(&self, params: &[f64]) -> Result<PauliForm> {
        let expected = 1 + self.vectors.len();
        if params.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: params.len(),
            });
        }
        if params.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite parameter".into()));
        }
        let mut x = [0.0; 6];
        for (p, v) in params[1..].iter().zip(&self.vectors) {
            for k in 0..6 {
                x[k] += p * v[k];
            }
        }
        Ok(self.member_from_coeffs(x, params[0]))
    }
}

/// Frobenius norm of H*G - GH.
pub fn relation_residual(p: &PauliForm, g: &HermitianMetric) -> f64 {
    let h = compose(p);
    let gm = g.matrix();
    (h.adjoint() * gm - gm * h).norm()
}

/// Rows of the exact linear system a metric imposes on a traceless
/// PT-symmetric candidate, unknowns (hr, hi): the vector condition
/// g x hr + d hi = 0 and the scalar condition hi.g = 0.
pub fn traceless_relation_rows(g: &HermitianMetric) -> Vec<Vec<f64>> {
    let [a, b, c] = g.g_r;
    let d = g.d;
    // Cross-product matrix of g acting on hr.
    let k = [[0.0, -c, b], [c, 0.0, -a], [-b, a, 0.0]];
    let mut rows = Vec::with_capacity(4);
    for i in 0..3 {
        let mut row = vec![0.0; 6];
        row[..3].copy_from_slice(&k[i]);
        row[3 + i] = d;
        rows.push(row);
    }
    rows.push(vec![0.0, 0.0, 0.0, a, b, c]);
    rows
}

/// The traceless matrix pseudo-Hermitian with respect to two
/// non-proportional metrics, unique up to scale. The returned scale
/// convention is hr = d_f g - d_g f and hi = g x f.
pub fn common_pseudo_hermitian(
    g: &HermitianMetric,
    f: &HermitianMetric,
    tol: &Tol,
) -> Result<PauliForm> {
    let u = [g.d, g.g_r[0], g.g_r[1], g.g_r[2]];
    let v = [f.d, f.g_r[0], f.g_r[1], f.g_r[2]];
    let uu: f64 = u.iter().map(|x| x * x).sum();
    let vv: f64 = v.iter().map(|x| x * x).sum();
    let uv: f64 = u.iter().zip(&v).map(|(x, y)| x * y).sum();
    // Proportionality means the 4-vectors have a vanishing cross-Gram.
    let gram = (uu * vv - uv * uv).max(0.0);
    if gram.sqrt() <= tol.band(uu.sqrt() * vv.sqrt()) {
        return Err(Error::ProportionalMetrics);
    }
    let hr = sub_scaled(f.d, g.g_r, g.d, f.g_r);
    let hi = cross(g.g_r, f.g_r);
    Ok(PauliForm::traceless(hr, hi))
}

fn sub_scaled(s1: f64, v1: Vec3, s2: f64, v2: Vec3) -> Vec3 {
    [
        s1 * v1[0] - s2 * v2[0],
        s1 * v1[1] - s2 * v2[1],
        s1 * v1[2] - s2 * v2[2],
    ]
}
