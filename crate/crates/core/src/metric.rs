//! Hermitian metric candidates G = s0*d + s.g with real d and real g.
//!
//! A metric is sorted into one of seven cells by the zero pattern of the
//! vector part (a, b, c) = g, plus a scalar cell for g = 0. Invertibility
//! is governed by det G = d^2 - |g|^2; the boundary |d| = |g| is the
//! singular family, which supports a larger solution space downstream.

use crate::error::{Error, Result};
use crate::linalg::{dot, norm, Vec3};
use crate::pauli::{compose, decompose, Mat2, PauliForm};
use crate::tol::Tol;

/// Zero-pattern cell of the vector part (a, b, c), plus the scalar cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricCell {
    /// a, b, c all nonzero.
    G1,
    /// a = 0; b, c nonzero.
    G2,
    /// b = 0; a, c nonzero.
    G3,
    /// c = 0; a, b nonzero.
    G4,
    /// b = c = 0; a nonzero.
    G5,
    /// a = c = 0; b nonzero.
    G6,
    /// a = b = 0; c nonzero.
    G7,
    /// g = 0: a multiple of the identity.
    ScalarG,
}

impl MetricCell {
    pub fn name(&self) -> &'static str {
        match self {
            MetricCell::G1 => "G1",
            MetricCell::G2 => "G2",
            MetricCell::G3 => "G3",
            MetricCell::G4 => "G4",
            MetricCell::G5 => "G5",
            MetricCell::G6 => "G6",
            MetricCell::G7 => "G7",
            MetricCell::ScalarG => "ScalarG",
        }
    }
}

/// A Hermitian 2x2 matrix in coefficient form, with its cell and
/// singularity already decided.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianMetric {
    /// Identity coefficient, half the trace.
    pub d: f64,
    /// Vector part (a, b, c).
    pub g_r: Vec3,
    pub cell: MetricCell,
    /// True when |d| = |g| within tolerance, i.e. det G = 0.
    pub singular: bool,
}

/// Sign of det G with a scaled zero band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetSign {
    Positive,
    Zero,
    Negative,
}

/// Determinant sign and trace character of a metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricClass {
    pub det: f64,
    pub det_sign: DetSign,
    pub trace_zero: bool,
}

fn classify_cell(g_r: Vec3, scale: f64, tol: &Tol) -> MetricCell {
    let za = tol.is_zero(g_r[0], scale);
    let zb = tol.is_zero(g_r[1], scale);
    let zc = tol.is_zero(g_r[2], scale);
    match (za, zb, zc) {
        (false, false, false) => MetricCell::G1,
        (true, false, false) => MetricCell::G2,
        (false, true, false) => MetricCell::G3,
        (false, false, true) => MetricCell::G4,
        (false, true, true) => MetricCell::G5,
        (true, false, true) => MetricCell::G6,
        (true, true, false) => MetricCell::G7,
        (true, true, true) => MetricCell::ScalarG,
    }
}

impl HermitianMetric {
    /// Build a metric from its coefficients, deciding cell and singularity.
    pub fn new(d: f64, g_r: Vec3, tol: &Tol) -> Result<Self> {
        if !d.is_finite() || g_r.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("metric has non-finite entries".into()));
        }
        let scale = d.abs().max(norm(g_r));
        let cell = classify_cell(g_r, scale, tol);
        let det = d * d - dot(g_r, g_r);
        let singular = tol.is_zero(det, d * d + dot(g_r, g_r));
        Ok(Self {
            d,
            g_r,
            cell,
            singular,
        })
    }

    /// Coefficient view with zero imaginary parts.
    pub fn to_pauli(&self) -> PauliForm {
        PauliForm::new(self.d, 0.0, self.g_r, [0.0; 3])
    }

    /// Dense matrix form.
    pub fn matrix(&self) -> Mat2 {
        compose(&self.to_pauli())
    }

    pub fn det(&self) -> f64 {
        self.d * self.d - dot(self.g_r, self.g_r)
    }

    /// Largest coefficient magnitude.
    pub fn coeff_scale(&self) -> f64 {
        self.d
            .abs()
            .max(self.g_r.iter().fold(0.0_f64, |m, x| m.max(x.abs())))
    }
}

/// Read a metric from a dense matrix, verifying Hermiticity.
pub fn from_matrix(m: &Mat2, tol: &Tol) -> Result<HermitianMetric> {
    let deviation = (*m - m.adjoint()).norm();
    let tolerance = tol.band(m.norm());
    if deviation > tolerance {
        return Err(Error::NotHermitian {
            deviation,
            tolerance,
        });
    }
    let p = decompose(m)?;
    // Hermiticity puts all the weight in (h0_re, hr); drop the roundoff rest.
    HermitianMetric::new(p.h0_re, p.hr, tol)
}

/// Determinant sign (with zero band d^2 + |g|^2) and trace character.
pub fn det_trace_class(g: &HermitianMetric, tol: &Tol) -> MetricClass {
    let det = g.det();
    let band_scale = g.d * g.d + dot(g.g_r, g.g_r);
    let det_sign = if tol.is_zero(det, band_scale) {
        DetSign::Zero
    } else if det > 0.0 {
        DetSign::Positive
    } else {
        DetSign::Negative
    };
    MetricClass {
        det,
        det_sign,
        trace_zero: tol.is_zero(g.d, g.coeff_scale()),
    }
}
