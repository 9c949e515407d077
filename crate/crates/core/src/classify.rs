//! Partition of 2x2 matrices by PT symmetry and the shape of (hr, hi).
//!
//! A matrix has a real characteristic polynomial exactly when h0 is real
//! and hr.hi = 0. Those matrices split into four cells by which of hr, hi
//! vanish; the spectrum then depends only on |hr| versus |hi|.

use crate::error::{Error, Result};
use crate::linalg::{cross, dot, norm};
use crate::metric::HermitianMetric;
use crate::pauli::{compose, eigenvalues, EigenPair, PauliForm};
use crate::tol::Tol;

/// Cells of the PT partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    /// hr != 0, hi = 0: Hermitian traceless part, real simple spectrum.
    S1,
    /// hr = 0, hi != 0: anti-Hermitian traceless part, conjugate pair.
    S2,
    /// hr = hi = 0: real multiple of the identity.
    S3,
    /// hr != 0, hi != 0 with hr.hi = 0.
    S4,
    /// Complex characteristic polynomial; outside the partition.
    NotPt,
}

impl Cell {
    pub fn name(&self) -> &'static str {
        match self {
            Cell::S1 => "S1",
            Cell::S2 => "S2",
            Cell::S3 => "S3",
            Cell::S4 => "S4",
            Cell::NotPt => "NotPT",
        }
    }
}

/// Whether the real spectrum condition holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    /// Real eigenvalues.
    Unbroken,
    /// Complex conjugate eigenvalues.
    Broken,
    /// Not PT-symmetric, so the dichotomy does not apply.
    NotApplicable,
}

impl Symmetry {
    pub fn name(&self) -> &'static str {
        match self {
            Symmetry::Unbroken => "Unbroken",
            Symmetry::Broken => "Broken",
            Symmetry::NotApplicable => "NotApplicable",
        }
    }
}

/// Spectrum shape for PT-symmetric matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spectrum {
    RealDistinct,
    RealDegenerate,
    ComplexConjugate,
}

impl Spectrum {
    pub fn name(&self) -> &'static str {
        match self {
            Spectrum::RealDistinct => "RealDistinct",
            Spectrum::RealDegenerate => "RealDegenerate",
            Spectrum::ComplexConjugate => "ComplexConjugate",
        }
    }
}

/// Full classification record for one matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtClass {
    pub cell: Cell,
    pub symmetry: Symmetry,
    /// Present exactly when the matrix is PT-symmetric.
    pub spectrum: Option<Spectrum>,
    pub diagonalizable: bool,
    pub eigenvalues: EigenPair,
}

/// Sort a matrix into the PT partition.
pub fn classify(p: &PauliForm, tol: &Tol) -> PtClass {
    let s = p.coeff_scale();
    let nr = norm(p.hr);
    let ni = norm(p.hi);
    let eig = eigenvalues(p);
    let pt = tol.is_zero(p.h0_im, s) && tol.is_zero(dot(p.hr, p.hi), nr * ni);
    if !pt {
        // Non-diagonalizable only on the nilpotent cone h.h = 0, h != 0.
        let h_nonzero = !tol.is_zero(nr.max(ni), s);
        let on_cone = tol.is_zero(p.h_dot_h().norm(), s * s);
        return PtClass {
            cell: Cell::NotPt,
            symmetry: Symmetry::NotApplicable,
            spectrum: None,
            diagonalizable: !(h_nonzero && on_cone),
            eigenvalues: eig,
        };
    }
    let zr = tol.is_zero(nr, s);
    let zi = tol.is_zero(ni, s);
    let (cell, spectrum, diagonalizable) = match (zr, zi) {
        (true, true) => (Cell::S3, Spectrum::RealDegenerate, true),
        (false, true) => (Cell::S1, Spectrum::RealDistinct, true),
        (true, false) => (Cell::S2, Spectrum::ComplexConjugate, true),
        (false, false) => {
            let gap = nr - ni;
            if tol.is_zero(gap, nr.max(ni)) {
                // Equal lengths put h.h at zero: a nontrivial Jordan block.
                (Cell::S4, Spectrum::RealDegenerate, false)
            } else if gap > 0.0 {
                (Cell::S4, Spectrum::RealDistinct, true)
            } else {
                (Cell::S4, Spectrum::ComplexConjugate, true)
            }
        }
    };
    let symmetry = match spectrum {
        Spectrum::ComplexConjugate => Symmetry::Broken,
        _ => Symmetry::Unbroken,
    };
    PtClass {
        cell,
        symmetry,
        spectrum: Some(spectrum),
        diagonalizable,
        eigenvalues: eig,
    }
}

/// Truth record of the structural constraints a compatible metric imposes,
/// split by the cell of the matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredicateReport {
    pub cell: Cell,
    /// Frobenius norm of H*G - GH, the compatibility residual.
    pub compatibility_residual: f64,
    /// S1: the vector parts are parallel (hr x g = 0).
    pub s1_g_parallel_hr: Option<bool>,
    /// S2: the metric is traceless.
    pub s2_traceless_metric: Option<bool>,
    /// S4: hr x g = 0 holds exactly when Tr G = 0.
    pub s4_parallel_iff_traceless: Option<bool>,
    /// S4 with hr, g orthogonal: Tr G != 0 and H diagonalizable.
    pub s4_orthogonal_triple: Option<bool>,
    /// S4 with a non-trivial angle: | |hr x g| - |hi| |d| | / (|hr| |g|).
    pub angle_law_residual: Option<f64>,
}

/// Verify H*G = GH and report which cell-specific constraints hold.
pub fn check_g_propositions(
    p: &PauliForm,
    g: &HermitianMetric,
    tol: &Tol,
) -> Result<PredicateReport> {
    let h = compose(p);
    let gm = g.matrix();
    let residual = (h.adjoint() * gm - gm * h).norm();
    let tolerance = tol.band(h.norm() * gm.norm());
    if residual > tolerance {
        return Err(Error::PairNotCompatible {
            residual,
            tolerance,
        });
    }
    let klass = classify(p, tol);
    let nr = norm(p.hr);
    let ng = norm(g.g_r);
    let cross_norm = norm(cross(p.hr, g.g_r));
    let parallel = tol.is_zero(cross_norm, nr * ng);
    let trace_zero = tol.is_zero(g.d, g.coeff_scale());
    let mut report = PredicateReport {
        cell: klass.cell,
        compatibility_residual: residual,
        s1_g_parallel_hr: None,
        s2_traceless_metric: None,
        s4_parallel_iff_traceless: None,
        s4_orthogonal_triple: None,
        angle_law_residual: None,
    };
    match klass.cell {
        Cell::S1 => report.s1_g_parallel_hr = Some(parallel),
        Cell::S2 => report.s2_traceless_metric = Some(trace_zero),
        Cell::S4 => {
            report.s4_parallel_iff_traceless = Some(parallel == trace_zero);
            let orthogonal = tol.is_zero(dot(p.hr, g.g_r), nr * ng);
            if orthogonal && !tol.is_zero(ng, g.coeff_scale()) {
                report.s4_orthogonal_triple = Some(!trace_zero && klass.diagonalizable);
            }
            if nr > 0.0 && ng > 0.0 {
                let lhs = cross_norm;
                let rhs = norm(p.hi) * g.d.abs();
                report.angle_law_residual = Some((lhs - rhs).abs() / (nr * ng));
            }
        }
        Cell::S3 | Cell::NotPt => {}
    }
    Ok(report)
}
