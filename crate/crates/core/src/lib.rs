//! Classification and metric machinery for 2x2 PT-symmetric matrices.
//!
//! The crate works in the coefficient form H = s0 h0 + s.h with h = hr + i hi
//! and answers four questions: where a matrix sits in the PT partition
//! (S1..S4), which matrices are compatible with a fixed Hermitian metric G
//! under H*G = GH, which metrics are compatible with a fixed H, and what the
//! determinant of the compatible family looks like as a quadric surface in
//! the free parameters.

// Index loops over the fixed 2x2/3x3/6-vector shapes mirror the subscript
// algebra they implement; iterator forms would obscure it.
#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod ensemble;
pub mod error;
pub mod export;
pub mod inverse;
pub mod io;
pub mod linalg;
pub mod metric;
pub mod pauli;
pub mod quadric;
pub mod tol;

pub use classify::{classify, Cell, PtClass, Spectrum, Symmetry};
pub use ensemble::{
    build_constraint_matrix, closed_form_basis, common_pseudo_hermitian, relation_residual,
    traceless_relation_rows, ConstraintMatrix, EnsembleBasis, Regime,
};
pub use error::{Error, Result};
pub use export::{
    extract_isosurface_points, sample_scalar_field, write_field_csv, write_points_csv, GridSpec,
    ScalarField,
};
pub use inverse::{
    build_six_quadrics, classify_quadric, solve_metrics, surface_residuals, GSolutionSet,
    QuadraticSurface, QuadricClass,
};
pub use metric::{HermitianMetric, MetricCell};
pub use pauli::{compose, decompose, eigenvalues, EigenPair, Mat2, PauliForm};
pub use quadric::{
    classify_level_set, closed_form_a, det_form, symmetry_report, DetForm, LevelSetClass,
    SymmetryReport,
};
pub use tol::Tol;
