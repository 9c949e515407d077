//! JSON schemas for matrices, metrics, and surfaces.
//!
//! Matrices are accepted in two forms: explicit entries
//! {"entries": [[[re,im],[re,im]],[[re,im],[re,im]]]} or coefficient form
//! {"pauli": {"h0": [re,im], "hR": [x,y,z], "hI": [x,y,z]}}. Writers emit
//! the coefficient form. Surfaces are {"A": 3x3, "b": 3-vector, "c": real}
//! with b and c optional.

use crate::error::{Error, Result};
use crate::inverse::QuadraticSurface;
use crate::linalg::{Mat3, Vec3};
use crate::pauli::{compose, decompose, Mat2, PauliForm};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

#[derive(Debug, Serialize, Deserialize)]
struct PauliJson {
    h0: [f64; 2],
    #[serde(rename = "hR")]
    h_r: Vec3,
    #[serde(rename = "hI")]
    h_i: Vec3,
}

#[derive(Debug, Serialize, Deserialize)]
struct MatrixJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    entries: Option<[[[f64; 2]; 2]; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pauli: Option<PauliJson>,
}

/// Parse a matrix from either accepted schema.
pub fn read_matrix(text: &str) -> Result<Mat2> {
    let parsed: MatrixJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
    match (parsed.entries, parsed.pauli) {
        (Some(e), None) => {
            let mut m = Mat2::zero();
            for i in 0..2 {
                for j in 0..2 {
                    m.e[i][j] = Complex64::new(e[i][j][0], e[i][j][1]);
                }
            }
            if !m.is_finite() {
                return Err(Error::InvalidInput("non-finite matrix entry".into()));
            }
            Ok(m)
        }
        (None, Some(p)) => {
            let form = PauliForm::new(p.h0[0], p.h0[1], p.h_r, p.h_i);
            if !form.is_finite() {
                return Err(Error::InvalidInput("non-finite coefficient".into()));
            }
            Ok(compose(&form))
        }
        (Some(_), Some(_)) => Err(Error::Parse(
            "matrix JSON must have exactly one of \"entries\" or \"pauli\"".into(),
        )),
        (None, None) => Err(Error::Parse(
            "matrix JSON needs an \"entries\" or \"pauli\" key".into(),
        )),
    }
}

/// Parse straight to coefficient form.
pub fn read_pauli(text: &str) -> Result<PauliForm> {
    decompose(&read_matrix(text)?)
}

/// Serialize a matrix in the coefficient schema.
pub fn pauli_to_json(p: &PauliForm) -> serde_json::Value {
    json!({
        "pauli": {
            "h0": [p.h0_re, p.h0_im],
            "hR": p.hr,
            "hI": p.hi,
        }
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct SurfaceJson {
    #[serde(rename = "A")]
    a: Mat3,
    #[serde(default)]
    b: Option<Vec3>,
    #[serde(default)]
    c: Option<f64>,
    #[serde(default)]
    index: Option<usize>,
}

/// Parse a quadric surface {"A", "b"?, "c"?}; the matrix is symmetrized.
pub fn read_surface(text: &str) -> Result<QuadraticSurface> {
    let parsed: SurfaceJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("surface JSON: {e}")))?;
    let mut a = parsed.a;
    for i in 0..3 {
        for j in 0..3 {
            if !a[i][j].is_finite() {
                return Err(Error::InvalidInput("non-finite surface entry".into()));
            }
        }
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            let m = (a[i][j] + a[j][i]) / 2.0;
            a[i][j] = m;
            a[j][i] = m;
        }
    }
    let b = parsed.b.unwrap_or([0.0; 3]);
    let c = parsed.c.unwrap_or(0.0);
    if b.iter().any(|x| !x.is_finite()) || !c.is_finite() {
        return Err(Error::InvalidInput("non-finite surface entry".into()));
    }
    Ok(QuadraticSurface {
        a,
        b,
        c,
        index: parsed.index.unwrap_or(0),
    })
}

pub fn surface_to_json(s: &QuadraticSurface) -> serde_json::Value {
    json!({
        "index": s.index,
        "A": s.a,
        "b": s.b,
        "c": s.c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_entry_schema() {
        let m = read_matrix(r#"{"entries": [[[3,0],[1,-2]],[[1,2],[3,0]]]}"#).unwrap();
        let p = decompose(&m).unwrap();
        assert_eq!(p.h0_re, 3.0);
        assert_eq!(p.hr, [1.0, 2.0, 0.0]);
        assert_eq!(p.hi, [0.0, 0.0, 0.0]);
    }

    #[test]
    fn reads_pauli_schema_and_round_trips() {
        let text =
            r#"{"pauli": {"h0": [0.5, 0.0], "hR": [1.0, 2.0, 0.0], "hI": [0.0, -1.0, 1.0]}}"#;
        let p = read_pauli(text).unwrap();
        assert_eq!(p.hr, [1.0, 2.0, 0.0]);
        let emitted = pauli_to_json(&p).to_string();
        let back = read_pauli(&emitted).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rejects_bad_schemas() {
        assert!(matches!(read_matrix("{}"), Err(Error::Parse(_))));
        assert!(matches!(read_matrix("not json"), Err(Error::Parse(_))));
        assert!(matches!(
            read_matrix(
                r#"{"entries": [[[1,0],[0,0]],[[0,0],[1,0]]], "pauli": {"h0":[0,0],"hR":[0,0,0],"hI":[0,0,0]}}"#
            ),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn surface_parsing_symmetrizes_and_defaults() {
        let s = read_surface(r#"{"A": [[1,2,0],[0,1,0],[0,0,1]]}"#).unwrap();
        assert_eq!(s.a[0][1], 1.0);
        assert_eq!(s.a[1][0], 1.0);
        assert_eq!(s.b, [0.0; 3]);
        assert_eq!(s.c, 0.0);
        let s =
            read_surface(r#"{"A": [[1,0,0],[0,1,0],[0,0,1]], "b": [1,2,3], "c": -1.0}"#).unwrap();
        assert_eq!(s.b, [1.0, 2.0, 3.0]);
        assert_eq!(s.c, -1.0);
    }
}
