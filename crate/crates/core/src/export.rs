//! Grid sampling and isosurface point extraction for surface data.
//!
//! Fields are evaluated on a regular grid in x-major order and reduced to
//! point clouds by linear interpolation along sign-changing grid edges.
//! The output is meant for external plotting tools; no meshing happens
//! here.

use crate::error::{Error, Result};
use crate::inverse::QuadraticSurface;
use crate::linalg::Vec3;
use crate::quadric::DetForm;
use std::io::Write;

const MAX_POINTS: u64 = 1 << 24;

/// Regular sampling grid: inclusive bounds, per-axis node counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: Vec3,
    pub max: Vec3,
    pub resolution: [usize; 3],
}

impl Default for GridSpec {
    /// The [-3, 3]^3 cube at 64 nodes per axis covers every figure of the
    /// reference parameter values.
    fn default() -> Self {
        GridSpec {
            min: [-3.0; 3],
            max: [3.0; 3],
            resolution: [64; 3],
        }
    }
}

impl GridSpec {
    pub fn new(min: Vec3, max: Vec3, resolution: [usize; 3]) -> Result<Self> {
        let spec = GridSpec {
            min,
            max,
            resolution,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        for k in 0..3 {
            if !self.min[k].is_finite() || !self.max[k].is_finite() {
                return Err(Error::InvalidInput("non-finite grid bound".into()));
            }
            if self.min[k] >= self.max[k] {
                return Err(Error::InvalidInput(format!(
                    "grid min must be below max on axis {k}"
                )));
            }
            if self.resolution[k] < 2 {
                return Err(Error::InvalidInput(format!(
                    "grid needs at least 2 nodes on axis {k}"
                )));
            }
        }
        let points = self.points();
        if points > MAX_POINTS {
            return Err(Error::GridTooLarge {
                points,
                limit: MAX_POINTS,
            });
        }
        Ok(())
    }

    pub fn points(&self) -> u64 {
        self.resolution.iter().map(|n| *n as u64).product()
    }

    /// Node coordinate on one axis.
    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        let n = self.resolution[axis];
        self.min[axis] + (self.max[axis] - self.min[axis]) * i as f64 / (n - 1) as f64
    }
}

/// Field values over a grid, x-major: index (ix * ny + iy) * nz + iz.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub grid: GridSpec,
    pub values: Vec<f64>,
}

/// Evaluate a scalar function on every grid node.
pub fn sample_scalar_field<F: Fn(Vec3) -> f64>(f: F, grid: &GridSpec) -> Result<ScalarField> {
    grid.validate()?;
    let [nx, ny, nz] = grid.resolution;
    let mut values = Vec::with_capacity(nx * ny * nz);
    for ix in 0..nx {
        let x = grid.coord(0, ix);
        for iy in 0..ny {
            let y = grid.coord(1, iy);
            for iz in 0..nz {
                values.push(f([x, y, grid.coord(2, iz)]));
            }
        }
    }
    Ok(ScalarField {
        grid: *grid,
        values,
    })
}

impl ScalarField {
    pub fn from_quadric(s: &QuadraticSurface, grid: &GridSpec) -> Result<ScalarField> {
        sample_scalar_field(|v| s.value(v), grid)
    }

    pub fn from_det_form(f: &DetForm, grid: &GridSpec) -> Result<ScalarField> {
        sample_scalar_field(|v| f.value(v), grid)
    }

    fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        let [_, ny, nz] = self.grid.resolution;
        (ix * ny + iy) * nz + iz
    }

    pub fn value_at(&self, ix: usize, iy: usize, iz: usize) -> f64 {
        self.values[self.index(ix, iy, iz)]
    }

    pub fn node(&self, ix: usize, iy: usize, iz: usize) -> Vec3 {
        [
            self.grid.coord(0, ix),
            self.grid.coord(1, iy),
            self.grid.coord(2, iz),
        ]
    }

    /// All (node, value) rows in storage order.
    pub fn rows(&self) -> Vec<(Vec3, f64)> {
        let [nx, ny, nz] = self.grid.resolution;
        let mut out = Vec::with_capacity(self.values.len());
        for ix in 0..nx {
            for iy in 0..ny {
                for iz in 0..nz {
                    out.push((self.node(ix, iy, iz), self.value_at(ix, iy, iz)));
                }
            }
        }
        out
    }
}

/// Points where the field crosses `level`: nodes that hit it exactly and
/// linear interpolations along strictly sign-changing +x/+y/+z edges.
pub fn extract_isosurface_points(field: &ScalarField, level: f64) -> Vec<Vec3> {
    let [nx, ny, nz] = field.grid.resolution;
    let mut points = Vec::new();
    for ix in 0..nx {
        for iy in 0..ny {
            for iz in 0..nz {
                let f0 = field.value_at(ix, iy, iz) - level;
                let p0 = field.node(ix, iy, iz);
                if f0 == 0.0 {
                    points.push(p0);
                }
                let neighbors = [
                    (ix + 1 < nx).then(|| (field.value_at(ix + 1, iy, iz), 0)),
                    (iy + 1 < ny).then(|| (field.value_at(ix, iy + 1, iz), 1)),
                    (iz + 1 < nz).then(|| (field.value_at(ix, iy, iz + 1), 2)),
                ];
                for n in neighbors.into_iter().flatten() {
                    let (f1, axis) = n;
                    let f1 = f1 - level;
                    if f0 * f1 < 0.0 {
                        let t = f0 / (f0 - f1);
                        let mut p = p0;
                        let step = (field.grid.max[axis] - field.grid.min[axis])
                            / (field.grid.resolution[axis] - 1) as f64;
                        p[axis] += t * step;
                        points.push(p);
                    }
                }
            }
        }
    }
    points
}

/// Fixed-width scientific float with 17 significant digits, enough to
/// round-trip an f64 exactly.
fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV with header x,y,z,f: one row per grid node, storage order.
pub fn write_field_csv<W: Write>(field: &ScalarField, w: &mut W) -> std::io::Result<()> {
    writeln!(w, "x,y,z,f")?;
    for (p, v) in field.rows() {
        writeln!(w, "{},{},{},{}", fmt(p[0]), fmt(p[1]), fmt(p[2]), fmt(v))?;
    }
    Ok(())
}

/// CSV with header x,y,z: one row per extracted point.
pub fn write_points_csv<W: Write>(points: &[Vec3], w: &mut W) -> std::io::Result<()> {
    writeln!(w, "x,y,z")?;
    for p in points {
        writeln!(w, "{},{},{}", fmt(p[0]), fmt(p[1]), fmt(p[2]))?;
    }
    Ok(())
}
