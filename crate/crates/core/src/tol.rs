//! Absolute-plus-relative tolerance used by every zero decision in the crate.

/// Tolerance policy: a quantity `x` with natural scale `s` counts as zero
/// when `|x| <= atol + rtol * |s|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol {
    /// Absolute floor, guards decisions near the origin.
    pub atol: f64,
    /// Relative part, keeps decisions scale invariant.
    pub rtol: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl Tol {
    /// Library default: atol 1e-12, rtol 1e-10.
    pub const DEFAULT: Tol = Tol {
        atol: 1e-12,
        rtol: 1e-10,
    };

    pub fn new(atol: f64, rtol: f64) -> Self {
        Self { atol, rtol }
    }

    /// Width of the zero band at the given scale.
    pub fn band(&self, scale: f64) -> f64 {
        self.atol + self.rtol * scale.abs()
    }

    /// True when `x` is indistinguishable from zero at the given scale.
    pub fn is_zero(&self, x: f64, scale: f64) -> bool {
        x.abs() <= self.band(scale)
    }
}
