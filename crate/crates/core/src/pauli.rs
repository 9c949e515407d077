//! The Pauli coefficient representation of 2x2 complex matrices.
//!
//! Every 2x2 complex matrix H expands uniquely as
//!
//! ```text
//! H = s0*h0 + s1*h1 + s2*h2 + s3*h3,   hk complex,
//! ```
//!
//! with `s0` the identity and `s1..s3` the Pauli matrices. Splitting each
//! coefficient into real and imaginary parts gives eight real numbers
//! `(h0_re, h0_im, hr, hi)`; the whole crate works in these coordinates.
//! The spectrum and every symmetry question reduce to the two real
//! 3-vectors `hr` and `hi`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{cross, dot, norm, Vec3};
use crate::tol::Tol;

/// Dense 2x2 complex matrix with the handful of operations the crate needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub e: [[Complex64; 2]; 2],
}

impl Mat2 {
    pub fn new(e00: Complex64, e01: Complex64, e10: Complex64, e11: Complex64) -> Self {
        Self {
            e: [[e00, e01], [e10, e11]],
        }
    }

    pub fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self::new(z, z, z, z)
    }

    pub fn identity() -> Self {
        let z = Complex64::new(0.0, 0.0);
        let o = Complex64::new(1.0, 0.0);
        Self::new(o, z, z, o)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(
            self.e[0][0].conj(),
            self.e[1][0].conj(),
            self.e[0][1].conj(),
            self.e[1][1].conj(),
        )
    }

    pub fn trace(&self) -> Complex64 {
        self.e[0][0] + self.e[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(
            self.e[0][0] * s,
            self.e[0][1] * s,
            self.e[1][0] * s,
            self.e[1][1] * s,
        )
    }

    pub fn is_finite(&self) -> bool {
        self.e
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.e[0][0] + rhs.e[0][0],
            self.e[0][1] + rhs.e[0][1],
            self.e[1][0] + rhs.e[1][0],
            self.e[1][1] + rhs.e[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.e[0][0] - rhs.e[0][0],
            self.e[0][1] - rhs.e[0][1],
            self.e[1][0] - rhs.e[1][0],
            self.e[1][1] - rhs.e[1][1],
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.e;
        let b = &rhs.e;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// Pauli coefficients of a 2x2 complex matrix, split into real parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliForm {
    /// Real part of the identity coefficient (half the real trace part).
    pub h0_re: f64,
    /// Imaginary part of the identity coefficient.
    pub h0_im: f64,
    /// Real parts of the three Pauli coefficients.
    pub hr: Vec3,
    /// Imaginary parts of the three Pauli coefficients.
    pub hi: Vec3,
}

impl PauliForm {
    pub fn new(h0_re: f64, h0_im: f64, hr: Vec3, hi: Vec3) -> Self {
        Self {
            h0_re,
            h0_im,
            hr,
            hi,
        }
    }

    /// Purely traceless form from the two coefficient vectors.
    pub fn traceless(hr: Vec3, hi: Vec3) -> Self {
        Self::new(0.0, 0.0, hr, hi)
    }

    pub fn h0(&self) -> Complex64 {
        Complex64::new(self.h0_re, self.h0_im)
    }

    /// Complex Pauli coefficient k = 0..2 (for s1, s2, s3).
    pub fn h(&self, k: usize) -> Complex64 {
        Complex64::new(self.hr[k], self.hi[k])
    }

    /// Complex bilinear square h.h = |hr|^2 - |hi|^2 + 2i hr.hi.
    pub fn h_dot_h(&self) -> Complex64 {
        Complex64::new(
            dot(self.hr, self.hr) - dot(self.hi, self.hi),
            2.0 * dot(self.hr, self.hi),
        )
    }

    /// Determinant in coefficient form: h0^2 - h.h.
    pub fn det(&self) -> Complex64 {
        self.h0() * self.h0() - self.h_dot_h()
    }

    /// Largest absolute coefficient; the natural scale for zero tests.
    pub fn coeff_scale(&self) -> f64 {
        let mut s = self.h0_re.abs().max(self.h0_im.abs());
        for k in 0..3 {
            s = s.max(self.hr[k].abs()).max(self.hi[k].abs());
        }
        s
    }

    pub fn is_finite(&self) -> bool {
        self.h0_re.is_finite()
            && self.h0_im.is_finite()
            && self.hr.iter().all(|x| x.is_finite())
            && self.hi.iter().all(|x| x.is_finite())
    }
}

/// Expand a matrix into its Pauli coefficients.
pub fn decompose(m: &Mat2) -> Result<PauliForm> {
    if !m.is_finite() {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let half = Complex64::new(0.5, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let h0 = (m.e[0][0] + m.e[1][1]) * half;
    let h1 = (m.e[0][1] + m.e[1][0]) * half;
    let h2 = (m.e[0][1] - m.e[1][0]) * half * i;
    let h3 = (m.e[0][0] - m.e[1][1]) * half;
    Ok(PauliForm::new(
        h0.re,
        h0.im,
        [h1.re, h2.re, h3.re],
        [h1.im, h2.im, h3.im],
    ))
}

/// Rebuild the matrix `[[h0 + h3, h1 - i h2], [h1 + i h2, h0 - h3]]`.
pub fn compose(p: &PauliForm) -> Mat2 {
    let h0 = p.h0();
    let h1 = p.h(0);
    let h2 = p.h(1);
    let h3 = p.h(2);
    let i = Complex64::new(0.0, 1.0);
    Mat2::new(h0 + h3, h1 - i * h2, h1 + i * h2, h0 - h3)
}

/// Eigenvalue pair ordered as (h0 - sqrt(h.h), h0 + sqrt(h.h)) with the
/// principal branch of the complex square root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub minus: Complex64,
    pub plus: Complex64,
}

/// Eigenvalues in coefficient form.
pub fn eigenvalues(p: &PauliForm) -> EigenPair {
    let root = p.h_dot_h().sqrt();
    EigenPair {
        minus: p.h0() - root,
        plus: p.h0() + root,
    }
}

/// Normality test: H commutes with its adjoint exactly when hr x hi = 0.
pub fn is_normal(p: &PauliForm, tol: &Tol) -> bool {
    let c = norm(cross(p.hr, p.hi));
    c <= tol.band(norm(p.hr) * norm(p.hi))
}

/// Residuals of the three product identities satisfied by matrices whose
/// traceless part is anti-Hermitian (cells S2 and S3): with
/// `t = Tr(U) Tr(V) / 2 + 2 ui.vi`,
///
/// ```text
/// U V* + V U* = t s0
/// det(U + V)  = det U + det V + t
/// (U + V)(U + V)* = det(U + V) s0
/// ```
///
/// All three are evaluated by direct matrix arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2IdentityReport {
    /// Frobenius deviation of U V* + V U* from t s0.
    pub product_residual: f64,
    /// Deviation of det(U + V) from the coefficient expansion.
    pub det_sum_residual: f64,
    /// Frobenius deviation of (U + V)(U + V)* from det(U + V) s0.
    pub self_product_residual: f64,
    /// det(U + V), for reference.
    pub det_sum: Complex64,
}

/// Check that `p` has vanishing hr and h0 imaginary part, the shape shared
/// by cells S2 and S3.
fn require_anti_hermitian_traceless(p: &PauliForm, tol: &Tol, name: &str) -> Result<()> {
    let s = p.coeff_scale();
    if !tol.is_zero(norm(p.hr), s) || !tol.is_zero(p.h0_im, s) {
        return Err(Error::Domain(format!(
            "{name} is not in S2 or S3: needs hr = 0 and real trace"
        )));
    }
    Ok(())
}

/// Evaluate the S2/S3 product identities for a pair of matrices.
pub fn su2_identities(u: &PauliForm, v: &PauliForm, tol: &Tol) -> Result<Su2IdentityReport> {
    require_anti_hermitian_traceless(u, tol, "first argument")?;
    require_anti_hermitian_traceless(v, tol, "second argument")?;
    let mu = compose(u);
    let mv = compose(v);
    let t = mu.trace() * mv.trace() * Complex64::new(0.5, 0.0)
        + Complex64::new(2.0 * dot(u.hi, v.hi), 0.0);
    let lhs = mu * mv.adjoint() + mv * mu.adjoint();
    let product_residual = (lhs - Mat2::identity().scale(t)).norm();
    let sum = mu + mv;
    let det_sum = sum.det();
    let det_sum_residual = (det_sum - mu.det() - mv.det() - t).norm();
    let self_product = sum * sum.adjoint();
    let self_product_residual = (self_product - Mat2::identity().scale(det_sum)).norm();
    Ok(Su2IdentityReport {
        product_residual,
        det_sum_residual,
        self_product_residual,
        det_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_mat(rng: &mut ChaCha8Rng) -> Mat2 {
        let mut v = [c(0.0, 0.0); 4];
        for z in v.iter_mut() {
            *z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        }
        Mat2::new(v[0], v[1], v[2], v[3])
    }

    #[test]
    fn decompose_identity_and_nilpotent() {
        let p = decompose(&Mat2::identity()).unwrap();
        assert_eq!(p.h0_re, 1.0);
        assert_eq!(p.h0_im, 0.0);
        assert_eq!(p.hr, [0.0; 3]);
        assert_eq!(p.hi, [0.0; 3]);

        // [[0, 1], [0, 0]] has h1 = 1/2 and h2 = i/2.
        let n = Mat2::new(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let p = decompose(&n).unwrap();
        assert_eq!(p.hr, [0.5, 0.0, 0.0]);
        assert_eq!(p.hi, [0.0, 0.5, 0.0]);
    }

    #[test]
    fn decompose_rejects_non_finite() {
        let bad = Mat2::new(c(f64::NAN, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert!(matches!(decompose(&bad), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn round_trip_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let m = random_mat(&mut rng);
            let p = decompose(&m).unwrap();
            let back = compose(&p);
            assert!((m - back).norm() <= 1e-14 * m.norm().max(1.0));
        }
    }

    /// Independent oracle: eigenvalues from the entry-level characteristic
    /// polynomial E^2 - Tr(M) E + det(M) = 0.
    fn entry_eigenvalues(m: &Mat2) -> (Complex64, Complex64) {
        let t = m.trace();
        let d = m.det();
        let disc = (t * t - d.scale(4.0)).sqrt();
        ((t - disc).scale(0.5), (t + disc).scale(0.5))
    }

    #[test]
    fn eigenvalues_match_entry_level_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10_000 {
            let m = random_mat(&mut rng);
            let p = decompose(&m).unwrap();
            let pair = eigenvalues(&p);
            let (o1, o2) = entry_eigenvalues(&m);
            let scale = m.norm().max(1.0);
            // The oracle orders by the same square root branch only up to
            // sign, so compare as unordered pairs.
            let direct = (pair.minus - o1).norm() + (pair.plus - o2).norm();
            let swapped = (pair.minus - o2).norm() + (pair.plus - o1).norm();
            assert!(direct.min(swapped) <= 1e-10 * scale);
        }
    }

    #[test]
    fn eigenvalue_order_follows_principal_branch() {
        // hr = e3 gives the pair (-1, +1) in that order.
        let p = PauliForm::traceless([0.0, 0.0, 1.0], [0.0; 3]);
        let e = eigenvalues(&p);
        assert!((e.minus - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((e.plus - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn real_pair_inside_unit_disc() {
        // hr = e1, hi = t e2 with |t| < 1: spectrum is -+sqrt(1 - t^2).
        let t = 0.75;
        let p = PauliForm::traceless([1.0, 0.0, 0.0], [0.0, t, 0.0]);
        let e = eigenvalues(&p);
        let want = (1.0 - t * t).sqrt();
        assert!((e.plus - c(want, 0.0)).norm() < 1e-14);
        assert!((e.minus - c(-want, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn collapsed_pair_on_light_cone() {
        // hr = e1, hi = e2: h.h = 0, both eigenvalues equal h0.
        let p = PauliForm::new(0.5, 0.0, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let e = eigenvalues(&p);
        assert!((e.minus - e.plus).norm() < 1e-15);
        assert!((e.plus - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn normality_matches_commutator_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let tol = Tol::DEFAULT;
        for k in 0..10_000 {
            // Mix generic matrices with exactly-parallel coefficient pairs.
            let p = if k % 3 == 0 {
                let v = [
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                ];
                let lam: f64 = rng.gen_range(-2.0..2.0);
                PauliForm::new(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    v,
                    [lam * v[0], lam * v[1], lam * v[2]],
                )
            } else {
                decompose(&random_mat(&mut rng)).unwrap()
            };
            let m = compose(&p);
            let comm = (m * m.adjoint() - m.adjoint() * m).norm();
            let commutes = comm <= tol.band(m.norm() * m.norm());
            assert_eq!(
                is_normal(&p, &tol),
                commutes,
                "normality disagrees with commutator at {p:?}"
            );
        }
    }

    #[test]
    fn is_normal_examples() {
        let tol = Tol::DEFAULT;
        let parallel = PauliForm::traceless([1.0, 1.0, 1.0], [2.0, 2.0, 2.0]);
        assert!(is_normal(&parallel, &tol));
        let skew = PauliForm::traceless([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        assert!(!is_normal(&skew, &tol));
    }

    #[test]
    fn su2_identities_on_pauli_pair() {
        // U = i s1, V = i s2: all residuals vanish and det(U + V) = 2.
        let u = PauliForm::traceless([0.0; 3], [1.0, 0.0, 0.0]);
        let v = PauliForm::traceless([0.0; 3], [0.0, 1.0, 0.0]);
        let r = su2_identities(&u, &v, &Tol::DEFAULT).unwrap();
        assert!(r.product_residual <= 1e-12);
        assert!(r.det_sum_residual <= 1e-12);
        assert!(r.self_product_residual <= 1e-12);
        assert!((r.det_sum - c(2.0, 0.0)).norm() <= 1e-12);
    }

    #[test]
    fn su2_identities_reject_s1_member() {
        let u = PauliForm::traceless([1.0, 0.0, 0.0], [0.0; 3]);
        let v = PauliForm::traceless([0.0; 3], [0.0, 1.0, 0.0]);
        assert!(matches!(
            su2_identities(&u, &v, &Tol::DEFAULT),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn su2_identities_hold_on_random_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..10_000 {
            let u = PauliForm::new(
                rng.gen_range(-2.0..2.0),
                0.0,
                [0.0; 3],
                [
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                ],
            );
            let v = PauliForm::new(
                rng.gen_range(-2.0..2.0),
                0.0,
                [0.0; 3],
                [
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                ],
            );
            let r = su2_identities(&u, &v, &Tol::DEFAULT).unwrap();
            assert!(r.product_residual <= 1e-12);
            assert!(r.det_sum_residual <= 1e-12);
            assert!(r.self_product_residual <= 1e-12);
        }
    }
}
