//! Complex 2×2 matrix algebra and the line-matrix primitives.
//!
//! An `SL(2,C)` matrix acts on upper half-space `H^3` as an orientation
//! preserving isometry. A *line matrix* is a trace-zero `SL(2,C)` element; it
//! squares to `-I` and represents a half-turn about an oriented geodesic. Two
//! oriented geodesics have a *complex distance* `μ` (distance + i·angle)
//! recovered from their line matrices `A`, `B` by `cosh μ = -tr(AB)/2`.
//!
//! A non-parabolic isometry `A` has a *displacement* `δ(A)` (translation
//! length + i·rotation angle along its axis) with `2 cosh δ = tr²(A) - 2`,
//! and the line matrix of its axis is `Ã = (A - A⁻¹) / (2i sinh(δ/2))`.

use num_complex::Complex;

use crate::{Error, Result};

/// Complex scalar with double-precision components. Both components of every
/// value produced by this module are finite; operations that could produce
/// NaN/Inf return an error instead.
pub type ComplexScalar = Complex<f64>;

/// Structural tolerance: membership checks such as `tr = 0` or `A² = -I`.
pub const STRUCTURAL_TOL: f64 = 1e-10;
/// Algebraic tolerance: closed-form identities such as `det = 1`.
pub const ALGEBRAIC_TOL: f64 = 1e-12;

/// Tolerance configuration shared by the checked operations. The defaults are
/// the module constants; tests reference them symbolically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Membership checks (line-matrix trace, `A² = -I`, unimodularity gate).
    pub structural: f64,
    /// Tight algebraic identities (`det = 1` after construction).
    pub algebraic: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            structural: STRUCTURAL_TOL,
            algebraic: ALGEBRAIC_TOL,
        }
    }
}

/// Dense 2×2 complex matrix, row-major `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2C {
    pub a: ComplexScalar,
    pub b: ComplexScalar,
    pub c: ComplexScalar,
    pub d: ComplexScalar,
}

impl Mat2C {
    pub const IDENTITY: Mat2C = Mat2C {
        a: Complex::new(1.0, 0.0),
        b: Complex::new(0.0, 0.0),
        c: Complex::new(0.0, 0.0),
        d: Complex::new(1.0, 0.0),
    };

    pub fn new(a: ComplexScalar, b: ComplexScalar, c: ComplexScalar, d: ComplexScalar) -> Self {
        Mat2C { a, b, c, d }
    }

    pub fn diag(x: ComplexScalar, y: ComplexScalar) -> Self {
        Mat2C::new(x, Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), y)
    }

    pub fn trace(&self) -> ComplexScalar {
        self.a + self.d
    }

    pub fn det(&self) -> ComplexScalar {
        self.a * self.d - self.b * self.c
    }

    /// Adjugate; equals the inverse for unimodular matrices.
    pub fn adjugate(&self) -> Self {
        Mat2C::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn scale(&self, k: ComplexScalar) -> Self {
        Mat2C::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    pub fn sub(&self, rhs: &Mat2C) -> Self {
        Mat2C::new(self.a - rhs.a, self.b - rhs.b, self.c - rhs.c, self.d - rhs.d)
    }

    /// Largest entry modulus; the norm used by all entrywise checks.
    pub fn max_abs(&self) -> f64 {
        self.a
            .norm()
            .max(self.b.norm())
            .max(self.c.norm())
            .max(self.d.norm())
    }

    pub fn is_finite(&self) -> bool {
        [self.a, self.b, self.c, self.d]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Inverse via the adjugate, valid on the `SL(2,C)` fast path only.
    pub fn inverse(&self) -> Result<Mat2C> {
        self.inverse_with(&Tolerances::default())
    }

    pub fn inverse_with(&self, tol: &Tolerances) -> Result<Mat2C> {
        let err = (self.det() - 1.0).norm();
        if err > tol.structural {
            return Err(Error::NotUnimodular(err));
        }
        Ok(self.adjugate())
    }

    /// Displacement `δ(A)` of a non-parabolic isometry: `2 cosh δ = tr²A - 2`,
    /// normalized so `Re δ ≥ 0`, and `Im δ ∈ [0, π]` when `Re δ = 0`.
    pub fn displacement(&self) -> Result<ComplexScalar> {
        self.displacement_with(&Tolerances::default())
    }

    pub fn displacement_with(&self, tol: &Tolerances) -> Result<ComplexScalar> {
        let t2 = self.trace() * self.trace();
        if (t2 - 4.0).norm() <= tol.structural {
            return Err(Error::ParabolicOrIdentity);
        }
        let w = (t2 - 2.0) / 2.0;
        let delta = acosh_displacement(w);
        if !delta.re.is_finite() || !delta.im.is_finite() {
            return Err(Error::NonFinite("displacement"));
        }
        Ok(delta)
    }

    /// Line matrix of the axis of `A`: `Ã = (A - A⁻¹) / (2i sinh(δ/2))`,
    /// with `δ` the normalized displacement. Exactly conjugation-covariant:
    /// `FAF⁻¹` maps to `F Ã F⁻¹`. `A` and `A⁻¹` determine the same axis and
    /// agree up to the orientation sign (`Ã` vs `-Ã`); the sign cannot also
    /// be pinned, since every `A` is conjugate to `A⁻¹` in `SL(2,C)`.
    pub fn line_matrix(&self) -> Result<Mat2C> {
        self.line_matrix_with(&Tolerances::default())
    }

    pub fn line_matrix_with(&self, tol: &Tolerances) -> Result<Mat2C> {
        let delta = self.displacement_with(tol)?;
        let s = (delta / 2.0).sinh();
        if s.norm() <= tol.structural {
            return Err(Error::DegenerateAxis);
        }
        let inv = self.inverse_with(tol)?;
        let denom = Complex::new(0.0, 2.0) * s;
        Ok(self.sub(&inv).scale(denom.inv()))
    }
}

impl std::ops::Mul for Mat2C {
    type Output = Mat2C;

    fn mul(self, rhs: Mat2C) -> Mat2C {
        Mat2C::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }
}

impl std::ops::Mul for &Mat2C {
    type Output = Mat2C;

    fn mul(self, rhs: &Mat2C) -> Mat2C {
        *self * *rhs
    }
}

/// Matrix product as a named operation.
pub fn mul(a: &Mat2C, b: &Mat2C) -> Mat2C {
    *a * *b
}

/// Complex distance between the oriented lines of two line matrices:
/// `cosh μ = -tr(AB)/2`, with `Re μ ≥ 0` and `Im μ ∈ [0, 2π)`.
pub fn complex_distance(at: &Mat2C, bt: &Mat2C) -> Result<ComplexScalar> {
    complex_distance_with(at, bt, &Tolerances::default())
}

pub fn complex_distance_with(at: &Mat2C, bt: &Mat2C, tol: &Tolerances) -> Result<ComplexScalar> {
    for m in [at, bt] {
        let t = m.trace().norm();
        if t > tol.structural {
            return Err(Error::NotLineMatrix(t));
        }
    }
    let w = -(*at * *bt).trace() / 2.0;
    let mu = acosh_distance(w);
    if !mu.re.is_finite() || !mu.im.is_finite() {
        return Err(Error::NonFinite("complex_distance"));
    }
    Ok(mu)
}

/// Principal complex arccosh: `Re ≥ 0`, `Im ∈ [-π, π]`.
pub fn acosh_principal(w: ComplexScalar) -> ComplexScalar {
    let mut z = w.acosh();
    if z.re < 0.0 {
        z = -z;
    }
    z
}

/// arccosh normalized for displacements: `Re ≥ 0`; for elliptic values
/// (`Re = 0` up to rounding) the imaginary part is folded into `[0, π]`.
pub fn acosh_displacement(w: ComplexScalar) -> ComplexScalar {
    let z = acosh_principal(w);
    if z.re.abs() <= 1e-12 * (1.0 + z.im.abs()) && z.im < 0.0 {
        Complex::new(z.re.abs(), -z.im)
    } else {
        z
    }
}

/// arccosh normalized per the complex-distance convention:
/// `Re ≥ 0`, `Im ∈ [0, 2π)`.
pub fn acosh_distance(w: ComplexScalar) -> ComplexScalar {
    let z = acosh_principal(w);
    if z.im < -1e-15 * (1.0 + z.re.abs()) {
        z + Complex::new(0.0, std::f64::consts::TAU)
    } else {
        Complex::new(z.re, z.im.max(0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> ComplexScalar {
        Complex::new(re, im)
    }

    fn assert_close(m: &Mat2C, n: &Mat2C, tol: f64) {
        assert!(m.sub(n).max_abs() <= tol, "{m:?} != {n:?}");
    }

    #[test]
    fn mul_identity_and_inverse() {
        let i = Mat2C::IDENTITY;
        assert_close(&(i * i), &i, 0.0);

        let a = Mat2C::new(c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        let prod = a * a.inverse().unwrap();
        assert_close(&prod, &Mat2C::IDENTITY, ALGEBRAIC_TOL);
    }

    #[test]
    fn half_turn_squares_to_minus_identity() {
        // N = diag(i, -i), N² = -I
        let n = Mat2C::diag(c(0.0, 1.0), c(0.0, -1.0));
        let n2 = n * n;
        assert_close(&n2, &Mat2C::IDENTITY.scale(c(-1.0, 0.0)), 0.0);
    }

    #[test]
    fn inverse_of_diagonal() {
        let a = Mat2C::diag(c(2.0, 0.0), c(0.5, 0.0));
        let inv = a.inverse().unwrap();
        assert_close(&inv, &Mat2C::diag(c(0.5, 0.0), c(2.0, 0.0)), ALGEBRAIC_TOL);
    }

    #[test]
    fn inverse_rejects_non_unimodular() {
        let a = Mat2C::diag(c(2.0, 0.0), c(2.0, 0.0));
        assert!(matches!(a.inverse(), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn tolerance_record_is_honored() {
        // det = 1 + 1e-8: outside the default structural gate, inside a
        // loosened one
        let a = Mat2C::diag(c(1.0 + 1e-8, 0.0), c(1.0, 0.0));
        assert!(a.inverse().is_err());
        let loose = Tolerances {
            structural: 1e-6,
            ..Default::default()
        };
        assert!(a.inverse_with(&loose).is_ok());
        // a near-parabolic trace: default displacement rejects, a tighter
        // gate lets it through
        let eps = 1e-6_f64;
        let m = Mat2C::diag(c(1.0 + eps, 0.0), c(1.0 / (1.0 + eps), 0.0));
        assert_eq!(m.displacement(), Err(Error::ParabolicOrIdentity));
        let tight = Tolerances {
            structural: 1e-14,
            ..Default::default()
        };
        assert!(m.displacement_with(&tight).is_ok());
    }

    #[test]
    fn inverse_of_generator_swaps_off_diagonal_sign() {
        // S from the generator parametrization at alpha = pi/2, rho = 1:
        // inverse keeps cos²(pi/4) + sin²(pi/4) = 1 and flips the sign of the
        // off-diagonal terms (brute-force 2x2 inversion oracle).
        let (ca, sa) = ((FRAC_PI_2 / 2.0).cos(), (FRAC_PI_2 / 2.0).sin());
        let e = 0.5_f64.exp();
        let s = Mat2C::new(c(ca, 0.0), c(0.0, e * sa), c(0.0, sa / e), c(ca, 0.0));
        let inv = s.inverse().unwrap();
        // brute force: [[d, -b], [-c, a]] / det
        let det = s.det();
        let brute = Mat2C::new(s.d / det, -s.b / det, -s.c / det, s.a / det);
        assert_close(&inv, &brute, ALGEBRAIC_TOL);
        assert_close(&(s * inv), &Mat2C::IDENTITY, ALGEBRAIC_TOL);
    }

    #[test]
    fn displacement_of_pure_rotation() {
        let a = FRAC_PI_2;
        let m = Mat2C::diag(Complex::from_polar(1.0, a / 2.0), Complex::from_polar(1.0, -a / 2.0));
        let d = m.displacement().unwrap();
        assert!((d - c(0.0, a)).norm() < 1e-14, "{d}");
    }

    #[test]
    fn displacement_of_longitude_normal_form() {
        // L = diag(-e^{γ/2}, -e^{-γ/2}) at γ = 1 has tr = -2cosh(1/2) and
        // displacement 1 (the sign is absorbed by tr²).
        let g: f64 = 1.0;
        let m = Mat2C::diag(c(-(g / 2.0).exp(), 0.0), c(-(-g / 2.0).exp(), 0.0));
        let d = m.displacement().unwrap();
        assert!((d - c(1.0, 0.0)).norm() < 1e-14, "{d}");
    }

    #[test]
    fn displacement_loxodromic_real() {
        // diag(2, 1/2): cosh δ = (tr² - 2)/2 = 23/8, δ = 2 ln 2
        let m = Mat2C::diag(c(2.0, 0.0), c(0.5, 0.0));
        let d = m.displacement().unwrap();
        assert!((d - c(2.0 * 2.0_f64.ln(), 0.0)).norm() < 1e-14, "{d}");
    }

    #[test]
    fn displacement_rejects_parabolic_and_identity() {
        let shear = Mat2C::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(shear.displacement(), Err(Error::ParabolicOrIdentity));
        assert_eq!(Mat2C::IDENTITY.displacement(), Err(Error::ParabolicOrIdentity));
    }

    #[test]
    fn cosh_displacement_matches_trace_identity() {
        let m = Mat2C::new(c(1.3, 0.2), c(0.4, -0.1), c(0.2, 0.5), c(1.1, -0.3));
        // make it unimodular: divide by sqrt(det)
        let k = m.det().sqrt().inv();
        let m = m.scale(k);
        let d = m.displacement().unwrap();
        let lhs = d.cosh();
        let rhs = (m.trace() * m.trace() - 2.0) / 2.0;
        assert!((lhs - rhs).norm() <= ALGEBRAIC_TOL * rhs.norm().max(1.0));
    }

    #[test]
    fn line_matrix_of_rotation_normal_form() {
        // L_S = diag(-e^{γ/2}, -e^{-γ/2}), γ = 1  →  diag(i, -i)
        let g: f64 = 1.0;
        let m = Mat2C::diag(c(-(g / 2.0).exp(), 0.0), c(-(-g / 2.0).exp(), 0.0));
        let lm = m.line_matrix().unwrap();
        assert_close(&lm, &Mat2C::diag(c(0.0, 1.0), c(0.0, -1.0)), 1e-12);
    }

    #[test]
    fn line_matrix_structure() {
        let m = Mat2C::new(c(1.3, 0.2), c(0.4, -0.1), c(0.2, 0.5), c(1.1, -0.3));
        let m = m.scale(m.det().sqrt().inv());
        let lm = m.line_matrix().unwrap();
        assert!(lm.trace().norm() <= STRUCTURAL_TOL);
        let sq = lm * lm;
        assert!(sq.sub(&Mat2C::IDENTITY.scale(c(-1.0, 0.0))).max_abs() <= STRUCTURAL_TOL);
        // A and A⁻¹ define the same axis: line matrices agree up to the
        // orientation sign
        let lm_inv = m.inverse().unwrap().line_matrix().unwrap();
        let same = lm.sub(&lm_inv).max_abs();
        let flipped = lm.sub(&lm_inv.scale(c(-1.0, 0.0))).max_abs();
        assert!(same.min(flipped) <= STRUCTURAL_TOL, "{same} {flipped}");
    }

    #[test]
    fn line_matrix_rejects_degenerate_axis() {
        assert!(Mat2C::IDENTITY.line_matrix().is_err());
    }

    #[test]
    fn complex_distance_examples() {
        // S̃, T̃ for the generator axes at complex distance rho
        let lines = |rho: ComplexScalar| {
            let e = (rho / 2.0).exp();
            let st = Mat2C::new(c(0.0, 0.0), -Complex::<f64>::i() * e, -Complex::<f64>::i() / e, c(0.0, 0.0));
            let tt = Mat2C::new(c(0.0, 0.0), -Complex::<f64>::i() / e, -Complex::<f64>::i() * e, c(0.0, 0.0));
            (st, tt)
        };
        let (st, tt) = lines(c(1.0, 0.0));
        let mu = complex_distance(&st, &tt).unwrap();
        assert!((mu - c(1.0, 0.0)).norm() < 1e-14, "{mu}");

        let (st, tt) = lines(c(1.0, 1.0));
        let mu = complex_distance(&st, &tt).unwrap();
        assert!((mu - c(1.0, 1.0)).norm() < 1e-14, "{mu}");

        // coinciding lines: cosh μ = -tr(-I)/2 = 1, μ = 0. The branch point
        // amplifies rounding to ~1e-8 and the [0, 2π) window can wrap a hair
        // of negative angle to just under 2π, so compare mod 2πi.
        let mu = complex_distance(&st, &st).unwrap();
        let wrapped = (mu - c(0.0, std::f64::consts::TAU)).norm();
        assert!(mu.norm().min(wrapped) < 1e-7, "{mu}");
    }

    #[test]
    fn complex_distance_rejects_non_line_matrix() {
        let n = Mat2C::diag(c(0.0, 1.0), c(0.0, -1.0));
        let bad = Mat2C::diag(c(2.0, 0.0), c(0.5, 0.0));
        assert!(matches!(
            complex_distance(&n, &bad),
            Err(Error::NotLineMatrix(_))
        ));
    }

    #[test]
    fn distance_branch_lands_in_zero_two_pi() {
        // cosh μ with Im μ < 0 principal must be shifted by 2π
        let mu0 = c(0.7, -0.9);
        let w = mu0.cosh();
        let mu = acosh_distance(w);
        assert!(mu.re >= 0.0 && mu.im >= 0.0 && mu.im < std::f64::consts::TAU);
        assert!((mu.cosh() - w).norm() < 1e-13);
        // and a value already in range is preserved
        let mu1 = c(0.7, 0.9);
        let mu = acosh_distance(mu1.cosh());
        assert!((mu - mu1).norm() < 1e-13);
        let _ = PI;
    }
}
