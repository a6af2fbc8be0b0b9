//! Hyperbolic volumes of `W_1(α, β)` and `W_2(α, β)` by contour quadrature,
//! the real-integral diagonal form for `W_2`, and Schläfli consistency.
//!
//! The `W_2` volume is
//!
//! ```text
//! Vol = i ∫ log[ 4(z²+a²)(z²+b²) / ((1+a²)(1+b²)(z-z²)²) ] dz/(z²-1)
//! ```
//!
//! from `ζ̄` to `ζ`, where `ζ` is the positive-imaginary root of the
//! ζ-quartic; the `W_1` formula replaces the prefactor 4 by 2 and
//! `(z-z²)²` by `(z²-z³)`. The integrand's logarithm vanishes at both
//! endpoints (they are roots of the defining equation), and the branch is
//! continued along the contour from `log = 0` at `ζ̄`; both are computed
//! with the trig-normalized argument, which stays finite at cusp angles.
//!
//! The default contour is the straight segment. When the segment passes too
//! close to a singular point of the integrand (`z ∈ {-1, 0, 1}`) it is
//! rerouted through the real waypoint `0.5`, which is the deformation
//! continuous with the interior of the hyperbolic region. `W_1(0, 0)` needs
//! this: its root is `ζ = 1 + i` and the straight segment would hit `z = 1`.
//!
//! On the diagonal `α = β` the `W_2` volume has the one-dimensional form
//!
//! ```text
//! Vol = 4 ∫_{a₀}^{a} arctanh( √(7t⁴+22t²-1) / (t(5+t²)) ) dt/(t²+1)
//! ```
//!
//! valid for `0 < α < α₀`, where `a₀² = (√128 - 11)/7` marks the Euclidean
//! degeneration; both routes agree to quadrature precision.

use num_complex::Complex;

use crate::distance_eq::zeta_root;
use crate::holonomy::ConeParams;
use crate::lengths::real_lengths;
use crate::mat2c::ComplexScalar;
use crate::quad::{adaptive_real, integrate_tracked_log};
use crate::{Error, Result};

/// Which formula produced a volume.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VolumeMethod {
    ContourW2,
    ContourW1,
    DiagonalReal,
}

impl VolumeMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            VolumeMethod::ContourW2 => "contour-w2",
            VolumeMethod::ContourW1 => "contour-w1",
            VolumeMethod::DiagonalReal => "diagonal-real",
        }
    }
}

/// A computed volume plus its numerical diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeResult {
    pub volume: f64,
    /// |imaginary part| of the raw contour integral (0 for the diagonal
    /// route); the integral is real up to quadrature noise.
    pub imag_residual: f64,
    pub quadrature_error_estimate: f64,
    /// The ζ-root driving the contour endpoints.
    pub zeta: ComplexScalar,
    pub method: VolumeMethod,
}

/// Quadrature controls. `min_depth` forces that many initial bisection
/// levels on every panel; raising it by one doubles the node count, which is
/// the knob the stability checks use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub tol: f64,
    pub min_depth: u32,
    pub max_depth: u32,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            tol: 1e-12,
            min_depth: 1,
            max_depth: 50,
        }
    }
}

impl QuadratureOptions {
    pub fn with_tol(tol: f64) -> Self {
        QuadratureOptions {
            tol,
            ..Default::default()
        }
    }

    /// Same target with one extra forced bisection level everywhere.
    pub fn doubled(&self) -> Self {
        QuadratureOptions {
            min_depth: self.min_depth + 1,
            ..*self
        }
    }
}

/// Absolute error bound above which a volume is reported as failed.
const QUAD_FAIL: f64 = 1e-9;
/// Real-axis crossing closer than this to `z = 0` or `z = 1` reroutes the
/// contour through the waypoint `0.5` (better conditioned, same homotopy
/// class: the crossing stays inside `(0, 1)` across the hyperbolic region).
const PATH_MARGIN: f64 = 0.02;
/// A singular point actually on the path (within this distance) is fatal.
const PATH_HIT: f64 = 1e-9;

/// `a₀ = cot(α₀/2)`: the diagonal Euclidean degeneration in `cot`-halves.
pub fn euclidean_diagonal_a0() -> f64 {
    ((128.0_f64.sqrt() - 11.0) / 7.0).sqrt()
}

/// `α₀`: the diagonal cone angle where `W_2(α, α)` becomes Euclidean.
pub fn euclidean_diagonal_alpha0() -> f64 {
    2.0 * (1.0 / euclidean_diagonal_a0()).atan()
}

fn log_arg_w2(z: ComplexScalar, params: &ConeParams) -> ComplexScalar {
    let (ca, sa) = (params.half_alpha_cos(), params.half_alpha_sin());
    let (cb, sb) = (params.half_beta_cos(), params.half_beta_sin());
    let num =
        4.0 * (z * z * (sa * sa) + ca * ca) * (z * z * (sb * sb) + cb * cb);
    let d = z - z * z;
    num / (d * d)
}

fn log_arg_w1(z: ComplexScalar, params: &ConeParams) -> ComplexScalar {
    let (ca, sa) = (params.half_alpha_cos(), params.half_alpha_sin());
    let (cb, sb) = (params.half_beta_cos(), params.half_beta_sin());
    let num =
        2.0 * (z * z * (sa * sa) + ca * ca) * (z * z * (sb * sb) + cb * cb);
    num / (z * z - z * z * z)
}

/// Pointwise `W_2` integrand with the principal log branch. Zero at the
/// contour endpoints by construction (the log argument equals 1 there).
pub fn integrand_w2(z: ComplexScalar, params: &ConeParams) -> Result<ComplexScalar> {
    if (z - 1.0).norm() <= 1e-12 || (z + 1.0).norm() <= 1e-12 {
        return Err(Error::PoleHit);
    }
    let g = log_arg_w2(z, params);
    if !(g.re.is_finite() && g.im.is_finite()) || g.norm() == 0.0 {
        return Err(Error::PoleHit);
    }
    Ok(Complex::<f64>::i() * g.ln() / (z * z - 1.0))
}

fn dist_to_segment(p: ComplexScalar, a: ComplexScalar, b: ComplexScalar) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Contour from `ζ̄` to `ζ`. The straight segment crosses the real axis at
/// `Re ζ ∈ (0, 1)` everywhere in the supported range; when the crossing
/// comes close to the log singularities at `z = 0` or `z = 1` (the `W_1`
/// cusp has `ζ = 1 + i` exactly), the contour is routed through the real
/// waypoint `0.5` instead, which is homotopic for crossings inside `(0, 1)`
/// and the continuity-correct deformation at the boundary.
fn plan_contour(zeta: ComplexScalar) -> Result<Vec<ComplexScalar>> {
    let x = zeta.re;
    let path = if (PATH_MARGIN..=1.0 - PATH_MARGIN).contains(&x) {
        vec![zeta.conj(), zeta]
    } else {
        vec![zeta.conj(), Complex::new(0.5, 0.0), zeta]
    };
    for s in [-1.0, 0.0, 1.0] {
        let sp = Complex::new(s, 0.0);
        for seg in path.windows(2) {
            if dist_to_segment(sp, seg[0], seg[1]) <= PATH_HIT {
                return Err(Error::PoleHit);
            }
        }
    }
    Ok(path)
}

fn contour_volume<G>(
    g: G,
    zeta: ComplexScalar,
    method: VolumeMethod,
    opts: &QuadratureOptions,
) -> Result<VolumeResult>
where
    G: Fn(ComplexScalar) -> ComplexScalar,
{
    let path = plan_contour(zeta)?;
    let weight = |z: ComplexScalar| Complex::<f64>::i() / (z * z - 1.0);
    let (integral, err) =
        integrate_tracked_log(&g, &weight, &path, opts.tol, opts.min_depth, opts.max_depth)?;
    let volume = integral.re;
    if err > QUAD_FAIL * (1.0 + volume.abs()) {
        return Err(Error::QuadratureFailure(err));
    }
    if !volume.is_finite() {
        return Err(Error::NonFinite("volume"));
    }
    // the integral is a volume, hence real; a macroscopic imaginary part
    // means the contour or branch went wrong
    if integral.im.abs() > 1e-8 * (1.0 + volume.abs()) {
        return Err(Error::QuadratureFailure(integral.im.abs()));
    }
    Ok(VolumeResult {
        volume,
        imag_residual: integral.im.abs(),
        quadrature_error_estimate: err,
        zeta,
        method,
    })
}

/// Volume of `W_2(α, β)` by the contour formula. Requires `p = 2` and the
/// hyperbolic regime (a positive-imaginary ζ-root).
pub fn volume_w2(params: &ConeParams) -> Result<VolumeResult> {
    volume_w2_with(params, &QuadratureOptions::default())
}

pub fn volume_w2_with(params: &ConeParams, opts: &QuadratureOptions) -> Result<VolumeResult> {
    if params.p() != 2 {
        return Err(Error::UnsupportedP(params.p(), "volume_w2 needs p = 2"));
    }
    let zeta = zeta_root(params)?.root;
    contour_volume(
        |z| log_arg_w2(z, params),
        zeta,
        VolumeMethod::ContourW2,
        opts,
    )
}

/// Volume of `W_1(α, β)` (Whitehead link) by the contour formula.
pub fn volume_w1(params: &ConeParams) -> Result<VolumeResult> {
    volume_w1_with(params, &QuadratureOptions::default())
}

pub fn volume_w1_with(params: &ConeParams, opts: &QuadratureOptions) -> Result<VolumeResult> {
    if params.p() != 1 {
        return Err(Error::UnsupportedP(params.p(), "volume_w1 needs p = 1"));
    }
    let zeta = zeta_root(params)?.root;
    contour_volume(
        |z| log_arg_w1(z, params),
        zeta,
        VolumeMethod::ContourW1,
        opts,
    )
}

/// Volume of `W_2(α, α)` by the real integral over `[a₀, a]`. Valid on the
/// hyperbolic diagonal `0 < α < α₀`.
pub fn volume_w2_diagonal(alpha: f64) -> Result<VolumeResult> {
    volume_w2_diagonal_with(alpha, &QuadratureOptions::default())
}

pub fn volume_w2_diagonal_with(alpha: f64, opts: &QuadratureOptions) -> Result<VolumeResult> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::AngleOutOfRange {
            alpha,
            beta: alpha,
        });
    }
    if alpha >= euclidean_diagonal_alpha0() {
        return Err(Error::OutOfRegime(alpha));
    }
    let a = (alpha / 2.0).cos() / (alpha / 2.0).sin();
    let a0 = euclidean_diagonal_a0();
    let f = |t: f64| {
        let disc = (7.0 * t * t * t * t + 22.0 * t * t - 1.0).max(0.0);
        let x = disc.sqrt() / (t * (5.0 + t * t));
        x.atanh() / (t * t + 1.0)
    };
    let (integral, err) = adaptive_real(&f, a0, a, opts.tol, opts.min_depth, opts.max_depth.max(54));
    let volume = 4.0 * integral;
    let err = 4.0 * err;
    if err > QUAD_FAIL * (1.0 + volume.abs()) {
        return Err(Error::QuadratureFailure(err));
    }
    // ζ of the diagonal quadratic, for reporting parity with the contour route
    let a2 = a * a;
    let delta = 1.0 - 22.0 * a2 - 7.0 * a2 * a2;
    let zeta = Complex::new(1.0 + a2, (-delta).max(0.0).sqrt()) / (2.0 * (3.0 + a2));
    Ok(VolumeResult {
        volume,
        imag_residual: 0.0,
        quadrature_error_estimate: err,
        zeta,
        method: VolumeMethod::DiagonalReal,
    })
}

/// Schläfli consistency residuals at `(α, β)` for `p ∈ {1, 2}`: central
/// difference of the volume against `-r/2` in each angle,
/// `(|∂V/∂α + r_α/2|, |∂V/∂β + r_β/2|)`.
pub fn schlafli_residual(params: &ConeParams, h: f64) -> Result<(f64, f64)> {
    if h.is_nan() || h <= 0.0 || !h.is_finite() {
        return Err(Error::BadStep(h));
    }
    let vol = |alpha: f64, beta: f64| -> Result<f64> {
        let p = ConeParams::new(params.p(), alpha, beta)?;
        let r = match params.p() {
            1 => volume_w1(&p)?,
            2 => volume_w2(&p)?,
            q => return Err(Error::UnsupportedP(q, "schlafli_residual needs p in {1,2}")),
        };
        Ok(r.volume)
    };
    let zeta = zeta_root(params)?.root;
    let (r_alpha, r_beta) = real_lengths(params, zeta)?;
    let (al, be) = (params.alpha(), params.beta());
    let dv_da = (vol(al + h, be)? - vol(al - h, be)?) / (2.0 * h);
    let dv_db = (vol(al, be + h)? - vol(al, be - h)?) / (2.0 * h);
    Ok(((dv_da + r_alpha / 2.0).abs(), (dv_db + r_beta / 2.0).abs()))
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen reference values, full digits
mod tests {
    use super::*;
    use crate::distance_eq::Regime;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    fn c(re: f64, im: f64) -> ComplexScalar {
        Complex::new(re, im)
    }

    #[test]
    fn euclidean_constants() {
        assert!((euclidean_diagonal_a0() - 0.21169671668442515).abs() < 1e-15);
        assert!((euclidean_diagonal_alpha0() - 2.7243592729714960).abs() < 1e-14);
    }

    #[test]
    fn w2_reference_volumes() {
        let cases = [
            (FRAC_PI_2, FRAC_PI_2, 2.6667447834490598),
            (0.0, 0.0, 5.3334895668981196),
            (0.0, FRAC_PI_3, 4.6165594519591366),
            (0.8, 1.9, 2.8574322593727561),
        ];
        for (alpha, beta, want) in cases {
            let params = ConeParams::new(2, alpha, beta).unwrap();
            let v = volume_w2(&params).unwrap();
            assert!(
                (v.volume - want).abs() <= 1e-9,
                "({alpha},{beta}): {} vs {want}",
                v.volume
            );
            assert!(v.imag_residual <= 1e-8 * (1.0 + v.volume));
            assert_eq!(v.method, VolumeMethod::ContourW2);
        }
    }

    #[test]
    fn w1_reference_volumes() {
        let params = ConeParams::new(1, FRAC_PI_2, FRAC_PI_3).unwrap();
        let v = volume_w1(&params).unwrap();
        assert!((v.volume - 2.0860259999552307).abs() <= 1e-9, "{}", v.volume);
        // cusp case reroutes around z = 1 and hits 4·Catalan
        let params = ConeParams::new(1, 0.0, 0.0).unwrap();
        let v = volume_w1(&params).unwrap();
        assert!((v.volume - 3.6638623767088761).abs() <= 1e-9, "{}", v.volume);
        assert!((v.zeta - c(1.0, 1.0)).norm() <= 1e-12);
    }

    #[test]
    fn near_singular_crossing_is_rerouted_consistently() {
        // (0.3, 2.9) is hyperbolic with Re ζ ≈ 0.0067: the crossing sits
        // close to the log singularity at z = 0 and triggers the waypoint
        // reroute, which must agree with the reference value.
        let params = ConeParams::new(2, 0.3, 2.9).unwrap();
        let v = volume_w2(&params).unwrap();
        assert!(
            (v.volume - 0.62867392199380553).abs() <= 1e-9,
            "{}",
            v.volume
        );
    }

    #[test]
    fn volume_is_symmetric_in_angles() {
        let p1 = ConeParams::new(2, 0.7, 2.1).unwrap();
        let v1 = volume_w2(&p1).unwrap().volume;
        let v2 = volume_w2(&p1.swapped()).unwrap().volume;
        assert!((v1 - v2).abs() <= 1e-10);
        let q1 = ConeParams::new(1, 0.6, 1.8).unwrap();
        let w1 = volume_w1(&q1).unwrap().volume;
        let w2 = volume_w1(&q1.swapped()).unwrap().volume;
        assert!((w1 - w2).abs() <= 1e-10);
    }

    #[test]
    fn wrong_p_is_rejected() {
        let params = ConeParams::new(1, 0.5, 0.5).unwrap();
        assert!(matches!(volume_w2(&params), Err(Error::UnsupportedP(1, _))));
        let params = ConeParams::new(2, 0.5, 0.5).unwrap();
        assert!(matches!(volume_w1(&params), Err(Error::UnsupportedP(2, _))));
    }

    #[test]
    fn beyond_euclidean_limit_fails_with_regime() {
        let params = ConeParams::new(2, 2.73, 2.73).unwrap();
        match volume_w2(&params) {
            Err(Error::NoHyperbolicRoot { regime }) => assert_eq!(regime, Regime::Spherical),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagonal_route_matches_contour() {
        let v_diag = volume_w2_diagonal(1.0).unwrap();
        assert!((v_diag.volume - 4.1219539365149772).abs() <= 1e-9, "{}", v_diag.volume);
        let params = ConeParams::new(2, 1.0, 1.0).unwrap();
        let v_cont = volume_w2(&params).unwrap();
        assert!((v_diag.volume - v_cont.volume).abs() <= 1e-8);
        assert_eq!(v_diag.method, VolumeMethod::DiagonalReal);
    }

    #[test]
    fn diagonal_route_regime_checks() {
        assert!(matches!(
            volume_w2_diagonal(2.73),
            Err(Error::OutOfRegime(_))
        ));
        assert!(matches!(
            volume_w2_diagonal(0.0),
            Err(Error::AngleOutOfRange { .. })
        ));
        // vanishing volume at the Euclidean limit
        let v = volume_w2_diagonal(euclidean_diagonal_alpha0() - 1e-3).unwrap();
        assert!(v.volume > 0.0 && v.volume <= 5e-3, "{}", v.volume);
    }

    #[test]
    fn integrand_vanishes_at_zeta() {
        // case 4 near-root: z ≈ ζ for (0, π/3)
        let params = ConeParams::new(2, 0.0, FRAC_PI_3).unwrap();
        let z = c(0.37003947505256342, 1.0911236359717214);
        let v = integrand_w2(z, &params).unwrap();
        assert!(v.norm() <= 1e-6, "{}", v.norm());
    }

    #[test]
    fn integrand_rejects_poles() {
        let params = ConeParams::new(2, FRAC_PI_2, FRAC_PI_2).unwrap();
        assert_eq!(integrand_w2(c(1.0, 0.0), &params).unwrap_err(), Error::PoleHit);
        assert_eq!(integrand_w2(c(-1.0, 0.0), &params).unwrap_err(), Error::PoleHit);
        assert_eq!(integrand_w2(c(0.0, 0.0), &params).unwrap_err(), Error::PoleHit);
    }

    #[test]
    fn schlafli_residuals_small() {
        let params = ConeParams::new(2, FRAC_PI_2, FRAC_PI_2).unwrap();
        let (ra, rb) = schlafli_residual(&params, 1e-4).unwrap();
        assert!(ra <= 1e-5 && rb <= 1e-5, "{ra} {rb}");
        assert!(matches!(
            schlafli_residual(&params, 0.0),
            Err(Error::BadStep(_))
        ));
    }

    #[test]
    fn volume_decreases_in_each_angle() {
        // Schläfli with r > 0 forces strict decrease
        let mut prev = f64::INFINITY;
        for alpha in [0.3, 0.9, 1.5, 2.1] {
            let v = volume_w2(&ConeParams::new(2, alpha, 1.1).unwrap())
                .unwrap()
                .volume;
            assert!(v < prev, "alpha={alpha}: {v} !< {prev}");
            prev = v;
        }
        let mut prev = f64::INFINITY;
        for beta in [0.3, 0.9, 1.5, 2.1] {
            let v = volume_w1(&ConeParams::new(1, 0.7, beta).unwrap())
                .unwrap()
                .volume;
            assert!(v < prev, "beta={beta}: {v} !< {prev}");
            prev = v;
        }
    }

    #[test]
    fn pure_functions_are_thread_safe() {
        // all inputs are immutable values; hammer the pipeline from threads
        let handles: Vec<_> = (0..8)
            .map(|k| {
                std::thread::spawn(move || {
                    let alpha = 0.5 + 0.2 * k as f64;
                    let params = ConeParams::new(2, alpha, 1.3).unwrap();
                    volume_w2(&params).unwrap().volume
                })
            })
            .collect();
        for (k, h) in handles.into_iter().enumerate() {
            let v = h.join().unwrap();
            let alpha = 0.5 + 0.2 * k as f64;
            let again = volume_w2(&ConeParams::new(2, alpha, 1.3).unwrap())
                .unwrap()
                .volume;
            assert_eq!(v, again);
        }
    }

    #[test]
    fn doubling_nodes_is_stable() {
        let params = ConeParams::new(2, 0.8, 1.9).unwrap();
        let opts = QuadratureOptions::default();
        let v1 = volume_w2_with(&params, &opts).unwrap().volume;
        let v2 = volume_w2_with(&params, &opts.doubled()).unwrap().volume;
        assert!((v1 - v2).abs() <= 1e-10, "{}", (v1 - v2).abs());
    }
}
