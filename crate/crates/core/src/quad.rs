//! Adaptive Gauss–Kronrod quadrature over real intervals and straight
//! complex segments, plus path integration of `weight(z) · log G(z)` with the
//! logarithm branch tracked continuously along the path.

use num_complex::Complex;

use crate::mat2c::ComplexScalar;
use crate::{Error, Result};

// G7-K15 nodes/weights (positive half; node 0 is the midpoint). Gauss nodes
// sit at the even Kronrod indices. Published QUADPACK values, kept verbatim.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
];

fn gk15_segment<F: Fn(ComplexScalar) -> ComplexScalar>(
    f: &F,
    z0: ComplexScalar,
    z1: ComplexScalar,
) -> (ComplexScalar, f64) {
    let mid = (z0 + z1) / 2.0;
    let half = (z1 - z0) / 2.0;
    let fc = f(mid);
    let mut kronrod = fc * WGK[0];
    let mut gauss = fc * WG[0];
    for i in 1..8 {
        let dz = half * XGK[i];
        let s = f(mid - dz) + f(mid + dz);
        kronrod += s * WGK[i];
        if i % 2 == 0 {
            gauss += s * WG[i / 2];
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).norm();
    (value, err)
}

const MAX_PANELS: usize = 200_000;

struct AdaptState<'a, F> {
    f: &'a F,
    tol_per_len: f64,
    min_depth: u32,
    max_depth: u32,
    value: ComplexScalar,
    error: f64,
    panels: usize,
}

fn adapt_recurse<F: Fn(ComplexScalar) -> ComplexScalar>(
    st: &mut AdaptState<'_, F>,
    z0: ComplexScalar,
    z1: ComplexScalar,
    depth: u32,
) {
    let (v, e) = gk15_segment(st.f, z0, z1);
    let budget = st.tol_per_len * (z1 - z0).norm();
    let force_split = depth < st.min_depth;
    if (!force_split && e <= budget) || depth >= st.max_depth || st.panels >= MAX_PANELS {
        st.value += v;
        st.error += e;
        st.panels += 1;
        return;
    }
    let mid = (z0 + z1) / 2.0;
    adapt_recurse(st, z0, mid, depth + 1);
    adapt_recurse(st, mid, z1, depth + 1);
}

/// Adaptive integration along the straight segment `z0 → z1`. Returns the
/// integral and an error estimate; panels that still miss their share of
/// `tol` at `max_depth` just contribute their estimate to the total error.
pub(crate) fn adaptive_segment<F: Fn(ComplexScalar) -> ComplexScalar>(
    f: &F,
    z0: ComplexScalar,
    z1: ComplexScalar,
    tol: f64,
    min_depth: u32,
    max_depth: u32,
) -> (ComplexScalar, f64) {
    let len = (z1 - z0).norm();
    if len == 0.0 {
        return (Complex::new(0.0, 0.0), 0.0);
    }
    let mut st = AdaptState {
        f,
        tol_per_len: tol / len,
        min_depth,
        max_depth,
        value: Complex::new(0.0, 0.0),
        error: 0.0,
        panels: 0,
    };
    adapt_recurse(&mut st, z0, z1, 0);
    (st.value, st.error)
}

/// Adaptive integration of a real function over `[a, b]`.
pub(crate) fn adaptive_real<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    min_depth: u32,
    max_depth: u32,
) -> (f64, f64) {
    let wrap = |z: ComplexScalar| Complex::new(f(z.re), 0.0);
    let (v, e) = adaptive_segment(
        &wrap,
        Complex::new(a, 0.0),
        Complex::new(b, 0.0),
        tol,
        min_depth,
        max_depth,
    );
    (v.re, e)
}

fn finite(z: ComplexScalar) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

const MARCH_MIN_STEP: f64 = 1e-12;
const MARCH_MAX_ARG_STEP: f64 = std::f64::consts::FRAC_PI_2;

fn arg_step(g_prev: ComplexScalar, g_next: ComplexScalar) -> Result<f64> {
    if !finite(g_prev) || !finite(g_next) || g_prev.norm() == 0.0 || g_next.norm() == 0.0 {
        return Err(Error::BranchJump);
    }
    Ok((g_next * g_prev.conj()).arg())
}

/// Bisect for the parameter where `Arg G` wraps across ±π inside `[lo, hi]`.
/// The marcher guarantees the total argument change over the bracket is below
/// π/2, so `Arg G` stays near ±π and flips sign exactly once.
fn locate_cut<G, P>(g: &G, at: &P, lo: f64, hi: f64) -> Result<f64>
where
    G: Fn(ComplexScalar) -> ComplexScalar,
    P: Fn(f64) -> ComplexScalar,
{
    let sign_lo = g(at(lo)).arg().is_sign_positive();
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..60 {
        if hi - lo <= 1e-14 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let a = g(at(mid));
        if !finite(a) || a.norm() == 0.0 {
            return Err(Error::BranchJump);
        }
        if a.arg().is_sign_positive() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Integrate `weight(z) · log G(z)` along the polyline `path`, the log branch
/// continued from the first path point (where `G` is expected to equal `1`,
/// anchoring the log at `0`). The marcher subdivides until the argument of
/// `G` changes by less than π/2 per step; wraps of the principal argument
/// produce piecewise-constant `2πi` offsets on the quadrature panels.
///
/// Errors with `BranchJump` when continuation is ambiguous: `G` vanishes on
/// the path, a step cannot be resolved, or the accumulated winding does not
/// return to zero at the far end (the volume formulas require `log = 0` at
/// both endpoints).
pub(crate) fn integrate_tracked_log<G, W>(
    g: &G,
    weight: &W,
    path: &[ComplexScalar],
    tol: f64,
    min_depth: u32,
    max_depth: u32,
) -> Result<(ComplexScalar, f64)>
where
    G: Fn(ComplexScalar) -> ComplexScalar,
    W: Fn(ComplexScalar) -> ComplexScalar,
{
    assert!(path.len() >= 2, "path needs at least two points");
    let g0 = g(path[0]);
    if !finite(g0) || g0.norm() == 0.0 {
        return Err(Error::BranchJump);
    }
    let mut theta = g0.arg();
    let mut winding: i64 = 0;
    let mut total = Complex::new(0.0, 0.0);
    let mut total_err = 0.0;

    for edge in path.windows(2) {
        let (za, zb) = (edge[0], edge[1]);
        let at = |t: f64| za + (zb - za) * t;
        let entry_winding = winding;
        // (parameter, winding that applies after it)
        let mut cuts: Vec<(f64, i64)> = Vec::new();
        let mut t = 0.0_f64;
        let mut dt = 1.0 / 64.0;
        let mut g_prev = g(at(0.0));
        while t < 1.0 {
            let mut t_next = (t + dt).min(1.0);
            let mut g_next = g(at(t_next));
            let mut d = arg_step(g_prev, g_next)?;
            while d.abs() > MARCH_MAX_ARG_STEP {
                dt *= 0.5;
                if dt < MARCH_MIN_STEP {
                    return Err(Error::BranchJump);
                }
                t_next = (t + dt).min(1.0);
                g_next = g(at(t_next));
                d = arg_step(g_prev, g_next)?;
            }
            theta += d;
            let w_next = ((theta - g_next.arg()) / std::f64::consts::TAU).round() as i64;
            if w_next != winding {
                cuts.push((locate_cut(g, &at, t, t_next)?, w_next));
                winding = w_next;
            }
            t = t_next;
            g_prev = g_next;
            if d.abs() < MARCH_MAX_ARG_STEP / 4.0 {
                dt = (dt * 1.5).min(1.0 / 16.0);
            }
        }
        let mut pieces: Vec<(f64, f64, i64)> = Vec::new();
        let mut t0 = 0.0;
        let mut k = entry_winding;
        for &(tc, kc) in &cuts {
            pieces.push((t0, tc, k));
            t0 = tc;
            k = kc;
        }
        pieces.push((t0, 1.0, k));
        for (ta, tb, kk) in pieces {
            if tb <= ta {
                continue;
            }
            let offset = std::f64::consts::TAU * kk as f64;
            let f = |z: ComplexScalar| {
                let gz = g(z);
                let logg = Complex::new(gz.norm().ln(), gz.arg() + offset);
                weight(z) * logg
            };
            let (v, e) = adaptive_segment(&f, at(ta), at(tb), tol, min_depth, max_depth);
            total += v;
            total_err += e;
        }
    }
    if winding != 0 {
        return Err(Error::BranchJump);
    }
    Ok((total, total_err))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexScalar {
        Complex::new(re, im)
    }

    #[test]
    fn real_quadrature_basics() {
        let (v, e) = adaptive_real(&|x: f64| x * x, 0.0, 1.0, 1e-13, 0, 40);
        assert!((v - 1.0 / 3.0).abs() < 1e-14, "{v} {e}");
        let (v, _) = adaptive_real(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-13, 0, 40);
        assert!((v - 2.0).abs() < 1e-13);
    }

    #[test]
    fn real_quadrature_sqrt_endpoint() {
        // same endpoint behaviour as the diagonal volume integrand
        let (v, _) = adaptive_real(&|x: f64| x.max(0.0).sqrt(), 0.0, 1.0, 1e-13, 0, 52);
        assert!((v - 2.0 / 3.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn segment_quadrature_analytic() {
        // ∫ z² dz from 0 to 1+i = (1+i)³/3
        let f = |z: ComplexScalar| z * z;
        let (v, _) = adaptive_segment(&f, c(0.0, 0.0), c(1.0, 1.0), 1e-13, 0, 40);
        let want = c(1.0, 1.0) * c(1.0, 1.0) * c(1.0, 1.0) / 3.0;
        assert!((v - want).norm() < 1e-13);
    }

    #[test]
    fn doubling_min_depth_is_stable() {
        let f = |z: ComplexScalar| (z * z).exp();
        let (v1, _) = adaptive_segment(&f, c(-0.3, -1.0), c(-0.3, 1.0), 1e-13, 1, 44);
        let (v2, _) = adaptive_segment(&f, c(-0.3, -1.0), c(-0.3, 1.0), 1e-13, 2, 44);
        assert!((v1 - v2).norm() <= 1e-12);
    }

    #[test]
    fn tracked_log_without_crossing_matches_principal() {
        // G stays in the right half plane along the path: principal log is
        // already continuous.
        let g = |z: ComplexScalar| 2.0 + z * 0.1;
        let w = |_z: ComplexScalar| c(1.0, 0.0);
        let path = [c(0.0, -1.0), c(0.0, 1.0)];
        let (v, _) = integrate_tracked_log(&g, &w, &path, 1e-12, 0, 40).unwrap();
        let f = |z: ComplexScalar| (2.0 + z * 0.1).ln();
        let (want, _) = adaptive_segment(&f, path[0], path[1], 1e-12, 0, 40);
        assert!((v - want).norm() < 1e-12);
    }

    #[test]
    fn tracked_log_detects_net_winding() {
        // G = z along a closed square around the origin: winding 1, no
        // continuous branch returns to the anchor value.
        let g = |z: ComplexScalar| z;
        let w = |_z: ComplexScalar| c(1.0, 0.0);
        let path = [
            c(1.0, 0.0),
            c(0.0, 1.0),
            c(-1.0, 0.0),
            c(0.0, -1.0),
            c(1.0, 0.0),
        ];
        let err = integrate_tracked_log(&g, &w, &path, 1e-10, 0, 30).unwrap_err();
        assert_eq!(err, Error::BranchJump);
    }

    #[test]
    fn tracked_log_follows_transient_crossing() {
        // arg G rises above π and comes back: the winding goes 0 → 1 → 0 and
        // the tracked integral matches the closed form
        // ∫₀² i·A·sin(πx/2) dx = i·4A/π.
        let amp = 3.3;
        let g = move |z: ComplexScalar| {
            (Complex::<f64>::i() * amp * (std::f64::consts::FRAC_PI_2 * z).sin()).exp()
        };
        let w = |_z: ComplexScalar| c(1.0, 0.0);
        let path = [c(0.0, 0.0), c(2.0, 0.0)];
        let (v, _) = integrate_tracked_log(&g, &w, &path, 1e-12, 0, 44).unwrap();
        let want = c(0.0, 4.0 * amp / std::f64::consts::PI);
        assert!((v - want).norm() < 1e-10, "{v} vs {want}");
    }

    #[test]
    fn tracked_log_rejects_zero_of_g_on_path() {
        let g = |z: ComplexScalar| z - 0.5;
        let w = |_z: ComplexScalar| c(1.0, 0.0);
        let path = [c(0.0, 0.0), c(1.0, 0.0)];
        let err = integrate_tracked_log(&g, &w, &path, 1e-10, 0, 30);
        assert!(err.is_err());
    }
}
