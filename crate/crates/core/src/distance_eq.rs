//! Complex-distance polynomials of the twist links and root selection.
//!
//! For `W_p(α, β)` set `a = cot(α/2)`, `b = cot(β/2)` and `u = cosh ρ`, where
//! `ρ` is the complex distance between the generator axes. Then `u` solves a
//! polynomial with real coefficients:
//!
//! * `W_1`: `2u³ + 2ab·u² + (a²b² + a² + b² - 1)·u - 2ab = 0`
//! * `W_2`: `4u³ - 4ab·u² + (3a²b² + 3a² + 3b² - 1)·u - ab(a²b² + a² + b² - 3) = 0`
//! * `W_3`: the quintic built in [`quintic_w3`]
//!
//! The length and volume formulas are driven by a second variable `ζ` with
//! `Im ζ > 0`. For `W_2` it solves `4(z²+a²)(z²+b²) = (1+a²)(1+b²)(z-z²)²`;
//! this module always uses the equivalent form multiplied by
//! `sin²(α/2) sin²(β/2)`, which stays finite at cusp angles and reads
//! `4(z² sin²(α/2) + cos²(α/2))(z² sin²(β/2) + cos²(β/2)) = (z-z²)²`.
//! For `W_1` the analogous equation has right-hand side `(z² - z³)` and
//! prefactor 2.
//!
//! Root selection certifies `u`-type candidates against the holonomy oracle
//! (`tr(N·L_s) = 0`) and resolves the genuine two-root ambiguity of the `W_3`
//! quintic toward the geometric branch (largest imaginary part; the other
//! branch integrates, via the Schläfli identity, to a total volume below the
//! two-cusped minimum and cannot be the holonomy of the cone structure).

use num_complex::Complex;

use crate::holonomy::{commutation_residual, ConeParams};
use crate::mat2c::ComplexScalar;
use crate::{Error, Result};

/// Which displayed equation a polynomial came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyProvenance {
    /// Complex-distance cubic of `W_2` in `u`.
    W2Cubic,
    /// Complex-distance quintic of `W_3` in `u`.
    W3Quintic,
    /// Complex-distance cubic of `W_1` in `u`.
    W1Cubic,
    /// ζ-quartic of `W_2` (trig-normalized).
    ZetaQuartic,
    /// ζ-equation of `W_1` (trig-normalized).
    W1Zeta,
    Custom,
}

/// Geometric regime of a cone structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Hyperbolic,
    Euclidean,
    Spherical,
    /// No positive-imaginary root and no finer classification available.
    NonHyperbolic,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Hyperbolic => "hyperbolic",
            Regime::Euclidean => "euclidean",
            Regime::Spherical => "spherical",
            Regime::NonHyperbolic => "nonhyperbolic",
        }
    }
}

/// Complex polynomial by ascending coefficient list.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySpec {
    coeffs: Vec<ComplexScalar>,
    pub provenance: PolyProvenance,
}

const LEADING_TRIM: f64 = 1e-14;

impl PolySpec {
    /// Build from ascending coefficients, trimming leading terms whose
    /// magnitude is below `1e-14` times the largest coefficient. Degree
    /// collapse (e.g. the ζ-quartic at `(1+a²)(1+b²) = 4`) is handled here
    /// rather than by special cases.
    pub fn new(coeffs: Vec<ComplexScalar>, provenance: PolyProvenance) -> Self {
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut coeffs = coeffs;
        while coeffs.len() > 1
            && coeffs.last().is_some_and(|c| c.norm() <= LEADING_TRIM * scale)
        {
            coeffs.pop();
        }
        PolySpec { coeffs, provenance }
    }

    pub fn from_real(coeffs: &[f64], provenance: PolyProvenance) -> Self {
        PolySpec::new(
            coeffs.iter().map(|&x| Complex::new(x, 0.0)).collect(),
            provenance,
        )
    }

    pub fn coeffs(&self) -> &[ComplexScalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest coefficient magnitude; residual checks are relative to this.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: ComplexScalar) -> ComplexScalar {
        let mut v = Complex::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            v = v * z + c;
        }
        v
    }

    pub fn eval_deriv(&self, z: ComplexScalar) -> ComplexScalar {
        let mut v = Complex::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            v = v * z + *c * (k as f64);
        }
        v
    }

    /// `max(scale, Σ|c_k||z|^k)`: the natural magnitude against which a
    /// residual `|P(z)|` is meaningful in f64.
    pub fn eval_scale(&self, z: ComplexScalar) -> f64 {
        let r = z.norm();
        let mut v = 0.0_f64;
        for c in self.coeffs.iter().rev() {
            v = v * r + c.norm();
        }
        v.max(self.scale())
    }
}

/// `W_2` complex-distance cubic, ascending coefficients.
pub fn cubic_w2(a: f64, b: f64) -> PolySpec {
    let (a2, b2) = (a * a, b * b);
    let ab = a * b;
    PolySpec::from_real(
        &[
            -ab * (a2 * b2 + a2 + b2 - 3.0),
            3.0 * a2 * b2 + 3.0 * a2 + 3.0 * b2 - 1.0,
            -4.0 * ab,
            4.0,
        ],
        PolyProvenance::W2Cubic,
    )
}

/// `W_1` complex-distance cubic, ascending coefficients.
pub fn cubic_w1(a: f64, b: f64) -> PolySpec {
    let (a2, b2) = (a * a, b * b);
    let ab = a * b;
    PolySpec::from_real(
        &[-2.0 * ab, a2 * b2 + a2 + b2 - 1.0, 2.0 * ab, 2.0],
        PolyProvenance::W1Cubic,
    )
}

/// `W_3` complex-distance quintic, ascending coefficients.
pub fn quintic_w3(a: f64, b: f64) -> PolySpec {
    let (a2, b2) = (a * a, b * b);
    let (a4, b4) = (a2 * a2, b2 * b2);
    let ab = a * b;
    PolySpec::from_real(
        &[
            -4.0 * ab * (a2 * b2 + a2 + b2 - 1.0),
            a4 * b4 + 2.0 * a4 * b2 + 2.0 * a2 * b4 - 4.0 * a2 * b2 + a4 + b4
                - 6.0 * a2
                - 6.0 * b2
                + 1.0,
            4.0 * ab * (a2 * b2 + a2 + b2 - 3.0),
            8.0 * (a2 * b2 + a2 + b2 - 1.0),
            8.0 * ab,
            8.0,
        ],
        PolyProvenance::W3Quintic,
    )
}

/// ζ-quartic of `W_2` in the trig-normalized form
/// `4(z²sin²(α/2)+cos²(α/2))(z²sin²(β/2)+cos²(β/2)) - (z-z²)² = 0`,
/// finite for cusp angles; the leading coefficient is trimmed when
/// `4 sin²(α/2) sin²(β/2) = 1`.
pub fn zeta_quartic(params: &ConeParams) -> PolySpec {
    let (ca, sa) = (params.half_alpha_cos(), params.half_alpha_sin());
    let (cb, sb) = (params.half_beta_cos(), params.half_beta_sin());
    let (ca2, sa2) = (ca * ca, sa * sa);
    let (cb2, sb2) = (cb * cb, sb * sb);
    PolySpec::from_real(
        &[
            4.0 * ca2 * cb2,
            0.0,
            4.0 * (sa2 * cb2 + sb2 * ca2) - 1.0,
            2.0,
            4.0 * sa2 * sb2 - 1.0,
        ],
        PolyProvenance::ZetaQuartic,
    )
}

/// ζ-equation of `W_1` in the trig-normalized form
/// `2(z²sin²(α/2)+cos²(α/2))(z²sin²(β/2)+cos²(β/2)) - (z² - z³) = 0`.
pub fn w1_zeta_poly(params: &ConeParams) -> PolySpec {
    let (ca, sa) = (params.half_alpha_cos(), params.half_alpha_sin());
    let (cb, sb) = (params.half_beta_cos(), params.half_beta_sin());
    let (ca2, sa2) = (ca * ca, sa * sa);
    let (cb2, sb2) = (cb * cb, sb * sb);
    PolySpec::from_real(
        &[
            2.0 * ca2 * cb2,
            0.0,
            2.0 * (sa2 * cb2 + sb2 * ca2) - 1.0,
            1.0,
            2.0 * sa2 * sb2,
        ],
        PolyProvenance::W1Zeta,
    )
}

const ABERTH_MAX_ITER: usize = 200;
const ROOT_RESIDUAL_REL: f64 = 1e-9;

/// All complex roots by Aberth–Ehrlich iteration with a two-step Newton
/// polish. Roots are returned sorted by (re, im) for reproducibility; each
/// satisfies `|P(root)| ≤ 1e-9 · max|coeff|`.
pub fn solve_poly(poly: &PolySpec) -> Result<Vec<ComplexScalar>> {
    let mut coeffs = poly.coeffs.clone();
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::NonFinite("solve_poly coefficients"));
    }
    let mut roots: Vec<ComplexScalar> = Vec::new();
    // exact zero roots come from vanishing trailing coefficients
    while coeffs.len() > 1 && coeffs[0].norm() == 0.0 {
        roots.push(Complex::new(0.0, 0.0));
        coeffs.remove(0);
    }
    let work = PolySpec {
        coeffs,
        provenance: poly.provenance,
    };
    let n = work.degree();
    if n == 1 {
        roots.push(-work.coeffs[0] / work.coeffs[1]);
    } else if n >= 2 {
        roots.extend(aberth(&work)?);
    }
    // polish on the original polynomial
    for r in roots.iter_mut() {
        for _ in 0..2 {
            let d = poly.eval_deriv(*r);
            if d.norm() > 0.0 {
                let step = poly.eval(*r) / d;
                if step.norm() < 0.5 * (1.0 + r.norm()) {
                    *r -= step;
                }
            }
        }
    }
    for r in &roots {
        let res = poly.eval(*r).norm();
        // acceptance scale grows with Σ|c_k||z|^k: for |root| ≫ 1 (near a
        // degree collapse one root runs off to infinity) the f64 evaluation
        // itself carries cancellation of that size
        if res.is_nan() || res > ROOT_RESIDUAL_REL * poly.eval_scale(*r) {
            return Err(Error::NoConvergence);
        }
    }
    roots.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(roots)
}

fn aberth(poly: &PolySpec) -> Result<Vec<ComplexScalar>> {
    let n = poly.degree();
    let lead = poly.coeffs[n];
    // Cauchy bound on monic form gives an inclusion radius
    let radius = 1.0
        + poly.coeffs[..n]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    let center = -poly.coeffs[n - 1] / (lead * n as f64);
    let mut z: Vec<ComplexScalar> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * (k as f64 + 0.3573) / n as f64;
            center + Complex::from_polar(0.75 * radius, angle)
        })
        .collect();
    for _ in 0..ABERTH_MAX_ITER {
        let mut done = true;
        for k in 0..n {
            let pv = poly.eval(z[k]);
            // at the backward-error floor the Aberth step is rounding jitter;
            // clustered roots would otherwise never settle below the step tol
            if pv.norm() <= 4.0 * f64::EPSILON * poly.eval_scale(z[k]) {
                continue;
            }
            let dv = poly.eval_deriv(z[k]);
            let newton = if dv.norm() > 0.0 {
                pv / dv
            } else {
                // nudge off a critical point
                done = false;
                z[k] += Complex::new(1e-8, 1e-8);
                continue;
            };
            let mut sum = Complex::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let diff = z[k] - z[j];
                    if diff.norm() > 0.0 {
                        sum += diff.inv();
                    }
                }
            }
            let denom = Complex::new(1.0, 0.0) - newton * sum;
            let step = if denom.norm() > 1e-290 {
                newton / denom
            } else {
                newton
            };
            z[k] -= step;
            if !z[k].re.is_finite() || !z[k].im.is_finite() {
                return Err(Error::NoConvergence);
            }
            if step.norm() > 1e-14 * (1.0 + z[k].norm()) {
                done = false;
            }
        }
        if done {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence)
}

/// Selected root plus diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSelection {
    /// The geometric root (`Im > 0`).
    pub root: ComplexScalar,
    /// Every root of the polynomial, for inspection.
    pub all_roots: Vec<ComplexScalar>,
    /// `|P(root)|` at the selection.
    pub residual: f64,
    pub regime_hint: Regime,
}

const IM_POSITIVE_MIN: f64 = 1e-8;

fn regime_on_failure(params: &ConeParams) -> Regime {
    if params.p() == 2 && (params.alpha() - params.beta()).abs() <= 1e-12 {
        classify_regime_diagonal(params.alpha())
    } else {
        Regime::NonHyperbolic
    }
}

/// Pick the geometric root among `roots`.
///
/// Filters to `Im > 1e-8`. If several survive, `u`-type polynomials are
/// disambiguated against the holonomy oracle, then (for genuinely multiple
/// distance-equation roots, which the `W_3` quintic has) by the largest
/// imaginary part; ζ-type polynomials are disambiguated through the relation
/// to the `u`-root (`ζ·ū = ab` for `W_2`, `ζ·u = -ab` for `W_1`).
/// `AmbiguousRoot` is returned when the discriminating quantities are too
/// close to call.
pub fn select_root(
    poly: &PolySpec,
    roots: &[ComplexScalar],
    params: &ConeParams,
) -> Result<RootSelection> {
    let candidates: Vec<ComplexScalar> = roots
        .iter()
        .copied()
        .filter(|r| r.im > IM_POSITIVE_MIN)
        .collect();
    if candidates.is_empty() {
        return Err(Error::NoHyperbolicRoot {
            regime: regime_on_failure(params),
        });
    }
    let chosen = if candidates.len() == 1 {
        candidates[0]
    } else {
        match poly.provenance {
            PolyProvenance::W1Cubic | PolyProvenance::W2Cubic | PolyProvenance::W3Quintic => {
                select_u_type(&candidates, params)?
            }
            PolyProvenance::ZetaQuartic => select_zeta_type(&candidates, params, ZetaRelation::W2)?,
            PolyProvenance::W1Zeta => select_zeta_type(&candidates, params, ZetaRelation::W1)?,
            PolyProvenance::Custom => return Err(Error::AmbiguousRoot),
        }
    };
    Ok(RootSelection {
        root: chosen,
        all_roots: roots.to_vec(),
        residual: poly.eval(chosen).norm(),
        regime_hint: Regime::Hyperbolic,
    })
}

/// A commutation residual below this is a numerically exact root (true roots
/// come out ~1e-14, non-roots O(1)); residual ratios between two true roots
/// are rounding noise and must not decide anything.
const COMMUTATION_ROOT_GATE: f64 = 1e-6;

fn select_u_type(candidates: &[ComplexScalar], params: &ConeParams) -> Result<ComplexScalar> {
    if params.is_cusp_alpha() || params.is_cusp_beta() {
        // no oracle at cusps and more than one candidate
        return Err(Error::AmbiguousRoot);
    }
    let mut scored: Vec<(f64, ComplexScalar)> = Vec::with_capacity(candidates.len());
    for &u in candidates {
        let res = commutation_residual(params, u)?.norm();
        scored.push((res, u));
    }
    scored.sort_by(|x, y| x.0.total_cmp(&y.0));
    let verified: Vec<ComplexScalar> = scored
        .iter()
        .filter(|(res, _)| *res <= COMMUTATION_ROOT_GATE)
        .map(|&(_, u)| u)
        .collect();
    match verified.len() {
        1 => Ok(verified[0]),
        0 => {
            // dirty candidates only (possible for Custom polynomials):
            // fall back to the clearest residual minimum
            if scored[0].0 * 10.0 < scored[1].0 {
                Ok(scored[0].1)
            } else {
                Err(Error::AmbiguousRoot)
            }
        }
        _ => {
            // several genuine distance-equation roots (the W3 quintic):
            // take the geometric branch, the one with the largest Im
            let mut by_im = verified;
            by_im.sort_by(|x, y| y.im.total_cmp(&x.im));
            if by_im[0].im > 1.2 * by_im[1].im {
                Ok(by_im[0])
            } else {
                Err(Error::AmbiguousRoot)
            }
        }
    }
}

/// How ζ relates to the distance root `u`: `ζ·ū = ab` for `W_2`,
/// `ζ·u = -ab` for `W_1`.
#[derive(Clone, Copy)]
enum ZetaRelation {
    W2,
    W1,
}

fn select_zeta_type(
    candidates: &[ComplexScalar],
    params: &ConeParams,
    relation: ZetaRelation,
) -> Result<ComplexScalar> {
    if params.is_cusp_alpha() || params.is_cusp_beta() {
        return Err(Error::AmbiguousRoot);
    }
    let u = distance_root(params)?.root;
    let ab = params.cot_half_alpha() * params.cot_half_beta();
    let score = |z: ComplexScalar| match relation {
        ZetaRelation::W2 => (z * u.conj() - ab).norm(),
        ZetaRelation::W1 => (z * u + ab).norm(),
    };
    let mut scored: Vec<(f64, ComplexScalar)> =
        candidates.iter().map(|&z| (score(z), z)).collect();
    scored.sort_by(|x, y| x.0.total_cmp(&y.0));
    if scored[0].0 * 10.0 < scored[1].0 {
        Ok(scored[0].1)
    } else {
        Err(Error::AmbiguousRoot)
    }
}

/// Geometric-regime discriminant on the diagonal `α = β` of `W_2`:
/// `Δ = 1 - 22a² - 7a⁴` at `a = cot(α/2)` is negative exactly in the
/// hyperbolic regime. `|Δ| ≤ 1e-12` maps to Euclidean. Valid for
/// `0 ≤ α ≤ π` and `p = 2`.
pub fn classify_regime_diagonal(alpha: f64) -> Regime {
    debug_assert!((0.0..=std::f64::consts::PI).contains(&alpha));
    if alpha == 0.0 {
        return Regime::Hyperbolic;
    }
    let a = (alpha / 2.0).cos() / (alpha / 2.0).sin();
    let a2 = a * a;
    let delta = 1.0 - 22.0 * a2 - 7.0 * a2 * a2;
    if delta.abs() <= 1e-12 {
        Regime::Euclidean
    } else if delta < 0.0 {
        Regime::Hyperbolic
    } else {
        Regime::Spherical
    }
}

/// Solve and select the complex-distance root `u` for `p ∈ {1, 2, 3}`.
/// Requires strictly positive angles (the `u`-polynomials need finite
/// `cot`-halves).
pub fn distance_root(params: &ConeParams) -> Result<RootSelection> {
    if params.is_cusp_alpha() || params.is_cusp_beta() {
        return Err(Error::CuspAngle);
    }
    let (a, b) = (params.cot_half_alpha(), params.cot_half_beta());
    let poly = match params.p() {
        1 => cubic_w1(a, b),
        2 => cubic_w2(a, b),
        3 => quintic_w3(a, b),
        p => return Err(Error::UnsupportedP(p, "distance equations exist for p in {1,2,3}")),
    };
    let roots = solve_poly(&poly)?;
    select_root(&poly, &roots, params)
}

/// Solve and select the ζ-root driving lengths and volumes (`p ∈ {1, 2}`).
/// Valid for cusp angles as well.
pub fn zeta_root(params: &ConeParams) -> Result<RootSelection> {
    let poly = match params.p() {
        1 => w1_zeta_poly(params),
        2 => zeta_quartic(params),
        p => return Err(Error::UnsupportedP(p, "zeta equations exist for p in {1,2}")),
    };
    let roots = solve_poly(&poly)?;
    select_root(&poly, &roots, params)
}
