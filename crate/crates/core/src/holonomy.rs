//! Parametrized holonomy generators for twist-link groups and the word
//! machinery for their longitudes.
//!
//! The group of `W_p` is `⟨s, t | s·l_s = l_s·s⟩` with meridians `s`, `t` and
//! longitude words
//!
//! ```text
//! l_s = [s,t]^((p+1)/2) [s,t⁻¹]^((p+1)/2)          (p odd)
//! l_s = s⁻¹ [t,s]^(p/2) t s t [s⁻¹,t⁻¹]^(p/2)      (p even)
//! ```
//!
//! where `[x,y] = x y x⁻¹ y⁻¹`. For cone angles `α, β` the generator images
//! can be conjugated into the one-parameter normal form
//!
//! ```text
//! S = [ cos(α/2)            i e^(ρ/2) sin(α/2) ]     T = [ cos(β/2)            i e^(-ρ/2) sin(β/2) ]
//!     [ i e^(-ρ/2) sin(α/2)        cos(α/2)    ]         [ i e^(ρ/2) sin(β/2)         cos(β/2)     ]
//! ```
//!
//! with `ρ` the complex distance between their axes. The matrix
//! `N = diag(i, -i)` is the half-turn about the common normal of the axes;
//! `tr(N·L_s) = 0` is equivalent to `S L_s = L_s S`, which is the residual
//! used to certify distance-equation roots.

use num_complex::Complex;

use crate::mat2c::{acosh_principal, ComplexScalar, Mat2C};
use crate::{Error, Result};

/// Cone parameters of `W_p(α, β)`: twist count `p ≥ 1` and cone angles in
/// `[0, π]` (the range where the hyperbolic structure is rigid), with
/// cached half-angle values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeParams {
    p: u32,
    alpha: f64,
    beta: f64,
    half_alpha_cos: f64,
    half_alpha_sin: f64,
    half_beta_cos: f64,
    half_beta_sin: f64,
}

impl ConeParams {
    pub fn new(p: u32, alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite())
            || !(0.0..=std::f64::consts::PI).contains(&alpha)
            || !(0.0..=std::f64::consts::PI).contains(&beta)
        {
            return Err(Error::AngleOutOfRange { alpha, beta });
        }
        if p == 0 {
            return Err(Error::UnsupportedP(0, "p >= 1; W_0 is not hyperbolic"));
        }
        Ok(ConeParams {
            p,
            alpha,
            beta,
            half_alpha_cos: (alpha / 2.0).cos(),
            half_alpha_sin: (alpha / 2.0).sin(),
            half_beta_cos: (beta / 2.0).cos(),
            half_beta_sin: (beta / 2.0).sin(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn half_alpha_cos(&self) -> f64 {
        self.half_alpha_cos
    }

    pub fn half_alpha_sin(&self) -> f64 {
        self.half_alpha_sin
    }

    pub fn half_beta_cos(&self) -> f64 {
        self.half_beta_cos
    }

    pub fn half_beta_sin(&self) -> f64 {
        self.half_beta_sin
    }

    /// `cot(α/2)`; infinite at the cusp `α = 0`.
    pub fn cot_half_alpha(&self) -> f64 {
        self.half_alpha_cos / self.half_alpha_sin
    }

    /// `cot(β/2)`; infinite at the cusp `β = 0`.
    pub fn cot_half_beta(&self) -> f64 {
        self.half_beta_cos / self.half_beta_sin
    }

    pub fn is_cusp_alpha(&self) -> bool {
        self.alpha == 0.0
    }

    pub fn is_cusp_beta(&self) -> bool {
        self.beta == 0.0
    }

    /// Parameters with the two components exchanged (`α ↔ β`).
    pub fn swapped(&self) -> Self {
        ConeParams {
            p: self.p,
            alpha: self.beta,
            beta: self.alpha,
            half_alpha_cos: self.half_beta_cos,
            half_alpha_sin: self.half_beta_sin,
            half_beta_cos: self.half_alpha_cos,
            half_beta_sin: self.half_alpha_sin,
        }
    }
}

/// Generator token of the free group on `{s, t}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    S,
    SInv,
    T,
    TInv,
}

impl Gen {
    pub fn inverse(self) -> Gen {
        match self {
            Gen::S => Gen::SInv,
            Gen::SInv => Gen::S,
            Gen::T => Gen::TInv,
            Gen::TInv => Gen::T,
        }
    }

    /// Token with `s` and `t` exchanged.
    pub fn swapped(self) -> Gen {
        match self {
            Gen::S => Gen::T,
            Gen::T => Gen::S,
            Gen::SInv => Gen::TInv,
            Gen::TInv => Gen::SInv,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Gen::S => "s",
            Gen::SInv => "s^-1",
            Gen::T => "t",
            Gen::TInv => "t^-1",
        }
    }
}

/// Freely reduced word in `{s, t}^±1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupWord(Vec<Gen>);

impl GroupWord {
    /// Build from tokens, cancelling adjacent inverse pairs.
    pub fn new(tokens: impl IntoIterator<Item = Gen>) -> Self {
        let mut out: Vec<Gen> = Vec::new();
        for g in tokens {
            if out.last() == Some(&g.inverse()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        GroupWord(out)
    }

    pub fn tokens(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Word with `s ↔ t` exchanged (`l_t` is obtained from `l_s` this way).
    pub fn swapped(&self) -> GroupWord {
        GroupWord::new(self.0.iter().map(|g| g.swapped()))
    }
}

impl std::fmt::Display for GroupWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<&str> = self.0.iter().map(|g| g.symbol()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn commutator(x: Gen, y: Gen) -> [Gen; 4] {
    [x, y, x.inverse(), y.inverse()]
}

/// Longitude word `l_s` of the α-component of `W_p`.
#[allow(clippy::manual_div_ceil)] // keep the (p+1)/2 form of the exponents
pub fn longitude_word(p: u32) -> GroupWord {
    assert!(p >= 1, "longitude words are defined for p >= 1");
    let mut tokens = Vec::new();
    if p % 2 == 1 {
        let k = ((p + 1) / 2) as usize;
        for _ in 0..k {
            tokens.extend_from_slice(&commutator(Gen::S, Gen::T));
        }
        for _ in 0..k {
            tokens.extend_from_slice(&commutator(Gen::S, Gen::TInv));
        }
    } else {
        let k = (p / 2) as usize;
        tokens.push(Gen::SInv);
        for _ in 0..k {
            tokens.extend_from_slice(&commutator(Gen::T, Gen::S));
        }
        tokens.extend_from_slice(&[Gen::T, Gen::S, Gen::T]);
        for _ in 0..k {
            tokens.extend_from_slice(&commutator(Gen::SInv, Gen::TInv));
        }
    }
    GroupWord::new(tokens)
}

/// Holonomy generators `(S, T)` in the normal form above, for axes at complex
/// distance `rho`. Cusp angles are rejected: at `α = 0` the formula collapses
/// to the identity rather than a parabolic, so the matrix oracle would lie.
pub fn build_generators(params: &ConeParams, rho: ComplexScalar) -> Result<(Mat2C, Mat2C)> {
    if params.is_cusp_alpha() || params.is_cusp_beta() {
        return Err(Error::CuspAngle);
    }
    let e = (rho / 2.0).exp();
    if !e.is_finite() {
        return Err(Error::NonFinite("build_generators"));
    }
    let i = Complex::i();
    let (ca, sa) = (params.half_alpha_cos, params.half_alpha_sin);
    let (cb, sb) = (params.half_beta_cos, params.half_beta_sin);
    let s = Mat2C::new(
        Complex::new(ca, 0.0),
        i * e * sa,
        i * sa / e,
        Complex::new(ca, 0.0),
    );
    let t = Mat2C::new(
        Complex::new(cb, 0.0),
        i * sb / e,
        i * e * sb,
        Complex::new(cb, 0.0),
    );
    Ok((s, t))
}

/// Ordered product of the word evaluated at `S`, `T`. Inverses use the
/// adjugate (valid since the generators are unimodular by construction).
pub fn evaluate_word(word: &GroupWord, s: &Mat2C, t: &Mat2C) -> Mat2C {
    let s_inv = s.adjugate();
    let t_inv = t.adjugate();
    let mut m = Mat2C::IDENTITY;
    for g in word.tokens() {
        let f = match g {
            Gen::S => s,
            Gen::SInv => &s_inv,
            Gen::T => t,
            Gen::TInv => &t_inv,
        };
        m = m * *f;
    }
    m
}

/// Half-turn about the common normal of the generator axes.
pub fn normal_half_turn() -> Mat2C {
    Mat2C::diag(Complex::new(0.0, 1.0), Complex::new(0.0, -1.0))
}

/// Commutation residual `tr(N · L_s)` at `u = cosh ρ`. Vanishes exactly when
/// `S` commutes with the longitude image, i.e. when `u` solves the complex
/// distance equation of `W_p`. Both signs of `ρ = arccosh u` parametrize the
/// same configuration; the smaller residual is returned.
pub fn commutation_residual(params: &ConeParams, u: ComplexScalar) -> Result<ComplexScalar> {
    if params.is_cusp_alpha() || params.is_cusp_beta() {
        return Err(Error::CuspAngle);
    }
    if (u - 1.0).norm() <= 1e-10 || (u + 1.0).norm() <= 1e-10 {
        return Err(Error::DegenerateDistance);
    }
    let rho = acosh_principal(u);
    let word = longitude_word(params.p);
    let n = normal_half_turn();
    let mut best: Option<ComplexScalar> = None;
    for r in [rho, -rho] {
        let (s, t) = build_generators(params, r)?;
        let l = evaluate_word(&word, &s, &t);
        let res = (n * l).trace();
        if best.is_none_or(|b| res.norm() < b.norm()) {
            best = Some(res);
        }
    }
    Ok(best.unwrap())
}
