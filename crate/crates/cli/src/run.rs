//! Command implementations. Each returns the rendered stdout plus the exit
//! code, so the binary stays a thin shell and tests can call these directly.

use twistvol::{
    classify_regime_diagonal, commutation_residual, distance_root, length_report, real_lengths,
    volume_w1_with, volume_w2_with, zeta_root, ConeParams, Error, QuadratureOptions, Regime,
};

use crate::output::{emit_single, emit_stream, Format, Record};
use crate::records::{
    LengthsRecord, RegimeRecord, RootsRecord, SuiteRecord, SweepRow, VolumeRecord,
};
use crate::{EXIT_CHECK_FAILED, EXIT_OK, EXIT_OUT_OF_REGIME, EXIT_USAGE};

/// Rendered output of one command.
pub struct CmdOutput {
    pub stdout: String,
    pub stderr: String,
    pub exit: i32,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        CmdOutput {
            stdout,
            stderr: String::new(),
            exit: EXIT_OK,
        }
    }

    fn usage(msg: String) -> Self {
        CmdOutput {
            stdout: String::new(),
            stderr: format!("error: {msg}"),
            exit: EXIT_USAGE,
        }
    }
}

fn regime_name(err: &Error) -> Option<String> {
    match err {
        Error::NoHyperbolicRoot { regime } => Some(regime.as_str().to_string()),
        Error::OutOfRegime(_) => Some(Regime::NonHyperbolic.as_str().to_string()),
        _ => None,
    }
}

fn quad_opts(tolerance: Option<f64>) -> Result<QuadratureOptions, String> {
    match tolerance {
        None => Ok(QuadratureOptions::default()),
        Some(t) if t.is_finite() && t > 0.0 && t <= 1e-3 => Ok(QuadratureOptions::with_tol(t)),
        Some(t) => Err(format!("--tolerance {t} must be in (0, 1e-3]")),
    }
}

fn volume_for(params: &ConeParams, opts: &QuadratureOptions) -> twistvol::Result<twistvol::VolumeResult> {
    match params.p() {
        1 => volume_w1_with(params, opts),
        2 => volume_w2_with(params, opts),
        p => Err(Error::UnsupportedP(p, "volumes exist for p in {1,2}")),
    }
}

pub fn cmd_volume(
    p: u32,
    alpha: f64,
    beta: f64,
    tolerance: Option<f64>,
    format: Format,
) -> CmdOutput {
    let opts = match quad_opts(tolerance) {
        Ok(o) => o,
        Err(e) => return CmdOutput::usage(e),
    };
    let params = match ConeParams::new(p, alpha, beta) {
        Ok(p) => p,
        Err(e) => return CmdOutput::usage(e.to_string()),
    };
    if !(1..=2).contains(&p) {
        return CmdOutput::usage(format!("volume needs --p 1 or 2, got {p}"));
    }
    match volume_for(&params, &opts) {
        Ok(v) => {
            let rec = VolumeRecord {
                p,
                alpha,
                beta,
                regime: Regime::Hyperbolic.as_str().to_string(),
                volume: Some(v.volume),
                imag_residual: Some(v.imag_residual),
                quadrature_error_estimate: Some(v.quadrature_error_estimate),
                zeta_re: Some(v.zeta.re),
                zeta_im: Some(v.zeta.im),
                method: Some(v.method.as_str().to_string()),
            };
            CmdOutput::ok(emit_single(&rec, format))
        }
        Err(e) => match regime_name(&e) {
            Some(regime) => {
                let rec = VolumeRecord {
                    p,
                    alpha,
                    beta,
                    regime: regime.clone(),
                    volume: None,
                    imag_residual: None,
                    quadrature_error_estimate: None,
                    zeta_re: None,
                    zeta_im: None,
                    method: None,
                };
                CmdOutput {
                    stdout: emit_single(&rec, format),
                    stderr: format!("error: outside the hyperbolic regime ({regime})"),
                    exit: EXIT_OUT_OF_REGIME,
                }
            }
            None => CmdOutput::usage(e.to_string()),
        },
    }
}

pub fn cmd_lengths(p: u32, alpha: f64, beta: f64, format: Format) -> CmdOutput {
    let params = match ConeParams::new(p, alpha, beta) {
        Ok(x) => x,
        Err(e) => return CmdOutput::usage(e.to_string()),
    };
    if !(1..=3).contains(&p) {
        return CmdOutput::usage(format!("lengths needs --p in 1..=3, got {p}"));
    }
    let cusp = params.is_cusp_alpha() || params.is_cusp_beta();
    if cusp {
        if p == 3 {
            return CmdOutput::usage("lengths with p = 3 needs strictly positive angles".into());
        }
        // ζ-route real lengths only; the cusped component has length 0
        return match zeta_root(&params).and_then(|sel| real_lengths(&params, sel.root)) {
            Ok((ra, rb)) => {
                let rec = LengthsRecord {
                    p,
                    alpha,
                    beta,
                    r_alpha: Some(ra),
                    r_beta: Some(rb),
                    phi_alpha: None,
                    phi_beta: None,
                    gamma_alpha_re: None,
                    gamma_alpha_im: None,
                    gamma_beta_re: None,
                    gamma_beta_im: None,
                    tangent_res: None,
                    sine_res: None,
                    cosine_res: None,
                };
                CmdOutput::ok(emit_single(&rec, format))
            }
            Err(e) => match regime_name(&e) {
                Some(regime) => CmdOutput {
                    stdout: String::new(),
                    stderr: format!("error: outside the hyperbolic regime ({regime})"),
                    exit: EXIT_OUT_OF_REGIME,
                },
                None => CmdOutput::usage(e.to_string()),
            },
        };
    }
    match length_report(&params) {
        Ok(rep) => {
            let rec = LengthsRecord {
                p,
                alpha,
                beta,
                r_alpha: Some(rep.r_alpha),
                r_beta: Some(rep.r_beta),
                phi_alpha: Some(rep.phi_alpha),
                phi_beta: Some(rep.phi_beta),
                gamma_alpha_re: Some(rep.gamma_alpha.re),
                gamma_alpha_im: Some(rep.gamma_alpha.im),
                gamma_beta_re: Some(rep.gamma_beta.re),
                gamma_beta_im: Some(rep.gamma_beta.im),
                tangent_res: Some(rep.tangent_residual),
                sine_res: Some(rep.sine_residual),
                cosine_res: Some(rep.cosine_residual),
            };
            CmdOutput::ok(emit_single(&rec, format))
        }
        Err(e) => match regime_name(&e) {
            Some(regime) => CmdOutput {
                stdout: String::new(),
                stderr: format!("error: outside the hyperbolic regime ({regime})"),
                exit: EXIT_OUT_OF_REGIME,
            },
            None => CmdOutput::usage(e.to_string()),
        },
    }
}

pub fn cmd_roots(p: u32, alpha: f64, beta: f64, format: Format) -> CmdOutput {
    let params = match ConeParams::new(p, alpha, beta) {
        Ok(x) => x,
        Err(e) => return CmdOutput::usage(e.to_string()),
    };
    if !(1..=3).contains(&p) {
        return CmdOutput::usage(format!("roots needs --p in 1..=3, got {p}"));
    }
    let mut rec = RootsRecord {
        p,
        alpha,
        beta,
        u_re: None,
        u_im: None,
        u_poly_residual: None,
        u_commutation_residual: None,
        zeta_re: None,
        zeta_im: None,
        zeta_poly_residual: None,
    };
    let mut regime_failure: Option<String> = None;
    match distance_root(&params) {
        Ok(sel) => {
            rec.u_re = Some(sel.root.re);
            rec.u_im = Some(sel.root.im);
            rec.u_poly_residual = Some(sel.residual);
            if let Ok(res) = commutation_residual(&params, sel.root) {
                rec.u_commutation_residual = Some(res.norm());
            }
        }
        Err(Error::CuspAngle) => {}
        Err(e) => match regime_name(&e) {
            Some(r) => regime_failure = Some(r),
            None => return CmdOutput::usage(e.to_string()),
        },
    }
    if p <= 2 {
        match zeta_root(&params) {
            Ok(sel) => {
                rec.zeta_re = Some(sel.root.re);
                rec.zeta_im = Some(sel.root.im);
                rec.zeta_poly_residual = Some(sel.residual);
            }
            Err(e) => match regime_name(&e) {
                Some(r) => regime_failure = Some(r),
                None => return CmdOutput::usage(e.to_string()),
            },
        }
    }
    match regime_failure {
        Some(regime) => CmdOutput {
            stdout: emit_single(&rec, format),
            stderr: format!("error: outside the hyperbolic regime ({regime})"),
            exit: EXIT_OUT_OF_REGIME,
        },
        None => CmdOutput::ok(emit_single(&rec, format)),
    }
}

pub fn cmd_regime(alpha: f64, format: Format) -> CmdOutput {
    if !alpha.is_finite() || !(0.0..=std::f64::consts::PI).contains(&alpha) {
        return CmdOutput::usage(format!("regime needs 0 <= alpha <= pi, got {alpha}"));
    }
    let a = if alpha == 0.0 {
        f64::INFINITY
    } else {
        (alpha / 2.0).cos() / (alpha / 2.0).sin()
    };
    let delta = if a.is_infinite() {
        f64::NEG_INFINITY
    } else {
        1.0 - 22.0 * a * a - 7.0 * a.powi(4)
    };
    let regime = classify_regime_diagonal(alpha);
    let rec = RegimeRecord {
        alpha,
        cot_half_alpha: a,
        delta,
        regime: regime.as_str().to_string(),
    };
    CmdOutput::ok(emit_single(&rec, format))
}

/// Requested sweep quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quantities {
    pub volume: bool,
    pub lengths: bool,
    pub zeta: bool,
    pub regime: bool,
    pub residuals: bool,
}

impl Quantities {
    pub fn parse(spec: &str) -> Result<Self, String> {
        let mut q = Quantities {
            volume: false,
            lengths: false,
            zeta: false,
            regime: false,
            residuals: false,
        };
        for item in spec.split(',') {
            match item.trim() {
                "volume" => q.volume = true,
                "lengths" => q.lengths = true,
                "zeta" => q.zeta = true,
                "regime" => q.regime = true,
                "residuals" => q.residuals = true,
                "all" => {
                    q = Quantities::all();
                }
                other => {
                    return Err(format!(
                        "unknown quantity '{other}' (volume, lengths, zeta, regime, residuals, all)"
                    ))
                }
            }
        }
        Ok(q)
    }

    pub fn all() -> Self {
        Quantities {
            volume: true,
            lengths: true,
            zeta: true,
            regime: true,
            residuals: true,
        }
    }
}

/// Inclusive linear grid; `steps = 1` degenerates to the start point.
fn grid(start: f64, stop: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![start];
    }
    (0..steps)
        .map(|k| start + (stop - start) * k as f64 / (steps - 1) as f64)
        .collect()
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_sweep(
    p: u32,
    alpha_range: (f64, f64, usize),
    beta_range: (f64, f64, usize),
    quantities: Quantities,
    tolerance: Option<f64>,
    format: Format,
) -> CmdOutput {
    let opts = match quad_opts(tolerance) {
        Ok(o) => o,
        Err(e) => return CmdOutput::usage(e),
    };
    if !(1..=3).contains(&p) {
        return CmdOutput::usage(format!("sweep needs --p in 1..=3, got {p}"));
    }
    for (name, (start, stop, steps)) in [("alpha", alpha_range), ("beta", beta_range)] {
        if steps < 1 {
            return CmdOutput::usage(format!("{name}-range needs steps >= 1"));
        }
        for v in [start, stop] {
            if !(0.0..=std::f64::consts::PI).contains(&v) {
                return CmdOutput::usage(format!("{name}-range value {v} outside [0, pi]"));
            }
        }
    }
    let alphas = grid(alpha_range.0, alpha_range.1, alpha_range.2);
    let betas = grid(beta_range.0, beta_range.1, beta_range.2);
    let mut rows: Vec<Box<dyn Record>> = Vec::with_capacity(alphas.len() * betas.len());
    // row-major: alpha outer, beta inner
    for &alpha in &alphas {
        for &beta in &betas {
            rows.push(Box::new(sweep_point(p, alpha, beta, &quantities, &opts)));
        }
    }
    CmdOutput::ok(emit_stream(&rows, format))
}

fn sweep_point(
    p: u32,
    alpha: f64,
    beta: f64,
    q: &Quantities,
    opts: &QuadratureOptions,
) -> SweepRow {
    let mut row = SweepRow {
        p,
        alpha,
        beta,
        regime: String::new(),
        ..Default::default()
    };
    let params = match ConeParams::new(p, alpha, beta) {
        Ok(x) => x,
        Err(_) => {
            row.regime = "invalid".into();
            return row;
        }
    };
    let cusp = params.is_cusp_alpha() || params.is_cusp_beta();

    // regime from root selection; everything else only runs when hyperbolic
    let root_sel = if p <= 2 {
        zeta_root(&params)
    } else {
        distance_root(&params)
    };
    let zeta = match root_sel {
        Ok(sel) => Some(sel.root),
        Err(e) => {
            row.regime = match e {
                Error::NoHyperbolicRoot { regime } => regime.as_str().to_string(),
                // p = 3 cusp: no distance equation runs there
                Error::CuspAngle => "unsupported".to_string(),
                _ => Regime::NonHyperbolic.as_str().to_string(),
            };
            return row;
        }
    };
    row.regime = Regime::Hyperbolic.as_str().to_string();

    if q.volume && p <= 2 {
        if let Ok(v) = volume_for(&params, opts) {
            row.volume = Some(v.volume);
            row.imag_residual = Some(v.imag_residual);
        }
    }
    if q.zeta && p <= 2 {
        let z = zeta.expect("zeta present for p <= 2");
        row.zeta_re = Some(z.re);
        row.zeta_im = Some(z.im);
    }
    if q.lengths && p <= 2 {
        if let Ok((ra, rb)) = real_lengths(&params, zeta.expect("zeta present")) {
            row.r_alpha = Some(ra);
            row.r_beta = Some(rb);
        }
    }
    if !cusp && (q.residuals || (q.lengths && row.r_alpha.is_none())) {
        if let Ok(rep) = length_report(&params) {
            if q.residuals {
                row.tangent_res = Some(rep.tangent_residual);
                row.sine_res = Some(rep.sine_residual);
                row.cosine_res = Some(rep.cosine_residual);
            }
            if q.lengths && row.r_alpha.is_none() {
                row.r_alpha = Some(rep.r_alpha);
                row.r_beta = Some(rep.r_beta);
            }
        }
    }
    row
}

pub fn cmd_check(suite: &str, p_filter: Option<u32>, format: Format) -> CmdOutput {
    let outcomes = match crate::checks::run_suites(suite, p_filter) {
        Ok(o) => o,
        Err(e) => return CmdOutput::usage(e),
    };
    let all_passed = outcomes.iter().all(|o| o.passed);
    let rows: Vec<Box<dyn Record>> = outcomes
        .iter()
        .map(|o| {
            Box::new(SuiteRecord {
                suite: o.name.to_string(),
                p: o.p,
                status: if o.passed { "pass" } else { "FAIL" }.to_string(),
                worst: o.worst,
                threshold: o.threshold,
                detail: o.detail.clone(),
            }) as Box<dyn Record>
        })
        .collect();
    CmdOutput {
        stdout: emit_stream(&rows, format),
        stderr: if all_passed {
            String::new()
        } else {
            "error: one or more check suites failed".to_string()
        },
        exit: if all_passed { EXIT_OK } else { EXIT_CHECK_FAILED },
    }
}

