//! Typed records the commands emit. Field order here is the output schema.

use crate::output::{Record, Value};

fn num(x: f64) -> Value {
    Value::Num(Some(x))
}

fn opt(x: Option<f64>) -> Value {
    Value::Num(x)
}

/// `volume` command record.
#[derive(Debug, Clone)]
pub struct VolumeRecord {
    pub p: u32,
    pub alpha: f64,
    pub beta: f64,
    pub regime: String,
    pub volume: Option<f64>,
    pub imag_residual: Option<f64>,
    pub quadrature_error_estimate: Option<f64>,
    pub zeta_re: Option<f64>,
    pub zeta_im: Option<f64>,
    pub method: Option<String>,
}

impl Record for VolumeRecord {
    fn fields(&self) -> Vec<(&'static str, Value)> {
        vec![
            ("p", Value::Int(self.p as i64)),
            ("alpha", num(self.alpha)),
            ("beta", num(self.beta)),
            ("regime", Value::Str(self.regime.clone())),
            ("volume", opt(self.volume)),
            ("imag_residual", opt(self.imag_residual)),
            (
                "quadrature_error_estimate",
                opt(self.quadrature_error_estimate),
            ),
            ("zeta_re", opt(self.zeta_re)),
            ("zeta_im", opt(self.zeta_im)),
            (
                "method",
                Value::Str(self.method.clone().unwrap_or_else(|| "-".into())),
            ),
        ]
    }
}

/// `lengths` command record. γ/φ and rule residuals are absent for cusped
/// components (only the ζ-route real lengths survive there).
#[derive(Debug, Clone)]
pub struct LengthsRecord {
    pub p: u32,
    pub alpha: f64,
    pub beta: f64,
    pub r_alpha: Option<f64>,
    pub r_beta: Option<f64>,
    pub phi_alpha: Option<f64>,
    pub phi_beta: Option<f64>,
    pub gamma_alpha_re: Option<f64>,
    pub gamma_alpha_im: Option<f64>,
    pub gamma_beta_re: Option<f64>,
    pub gamma_beta_im: Option<f64>,
    pub tangent_res: Option<f64>,
    pub sine_res: Option<f64>,
    pub cosine_res: Option<f64>,
}

impl Record for LengthsRecord {
    fn fields(&self) -> Vec<(&'static str, Value)> {
        vec![
            ("p", Value::Int(self.p as i64)),
            ("alpha", num(self.alpha)),
            ("beta", num(self.beta)),
            ("r_alpha", opt(self.r_alpha)),
            ("r_beta", opt(self.r_beta)),
            ("phi_alpha", opt(self.phi_alpha)),
            ("phi_beta", opt(self.phi_beta)),
            ("gamma_alpha_re", opt(self.gamma_alpha_re)),
            ("gamma_alpha_im", opt(self.gamma_alpha_im)),
            ("gamma_beta_re", opt(self.gamma_beta_re)),
            ("gamma_beta_im", opt(self.gamma_beta_im)),
            ("tangent_res", opt(self.tangent_res)),
            ("sine_res", opt(self.sine_res)),
            ("cosine_res", opt(self.cosine_res)),
        ]
    }
}

/// `roots` command record: the selected distance root `u` and ζ-root with
/// their residuals.
#[derive(Debug, Clone)]
pub struct RootsRecord {
    pub p: u32,
    pub alpha: f64,
    pub beta: f64,
    pub u_re: Option<f64>,
    pub u_im: Option<f64>,
    pub u_poly_residual: Option<f64>,
    pub u_commutation_residual: Option<f64>,
    pub zeta_re: Option<f64>,
    pub zeta_im: Option<f64>,
    pub zeta_poly_residual: Option<f64>,
}

impl Record for RootsRecord {
    fn fields(&self) -> Vec<(&'static str, Value)> {
        vec![
            ("p", Value::Int(self.p as i64)),
            ("alpha", num(self.alpha)),
            ("beta", num(self.beta)),
            ("u_re", opt(self.u_re)),
            ("u_im", opt(self.u_im)),
            ("u_poly_residual", opt(self.u_poly_residual)),
            ("u_commutation_residual", opt(self.u_commutation_residual)),
            ("zeta_re", opt(self.zeta_re)),
            ("zeta_im", opt(self.zeta_im)),
            ("zeta_poly_residual", opt(self.zeta_poly_residual)),
        ]
    }
}

/// `regime` command record (diagonal discriminant, p = 2).
#[derive(Debug, Clone)]
pub struct RegimeRecord {
    pub alpha: f64,
    pub cot_half_alpha: f64,
    pub delta: f64,
    pub regime: String,
}

impl Record for RegimeRecord {
    fn fields(&self) -> Vec<(&'static str, Value)> {
        vec![
            ("alpha", num(self.alpha)),
            ("cot_half_alpha", num(self.cot_half_alpha)),
            ("delta", num(self.delta)),
            ("regime", Value::Str(self.regime.clone())),
        ]
    }
}

/// One `sweep` grid point. The column set is fixed; quantities that were not
/// requested or are out of regime stay null.
#[derive(Debug, Clone, Default)]
pub struct SweepRow {
    pub p: u32,
    pub alpha: f64,
    pub beta: f64,
    pub regime: String,
    pub volume: Option<f64>,
    pub imag_residual: Option<f64>,
    pub r_alpha: Option<f64>,
    pub r_beta: Option<f64>,
    pub zeta_re: Option<f64>,
    pub zeta_im: Option<f64>,
    pub tangent_res: Option<f64>,
    pub sine_res: Option<f64>,
    pub cosine_res: Option<f64>,
}

impl Record for SweepRow {
    fn fields(&self) -> Vec<(&'static str, Value)> {
        vec![
            ("p", Value::Int(self.p as i64)),
            ("alpha", num(self.alpha)),
            ("beta", num(self.beta)),
            ("regime", Value::Str(self.regime.clone())),
            ("volume", opt(self.volume)),
            ("imag_residual", opt(self.imag_residual)),
            ("r_alpha", opt(self.r_alpha)),
            ("r_beta", opt(self.r_beta)),
            ("zeta_re", opt(self.zeta_re)),
            ("zeta_im", opt(self.zeta_im)),
            ("tangent_res", opt(self.tangent_res)),
            ("sine_res", opt(self.sine_res)),
            ("cosine_res", opt(self.cosine_res)),
        ]
    }
}

/// One `check` suite line.
#[derive(Debug, Clone)]
pub struct SuiteRecord {
    pub suite: String,
    pub p: Option<u32>,
    pub status: String,
    pub worst: Option<f64>,
    pub threshold: f64,
    pub detail: String,
}

impl Record for SuiteRecord {
    fn fields(&self) -> Vec<(&'static str, Value)> {
        vec![
            ("suite", Value::Str(self.suite.clone())),
            (
                "p",
                self.p.map_or(Value::Str("-".into()), |p| Value::Int(p as i64)),
            ),
            ("status", Value::Str(self.status.clone())),
            ("worst", opt(self.worst)),
            ("threshold", num(self.threshold)),
            ("detail", Value::Str(self.detail.clone())),
        ]
    }
}
