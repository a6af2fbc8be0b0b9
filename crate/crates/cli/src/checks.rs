//! Self-check suites behind the `check` verb: the library's key identities
//! evaluated at fixed grids with pinned thresholds.

use twistvol::{
    classify_regime_diagonal, commutation_residual, distance_root, euclidean_diagonal_alpha0,
    length_report, schlafli_residual, volume_w1, volume_w2, volume_w2_diagonal, volume_w2_with,
    ConeParams, QuadratureOptions, Regime,
};

/// Result of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub p: Option<u32>,
    pub passed: bool,
    pub worst: Option<f64>,
    pub threshold: f64,
    pub detail: String,
}

const GRID: [f64; 5] = [0.3, 0.75, 1.2, 1.65, 2.1];
const SCHLAFLI_POINTS: [(f64, f64); 4] = [(0.5, 0.5), (0.5, 1.9), (1.3, 0.8), (2.0, 1.1)];

pub const SUITE_NAMES: [&str; 8] = [
    "tangent-rule",
    "sine-rule",
    "cosine-rule",
    "oracle",
    "schlafli",
    "halving",
    "w1-cusp",
    "diagonal",
];

fn outcome(
    name: &'static str,
    p: Option<u32>,
    threshold: f64,
    worst: Result<f64, String>,
) -> SuiteOutcome {
    match worst {
        Ok(w) => SuiteOutcome {
            name,
            p,
            passed: w <= threshold,
            worst: Some(w),
            threshold,
            detail: String::new(),
        },
        Err(e) => SuiteOutcome {
            name,
            p,
            passed: false,
            worst: None,
            threshold,
            detail: e,
        },
    }
}

fn rule_suite(name: &'static str, pick: fn(&twistvol::LengthReport) -> f64, p: u32) -> SuiteOutcome {
    let run = || -> Result<f64, String> {
        let mut worst = 0.0_f64;
        for &alpha in &GRID {
            for &beta in &GRID {
                let params = ConeParams::new(p, alpha, beta).map_err(|e| e.to_string())?;
                let rep = length_report(&params).map_err(|e| e.to_string())?;
                worst = worst.max(pick(&rep));
            }
        }
        Ok(worst)
    };
    outcome(name, Some(p), 1e-9, run())
}

pub fn tangent_rule(p: u32) -> SuiteOutcome {
    rule_suite("tangent-rule", |r| r.tangent_residual, p)
}

pub fn sine_rule(p: u32) -> SuiteOutcome {
    rule_suite("sine-rule", |r| r.sine_residual, p)
}

pub fn cosine_rule(p: u32) -> SuiteOutcome {
    rule_suite("cosine-rule", |r| r.cosine_residual, p)
}

/// Commutation residual of the selected distance root across the grid.
pub fn oracle(p: u32) -> SuiteOutcome {
    let run = || -> Result<f64, String> {
        let mut worst = 0.0_f64;
        for &alpha in &GRID {
            for &beta in &GRID {
                let params = ConeParams::new(p, alpha, beta).map_err(|e| e.to_string())?;
                let u = distance_root(&params).map_err(|e| e.to_string())?.root;
                let res = commutation_residual(&params, u).map_err(|e| e.to_string())?;
                worst = worst.max(res.norm());
            }
        }
        Ok(worst)
    };
    outcome("oracle", Some(p), 1e-9, run())
}

pub fn schlafli(p: u32) -> SuiteOutcome {
    let run = || -> Result<f64, String> {
        let mut worst = 0.0_f64;
        for &(alpha, beta) in &SCHLAFLI_POINTS {
            let params = ConeParams::new(p, alpha, beta).map_err(|e| e.to_string())?;
            let (ra, rb) = schlafli_residual(&params, 1e-4).map_err(|e| e.to_string())?;
            worst = worst.max(ra).max(rb);
        }
        Ok(worst)
    };
    outcome("schlafli", Some(p), 1e-5, run())
}

/// `Vol W2(0,0) = 2 · Vol W2(π/2, π/2)`.
pub fn halving() -> SuiteOutcome {
    let run = || -> Result<f64, String> {
        let cusp = volume_w2(&ConeParams::new(2, 0.0, 0.0).unwrap()).map_err(|e| e.to_string())?;
        let right = volume_w2(
            &ConeParams::new(2, std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2).unwrap(),
        )
        .map_err(|e| e.to_string())?;
        Ok((cusp.volume - 2.0 * right.volume).abs())
    };
    outcome("halving", None, 1e-6, run())
}

/// Catalan's constant by its alternating series (truncation < 7e-15).
pub fn catalan_series() -> f64 {
    let n = 6_000_000u64;
    let mut sum = 0.0_f64;
    for k in (0..n).rev() {
        let d = (2 * k + 1) as f64;
        let term = 1.0 / (d * d);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// `Vol W1(0,0) = 4 · Catalan`.
pub fn w1_cusp() -> SuiteOutcome {
    let run = || -> Result<f64, String> {
        let v = volume_w1(&ConeParams::new(1, 0.0, 0.0).unwrap()).map_err(|e| e.to_string())?;
        Ok((v.volume - 4.0 * catalan_series()).abs())
    };
    outcome("w1-cusp", None, 5e-6, run())
}

/// Diagonal real-integral route against the contour route, plus quadrature
/// stability under doubled node count.
pub fn diagonal() -> SuiteOutcome {
    let run = || -> Result<f64, String> {
        let mut worst = 0.0_f64;
        let opts = QuadratureOptions::default();
        for alpha in [0.5, 1.0, 1.5, 2.0, 2.5] {
            let d = volume_w2_diagonal(alpha).map_err(|e| e.to_string())?.volume;
            let c = volume_w2(&ConeParams::new(2, alpha, alpha).unwrap())
                .map_err(|e| e.to_string())?
                .volume;
            worst = worst.max((d - c).abs());
            let c2 = volume_w2_with(&ConeParams::new(2, alpha, alpha).unwrap(), &opts.doubled())
                .map_err(|e| e.to_string())?
                .volume;
            worst = worst.max((c - c2).abs());
        }
        Ok(worst)
    };
    outcome("diagonal", None, 1e-8, run())
}

/// Regime flip location against the Euclidean constants.
pub fn regime_constants() -> SuiteOutcome {
    let run = || -> Result<f64, String> {
        let alpha0 = euclidean_diagonal_alpha0();
        if classify_regime_diagonal(alpha0 - 1e-6) != Regime::Hyperbolic {
            return Err("hyperbolic side misclassified".into());
        }
        if classify_regime_diagonal(alpha0 + 1e-6) != Regime::Spherical {
            return Err("spherical side misclassified".into());
        }
        Ok((alpha0 - 2.7243).abs())
    };
    outcome("regime", None, 1e-3, run())
}

/// Build the suite list selected by name (`all` for every suite) and an
/// optional p filter for the p-parametrized suites.
pub fn run_suites(which: &str, p_filter: Option<u32>) -> Result<Vec<SuiteOutcome>, String> {
    let ps: Vec<u32> = match p_filter {
        Some(p) if (1..=3).contains(&p) => vec![p],
        Some(p) => return Err(format!("--p {p} out of range (1..=3)")),
        None => vec![1, 2, 3],
    };
    let schlafli_ps: Vec<u32> = ps.iter().copied().filter(|&p| p <= 2).collect();
    let mut out = Vec::new();
    let mut matched = false;
    let want = |name: &str| which == "all" || which == name;
    if want("tangent-rule") {
        matched = true;
        out.extend(ps.iter().map(|&p| tangent_rule(p)));
    }
    if want("sine-rule") {
        matched = true;
        out.extend(ps.iter().map(|&p| sine_rule(p)));
    }
    if want("cosine-rule") {
        matched = true;
        out.extend(ps.iter().map(|&p| cosine_rule(p)));
    }
    if want("oracle") {
        matched = true;
        out.extend(ps.iter().map(|&p| oracle(p)));
    }
    if want("schlafli") {
        matched = true;
        out.extend(schlafli_ps.iter().map(|&p| schlafli(p)));
    }
    if want("halving") {
        matched = true;
        out.push(halving());
    }
    if want("w1-cusp") {
        matched = true;
        out.push(w1_cusp());
    }
    if want("diagonal") {
        matched = true;
        out.push(diagonal());
    }
    if want("regime") || which == "all" {
        matched = true;
        out.push(regime_constants());
    }
    if !matched {
        return Err(format!(
            "unknown suite '{which}' (available: all, {}, regime)",
            SUITE_NAMES.join(", ")
        ));
    }
    Ok(out)
}
