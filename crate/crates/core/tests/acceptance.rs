//! Acceptance suite: every release criterion, one test per criterion, each
//! printing a PASS line with the measured quantity (run with
//! `cargo test --test acceptance -- --nocapture` to see them).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistvol::{
    classify_regime_diagonal, commutation_residual, distance_root, euclidean_diagonal_alpha0,
    length_report, schlafli_residual, volume_w1, volume_w2, volume_w2_diagonal,
    volume_w2_diagonal_with, volume_w1_with, volume_w2_with, ComplexScalar, ConeParams,
    Error, QuadratureOptions, Regime,
};

const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;
const FRAC_PI_3: f64 = std::f64::consts::FRAC_PI_3;

/// 5×5 grid of strictly positive angles, hyperbolic for p ∈ {1, 2, 3}.
const GRID: [f64; 5] = [0.3, 0.75, 1.2, 1.65, 2.1];

fn pass(criterion: &str, detail: String) {
    println!("PASS {criterion}: {detail}");
}

#[test]
fn criterion_01_w2_right_angle_volume() {
    let t0 = std::time::Instant::now();
    let params = ConeParams::new(2, FRAC_PI_2, FRAC_PI_2).unwrap();
    let v = volume_w2(&params).unwrap();
    let elapsed = t0.elapsed();
    let err = (v.volume - 2.6667).abs();
    assert!(err <= 5e-4, "volume {} vs 2.6667", v.volume);
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    pass(
        "criterion 01",
        format!(
            "Vol W2(pi/2,pi/2) = {:.10} (paper 2.6667, err {err:.2e}) in {elapsed:?}",
            v.volume
        ),
    );
}

#[test]
fn criterion_02_w2_cusp_volume_and_halving() {
    let cusp = volume_w2(&ConeParams::new(2, 0.0, 0.0).unwrap()).unwrap();
    let right = volume_w2(&ConeParams::new(2, FRAC_PI_2, FRAC_PI_2).unwrap()).unwrap();
    let err_paper = (cusp.volume - 5.3334).abs();
    let err_half = (cusp.volume - 2.0 * right.volume).abs();
    assert!(err_paper <= 5e-4, "volume {} vs 5.3334", cusp.volume);
    assert!(err_half <= 1e-6, "halving identity off by {err_half:.2e}");
    pass(
        "criterion 02",
        format!(
            "Vol W2(0,0) = {:.10} (err {err_paper:.2e}); |V(0,0) - 2 V(pi/2,pi/2)| = {err_half:.2e}",
            cusp.volume
        ),
    );
}

#[test]
fn criterion_03_w2_mixed_cusp_volume() {
    let v = volume_w2(&ConeParams::new(2, 0.0, FRAC_PI_3).unwrap()).unwrap();
    let err = (v.volume - 4.6165).abs();
    assert!(err <= 5e-4, "volume {} vs 4.6165", v.volume);
    pass(
        "criterion 03",
        format!("Vol W2(0,pi/3) = {:.10} (err {err:.2e})", v.volume),
    );
}

#[test]
fn criterion_04_euclidean_flip_constants() {
    // locate the classifier flip by bisection
    let mut lo = 2.6_f64;
    let mut hi = 2.8_f64;
    assert_eq!(classify_regime_diagonal(lo), Regime::Hyperbolic);
    assert_eq!(classify_regime_diagonal(hi), Regime::Spherical);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if classify_regime_diagonal(mid) == Regime::Hyperbolic {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha_star = 0.5 * (lo + hi);
    let a_star = (alpha_star / 2.0).cos() / (alpha_star / 2.0).sin();
    assert!((alpha_star - 2.7243).abs() <= 1e-3, "alpha* = {alpha_star}");
    assert!((a_star - 0.2116).abs() <= 1e-3, "a* = {a_star}");
    pass(
        "criterion 04",
        format!("regime flips at alpha0 = {alpha_star:.6} (paper 2.7243), a0 = {a_star:.6} (paper 0.2116)"),
    );
}

#[test]
fn criterion_05_diagonal_matches_contour() {
    let mut worst = 0.0_f64;
    for alpha in [0.5, 1.0, 1.5, 2.0, 2.5] {
        let diag = volume_w2_diagonal(alpha).unwrap().volume;
        let cont = volume_w2(&ConeParams::new(2, alpha, alpha).unwrap())
            .unwrap()
            .volume;
        let err = (diag - cont).abs();
        assert!(err <= 1e-8, "alpha={alpha}: |{diag} - {cont}| = {err:.2e}");
        worst = worst.max(err);
    }
    pass(
        "criterion 05",
        format!("diagonal vs contour agreement on 5 angles, worst |diff| = {worst:.2e}"),
    );
}

#[test]
fn criterion_06_schlafli_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let points: Vec<(f64, f64)> = (0..10)
        .map(|_| (rng.gen_range(0.4..2.2), rng.gen_range(0.4..2.2)))
        .collect();
    let mut worst = 0.0_f64;
    for p in [1u32, 2] {
        for &(alpha, beta) in &points {
            let params = ConeParams::new(p, alpha, beta).unwrap();
            let (ra, rb) = schlafli_residual(&params, 1e-4).unwrap();
            assert!(
                ra <= 1e-5 && rb <= 1e-5,
                "p={p} ({alpha:.3},{beta:.3}): {ra:.2e} {rb:.2e}"
            );
            worst = worst.max(ra).max(rb);
        }
    }
    pass(
        "criterion 06",
        format!("Schlafli residuals at 10 random points, p in {{1,2}}, worst = {worst:.2e}"),
    );
}

#[test]
fn criterion_07_rules_on_grid() {
    let mut worst = 0.0_f64;
    for p in [1u32, 2, 3] {
        for &alpha in &GRID {
            for &beta in &GRID {
                let params = ConeParams::new(p, alpha, beta).unwrap();
                let rep = length_report(&params).unwrap();
                for (name, res) in [
                    ("tangent", rep.tangent_residual),
                    ("sine", rep.sine_residual),
                    ("cosine", rep.cosine_residual),
                ] {
                    assert!(
                        res <= 1e-9,
                        "p={p} ({alpha},{beta}) {name} rule residual {res:.2e}"
                    );
                    worst = worst.max(res);
                }
            }
        }
    }
    pass(
        "criterion 07",
        format!("Tangent/Sine/Cosine rules on 5x5 grid, p in {{1,2,3}}, worst residual = {worst:.2e}"),
    );
}

#[test]
fn criterion_08_holonomy_oracle_on_grid() {
    let mut worst_comm = 0.0_f64;
    let mut worst_tr = 0.0_f64;
    for p in [1u32, 2, 3] {
        for &alpha in &GRID {
            for &beta in &GRID {
                let params = ConeParams::new(p, alpha, beta).unwrap();
                let u = distance_root(&params).unwrap().root;
                let comm = commutation_residual(&params, u).unwrap().norm();
                assert!(comm <= 1e-9, "p={p} ({alpha},{beta}): tr(NL) = {comm:.2e}");
                // trace-sign convention: tr(L_s) = -2 cosh(gamma_alpha / 2)
                let rep = length_report(&params).unwrap();
                let trl = longitude_trace(&params, u);
                let tr_res = (trl + (rep.gamma_alpha / 2.0).cosh() * 2.0).norm();
                assert!(tr_res <= 1e-8, "p={p} ({alpha},{beta}): {tr_res:.2e}");
                worst_comm = worst_comm.max(comm);
                worst_tr = worst_tr.max(tr_res);
            }
        }
    }
    pass(
        "criterion 08",
        format!(
            "holonomy oracle on grid: worst |tr(N L)| = {worst_comm:.2e}, worst trace-convention residual = {worst_tr:.2e}"
        ),
    );
}

fn longitude_trace(params: &ConeParams, u: ComplexScalar) -> ComplexScalar {
    use twistvol::{build_generators, evaluate_word, longitude_word};
    let rho = twistvol::mat2c::acosh_principal(u);
    let (s, t) = build_generators(params, rho).unwrap();
    evaluate_word(&longitude_word(params.p()), &s, &t).trace()
}

/// Catalan's constant by its alternating series, summed smallest-first.
/// 6e6 terms bound the truncation error by 1/(2N+1)^2 < 7e-15.
fn catalan_series() -> f64 {
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

#[test]
fn criterion_09_whitehead_cusp_volume_is_four_catalan() {
    // independent oracle first
    let catalan = catalan_series();
    assert!(
        (catalan - 0.915965594177219).abs() < 1e-12,
        "catalan series {catalan}"
    );
    let want = 4.0 * catalan;
    let v = volume_w1(&ConeParams::new(1, 0.0, 0.0).unwrap()).unwrap();
    let err = (v.volume - want).abs();
    assert!(err <= 5e-6, "volume {} vs 4K = {want}", v.volume);
    pass(
        "criterion 09",
        format!(
            "Vol W1(0,0) = {:.12} vs 4*Catalan = {want:.12} (err {err:.2e})",
            v.volume
        ),
    );
}

#[test]
fn criterion_10_volume_vanishes_at_euclidean_limit() {
    let alpha = euclidean_diagonal_alpha0() - 1e-3;
    let v = volume_w2_diagonal(alpha).unwrap();
    assert!(v.volume > 0.0 && v.volume <= 5e-3, "{}", v.volume);
    pass(
        "criterion 10",
        format!("Vol W2(alpha0 - 1e-3 diag) = {:.3e} <= 5e-3", v.volume),
    );
}

#[test]
fn criterion_11_quadrature_robustness() {
    let opts = QuadratureOptions::default();
    let doubled = opts.doubled();
    let mut worst = 0.0_f64;
    let mut volumes = 0usize;
    let mut check = |v1: Result<f64, Error>, v2: Result<f64, Error>, tag: String| {
        let v1 = v1.unwrap_or_else(|e| panic!("{tag}: {e}"));
        let v2 = v2.unwrap_or_else(|e| panic!("{tag} (doubled): {e}"));
        let d = (v1 - v2).abs();
        assert!(d <= 1e-10, "{tag}: doubling changed volume by {d:.2e}");
        worst = worst.max(d);
        volumes += 1;
    };
    for &alpha in &GRID {
        for &beta in &GRID {
            let p2 = ConeParams::new(2, alpha, beta).unwrap();
            check(
                volume_w2_with(&p2, &opts).map(|v| v.volume),
                volume_w2_with(&p2, &doubled).map(|v| v.volume),
                format!("W2({alpha},{beta})"),
            );
            let p1 = ConeParams::new(1, alpha, beta).unwrap();
            check(
                volume_w1_with(&p1, &opts).map(|v| v.volume),
                volume_w1_with(&p1, &doubled).map(|v| v.volume),
                format!("W1({alpha},{beta})"),
            );
        }
    }
    for (alpha, beta) in [(0.0, 0.0), (0.0, FRAC_PI_3)] {
        let p2 = ConeParams::new(2, alpha, beta).unwrap();
        check(
            volume_w2_with(&p2, &opts).map(|v| v.volume),
            volume_w2_with(&p2, &doubled).map(|v| v.volume),
            format!("W2({alpha},{beta})"),
        );
    }
    let w1c = ConeParams::new(1, 0.0, 0.0).unwrap();
    check(
        volume_w1_with(&w1c, &opts).map(|v| v.volume),
        volume_w1_with(&w1c, &doubled).map(|v| v.volume),
        "W1(0,0)".to_string(),
    );
    for alpha in [0.5, 1.0, 1.5, 2.0, 2.5] {
        check(
            volume_w2_diagonal_with(alpha, &opts).map(|v| v.volume),
            volume_w2_diagonal_with(alpha, &doubled).map(|v| v.volume),
            format!("W2 diagonal({alpha})"),
        );
    }
    pass(
        "criterion 11",
        format!(
            "doubling node count on {volumes} volumes changed results by at most {worst:.2e}; no BranchJump"
        ),
    );
}
