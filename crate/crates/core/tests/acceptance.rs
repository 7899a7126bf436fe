//! Acceptance suite: one test per shipping criterion, each printing a
//! single PASS line with the measured values and its runtime. Run with
//! `cargo test -p catbell --test acceptance -- --nocapture` to see them.

mod common;

use std::time::{Duration, Instant};

use catbell::bell;
use catbell::crosscheck;
use catbell::experiment::{self, MeasurementSetting};
use catbell::model::{CatParams, DetectorModel, SpinDirection};
use catbell::quadrature::{self, HomodynePhase};

fn params(alpha: f64) -> CatParams {
    CatParams::new(alpha).unwrap()
}

fn finish(name: &str, detail: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    println!("{name} PASS  {detail}  ({elapsed:.2?})");
    assert!(
        elapsed < budget,
        "{name} exceeded its {budget:?} runtime budget: {elapsed:?}"
    );
}

#[test]
fn criterion_01_asymptotic_violation() {
    let start = Instant::now();
    let r = bell::s_max(&params(6.0), &DetectorModel::ideal());
    assert!(
        (2.3689..=2.3729).contains(&r.s_max),
        "s_max(6, 1, 1) = {} outside [2.3689, 2.3729]",
        r.s_max
    );
    finish(
        "criterion 01",
        &format!("s_max(α=6, η=1, ξ=1) = {:.6} ∈ [2.3689, 2.3729]", r.s_max),
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_02_efficiency_threshold() {
    let start = Instant::now();
    let threshold = bell::threshold_eta(&params(2.0), 1.0).unwrap();
    assert!(
        (0.655..=0.675).contains(&threshold),
        "threshold_eta(2, 1) = {threshold} outside [0.655, 0.675]"
    );
    finish(
        "criterion 02",
        &format!("threshold_eta(α=2, ξ=1) = {threshold:.4} ∈ [0.655, 0.675]"),
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_03_threshold_drift() {
    let start = Instant::now();
    let at_two = bell::threshold_eta(&params(2.0), 1.0).unwrap();
    let at_three = bell::threshold_eta(&params(3.0), 1.0).unwrap();
    assert!(
        at_three <= at_two,
        "threshold must not grow with α: {at_three} > {at_two}"
    );
    finish(
        "criterion 03",
        &format!("threshold_eta(α=3) = {at_three:.4} ≤ threshold_eta(α=2) = {at_two:.4}"),
        start,
        Duration::from_secs(20),
    );
}

#[test]
fn criterion_04_amplitude_sweep_shape() {
    let start = Instant::now();
    let asymptote = 2.37088;
    let mut worst_plateau = 0.0f64;
    let mut worst_excess_rel = 0.0f64;
    for eta in [1.0, 0.95, 0.9] {
        let d = DetectorModel::new(eta, 1.0).unwrap();
        let mut previous = f64::INFINITY;
        for alpha in [1.0, 2.0, 3.0, 4.0, 5.0, 6.0] {
            let p = params(alpha);
            let exact = bell::s_max(&p, &d).s_max;
            if (eta - 1.0).abs() < f64::EPSILON {
                if alpha >= 3.0 {
                    let dev = (exact - asymptote).abs();
                    worst_plateau = worst_plateau.max(dev);
                    assert!(dev <= 1e-3, "η=1 α={alpha}: |{exact} − {asymptote}| > 1e−3");
                }
            } else if alpha >= 3.0 {
                let excess = exact - 2.0;
                let predicted = bell::s_max_approx(&p, &d) - 2.0;
                let rel = (excess - predicted).abs() / predicted;
                worst_excess_rel = worst_excess_rel.max(rel);
                assert!(
                    rel <= 0.05,
                    "η={eta} α={alpha}: excess {excess} vs predicted {predicted} off by {rel}"
                );
                assert!(exact > 2.0 && exact < previous, "curve must decay toward 2");
                previous = exact;
            }
        }
    }
    finish(
        "criterion 04",
        &format!(
            "η=1 plateau within {worst_plateau:.2e} of 2.37088; damped excess matches prediction within {worst_excess_rel:.2e} rel"
        ),
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_05_closed_form_identity() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for alpha in [1.0, 2.0, 4.0, 6.0] {
        for eta in [1.0, 0.9, 0.7] {
            let closed = bell::c0_diag(&params(alpha), eta);
            let quadrature = common::position_observable_by_quadrature(alpha, alpha, eta).re;
            let diff = (closed - quadrature).abs();
            worst = worst.max(diff);
            assert!(
                diff <= 1e-9,
                "α={alpha} η={eta}: closed {closed} vs quadrature {quadrature}"
            );
        }
    }
    finish(
        "criterion 05",
        &format!("c0_diag matches signed quadrature on 12-point lattice, worst |Δ| = {worst:.2e}"),
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_06_symmetry_suite() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for alpha in [1.0, 2.0, 4.0, 6.0] {
        for eta in [1.0, 0.9, 0.7] {
            let cross = common::position_observable_by_quadrature(alpha, -alpha, eta).norm();
            let diag_p = common::position_observable_by_quadrature(alpha, alpha, eta).re;
            let diag_m = common::position_observable_by_quadrature(-alpha, -alpha, eta).re;
            let fringe_p = common::fringe_observable_by_quadrature(alpha, alpha, eta).re;
            let fringe_m = common::fringe_observable_by_quadrature(-alpha, -alpha, eta).re;
            for residual in [cross, (diag_p + diag_m).abs(), (fringe_p - fringe_m).abs()] {
                worst = worst.max(residual);
                assert!(residual <= 1e-8, "α={alpha} η={eta}: residual {residual}");
            }
        }
    }
    finish(
        "criterion 06",
        &format!("operator symmetries hold by direct quadrature, worst residual = {worst:.2e}"),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_07_oracle_equivalence() {
    let start = Instant::now();
    let mut worst_dist = 0.0f64;
    let mut worst_element = 0.0f64;
    let mut worst_smax = 0.0f64;
    for alpha in [1.0, 2.0, 3.0] {
        for eta in [1.0, 0.9, 0.7] {
            let report = crosscheck::oracle_vs_analytic(&params(alpha), eta).unwrap();
            for entry in &report.entries {
                let (limit, slot): (f64, &mut f64) = match entry.name {
                    "dist_superposition_plus" | "dist_superposition_minus" => {
                        (1e-7, &mut worst_dist)
                    }
                    "s_max" => (5e-6, &mut worst_smax),
                    _ => (1e-6, &mut worst_element),
                };
                *slot = slot.max(entry.discrepancy);
                assert!(
                    entry.discrepancy <= limit,
                    "α={alpha} η={eta} {}: discrepancy {} exceeds {limit}",
                    entry.name,
                    entry.discrepancy
                );
            }
        }
    }
    finish(
        "criterion 07",
        &format!(
            "oracle agrees: distributions ≤ {worst_dist:.2e} (sup), elements ≤ {worst_element:.2e}, s_max ≤ {worst_smax:.2e}"
        ),
        start,
        Duration::from_secs(180),
    );
}

#[test]
fn criterion_08_visibility_nonlocality_link() {
    let start = Instant::now();
    let mut worst_extraction = 0.0f64;
    let mut worst_prediction = 0.0f64;
    for alpha in [0.5, 1.0, 2.0, 4.0, 6.0] {
        let p = params(alpha);
        for eta in [1.0, 0.9, 0.7, 0.5] {
            let extracted = common::extract_fringe_visibility(&p, eta);
            let visibility = p.visibility(eta);
            let diff = (extracted - visibility).abs();
            worst_extraction = worst_extraction.max(diff);
            assert!(
                diff <= 1e-6,
                "α={alpha} η={eta}: extracted {extracted} vs {visibility}"
            );

            if f64::sqrt(eta) * alpha >= 3.0 {
                let predicted = bell::cpi2_offdiag(&p, eta).re * std::f64::consts::FRAC_PI_2;
                let rel = (predicted - visibility).abs() / visibility;
                worst_prediction = worst_prediction.max(rel);
                assert!(
                    rel <= 0.01,
                    "α={alpha} η={eta}: |c|·π/2 = {predicted} vs visibility {visibility}"
                );
            }
        }
    }
    finish(
        "criterion 08",
        &format!(
            "fringe visibility = e^(−2α²(1−η)) within {worst_extraction:.2e}; |c|·π/2 tracks it within {worst_prediction:.2e} rel"
        ),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_09_xi_scaling() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for alpha in [1.0, 2.0, 4.0, 6.0] {
        for eta in [1.0, 0.9, 0.7] {
            let p = params(alpha);
            let unit = bell::s_max(&p, &DetectorModel::new(eta, 1.0).unwrap()).s_max;
            for xi in [0.0, 0.25, 0.5, 0.9] {
                let scaled = bell::s_max(&p, &DetectorModel::new(eta, xi).unwrap()).s_max;
                let diff = (scaled - xi * unit).abs();
                worst = worst.max(diff);
                assert!(diff <= 1e-12, "α={alpha} η={eta} ξ={xi}");
            }
        }
    }
    finish(
        "criterion 09",
        &format!("s_max(α, η, ξ) = ξ·s_max(α, η, 1) across the lattice, worst |Δ| = {worst:.2e}"),
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_10_monte_carlo_consistency() {
    let start = Instant::now();
    let p = params(6.0);
    let d = DetectorModel::ideal();
    let reference = 2.3709;
    let mut excursions = 0usize;
    let mut worst_sigma = 0.0f64;
    for seed in 0..20u64 {
        let run = experiment::run_bell_experiment(&p, &d, 1_000_000, seed).unwrap();
        let sigmas = (run.s - reference).abs() / run.s_stderr;
        worst_sigma = worst_sigma.max(sigmas);
        if sigmas > 4.0 {
            excursions += 1;
        }
    }
    assert!(
        excursions <= 1,
        "{excursions} of 20 seeds landed beyond 4σ of {reference} (worst {worst_sigma:.2}σ)"
    );
    finish(
        "criterion 10",
        &format!(
            "10⁶-shot runs at 20 seeds stay within 4σ of {reference} ({excursions} excursion(s), worst {worst_sigma:.2}σ)"
        ),
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_11_no_signalling() {
    let start = Instant::now();
    let p = params(2.0);
    let d = DetectorModel::new(0.85, 0.7).unwrap();
    let reference_dir = SpinDirection::z_axis();
    let probes = [
        SpinDirection::x_axis(),
        SpinDirection::y_axis(),
        SpinDirection::new(0.48, -0.6, 0.64).unwrap(),
    ];
    let mut sup = 0.0f64;
    for phase in [HomodynePhase::position(), HomodynePhase::momentum()] {
        let eta = if phase.is_position() {
            d.eta0()
        } else {
            d.eta_pi2()
        };
        let (lo, hi) = quadrature::integration_domain(&p, phase, eta);
        let reference = MeasurementSetting::new(reference_dir, phase).unwrap();
        for dir in probes {
            let m = MeasurementSetting::new(dir, phase).unwrap();
            for i in 0..=2000 {
                let x = lo + (hi - lo) * i as f64 / 2000.0;
                let base = experiment::joint_density(1, x, &reference, &p, &d)
                    + experiment::joint_density(-1, x, &reference, &p, &d);
                let probe = experiment::joint_density(1, x, &m, &p, &d)
                    + experiment::joint_density(-1, x, &m, &p, &d);
                sup = sup.max((probe - base).abs());
            }
        }
    }
    assert!(
        sup <= 1e-10,
        "marginal depends on the spin direction: sup = {sup}"
    );
    finish(
        "criterion 11",
        &format!("quadrature marginal independent of spin direction, sup |Δ| = {sup:.2e}"),
        start,
        Duration::from_secs(30),
    );
}
