//! Shot-by-shot Monte Carlo Bell experiments.
//!
//! A single shot fixes a measurement setting (spin direction, homodyne
//! phase), draws the spin outcome s = ±1 from its marginal, draws the
//! continuous homodyne outcome x from the conditional density p(x|s) by
//! tabulated inverse-CDF sampling, and converts x to a ±1 bin with the
//! classification rules of [`crate::bell`]. Every random quantity comes
//! from a counter-based stream derived from (seed, setting index), so runs
//! are reproducible and settings may be sampled concurrently.

use num_complex::Complex64;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::bell::{self, BellError, BinSets};
use crate::model::{CatParams, DetectorModel, ModelError, SpinDirection};
use crate::quadrature::{integration_domain, povm_coherent_element, HomodynePhase};

/// Grid resolution of the tabulated conditional CDFs.
const CDF_POINTS: usize = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error("measurement settings use phase 0 or π/2 only, got θ = {theta}")]
    UnsupportedPhase { theta: f64 },
    #[error("need at least {min} shots, got {got}")]
    InsufficientShots { got: usize, min: usize },
    #[error("joint density tabulation produced zero or non-finite mass")]
    DegenerateDensity,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Bell(#[from] BellError),
}

/// One side's measurement choice: a spin projection axis and one of the
/// two homodyne phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSetting {
    spin: SpinDirection,
    phase: HomodynePhase,
}

impl MeasurementSetting {
    pub fn new(spin: SpinDirection, phase: HomodynePhase) -> Result<Self, ExperimentError> {
        if !(phase.is_position() || phase.is_momentum()) {
            return Err(ExperimentError::UnsupportedPhase {
                theta: phase.theta(),
            });
        }
        Ok(Self { spin, phase })
    }

    pub fn spin(&self) -> SpinDirection {
        self.spin
    }

    pub fn phase(&self) -> HomodynePhase {
        self.phase
    }
}

/// Raw outcome of a single shot. `derived_bin` is the ±1 classification of
/// the quadrature outcome under the setting that produced the shot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShotRecord {
    pub spin_outcome: i8,
    pub quadrature_outcome: f64,
    pub derived_bin: i8,
}

/// Empirical correlation: mean of s·bin products with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub shots: usize,
}

/// POVM element P_s(a) = (1 + s·ξ·a·σ̂)/2 of the noisy spin measurement,
/// in the {|↑⟩, |↓⟩} basis. The two elements sum to the identity and have
/// eigenvalues (1 ± ξ)/2.
pub fn spin_povm_weights(s: i8, a: &SpinDirection, xi: f64) -> [[Complex64; 2]; 2] {
    assert!(s == 1 || s == -1, "spin outcome must be ±1, got {s}");
    assert!(
        (0.0..=1.0).contains(&xi),
        "fidelity must lie in [0, 1], got {xi}"
    );
    let sxi = f64::from(s) * xi;
    [
        [
            Complex64::new(0.5 * (1.0 + sxi * a.az()), 0.0),
            0.5 * sxi * Complex64::new(a.ax(), -a.ay()),
        ],
        [
            0.5 * sxi * Complex64::new(a.ax(), a.ay()),
            Complex64::new(0.5 * (1.0 - sxi * a.az()), 0.0),
        ],
    ]
}

/// Joint density p(s, x) of a spin outcome s and homodyne outcome x on the
/// entangled cat state:
///
/// p(s, x) = ½ [P_{↑↑} H_{αα} + P_{↓↓} H_{−α,−α} + 2 Re(P_{↑↓} H_{α,−α})],
///
/// with P the spin POVM element for s and H the homodyne POVM elements at
/// the setting's phase and that channel's efficiency. Nonnegative, and
/// Σ_s ∫ dx p(s, x) = 1.
pub fn joint_density(
    s: i8,
    x: f64,
    m: &MeasurementSetting,
    p: &CatParams,
    d: &DetectorModel,
) -> f64 {
    let eta = if m.phase().is_position() {
        d.eta0()
    } else {
        d.eta_pi2()
    };
    let alpha = Complex64::new(p.alpha(), 0.0);
    let weights = spin_povm_weights(s, &m.spin(), d.xi());

    let h_pp = povm_coherent_element(alpha, alpha, x, m.phase(), eta).re;
    let h_mm = povm_coherent_element(-alpha, -alpha, x, m.phase(), eta).re;
    let h_pm = povm_coherent_element(alpha, -alpha, x, m.phase(), eta);

    let density =
        0.5 * (weights[0][0].re * h_pp + weights[1][1].re * h_mm + 2.0 * (weights[0][1] * h_pm).re);
    // Mathematically ≥ 0; the sum of separately rounded terms may dip a few
    // ulp below zero where the density vanishes.
    density.max(0.0)
}

/// Tabulated sampler for one measurement setting: draws s from the
/// two-point marginal, then x from the conditional inverse CDF with linear
/// interpolation on a 2^14-point grid over the quadrature integration
/// domain. Immutable after construction and safe to share across threads.
#[derive(Debug, Clone)]
pub struct Sampler {
    setting: MeasurementSetting,
    bins: Option<BinSets>,
    prob_up: f64,
    lo: f64,
    step: f64,
    cdf_up: Vec<f64>,
    cdf_down: Vec<f64>,
}

/// Tabulates the conditional CDFs of `m` for the given state and detector.
/// The sampler is fully determined by (setting, params, detector); the
/// randomness enters only through the RNG passed to [`Sampler::sample`].
pub fn build_sampler(
    m: &MeasurementSetting,
    p: &CatParams,
    d: &DetectorModel,
) -> Result<Sampler, ExperimentError> {
    let eta = if m.phase().is_position() {
        d.eta0()
    } else {
        d.eta_pi2()
    };
    let (lo, hi) = integration_domain(p, m.phase(), eta);
    let step = (hi - lo) / (CDF_POINTS - 1) as f64;

    let mut cdf_up = Vec::with_capacity(CDF_POINTS);
    let mut cdf_down = Vec::with_capacity(CDF_POINTS);
    let mut up_prev = joint_density(1, lo, m, p, d);
    let mut down_prev = joint_density(-1, lo, m, p, d);
    let mut up_acc = 0.0;
    let mut down_acc = 0.0;
    cdf_up.push(0.0);
    cdf_down.push(0.0);
    for i in 1..CDF_POINTS {
        let x = lo + i as f64 * step;
        let up = joint_density(1, x, m, p, d);
        let down = joint_density(-1, x, m, p, d);
        up_acc += 0.5 * (up_prev + up) * step;
        down_acc += 0.5 * (down_prev + down) * step;
        cdf_up.push(up_acc);
        cdf_down.push(down_acc);
        up_prev = up;
        down_prev = down;
    }

    let total = up_acc + down_acc;
    if !(total.is_finite() && up_acc > 0.0 && down_acc > 0.0) {
        return Err(ExperimentError::DegenerateDensity);
    }
    for c in &mut cdf_up {
        *c /= up_acc;
    }
    for c in &mut cdf_down {
        *c /= down_acc;
    }
    *cdf_up.last_mut().expect("nonempty") = 1.0;
    *cdf_down.last_mut().expect("nonempty") = 1.0;

    let bins = if m.phase().is_momentum() {
        Some(BinSets::for_state(p, eta))
    } else {
        None
    };
    Ok(Sampler {
        setting: *m,
        bins,
        prob_up: up_acc / total,
        lo,
        step,
        cdf_up,
        cdf_down,
    })
}

impl Sampler {
    pub fn setting(&self) -> &MeasurementSetting {
        &self.setting
    }

    /// Marginal probability of the spin-up outcome.
    pub fn prob_spin_up(&self) -> f64 {
        self.prob_up
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ShotRecord {
        let spin: i8 = if rng.random::<f64>() < self.prob_up {
            1
        } else {
            -1
        };
        let u: f64 = rng.random();
        let cdf = if spin == 1 {
            &self.cdf_up
        } else {
            &self.cdf_down
        };
        let x = self.invert(cdf, u);
        let bin = match &self.bins {
            Some(bins) => bell::classify_momentum(x, bins),
            None => bell::classify_position(x),
        };
        ShotRecord {
            spin_outcome: spin,
            quadrature_outcome: x,
            derived_bin: bin,
        }
    }

    fn invert(&self, cdf: &[f64], u: f64) -> f64 {
        let i = cdf.partition_point(|&c| c < u);
        if i == 0 {
            return self.lo;
        }
        if i >= cdf.len() {
            return self.lo + (cdf.len() - 1) as f64 * self.step;
        }
        let (c0, c1) = (cdf[i - 1], cdf[i]);
        let frac = if c1 > c0 { (u - c0) / (c1 - c0) } else { 0.0 };
        self.lo + ((i - 1) as f64 + frac) * self.step
    }
}

/// Empirical correlation of spin × bin products.
pub fn estimate_correlation(shots: &[ShotRecord]) -> Result<CorrelationEstimate, ExperimentError> {
    if shots.len() < 2 {
        return Err(ExperimentError::InsufficientShots {
            got: shots.len(),
            min: 2,
        });
    }
    let n = shots.len() as f64;
    let sum: f64 = shots
        .iter()
        .map(|r| f64::from(r.spin_outcome) * f64::from(r.derived_bin))
        .sum();
    let mean = sum / n;
    // Products are ±1, so Σ(p − mean)² = n(1 − mean²) exactly.
    let stderr = ((1.0 - mean * mean).max(0.0) / (n - 1.0)).sqrt();
    Ok(CorrelationEstimate {
        mean,
        stderr,
        shots: shots.len(),
    })
}

/// Result of a four-setting Bell run: per-setting correlation estimates
/// and the CHSH combination S = E₁ + E₂ + E₃ − E₄ with its standard error
/// combined in quadrature.
#[derive(Debug, Clone)]
pub struct BellEstimate {
    pub settings: [MeasurementSetting; 4],
    pub correlations: [CorrelationEstimate; 4],
    pub s: f64,
    pub s_stderr: f64,
}

/// The four CHSH settings at the S-maximizing spin directions: (a, 0),
/// (a, π/2), (a′, 0), (a′, π/2); the last enters the combination with a
/// minus sign.
pub fn optimal_settings(p: &CatParams, d: &DetectorModel) -> [MeasurementSetting; 4] {
    let r = bell::s_max(p, d);
    let position = HomodynePhase::position();
    let momentum = HomodynePhase::momentum();
    [
        MeasurementSetting {
            spin: r.a_opt,
            phase: position,
        },
        MeasurementSetting {
            spin: r.a_opt,
            phase: momentum,
        },
        MeasurementSetting {
            spin: r.a_prime_opt,
            phase: position,
        },
        MeasurementSetting {
            spin: r.a_prime_opt,
            phase: momentum,
        },
    ]
}

/// Runs the default Bell experiment at the S-maximizing settings.
pub fn run_bell_experiment(
    p: &CatParams,
    d: &DetectorModel,
    shots_per_setting: usize,
    seed: u64,
) -> Result<BellEstimate, ExperimentError> {
    run_bell_experiment_with_settings(&optimal_settings(p, d), p, d, shots_per_setting, seed)
}

/// Runs a Bell experiment at explicit settings, in the sign order of the
/// CHSH combination. Deterministic given the seed: setting k draws from an
/// independent stream derived from (seed, k).
pub fn run_bell_experiment_with_settings(
    settings: &[MeasurementSetting; 4],
    p: &CatParams,
    d: &DetectorModel,
    shots_per_setting: usize,
    seed: u64,
) -> Result<BellEstimate, ExperimentError> {
    if shots_per_setting < 100 {
        return Err(ExperimentError::InsufficientShots {
            got: shots_per_setting,
            min: 100,
        });
    }

    let mut correlations = Vec::with_capacity(4);
    for (index, setting) in settings.iter().enumerate() {
        let sampler = build_sampler(setting, p, d)?;
        let mut rng = setting_rng(seed, index);
        let records: Vec<ShotRecord> = (0..shots_per_setting)
            .map(|_| sampler.sample(&mut rng))
            .collect();
        correlations.push(estimate_correlation(&records)?);
    }
    let correlations: [CorrelationEstimate; 4] =
        correlations.try_into().expect("exactly four settings");

    let s =
        correlations[0].mean + correlations[1].mean + correlations[2].mean - correlations[3].mean;
    let s_stderr = correlations
        .iter()
        .map(|c| c.stderr * c.stderr)
        .sum::<f64>()
        .sqrt();
    Ok(BellEstimate {
        settings: *settings,
        correlations,
        s,
        s_stderr,
    })
}

/// Independent deterministic stream for one setting of one run.
fn setting_rng(seed: u64, setting_index: usize) -> ChaCha12Rng {
    // splitmix64 finalizer over (seed, index)
    let mut z = seed.wrapping_add((setting_index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    ChaCha12Rng::seed_from_u64(z)
}
