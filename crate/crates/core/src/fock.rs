//! Brute-force verification path in a truncated number basis.
//!
//! Every distribution and matrix element of the analytic modules can be
//! recomputed here from first principles: states are expanded over Fock
//! states |n⟩, quadrature wavefunctions are built from Hermite functions
//! by a stable normalized recurrence, and inefficient detection is applied
//! by numeric kernel smearing. Nothing in this module relies on the closed
//! Gaussian forms it is used to check.

use num_complex::Complex64;
use thiserror::Error;

use crate::integrate;
use crate::model::{
    assert_efficiency, detector_resolution, CatParams, DetectorModel, ModelError, SuperpositionSign,
};
use crate::quadrature::{povm_kernel, HomodynePhase, QuadratureError, QuadratureGrid};

const SQRT_2: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error("n_max = {got} is insufficient for |α| = {alpha_mag}; need at least {required}")]
    InsufficientNmax {
        alpha_mag: f64,
        required: usize,
        got: usize,
    },
    #[error("grid does not cover the state support: edge density {edge} vs peak {peak}")]
    InsufficientCoverage { edge: f64, peak: f64 },
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Number-basis amplitudes c₀…c_{n_max} of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    coeffs: Vec<Complex64>,
}

impl FockVector {
    /// Wraps raw amplitudes; no normalization is imposed.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a Fock vector needs at least one amplitude"
        );
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Quadrature-representation wavefunction ⟨x_θ|ψ⟩ = Σₙ cₙ e^{−inθ} ψₙ(x).
    pub fn position_wavefunction(&self, theta: HomodynePhase, x: f64) -> Complex64 {
        let psis = number_wavefunctions_upto(self.n_max(), x);
        let rot = Complex64::from_polar(1.0, -theta.theta());
        let mut phase = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, psi) in self.coeffs.iter().zip(&psis) {
            acc += c * phase * *psi;
            phase *= rot;
        }
        acc
    }
}

/// Truncation order keeping the Poisson tail of a coherent state below
/// 1e−12: ⌈|α|² + 8|α| + 25⌉.
pub fn required_n_max(alpha_mag: f64) -> usize {
    (alpha_mag * alpha_mag + 8.0 * alpha_mag + 25.0).ceil() as usize
}

/// Coherent state in the number basis, cₙ = e^{−|α|²/2} αⁿ/√(n!), built by
/// the stable recurrence cₙ = cₙ₋₁·α/√n. Refuses truncations below
/// [`required_n_max`] rather than silently losing norm.
pub fn coherent_fock(alpha: Complex64, n_max: usize) -> Result<FockVector, FockError> {
    let required = required_n_max(alpha.norm());
    if n_max < required {
        return Err(FockError::InsufficientNmax {
            alpha_mag: alpha.norm(),
            required,
            got: n_max,
        });
    }
    let mut coeffs = Vec::with_capacity(n_max + 1);
    coeffs.push(Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0));
    for n in 1..=n_max {
        let next = coeffs[n - 1] * alpha / (n as f64).sqrt();
        coeffs.push(next);
    }
    let vector = FockVector { coeffs };
    debug_assert!(vector.norm_sqr() >= 1.0 - 1e-10);
    Ok(vector)
}

/// Number-basis expansion of the superposition (|α⟩ ± |−α⟩)/√N±.
///
/// Since cₙ(−α) = (−1)ⁿ cₙ(α) exactly, the odd amplitudes of the even
/// superposition (and vice versa) cancel to exactly zero.
pub fn superposition_fock(
    sign: SuperpositionSign,
    p: &CatParams,
    n_max: usize,
) -> Result<FockVector, FockError> {
    let norm = p.norm_constant(sign)?;
    let plus = coherent_fock(Complex64::new(p.alpha(), 0.0), n_max)?;
    let minus = coherent_fock(Complex64::new(-p.alpha(), 0.0), n_max)?;
    let scale = norm.sqrt().recip();
    let coeffs = plus
        .coeffs()
        .iter()
        .zip(minus.coeffs())
        .map(|(a, b)| (a + sign.signum() * b) * scale)
        .collect();
    Ok(FockVector { coeffs })
}

/// Hermite-function wavefunction ⟨x|n⟩ = π^{−1/4}(2ⁿn!)^{−1/2} Hₙ(x) e^{−x²/2},
/// orthonormal on the real line, evaluated by the normalized three-term
/// recurrence ψₙ = x√(2/n)·ψₙ₋₁ − √((n−1)/n)·ψₙ₋₂ (raw Hₙ would overflow
/// near n ≈ 150).
pub fn number_wavefunction(n: usize, x: f64) -> f64 {
    *number_wavefunctions_upto(n, x).last().expect("nonempty")
}

/// ψ₀(x)…ψ_{n_max}(x) in one recurrence pass.
pub fn number_wavefunctions_upto(n_max: usize, x: f64) -> Vec<f64> {
    let mut psis = Vec::with_capacity(n_max + 1);
    psis.push(0.7511255444649425 * (-x * x / 2.0).exp()); // π^{−1/4} e^{−x²/2}
    if n_max >= 1 {
        psis.push(SQRT_2 * x * psis[0]);
    }
    for n in 2..=n_max {
        let n_f = n as f64;
        let next = x * (2.0 / n_f).sqrt() * psis[n - 1] - ((n_f - 1.0) / n_f).sqrt() * psis[n - 2];
        psis.push(next);
    }
    psis
}

/// Quadrature distribution of a Fock-expanded state: the perfect density
/// |⟨x_θ|ψ⟩|² sampled on [lo, hi], then numerically smeared with the
/// detection kernel when η < 1.
///
/// Fails if the grid does not cover the state support (edge density above
/// 1e−10 of the peak).
pub fn oracle_distribution(
    state: &FockVector,
    theta: HomodynePhase,
    eta: f64,
    lo: f64,
    hi: f64,
    points: usize,
) -> Result<QuadratureGrid, FockError> {
    assert_efficiency(eta);
    let perfect = QuadratureGrid::from_fn(lo, hi, points, |x| {
        state.position_wavefunction(theta, x).norm_sqr()
    })?;
    let peak = perfect.values().iter().fold(0.0f64, |a, &b| a.max(b));
    let edge = perfect.values()[0].max(*perfect.values().last().expect("nonempty"));
    if edge > 1e-10 * peak {
        return Err(FockError::InsufficientCoverage { edge, peak });
    }
    if eta == 1.0 {
        return Ok(perfect);
    }
    let values = (0..points)
        .map(|i| crate::quadrature::smeared_density(&perfect, eta, perfect.x(i)))
        .collect::<Result<Vec<f64>, QuadratureError>>()?;
    Ok(QuadratureGrid::new(lo, hi, values)?)
}

/// Which dichotomic observable a matrix element refers to: the sign-binned
/// position channel Ĉ₀ or the fringe-binned momentum channel Ĉ_{π/2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DichotomicObservable {
    PositionSign,
    FringeBins,
}

/// Matrix element ⟨bra|Ĉ|ket⟩ computed entirely on grids: the cross
/// density conj(⟨y_θ|bra⟩)·⟨y_θ|ket⟩ is tabulated from Hermite functions,
/// smeared with the detection kernel for η < 1, and integrated over the
/// signed bins panel by panel.
pub fn oracle_matrix_element(
    which: DichotomicObservable,
    bra: &FockVector,
    ket: &FockVector,
    p: &CatParams,
    d: &DetectorModel,
) -> Complex64 {
    let (theta, eta) = match which {
        DichotomicObservable::PositionSign => (HomodynePhase::position(), d.eta0()),
        DichotomicObservable::FringeBins => (HomodynePhase::momentum(), d.eta_pi2()),
    };

    // Cross-density grid. The support is bounded by the displaced packets
    // and by the classical turning point of the highest Fock component.
    let n_top = bra.n_max().max(ket.n_max());
    let reach = (SQRT_2 * p.alpha() + 12.0).max((2.0 * n_top as f64 + 1.0).sqrt() + 6.0);
    const GRID_POINTS: usize = 8192;
    let step = 2.0 * reach / (GRID_POINTS - 1) as f64;
    let cross: Vec<Complex64> = (0..GRID_POINTS)
        .map(|i| {
            let y = -reach + i as f64 * step;
            let psis = number_wavefunctions_upto(n_top, y);
            let rot = Complex64::from_polar(1.0, -theta.theta());
            let mut phase = Complex64::new(1.0, 0.0);
            let mut bra_val = Complex64::new(0.0, 0.0);
            let mut ket_val = Complex64::new(0.0, 0.0);
            for (n, &psi) in psis.iter().enumerate() {
                if let Some(c) = bra.coeffs().get(n) {
                    bra_val += c * phase * psi;
                }
                if let Some(c) = ket.coeffs().get(n) {
                    ket_val += c * phase * psi;
                }
                phase *= rot;
            }
            bra_val.conj() * ket_val
        })
        .collect();

    // ⟨bra|Ĥ(x;θ)|ket⟩ at arbitrary x: exact product for η = 1, kernel
    // smearing of the tabulated cross density otherwise.
    let element_at = |x: f64| -> Complex64 {
        if eta == 1.0 {
            bra.position_wavefunction(theta, x).conj() * ket.position_wavefunction(theta, x)
        } else {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, g) in cross.iter().enumerate() {
                let y = -reach + i as f64 * step;
                let k = povm_kernel(x, y, eta).expect("eta < 1 in this branch");
                let w = if i == 0 || i == GRID_POINTS - 1 {
                    0.5
                } else {
                    1.0
                };
                acc += w * k * g;
            }
            acc * step
        }
    };

    let x_max = if eta == 1.0 {
        reach
    } else {
        eta.sqrt() * reach + 6.0 * detector_resolution(eta) + 1.0
    };
    const MAX_PANEL: f64 = 0.45;
    match which {
        DichotomicObservable::PositionSign => {
            integrate::panels_complex(&element_at, 0.0, x_max, MAX_PANEL)
                - integrate::panels_complex(&element_at, -x_max, 0.0, MAX_PANEL)
        }
        DichotomicObservable::FringeBins => {
            let t = p.fringe_period(eta);
            let bins = (x_max / t).ceil() as i64 + 1;
            let mut total = Complex64::new(0.0, 0.0);
            for n in -bins..=bins {
                let n = n as f64;
                total += integrate::panels_complex(
                    &element_at,
                    (n - 0.25) * t,
                    (n + 0.25) * t,
                    MAX_PANEL,
                );
                total -= integrate::panels_complex(
                    &element_at,
                    (n + 0.25) * t,
                    (n + 0.75) * t,
                    MAX_PANEL,
                );
            }
            total
        }
    }
}
