//! Physical parameters and closed-form quantities of the entangled cat
//! state
//!
//! The state under study is `(|↑⟩|α⟩ + |↓⟩|−α⟩)/√2`: a spin-1/2 entangled
//! with two coherent wave packets of a harmonic oscillator, with real
//! amplitude α. This module holds the parameter types shared by the rest
//! of the crate and the elementary scalar quantities that have closed
//! forms: the overlap ⟨−α|α⟩, the normalization constants of the even/odd
//! superpositions (|α⟩ ± |−α⟩)/√N±, the interference fringe period, the
//! fringe visibility under inefficient detection, and the detector
//! resolution.

use thiserror::Error;

/// Smallest amplitude for which the odd superposition Ψ₋ is treated as
/// well defined; below this N₋ = 2(1 − e^{−2α²}) ≈ 4α² suffers
/// catastrophic cancellation.
pub const MIN_ALPHA_FOR_MINUS: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("coherent amplitude must be real, finite and > 0, got {alpha}")]
    InvalidAlpha { alpha: f64 },
    #[error("detector efficiency must lie in (0, 1], got {eta}")]
    InvalidEfficiency { eta: f64 },
    #[error("spin-measurement fidelity must lie in [0, 1], got {xi}")]
    InvalidFidelity { xi: f64 },
    #[error("spin direction must be a unit vector, got squared norm {norm_sqr}")]
    NotUnitVector { norm_sqr: f64 },
    #[error(
        "amplitude {alpha} is below {MIN_ALPHA_FOR_MINUS}; the odd superposition is degenerate"
    )]
    DegenerateMinus { alpha: f64 },
}

/// Real amplitude α of the coherent wave packets, in canonical
/// dimensionless harmonic-oscillator units.
///
/// The packets are centered around the dimensionless positions ±√2·α and
/// have ground-state widths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatParams {
    alpha: f64,
}

impl CatParams {
    /// α must be finite and strictly positive: α = 0 leaves the odd
    /// superposition undefined and complex amplitudes are out of scope.
    pub fn new(alpha: f64) -> Result<Self, ModelError> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(ModelError::InvalidAlpha { alpha });
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Scalar product ⟨−α|α⟩ = e^{−2α²} of the two wave packets.
    pub fn overlap(&self) -> f64 {
        (-2.0 * self.alpha * self.alpha).exp()
    }

    /// Normalization constant N± = 2(1 ± e^{−2α²}) of the superposition
    /// (|α⟩ ± |−α⟩)/√N±.
    ///
    /// N₋ evaluation is rejected for α < 1e−8 where it vanishes
    /// quadratically.
    pub fn norm_constant(&self, sign: SuperpositionSign) -> Result<f64, ModelError> {
        match sign {
            SuperpositionSign::Plus => Ok(2.0 * (1.0 + self.overlap())),
            SuperpositionSign::Minus => {
                if self.alpha < MIN_ALPHA_FOR_MINUS {
                    Err(ModelError::DegenerateMinus { alpha: self.alpha })
                } else {
                    Ok(2.0 * (1.0 - self.overlap()))
                }
            }
        }
    }

    /// Spacing T = π/(√(2η)·α) between the interference fringes in the
    /// momentum distribution of the superpositions.
    pub fn fringe_period(&self, eta: f64) -> f64 {
        assert_efficiency(eta);
        std::f64::consts::PI / ((2.0 * eta).sqrt() * self.alpha)
    }

    /// Contrast e^{−2α²(1−η)} of the interference fringes observed with a
    /// detector of efficiency η; equals 1 iff η = 1.
    pub fn visibility(&self, eta: f64) -> f64 {
        assert_efficiency(eta);
        (-2.0 * self.alpha * self.alpha * (1.0 - eta)).exp()
    }
}

/// Quadrature resolution √((1/η − 1)/2) of a homodyne detector with
/// efficiency η, in the canonical dimensionless units. Zero for η = 1.
pub fn detector_resolution(eta: f64) -> f64 {
    assert_efficiency(eta);
    ((1.0 / eta - 1.0) / 2.0).sqrt()
}

pub(crate) fn assert_efficiency(eta: f64) {
    assert!(
        eta.is_finite() && eta > 0.0 && eta <= 1.0,
        "detector efficiency must lie in (0, 1], got {eta}"
    );
}

/// Detector imperfections: homodyne efficiencies per measurement phase and
/// the spin-measurement fidelity ξ.
///
/// The two homodyne channels (θ = 0 and θ = π/2) may have different
/// efficiencies; the single-η constructors set them equal. ξ = 1 is a
/// perfect spin projection, ξ = 0 the completely noisy limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorModel {
    eta0: f64,
    eta_pi2: f64,
    xi: f64,
}

impl DetectorModel {
    /// Single-efficiency mode: both homodyne channels share η.
    pub fn new(eta: f64, xi: f64) -> Result<Self, ModelError> {
        Self::with_phase_efficiencies(eta, eta, xi)
    }

    /// A sensitive/insensitive detector combination with distinct
    /// efficiencies for the θ = 0 and θ = π/2 channels.
    pub fn with_phase_efficiencies(eta0: f64, eta_pi2: f64, xi: f64) -> Result<Self, ModelError> {
        for eta in [eta0, eta_pi2] {
            if !eta.is_finite() || eta <= 0.0 || eta > 1.0 {
                return Err(ModelError::InvalidEfficiency { eta });
            }
        }
        if !xi.is_finite() || !(0.0..=1.0).contains(&xi) {
            return Err(ModelError::InvalidFidelity { xi });
        }
        Ok(Self { eta0, eta_pi2, xi })
    }

    /// Noise-free detection: η₀ = η_{π/2} = ξ = 1.
    pub fn ideal() -> Self {
        Self {
            eta0: 1.0,
            eta_pi2: 1.0,
            xi: 1.0,
        }
    }

    pub fn eta0(&self) -> f64 {
        self.eta0
    }

    pub fn eta_pi2(&self) -> f64 {
        self.eta_pi2
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }
}

/// Unit 3-vector along which the spin-1/2 subsystem is projected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinDirection {
    ax: f64,
    ay: f64,
    az: f64,
}

impl SpinDirection {
    /// Tolerance on the squared norm accepted by [`SpinDirection::new`];
    /// the stored components are rescaled to unit norm at machine
    /// precision.
    pub const NORM_TOLERANCE: f64 = 1e-6;

    pub fn new(ax: f64, ay: f64, az: f64) -> Result<Self, ModelError> {
        let norm_sqr = ax * ax + ay * ay + az * az;
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > Self::NORM_TOLERANCE {
            return Err(ModelError::NotUnitVector { norm_sqr });
        }
        let norm = norm_sqr.sqrt();
        Ok(Self {
            ax: ax / norm,
            ay: ay / norm,
            az: az / norm,
        })
    }

    pub fn x_axis() -> Self {
        Self {
            ax: 1.0,
            ay: 0.0,
            az: 0.0,
        }
    }

    pub fn y_axis() -> Self {
        Self {
            ax: 0.0,
            ay: 1.0,
            az: 0.0,
        }
    }

    pub fn z_axis() -> Self {
        Self {
            ax: 0.0,
            ay: 0.0,
            az: 1.0,
        }
    }

    pub fn ax(&self) -> f64 {
        self.ax
    }

    pub fn ay(&self) -> f64 {
        self.ay
    }

    pub fn az(&self) -> f64 {
        self.az
    }

    pub fn negated(&self) -> Self {
        Self {
            ax: -self.ax,
            ay: -self.ay,
            az: -self.az,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.ax * self.ax + self.ay * self.ay + self.az * self.az
    }
}

/// Selects the even (Ψ₊) or odd (Ψ₋) superposition of the wave packets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperpositionSign {
    Plus,
    Minus,
}

impl SuperpositionSign {
    pub fn signum(&self) -> f64 {
        match self {
            SuperpositionSign::Plus => 1.0,
            SuperpositionSign::Minus => -1.0,
        }
    }
}
