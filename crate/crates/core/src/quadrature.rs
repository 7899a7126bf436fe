//! Homodyne POVM elements, quadrature wavefunctions and measured
//! probability distributions.
//!
//! The quadrature at phase θ is x̂_θ = (e^{iθ}â† + e^{−iθ}â)/√2; θ = 0 is
//! position, θ = π/2 momentum. Homodyne detection with efficiency η < 1 is
//! the Gaussian POVM
//!
//! Ĥ(x; θ) = (π(1−η))^{−1/2} exp(−(x/√η − x̂_θ)²/(1/η − 1)),
//!
//! a blurred quadrature measurement with resolution √((1/η−1)/2). In the
//! limit η = 1 the kernel degenerates to the projector |x_θ⟩⟨x_θ| and the
//! exact branch must be used instead of pointwise kernel evaluation.

use num_complex::Complex64;
use thiserror::Error;

use crate::integrate;
use crate::model::{
    assert_efficiency, detector_resolution, CatParams, ModelError, SpinDirection, SuperpositionSign,
};

const FRAC_1_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI / 2.0; // 1/√π
const SQRT_2: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("η = 1 turns the homodyne kernel into a point mass; use the exact η = 1 path")]
    SingularKernel,
    #[error("detector efficiency must lie in (0, 1], got {eta}")]
    InvalidEfficiency { eta: f64 },
    #[error("grid bounds must satisfy lo < hi, got [{lo}, {hi}]")]
    InvalidGridBounds { lo: f64, hi: f64 },
    #[error("grid needs at least 2 points, got {n}")]
    GridTooSmall { n: usize },
    #[error("density value at grid index {index} is {value}; densities must be nonnegative")]
    NegativeDensity { index: usize, value: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Homodyne local-oscillator phase θ, stored reduced into [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomodynePhase {
    theta: f64,
}

impl HomodynePhase {
    pub fn new(theta: f64) -> Result<Self, QuadratureError> {
        if !theta.is_finite() {
            return Err(QuadratureError::InvalidGridBounds {
                lo: theta,
                hi: theta,
            });
        }
        Ok(Self {
            theta: theta.rem_euclid(2.0 * std::f64::consts::PI),
        })
    }

    /// θ = 0, the position quadrature.
    pub fn position() -> Self {
        Self { theta: 0.0 }
    }

    /// θ = π/2, the momentum quadrature.
    pub fn momentum() -> Self {
        Self {
            theta: std::f64::consts::FRAC_PI_2,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn is_position(&self) -> bool {
        self.theta == 0.0
    }

    pub fn is_momentum(&self) -> bool {
        self.theta == std::f64::consts::FRAC_PI_2
    }
}

/// Uniformly spaced samples of a probability density on [lo, hi].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    lo: f64,
    hi: f64,
    values: Vec<f64>,
}

impl QuadratureGrid {
    pub fn new(lo: f64, hi: f64, values: Vec<f64>) -> Result<Self, QuadratureError> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(QuadratureError::InvalidGridBounds { lo, hi });
        }
        if values.len() < 2 {
            return Err(QuadratureError::GridTooSmall { n: values.len() });
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0)
        {
            return Err(QuadratureError::NegativeDensity { index, value });
        }
        Ok(Self { lo, hi, values })
    }

    pub fn from_fn(
        lo: f64,
        hi: f64,
        n: usize,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self, QuadratureError> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(QuadratureError::InvalidGridBounds { lo, hi });
        }
        if n < 2 {
            return Err(QuadratureError::GridTooSmall { n });
        }
        let step = (hi - lo) / (n - 1) as f64;
        let values = (0..n).map(|i| f(lo + i as f64 * step)).collect();
        Self::new(lo, hi, values)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires ≥ 2 points
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.values.len() - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.lo + i as f64 * self.step()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// (x, density) pairs in grid order.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let step = self.step();
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.lo + i as f64 * step, v))
    }

    /// Trapezoidal integral of the sampled density.
    pub fn trapezoid(&self) -> f64 {
        integrate::trapezoid(&self.values, self.step())
    }

    /// Largest pointwise difference to another grid with identical layout.
    pub fn sup_distance(&self, other: &QuadratureGrid) -> f64 {
        assert_eq!(
            self.values.len(),
            other.values.len(),
            "grids must share a layout"
        );
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Quadrature-representation wavefunction ⟨x_θ|α⟩ of a coherent state.
///
/// With α_θ = α e^{−iθ} this is
/// π^{−1/4} exp(−(x − √2 Re α_θ)²/2 + i√2 x Im α_θ − i Re α_θ Im α_θ),
/// normalized so |⟨x_θ|α⟩|² integrates to 1 over x.
pub fn coherent_wavefunction(alpha: Complex64, theta: HomodynePhase, x: f64) -> Complex64 {
    let rotated = alpha * Complex64::from_polar(1.0, -theta.theta());
    let (ar, ai) = (rotated.re, rotated.im);
    let exponent = Complex64::new(
        -0.5 * (x - SQRT_2 * ar) * (x - SQRT_2 * ar),
        SQRT_2 * x * ai - ar * ai,
    );
    FRAC_1_SQRT_PI.sqrt() * exponent.exp()
}

/// Gaussian smearing kernel K_η(x, y) of the homodyne POVM for η < 1:
/// the density of recording outcome x when the true quadrature is y.
///
/// Normalized so ∫ K_η(x, y) dx = 1 for every y. Pointwise evaluation at
/// η = 1 is rejected; the kernel is a point mass there.
pub fn povm_kernel(x: f64, y: f64, eta: f64) -> Result<f64, QuadratureError> {
    if !eta.is_finite() || eta <= 0.0 || eta > 1.0 {
        return Err(QuadratureError::InvalidEfficiency { eta });
    }
    if eta == 1.0 {
        return Err(QuadratureError::SingularKernel);
    }
    let spread = 1.0 / eta - 1.0;
    let d = x / eta.sqrt() - y;
    Ok((std::f64::consts::PI * (1.0 - eta)).sqrt().recip() * (-d * d / spread).exp())
}

/// Coherent-state matrix element ⟨β|Ĥ(x; θ)|α⟩ of the homodyne POVM.
///
/// Evaluated in closed Gaussian form. The same expression is exact for the
/// whole range η ∈ (0, 1]; at η = 1 it reduces to the pure product
/// conj(⟨x_θ|β⟩)·⟨x_θ|α⟩. Diagonal elements (β = α) are real and
/// nonnegative, and ∫ dx ⟨α|Ĥ(x; θ)|α⟩ = 1 for any η.
pub fn povm_coherent_element(
    beta: Complex64,
    alpha: Complex64,
    x: f64,
    theta: HomodynePhase,
    eta: f64,
) -> Complex64 {
    assert_efficiency(eta);
    let rot = Complex64::from_polar(1.0, -theta.theta());
    let a = alpha * rot;
    let b = beta * rot;

    // ∫ dy K_η(x,y) conj(⟨y_θ|β⟩) ⟨y_θ|α⟩ collapses to
    // exp(−x² + √η·x·w + (1−η)w²/4 − Re(a)² − Re(b)² − i(Re(a)Im(a) − Re(b)Im(b)))/√π
    // with w = √2(Re(a) + Re(b)) + i√2(Im(a) − Im(b)); the form is free of
    // the 1/(1−η) cancellation, so no separate η = 1 branch is needed.
    let w = Complex64::new(SQRT_2 * (a.re + b.re), SQRT_2 * (a.im - b.im));
    let exponent = Complex64::new(
        -x * x - a.re * a.re - b.re * b.re,
        -(a.re * a.im - b.re * b.im),
    ) + eta.sqrt() * x * w
        + 0.25 * (1.0 - eta) * w * w;
    FRAC_1_SQRT_PI * exponent.exp()
}

/// Momentum-quadrature interference pattern of the superposition
/// (|α⟩ ± |−α⟩)/√N± observed with efficiency η:
///
/// (2/(√π N±)) e^{−x²} [1 ± e^{−2α²(1−η)} cos(√(8η) α x)].
///
/// Nonnegative and normalized to 1 over the real line.
pub fn dist_superposition(
    sign: SuperpositionSign,
    x: f64,
    p: &CatParams,
    eta: f64,
) -> Result<f64, QuadratureError> {
    assert_efficiency(eta);
    let norm = p.norm_constant(sign)?;
    let fringe = p.visibility(eta) * ((8.0 * eta).sqrt() * p.alpha() * x).cos();
    Ok(2.0 / norm * FRAC_1_SQRT_PI * (-x * x).exp() * (1.0 + sign.signum() * fringe))
}

/// Momentum-quadrature density conditioned on a spin-up outcome along `a`,
/// normalized over the real line:
///
/// p(x) ∝ e^{−x²} {1 + e^{−2α²(1−η)} [a_x cos(√(8η)αx) + a_y sin(√(8η)αx)]}.
///
/// The normalization constant is evaluated by quadrature on each call.
pub fn dist_conditional_spin_up(x: f64, a: &SpinDirection, p: &CatParams, eta: f64) -> f64 {
    assert_efficiency(eta);
    let visibility = p.visibility(eta);
    let wavenumber = (8.0 * eta).sqrt() * p.alpha();
    let (ax, ay) = (a.ax(), a.ay());
    let unnorm = |x: f64| {
        (-x * x).exp()
            * (1.0 + visibility * (ax * (wavenumber * x).cos() + ay * (wavenumber * x).sin()))
    };
    let (lo, hi) = integration_domain(p, HomodynePhase::momentum(), eta);
    let norm = integrate::integral(&unnorm, lo, hi);
    unnorm(x) / norm
}

/// Density of recording outcome x when a state with perfect-detection
/// density `perfect` is measured with efficiency η < 1, computed by
/// quadrature over the sampled grid:  ∫ dy perfect(y) K_η(x, y).
pub fn smeared_density(perfect: &QuadratureGrid, eta: f64, x: f64) -> Result<f64, QuadratureError> {
    if !eta.is_finite() || eta <= 0.0 || eta > 1.0 {
        return Err(QuadratureError::InvalidEfficiency { eta });
    }
    if eta == 1.0 {
        return Err(QuadratureError::SingularKernel);
    }
    let norm = (std::f64::consts::PI * (1.0 - eta)).sqrt().recip();
    let spread = 1.0 / eta - 1.0;
    let scaled_x = x / eta.sqrt();
    let step = perfect.step();
    let integrand: Vec<f64> = perfect
        .points()
        .map(|(y, v)| {
            let d = scaled_x - y;
            v * norm * (-d * d / spread).exp()
        })
        .collect();
    Ok(integrate::trapezoid(&integrand, step))
}

/// Integration domain used for distribution normalization, samplers and
/// oracle grids.
///
/// Position-like quadratures need ±(√2α + 12) to cover the displaced wave
/// packets; the momentum envelope e^{−x²} is below 1e−27 at |x| = 8, padded
/// by six detector resolutions for smearing support. Other phases get the
/// union of both paddings around their displaced center.
pub fn integration_domain(p: &CatParams, theta: HomodynePhase, eta: f64) -> (f64, f64) {
    assert_efficiency(eta);
    let half = if theta.is_position() {
        SQRT_2 * p.alpha() + 12.0
    } else if theta.is_momentum() {
        8.0 + 6.0 * detector_resolution(eta)
    } else {
        SQRT_2 * p.alpha() * theta.theta().cos().abs() + 12.0 + 6.0 * detector_resolution(eta)
    };
    (-half, half)
}
