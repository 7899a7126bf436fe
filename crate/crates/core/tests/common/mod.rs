//! Shared helpers for the integration and acceptance suites. Everything
//! here is an independent verification path: it deliberately avoids the
//! crate's own quadrature engine and closed forms wherever it is used to
//! check them.

#![allow(dead_code)]

use catbell::model::{CatParams, SpinDirection};
use catbell::quadrature::{
    dist_conditional_spin_up, integration_domain, povm_coherent_element, HomodynePhase,
};
use num_complex::Complex64;
use rand::RngExt;

/// Error function by the stable all-positive-term series
/// erf(x) = (2/√π)·x·e^{−x²}·Σₙ (2x²)ⁿ/(1·3·5···(2n+1)).
pub fn erf_series(x: f64) -> f64 {
    if x < 0.0 {
        return -erf_series(-x);
    }
    if x > 9.0 {
        return 1.0;
    }
    let two_x2 = 2.0 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut n = 0u32;
    loop {
        n += 1;
        term *= two_x2 / (2.0 * f64::from(n) + 1.0);
        let next = sum + term;
        if next == sum || n > 4000 {
            break;
        }
        sum = next;
    }
    2.0 / std::f64::consts::PI.sqrt() * x * (-x * x).exp() * sum
}

/// Adaptive Simpson integration with Richardson extrapolation, independent
/// of the crate's Gauss–Kronrod engine.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let split = left + right;
        if depth == 0 || (split - whole).abs() <= 15.0 * tol {
            split + (split - whole) / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// Signed-position integral ∫_{x>0} e(x) dx − ∫_{x<0} e(x) dx of the
/// coherent POVM element with bra/ket amplitudes (real), i.e. a direct
/// quadrature of ⟨bra|Ĉ₀|ket⟩ that bypasses the closed forms.
pub fn position_observable_by_quadrature(bra: f64, ket: f64, eta: f64) -> Complex64 {
    let p = CatParams::new(bra.abs().max(ket.abs())).expect("amplitude > 0");
    let (lo, hi) = integration_domain(&p, HomodynePhase::position(), eta);
    let b = Complex64::new(bra, 0.0);
    let k = Complex64::new(ket, 0.0);
    let re = |x: f64| povm_coherent_element(b, k, x, HomodynePhase::position(), eta).re;
    let im = |x: f64| povm_coherent_element(b, k, x, HomodynePhase::position(), eta).im;
    let signed =
        |f: &dyn Fn(f64) -> f64| integrate(f, 0.0, hi, 1e-12) - integrate(f, lo, 0.0, 1e-12);
    Complex64::new(signed(&re), signed(&im))
}

/// Fringe-binned integral Σₙ [∫_{Λ₊,n} − ∫_{Λ₋,n}] of the coherent POVM
/// element at θ = π/2: a direct quadrature of ⟨bra|Ĉ_{π/2}|ket⟩.
pub fn fringe_observable_by_quadrature(bra: f64, ket: f64, eta: f64) -> Complex64 {
    let p = CatParams::new(bra.abs().max(ket.abs())).expect("amplitude > 0");
    let t = p.fringe_period(eta);
    let b = Complex64::new(bra, 0.0);
    let k = Complex64::new(ket, 0.0);
    let part = |f: &dyn Fn(f64) -> f64| {
        let reach = 8.5 + 6.0 * catbell::model::detector_resolution(eta);
        let bins = (reach / t).ceil() as i64 + 1;
        let mut acc = 0.0;
        for n in -bins..=bins {
            let n = n as f64;
            acc += integrate(f, (n - 0.25) * t, (n + 0.25) * t, 1e-13);
            acc -= integrate(f, (n + 0.25) * t, (n + 0.75) * t, 1e-13);
        }
        acc
    };
    let re = |x: f64| povm_coherent_element(b, k, x, HomodynePhase::momentum(), eta).re;
    let im = |x: f64| povm_coherent_element(b, k, x, HomodynePhase::momentum(), eta).im;
    Complex64::new(part(&re), part(&im))
}

/// Visibility of the conditional interference pattern along a = x̂,
/// extracted numerically: the known Gaussian envelope is divided out and
/// the extrema of the resulting fringe profile are located by coarse scan
/// plus golden-section refinement on the central fringe.
pub fn extract_fringe_visibility(p: &CatParams, eta: f64) -> f64 {
    let a = SpinDirection::x_axis();
    let t = p.fringe_period(eta);
    let profile = |x: f64| dist_conditional_spin_up(x, &a, p, eta) * (x * x).exp();
    let max = refine_extremum(&profile, -0.25 * t, 0.25 * t, true);
    let min = refine_extremum(&profile, 0.25 * t, 0.75 * t, false);
    (max - min) / (max + min)
}

fn refine_extremum(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, maximize: bool) -> f64 {
    let orient = if maximize { 1.0 } else { -1.0 };
    let g = |x: f64| orient * f(x);

    // Coarse scan for the best cell, then golden-section inside it.
    const SCAN: usize = 256;
    let step = (hi - lo) / SCAN as f64;
    let (mut best_i, mut best) = (0usize, f64::NEG_INFINITY);
    for i in 0..=SCAN {
        let v = g(lo + i as f64 * step);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let mut a = lo + best_i.saturating_sub(1) as f64 * step;
    let mut b = (lo + (best_i + 1) as f64 * step).min(hi);

    const INV_PHI: f64 = 0.6180339887498949;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = g(c);
    let mut fd = g(d);
    for _ in 0..80 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = g(d);
        }
    }
    orient * fc.max(fd)
}

/// Uniform random unit vector by rejection sampling in the cube.
pub fn random_unit_direction<R: rand::Rng + ?Sized>(rng: &mut R) -> SpinDirection {
    loop {
        let x = 2.0 * rng.random::<f64>() - 1.0;
        let y = 2.0 * rng.random::<f64>() - 1.0;
        let z = 2.0 * rng.random::<f64>() - 1.0;
        let n2 = x * x + y * y + z * z;
        if n2 > 1e-4 && n2 <= 1.0 {
            let n = n2.sqrt();
            return SpinDirection::new(x / n, y / n, z / n).expect("normalized");
        }
    }
}
