//! Adaptive Gauss–Kronrod quadrature for the smooth Gaussian × oscillatory
//! integrands used throughout the crate.

/// 15-point Kronrod abscissae on [-1, 1] (positive half, descending).
#[allow(clippy::excessive_precision)]
const XGK15: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

/// 7-point Gauss weights, matching the odd-indexed Kronrod abscissae.
#[allow(clippy::excessive_precision)]
const WG7: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// 15-point Kronrod weights.
#[allow(clippy::excessive_precision)]
const WGK15: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Default tolerances for the crate's distribution and matrix-element
/// integrals.
pub(crate) const ABS_TOL: f64 = 1e-11;
pub(crate) const REL_TOL: f64 = 1e-10;

/// One Gauss–Kronrod 15(7) evaluation on [a, b]; returns the K15 estimate
/// and the |K15 − G7| error estimate.
pub(crate) fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut kronrod = WGK15[7] * f_center;
    let mut gauss = WG7[3] * f_center;

    for j in 0..7 {
        let dx = half * XGK15[j];
        let fsum = f(center - dx) + f(center + dx);
        kronrod += WGK15[j] * fsum;
        if j % 2 == 1 {
            gauss += WG7[j / 2] * fsum;
        }
    }

    let err = half.abs() * (kronrod - gauss).abs();
    (kronrod * half, err)
}

/// Adaptive bisection driver with absolute and relative stopping criteria.
///
/// Each subinterval is accepted once its error estimate drops below its
/// length-proportional share of the global tolerance. Depth is capped; the
/// integrands in this crate are entire functions and converge in a handful
/// of levels.
pub(crate) fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> f64 {
    if a == b {
        return 0.0;
    }

    let (whole, whole_err) = gk15(f, a, b);
    let scale = whole.abs().max(1e-300);
    let tol = abs_tol.max(rel_tol * scale);
    if whole_err <= tol {
        return whole;
    }

    const MAX_DEPTH: u32 = 50;
    let span = (b - a).abs();
    // Work stack of (lo, hi, depth).
    let mut stack = vec![(a, b, 0u32)];
    let mut total = 0.0;
    while let Some((lo, hi, depth)) = stack.pop() {
        let (val, err) = gk15(f, lo, hi);
        let local_tol = tol * ((hi - lo).abs() / span).max(f64::MIN_POSITIVE);
        if err <= local_tol || depth >= MAX_DEPTH {
            total += val;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    total
}

/// Adaptive integration with the crate default tolerances.
pub(crate) fn integral<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    adaptive(f, a, b, ABS_TOL, REL_TOL)
}

/// Single complex-valued Kronrod-15 panel; no error estimate. Used for
/// composite integration of smooth complex densities on short panels.
pub(crate) fn gk15_complex<F: Fn(f64) -> num_complex::Complex64>(
    f: &F,
    a: f64,
    b: f64,
) -> num_complex::Complex64 {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = WGK15[7] * f(center);
    for j in 0..7 {
        let dx = half * XGK15[j];
        acc += WGK15[j] * (f(center - dx) + f(center + dx));
    }
    acc * half
}

/// Composite complex integration with panels no wider than `max_panel`.
pub(crate) fn panels_complex<F: Fn(f64) -> num_complex::Complex64>(
    f: &F,
    a: f64,
    b: f64,
    max_panel: f64,
) -> num_complex::Complex64 {
    let count = ((b - a) / max_panel).ceil().max(1.0) as usize;
    let width = (b - a) / count as f64;
    (0..count)
        .map(|i| gk15_complex(f, a + i as f64 * width, a + (i + 1) as f64 * width))
        .sum()
}

/// Trapezoidal rule over uniformly spaced samples.
pub(crate) fn trapezoid(values: &[f64], step: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let interior: f64 = values[1..values.len() - 1].iter().sum();
    step * (0.5 * (values[0] + values[values.len() - 1]) + interior)
}
