//! Measure of shape windows under `prod dx_i / x_i`.
//!
//! For bounds `R_1 < ... < R_{l+1}` the window measure is the iterated
//! integral `int_{R_l}^{R_{l+1}} int_{R_{l-1}}^{x_l} ... int_{R_1}^{x_2}
//! prod dx_i / x_i`.

use num_traits::ToPrimitive;

use crate::shapes::ShapeWindow;

/// Relative tolerance used by [`measure_window`] for the quadrature route.
pub const QUADRATURE_TOLERANCE: f64 = 1e-12;

/// `log(R_k / R_1)` for `k = 1..=l+1`; the last entry is `inf` for an
/// unbounded window.
pub fn log_bounds(w: &ShapeWindow) -> Vec<f64> {
    let r1 = &w.lower()[0];
    let mut out: Vec<f64> = w
        .lower()
        .iter()
        .map(|r| ((r - r1) / r1).to_f64().unwrap_or(f64::NAN).ln_1p())
        .collect();
    out.push(match w.upper() {
        Some(u) => ((u - r1) / r1).to_f64().unwrap_or(f64::NAN).ln_1p(),
        None => f64::INFINITY,
    });
    out
}

/// Closed form for `l <= 3`, adaptive quadrature above.
pub fn measure_window(w: &ShapeWindow) -> f64 {
    measure_closed_form(w).unwrap_or_else(|| measure_quadrature(w, QUADRATURE_TOLERANCE))
}

/// Polynomial in the `L_k = log(R_k / R_1)`; `None` when `l > 3`.
pub fn measure_closed_form(w: &ShapeWindow) -> Option<f64> {
    let l = log_bounds(w);
    if l.last() == Some(&f64::INFINITY) {
        return Some(f64::INFINITY);
    }
    match w.ell() {
        1 => Some(l[1]),
        2 => Some(0.5 * (l[2] * l[2] - l[1] * l[1])),
        3 => {
            let (l2, l3, l4) = (l[1], l[2], l[3]);
            Some((l4.powi(3) - l3.powi(3)) / 6.0 - 0.5 * l2 * l2 * (l4 - l3))
        }
        _ => None,
    }
}

/// Nested adaptive Gauss-Kronrod quadrature of the integral in the original
/// `x` coordinates.
pub fn measure_quadrature(w: &ShapeWindow, tol: f64) -> f64 {
    let Some(upper) = w.upper() else {
        return f64::INFINITY;
    };
    let mut r: Vec<f64> = w.lower().iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    r.push(upper.to_f64().unwrap_or(f64::NAN));
    let ell = w.ell();
    inner(&r, ell, r[ell], tol)
}

// F_k(x) = int_{R_k}^{x} F_{k-1}(y) dy / y with F_0 = 1.
fn inner(r: &[f64], k: usize, x: f64, tol: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let a = r[k - 1];
    if x <= a {
        return 0.0;
    }
    let f = |y: f64| inner(r, k - 1, y, tol) / y;
    adaptive(&f, a, x, tol, 0)
}

// Gauss-Kronrod 7-15 nodes on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (k, err) = gk15(f, a, b);
    if err <= tol * k.abs().max(f64::MIN_POSITIVE) || depth >= 40 {
        return k;
    }
    let m = 0.5 * (a + b);
    adaptive(f, a, m, tol, depth + 1) + adaptive(f, m, b, tol, depth + 1)
}
