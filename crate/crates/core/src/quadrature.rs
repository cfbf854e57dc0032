//! Globally adaptive Gauss-Kronrod (7/15) quadrature on a list of panels.
//!
//! The caller supplies breakpoints where the integrand is known to misbehave
//! (kinks, support edges, near-singular points); the initial panels run
//! between consecutive breakpoints and the panel with the largest error
//! estimate is bisected until the total estimate meets the tolerance. Panels
//! are summed left to right at the end so the result does not depend on the
//! refinement order.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Values that can be integrated: `f64` and `Complex64`.
pub trait QuadValue: Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(self) -> f64 {
        libm::hypot(self.re, self.im)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { abs_tol: 1e-10, rel_tol: 1e-14, max_panels: 4000 }
    }
}

impl QuadOptions {
    pub fn with_abs_tol(abs_tol: f64) -> Self {
        QuadOptions { abs_tol, ..QuadOptions::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub panels: usize,
    pub converged: bool,
}

/// One Kronrod estimate and its distance from the embedded Gauss rule.
pub fn gauss_kronrod_15<T: QuadValue>(f: &impl Fn(f64) -> T, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let pair = f(c - x) + f(c + x);
        kron = kron + pair * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let kron = kron * h;
    let gauss = gauss * h;
    (kron, (kron - gauss).magnitude())
}

struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T> Eq for Panel<T> {}

impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Integrates `f` over `[points[0], points[last]]`, with panel edges at every
/// entry of `points`. The list is sorted and deduplicated internally; fewer than
/// two distinct points gives zero.
pub fn integrate<T: QuadValue>(f: impl Fn(f64) -> T, points: &[f64], opts: &QuadOptions) -> QuadResult<T> {
    let mut pts: Vec<f64> = points.iter().copied().filter(|x| x.is_finite()).collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    if pts.len() < 2 {
        return QuadResult { value: T::default(), error: 0.0, panels: 0, converged: true };
    }

    let mut heap: BinaryHeap<Panel<T>> = BinaryHeap::new();
    let mut total = T::default();
    let mut total_err = 0.0;
    for w in pts.windows(2) {
        let (value, error) = gauss_kronrod_15(&f, w[0], w[1]);
        total = total + value;
        total_err += error;
        heap.push(Panel { a: w[0], b: w[1], value, error });
    }

    let mut finished: Vec<Panel<T>> = Vec::new();
    let mut converged = true;
    while total_err > opts.abs_tol.max(opts.rel_tol * total.magnitude()) {
        if heap.len() + finished.len() >= opts.max_panels {
            converged = false;
            break;
        }
        let Some(worst) = heap.pop() else {
            converged = false;
            break;
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // Too narrow to split in floating point.
            finished.push(worst);
            continue;
        }
        let (v1, e1) = gauss_kronrod_15(&f, worst.a, mid);
        let (v2, e2) = gauss_kronrod_15(&f, mid, worst.b);
        total = total - worst.value + v1 + v2;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
    }

    let mut all: Vec<Panel<T>> = heap.into_vec();
    all.extend(finished);
    all.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = all.iter().fold(T::default(), |acc, p| acc + p.value);
    let error = all.iter().map(|p| p.error).sum();
    QuadResult { value, error, panels: all.len(), converged }
}
