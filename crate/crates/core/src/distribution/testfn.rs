//! Test functions: the bump mollifier family and a few combinators
//! (dilation, translation, polynomial weight, linear combination).

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::quadrature::{integrate, QuadOptions};
use crate::Error;

/// A smooth compactly supported function with its first two derivatives.
///
/// `value`, `d1` and `d2` must vanish outside `support()`.
pub trait TestFunction {
    fn value(&self, t: f64) -> f64;
    fn d1(&self, t: f64) -> f64;
    fn d2(&self, t: f64) -> f64;
    /// Closed interval `[lo, hi]` containing the support.
    fn support(&self) -> (f64, f64);
    /// Points where quadrature panels should break: at least the support edges,
    /// plus any interior edges of a function built from several pieces.
    fn knots(&self) -> Vec<f64> {
        let (lo, hi) = self.support();
        alloc::vec![lo, hi]
    }
}

impl<T: TestFunction + ?Sized> TestFunction for &T {
    fn value(&self, t: f64) -> f64 {
        (**self).value(t)
    }
    fn d1(&self, t: f64) -> f64 {
        (**self).d1(t)
    }
    fn d2(&self, t: f64) -> f64 {
        (**self).d2(t)
    }
    fn support(&self) -> (f64, f64) {
        (**self).support()
    }
    fn knots(&self) -> Vec<f64> {
        (**self).knots()
    }
}

impl<T: TestFunction + ?Sized> TestFunction for Box<T> {
    fn value(&self, t: f64) -> f64 {
        (**self).value(t)
    }
    fn d1(&self, t: f64) -> f64 {
        (**self).d1(t)
    }
    fn d2(&self, t: f64) -> f64 {
        (**self).d2(t)
    }
    fn support(&self) -> (f64, f64) {
        (**self).support()
    }
    fn knots(&self) -> Vec<f64> {
        (**self).knots()
    }
}

/// The zero function (support taken as the single point 0).
#[derive(Clone, Copy, Debug, Default)]
pub struct Zero;

impl TestFunction for Zero {
    fn value(&self, _t: f64) -> f64 {
        0.0
    }
    fn d1(&self, _t: f64) -> f64 {
        0.0
    }
    fn d2(&self, _t: f64) -> f64 {
        0.0
    }
    fn support(&self) -> (f64, f64) {
        (0.0, 0.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    /// `exp(-1/(1-t^2))` on `(-1, 1)`.
    Bump,
}

/// `psi`, `psi'`, `psi''` of the base bump at `s`.
fn bump_jet(s: f64) -> (f64, f64, f64) {
    if s.abs() >= 1.0 {
        return (0.0, 0.0, 0.0);
    }
    let w = 1.0 - s * s;
    let psi = libm::exp(-1.0 / w);
    if psi == 0.0 {
        return (0.0, 0.0, 0.0);
    }
    let g1 = -2.0 * s / (w * w);
    let g2 = -2.0 * (1.0 + 3.0 * s * s) / (w * w * w);
    (psi, psi * g1, psi * (g1 * g1 + g2))
}

/// `s^p`, with `s^0 = 1` for every `s`.
fn powi(s: f64, p: i32) -> f64 {
    if p < 0 {
        0.0
    } else {
        libm::pow(s, f64::from(p))
    }
}

/// `s^p * psi(s)` and its first two derivatives.
fn weighted_bump_jet(s: f64, p: u32) -> (f64, f64, f64) {
    let (b0, b1, b2) = bump_jet(s);
    let p = p as i32;
    let pf = f64::from(p);
    let v = powi(s, p) * b0;
    let d1 = pf * powi(s, p - 1) * b0 + powi(s, p) * b1;
    let d2 = pf * (pf - 1.0) * powi(s, p - 2) * b0 + 2.0 * pf * powi(s, p - 1) * b1 + powi(s, p) * b2;
    (v, d1, d2)
}

/// `int_{-1}^{1} s^p psi(s) ds`.
pub fn bump_moment(p: u32) -> f64 {
    let opts = QuadOptions { abs_tol: 1e-16, rel_tol: 1e-15, max_panels: 4000 };
    integrate(|s| weighted_bump_jet(s, p).0, &[-1.0, 0.0, 1.0], &opts).value
}

/// Symmetric positive mollifier `phi(t) = t^p psi(t) / I_p`, rescaled as
/// `phi_m(t) = m phi(m t)`. `I_p` is the `p`-th moment of the bump, so `phi` has
/// unit mass; for `p >= 2` it also satisfies `phi(0) = phi'(0) = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mollifier {
    pub profile: Profile,
    pub vanishing_order: u32,
    pub scale: u32,
    pub norm_const: f64,
}

impl Mollifier {
    /// Scale-1 bump mollifier with vanishing order `p` in `{0, 2, 4}`.
    pub fn bump(p: u32) -> Result<Self, Error> {
        if !matches!(p, 0 | 2 | 4) {
            return Err(Error::InvalidArgument("vanishing order must be 0, 2 or 4"));
        }
        Ok(Mollifier { profile: Profile::Bump, vanishing_order: p, scale: 1, norm_const: bump_moment(p) })
    }

    /// The same mollifier at scale `m` (normalizer reused).
    pub fn scaled(&self, m: u32) -> Self {
        assert!(m >= 1, "mollifier scale must be at least 1");
        Mollifier { scale: m, ..*self }
    }

    fn m(&self) -> f64 {
        f64::from(self.scale)
    }
}

impl TestFunction for Mollifier {
    fn value(&self, t: f64) -> f64 {
        let m = self.m();
        m * weighted_bump_jet(m * t, self.vanishing_order).0 / self.norm_const
    }
    fn d1(&self, t: f64) -> f64 {
        let m = self.m();
        m * m * weighted_bump_jet(m * t, self.vanishing_order).1 / self.norm_const
    }
    fn d2(&self, t: f64) -> f64 {
        let m = self.m();
        m * m * m * weighted_bump_jet(m * t, self.vanishing_order).2 / self.norm_const
    }
    fn support(&self) -> (f64, f64) {
        let r = 1.0 / self.m();
        (-r, r)
    }
}

/// `amplitude * inner(rate * t)`.
#[derive(Clone, Debug)]
pub struct Dilated<F> {
    pub inner: F,
    pub rate: f64,
    pub amplitude: f64,
}

impl<F: TestFunction> Dilated<F> {
    /// `lambda * inner(lambda * t)`, the mass-preserving rescaling.
    pub fn approximate_identity(inner: F, lambda: f64) -> Self {
        Dilated { inner, rate: lambda, amplitude: lambda }
    }

    /// `inner(t / lambda)`, the homothety `H_{1/lambda}` on functions.
    pub fn homothety_inverse(inner: F, lambda: f64) -> Self {
        Dilated { inner, rate: 1.0 / lambda, amplitude: 1.0 }
    }
}

impl<F: TestFunction> TestFunction for Dilated<F> {
    fn value(&self, t: f64) -> f64 {
        self.amplitude * self.inner.value(self.rate * t)
    }
    fn d1(&self, t: f64) -> f64 {
        self.amplitude * self.rate * self.inner.d1(self.rate * t)
    }
    fn d2(&self, t: f64) -> f64 {
        self.amplitude * self.rate * self.rate * self.inner.d2(self.rate * t)
    }
    fn support(&self) -> (f64, f64) {
        let (lo, hi) = self.inner.support();
        let (a, b) = (lo / self.rate, hi / self.rate);
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
    fn knots(&self) -> Vec<f64> {
        self.inner.knots().into_iter().map(|k| k / self.rate).collect()
    }
}

/// `inner(t - offset)`.
#[derive(Clone, Debug)]
pub struct Shifted<F> {
    pub inner: F,
    pub offset: f64,
}

impl<F: TestFunction> TestFunction for Shifted<F> {
    fn value(&self, t: f64) -> f64 {
        self.inner.value(t - self.offset)
    }
    fn d1(&self, t: f64) -> f64 {
        self.inner.d1(t - self.offset)
    }
    fn d2(&self, t: f64) -> f64 {
        self.inner.d2(t - self.offset)
    }
    fn support(&self) -> (f64, f64) {
        let (lo, hi) = self.inner.support();
        (lo + self.offset, hi + self.offset)
    }
    fn knots(&self) -> Vec<f64> {
        self.inner.knots().into_iter().map(|k| k + self.offset).collect()
    }
}

/// `(t - center)^power * inner(t)`.
#[derive(Clone, Debug)]
pub struct Moment<F> {
    pub inner: F,
    pub center: f64,
    pub power: u32,
}

impl<F: TestFunction> TestFunction for Moment<F> {
    fn value(&self, t: f64) -> f64 {
        powi(t - self.center, self.power as i32) * self.inner.value(t)
    }
    fn d1(&self, t: f64) -> f64 {
        let x = t - self.center;
        let k = self.power as i32;
        f64::from(k) * powi(x, k - 1) * self.inner.value(t) + powi(x, k) * self.inner.d1(t)
    }
    fn d2(&self, t: f64) -> f64 {
        let x = t - self.center;
        let k = self.power as i32;
        let kf = f64::from(k);
        kf * (kf - 1.0) * powi(x, k - 2) * self.inner.value(t)
            + 2.0 * kf * powi(x, k - 1) * self.inner.d1(t)
            + powi(x, k) * self.inner.d2(t)
    }
    fn support(&self) -> (f64, f64) {
        self.inner.support()
    }
    fn knots(&self) -> Vec<f64> {
        self.inner.knots()
    }
}

/// `sum_j c_j f_j(t)`.
#[derive(Default)]
pub struct Combination {
    pub terms: Vec<(f64, Box<dyn TestFunction>)>,
}

impl Combination {
    pub fn new() -> Self {
        Combination { terms: Vec::new() }
    }

    pub fn with(mut self, coeff: f64, f: impl TestFunction + 'static) -> Self {
        self.terms.push((coeff, Box::new(f)));
        self
    }
}

impl TestFunction for Combination {
    fn value(&self, t: f64) -> f64 {
        self.terms.iter().map(|(c, f)| c * f.value(t)).sum()
    }
    fn d1(&self, t: f64) -> f64 {
        self.terms.iter().map(|(c, f)| c * f.d1(t)).sum()
    }
    fn d2(&self, t: f64) -> f64 {
        self.terms.iter().map(|(c, f)| c * f.d2(t)).sum()
    }
    fn support(&self) -> (f64, f64) {
        self.terms
            .iter()
            .map(|(_, f)| f.support())
            .reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
            .unwrap_or((0.0, 0.0))
    }
    fn knots(&self) -> Vec<f64> {
        self.terms.iter().flat_map(|(_, f)| f.knots()).collect()
    }
}

/// `int phi` over its support.
pub fn mass(phi: &dyn TestFunction, opts: &QuadOptions) -> f64 {
    let (lo, hi) = phi.support();
    let mut pts = phi.knots();
    pts.push(0.5 * (lo + hi));
    integrate(|t| phi.value(t), &pts, opts).value
}
