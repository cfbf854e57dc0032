//! Floating-point realization of the periodic distributions behind the
//! regularized sums.
//!
//! * `Pf e^{it}/(1+e^{it})^2` on `(0, 2pi)`: the finite part, evaluated either
//!   as the `eps -> 0` limit of the excised integral minus `phi(pi)/tan(eps/2)`,
//!   or through the Taylor-remainder double integral.
//! * `S = Pf(...) + i pi sum_n delta'_{(2n+1)pi}`: the `2pi`-periodic extension,
//!   assembled cell by cell, and its homothetic dilations `H_lambda S`.
//! * `T0 = sum_{n>=1} n e^{int}` on test functions vanishing to second order at 0.
//! * Regular distributions `T_f`, and the comb `sum_n e^{int}`.
//!
//! Pairings are complex; the kernels involved happen to be real, so imaginary
//! parts come only from the `delta'` comb or from complex exponentials.
//!
//! Near a singular point `a` every kernel is evaluated in the offset coordinate
//! `u = t - a`, using `e^{i(a+u)}/(1+e^{i(a+u)})^2 = 1/(4 sin^2(u/2))`, so the
//! excision width never suffers cancellation against `pi`.

mod testfn;

pub use testfn::{bump_moment, mass, Combination, Dilated, Moment, Mollifier, Profile, Shifted, TestFunction, Zero};

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::extrapolate::{self, EpsilonLimit};
use crate::quadrature::{integrate, QuadOptions};
use crate::Error;

const TWO_PI: f64 = 2.0 * PI;

/// Tolerance for the `chi(0) = chi'(0) = 0` precondition of [`Numerics::t0_action`].
pub const VANISHING_TOL: f64 = 1e-9;

/// Relative tolerance for agreement checks between two evaluation routes.
pub const AGREEMENT_TOL: f64 = 1e-8;

/// `1/(4 sin^2(lambda u / 2))`: the dilated kernel at offset `u` from a singular point.
fn kernel_at_offset(u: f64, lambda: f64) -> f64 {
    let s = libm::sin(0.5 * lambda * u);
    0.25 / (s * s)
}

/// `u^2 / (4 sin^2(lambda u / 2))`, bounded near `u = 0`.
fn kernel_times_u2(u: f64, lambda: f64) -> f64 {
    let x = 0.5 * lambda * u;
    let ratio = if x == 0.0 { 1.0 } else { x / libm::sin(x) };
    ratio * ratio / (lambda * lambda)
}

/// `phi.knots()` shifted by `-origin`, restricted to `[lo, hi]`, with both ends.
fn breakpoints(phi: &dyn TestFunction, origin: f64, lo: f64, hi: f64) -> Vec<f64> {
    let mut pts = alloc::vec![lo, hi];
    pts.extend(phi.knots().into_iter().map(|k| k - origin).filter(|&k| k > lo && k < hi));
    pts
}

/// Below this offset from the singular point the Taylor remainder is integrated
/// rather than formed as a difference quotient.
const REMAINDER_SWITCH: f64 = 0.0625;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn magnitude(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

/// Piecewise-continuous functions for the regular distribution `T_f`.
#[derive(Clone, Copy, Debug)]
pub enum JumpFunction {
    Heaviside,
    Sign,
    Cos,
    /// `left` on `t < 0`, `right` on `t > 0`.
    Custom { left: fn(f64) -> f64, right: fn(f64) -> f64 },
}

impl JumpFunction {
    fn left(&self, t: f64) -> f64 {
        match self {
            JumpFunction::Heaviside => 0.0,
            JumpFunction::Sign => -1.0,
            JumpFunction::Cos => libm::cos(t),
            JumpFunction::Custom { left, .. } => left(t),
        }
    }

    fn right(&self, t: f64) -> f64 {
        match self {
            JumpFunction::Heaviside => 1.0,
            JumpFunction::Sign => 1.0,
            JumpFunction::Cos => libm::cos(t),
            JumpFunction::Custom { right, .. } => right(t),
        }
    }

    /// `(f(0+) + f(0-)) / 2`.
    pub fn jump_average(&self) -> f64 {
        0.5 * (self.left(0.0) + self.right(0.0))
    }
}

/// Which distribution a mollifier ladder is paired with.
#[derive(Clone, Copy, Debug)]
pub enum Target {
    S,
    H2S,
    T0,
    Dirichlet,
    Jump(JumpFunction),
}

/// Both evaluations of `<sum_n e^{int}, phi_m>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CombGrowth {
    pub m: u32,
    /// `2 pi m phi(0)`.
    pub closed_form: f64,
    /// `sum_{|n| <= N} phi_m^(-n)`.
    pub fourier_side: f64,
    pub terms: u64,
}

/// Tolerances and ladder settings shared by every numerical pairing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Numerics {
    pub quad: QuadOptions,
    /// First excision width of every `eps` ladder (halved at each level).
    pub eps0: f64,
    pub eps_levels: usize,
    /// `m` runs over `2, 4, ..., 2^m_levels`.
    pub m_levels: usize,
}

impl Default for Numerics {
    fn default() -> Self {
        Numerics { quad: QuadOptions::default(), eps0: 0.5, eps_levels: 10, m_levels: 10 }
    }
}

impl Numerics {
    pub fn with_quad_tol(abs_tol: f64) -> Self {
        Numerics { quad: QuadOptions::with_abs_tol(abs_tol), ..Numerics::default() }
    }

    fn inner_opts(&self) -> QuadOptions {
        QuadOptions { abs_tol: self.quad.abs_tol * 1e-2, rel_tol: 1e-13, max_panels: self.quad.max_panels }
    }

    /// Finite part over one period cell of the kernel `K(lambda t)`, centred on the
    /// singular point `center`: the Taylor-remainder integral
    /// `int u^2 K(lambda(center+u)) int_0^1 (1-theta) phi''(center + theta u) dtheta du`
    /// over `|u| <= pi/lambda`. If `phi` vanishes near `center` this is the plain
    /// integral of `phi K`.
    fn pf_cell(&self, phi: &dyn TestFunction, center: f64, lambda: f64) -> f64 {
        let half = PI / lambda;
        let (slo, shi) = phi.support();
        let lo = slo.max(center - half);
        let hi = shi.min(center + half);
        if lo >= hi {
            return 0.0;
        }
        if center < lo || center > hi {
            let mut pts = breakpoints(phi, center, lo - center, hi - center);
            pts.push(0.5 * (lo + hi) - center);
            return integrate(|u| phi.value(center + u) * kernel_at_offset(u, lambda), &pts, &self.quad).value;
        }

        let inner = self.inner_opts();
        let knots = phi.knots();
        let (f0, f1) = (phi.value(center), phi.d1(center));
        // (phi(center+u) - phi(center) - u phi'(center)) / u^2
        let remainder = |u: f64| -> f64 {
            if u == 0.0 {
                return 0.5 * phi.d2(center);
            }
            if u.abs() >= REMAINDER_SWITCH {
                return (phi.value(center + u) - f0 - u * f1) / (u * u);
            }
            let mut pts: Vec<f64> = alloc::vec![0.0, 1.0];
            pts.extend(knots.iter().map(|k| (k - center) / u).filter(|&t| t > 0.0 && t < 1.0));
            integrate(|theta| (1.0 - theta) * phi.d2(center + theta * u), &pts, &inner).value
        };
        let mut pts = breakpoints(phi, center, -half, half);
        pts.extend([0.0, -REMAINDER_SWITCH, REMAINDER_SWITCH]);
        integrate(|u| kernel_times_u2(u, lambda) * remainder(u), &pts, &self.quad).value
    }

    /// `<H_lambda S, phi>` evaluated directly with the dilated kernel: finite parts
    /// at `t = (2j+1) pi / lambda` plus `-(i pi / lambda^2) sum_j phi'((2j+1) pi / lambda)`.
    pub fn s_action_dilated(&self, phi: &dyn TestFunction, lambda: f64) -> Complex64 {
        let (lo, hi) = phi.support();
        if lo >= hi {
            return c(0.0);
        }
        let period = TWO_PI / lambda;
        let j_min = libm::floor(lo / period) as i64;
        let j_max = libm::floor(hi / period) as i64;
        let mut pf = 0.0;
        let mut delta = 0.0;
        for j in j_min..=j_max {
            let center = (j as f64 + 0.5) * period;
            pf += self.pf_cell(phi, center, lambda);
            if center >= lo && center <= hi {
                delta -= phi.d1(center);
            }
        }
        Complex64::new(pf, PI * delta / (lambda * lambda))
    }

    /// `<S, phi>` for any compactly supported `phi`: periodized finite part plus the
    /// `delta'` comb.
    pub fn s_action(&self, phi: &dyn TestFunction) -> Complex64 {
        self.s_action_dilated(phi, 1.0)
    }

    fn check_inside_period(phi: &dyn TestFunction) -> Result<(f64, f64), Error> {
        let (lo, hi) = phi.support();
        if lo < hi && !(lo > 0.0 && hi < TWO_PI) {
            return Err(Error::SupportViolation { lo, hi, lo_bound: 0.0, hi_bound: TWO_PI });
        }
        Ok((lo, hi))
    }

    /// `<Pf e^{it}/(1+e^{it})^2, phi>` for `supp phi` inside `(0, 2pi)`, from the
    /// Taylor-remainder double integral.
    pub fn pf_action_remainder(&self, phi: &dyn TestFunction) -> Result<Complex64, Error> {
        Self::check_inside_period(phi)?;
        Ok(c(self.pf_cell(phi, PI, 1.0)))
    }

    /// `int_{Omega_eps} phi(t) e^{it}/(1+e^{it})^2 dt - phi(pi)/tan(eps/2)` with
    /// `Omega_eps = (0, pi-eps) U (pi+eps, 2pi)`.
    pub fn pf_excised(&self, phi: &dyn TestFunction, eps: f64) -> f64 {
        let (lo, hi) = phi.support();
        if lo >= hi {
            return 0.0;
        }
        let f = |u: f64| phi.value(PI + u) * kernel_at_offset(u, 1.0);
        let mut total = 0.0;
        if lo - PI < -eps {
            let mut pts = geometric_points(lo - PI, -eps);
            pts.extend(breakpoints(phi, PI, lo - PI, -eps));
            total += integrate(f, &pts, &self.quad).value;
        }
        if hi - PI > eps {
            let mut pts = geometric_points(eps, hi - PI);
            pts.extend(breakpoints(phi, PI, eps, hi - PI));
            total += integrate(f, &pts, &self.quad).value;
        }
        total - phi.value(PI) / libm::tan(0.5 * eps)
    }

    /// The `eps -> 0` limit of [`Numerics::pf_excised`] on the ladder
    /// `eps_j = eps_0 2^{-j}`, Richardson-extrapolated.
    ///
    /// `eps_0` is `self.eps0`, reduced to half the distance from `pi` to the nearest
    /// knot of `phi` so every sample lies in the smooth regime of the expansion.
    pub fn pf_action_epsilon(&self, phi: &dyn TestFunction, levels: usize) -> Result<EpsilonLimit, Error> {
        Self::check_inside_period(phi)?;
        if levels < 3 {
            return Err(Error::InvalidArgument("at least 3 eps levels are required"));
        }
        let d = phi.knots().into_iter().map(|k| (k - PI).abs()).filter(|&d| d > 0.0).fold(f64::INFINITY, f64::min);
        let eps0 = if d.is_finite() { self.eps0.min(0.5 * d) } else { self.eps0 };
        let samples = (0..levels)
            .map(|j| {
                let eps = eps0 * libm::pow(0.5, j as f64);
                (eps, c(self.pf_excised(phi, eps)))
            })
            .collect();
        Ok(extrapolate::epsilon_limit(samples, 2.0))
    }

    /// One sample of the Fourier-coefficient limit of `S`:
    /// `(1/2pi)(int_{Omega_eps} e^{-int} e^{it}/(1+e^{it})^2 dt - (-1)^n/tan(eps/2) - (-1)^n n pi)`.
    pub fn fourier_coefficient_sample(&self, n: i32, eps: f64) -> Complex64 {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let nf = f64::from(n);
        // e^{-in(pi+u)} = (-1)^n e^{-inu}
        let f = |u: f64| {
            let k = sign * kernel_at_offset(u, 1.0);
            Complex64::new(k * libm::cos(nf * u), -k * libm::sin(nf * u))
        };
        let left = integrate(f, &geometric_points(-PI, -eps), &self.quad).value;
        let right = integrate(f, &geometric_points(eps, PI), &self.quad).value;
        let total = left + right - c(sign / libm::tan(0.5 * eps)) - c(sign * nf * PI);
        total / TWO_PI
    }

    /// Numerical `c_n(S)` for `|n| <= 32` from an `eps` ladder of `levels >= 4` samples.
    pub fn fourier_coefficient_numeric(&self, n: i32, levels: usize) -> Result<EpsilonLimit, Error> {
        if n.abs() > 32 {
            return Err(Error::InvalidArgument("|n| must be at most 32"));
        }
        if levels < 4 {
            return Err(Error::InvalidArgument("at least 4 eps levels are required"));
        }
        let samples = (0..levels)
            .map(|j| {
                let eps = self.eps0 * libm::pow(0.5, j as f64);
                (eps, self.fourier_coefficient_sample(n, eps))
            })
            .collect();
        Ok(extrapolate::epsilon_limit(samples, 2.0))
    }

    /// `<T0, chi> = lim_{eps->0} int_{(-pi,-eps) U (eps,pi)} e^{it} chi(t)/(1-e^{it})^2 dt`
    /// for `supp chi` inside `(-pi/2, pi/2)` and `chi(0) = chi'(0) = 0`. The integrand
    /// `-chi(t)/(4 sin^2(t/2))` then extends continuously to `t = 0`.
    pub fn t0_action(&self, chi: &dyn TestFunction) -> Result<Complex64, Error> {
        let (lo, hi) = chi.support();
        if lo >= hi {
            return Ok(c(0.0));
        }
        if !(lo > -0.5 * PI && hi < 0.5 * PI) {
            return Err(Error::SupportViolation { lo, hi, lo_bound: -0.5 * PI, hi_bound: 0.5 * PI });
        }
        if chi.value(0.0).abs() > VANISHING_TOL || chi.d1(0.0).abs() > VANISHING_TOL {
            return Err(Error::Precondition("chi(0) and chi'(0) must vanish"));
        }
        let f = |t: f64| {
            if t == 0.0 {
                -0.5 * chi.d2(0.0)
            } else {
                -chi.value(t) * kernel_at_offset(t, 1.0)
            }
        };
        let mut pts = breakpoints(chi, 0.0, lo, hi);
        pts.push(0.0);
        Ok(c(integrate(f, &pts, &self.quad).value))
    }

    /// `<T_f, phi> = int f phi`, split at the jump.
    pub fn regular_action(&self, f: &JumpFunction, phi: &dyn TestFunction) -> Complex64 {
        let (lo, hi) = phi.support();
        if lo >= hi {
            return c(0.0);
        }
        let mut total = 0.0;
        if lo < 0.0 {
            total += integrate(|t| f.left(t) * phi.value(t), &breakpoints(phi, 0.0, lo, hi.min(0.0)), &self.quad).value;
        }
        if hi > 0.0 {
            total += integrate(|t| f.right(t) * phi.value(t), &breakpoints(phi, 0.0, lo.max(0.0), hi), &self.quad).value;
        }
        c(total)
    }

    /// `sum_{|n| <= N} phi^(-n)` for the comb `sum_n e^{int}`, with `N` doubled until
    /// the added block of frequencies changes the sum by less than `1e-10` relative.
    ///
    /// The transform values come from the trapezoid rule on `supp phi` (spectrally
    /// accurate for a function flat at its support edges) with at least 4 nodes per
    /// period of the highest frequency; the finite frequency sum is folded into the
    /// Dirichlet kernel `D_N(t) = sin((N+1/2)t)/sin(t/2)` at each node.
    pub fn dirichlet_action(&self, phi: &dyn TestFunction) -> (f64, u64) {
        let (lo, hi) = phi.support();
        if lo >= hi {
            return (0.0, 0);
        }
        let width = hi - lo;
        let sum_to = |n: u64| -> f64 {
            let nf = n as f64;
            let intervals = libm::ceil(width * 4.0 * (nf + 1.0) / TWO_PI).max(16.0) as u64;
            let h = width / intervals as f64;
            let mut acc = 0.0;
            for j in 1..intervals {
                let t = lo + j as f64 * h;
                let s = libm::sin(0.5 * t);
                let d = if s == 0.0 { 2.0 * nf + 1.0 } else { libm::sin((nf + 0.5) * t) / s };
                acc += phi.value(t) * d;
            }
            acc * h
        };
        let mut n = libm::ceil(8.0 * TWO_PI / width) as u64;
        let mut prev = sum_to(n);
        loop {
            let next = sum_to(2 * n);
            n *= 2;
            if (next - prev).abs() <= 1e-10 * next.abs().max(1.0) || n > (1 << 26) {
                return (next, n);
            }
            prev = next;
        }
    }

    /// `<sum_n e^{int}, phi_m>` for the `p = 0` bump at scale `m`, once from the
    /// Poisson-summation closed form `2 pi m phi(0)` and once by truncated Fourier
    /// summation; errors if they differ by more than `1e-6` relative.
    pub fn dirichlet_comb_growth(&self, m: u32) -> Result<CombGrowth, Error> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1"));
        }
        let base = Mollifier::bump(0)?;
        let closed_form = TWO_PI * f64::from(m) * base.value(0.0);
        let (fourier_side, terms) = self.dirichlet_action(&base.scaled(m));
        if (closed_form - fourier_side).abs() > 1e-6 * closed_form.abs() {
            return Err(Error::Disagreement { closed_form, fourier: fourier_side });
        }
        Ok(CombGrowth { m, closed_form, fourier_side, terms })
    }

    /// Pairs `family(m)` for `m = 2, 4, ..., 2^levels` with `pairing` and extrapolates
    /// `m -> infinity`, or reports the growth exponent when the values blow up.
    pub fn mollified_limit<T, F, P>(&self, family: F, pairing: P, levels: usize) -> Result<EpsilonLimit, Error>
    where
        T: TestFunction,
        F: Fn(u32) -> T,
        P: Fn(&dyn TestFunction) -> Result<Complex64, Error>,
    {
        if levels < 3 {
            return Err(Error::InvalidArgument("at least 3 m levels are required"));
        }
        if levels > 30 {
            return Err(Error::InvalidArgument("at most 30 m levels are supported"));
        }
        let mut samples = Vec::with_capacity(levels);
        for j in 1..=levels {
            let m = 1u32 << j;
            let phi = family(m);
            samples.push((f64::from(m), pairing(&phi)?));
        }
        Ok(extrapolate::m_limit(samples, 2.0))
    }

    /// `lim_m <T_f, phi_m>`, which should be `(f(0+) + f(0-))/2`.
    pub fn jump_average(&self, f: &JumpFunction, mollifier: &Mollifier, levels: usize) -> Result<EpsilonLimit, Error> {
        self.mollified_limit(|m| mollifier.scaled(m), |phi| Ok(self.regular_action(f, phi)), levels)
    }

    /// Mollified ladder for one of the named targets, using the bump mollifier with
    /// vanishing order `p`.
    pub fn mollify(&self, target: Target, p: u32, levels: usize) -> Result<EpsilonLimit, Error> {
        let mollifier = Mollifier::bump(p)?;
        let family = |m: u32| mollifier.scaled(m);
        match target {
            Target::S => self.mollified_limit(family, |phi| Ok(self.s_action(phi)), levels),
            Target::H2S => self.mollified_limit(family, |phi| Ok(self.s_action_dilated(phi, 2.0)), levels),
            Target::T0 => {
                if p < 2 {
                    return Err(Error::InvalidArgument("the T0 target needs vanishing order p >= 2"));
                }
                self.mollified_limit(family, |phi| self.t0_action(phi), levels)
            }
            Target::Dirichlet => {
                if p != 0 {
                    return Err(Error::InvalidArgument("the Dirichlet comb target needs p = 0 (phi(0) > 0)"));
                }
                self.mollified_limit(family, |phi| Ok(c(self.dirichlet_action(phi).0)), levels)
            }
            Target::Jump(f) => self.jump_average(&f, &mollifier, levels),
        }
    }

    /// Checks `<H_lambda S, phi> = (1/lambda) <S, H_{1/lambda} phi>` with the left side
    /// from the dilated kernel and the right side from the undilated one, then checks
    /// that the approximate identities `phi_m` against `H_lambda S` and
    /// `psi_m` with `psi = (1/lambda) H_{1/lambda} phi` against `S` both tend to `1/4`.
    /// `phi` must have unit mass.
    pub fn homothety_pairing_check(&self, phi: &dyn TestFunction, lambda: f64) -> Result<bool, Error> {
        if lambda.is_nan() || lambda <= 0.0 {
            return Err(Error::InvalidArgument("dilation factor must be positive"));
        }
        let unit = mass(phi, &self.quad);
        if (unit - 1.0).abs() > 1e-8 {
            return Err(Error::Precondition("phi must have unit mass"));
        }
        let direct = self.s_action_dilated(phi, lambda);
        let via_definition = self.s_action(&Dilated::homothety_inverse(phi, lambda)) / lambda;
        let pairing_ok = magnitude(direct - via_definition) <= AGREEMENT_TOL * magnitude(direct).max(1.0);

        let levels = self.m_levels;
        let dilated = self.mollified_limit(
            |m| Dilated::approximate_identity(phi, f64::from(m)),
            |f| Ok(self.s_action_dilated(f, lambda)),
            levels,
        )?;
        let rescaled = self.mollified_limit(
            |m| Dilated::approximate_identity(phi, f64::from(m) / lambda),
            |f| Ok(self.s_action(f)),
            levels,
        )?;
        let limit_ok = |l: &EpsilonLimit| l.converged && magnitude(l.extrapolated - c(0.25)) <= 1e-6;
        Ok(pairing_ok && limit_ok(&dilated) && limit_ok(&rescaled))
    }
}

/// `[a, b]` with extra breakpoints at geometric distances from the endpoint nearer 0,
/// to help the adaptive rule resolve a `1/u^2` kernel.
fn geometric_points(a: f64, b: f64) -> Vec<f64> {
    let mut pts = alloc::vec![a, b];
    let (near, far) = if a.abs() < b.abs() { (a, b) } else { (b, a) };
    let mut x = near * 2.0;
    while x.abs() < far.abs() {
        pts.push(x);
        x *= 2.0;
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_helpers() {
        assert_eq!(kernel_times_u2(0.0, 1.0), 1.0);
        assert_eq!(kernel_times_u2(0.0, 2.0), 0.25);
        let u = 0.3;
        assert!((kernel_times_u2(u, 1.0) - u * u * kernel_at_offset(u, 1.0)).abs() < 1e-15);
        // K(0) = 1/4, i.e. offset pi from the singular point.
        assert!((kernel_at_offset(PI, 1.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn geometric_breakpoints() {
        let p = geometric_points(0.1, 1.0);
        assert!(p.contains(&0.2) && p.contains(&0.4) && p.contains(&0.8));
        let p = geometric_points(-PI, -0.5);
        assert!(p.contains(&-1.0) && p.contains(&-2.0));
    }

    fn bump(p: u32) -> Mollifier {
        Mollifier::bump(p).unwrap()
    }

    fn near(a: Complex64, re: f64, im: f64, tol: f64) -> bool {
        magnitude(a - Complex64::new(re, im)) <= tol
    }

    #[test]
    fn zero_function_pairs_to_zero() {
        let nm = Numerics::default();
        assert_eq!(nm.pf_action_remainder(&Zero).unwrap(), c(0.0));
        let e = nm.pf_action_epsilon(&Zero, 5).unwrap();
        assert!(e.converged && e.extrapolated == c(0.0));
        assert_eq!(nm.s_action(&Zero), c(0.0));
        assert_eq!(nm.t0_action(&Zero).unwrap(), c(0.0));
    }

    #[test]
    fn support_checks() {
        let nm = Numerics::default();
        assert!(matches!(nm.pf_action_remainder(&bump(0)), Err(Error::SupportViolation { .. })));
        assert!(nm.pf_action_epsilon(&Shifted { inner: bump(0), offset: PI }, 2).is_err());
        assert!(matches!(nm.t0_action(&bump(0).scaled(2)), Err(Error::Precondition(_))));
        assert!(matches!(nm.t0_action(&Dilated { inner: bump(2), rate: 0.5, amplitude: 1.0 }), Err(Error::SupportViolation { .. })));
        assert!(nm.fourier_coefficient_numeric(33, 8).is_err());
        assert!(nm.fourier_coefficient_numeric(1, 3).is_err());
        assert!(nm.mollify(Target::T0, 0, 5).is_err());
        assert!(nm.mollify(Target::Dirichlet, 2, 5).is_err());
    }

    #[test]
    fn smooth_away_from_pi_is_a_plain_integral() {
        let nm = Numerics::default();
        // Support (0.5, 2.5) keeps clear of pi.
        let phi = Shifted { inner: bump(0), offset: 1.5 };
        let plain = integrate(|t| phi.value(t) * 0.25 / (libm::cos(0.5 * t) * libm::cos(0.5 * t)), &[0.5, 1.5, 2.5], &nm.quad).value;
        assert!((nm.pf_action_remainder(&phi).unwrap().re - plain).abs() < 1e-12);
        let e = nm.pf_action_epsilon(&phi, 6).unwrap();
        assert!((e.extrapolated.re - plain).abs() < 1e-12);
    }

    #[test]
    fn representations_agree_for_bump_at_pi() {
        let nm = Numerics::default();
        let phi = Shifted { inner: bump(0), offset: PI };
        let rem = nm.pf_action_remainder(&phi).unwrap();
        let eps = nm.pf_action_epsilon(&phi, 10).unwrap();
        assert!(eps.converged);
        assert!(magnitude(rem - eps.extrapolated) < 1e-8, "{rem} vs {}", eps.extrapolated);
    }

    #[test]
    fn narrow_bumps_either_side_of_pi() {
        // pi sits in a gap of the support hull; interior edges must become panel breaks.
        let nm = Numerics::default();
        let narrow = |center: f64, w: f64| Shifted { inner: Dilated { inner: bump(4), rate: 1.0 / w, amplitude: 1.0 }, offset: center };
        let phi = Combination::new().with(0.7, narrow(0.69, 0.23)).with(1.3, narrow(4.14, 0.25));
        let direct: f64 = [(0.69, 0.23, 0.7), (4.14, 0.25, 1.3)]
            .iter()
            .map(|&(c0, w, a)| a * nm.pf_action_remainder(&narrow(c0, w)).unwrap().re)
            .sum();
        let rem = nm.pf_action_remainder(&phi).unwrap().re;
        let eps = nm.pf_action_epsilon(&phi, 8).unwrap().extrapolated.re;
        assert!((rem - direct).abs() < 1e-10, "{rem} vs {direct}");
        assert!((eps - direct).abs() < 1e-10, "{eps} vs {direct}");
    }

    #[test]
    fn delta_prime_comb_term() {
        let nm = Numerics::default();
        // (t - pi) * bump at scale 10: phi(pi) = 0, phi'(pi) = 1 after rescaling.
        let inner = bump(0).scaled(10);
        let slope = inner.value(0.0);
        let phi = Combination::new().with(1.0 / slope, Shifted { inner: Moment { inner, center: 0.0, power: 1 }, offset: PI });
        assert!((phi.d1(PI) - 1.0).abs() < 1e-12);
        let s = nm.s_action(&phi);
        assert!((s.im + PI).abs() < 1e-12);
        // The finite part of an odd function about pi vanishes.
        assert!(s.re.abs() < 1e-10);
    }

    #[test]
    fn mollifier_pairing_at_zero_is_a_plain_integral() {
        let nm = Numerics::default();
        let phi = bump(0).scaled(2);
        let s = nm.s_action(&phi);
        let plain = integrate(|t| phi.value(t) * 0.25 / (libm::cos(0.5 * t) * libm::cos(0.5 * t)), &[-0.5, 0.0, 0.5], &nm.quad).value;
        assert_eq!(s.im, 0.0);
        assert!((s.re - plain).abs() < 1e-13);
    }

    #[test]
    fn dilated_pairing_matches_definition() {
        let nm = Numerics::default();
        let phi = Shifted { inner: Dilated { inner: bump(2), rate: 0.3, amplitude: 1.0 }, offset: 1.0 };
        for lambda in [0.5, 1.0, 2.0, 3.0] {
            let direct = nm.s_action_dilated(&phi, lambda);
            let via = nm.s_action(&Dilated::homothety_inverse(&phi, lambda)) / lambda;
            assert!(magnitude(direct - via) < 1e-8 * magnitude(direct).max(1.0), "lambda {lambda}: {direct} vs {via}");
        }
    }

    #[test]
    fn fourier_coefficients() {
        let nm = Numerics::default();
        for (n, expected) in [(1, 1.0), (2, -2.0), (0, 0.0), (-3, 0.0)] {
            let l = nm.fourier_coefficient_numeric(n, 10).unwrap();
            assert!(l.converged);
            assert!(near(l.extrapolated, expected, 0.0, 1e-8), "c_{n} = {}", l.extrapolated);
        }
    }

    #[test]
    fn summable_at_zero() {
        let nm = Numerics::default();
        for p in [0, 2, 4] {
            for target in [Target::S, Target::H2S] {
                let l = nm.mollify(target, p, 10).unwrap();
                assert!(l.converged && near(l.extrapolated, 0.25, 0.0, 1e-6), "{target:?} p={p}: {}", l.extrapolated);
            }
        }
    }

    #[test]
    fn jump_averages() {
        let nm = Numerics::default();
        let m = bump(0);
        for (f, expected) in [(JumpFunction::Heaviside, 0.5), (JumpFunction::Sign, 0.0), (JumpFunction::Cos, 1.0)] {
            let l = nm.jump_average(&f, &m, 10).unwrap();
            assert!(l.converged && near(l.extrapolated, expected, 0.0, 1e-6));
            assert_eq!(f.jump_average(), expected);
        }
        let custom = JumpFunction::Custom { left: |t| 2.0 + t, right: |t| -1.0 + t * t };
        let l = nm.jump_average(&custom, &bump(4), 8).unwrap();
        assert!(near(l.extrapolated, 0.5, 0.0, 1e-6));
    }

    #[test]
    fn comb_grows_linearly() {
        let nm = Numerics::default();
        let one = nm.dirichlet_comb_growth(1).unwrap();
        assert!((one.closed_form - TWO_PI * bump(0).value(0.0)).abs() < 1e-15);
        let four = nm.dirichlet_comb_growth(4).unwrap();
        assert!((four.fourier_side - 4.0 * one.fourier_side).abs() < 1e-8 * four.fourier_side);
        for m in [2, 8, 32] {
            let g = nm.dirichlet_comb_growth(m).unwrap();
            assert!((g.fourier_side / f64::from(m) - one.fourier_side).abs() < 1e-8 * one.fourier_side);
        }
        assert!(nm.dirichlet_comb_growth(0).is_err());
        let l = nm.mollify(Target::Dirichlet, 0, 8).unwrap();
        let g = l.growth.unwrap();
        assert!((g.exponent - 1.0).abs() < 0.05 && g.sign > 0.0);
    }

    #[test]
    fn t0_grows_quadratically_with_negative_sign() {
        let nm = Numerics::default();
        let m4 = bump(4);
        let ratio_tilde = bump_moment(2) / bump_moment(4);
        let v = |m: u32| nm.t0_action(&m4.scaled(m)).unwrap().re;
        for m in [64, 256] {
            assert!((v(2 * m) / v(m) - 4.0).abs() < 1e-2);
            let predicted = -f64::from(m * m) * ratio_tilde;
            assert!((v(m) / predicted - 1.0).abs() < 1e-2);
        }
        let l = nm.mollify(Target::T0, 4, 10).unwrap();
        let g = l.growth.unwrap();
        assert!(!l.converged && (g.exponent - 2.0).abs() < 0.1 && g.sign < 0.0);
    }

    #[test]
    fn t0_is_minus_translated_s() {
        let nm = Numerics::default();
        let chi = bump(2);
        let direct = nm.t0_action(&chi).unwrap();
        let via_s = -nm.s_action(&Shifted { inner: &chi, offset: PI });
        assert!(magnitude(direct - via_s) < 1e-6, "{direct} vs {via_s}");
    }

    #[test]
    fn homothety_checks() {
        let nm = Numerics::default();
        assert!(nm.homothety_pairing_check(&bump(0), 1.0).unwrap());
        assert!(nm.homothety_pairing_check(&bump(0), 2.0).unwrap());
        assert!(nm.homothety_pairing_check(&bump(4), 2.0).unwrap());
        assert!(nm.homothety_pairing_check(&bump(0), 0.0).is_err());
        let heavy = Dilated { inner: bump(0), rate: 1.0, amplitude: 2.0 };
        assert!(nm.homothety_pairing_check(&heavy, 2.0).is_err());
    }
}
