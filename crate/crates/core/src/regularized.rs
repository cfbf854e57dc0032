//! Closed-form regularized sums `1^k + 2^k + 3^k + ...` and `1^k - 2^k + 3^k - ...`,
//! with a Bernoulli-number oracle and exact Fourier-coefficient identity checks.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::binomial;

use crate::exact::{GaussianRational, Rational};
use crate::series::{generating_function_series, TaylorSeries, DEFAULT_ORDER};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SumKind {
    PowersAllPlus,
    PowersAlternating,
}

impl SumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SumKind::PowersAllPlus => "powers_all_plus",
            SumKind::PowersAlternating => "powers_alternating",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    MollifierNumeric,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::MollifierNumeric => "mollifier_numeric",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularizedSum {
    pub value: Rational,
    pub k: u32,
    pub kind: SumKind,
    pub method: Method,
    pub details: String,
}

/// Holds one expansion of `e^{it}/(1+e^{it})^2` and evaluates sums against it.
#[derive(Clone, Debug)]
pub struct SumEngine {
    series: TaylorSeries,
}

impl Default for SumEngine {
    fn default() -> Self {
        SumEngine::new(DEFAULT_ORDER)
    }
}

impl SumEngine {
    pub fn new(order: usize) -> Self {
        SumEngine { series: generating_function_series(order) }
    }

    /// An engine whose series reaches far enough for every `k <= k_max`.
    pub fn for_k_max(k_max: u32) -> Self {
        SumEngine::new(DEFAULT_ORDER.max(k_max as usize))
    }

    pub fn series(&self) -> &TaylorSeries {
        &self.series
    }

    /// `(d/dt)^(k-1) [e^{it}/(1+e^{it})^2]` at 0, divided by `i^(k-1)`.
    fn eta_gaussian(&self, k: u32) -> Result<GaussianRational, Error> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be at least 1"));
        }
        let d = self.series.derivative_at_zero(k as usize - 1)?;
        let i_inv = GaussianRational::i_pow(-(i64::from(k) - 1));
        Ok(&d * &i_inv)
    }

    pub fn alternating_sum_powers(&self, k: u32) -> Result<RegularizedSum, Error> {
        let g = self.eta_gaussian(k)?;
        if !g.is_real() {
            return Err(Error::ImaginaryResidue);
        }
        Ok(RegularizedSum {
            value: g.re,
            k,
            kind: SumKind::PowersAlternating,
            method: Method::ClosedForm,
            details: alloc::format!("series order {}", self.series.order()),
        })
    }

    pub fn sum_powers(&self, k: u32) -> Result<RegularizedSum, Error> {
        let g = self.eta_gaussian(k)?;
        let factor = (Rational::one() - two_pow(k + 1)).recip()?;
        let g = g.scale(&factor);
        if !g.is_real() {
            return Err(Error::ImaginaryResidue);
        }
        Ok(RegularizedSum {
            value: g.re,
            k,
            kind: SumKind::PowersAllPlus,
            method: Method::ClosedForm,
            details: alloc::format!("series order {}", self.series.order()),
        })
    }
}

fn two_pow(e: u32) -> Rational {
    Rational::from_integer(BigInt::from(1) << e as usize)
}

/// Regularized `1^k + 2^k + 3^k + ...` for `k >= 1`.
pub fn sum_powers(k: u32) -> Result<RegularizedSum, Error> {
    SumEngine::for_k_max(k).sum_powers(k)
}

/// Regularized `1^k - 2^k + 3^k - ...` for `k >= 1`.
pub fn alternating_sum_powers(k: u32) -> Result<RegularizedSum, Error> {
    SumEngine::for_k_max(k).alternating_sum_powers(k)
}

/// Bernoulli numbers `B_0..=B_n`, convention `B_1 = -1/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `zeta(-k) = -B_{k+1} / (k+1)`; `None` if the table is too short.
    pub fn zeta_negative(&self, k: u32) -> Option<Rational> {
        let b = self.get(k as usize + 1)?;
        let kp1 = Rational::from(i64::from(k) + 1);
        Some(-b.checked_div(&kp1).expect("k+1 > 0"))
    }
}

/// From `sum_{j=0}^{m} C(m+1, j) B_j = 0` for `m >= 1`.
pub fn bernoulli_numbers(n: usize) -> BernoulliTable {
    let mut values: Vec<Rational> = Vec::with_capacity(n + 1);
    values.push(Rational::one());
    for m in 1..=n {
        let mp1 = BigInt::from(m + 1);
        let s = values
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (j, b)| acc + b * &Rational::from_integer(binomial(mp1.clone(), BigInt::from(j))));
        let bm = -s.checked_div(&Rational::from_integer(mp1)).expect("m+1 > 0");
        values.push(bm);
    }
    BernoulliTable { values }
}

/// Exact `zeta(-k)` for `k >= 1` from the Bernoulli recurrence.
pub fn zeta_negative_oracle(k: u32) -> Result<Rational, Error> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1"));
    }
    Ok(bernoulli_numbers(k as usize + 1).zeta_negative(k).expect("table has k+2 entries"))
}

/// `zeta(s)` for real `s > 1` as a backward partial sum of `terms` terms plus the
/// midpoint integral tail `(N + 1/2)^(1-s) / (s-1)`.
pub fn zeta_direct(s: f64, terms: u64) -> f64 {
    let mut acc = 0.0;
    for n in (1..=terms).rev() {
        acc += libm::pow(n as f64, -s);
    }
    acc + libm::pow(terms as f64 + 0.5, 1.0 - s) / (s - 1.0)
}

/// `|zeta(-k) - 2/(2 pi)^(k+1) sin(-k pi/2) k! zeta(k+1)|`, with the left side from
/// the Bernoulli oracle and `zeta(k+1)` summed directly.
pub fn functional_equation_residual(k: u32, terms: u64) -> Result<f64, Error> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1"));
    }
    if terms < 10 {
        return Err(Error::InvalidArgument("terms must be at least 10"));
    }
    let lhs = zeta_negative_oracle(k)?.to_f64();
    let two_pi = 2.0 * core::f64::consts::PI;
    let kf = f64::from(k);
    let fact = (1..=k).fold(1.0, |a, j| a * f64::from(j));
    // sin(-k pi/2) is exactly 0 or +-1; reduce k mod 4 instead of calling sin.
    let sin = match k % 4 {
        0 | 2 => 0.0,
        1 => -1.0,
        _ => 1.0,
    };
    let rhs = 2.0 / libm::pow(two_pi, kf + 1.0) * sin * fact * zeta_direct(kf + 1.0, terms);
    Ok((lhs - rhs).abs())
}

/// Checks `n - 4 * [n even] * (n/2) = (-1)^(n-1) n` for `1 <= n <= order`: the
/// coefficients of `T0 - 4 H_2 T0` against those of `S`.
pub fn ramanujan_identity_check(order: u64) -> Result<bool, Error> {
    if order < 2 {
        return Err(Error::InvalidArgument("order must be at least 2"));
    }
    let ok = (1..=order).all(|n| {
        let t0 = BigInt::from(n);
        let dilated = if n % 2 == 0 { BigInt::from(n / 2) } else { BigInt::from(0) };
        let lhs = t0 - dilated * 4;
        let rhs = if n % 2 == 1 { BigInt::from(n) } else { -BigInt::from(n) };
        lhs == rhs
    });
    Ok(ok)
}

/// Fourier coefficients of `H_lambda T` for an integer dilation: `c_{n/lambda}` when
/// `lambda | n`, else 0. `coeff(n)` supplies `c_n(T)`.
fn dilate(n: i64, lambda: i64, coeff: &dyn Fn(i64) -> GaussianRational) -> GaussianRational {
    if n % lambda == 0 {
        coeff(n / lambda)
    } else {
        GaussianRational::zero()
    }
}

/// `c_n(T^(k)) = (i n)^k c_n(T)`.
fn differentiate(n: i64, k: u32, c: GaussianRational) -> GaussianRational {
    let factor = GaussianRational::i_pow(i64::from(k)).scale(&Rational::from(n).pow(k as i32).expect("nonnegative exponent"));
    &factor * &c
}

/// Checks `(H_lambda T)^(k) = lambda^k H_lambda (T^(k))` coefficient-wise for
/// `|n| <= order`, with `T = T0` (`c_n = n` for `n >= 1`, else 0).
pub fn derivative_dilation_commutation_check(k: u32, lambda: &Rational, order: u64) -> Result<bool, Error> {
    derivative_dilation_commutation_check_with(k, lambda, order, &|n| {
        if n >= 1 {
            GaussianRational::real(Rational::from(n))
        } else {
            GaussianRational::zero()
        }
    })
}

/// As [`derivative_dilation_commutation_check`] for an arbitrary coefficient sequence.
pub fn derivative_dilation_commutation_check_with(
    k: u32,
    lambda: &Rational,
    order: u64,
    coeff: &dyn Fn(i64) -> GaussianRational,
) -> Result<bool, Error> {
    if lambda.is_negative() || lambda.is_zero() {
        return Err(Error::InvalidArgument("dilation factor must be positive"));
    }
    if !lambda.is_integer() {
        return Err(Error::NonIntegerDilation);
    }
    if order < u64::from(k) {
        return Err(Error::InvalidArgument("order must be at least k"));
    }
    let lam: i64 = i64::try_from(lambda.numer()).map_err(|_| Error::InvalidArgument("dilation factor too large"))?;
    let lam_k = lambda.pow(k as i32)?;
    let order = order as i64;
    let ok = (-order..=order).all(|n| {
        let lhs = differentiate(n, k, dilate(n, lam, coeff));
        let rhs = dilate(n, lam, &|m| differentiate(m, k, coeff(m))).scale(&lam_k);
        lhs == rhs
    });
    Ok(ok)
}
