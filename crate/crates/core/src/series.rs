//! Truncated power series in `t` with Gaussian-rational coefficients.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::exact::{GaussianRational, Rational};
use crate::Error;

/// Truncation order used when callers do not ask for a specific one.
pub const DEFAULT_ORDER: usize = 64;

/// A power series known exactly modulo `t^(order+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorSeries {
    coeffs: Vec<GaussianRational>,
}

impl TaylorSeries {
    /// Builds a series of order `coeffs.len() - 1`. Panics on an empty list.
    pub fn new(coeffs: Vec<GaussianRational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        TaylorSeries { coeffs }
    }

    pub fn from_rationals(coeffs: impl IntoIterator<Item = Rational>) -> Self {
        TaylorSeries::new(coeffs.into_iter().map(GaussianRational::real).collect())
    }

    pub fn constant(c: GaussianRational, order: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); order + 1];
        coeffs[0] = c;
        TaylorSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Option<&GaussianRational> {
        self.coeffs.get(j)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order()) + 1;
        TaylorSeries { coeffs: self.coeffs[..n].to_vec() }
    }

    pub fn add(&self, other: &TaylorSeries) -> TaylorSeries {
        let n = self.order().min(other.order()) + 1;
        let coeffs = self.coeffs[..n].iter().zip(&other.coeffs[..n]).map(|(a, b)| a + b).collect();
        TaylorSeries { coeffs }
    }

    /// Cauchy product, truncated at the smaller of the two orders.
    pub fn mul(&self, other: &TaylorSeries) -> TaylorSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|j| {
                (0..=j).fold(GaussianRational::zero(), |acc, i| {
                    let term = &self.coeffs[i] * &other.coeffs[j - i];
                    acc + term
                })
            })
            .collect();
        TaylorSeries { coeffs }
    }

    /// Multiplicative inverse via the recurrence `b_0 = 1/a_0`,
    /// `b_j = -(1/a_0) * sum_{i=1..j} a_i b_{j-i}`.
    pub fn reciprocal(&self) -> Result<TaylorSeries, Error> {
        let inv_a0 = self.coeffs[0].recip().map_err(|_| Error::ZeroConstantTerm)?;
        let mut out: Vec<GaussianRational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv_a0.clone());
        for j in 1..=self.order() {
            let s = (1..=j).fold(GaussianRational::zero(), |acc, i| {
                let term = &self.coeffs[i] * &out[j - i];
                acc + term
            });
            out.push(-(&s * &inv_a0));
        }
        Ok(TaylorSeries { coeffs: out })
    }

    /// Term-wise derivative; the order drops by one (order 0 stays 0 with a zero coefficient).
    pub fn derivative(&self) -> TaylorSeries {
        if self.order() == 0 {
            return TaylorSeries::constant(GaussianRational::zero(), 0);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(j, c)| c.scale(&Rational::from(j as i64 + 1)))
            .collect();
        TaylorSeries { coeffs }
    }

    /// `k! * coeff[k]`, the k-th derivative at `t = 0`.
    pub fn derivative_at_zero(&self, k: usize) -> Result<GaussianRational, Error> {
        let c = self.coeffs.get(k).ok_or(Error::OrderExceeded { requested: k, order: self.order() })?;
        Ok(c.scale(&Rational::from_integer(factorial(k))))
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, j| acc * BigInt::from(j))
}

/// Taylor series of `e^{it}`: coefficient of `t^j` is `i^j / j!`.
pub fn series_exp_it(order: usize) -> TaylorSeries {
    let mut fact = BigInt::from(1);
    let coeffs = (0..=order)
        .map(|j| {
            if j > 0 {
                fact *= BigInt::from(j);
            }
            let inv = Rational::new(1, fact.clone()).expect("factorial is nonzero");
            GaussianRational::i_pow(j as i64).scale(&inv)
        })
        .collect();
    TaylorSeries { coeffs }
}

/// Taylor series at `t = 0` of `e^{it} / (1 + e^{it})^2`, built as `E * 1/(1+E)^2`.
pub fn generating_function_series(order: usize) -> TaylorSeries {
    let e = series_exp_it(order);
    let one_plus_e = e.add(&TaylorSeries::constant(GaussianRational::one(), order));
    let sq = one_plus_e.mul(&one_plus_e);
    let inv = sq.reciprocal().expect("(1+E)^2 has constant term 4");
    e.mul(&inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn int_series(v: &[i64]) -> TaylorSeries {
        TaylorSeries::from_rationals(v.iter().map(|&x| Rational::from(x)))
    }

    #[test]
    fn exp_it_low_orders() {
        assert_eq!(series_exp_it(0).coeffs(), &[GaussianRational::one()]);
        let s = series_exp_it(2);
        assert_eq!(s.coeffs(), &[GaussianRational::one(), GaussianRational::i(), GaussianRational::real(q(-1, 2))]);
        let s3 = series_exp_it(3);
        assert_eq!(s3.coeff(3).unwrap(), &GaussianRational::new(Rational::zero(), q(-1, 6)));
    }

    #[test]
    fn reciprocal_of_one_plus_t() {
        let s = int_series(&[1, 1, 0, 0]);
        assert_eq!(s.reciprocal().unwrap(), int_series(&[1, -1, 1, -1]));
    }

    #[test]
    fn reciprocal_needs_constant_term() {
        assert_eq!(int_series(&[0, 1]).reciprocal(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn derivative_and_product() {
        assert_eq!(int_series(&[0, 1, 1]).derivative(), int_series(&[1, 2]));
        assert_eq!(int_series(&[1, 1, 0]).mul(&int_series(&[1, -1, 0])), int_series(&[1, 0, -1]));
    }

    #[test]
    fn mixed_orders_truncate_to_min() {
        let a = int_series(&[1, 2, 3, 4]);
        let b = int_series(&[1, 1]);
        assert_eq!(a.mul(&b).order(), 1);
        assert_eq!(a.add(&b), int_series(&[2, 3]));
    }

    #[test]
    fn generating_function_leading_coefficients() {
        let g = generating_function_series(6);
        assert_eq!(g.coeff(0).unwrap(), &GaussianRational::real(q(1, 4)));
        assert_eq!(g.coeff(1).unwrap(), &GaussianRational::zero());
        assert_eq!(g.coeff(2).unwrap(), &GaussianRational::real(q(1, 16)));
    }

    #[test]
    fn derivatives_at_zero() {
        let g = generating_function_series(DEFAULT_ORDER);
        assert_eq!(g.derivative_at_zero(0).unwrap(), GaussianRational::real(q(1, 4)));
        assert_eq!(g.derivative_at_zero(1).unwrap(), GaussianRational::zero());
        assert_eq!(g.derivative_at_zero(2).unwrap(), GaussianRational::real(q(1, 8)));
    }

    #[test]
    fn order_exceeded() {
        let g = generating_function_series(4);
        assert_eq!(g.derivative_at_zero(5), Err(Error::OrderExceeded { requested: 5, order: 4 }));
    }
}
