//! Regularized sums of divergent power series read off from Fourier series of
//! periodic distributions.
//!
//! The exact side ([`exact`], [`series`], [`regularized`]) evaluates
//! `1^k + 2^k + 3^k + ...` as
//! `(1/i^(k-1)) * (1/(1 - 2^(k+1))) * (d/dt)^(k-1) [e^{it}/(1+e^{it})^2]` at `t = 0`
//! in Gaussian-rational arithmetic, and checks it against a Bernoulli-number
//! oracle. The numeric side ([`distribution`], with [`quadrature`] and
//! [`extrapolate`]) realizes the underlying distributions in floating point:
//! the finite part of `e^{it}/(1+e^{it})^2`, its periodic extension with the
//! `delta'` comb, mollifier limits and Fourier coefficients. [`casimir`] is the
//! one-dimensional vacuum-energy toy model built on the sum `1 + 2 + 3 + ...`.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod casimir;
pub mod distribution;
pub mod exact;
pub mod extrapolate;
pub mod quadrature;
pub mod regularized;
pub mod series;

pub use num_complex::Complex64;

pub use exact::{GaussianRational, Rational};
pub use extrapolate::{EpsilonLimit, Growth};
pub use regularized::{
    alternating_sum_powers, bernoulli_numbers, sum_powers, zeta_negative_oracle, BernoulliTable, Method,
    RegularizedSum, SumEngine, SumKind,
};
pub use series::TaylorSeries;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?}")]
    Parse(alloc::string::String),
    #[error("series reciprocal needs a nonzero constant term")]
    ZeroConstantTerm,
    #[error("derivative of order {requested} exceeds series order {order}")]
    OrderExceeded { requested: usize, order: usize },
    #[error("result has a nonzero imaginary part")]
    ImaginaryResidue,
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("dilation factor must be a positive integer in the coefficient-sequence model")]
    NonIntegerDilation,
    #[error("test function support [{lo}, {hi}] is not inside the open interval ({lo_bound}, {hi_bound})")]
    SupportViolation { lo: f64, hi: f64, lo_bound: f64, hi_bound: f64 },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("closed form {closed_form} and Fourier-side sum {fourier} disagree")]
    Disagreement { closed_form: f64, fourier: f64 },
}
