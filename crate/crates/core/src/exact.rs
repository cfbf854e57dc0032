//! Exact rational and Gaussian-rational arithmetic.
//!
//! [`Rational`] is a thin newtype over [`BigRational`], which keeps values in
//! lowest terms with a positive denominator after every operation.
//! [`GaussianRational`] is the field `Q(i)` built on top of it.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, Error> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational, Error> {
        Rational::one().checked_div(self)
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// `self^exp` for any integer exponent; a negative exponent of zero is an error.
    pub fn pow(&self, exp: i32) -> Result<Rational, Error> {
        if exp < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(num_traits::Pow::pow(&self.0, exp)))
    }

    /// Nearest `f64`, or NaN when the magnitude is out of range.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $ty:ident) => {
        impl $tr<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $ty::$method(self.clone(), rhs.clone())
            }
        }
    };
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

forward_binop!(Add, add, Rational);
forward_binop!(Sub, sub, Rational);
forward_binop!(Mul, mul, Rational);

/// Prints `p/q`, or just `p` when the denominator is 1.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        Rational::new(num, den)
    }
}

/// An element `re + im*i` of the Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn zero() -> Self {
        GaussianRational::real(Rational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::real(Rational::one())
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GaussianRational::new(&self.re * k, &self.im * k)
    }

    pub fn checked_div(&self, rhs: &GaussianRational) -> Result<Self, Error> {
        let n = rhs.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self * &rhs.conj();
        Ok(GaussianRational::new(num.re.checked_div(&n)?, num.im.checked_div(&n)?))
    }

    pub fn recip(&self) -> Result<Self, Error> {
        GaussianRational::one().checked_div(self)
    }

    /// `i^k` for any integer `k`, reduced mod 4.
    pub fn i_pow(k: i64) -> Self {
        let (re, im) = match k.rem_euclid(4) {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        };
        GaussianRational::new(Rational::from(re), Rational::from(im))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::real(r)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussianRational::new(re, im)
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

/// Prints `p/q+r/s*i` (or `p/q-r/s*i` for a negative imaginary part).
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}*i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let Some(body) = t.strip_suffix("*i") else {
            return Ok(GaussianRational::real(t.parse()?));
        };
        // The separating sign is the last '+' or '-' that is not a leading sign.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(|| Error::Parse(String::from(t)))?;
        let re: Rational = body[..split].parse()?;
        let im: Rational = body[split + 1..].parse()?;
        let im = if body.as_bytes()[split] == b'-' { -im } else { im };
        Ok(GaussianRational::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn i_times_one() {
        let p = GaussianRational::one() * GaussianRational::i();
        assert_eq!(p, GaussianRational::i());
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::real(Rational::from(-1)));
    }

    #[test]
    fn quarter_over_minus_three() {
        let a = GaussianRational::real(q(1, 4));
        let b = GaussianRational::real(Rational::from(-3));
        assert_eq!(a.checked_div(&b).unwrap(), GaussianRational::real(q(-1, 12)));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = GaussianRational::one();
        assert_eq!(a.checked_div(&GaussianRational::zero()), Err(Error::DivisionByZero));
        assert_eq!(Rational::new(1, 0), Err(Error::DivisionByZero));
        assert!(Rational::zero().recip().is_err());
        assert!(Rational::zero().pow(-1).is_err());
    }

    #[test]
    fn i_pow_cycle() {
        assert_eq!(GaussianRational::i_pow(0), GaussianRational::one());
        assert_eq!(GaussianRational::i_pow(2), GaussianRational::real(Rational::from(-1)));
        assert_eq!(GaussianRational::i_pow(-1), -GaussianRational::i());
        assert_eq!(GaussianRational::i_pow(5), GaussianRational::i());
    }

    #[test]
    fn i_pow_inverse_pairs() {
        for k in -100..=100 {
            let p = GaussianRational::i_pow(k) * GaussianRational::i_pow(-k);
            assert_eq!(p, GaussianRational::one(), "k={k}");
        }
    }

    #[test]
    fn canonical_form() {
        let r = q(6, -8);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
        assert_eq!(r, q(-3, 4));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(format!("{}", q(-1, 12)), "-1/12");
        assert_eq!(format!("{}", Rational::zero()), "0");
        assert_eq!("-2/24".parse::<Rational>().unwrap(), q(-1, 12));
        assert_eq!(" 7 ".parse::<Rational>().unwrap(), Rational::from(7));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());

        let z = GaussianRational::new(q(1, 4), q(-1, 2));
        assert_eq!(format!("{z}"), "1/4-1/2*i");
        assert_eq!("1/4-1/2*i".parse::<GaussianRational>().unwrap(), z);
        assert_eq!("-1/4+3*i".parse::<GaussianRational>().unwrap(), GaussianRational::new(q(-1, 4), Rational::from(3)));
        assert_eq!("-5".parse::<GaussianRational>().unwrap(), GaussianRational::real(Rational::from(-5)));
        assert_eq!(format!("{}", GaussianRational::i()), "0+1*i");
    }

    #[test]
    fn to_f64_conversion() {
        assert_eq!(q(-1, 12).to_f64(), -1.0 / 12.0);
    }
}
