//! Coefficient field abstraction.
//!
//! Every algebraic structure in this crate is generic over a [`Scalar`]. The
//! identities verified by the crate only hold exactly over the rationals, so
//! the default instantiation (see the aliases at the crate root) is
//! [`BigRational`]. Fixed-width rationals and floats are supported for
//! experimentation.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Num;

/// A field of characteristic zero, as far as this crate needs one.
pub trait Scalar:
    Num + Neg<Output = Self> + Clone + PartialEq + PartialOrd + Debug + Display + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// `1 / n!`
    fn inv_factorial(n: u32) -> Self {
        let mut f = Self::one();
        for k in 2..=n {
            f = f * Self::from_int(k as i64);
        }
        Self::one() / f
    }

    /// Serialized form used in JSON output (`"num/den"` for rationals).
    fn to_fraction_string(&self) -> String;

    /// Parses either an integer literal or `num/den`.
    fn parse_fraction(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = parse_integer::<Self>(n.trim())?;
                let d = parse_integer::<Self>(d.trim())?;
                if d.is_zero() {
                    None
                } else {
                    Some(n / d)
                }
            }
            None => parse_integer(s),
        }
    }
}

/// Decimal integer literal with optional sign, of arbitrary length.
fn parse_integer<C: Scalar>(s: &str) -> Option<C> {
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    if digits.is_empty() {
        return None;
    }
    let ten = C::from_int(10);
    let mut acc = C::zero();
    for ch in digits.chars() {
        let d = ch.to_digit(10)?;
        acc = acc * ten.clone() + C::from_int(d as i64);
    }
    Some(if neg { -acc } else { acc })
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

macro_rules! impl_scalar_ratio {
    ($($t:ty),*) => {$(
        impl Scalar for Ratio<$t> {
            fn from_int(n: i64) -> Self {
                Ratio::from_integer(n as $t)
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                Ratio::new(num as $t, den as $t)
            }

            fn to_fraction_string(&self) -> String {
                format!("{}/{}", self.numer(), self.denom())
            }
        }
    )*};
}

impl_scalar_ratio!(i64, i128);

macro_rules! impl_scalar_float {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn from_int(n: i64) -> Self {
                n as $t
            }

            fn to_fraction_string(&self) -> String {
                format!("{}", self)
            }
        }
    )*};
}

impl_scalar_float!(f32, f64);
