//! Ordered fields usable as finite tropical values.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, Zero};
use ordered_float::OrderedFloat;

/// A totally ordered field of finite values.
///
/// Exact types (`BigRational`, `Rational64`) are what the structural
/// algorithms are written for: they depend on exact ties. `OrderedFloat<f64>`
/// is accepted for plain min-plus arithmetic.
pub trait Scalar:
    Clone + Ord + Num + Neg<Output = Self> + Debug + Display + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    /// Parses `"p/q"`, an integer, or a finite decimal like `"-1.25"`.
    fn parse_text(s: &str) -> Option<Self>;

    /// Canonical text: `"p/q"` or `"p"`.
    fn to_text(&self) -> String {
        self.to_string()
    }
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    if neg {
        num = -num;
    }
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(BigRational::new(num, den))
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn parse_text(s: &str) -> Option<Self> {
        parse_decimal(s)
    }
}

impl Scalar for Rational64 {
    fn from_i64(v: i64) -> Self {
        Rational64::from_integer(v)
    }

    fn parse_text(s: &str) -> Option<Self> {
        let r = parse_decimal(s)?;
        let n: i64 = r.numer().try_into().ok()?;
        let d: i64 = r.denom().try_into().ok()?;
        Some(Rational64::new(n, d))
    }
}

impl Scalar for OrderedFloat<f64> {
    fn from_i64(v: i64) -> Self {
        OrderedFloat(v as f64)
    }

    fn parse_text(s: &str) -> Option<Self> {
        let v: f64 = s.trim().parse().ok()?;
        v.is_finite().then_some(OrderedFloat(v))
    }
}

pub(crate) fn is_positive<T: Scalar>(v: &T) -> bool {
    *v > T::zero()
}
