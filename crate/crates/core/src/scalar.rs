//! Scalar abstraction.
//!
//! The sharp criteria are equalities between rational functions of the parameters, so the
//! classification and recurrence code is generic over [`Scalar`], implemented exactly by
//! [`Exact`] (a big rational) and approximately by `f32`/`f64`. Numerical integration needs
//! transcendental functions and uses the narrower [`Real`] trait instead.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Exact = BigRational;

/// Arithmetic scalar used by classification, recurrences and exponent algebra.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// True when arithmetic is exact; comparisons then ignore tolerances.
    const EXACT: bool;

    /// The rational `num/den`.
    fn ratio(num: i64, den: i64) -> Self;

    /// Nearest representable value of `x` (exact conversion for rationals).
    fn from_f64(x: f64) -> Self;

    fn to_f64(&self) -> f64;

    /// Three-way comparison. Floating-point scalars treat `|a-b| <= tol*max(1,|a|,|b|)` as
    /// equal, so ties are resolved to the boundary case.
    fn compare(&self, other: &Self, tol: f64) -> Ordering;

    /// `self * a + b`, fused where the representation allows it.
    fn mul_add(&self, a: &Self, b: &Self) -> Self;

    fn to_exact(&self) -> Exact;

    fn from_exact(x: &Exact) -> Self;

    fn int(n: i64) -> Self {
        Self::ratio(n, 1)
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.compare(other, tol) == Ordering::Equal
    }
}

fn float_compare(a: f64, b: f64, tol: f64) -> Ordering {
    let scale = 1f64.max(a.abs()).max(b.abs());
    if (a - b).abs() <= tol * scale {
        Ordering::Equal
    } else if a < b {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn compare(&self, other: &Self, tol: f64) -> Ordering {
        float_compare(*self, *other, tol)
    }
    fn mul_add(&self, a: &Self, b: &Self) -> Self {
        f64::mul_add(*self, *a, *b)
    }
    fn to_exact(&self) -> Exact {
        BigRational::from_float(*self).expect("finite value")
    }
    fn from_exact(x: &Exact) -> Self {
        Scalar::to_f64(x)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;
    fn ratio(num: i64, den: i64) -> Self {
        (num as f64 / den as f64) as f32
    }
    fn from_f64(x: f64) -> Self {
        x as f32
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn compare(&self, other: &Self, tol: f64) -> Ordering {
        // An f32 cannot resolve differences below its own epsilon.
        float_compare(*self as f64, *other as f64, tol.max(f32::EPSILON as f64 * 4.0))
    }
    fn mul_add(&self, a: &Self, b: &Self) -> Self {
        f32::mul_add(*self, *a, *b)
    }
    fn to_exact(&self) -> Exact {
        BigRational::from_float(*self).expect("finite value")
    }
    fn from_exact(x: &Exact) -> Self {
        Scalar::to_f64(x) as f32
    }
}

impl Scalar for Exact {
    const EXACT: bool = true;
    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("finite value")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }
    fn compare(&self, other: &Self, _tol: f64) -> Ordering {
        self.cmp(other)
    }
    fn mul_add(&self, a: &Self, b: &Self) -> Self {
        self * a + b
    }
    fn to_exact(&self) -> Exact {
        self.clone()
    }
    fn from_exact(x: &Exact) -> Self {
        x.clone()
    }
}

/// Floating-point scalar for quadrature, ODE integration and transcendental formulas.
///
/// Deliberately not a [`Scalar`] subtrait: `Float` and `Signed` both define `abs`, which would
/// make every generic call ambiguous.
pub trait Real: Float + FloatConst + FromPrimitive + Default + Debug + Display + Send + Sync + 'static {
    /// Lossless-enough constant conversion for literals.
    fn c(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("representable constant")
    }

    fn as_f64(self) -> f64 {
        <Self as ToPrimitive>::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f64 {}
impl Real for f32 {}

/// Parses `a/b`, integers and decimals (with optional exponent) into an exact rational.
///
/// ```
/// use liouville_core::{parse_exact, Exact, Scalar};
/// assert_eq!(parse_exact("5/3").unwrap(), Exact::ratio(5, 3));
/// assert_eq!(parse_exact("1.25").unwrap(), Exact::ratio(5, 4));
/// assert_eq!(parse_exact("1e-2").unwrap(), Exact::ratio(1, 100));
/// ```
pub fn parse_exact(text: &str) -> Option<Exact> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((a, b)) = s.split_once('/') {
        let num = parse_exact(a)?;
        let den = parse_exact(b)?;
        if den.is_zero() {
            return None;
        }
        return Some(num / den);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if all.is_empty() { "0" } else { &all }).ok()?;
    let shift = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(numer);
    if shift >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Some(if negative { -value } else { value })
}

/// Converts between scalar types (exact when both sides are exact).
pub fn convert<S: Scalar, T: Scalar>(x: &S) -> T {
    T::from_exact(&x.to_exact())
}

/// Integer power by repeated squaring; works for exact and float scalars alike.
pub fn powi<S: Scalar>(base: &S, exp: u32) -> S {
    let mut result = S::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b.clone();
        }
        b = b.clone() * b;
        e >>= 1;
    }
    result
}

pub(crate) fn is_integer<S: Scalar>(x: &S, tol: f64) -> bool {
    let r = x.to_f64().round();
    x.compare(&S::from_f64(r), tol) == Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_and_decimals() {
        assert_eq!(parse_exact("-7/4"), Some(Exact::ratio(-7, 4)));
        assert_eq!(parse_exact("0.5"), Some(Exact::ratio(1, 2)));
        assert_eq!(parse_exact(".5"), Some(Exact::ratio(1, 2)));
        assert_eq!(parse_exact("2.5e1"), Some(Exact::int(25)));
        assert_eq!(parse_exact("1/0"), None);
        assert_eq!(parse_exact("abc"), None);
        assert_eq!(parse_exact(""), None);
    }

    #[test]
    fn float_compare_resolves_ties_to_equal() {
        assert_eq!(1.0f64.compare(&(1.0 + 1e-14), 1e-12), Ordering::Equal);
        assert_eq!(1.0f64.compare(&1.1, 1e-12), Ordering::Less);
        assert_eq!(Exact::ratio(1, 3).compare(&Exact::ratio(1, 3), 0.0), Ordering::Equal);
    }

    #[test]
    fn powi_matches_repeated_product() {
        assert_eq!(powi(&Exact::ratio(3, 2), 3), Exact::ratio(27, 8));
        assert_eq!(powi(&2.0f64, 10), 1024.0);
    }

    #[test]
    fn convert_keeps_exact_values() {
        let x: Exact = convert(&Exact::ratio(5, 3));
        assert_eq!(x, Exact::ratio(5, 3));
        let y: f64 = convert(&Exact::ratio(1, 4));
        assert_eq!(y, 0.25);
    }
}
