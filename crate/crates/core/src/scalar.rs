//! Scalar backends.
//!
//! Everything numeric in the crate is generic over [`Scalar`]. Two families
//! are provided: binary floating point (`f32`, `f64`), where rank decisions
//! use a tolerance, and exact rationals ([`Rational`]), where every
//! comparison is exact and tolerances collapse to zero.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use serde_json::Value;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic is exact and tolerances are ignored.
    const EXACT: bool;

    /// Square root, or `None` when it is not representable (negative input,
    /// irrational root in exact mode).
    fn sqrt_checked(&self) -> Option<Self>;

    /// Nearest value to `v`. Exact backends convert the binary value exactly.
    fn from_f64_lossy(v: f64) -> Self;

    /// Parses an integer, decimal (`-1.25e-3`) or fraction (`3/4`) literal.
    fn parse_literal(text: &str) -> Option<Self>;

    /// JSON form: a number with 12 significant digits for floats, an exact
    /// fraction string for rationals.
    fn to_json(&self) -> Value;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// A tolerance in this backend; zero for exact backends.
    fn tolerance(eps: f64) -> Self {
        if Self::EXACT {
            Self::zero()
        } else {
            Self::from_f64_lossy(eps)
        }
    }

    fn from_json(value: &Value) -> Option<Self> {
        match value {
            Value::Number(n) => Self::parse_literal(&n.to_string()),
            Value::String(s) => Self::parse_literal(s.trim()),
            _ => None,
        }
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("i64 fits") / Self::from_i64(den).expect("i64 fits")
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }
}

/// Rounds to 12 significant digits.
pub fn round_significant(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

fn float_json(v: f64) -> Value {
    let r = round_significant(v);
    // -0 prints as "-0.0"; normalize it
    let r = if r == 0.0 { 0.0 } else { r };
    serde_json::Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null)
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn sqrt_checked(&self) -> Option<Self> {
                if *self < 0.0 {
                    None
                } else {
                    Some(self.sqrt())
                }
            }

            fn from_f64_lossy(v: f64) -> Self {
                v as $t
            }

            fn parse_literal(text: &str) -> Option<Self> {
                if let Some((n, d)) = text.split_once('/') {
                    let n: $t = n.trim().parse().ok()?;
                    let d: $t = d.trim().parse().ok()?;
                    return Some(n / d);
                }
                text.parse().ok()
            }

            fn to_json(&self) -> Value {
                float_json(*self as f64)
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

impl Scalar for Rational {
    const EXACT: bool = true;

    fn sqrt_checked(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = self.numer();
        let den = self.denom();
        let rn = num.sqrt();
        let rd = den.sqrt();
        if &(&rn * &rn) == num && &(&rd * &rd) == den {
            Some(Rational::new(rn, rd))
        } else {
            None
        }
    }

    fn from_f64_lossy(v: f64) -> Self {
        Rational::from_float(v).unwrap_or_else(Rational::zero)
    }

    fn parse_literal(text: &str) -> Option<Self> {
        if let Some((n, d)) = text.split_once('/') {
            let n = parse_decimal(n.trim())?;
            let d = parse_decimal(d.trim())?;
            if d.is_zero() {
                return None;
            }
            return Some(n / d);
        }
        parse_decimal(text)
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

/// Exact value of a decimal literal such as `-12.5e-3`.
fn parse_decimal(text: &str) -> Option<Rational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
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
    let all: String = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str_radix(&all, 10).ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    if negative {
        value = -value;
    }
    Some(value)
}

/// Square of a value.
pub fn sq<S: Scalar>(v: &S) -> S {
    v.clone() * v.clone()
}

/// `true` when `v` is within `tol` of zero.
pub fn near_zero<S: Scalar>(v: &S, tol: &S) -> bool {
    v.abs() <= *tol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_exact_only() {
        let q = Rational::parse_literal("9/4").unwrap();
        assert_eq!(q.sqrt_checked(), Some(Rational::from_ratio(3, 2)));
        assert_eq!(Rational::from_ratio(3, 4).sqrt_checked(), None);
        assert_eq!(Rational::from_ratio(-1, 1).sqrt_checked(), None);
        assert_eq!((-1.0f64).sqrt_checked(), None);
    }

    #[test]
    fn decimal_literals_parse_exactly() {
        assert_eq!(Rational::parse_literal("0.1"), Some(Rational::from_ratio(1, 10)));
        assert_eq!(Rational::parse_literal("-1.5e2"), Some(Rational::from_ratio(-150, 1)));
        assert_eq!(Rational::parse_literal("2.5E-1"), Some(Rational::from_ratio(1, 4)));
        assert_eq!(Rational::parse_literal("1/0"), None);
        assert_eq!(Rational::parse_literal("abc"), None);
        assert_eq!(f64::parse_literal("3/4"), Some(0.75));
    }

    #[test]
    fn json_rounding() {
        assert_eq!(1.0f64.to_json(), serde_json::json!(1.0));
        assert_eq!((1.0f64 / 3.0).to_json(), serde_json::json!(0.333333333333));
        assert_eq!(Rational::from_ratio(-2, 6).to_json(), serde_json::json!("-1/3"));
        assert_eq!(Rational::from_json(&serde_json::json!(0.5)), Some(Rational::from_ratio(1, 2)));
    }
}
