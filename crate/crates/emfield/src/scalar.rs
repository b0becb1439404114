//! Scalar arithmetic shared by the exact-rational and floating-point backends.
//!
//! Every tensor, polynomial, and jet-field type in this crate is generic over
//! a [`Scalar`]. Two implementations are provided:
//!
//! * [`Rat`] — arbitrary-precision rationals. Arithmetic is exact, so a zero
//!   residual really is zero and verification results are proofs of the
//!   corresponding polynomial identities.
//! * `f64` — IEEE double precision, used for solution families built from
//!   transcendental profiles (plane waves) where residuals are compared
//!   against explicit tolerances instead.
//!
//! The trait is method-based (taking `&self`) rather than operator-based so
//! that big-integer arithmetic does not force clones at every call site.

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

/// Arbitrary-precision rational number.
///
/// Thin wrapper around `num`'s `Ratio<BigInt>` kept as a distinct type so the
/// rest of the crate can use the [`Scalar`] trait uniformly and so serde
/// round-trips through the `"p/q"` string encoding used by solution spec
/// files and reports.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub Ratio<BigInt>);

impl Rat {
    /// Rational from an integer.
    pub fn int(n: i64) -> Self {
        Rat(Ratio::from_integer(BigInt::from(n)))
    }

    /// Rational `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Rat(Ratio::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Parse from `"p"` or `"p/q"` notation.
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(num).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
        let d = BigInt::from_str(den).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Rat(Ratio::new(n, d)))
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Rat::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Field operations needed by the tensor/polynomial/jet layers.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// `true` when arithmetic is exact and `is_zero` is decidable.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    /// Convert an exact rational parameter into this scalar type.
    fn from_rat(r: &Rat) -> Self;

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Exact zero test (for `f64`, bitwise zero).
    fn is_zero(&self) -> bool;
    /// Magnitude as `f64`, for residual reporting and tolerance checks.
    fn abs_f64(&self) -> f64;
    fn to_f64(&self) -> f64;

    /// Convenience: rational literal `num/den`.
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rat(&Rat::ratio(num, den))
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rat(Ratio::zero())
    }
    fn one() -> Self {
        Rat(Ratio::one())
    }
    fn from_int(n: i64) -> Self {
        Rat::int(n)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn add(&self, o: &Self) -> Self {
        Rat(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Rat(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Rat(&self.0 * &o.0)
    }
    fn div(&self, o: &Self) -> Self {
        Rat(&self.0 / &o.0)
    }
    fn neg(&self) -> Self {
        Rat(-self.0.clone())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            // Fall back to separate conversions when the ratio overflows.
            let n = self.0.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.0.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn from_rat(r: &Rat) -> Self {
        r.to_f64()
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn abs_f64(&self) -> f64 {
        self.abs()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in ["3", "-7/2", "0", "22/7"] {
            let r = Rat::parse(s).unwrap();
            assert_eq!(Rat::parse(&r.to_string()).unwrap(), r);
        }
        assert!(Rat::parse("1/0").is_err());
        assert!(Rat::parse("x").is_err());
    }

    #[test]
    fn exact_field_ops() {
        let a = Rat::ratio(1, 3);
        let b = Rat::ratio(1, 6);
        assert_eq!(a.add(&b), Rat::ratio(1, 2));
        assert_eq!(a.sub(&b), b);
        assert_eq!(a.mul(&b), Rat::ratio(1, 18));
        assert_eq!(a.div(&b), Rat::int(2));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn f64_backend_matches_rational_values() {
        let r = Rat::ratio(-5, 8);
        assert_eq!(f64::from_rat(&r), -0.625);
    }
}
