//! Exact rational numbers.
//!
//! Values whose reduced numerator and denominator fit in `i128` are stored
//! inline and handled with checked machine arithmetic. Anything that
//! overflows is promoted to an arbitrary-precision [`BigRational`] and demoted
//! again as soon as a result fits. Both representations are kept in canonical
//! form (reduced, positive denominator) and a value always uses the inline
//! representation when it can, so structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone)]
enum Repr {
    /// Reduced, `den > 0`.
    Small(i128, i128),
    Big(Box<BigRational>),
}

/// An exact rational number.
#[derive(Clone)]
pub struct Scalar(Repr);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("empty number")]
    Empty,
    #[error("invalid number `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    // Small values never hold i128::MIN, so negation and gcd cannot overflow.
    let (x, y) = (a.unsigned_abs(), b.unsigned_abs());
    if x <= u64::MAX as u128 && y <= u64::MAX as u128 {
        return (x as u64).gcd(&(y as u64)) as i128;
    }
    a.gcd(&b)
}

/// `a * b`, or `None` on overflow. Avoids the slow overflow-checked
/// multiply when both factors fit in 64 bits.
pub(crate) fn mul_i128(a: i128, b: i128) -> Option<i128> {
    if a as i64 as i128 == a && b as i64 as i128 == b {
        Some(a.wrapping_mul(b))
    } else {
        a.checked_mul(b)
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Scalar(Repr::Small(1, 1))
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(Repr::Small(v as i128, 1))
    }

    /// `num / den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128_parts(num as i128, den as i128)
            .expect("i64 ratio always fits")
    }

    /// `num / den` reduced, or `None` when a part is `i128::MIN`.
    pub(crate) fn from_i128_parts(num: i128, den: i128) -> Option<Self> {
        debug_assert!(den != 0);
        if num == i128::MIN || den == i128::MIN {
            return None;
        }
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        if d != 1 {
            let g = gcd_i128(n, d);
            if g > 1 {
                n /= g;
                d /= g;
            }
        }
        Some(Scalar(Repr::Small(n, d)))
    }

    pub fn from_big(r: BigRational) -> Self {
        // BigRational::new reduces; Ratio arithmetic keeps results reduced.
        match (r.numer().to_i128(), r.denom().to_i128()) {
            (Some(n), Some(d)) if n != i128::MIN && d != i128::MIN => Scalar(Repr::Small(n, d)),
            _ => Scalar(Repr::Big(Box::new(r))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    /// True when the value uses the inline machine-word representation.
    /// Inline numerator and denominator, when stored inline.
    pub(crate) fn as_small(&self) -> Option<(i128, i128)> {
        match self.0 {
            Repr::Small(n, d) => Some((n, d)),
            Repr::Big(_) => None,
        }
    }

    pub fn is_small(&self) -> bool {
        matches!(self.0, Repr::Small(..))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Nearest `f64`; for display only.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => {
                if *d == 1 {
                    *n as f64
                } else {
                    self.to_big().to_f64().unwrap_or(f64::NAN)
                }
            }
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    fn add_small(n1: i128, d1: i128, n2: i128, d2: i128) -> Option<Scalar> {
        if d1 == 1 && d2 == 1 {
            return n1
                .checked_add(n2)
                .filter(|n| *n != i128::MIN)
                .map(|n| Scalar(Repr::Small(n, 1)));
        }
        if d1 == d2 {
            let n = n1.checked_add(n2)?;
            return Self::from_i128_parts(n, d1);
        }
        let g = gcd_i128(d1, d2);
        let a = mul_i128(n1, d2 / g)?;
        let b = mul_i128(n2, d1 / g)?;
        let n = a.checked_add(b)?;
        let d = mul_i128(d1 / g, d2)?;
        Self::from_i128_parts(n, d)
    }

    fn mul_small(n1: i128, d1: i128, n2: i128, d2: i128) -> Option<Scalar> {
        if d1 == 1 && d2 == 1 {
            return mul_i128(n1, n2)
                .filter(|n| *n != i128::MIN)
                .map(|n| Scalar(Repr::Small(n, 1)));
        }
        if n1 == 0 || n2 == 0 {
            return Some(Scalar::zero());
        }
        let g1 = gcd_i128(n1, d2).max(1);
        let g2 = gcd_i128(n2, d1).max(1);
        let n = mul_i128(n1 / g1, n2 / g2)?;
        let d = mul_i128(d1 / g2, d2 / g1)?;
        if n == i128::MIN {
            return None;
        }
        Some(Scalar(Repr::Small(n, d)))
    }

    fn cmp_small(n1: i128, d1: i128, n2: i128, d2: i128) -> Option<Ordering> {
        if d1 == d2 {
            return Some(n1.cmp(&n2));
        }
        let a = mul_i128(n1, d2)?;
        let b = mul_i128(n2, d1)?;
        Some(a.cmp(&b))
    }

    pub fn recip(&self) -> Scalar {
        match &self.0 {
            Repr::Small(n, d) => {
                assert!(*n != 0, "division by zero");
                Self::from_i128_parts(*d, *n).expect("reciprocal of a small value fits")
            }
            Repr::Big(b) => Scalar::from_big(b.recip()),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Self {
        Scalar::from_int(v as i64)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::from_big(v)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Small(n1, d1), Repr::Small(n2, d2)) = (&self.0, &other.0) {
            if let Some(o) = Scalar::cmp_small(*n1, *d1, *n2, *d2) {
                return o;
            }
        }
        self.to_big().cmp(&other.to_big())
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if let (Repr::Small(n1, d1), Repr::Small(n2, d2)) = (&self.0, &rhs.0) {
            if let Some(s) = Scalar::add_small(*n1, *d1, *n2, *d2) {
                return s;
            }
        }
        Scalar::from_big(self.to_big() + rhs.to_big())
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        if let (Repr::Small(n1, d1), Repr::Small(n2, d2)) = (&self.0, &rhs.0) {
            if *n2 != i128::MIN {
                if let Some(s) = Scalar::add_small(*n1, *d1, -*n2, *d2) {
                    return s;
                }
            }
        }
        Scalar::from_big(self.to_big() - rhs.to_big())
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if let (Repr::Small(n1, d1), Repr::Small(n2, d2)) = (&self.0, &rhs.0) {
            if let Some(s) = Scalar::mul_small(*n1, *d1, *n2, *d2) {
                return s;
            }
        }
        Scalar::from_big(self.to_big() * rhs.to_big())
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        self * &rhs.recip()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small(n, d) => Scalar(Repr::Small(-*n, *d)),
            Repr::Big(b) => Scalar::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl fmt::Display for Scalar {
    /// Always `num/den`, the interchange form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            _ => fmt::Display::fmt(self, f),
        }
    }
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt, ParseScalarError> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseScalarError::Invalid(whole.to_string()));
    }
    let v: BigInt = digits
        .parse()
        .map_err(|_| ParseScalarError::Invalid(whole.to_string()))?;
    Ok(if s.starts_with('-') { -v } else { v })
}

fn parse_decimal(s: &str) -> Result<BigRational, ParseScalarError> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..]
                .parse()
                .map_err(|_| ParseScalarError::Invalid(s.to_string()))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let negative = mantissa.starts_with('-');
    let unsigned = mantissa.strip_prefix(['+', '-']).unwrap_or(mantissa);
    let (int_part, frac_part) = match unsigned.split_once('.') {
        Some((a, b)) => (a, b),
        None => (unsigned, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(ParseScalarError::Invalid(s.to_string()));
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(ParseScalarError::Invalid(s.to_string()));
    }
    if exp.unsigned_abs() > 10_000 {
        return Err(ParseScalarError::Invalid(s.to_string()));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| ParseScalarError::Invalid(s.to_string()))?
    };
    if negative {
        num = -num;
    }
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(r)
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts `num/den` rationals and decimal literals (`-1.25`, `3`, `2.5e-3`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseScalarError::Empty);
        }
        if let Some((n, d)) = s.split_once('/') {
            let n = parse_int(n.trim(), s)?;
            let d = parse_int(d.trim(), s)?;
            if d.is_zero() {
                return Err(ParseScalarError::ZeroDenominator(s.to_string()));
            }
            return Ok(Scalar::from_big(BigRational::new(n, d)));
        }
        parse_decimal(s).map(Scalar::from_big)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(q("1/2"), Scalar::ratio(1, 2));
        assert_eq!(q("-2/4"), Scalar::ratio(-1, 2));
        assert_eq!(q("3/-6"), Scalar::ratio(-1, 2));
        assert_eq!(q("0.5"), Scalar::ratio(1, 2));
        assert_eq!(q("-1.25"), Scalar::ratio(-5, 4));
        assert_eq!(q("2.5e-3"), Scalar::ratio(1, 400));
        assert_eq!(q("7"), Scalar::from_int(7));
        assert_eq!(q(".5"), Scalar::ratio(1, 2));
        assert!(matches!("1/0".parse::<Scalar>(), Err(ParseScalarError::ZeroDenominator(_))));
        assert!("abc".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
        assert!("1.2.3".parse::<Scalar>().is_err());
    }

    #[test]
    fn display_is_num_over_den() {
        assert_eq!(Scalar::ratio(6, -4).to_string(), "-3/2");
        assert_eq!(Scalar::from_int(5).to_string(), "5/1");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Scalar::from_int(i64::MAX);
        let sq = &big * &big;
        let quad = &sq * &sq;
        assert!(!quad.is_small());
        let back = &quad / &sq;
        assert!(back.is_small());
        assert_eq!(back, sq);
        assert_eq!(&(&quad - &quad) + &Scalar::one(), Scalar::one());
    }

    #[test]
    fn mixed_representation_ordering() {
        let big = &Scalar::from_int(i64::MAX) * &Scalar::from_int(i64::MAX);
        let huge = &big * &big;
        assert!(huge > big);
        assert!(-&huge < Scalar::zero());
        assert_eq!(huge.signum(), 1);
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Scalar::ratio(n, d))
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            let (ba, bb, bc) = (a.to_big(), b.to_big(), c.to_big());
            prop_assert_eq!((&a + &b).to_big(), &ba + &bb);
            prop_assert_eq!((&a - &b).to_big(), &ba - &bb);
            prop_assert_eq!((&(&a * &b) * &c).to_big(), &(&ba * &bb) * &bc);
            if !b.is_zero() {
                prop_assert_eq!((&a / &b).to_big(), &ba / &bb);
            }
            prop_assert_eq!(a.cmp(&b), ba.cmp(&bb));
        }

        #[test]
        fn string_round_trip(a in arb_scalar()) {
            prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
        }
    }
}
