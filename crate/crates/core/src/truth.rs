//! Exact Łukasiewicz truth values on the rational unit interval.
//!
//! Every value is an arbitrary-precision rational in `[0, 1]`. The threshold
//! operator is discontinuous, so nothing in this crate ever rounds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("value {0} lies outside [0, 1]")]
    OutOfRange(BigRational),
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `int`, `int/int` or a decimal such as `0.95` into an exact rational.
///
/// No range check happens here; see [`TruthValue::new`].
pub fn parse_rational(text: &str) -> Result<BigRational, ValueError> {
    let malformed = || ValueError::Malformed(text.to_string());
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let value = if let Some((num, den)) = body.split_once('/') {
        if !digits(num) || !digits(den) {
            return Err(malformed());
        }
        let den: BigInt = den.parse().map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(ValueError::ZeroDenominator(text.to_string()));
        }
        BigRational::new(num.parse().map_err(|_| malformed())?, den)
    } else if let Some((int, frac)) = body.split_once('.') {
        if !(digits(int) || int.is_empty()) || !digits(frac) {
            return Err(malformed());
        }
        let int: BigInt = if int.is_empty() {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| malformed())?
        };
        let scale = num_traits::pow(BigInt::from(10u32), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| malformed())?;
        BigRational::new(int * &scale + frac, scale)
    } else {
        if !digits(body) {
            return Err(malformed());
        }
        BigRational::from_integer(body.parse().map_err(|_| malformed())?)
    };
    Ok(if neg { -value } else { value })
}

/// A truth degree: an exact rational `x` with `0 <= x <= 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TruthValue(BigRational);

impl TruthValue {
    pub fn new(value: BigRational) -> Result<Self, ValueError> {
        if value.is_negative() || value > BigRational::one() {
            Err(ValueError::OutOfRange(value))
        } else {
            Ok(Self(value))
        }
    }

    /// Builds `num/den`. Panics if the fraction is not a valid truth value;
    /// meant for literals in code and tests.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(BigRational::new(num.into(), den.into())).expect("ratio outside [0, 1]")
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Self::one()
        } else {
            Self::zero()
        }
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `Some(b)` when the value is exactly 0 or 1.
    pub fn as_crisp(&self) -> Option<bool> {
        if self.is_one() {
            Some(true)
        } else if self.is_zero() {
            Some(false)
        } else {
            None
        }
    }

    /// Decimal expansion of the value.
    ///
    /// When the reduced denominator has no prime factors besides 2 and 5 the
    /// expansion terminates and is returned in full with `true`. Otherwise
    /// the value is rounded half-up to `places` digits and paired with `false`.
    pub fn to_decimal(&self, places: usize) -> (String, bool) {
        let (numer, denom) = (self.0.numer(), self.0.denom());
        let mut rest = denom.clone();
        let (mut twos, mut fives) = (0usize, 0usize);
        while (&rest % 2u32).is_zero() {
            rest /= 2u32;
            twos += 1;
        }
        while (&rest % 5u32).is_zero() {
            rest /= 5u32;
            fives += 1;
        }
        let exact = rest.is_one();
        let digits = if exact { twos.max(fives) } else { places };
        let scale = num_traits::pow(BigInt::from(10u32), digits);
        let scaled = (numer * &scale * 2u32 + denom) / (denom * 2u32);
        let (whole, frac) = (&scaled / &scale, &scaled % &scale);
        let mut text = whole.to_string();
        if digits > 0 && !frac.is_zero() {
            let frac = format!("{frac:0>digits$}");
            text.push('.');
            text.push_str(frac.trim_end_matches('0'));
        }
        (text, exact)
    }

    // Every operation below is a piecewise-linear map with integer coefficients
    // followed by a clamp, so the result is back in [0, 1] and stays exact.
    fn clamp(value: BigRational) -> Self {
        if value.is_negative() {
            Self::zero()
        } else if value > BigRational::one() {
            Self::one()
        } else {
            Self(value)
        }
    }

    /// `1 - x`
    pub fn neg(&self) -> Self {
        Self(BigRational::one() - &self.0)
    }

    /// Strong conjunction: `max(0, x + y - 1)`.
    pub fn conj(&self, other: &Self) -> Self {
        Self::clamp(&self.0 + &other.0 - BigRational::one())
    }

    /// Residuum: `min(1, 1 - x + y)`.
    pub fn implies(&self, other: &Self) -> Self {
        Self::clamp(BigRational::one() - &self.0 + &other.0)
    }

    /// Crisp threshold test: 1 when `x >= g`, else 0.
    pub fn geq(&self, g: &Threshold) -> Self {
        Self::from_bool(self.0 >= g.0 .0)
    }

    /// Weak conjunction: `min(x, y)`.
    pub fn meet(&self, other: &Self) -> Self {
        std::cmp::min(self, other).clone()
    }

    /// Weak disjunction: `max(x, y)`.
    pub fn join(&self, other: &Self) -> Self {
        std::cmp::max(self, other).clone()
    }

    /// Strong disjunction: `min(1, x + y)`.
    pub fn sdisj(&self, other: &Self) -> Self {
        Self::clamp(&self.0 + &other.0)
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, &self.0)
    }
}

impl fmt::Debug for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthValue({self})")
    }
}

impl FromStr for TruthValue {
    type Err = ValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(parse_rational(s)?)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, value: &BigRational) -> fmt::Result {
    if value.is_integer() {
        write!(f, "{}", value.numer())
    } else {
        write!(f, "{}/{}", value.numer(), value.denom())
    }
}

/// The rational bound `g` of a threshold formula or announcement.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Threshold(TruthValue);

impl Threshold {
    pub fn new(value: BigRational) -> Result<Self, ValueError> {
        TruthValue::new(value).map(Self)
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self(TruthValue::ratio(num, den))
    }

    pub fn value(&self) -> &TruthValue {
        &self.0
    }
}

impl From<TruthValue> for Threshold {
    fn from(value: TruthValue) -> Self {
        Self(value)
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Threshold({})", self.0)
    }
}

impl FromStr for Threshold {
    type Err = ValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TruthValue::from_str(s).map(Self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tv(n: i64, d: i64) -> TruthValue {
        TruthValue::ratio(n, d)
    }

    #[test]
    fn negation_examples() {
        assert_eq!(tv(0, 1).neg(), tv(1, 1));
        assert_eq!(tv(19, 20).neg(), tv(1, 20));
        assert_eq!(tv(1, 2).neg(), tv(1, 2));
    }

    #[test]
    fn conjunction_examples() {
        assert_eq!(tv(1, 1).conj(&tv(7, 10)), tv(7, 10));
        assert_eq!(tv(9, 10).conj(&tv(4, 5)), tv(7, 10));
        assert_eq!(tv(3, 10).conj(&tv(1, 2)), tv(0, 1));
    }

    #[test]
    fn implication_examples() {
        for x in [tv(0, 1), tv(3, 7), tv(1, 1)] {
            assert_eq!(x.implies(&x), TruthValue::one());
        }
        assert_eq!(tv(1, 1).implies(&tv(2, 5)), tv(2, 5));
        assert_eq!(tv(1, 5).implies(&tv(9, 10)), tv(1, 1));
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(tv(3, 11).geq(&Threshold::ratio(0, 1)), TruthValue::one());
        assert_eq!(tv(2, 5).geq(&Threshold::ratio(4, 5)), TruthValue::zero());
        assert_eq!(tv(4, 5).geq(&Threshold::ratio(4, 5)), TruthValue::one());
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(tv(1, 5).join(&tv(9, 10)), tv(9, 10));
        assert_eq!(tv(7, 10).sdisj(&tv(7, 10)), tv(1, 1));
        assert_eq!(tv(1, 5).meet(&tv(9, 10)), tv(1, 5));
    }

    #[test]
    fn rational_literals() {
        assert_eq!("0.95".parse::<TruthValue>().unwrap(), tv(19, 20));
        assert_eq!("4/5".parse::<TruthValue>().unwrap(), tv(4, 5));
        assert_eq!("1".parse::<TruthValue>().unwrap(), tv(1, 1));
        assert_eq!("8/10".parse::<TruthValue>().unwrap(), tv(4, 5));
        assert!(matches!(
            "3/2".parse::<TruthValue>(),
            Err(ValueError::OutOfRange(_))
        ));
        assert!(matches!(
            "1/0".parse::<TruthValue>(),
            Err(ValueError::ZeroDenominator(_))
        ));
        assert!(matches!(
            "0.".parse::<TruthValue>(),
            Err(ValueError::Malformed(_))
        ));
        assert!(matches!(
            "x".parse::<TruthValue>(),
            Err(ValueError::Malformed(_))
        ));
        assert!(matches!(
            "-1/2".parse::<TruthValue>(),
            Err(ValueError::OutOfRange(_))
        ));
    }

    #[test]
    fn display_is_reduced_fraction() {
        assert_eq!(tv(2, 4).to_string(), "1/2");
        assert_eq!(tv(0, 3).to_string(), "0");
        assert_eq!(tv(5, 5).to_string(), "1");
    }

    fn arb_tv() -> impl Strategy<Value = TruthValue> {
        (1i64..=24).prop_flat_map(|d| (0..=d).prop_map(move |n| TruthValue::ratio(n, d)))
    }

    #[test]
    fn decimal_expansions() {
        assert_eq!(tv(1, 5).to_decimal(6), ("0.2".into(), true));
        assert_eq!(tv(0, 1).to_decimal(6), ("0".into(), true));
        assert_eq!(tv(1, 1).to_decimal(6), ("1".into(), true));
        assert_eq!(tv(19, 20).to_decimal(6), ("0.95".into(), true));
        assert_eq!(tv(1, 3).to_decimal(6), ("0.333333".into(), false));
        assert_eq!(tv(2, 3).to_decimal(6), ("0.666667".into(), false));
        assert_eq!(tv(1, 1024).to_decimal(2), ("0.0009765625".into(), true));
    }

    proptest! {
        #[test]
        fn double_negation(x in arb_tv()) {
            prop_assert_eq!(x.neg().neg(), x);
        }

        #[test]
        fn residuation(x in arb_tv(), y in arb_tv(), z in arb_tv()) {
            prop_assert_eq!(x.conj(&y) <= z, x <= y.implies(&z));
        }

        #[test]
        fn implication_as_negated_conjunction(x in arb_tv(), y in arb_tv()) {
            prop_assert_eq!(x.implies(&y), x.conj(&y.neg()).neg());
        }

        #[test]
        fn implication_is_one_iff_ordered(x in arb_tv(), y in arb_tv()) {
            prop_assert_eq!(x.implies(&y).is_one(), x <= y);
        }

        #[test]
        fn conjunction_laws(x in arb_tv(), y in arb_tv()) {
            prop_assert_eq!(x.conj(&y), y.conj(&x));
            prop_assert_eq!(x.conj(&TruthValue::one()), x.clone());
            prop_assert!(x.conj(&x) <= x);
        }

        #[test]
        fn threshold_is_crisp(x in arb_tv(), g in arb_tv()) {
            prop_assert!(x.geq(&Threshold::from(g)).as_crisp().is_some());
        }

        #[test]
        fn derived_connectives_match_desugaring(x in arb_tv(), y in arb_tv()) {
            // max as (x -> y) -> y, min as ~(~x | ~y), strong disjunction as ~(~x & ~y)
            let or = |a: &TruthValue, b: &TruthValue| a.implies(b).implies(b);
            prop_assert_eq!(x.join(&y), or(&x, &y));
            prop_assert_eq!(x.meet(&y), or(&x.neg(), &y.neg()).neg());
            prop_assert_eq!(x.sdisj(&y), x.neg().conj(&y.neg()).neg());
        }
    }
}
