//! Certainty weights in `[0, 1]`, stored as exact decimals.
//!
//! A weight is kept as an integer count of billionths so that parsing and
//! printing never drift through binary floating point. Up to nine fractional
//! digits are representable.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Fixed-point denominator: one unit of weight is `SCALE` nanos.
pub const SCALE: u32 = 1_000_000_000;
const FRACTION_DIGITS: usize = 9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(u32);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightParseError {
    #[error("`{0}` is not a decimal number")]
    Syntax(String),
    #[error("`{0}` has more than 9 fractional digits")]
    TooPrecise(String),
    #[error("weight {0} outside [0,1]")]
    OutOfRange(String),
}

impl Weight {
    pub const ZERO: Weight = Weight(0);
    pub const ONE: Weight = Weight(SCALE);

    pub fn from_nanos(nanos: u32) -> Option<Self> {
        (nanos <= SCALE).then_some(Weight(nanos))
    }

    /// Weight of `tenths / 10`; panics above 10.
    pub fn tenths(tenths: u32) -> Self {
        assert!(tenths <= 10, "weight {tenths}/10 outside [0,1]");
        Weight(tenths * (SCALE / 10))
    }

    pub fn nanos(self) -> u32 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.0) / f64::from(SCALE)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn saturating_sub(self, other: Weight) -> Weight {
        Weight(self.0.saturating_sub(other.0))
    }
}

impl FromStr for Weight {
    type Err = WeightParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let syntax = || WeightParseError::Syntax(text.to_string());
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(syntax());
        }
        let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) || (body.contains('.') && frac_part.is_empty()) {
            return Err(syntax());
        }
        if frac_part.len() > FRACTION_DIGITS {
            return Err(WeightParseError::TooPrecise(text.to_string()));
        }
        let int_value: u64 = if int_part.is_empty() {
            0
        } else {
            // anything longer than a few digits is out of range anyway
            let trimmed = int_part.trim_start_matches('0');
            if trimmed.len() > 2 {
                return Err(WeightParseError::OutOfRange(text.to_string()));
            }
            trimmed.parse().unwrap_or(0)
        };
        let mut frac_value: u64 = 0;
        for (i, b) in frac_part.bytes().enumerate() {
            frac_value += u64::from(b - b'0') * 10u64.pow((FRACTION_DIGITS - 1 - i) as u32);
        }
        let nanos = int_value * u64::from(SCALE) + frac_value;
        if nanos > u64::from(SCALE) || (negative && nanos > 0) {
            return Err(WeightParseError::OutOfRange(text.to_string()));
        }
        Ok(Weight(nanos as u32))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let int = self.0 / SCALE;
        let frac = self.0 % SCALE;
        if frac == 0 {
            return write!(f, "{int}");
        }
        let digits = format!("{frac:09}");
        write!(f, "{int}.{}", digits.trim_end_matches('0'))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Renders a strength value with at most nine fractional digits.
pub fn format_strength(value: f64) -> String {
    let text = format!("{value:.9}");
    let text = text.trim_end_matches('0').trim_end_matches('.');
    if text == "-0" {
        "0".to_string()
    } else {
        text.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_and_prints_decimals() {
        for (text, shown) in [("0.4", "0.4"), ("1", "1"), ("1.000", "1"), ("0", "0"), (".5", "0.5"), ("0.123456789", "0.123456789")] {
            let w: Weight = text.parse().unwrap();
            assert_eq!(w.to_string(), shown);
        }
    }

    #[test]
    fn rejects_out_of_range_and_precision() {
        assert!(matches!("1.3".parse::<Weight>(), Err(WeightParseError::OutOfRange(_))));
        assert!(matches!("-0.2".parse::<Weight>(), Err(WeightParseError::OutOfRange(_))));
        assert!(matches!("0.1234567891".parse::<Weight>(), Err(WeightParseError::TooPrecise(_))));
        assert!(matches!("abc".parse::<Weight>(), Err(WeightParseError::Syntax(_))));
        assert!(matches!("1.".parse::<Weight>(), Err(WeightParseError::Syntax(_))));
        assert!("-0".parse::<Weight>().is_ok());
    }

    #[test]
    fn strength_formatting() {
        assert_eq!(format_strength(5.2), "5.2");
        assert_eq!(format_strength(0.0), "0");
        assert_eq!(format_strength(1.0 + 1.0 + 1.0 + 0.5 + 0.4 + 0.5 + 0.8), "5.2");
    }

    proptest! {
        #[test]
        fn decimal_text_round_trips(nanos in 0u32..=SCALE) {
            let w = Weight::from_nanos(nanos).unwrap();
            let back: Weight = w.to_string().parse().unwrap();
            prop_assert_eq!(w, back);
        }
    }
}
