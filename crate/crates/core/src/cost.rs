//! Exact nonnegative action costs.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid cost `{0}`: expected a nonnegative decimal")]
pub struct CostParseError(pub String);

/// A nonnegative rational cost. Comparisons and sums are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cost(Ratio<i64>);

impl Cost {
    pub const ZERO: Cost = Cost(Ratio::new_raw(0, 1));

    /// Panics on a negative value.
    pub fn from_integer(n: i64) -> Self {
        assert!(n >= 0, "costs are nonnegative");
        Cost(Ratio::from_integer(n))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0 + rhs.0)
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, Add::add)
    }
}

impl FromStr for Cost {
    type Err = CostParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || CostParseError(s.to_string());
        let t = s.trim();
        let (int, frac) = t.split_once('.').unwrap_or((t, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(err());
        }
        if !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        if frac.len() > 9 {
            return Err(err());
        }
        let digits = format!("{int}{frac}");
        let numer: i64 = digits.parse().map_err(|_| err())?;
        let denom = 10i64.pow(frac.len() as u32);
        Ok(Cost(Ratio::new(numer, denom)))
    }
}

/// Finite decimals print exactly (`12.5`); anything else prints as `p/q`.
impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = (*self.0.numer(), *self.0.denom());
        if d == 1 {
            return write!(f, "{n}");
        }
        let mut rest = d;
        let mut places = 0u32;
        while rest % 10 == 0 || rest % 2 == 0 || rest % 5 == 0 {
            if rest % 10 == 0 {
                rest /= 10;
            } else if rest % 2 == 0 {
                rest /= 2;
            } else {
                rest /= 5;
            }
            places += 1;
        }
        if rest != 1 || places > 18 {
            return write!(f, "{n}/{d}");
        }
        let scale = 10i128.pow(places);
        let scaled = n as i128 * scale / d as i128;
        let int = scaled / scale;
        let frac = scaled % scale;
        let frac = format!("{frac:0width$}", width = places as usize);
        write!(f, "{int}.{}", frac.trim_end_matches('0'))
    }
}

impl Serialize for Cost {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
