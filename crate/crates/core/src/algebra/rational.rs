use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p` or `p/q` (optional leading sign, decimal digits).
pub fn parse_rat(s: &str) -> Result<Rat, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::BadNumber(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let valid_int = |t: &str| {
        let digits = t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num) {
        return Err(bad());
    }
    let n = BigInt::from_str(num.trim_start_matches('+')).map_err(|_| bad())?;
    let d = match den {
        Some(d) => {
            if !valid_int(d) {
                return Err(bad());
            }
            BigInt::from_str(d.trim_start_matches('+')).map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(AlgebraError::ZeroDenominator);
    }
    Ok(Rat::new(n, d))
}

/// A rational number or `+∞`.
///
/// The derived ordering places every `Finite` below `Infinity`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRat {
    Finite(Rat),
    Infinity,
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Finite(Rat::zero())
    }

    pub fn int(n: i64) -> Self {
        ExtRat::Finite(rat(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        ExtRat::Finite(ratio(n, d))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRat::Infinity)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::Infinity => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            ExtRat::Finite(r) => r.is_positive(),
            ExtRat::Infinity => true,
        }
    }

    /// `k · self` for a nonnegative integer `k`, with `0 · ∞ = 0`.
    pub fn times(&self, k: u64) -> ExtRat {
        if k == 0 {
            return ExtRat::zero();
        }
        match self {
            ExtRat::Finite(r) => ExtRat::Finite(r * Rat::from_integer(BigInt::from(k))),
            ExtRat::Infinity => ExtRat::Infinity,
        }
    }

    /// `c · self` for a rational `c > 0`.
    pub fn scale(&self, c: &Rat) -> ExtRat {
        debug_assert!(c.is_positive());
        match self {
            ExtRat::Finite(r) => ExtRat::Finite(r * c),
            ExtRat::Infinity => ExtRat::Infinity,
        }
    }

    /// `1/self`, with `1/∞ = 0`. Panics on zero.
    pub fn recip(&self) -> Rat {
        match self {
            ExtRat::Finite(r) => r.recip(),
            ExtRat::Infinity => Rat::zero(),
        }
    }

    /// `self − other` where `other` is finite; `∞ − a = ∞`.
    pub fn minus(&self, other: &Rat) -> ExtRat {
        match self {
            ExtRat::Finite(r) => ExtRat::Finite(r - other),
            ExtRat::Infinity => ExtRat::Infinity,
        }
    }

    pub fn min_of(a: ExtRat, b: ExtRat) -> ExtRat {
        std::cmp::min(a, b)
    }
}

impl From<Rat> for ExtRat {
    fn from(r: Rat) -> Self {
        ExtRat::Finite(r)
    }
}

impl Add for ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::Infinity,
        }
    }
}

impl<'a> Add<&'a ExtRat> for &'a ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: &ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::Infinity,
        }
    }
}

impl PartialEq<Rat> for ExtRat {
    fn eq(&self, other: &Rat) -> bool {
        matches!(self, ExtRat::Finite(r) if r == other)
    }
}

impl PartialOrd<Rat> for ExtRat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(match self {
            ExtRat::Finite(r) => r.cmp(other),
            ExtRat::Infinity => Ordering::Greater,
        })
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Finite(r) => write!(f, "{r}"),
            ExtRat::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtRat {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(ExtRat::Infinity),
            other => parse_rat(other).map(ExtRat::Finite),
        }
    }
}
