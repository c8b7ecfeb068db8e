use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::{parse_rat, BivarPoly, Rat};

use super::ValuationError;

/// A point of `P¹(ℚ)`: `Finite(c)` is the class `[c:1]`, `Inf` is `[1:0]`.
///
/// Used both for directions `[a:b]` (the linear form `a·x + b·y`) and for
/// dilatation centers. Center `c` corresponds to direction `[−c:1]`, center
/// `Inf` to direction `[1:0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjPoint {
    Finite(Rat),
    Inf,
}

impl ProjPoint {
    /// The class of a nonzero pair `(a, b)`.
    pub fn from_pair(a: &Rat, b: &Rat) -> Option<Self> {
        if b.is_zero() {
            if a.is_zero() {
                None
            } else {
                Some(ProjPoint::Inf)
            }
        } else {
            Some(ProjPoint::Finite(a / b))
        }
    }

    /// Representative pair: `[c:1]` or `[1:0]`.
    pub fn pair(&self) -> (Rat, Rat) {
        match self {
            ProjPoint::Finite(c) => (c.clone(), Rat::one()),
            ProjPoint::Inf => (Rat::one(), Rat::zero()),
        }
    }

    /// The linear form `a·x + b·y` of the representative pair.
    pub fn linear_form(&self) -> BivarPoly {
        let (a, b) = self.pair();
        BivarPoly::linear(a, b)
    }

    /// Direction of the blown-up tangent line for a chart center, and back.
    /// The map is an involution.
    pub fn center_direction(&self) -> ProjPoint {
        match self {
            ProjPoint::Finite(c) => ProjPoint::Finite(-c.clone()),
            ProjPoint::Inf => ProjPoint::Inf,
        }
    }

    /// Center form: `"c"` or `"inf"`.
    pub fn center_string(&self) -> String {
        match self {
            ProjPoint::Finite(c) => c.to_string(),
            ProjPoint::Inf => "inf".to_string(),
        }
    }

    pub fn parse_center(s: &str) -> Result<Self, ValuationError> {
        match s.trim() {
            "inf" | "∞" => Ok(ProjPoint::Inf),
            other => Ok(ProjPoint::Finite(parse_rat(other)?)),
        }
    }
}

/// Printed as `[p:q]` with coprime integers.
impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(c) => write!(f, "[{}:{}]", c.numer(), c.denom()),
            ProjPoint::Inf => f.write_str("[1:0]"),
        }
    }
}

impl FromStr for ProjPoint {
    type Err = ValuationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ValuationError::Format(format!("bad direction '{s}'"));
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (a, b) = inner.split_once(':').ok_or_else(bad)?;
        let (a, b) = (parse_rat(a)?, parse_rat(b)?);
        ProjPoint::from_pair(&a, &b).ok_or_else(bad)
    }
}

/// One quadratic dilatation, identified by its chart center.
///
/// Center `c ∈ ℚ` pulls back along `y ← x·(y + c)`; center `Inf` along `x ← x·y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DilatationStep {
    pub center: ProjPoint,
}

impl DilatationStep {
    pub fn at(center: ProjPoint) -> Self {
        Self { center }
    }

    pub fn finite(c: Rat) -> Self {
        Self::at(ProjPoint::Finite(c))
    }

    pub fn inf() -> Self {
        Self::at(ProjPoint::Inf)
    }

    pub fn pullback(&self, phi: &BivarPoly) -> BivarPoly {
        match &self.center {
            ProjPoint::Finite(c) => phi.pullback_translated(c),
            ProjPoint::Inf => phi.pullback_swapped(),
        }
    }
}

impl fmt::Display for DilatationStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.center.center_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    #[test]
    fn display_and_parse() {
        let p = ProjPoint::from_pair(&rat(1), &rat(2)).unwrap();
        assert_eq!(p.to_string(), "[1:2]");
        assert_eq!(ProjPoint::Finite(rat(-3)).to_string(), "[-3:1]");
        assert_eq!(ProjPoint::Inf.to_string(), "[1:0]");
        assert_eq!("[2:4]".parse::<ProjPoint>().unwrap(), ProjPoint::Finite(ratio(1, 2)));
        assert_eq!("[3:0]".parse::<ProjPoint>().unwrap(), ProjPoint::Inf);
        assert!("[0:0]".parse::<ProjPoint>().is_err());
        assert!("1:2".parse::<ProjPoint>().is_err());
    }

    #[test]
    fn center_direction_convention() {
        assert_eq!(
            ProjPoint::Finite(rat(3)).center_direction(),
            ProjPoint::Finite(rat(-3))
        );
        assert_eq!(ProjPoint::Inf.center_direction(), ProjPoint::Inf);
        let d = ProjPoint::Finite(rat(-3));
        assert_eq!(d.linear_form(), "y - 3*x".parse().unwrap());
    }
}
