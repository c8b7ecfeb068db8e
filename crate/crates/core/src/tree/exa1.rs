use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{parse_rat, Rat};

use super::TreeError;

/// The poset `[0,1) ∪ {X, Y}`: a half-open segment with two incomparable
/// points on top. It satisfies the first three tree axioms but `{X, Y}` has
/// no infimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Exa1Point {
    Seg(Rat),
    X,
    Y,
}

impl Exa1Point {
    pub fn seg(t: Rat) -> Result<Self, TreeError> {
        if t < Rat::zero() || t >= Rat::one() {
            return Err(TreeError::BadAddress(format!("segment parameter {t} outside [0,1)")));
        }
        Ok(Exa1Point::Seg(t))
    }

    pub fn parse(s: &str) -> Result<Self, TreeError> {
        match s.trim() {
            "X" | "x" => Ok(Exa1Point::X),
            "Y" | "y" => Ok(Exa1Point::Y),
            other => {
                let t = other
                    .strip_prefix("seg@")
                    .ok_or_else(|| TreeError::BadAddress(other.to_string()))?;
                Self::seg(parse_rat(t).map_err(|e| TreeError::BadAddress(e.to_string()))?)
            }
        }
    }
}

impl fmt::Display for Exa1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exa1Point::Seg(t) => write!(f, "seg@{t}"),
            Exa1Point::X => f.write_str("X"),
            Exa1Point::Y => f.write_str("Y"),
        }
    }
}

pub fn exa1_leq(a: &Exa1Point, b: &Exa1Point) -> bool {
    match (a, b) {
        (Exa1Point::Seg(s), Exa1Point::Seg(t)) => s <= t,
        (Exa1Point::Seg(_), _) => true,
        (Exa1Point::X, Exa1Point::X) | (Exa1Point::Y, Exa1Point::Y) => true,
        _ => false,
    }
}

/// Why `{X, Y}` has no infimum: starting from `Seg(0)`, every lower bound
/// `Seg(t)` is beaten by the lower bound `Seg((t+1)/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoInfimum {
    pub schedule: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exa1Infimum {
    Point(Exa1Point),
    None(NoInfimum),
}

pub fn next_lower_bound(t: &Rat) -> Rat {
    (t + Rat::one()) / Rat::from_integer(2.into())
}

/// Infimum of a nonempty finite subset.
pub fn exa1_infimum(set: &[Exa1Point], steps: usize) -> Result<Exa1Infimum, TreeError> {
    if set.is_empty() {
        return Err(TreeError::EmptySet);
    }
    let min_seg = set
        .iter()
        .filter_map(|p| match p {
            Exa1Point::Seg(t) => Some(t.clone()),
            _ => None,
        })
        .min();
    if let Some(t) = min_seg {
        return Ok(Exa1Infimum::Point(Exa1Point::Seg(t)));
    }
    let has_x = set.contains(&Exa1Point::X);
    let has_y = set.contains(&Exa1Point::Y);
    match (has_x, has_y) {
        (true, false) => Ok(Exa1Infimum::Point(Exa1Point::X)),
        (false, true) => Ok(Exa1Infimum::Point(Exa1Point::Y)),
        _ => {
            let mut schedule = vec![Rat::zero()];
            for _ in 0..steps {
                let t = next_lower_bound(schedule.last().unwrap());
                schedule.push(t);
            }
            Ok(Exa1Infimum::None(NoInfimum { schedule }))
        }
    }
}

impl NoInfimum {
    /// Every entry is a lower bound of `{X, Y}` and the entries strictly increase.
    pub fn verify(&self) -> bool {
        self.schedule.windows(2).all(|w| w[0] < w[1])
            && self.schedule.iter().all(|t| {
                let p = Exa1Point::Seg(t.clone());
                t < &Rat::one() && exa1_leq(&p, &Exa1Point::X) && exa1_leq(&p, &Exa1Point::Y)
            })
    }
}
