use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{BivarPoly, ExtRat, LinearFrame, Rat};

use super::canonical::{canonicalize, Terminal};
use super::point::ProjPoint;
use super::qmv::{MonomialWeights, QuasiMonomialVal};
use super::ValuationError;

/// A value in `ℤ×ℚ` under the lexicographic order, or `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rank2Value {
    Finite(i64, Rat),
    Infinity,
}

impl Rank2Value {
    pub fn zero() -> Self {
        Rank2Value::Finite(0, Rat::zero())
    }

    pub fn pair(i: i64, q: Rat) -> Self {
        Rank2Value::Finite(i, q)
    }

    fn times(&self, k: u32) -> Self {
        match self {
            Rank2Value::Finite(i, q) => {
                Rank2Value::Finite(i * k as i64, q * Rat::from_integer(BigInt::from(k)))
            }
            Rank2Value::Infinity => Rank2Value::Infinity,
        }
    }
}

impl Add for Rank2Value {
    type Output = Rank2Value;
    fn add(self, rhs: Rank2Value) -> Rank2Value {
        match (self, rhs) {
            (Rank2Value::Finite(a, p), Rank2Value::Finite(b, q)) => Rank2Value::Finite(a + b, p + q),
            _ => Rank2Value::Infinity,
        }
    }
}

impl fmt::Display for Rank2Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank2Value::Finite(i, q) => write!(f, "({i}, {q})"),
            Rank2Value::Infinity => f.write_str("inf"),
        }
    }
}

/// Monomial valuation with values in `ℤ×ℚ` (lex) on the coordinates of `frame`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rank2Val {
    pub frame: LinearFrame,
    pub wx: (i64, Rat),
    pub wy: (i64, Rat),
}

impl Rank2Val {
    pub fn new(wx: (i64, Rat), wy: (i64, Rat)) -> Self {
        Self {
            frame: LinearFrame::identity(),
            wx,
            wy,
        }
    }

    pub fn with_frame(frame: LinearFrame, wx: (i64, Rat), wy: (i64, Rat)) -> Self {
        Self { frame, wx, wy }
    }
}

/// Lex-min of `r·wx + s·wy` over the support of `φ` in frame coordinates.
pub fn rank2_eval(rho: &Rank2Val, phi: &BivarPoly) -> Rank2Value {
    let wx = Rank2Value::Finite(rho.wx.0, rho.wx.1.clone());
    let wy = Rank2Value::Finite(rho.wy.0, rho.wy.1.clone());
    rho.frame
        .apply(phi)
        .terms()
        .map(|(&(r, s), _)| wx.times(r) + wy.times(s))
        .min()
        .unwrap_or(Rank2Value::Infinity)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Krull {
    SameRank1(QuasiMonomialVal),
    Rank2 {
        rho: Rank2Val,
        support_generator: BivarPoly,
    },
}

/// The Krull valuation attached to `ν`: `ν` itself when its support is
/// trivial, otherwise `ψ = ℓ^r·ψ' ↦ (r, ν(ψ'))` for the curve `ℓ = 0`.
pub fn krull(v: &QuasiMonomialVal) -> Result<Krull, ValuationError> {
    let form = canonicalize(v);
    let (direction, weight) = match form.terminal {
        Terminal::Divisorial(_) => return Ok(Krull::SameRank1(v.clone())),
        Terminal::Curve { direction, weight } => (direction, weight),
    };
    if !form.steps.is_empty() {
        return Err(ValuationError::UnsupportedDeepCurve);
    }
    let rho = match &direction {
        ProjPoint::Finite(c) => Rank2Val::with_frame(
            LinearFrame::new([[Rat::one(), Rat::zero()], [c.clone(), Rat::one()]])
                .expect("unipotent"),
            (0, weight),
            (1, Rat::zero()),
        ),
        ProjPoint::Inf => Rank2Val::new((1, Rat::zero()), (0, weight)),
    };
    Ok(Krull::Rank2 {
        rho,
        support_generator: direction.linear_form(),
    })
}

/// Value of `krull[ν]` computed by dividing out the support generator.
pub fn krull_value(
    v: &QuasiMonomialVal,
    generator: &BivarPoly,
    phi: &BivarPoly,
) -> Result<Rank2Value, ValuationError> {
    if phi.is_zero() {
        return Ok(Rank2Value::Infinity);
    }
    let (r, rest) = phi.divide_out_linear(generator)?;
    match v.eval(&rest) {
        ExtRat::Finite(q) => Ok(Rank2Value::Finite(r as i64, q)),
        ExtRat::Infinity => Err(ValuationError::UnsupportedDeepCurve),
    }
}

/// `ν'(φ) = π₂(ρ(φ))` when `π₁(ρ(φ)) = 0`, else `∞`, when this is a
/// centered rank-1 valuation; `None` when it degenerates.
pub fn rank1_section(rho: &Rank2Val) -> Option<QuasiMonomialVal> {
    let (ix, qx) = (&rho.wx.0, &rho.wx.1);
    let (iy, qy) = (&rho.wy.0, &rho.wy.1);
    let weights = match (*ix, *iy) {
        (0, 0) if qx.is_positive() && qy.is_positive() => {
            MonomialWeights::new(qx.clone().into(), qy.clone().into())
        }
        (0, i) if i > 0 && qx.is_positive() => {
            MonomialWeights::new(qx.clone().into(), ExtRat::Infinity)
        }
        (i, 0) if i > 0 && qy.is_positive() => {
            MonomialWeights::new(ExtRat::Infinity, qy.clone().into())
        }
        _ => return None,
    }
    .ok()?;
    QuasiMonomialVal::new(Vec::new(), rho.frame.clone(), weights).ok()
}
