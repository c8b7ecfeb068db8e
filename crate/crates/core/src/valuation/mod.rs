//! Centered valuations on `ℚ[x,y]` localized at the origin, given by finite
//! dilatation programs, together with their order, infimum and the krull map.

mod canonical;
mod infimum;
pub mod json;
mod krull;
mod lambda;
mod point;
mod qmv;
mod topology;

pub use canonical::{
    canonicalize, dilate, equal, stream, CanonicalForm, Dilation, MultiplicityStream,
    StreamEntry, Terminal,
};
pub use infimum::{
    common_minimizer, compare, exceptional_direction, homogeneous_witness, inf_finite, meet,
    meet_canonical, Comparison,
};
pub use krull::{krull, krull_value, rank1_section, rank2_eval, Krull, Rank2Val, Rank2Value};
pub use lambda::{lambda_of_pair, sim_pairs};
pub use point::{DilatationStep, ProjPoint};
pub use qmv::{MonomialWeights, QuasiMonomialVal};
pub use topology::{patch_member, weak_member, zariski_member, Sense};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValuationError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("monomial weights must be positive")]
    NonPositiveWeight,
    #[error("both monomial weights are infinite")]
    BothWeightsInfinite,
    #[error("valuation is not centered: the maximal ideal has infinite value")]
    NotCentered,
    #[error("dilate expects a valuation without steps")]
    NotHeadForm,
    #[error("empty set of valuations")]
    EmptySet,
    #[error("pair entries must be units or zero, and not both zero")]
    InvalidPair,
    #[error("krull is only computed for curves through the origin without steps")]
    UnsupportedDeepCurve,
    #[error("denominator has infinite value")]
    DivisionUndefined,
    #[error("format error: {0}")]
    Format(String),
}
