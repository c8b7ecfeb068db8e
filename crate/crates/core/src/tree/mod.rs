//! Rooted non-metric trees: rational interval trees, the counterexample
//! poset `[0,1) ∪ {X, Y}`, segments, tangent vectors, parametrization
//! metrics and the checks on balls and neighborhoods.

mod axioms;
mod checks;
mod exa1;
mod infimum;
pub mod json;
mod param;
mod synthetic;
pub mod valuative;

pub use axioms::{
    is_order_isomorphism, t_axiom_check, AxiomReport, AxiomResult, Exa1Model, OrderModel,
    TreeModel,
};
pub use checks::{ball_in_subbasic_check, star_witness, BallReport, StarWitness, TangentRef};
pub use exa1::{exa1_infimum, exa1_leq, next_lower_bound, Exa1Infimum, Exa1Point, NoInfimum};
pub use infimum::{harmonic_chain_inf, t_inf_set, ChainInfimum, HarmonicChain};
pub use param::Param;
pub use synthetic::{SyntheticTree, TreeBuilder, TreePoint};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("point belongs to a different tree")]
    ForeignPoint,
    #[error("tangent representative equals the base point")]
    BasePointEqualsRep,
    #[error("empty set")]
    EmptySet,
    #[error("the base point is not a member of the set")]
    MemberMissing,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("need more branches than neighborhoods plus one")]
    TooFewBranches,
    #[error("bad address: {0}")]
    BadAddress(String),
    #[error("invalid edge: {0}")]
    InvalidEdge(String),
    #[error("invalid parametrization: {0}")]
    InvalidParam(String),
    #[error("format error: {0}")]
    Format(String),
}
