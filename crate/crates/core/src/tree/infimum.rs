use num_traits::{One, Signed};

use crate::algebra::{ExtRat, Rat};

use super::param::Param;
use super::synthetic::{SyntheticTree, TreePoint};
use super::TreeError;

/// Infimum of a finite set through one member: with `a_σ = Ψ(τ∧σ)`, the
/// infimum is the point of `[root, τ]` with `Ψ = min a_σ`.
pub fn t_inf_set(
    tree: &SyntheticTree,
    set: &[TreePoint],
    tau: &TreePoint,
    psi: &Param,
) -> Result<TreePoint, TreeError> {
    if set.is_empty() {
        return Err(TreeError::EmptySet);
    }
    if !set.contains(tau) {
        return Err(TreeError::MemberMissing);
    }
    let mut a0 = psi.psi(tree, tau)?;
    for sigma in set {
        let a = psi.psi(tree, &tree.t_meet(tau, sigma)?)?;
        if a < a0 {
            a0 = a;
        }
    }
    psi.inverse_on_path(tree, tau, &a0)
}

/// The chain `{σ_n}` on `[root, τ]` with `Ψ(σ_n) = base + scale/n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicChain {
    pub base: Rat,
    pub scale: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainInfimum {
    pub point: TreePoint,
    /// `Ψ` of the computed infimum; equals `base`.
    pub value: Rat,
    /// Number of chain members checked to lie on `[root, τ]` in strictly
    /// decreasing order.
    pub checked_terms: usize,
}

/// Infimum of an infinite descending chain, computed symbolically:
/// `inf_n (base + scale/n) = base`. The first `terms` members are
/// materialized and checked to descend along `[root, τ]` towards it.
pub fn harmonic_chain_inf(
    tree: &SyntheticTree,
    psi: &Param,
    tau: &TreePoint,
    chain: &HarmonicChain,
    terms: usize,
) -> Result<ChainInfimum, TreeError> {
    if !chain.scale.is_positive() || chain.base < Rat::one() {
        return Err(TreeError::InvalidParam(
            "chain needs base ≥ 1 and positive scale".into(),
        ));
    }
    let mut prev: Option<TreePoint> = None;
    for n in 1..=terms {
        let value = &chain.base + &chain.scale / Rat::from_integer(n.into());
        let p = psi.inverse_on_path(tree, tau, &ExtRat::Finite(value.clone()))?;
        debug_assert_eq!(psi.psi(tree, &p)?, ExtRat::Finite(value));
        if let Some(q) = &prev {
            if !tree.lt(&p, q)? {
                return Err(TreeError::InvalidParam("chain is not strictly decreasing".into()));
            }
        }
        prev = Some(p);
    }
    let point = psi.inverse_on_path(tree, tau, &ExtRat::Finite(chain.base.clone()))?;
    if let Some(last) = &prev {
        debug_assert!(tree.lt(&point, last)?);
    }
    Ok(ChainInfimum {
        point,
        value: chain.base.clone(),
        checked_terms: terms,
    })
}
