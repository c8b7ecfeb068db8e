use num_traits::{One, Signed, Zero};

use crate::algebra::{ExtRat, Rat};

use super::synthetic::{SyntheticTree, TreePoint};
use super::TreeError;

/// A parametrization `Ψ: T → [1, ∞]`, affine with positive slope on each
/// edge and `Ψ(root) = 1`. Infinite edges reach `∞` only at their end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    tree: u64,
    /// `slopes[n]` is the slope on the edge into node `n`; unused for the root.
    slopes: Vec<Rat>,
    /// `Ψ` at each node; `∞` for ends of infinite edges.
    at_node: Vec<ExtRat>,
}

impl Param {
    pub fn new(tree: &SyntheticTree, slopes: Vec<Rat>) -> Result<Self, TreeError> {
        if slopes.len() != tree.node_count() {
            return Err(TreeError::InvalidParam("one slope per node is required".into()));
        }
        if slopes.iter().skip(1).any(|s| !s.is_positive()) {
            return Err(TreeError::InvalidParam("slopes must be positive".into()));
        }
        let mut at_node = vec![ExtRat::Finite(Rat::one()); tree.node_count()];
        // Parents precede children in a built tree.
        for n in 1..tree.node_count() {
            let base = at_node[tree.parent(n).unwrap()].clone();
            at_node[n] = base + tree.edge_length(n).scale(&slopes[n]);
        }
        Ok(Self {
            tree: tree.uid(),
            slopes,
            at_node,
        })
    }

    /// `Ψ = 1 + distance from the root`.
    pub fn arclength_plus_one(tree: &SyntheticTree) -> Self {
        Self::new(tree, vec![Rat::one(); tree.node_count()]).expect("unit slopes")
    }

    pub fn slope(&self, node: usize) -> &Rat {
        &self.slopes[node]
    }

    fn check(&self, tree: &SyntheticTree) -> Result<(), TreeError> {
        if tree.uid() == self.tree {
            Ok(())
        } else {
            Err(TreeError::ForeignPoint)
        }
    }

    pub fn psi(&self, tree: &SyntheticTree, p: &TreePoint) -> Result<ExtRat, TreeError> {
        self.check(tree)?;
        tree.check(p)?;
        if p.is_root() {
            return Ok(ExtRat::Finite(Rat::one()));
        }
        let base = &self.at_node[tree.parent(p.node()).unwrap()];
        Ok(base + &p.t().scale(&self.slopes[p.node()]))
    }

    /// The point of `[root, τ]` with `Ψ = a`, for `1 ≤ a ≤ Ψ(τ)`.
    pub fn inverse_on_path(
        &self,
        tree: &SyntheticTree,
        tau: &TreePoint,
        a: &ExtRat,
    ) -> Result<TreePoint, TreeError> {
        let top = self.psi(tree, tau)?;
        if *a < ExtRat::Finite(Rat::one()) || *a > top {
            return Err(TreeError::InvalidParam(format!(
                "value {a} is outside [1, {top}]"
            )));
        }
        if *a == ExtRat::Finite(Rat::one()) {
            return Ok(tree.root());
        }
        for n in tree.path_to(tau.node()).into_iter().skip(1) {
            let end = if n == tau.node() {
                top.clone()
            } else {
                self.at_node[n].clone()
            };
            if *a <= end {
                let base = self.at_node[tree.parent(n).unwrap()].finite().unwrap().clone();
                let t = match a {
                    ExtRat::Infinity => ExtRat::Infinity,
                    ExtRat::Finite(v) => ExtRat::Finite((v - base) / &self.slopes[n]),
                };
                return tree.point(n, t);
            }
        }
        unreachable!("a ≤ Ψ(τ) is reached on the path")
    }

    /// `d_Ψ(p,q) = (1/Ψ(p∧q) − 1/Ψ(p)) + (1/Ψ(p∧q) − 1/Ψ(q))`, with `1/∞ = 0`.
    pub fn t_dpsi(
        &self,
        tree: &SyntheticTree,
        p: &TreePoint,
        q: &TreePoint,
    ) -> Result<Rat, TreeError> {
        let m = tree.t_meet(p, q)?;
        let im = self.psi(tree, &m)?.recip();
        let ip = self.psi(tree, p)?.recip();
        let iq = self.psi(tree, q)?.recip();
        let two = Rat::from_integer(2.into());
        let d = two * im - ip - iq;
        debug_assert!(!d.is_negative() || d.is_zero());
        Ok(d)
    }
}
