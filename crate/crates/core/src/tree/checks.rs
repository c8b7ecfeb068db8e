use serde::Serialize;

use crate::algebra::{ExtRat, Rat};

use super::param::Param;
use super::synthetic::{SyntheticTree, TreePoint};
use super::TreeError;

/// The tangent vector at `base` represented by `rep`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentRef {
    pub base: TreePoint,
    pub rep: TreePoint,
}

impl TangentRef {
    pub fn new(base: TreePoint, rep: TreePoint) -> Result<Self, TreeError> {
        if base == rep {
            return Err(TreeError::BasePointEqualsRep);
        }
        Ok(Self { base, rep })
    }

    /// Membership in the subbasic open set `[rep]_base`; the base point itself is outside.
    pub fn contains(&self, tree: &SyntheticTree, p: &TreePoint) -> Result<bool, TreeError> {
        if *p == self.base {
            return Ok(false);
        }
        tree.t_tangent_equiv(&self.base, &self.rep, p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallReport {
    pub epsilon: String,
    pub sampled: usize,
    pub in_ball: usize,
    pub violations: Vec<String>,
}

impl BallReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// With `ε = d_Ψ(γ, τ)`, every grid point `α` with `d_Ψ(γ, α) < ε` must lie
/// in `[σ]_τ`.
pub fn ball_in_subbasic_check(
    tree: &SyntheticTree,
    psi: &Param,
    sigma: &TreePoint,
    tau: &TreePoint,
    gamma: &TreePoint,
    grid: u32,
) -> Result<BallReport, TreeError> {
    if gamma == tau {
        return Err(TreeError::PreconditionViolated("γ equals τ, so ε = 0".into()));
    }
    let nbhd = TangentRef::new(tau.clone(), sigma.clone())?;
    if !nbhd.contains(tree, gamma)? {
        return Err(TreeError::PreconditionViolated(format!(
            "{} is not in [{}]_{}",
            tree.address(gamma),
            tree.address(sigma),
            tree.address(tau)
        )));
    }
    let eps = psi.t_dpsi(tree, gamma, tau)?;
    let samples = tree.grid_points(grid);
    let mut in_ball = 0;
    let mut violations = Vec::new();
    for alpha in &samples {
        if psi.t_dpsi(tree, gamma, alpha)? < eps {
            in_ball += 1;
            if !nbhd.contains(tree, alpha)? {
                violations.push(tree.address(alpha));
            }
        }
    }
    Ok(BallReport {
        epsilon: eps.to_string(),
        sampled: samples.len(),
        in_ball,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarWitness {
    pub alpha: TreePoint,
    /// Number of neighborhoods `V_i` verified to contain `α` while `α ∉ [σ]_α`.
    pub verified: usize,
}

/// In the star with center `σ` (its root), finds `α` on a branch not used by
/// any neighborhood base, lying in every `V_i = [σ]_{α_i}`, so that no `V_i`
/// fits inside `[σ]_α`.
pub fn star_witness(
    tree: &SyntheticTree,
    neighborhoods: &[TangentRef],
) -> Result<StarWitness, TreeError> {
    let sigma = tree.root();
    let branches = tree.children(0).len();
    if neighborhoods.len() + 1 >= branches {
        return Err(TreeError::TooFewBranches);
    }
    let mut used = vec![false; tree.node_count()];
    for v in neighborhoods {
        if v.rep != sigma {
            return Err(TreeError::PreconditionViolated(
                "neighborhoods must be represented by the center".into(),
            ));
        }
        if let Some(b) = tree.branch_of(&v.base) {
            used[b] = true;
        }
    }
    let fresh = tree
        .children(0)
        .iter()
        .copied()
        .find(|&b| !used[b])
        .expect("more branches than neighborhoods");
    let half = ExtRat::Finite(Rat::new(1.into(), 2.into()));
    let t = match tree.edge_length(fresh) {
        ExtRat::Finite(l) => ExtRat::Finite(l / Rat::from_integer(2.into())),
        ExtRat::Infinity => half,
    };
    let alpha = tree.point(fresh, t)?;
    let own = TangentRef::new(alpha.clone(), sigma.clone())?;
    let mut verified = 0;
    for v in neighborhoods {
        let inside = v.contains(tree, &alpha)?;
        let outside_own = !own.contains(tree, &alpha)?;
        if !(inside && outside_own) {
            return Err(TreeError::PreconditionViolated(format!(
                "witness failed for neighborhood based at {}",
                tree.address(&v.base)
            )));
        }
        verified += 1;
    }
    Ok(StarWitness { alpha, verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::tree::synthetic::TreeBuilder;

    #[test]
    fn ball_checks() {
        // root ─2─ a ─2─ s, with a side branch a ─1─ b
        let mut bld = TreeBuilder::new();
        let a = bld.add_child(0, ExtRat::int(2)).unwrap();
        let s = bld.add_child(a, ExtRat::int(2)).unwrap();
        let b = bld.add_child(a, ExtRat::int(1)).unwrap();
        let t = bld.build();
        let psi = Param::arclength_plus_one(&t);
        let tau = t.point(a, ExtRat::int(1)).unwrap();
        let sigma = t.node_point(s);
        let collinear = t.node_point(a);
        let r = ball_in_subbasic_check(&t, &psi, &sigma, &tau, &collinear, 8).unwrap();
        assert!(r.pass() && r.in_ball > 0, "{r:?}");
        let side = t.point(b, ratio(1, 2).into()).unwrap();
        let r = ball_in_subbasic_check(&t, &psi, &sigma, &tau, &side, 8).unwrap();
        assert!(r.pass(), "{r:?}");
        assert!(matches!(
            ball_in_subbasic_check(&t, &psi, &sigma, &tau, &tau, 8),
            Err(TreeError::PreconditionViolated(_))
        ));
        assert!(matches!(
            ball_in_subbasic_check(&t, &psi, &sigma, &tau, &t.root(), 8),
            Err(TreeError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn star_witnesses() {
        let t = SyntheticTree::star(3);
        let v = TangentRef::new(t.node_point(1), t.root()).unwrap();
        let w = star_witness(&t, &[v]).unwrap();
        assert_ne!(t.branch_of(&w.alpha), Some(1));
        assert_eq!(w.verified, 1);

        let big = SyntheticTree::star(1000);
        let nb: Vec<TangentRef> = (1..=20)
            .map(|i| TangentRef::new(big.point(i * 7, ratio(1, 3).into()).unwrap(), big.root()).unwrap())
            .collect();
        let w = star_witness(&big, &nb).unwrap();
        assert_eq!(w.verified, 20);

        let two = SyntheticTree::star(2);
        let v = TangentRef::new(two.node_point(1), two.root()).unwrap();
        assert_eq!(star_witness(&two, &[v]), Err(TreeError::TooFewBranches));
    }
}
