use std::fmt::Display;

use num_traits::One;
use serde::Serialize;

use crate::algebra::Rat;

use super::exa1::{exa1_infimum, exa1_leq, Exa1Infimum, Exa1Point};
use super::param::Param;
use super::synthetic::{SyntheticTree, TreePoint};

/// A poset presented through finite samples, for checking the tree axioms.
pub trait OrderModel {
    type Point: Clone + PartialEq + Display;

    fn leq(&self, a: &Self::Point, b: &Self::Point) -> bool;
    /// Points over which `T1` and `T4` are checked.
    fn sample_points(&self) -> Vec<Self::Point>;
    /// For sampled `τ`, rational-parametrized samples of `{σ ≤ τ}`.
    fn down_sets(&self) -> Vec<(Self::Point, Vec<(Rat, Self::Point)>)>;
    /// Rational-parametrized samples of totally ordered convex subsets.
    fn convex_chains(&self) -> Vec<Vec<(Rat, Self::Point)>>;
    fn infimum(&self, set: &[Self::Point]) -> Option<Self::Point>;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub pass: bool,
    pub detail: String,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn passed(&self, axiom: &str) -> bool {
        self.results.iter().any(|r| r.axiom == axiom && r.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }
}

fn result(axiom: &str, failure: Option<String>, detail: String) -> AxiomResult {
    AxiomResult {
        axiom: axiom.into(),
        pass: failure.is_none(),
        detail,
        witness: failure,
    }
}

/// Whether `param ↦ point` is strictly monotone in both directions on the samples.
pub fn is_order_isomorphism<M: OrderModel>(model: &M, samples: &[(Rat, M::Point)]) -> Option<String> {
    for (i, (s, p)) in samples.iter().enumerate() {
        for (t, q) in &samples[i + 1..] {
            let lt_param = s < t;
            let gt_param = s > t;
            let lt_point = model.leq(p, q) && p != q;
            let gt_point = model.leq(q, p) && p != q;
            if lt_param != lt_point || gt_param != gt_point {
                return Some(format!("{p} at {s} and {q} at {t}"));
            }
        }
    }
    None
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, max, cur, out);
            cur.pop();
        }
    }
    rec(0, n, max, &mut cur, &mut out);
    out
}

pub fn t_axiom_check<M: OrderModel>(model: &M, subset_bound: usize) -> AxiomReport {
    let pts = model.sample_points();

    let minimal: Vec<&M::Point> = pts
        .iter()
        .filter(|p| pts.iter().all(|q| model.leq(p, q)))
        .collect();
    let t1 = match minimal.as_slice() {
        [_] => None,
        [] => Some("no sample point lies below all others".to_string()),
        many => Some(format!("{} least elements", many.len())),
    };

    let mut t2 = None;
    for (top, chain) in model.down_sets() {
        if let Some(bad) = chain.iter().find(|(_, p)| !model.leq(p, &top)) {
            t2 = Some(format!("{} is not below {top}", bad.1));
            break;
        }
        let below: Vec<&M::Point> = pts.iter().filter(|p| model.leq(p, &top)).collect();
        if let Some((a, b)) = below
            .iter()
            .flat_map(|a| below.iter().map(move |b| (a, b)))
            .find(|(a, b)| !model.leq(a, b) && !model.leq(b, a))
        {
            t2 = Some(format!("{a} and {b} below {top} are incomparable"));
            break;
        }
        if let Some(w) = is_order_isomorphism(model, &chain) {
            t2 = Some(format!("below {top}: {w}"));
            break;
        }
    }

    let mut t3 = None;
    for chain in model.convex_chains() {
        if let Some(w) = is_order_isomorphism(model, &chain) {
            t3 = Some(w);
            break;
        }
    }

    let mut t4 = None;
    let mut checked = 0usize;
    'outer: for idx in subsets(pts.len(), subset_bound) {
        let set: Vec<M::Point> = idx.iter().map(|&i| pts[i].clone()).collect();
        checked += 1;
        let names = || set.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
        let Some(m) = model.infimum(&set) else {
            t4 = Some(format!("{{{}}} has no infimum", names()));
            break;
        };
        if let Some(s) = set.iter().find(|s| !model.leq(&m, s)) {
            t4 = Some(format!("{m} is not below {s} in {{{}}}", names()));
            break;
        }
        for l in &pts {
            if set.iter().all(|s| model.leq(l, s)) && !model.leq(l, &m) {
                t4 = Some(format!("lower bound {l} of {{{}}} exceeds {m}", names()));
                break 'outer;
            }
        }
    }

    let sampled = "order isomorphism checked on rational-parametrized samples".to_string();
    AxiomReport {
        results: vec![
            result("T1", t1, format!("{} sample points", pts.len())),
            result("T2", t2, sampled.clone()),
            result("T3", t3, sampled),
            result(
                "T4",
                t4,
                format!("{checked} subsets of size at most {subset_bound}"),
            ),
        ],
    }
}

/// `SyntheticTree` seen through its node points and edge grids.
pub struct TreeModel<'a> {
    pub tree: &'a SyntheticTree,
    pub grid: u32,
}

impl TreeModel<'_> {
    /// `1 − 1/(1 + arclength)`: finite even at ends of infinite edges.
    fn param(&self, psi: &Param, p: &TreePoint) -> Rat {
        Rat::one() - psi.psi(self.tree, p).unwrap().recip()
    }

    fn path_samples(&self, psi: &Param, top: &TreePoint) -> Vec<(Rat, TreePoint)> {
        self.tree
            .grid_points(self.grid)
            .into_iter()
            .filter(|p| self.tree.t_leq(p, top).unwrap())
            .chain(std::iter::once(top.clone()))
            .map(|p| (self.param(psi, &p), p))
            .collect()
    }
}

impl OrderModel for TreeModel<'_> {
    type Point = TreePoint;

    fn leq(&self, a: &TreePoint, b: &TreePoint) -> bool {
        self.tree.t_leq(a, b).unwrap()
    }

    fn sample_points(&self) -> Vec<TreePoint> {
        self.tree.node_points()
    }

    fn down_sets(&self) -> Vec<(TreePoint, Vec<(Rat, TreePoint)>)> {
        let psi = Param::arclength_plus_one(self.tree);
        self.tree
            .node_points()
            .into_iter()
            .map(|top| {
                let s = self.path_samples(&psi, &top);
                (top, s)
            })
            .collect()
    }

    fn convex_chains(&self) -> Vec<Vec<(Rat, TreePoint)>> {
        let psi = Param::arclength_plus_one(self.tree);
        let nodes = self.tree.node_points();
        let mut out = Vec::new();
        for lo in &nodes {
            for hi in &nodes {
                if lo != hi && self.leq(lo, hi) {
                    let chain = self
                        .path_samples(&psi, hi)
                        .into_iter()
                        .filter(|(_, p)| self.leq(lo, p))
                        .collect();
                    out.push(chain);
                }
            }
        }
        out
    }

    fn infimum(&self, set: &[TreePoint]) -> Option<TreePoint> {
        let (first, rest) = set.split_first()?;
        Some(
            rest.iter()
                .fold(first.clone(), |acc, p| self.tree.meet_unchecked(&acc, p)),
        )
    }
}

/// The poset `[0,1) ∪ {X, Y}` on the samples `Seg(k/n)`, `X`, `Y`.
pub struct Exa1Model {
    pub grid: u32,
}

impl Exa1Model {
    fn segs(&self) -> Vec<Rat> {
        (0..self.grid)
            .map(|k| Rat::new(k.into(), self.grid.into()))
            .collect()
    }
}

impl OrderModel for Exa1Model {
    type Point = Exa1Point;

    fn leq(&self, a: &Exa1Point, b: &Exa1Point) -> bool {
        exa1_leq(a, b)
    }

    fn sample_points(&self) -> Vec<Exa1Point> {
        let mut v: Vec<Exa1Point> = self.segs().into_iter().map(Exa1Point::Seg).collect();
        v.push(Exa1Point::X);
        v.push(Exa1Point::Y);
        v
    }

    fn down_sets(&self) -> Vec<(Exa1Point, Vec<(Rat, Exa1Point)>)> {
        let seg_chain = |top: &Rat| -> Vec<(Rat, Exa1Point)> {
            self.segs()
                .into_iter()
                .filter(|t| t <= top)
                .map(|t| (t.clone(), Exa1Point::Seg(t)))
                .collect()
        };
        let mut out = Vec::new();
        for t in self.segs() {
            out.push((Exa1Point::Seg(t.clone()), seg_chain(&t)));
        }
        for top in [Exa1Point::X, Exa1Point::Y] {
            let mut chain = seg_chain(&Rat::one());
            chain.push((Rat::one(), top.clone()));
            out.push((top, chain));
        }
        out
    }

    fn convex_chains(&self) -> Vec<Vec<(Rat, Exa1Point)>> {
        let mut out = Vec::new();
        let segs = self.segs();
        for top in [Exa1Point::X, Exa1Point::Y] {
            for start in &segs {
                let mut chain: Vec<(Rat, Exa1Point)> = segs
                    .iter()
                    .filter(|t| *t >= start)
                    .map(|t| (t.clone(), Exa1Point::Seg(t.clone())))
                    .collect();
                chain.push((Rat::one(), top.clone()));
                out.push(chain);
            }
        }
        out
    }

    fn infimum(&self, set: &[Exa1Point]) -> Option<Exa1Point> {
        match exa1_infimum(set, 0).ok()? {
            Exa1Infimum::Point(p) => Some(p),
            Exa1Infimum::None(_) => None,
        }
    }
}
