use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::algebra::{parse_rat, ExtRat, Rat};

use super::TreeError;

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Debug, PartialEq, Eq)]
struct Node {
    parent: Option<usize>,
    children: Vec<usize>,
    /// Length of the edge from the parent; zero for the root.
    length: ExtRat,
    depth: usize,
}

/// A rooted tree whose edges are rational intervals `(0, length]`.
///
/// Only leaf edges may be infinite. Node `0` is the root. Immutable once built.
#[derive(Clone, Debug)]
pub struct SyntheticTree {
    uid: u64,
    nodes: Vec<Node>,
}

impl PartialEq for SyntheticTree {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
    }
}

/// Incremental construction; `build` validates edge lengths.
#[derive(Clone, Debug)]
pub struct TreeBuilder {
    nodes: Vec<Node>,
}

impl Default for TreeBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl TreeBuilder {
    pub fn new() -> Self {
        Self {
            nodes: vec![Node {
                parent: None,
                children: Vec::new(),
                length: ExtRat::zero(),
                depth: 0,
            }],
        }
    }

    pub fn add_child(&mut self, parent: usize, length: ExtRat) -> Result<usize, TreeError> {
        if parent >= self.nodes.len() {
            return Err(TreeError::BadAddress(format!("no node {parent}")));
        }
        if !length.is_positive() {
            return Err(TreeError::InvalidEdge(format!("length {length} is not positive")));
        }
        if self.nodes[parent].length.is_infinite() {
            return Err(TreeError::InvalidEdge("an infinite edge must end in a leaf".into()));
        }
        let id = self.nodes.len();
        let depth = self.nodes[parent].depth + 1;
        self.nodes.push(Node {
            parent: Some(parent),
            children: Vec::new(),
            length,
            depth,
        });
        self.nodes[parent].children.push(id);
        Ok(id)
    }

    pub fn build(self) -> SyntheticTree {
        SyntheticTree {
            uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
            nodes: self.nodes,
        }
    }
}

/// A point of a `SyntheticTree`: parameter `t ∈ (0, length]` on the edge
/// into `node`, or the root (`node = 0`, `t = 0`). `t = length` is the node
/// itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreePoint {
    tree: u64,
    node: usize,
    t: ExtRat,
}

impl TreePoint {
    pub fn node(&self) -> usize {
        self.node
    }

    pub fn t(&self) -> &ExtRat {
        &self.t
    }

    pub fn is_root(&self) -> bool {
        self.node == 0
    }
}

impl SyntheticTree {
    pub fn uid(&self) -> u64 {
        self.uid
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.nodes[node].parent
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.nodes[node].children
    }

    pub fn edge_length(&self, node: usize) -> &ExtRat {
        &self.nodes[node].length
    }

    pub fn depth(&self, node: usize) -> usize {
        self.nodes[node].depth
    }

    pub fn root(&self) -> TreePoint {
        TreePoint {
            tree: self.uid,
            node: 0,
            t: ExtRat::zero(),
        }
    }

    /// The point at the top of the edge into `node`.
    pub fn node_point(&self, node: usize) -> TreePoint {
        if node == 0 {
            return self.root();
        }
        TreePoint {
            tree: self.uid,
            node,
            t: self.nodes[node].length.clone(),
        }
    }

    /// The point at parameter `t` on the edge into `node`; `t = 0` is the parent.
    pub fn point(&self, node: usize, t: ExtRat) -> Result<TreePoint, TreeError> {
        if node >= self.nodes.len() {
            return Err(TreeError::BadAddress(format!("no node {node}")));
        }
        if node == 0 {
            return if t == ExtRat::zero() {
                Ok(self.root())
            } else {
                Err(TreeError::BadAddress("the root has no edge".into()))
            };
        }
        if t == ExtRat::zero() {
            return Ok(self.node_point(self.nodes[node].parent.unwrap()));
        }
        if !t.is_positive() || t > self.nodes[node].length {
            return Err(TreeError::BadAddress(format!(
                "t = {t} outside (0, {}]",
                self.nodes[node].length
            )));
        }
        Ok(TreePoint {
            tree: self.uid,
            node,
            t,
        })
    }

    pub fn node_points(&self) -> Vec<TreePoint> {
        (0..self.nodes.len()).map(|n| self.node_point(n)).collect()
    }

    pub fn check(&self, p: &TreePoint) -> Result<(), TreeError> {
        if p.tree == self.uid {
            Ok(())
        } else {
            Err(TreeError::ForeignPoint)
        }
    }

    /// Nodes from the root down to `node`, inclusive.
    pub fn path_to(&self, node: usize) -> Vec<usize> {
        let mut path = vec![node];
        let mut cur = node;
        while let Some(p) = self.nodes[cur].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    fn is_ancestor_or_self(&self, a: usize, mut b: usize) -> bool {
        while self.nodes[b].depth > self.nodes[a].depth {
            b = self.nodes[b].parent.unwrap();
        }
        a == b
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        while self.nodes[a].depth > self.nodes[b].depth {
            a = self.nodes[a].parent.unwrap();
        }
        while self.nodes[b].depth > self.nodes[a].depth {
            b = self.nodes[b].parent.unwrap();
        }
        while a != b {
            a = self.nodes[a].parent.unwrap();
            b = self.nodes[b].parent.unwrap();
        }
        a
    }

    fn leq_unchecked(&self, p: &TreePoint, q: &TreePoint) -> bool {
        if p.node == 0 {
            return true;
        }
        if p.node == q.node {
            return p.t <= q.t;
        }
        self.is_ancestor_or_self(p.node, q.node)
    }

    pub fn t_leq(&self, p: &TreePoint, q: &TreePoint) -> Result<bool, TreeError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.leq_unchecked(p, q))
    }

    pub fn lt(&self, p: &TreePoint, q: &TreePoint) -> Result<bool, TreeError> {
        Ok(p != q && self.t_leq(p, q)?)
    }

    pub fn t_meet(&self, p: &TreePoint, q: &TreePoint) -> Result<TreePoint, TreeError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.meet_unchecked(p, q))
    }

    pub(crate) fn meet_unchecked(&self, p: &TreePoint, q: &TreePoint) -> TreePoint {
        if self.leq_unchecked(p, q) {
            return p.clone();
        }
        if self.leq_unchecked(q, p) {
            return q.clone();
        }
        self.node_point(self.lca(p.node, q.node))
    }

    /// `r ∈ [p, q]`, i.e. `p∧q ≤ r ≤ p` or `p∧q ≤ r ≤ q`.
    pub fn t_segment_member(
        &self,
        r: &TreePoint,
        p: &TreePoint,
        q: &TreePoint,
    ) -> Result<bool, TreeError> {
        self.check(r)?;
        let m = self.t_meet(p, q)?;
        Ok(self.leq_unchecked(&m, r) && (self.leq_unchecked(r, p) || self.leq_unchecked(r, q)))
    }

    /// `r ∈ ]p, q]`.
    pub fn t_half_open_member(
        &self,
        r: &TreePoint,
        p: &TreePoint,
        q: &TreePoint,
    ) -> Result<bool, TreeError> {
        Ok(r != p && self.t_segment_member(r, p, q)?)
    }

    /// Whether `σ` and `α` define the same tangent vector at `τ`, via
    /// `α ∉ [σ]_τ ⟺ τ ∈ [α, σ]`.
    pub fn t_tangent_equiv(
        &self,
        tau: &TreePoint,
        sigma: &TreePoint,
        alpha: &TreePoint,
    ) -> Result<bool, TreeError> {
        if sigma == tau || alpha == tau {
            return Err(TreeError::BasePointEqualsRep);
        }
        Ok(!self.t_segment_member(tau, alpha, sigma)?)
    }

    /// Same relation decided from the definition: `]τ,σ] ∩ ]τ,α] ≠ ∅`.
    pub fn t_tangent_equiv_definitional(
        &self,
        tau: &TreePoint,
        sigma: &TreePoint,
        alpha: &TreePoint,
    ) -> Result<bool, TreeError> {
        if sigma == tau || alpha == tau {
            return Err(TreeError::BasePointEqualsRep);
        }
        self.check(tau)?;
        self.check(sigma)?;
        self.check(alpha)?;
        let a = self.half_open_chains(tau, sigma);
        let b = self.half_open_chains(tau, alpha);
        Ok(a.iter().any(|c| b.iter().any(|d| self.chains_intersect(c, d))))
    }

    /// `]τ, σ]` as a union of chains.
    fn half_open_chains(&self, tau: &TreePoint, sigma: &TreePoint) -> Vec<Chain> {
        let m = self.meet_unchecked(tau, sigma);
        if m == *tau {
            vec![Chain::new(tau.clone(), true, sigma.clone(), false)]
        } else if m == *sigma {
            vec![Chain::new(sigma.clone(), false, tau.clone(), true)]
        } else {
            vec![
                Chain::new(m.clone(), false, tau.clone(), true),
                Chain::new(m, false, sigma.clone(), false),
            ]
        }
    }

    fn in_chain(&self, x: &TreePoint, c: &Chain) -> bool {
        self.leq_unchecked(&c.lo, x)
            && self.leq_unchecked(x, &c.hi)
            && !(c.lo_open && *x == c.lo)
            && !(c.hi_open && *x == c.hi)
    }

    fn chains_intersect(&self, c: &Chain, d: &Chain) -> bool {
        let top = self.meet_unchecked(&c.hi, &d.hi);
        if !self.leq_unchecked(&c.lo, &top) || !self.leq_unchecked(&d.lo, &top) {
            return false;
        }
        let bottom = if self.leq_unchecked(&c.lo, &d.lo) {
            d.lo.clone()
        } else {
            c.lo.clone()
        };
        if bottom != top {
            return true;
        }
        self.in_chain(&top, c) && self.in_chain(&top, d)
    }

    /// Grid on every edge: `t = length·k/n` for `k = 1..=n`; on infinite
    /// edges `t = k` for `k = 1..=n` and the end at infinity. Includes the root.
    pub fn grid_points(&self, n: u32) -> Vec<TreePoint> {
        let mut out = vec![self.root()];
        for node in 1..self.nodes.len() {
            let len = &self.nodes[node].length;
            for k in 1..=n {
                let t = match len {
                    ExtRat::Finite(l) => ExtRat::Finite(l * Rat::from_integer(k.into()) / Rat::from_integer(n.into())),
                    ExtRat::Infinity => ExtRat::Finite(Rat::from_integer(k.into())),
                };
                out.push(TreePoint {
                    tree: self.uid,
                    node,
                    t,
                });
            }
            if len.is_infinite() {
                out.push(self.node_point(node));
            }
        }
        out
    }

    /// Address of a node: child indices from the root joined by `/`, or `root`.
    pub fn node_address(&self, node: usize) -> String {
        if node == 0 {
            return "root".into();
        }
        self.path_to(node)
            .windows(2)
            .map(|w| {
                self.nodes[w[0]]
                    .children
                    .iter()
                    .position(|&c| c == w[1])
                    .unwrap()
                    .to_string()
            })
            .collect::<Vec<_>>()
            .join("/")
    }

    pub fn resolve_node(&self, address: &str) -> Result<usize, TreeError> {
        let address = address.trim();
        if address == "root" || address.is_empty() {
            return Ok(0);
        }
        let mut cur = 0;
        for part in address.split('/') {
            let i: usize = part
                .trim()
                .parse()
                .map_err(|_| TreeError::BadAddress(address.to_string()))?;
            cur = *self.nodes[cur]
                .children
                .get(i)
                .ok_or_else(|| TreeError::BadAddress(address.to_string()))?;
        }
        Ok(cur)
    }

    /// `"path@t"`, `"path"` (the node itself) or `"root"`.
    pub fn address(&self, p: &TreePoint) -> String {
        let base = self.node_address(p.node);
        if p.node == 0 || p.t == self.nodes[p.node].length {
            base
        } else {
            format!("{base}@{}", p.t)
        }
    }

    pub fn parse_point(&self, s: &str) -> Result<TreePoint, TreeError> {
        match s.split_once('@') {
            None => Ok(self.node_point(self.resolve_node(s)?)),
            Some((path, t)) => {
                let node = self.resolve_node(path)?;
                let t = match t.trim() {
                    "inf" => ExtRat::Infinity,
                    other => ExtRat::Finite(
                        parse_rat(other).map_err(|e| TreeError::BadAddress(e.to_string()))?,
                    ),
                };
                self.point(node, t)
            }
        }
    }

    /// Root with `n` unit edges.
    pub fn star(n: usize) -> SyntheticTree {
        let mut b = TreeBuilder::new();
        for _ in 0..n {
            b.add_child(0, ExtRat::int(1)).unwrap();
        }
        b.build()
    }

    /// Root child of the branch containing `p`; `None` for the root.
    pub fn branch_of(&self, p: &TreePoint) -> Option<usize> {
        self.path_to(p.node).get(1).copied()
    }
}

#[derive(Clone, Debug)]
struct Chain {
    lo: TreePoint,
    lo_open: bool,
    hi: TreePoint,
    hi_open: bool,
}

impl Chain {
    fn new(lo: TreePoint, lo_open: bool, hi: TreePoint, hi_open: bool) -> Self {
        Self {
            lo,
            lo_open,
            hi,
            hi_open,
        }
    }
}

impl fmt::Display for TreePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.node == 0 {
            f.write_str("root")
        } else {
            write!(f, "#{}@{}", self.node, self.t)
        }
    }
}
