use std::collections::HashSet;

use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::{BivarPoly, ExtRat, Rat};
use crate::tree::{SyntheticTree, TreeError, TreePoint};
use crate::valuation::{canonicalize, CanonicalForm, ProjPoint, QuasiMonomialVal, Terminal};

use super::gen::{gen_poly_with, rng, Seed};

/// Subtractive Euclid on `(γ1, γ2)`: the minimum at each round until the two agree.
pub fn euclid_multiplicity_oracle(g1: &Rat, g2: &Rat) -> Vec<Rat> {
    let (mut a, mut b) = (g1.clone(), g2.clone());
    let mut out = Vec::new();
    while a != b {
        let lo = a.clone().min(b.clone());
        let diff = if a > b { &a - &b } else { &b - &a };
        out.push(lo.clone());
        a = lo;
        b = diff;
    }
    out
}

/// Greatest common lower bound found by scanning every node point plus `p` and `q`.
pub fn brute_meet_oracle(
    tree: &SyntheticTree,
    p: &TreePoint,
    q: &TreePoint,
) -> Result<TreePoint, TreeError> {
    let mut lower = Vec::new();
    for c in tree.node_points().into_iter().chain([p.clone(), q.clone()]) {
        if tree.t_leq(&c, p)? && tree.t_leq(&c, q)? {
            lower.push(c);
        }
    }
    let mut best = lower[0].clone();
    for c in &lower[1..] {
        if tree.t_leq(&best, c)? {
            best = c.clone();
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeqVerdict {
    ConsistentWithLeq,
    Counterexample(BivarPoly),
}

/// Tests `ν(φ) ≤ μ(φ)` on `x`, `y` and then seeded random polynomials, `n` in all.
pub fn sampling_leq_oracle(
    v: &QuasiMonomialVal,
    mu: &QuasiMonomialVal,
    seed: Seed,
    n: usize,
) -> LeqVerdict {
    let mut r = rng(seed);
    let fixed = [BivarPoly::x(), BivarPoly::y()];
    for i in 0..n {
        let phi = match fixed.get(i) {
            Some(p) => p.clone(),
            None => gen_poly_with(&mut r, 6, 5, 9),
        };
        if v.eval(&phi) > mu.eval(&phi) {
            return LeqVerdict::Counterexample(phi);
        }
    }
    LeqVerdict::ConsistentWithLeq
}

/// Level coordinates as Laurent monomials `x_i = ∏ Q_j^{x_j}`, `y_i = ∏ Q_j^{y_j}`
/// in key polynomials `Q_0 = x`, `Q_1 = y`, … . A step with nonzero center
/// `c` adds the key `Q^{y−g} − c·Q^{x−g}`, `g` the common part, which is the
/// strict transform of `y_i = c·x_i`.
struct KeyCoords {
    keys: Vec<BivarPoly>,
    degrees: Vec<u32>,
    x: Vec<i64>,
    y: Vec<i64>,
}

impl KeyCoords {
    fn start() -> Self {
        KeyCoords {
            keys: vec![BivarPoly::x(), BivarPoly::y()],
            degrees: vec![1, 1],
            x: vec![1, 0],
            y: vec![0, 1],
        }
    }

    fn degree(&self, e: &[i64]) -> u32 {
        e.iter().zip(&self.degrees).map(|(&k, &d)| k.max(0) as u32 * d).sum()
    }

    fn expand(&self, e: &[i64]) -> BivarPoly {
        e.iter()
            .zip(&self.keys)
            .filter(|(&k, _)| k > 0)
            .fold(BivarPoly::one(), |acc, (&k, q)| &acc * &q.pow(k as u32))
    }

    /// Numerator of `a·x_i + b·y_i` with the common key factors removed.
    fn binomial(&self, a: &Rat, b: &Rat, cap: u32) -> Option<BivarPoly> {
        if a.is_zero() || b.is_zero() {
            return None;
        }
        let g: Vec<i64> = self.x.iter().zip(&self.y).map(|(p, q)| *p.min(q)).collect();
        let ex: Vec<i64> = self.x.iter().zip(&g).map(|(p, q)| p - q).collect();
        let ey: Vec<i64> = self.y.iter().zip(&g).map(|(p, q)| p - q).collect();
        if self.degree(&ex).max(self.degree(&ey)) > cap {
            return None;
        }
        Some(&self.expand(&ex).scale(a) + &self.expand(&ey).scale(b))
    }

    /// Moves one level up; `false` when a new key would exceed degree `cap`.
    fn step(&mut self, center: &ProjPoint, cap: u32) -> bool {
        match center {
            ProjPoint::Inf => {
                self.x = self.x.iter().zip(&self.y).map(|(p, q)| p - q).collect();
            }
            ProjPoint::Finite(c) if c.is_zero() => {
                self.y = self.y.iter().zip(&self.x).map(|(p, q)| p - q).collect();
            }
            ProjPoint::Finite(c) => {
                let Some(key) = self.binomial(&-c, &Rat::one(), cap) else {
                    return false;
                };
                let g: Vec<i64> = self.x.iter().zip(&self.y).map(|(p, q)| *p.min(q)).collect();
                self.degrees.push(key.total_degree().unwrap_or(0));
                self.keys.push(key);
                self.x.push(0);
                let mut y: Vec<i64> = g.iter().zip(&self.x).map(|(p, q)| p - q).collect();
                y.push(1);
                self.y = y;
            }
        }
        true
    }
}

/// Key polynomials met along the dilatation sequence of `form` (two virtual
/// levels further for curves) and the strict transforms of a few lines at
/// each level, up to total degree `cap`.
pub fn structural_witnesses(form: &CanonicalForm, cap: u32) -> Vec<BivarPoly> {
    let mut centers: Vec<ProjPoint> = form.steps.iter().map(|s| s.center.clone()).collect();
    if form.is_curve() {
        for level in form.steps.len()..form.steps.len() + 2 {
            if let Some(center) = form.center_at(level) {
                centers.push(center);
            }
        }
    }
    let lines: Vec<(Rat, Rat)> = [(1, 1), (1, -1), (1, 2), (2, 1), (1, -2)]
        .iter()
        .map(|&(a, b)| (Rat::from_integer(a.into()), Rat::from_integer(b.into())))
        .collect();
    let mut c = KeyCoords::start();
    let mut out = Vec::new();
    let push_lines = |c: &KeyCoords, out: &mut Vec<BivarPoly>, extra: Option<(Rat, Rat)>| {
        for (a, b) in lines.iter().cloned().chain(extra) {
            out.extend(c.binomial(&a, &b, cap));
        }
    };
    for center in &centers {
        push_lines(&c, &mut out, None);
        if !c.step(center, cap) {
            break;
        }
    }
    let last = match &form.terminal {
        crate::valuation::Terminal::Curve { direction, .. } => Some(direction.pair()),
        _ => None,
    };
    push_lines(&c, &mut out, last);
    out.extend(c.keys.iter().cloned());
    out.into_iter()
        .filter(|p| p.total_degree().is_some_and(|d| d >= 1 && d <= cap))
        .collect()
}

/// Witness pool for comparisons among `vals`: coordinates and lines, the
/// structural witnesses of each valuation up to degree `cap`, pairwise
/// products and sums of those of degree at most 12, and `random` seeded
/// polynomials.
pub fn witness_pool(vals: &[&QuasiMonomialVal], cap: u32, seed: Seed, random: usize) -> Vec<BivarPoly> {
    let mut seen = HashSet::new();
    let mut base = Vec::new();
    let mut push = |p: BivarPoly, into: &mut Vec<BivarPoly>| {
        if seen.insert(p.clone()) {
            into.push(p);
        }
    };
    for (a, b) in [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1)] {
        push(BivarPoly::linear(Rat::from_integer(a.into()), Rat::from_integer(b.into())), &mut base);
    }
    for v in vals {
        for p in structural_witnesses(&canonicalize(v), cap) {
            push(p, &mut base);
        }
    }
    let mut pool = base.clone();
    let small: Vec<&BivarPoly> = base.iter().filter(|p| p.total_degree() <= Some(12)).collect();
    for (i, p) in small.iter().enumerate() {
        for q in &small[i..] {
            for r in [*p * *q, *p + *q, *p - *q] {
                if !r.is_zero() && r.total_degree().is_some_and(|d| d <= 24) {
                    push(r, &mut pool);
                }
            }
        }
    }
    let mut r = rng(seed);
    for _ in 0..random {
        let deg = r.gen_range(1..=6);
        push(gen_poly_with(&mut r, deg, 5, 9), &mut pool);
    }
    pool.retain(|p| p.constant_term().is_zero());
    pool
}

/// Divisorial valuations on the dilatation path of `form`: the sequence
/// truncated at each level and ended by that level's multiplicity, plus
/// `virtual_levels` levels past the end of a curve.
pub fn divisorial_truncations(form: &CanonicalForm, virtual_levels: usize) -> Vec<CanonicalForm> {
    let mut levels = form.steps.len() + 1;
    if form.is_curve() {
        levels += virtual_levels;
    }
    (0..levels)
        .filter_map(|level| {
            let m = form.multiplicity_at(level)?;
            let steps = (0..level).map(|l| form.center_at(l)).collect::<Option<Vec<_>>>()?;
            Some(CanonicalForm {
                steps: steps.into_iter().map(crate::valuation::DilatationStep::at).collect(),
                terminal: Terminal::Divisorial(m),
            })
        })
        .collect()
}

/// `ν(φ)` for every `φ` in `pool`; handy when comparing many valuations on one pool.
pub fn value_table(v: &QuasiMonomialVal, pool: &[BivarPoly]) -> Vec<ExtRat> {
    pool.iter().map(|p| v.eval(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::tree::TreeBuilder;
    use crate::valuation::{stream, StreamEntry};

    #[test]
    fn euclid() {
        assert_eq!(euclid_multiplicity_oracle(&ratio(1, 1), &ratio(5, 2)), vec![ratio(1, 1), ratio(1, 1), ratio(1, 2)]);
        assert_eq!(euclid_multiplicity_oracle(&ratio(2, 1), &ratio(3, 1)), vec![ratio(2, 1), ratio(1, 1)]);
        assert!(euclid_multiplicity_oracle(&ratio(3, 7), &ratio(3, 7)).is_empty());
    }

    #[test]
    fn euclid_matches_stream() {
        for (a, b) in [(1, 1), (2, 5), (7, 3), (13, 8)] {
            let v = QuasiMonomialVal::monomial(ExtRat::int(a), ExtRat::int(b)).unwrap();
            let steps: Vec<Rat> = stream(&v)
                .filter_map(|e| match e {
                    StreamEntry::Step { multiplicity, .. } => Some(multiplicity),
                    _ => None,
                })
                .collect();
            assert_eq!(steps, euclid_multiplicity_oracle(&ratio(a, 1), &ratio(b, 1)));
        }
    }

    #[test]
    fn sampling() {
        let a = QuasiMonomialVal::monomial(ExtRat::int(1), ExtRat::int(3)).unwrap();
        let b = QuasiMonomialVal::monomial(ExtRat::int(1), ExtRat::int(2)).unwrap();
        assert_eq!(sampling_leq_oracle(&a, &b, 0, 100), LeqVerdict::Counterexample(BivarPoly::y()));
        assert_eq!(sampling_leq_oracle(&b, &a, 0, 100), LeqVerdict::ConsistentWithLeq);
    }

    #[test]
    fn brute_meet() {
        let mut b = TreeBuilder::new();
        let a = b.add_child(0, ExtRat::int(2)).unwrap();
        let c = b.add_child(a, ExtRat::int(1)).unwrap();
        let d = b.add_child(a, ExtRat::int(1)).unwrap();
        let t = b.build();
        let p = t.point(c, ratio(1, 2).into()).unwrap();
        let q = t.node_point(d);
        assert_eq!(brute_meet_oracle(&t, &p, &q).unwrap(), t.node_point(a));
        let lo = t.point(a, ratio(1, 2).into()).unwrap();
        assert_eq!(brute_meet_oracle(&t, &lo, &q).unwrap(), lo);
    }

    #[test]
    fn witnesses_see_the_curve() {
        let v = crate::valuation::json::canonical_from_str(
            r#"{"steps":[{"center":"1"}],"terminal":{"curve":{"direction":"[1:1]","weight":"1"}}}"#,
        )
        .unwrap()
        .to_qmv();
        let pool = witness_pool(&[&v], 24, 0, 0);
        assert!(pool.iter().any(|p| v.eval(p) == ExtRat::Infinity));
        assert!(divisorial_truncations(&canonicalize(&v), 2).len() == 4);
    }
}
