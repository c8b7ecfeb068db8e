use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BivarPoly, ExtRat, LinearFrame, Rat};
use crate::tree::{Param, SyntheticTree, TreeBuilder, TreePoint};
use crate::valuation::{
    canonicalize, CanonicalForm, DilatationStep, MonomialWeights, ProjPoint, QuasiMonomialVal,
    Terminal,
};

pub type Seed = u64;

pub const DEFAULT_SEED: Seed = 0xC0FFEE;

pub fn rng(seed: Seed) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed for batch `shard` of a suite run with `seed`.
pub fn shard_seed(seed: Seed, shard: u64) -> Seed {
    seed ^ shard
}

fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Positive rational `p/q` with `q ≤ denom_bound` and `p ≤ num_factor·q`.
pub fn gen_pos_rat<R: Rng>(rng: &mut R, num_factor: i64, denom_bound: u32) -> Rat {
    let q = rng.gen_range(1..=denom_bound.max(1) as i64);
    let p = rng.gen_range(1..=num_factor * q);
    Rat::new(p.into(), q.into())
}

fn nonzero_coeff<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    let c = rng.gen_range(1..=bound.max(1));
    int(if rng.gen_bool(0.5) { c } else { -c })
}

/// Sparse polynomial with distinct exponents of total degree `≤ max_deg`
/// and nonzero integer coefficients in `[−coeff_bound, coeff_bound]`.
pub fn gen_poly_with<R: Rng>(
    rng: &mut R,
    max_deg: u32,
    max_terms: usize,
    coeff_bound: i64,
) -> BivarPoly {
    let mut exps: Vec<(u32, u32)> = (0..=max_deg)
        .flat_map(|d| (0..=d).map(move |r| (r, d - r)))
        .collect();
    let n = rng.gen_range(1..=max_terms.max(1)).min(exps.len());
    exps.shuffle(rng);
    BivarPoly::from_terms(exps.into_iter().take(n).map(|e| (e, nonzero_coeff(rng, coeff_bound))))
}

pub fn gen_poly(seed: Seed, max_deg: u32, max_terms: usize, coeff_bound: i64) -> BivarPoly {
    gen_poly_with(&mut rng(seed), max_deg, max_terms, coeff_bound)
}

/// Mostly `0`, `Inf` and small integers, so that random programs share prefixes.
pub fn gen_center<R: Rng>(rng: &mut R, denom_bound: u32) -> ProjPoint {
    match rng.gen_range(0..100) {
        0..=34 => ProjPoint::Finite(Rat::zero()),
        35..=54 => ProjPoint::Inf,
        55..=79 => ProjPoint::Finite(int(*[-2, -1, 1, 2].choose(rng).unwrap())),
        _ => {
            let q = rng.gen_range(1..=denom_bound.max(1) as i64);
            let p = rng.gen_range(-2 * q..=2 * q);
            ProjPoint::Finite(Rat::new(p.into(), q.into()))
        }
    }
}

fn gen_frame<R: Rng>(rng: &mut R, denom_bound: u32) -> LinearFrame {
    let c = match gen_center(rng, denom_bound) {
        ProjPoint::Finite(c) => c,
        ProjPoint::Inf => int(1),
    };
    let m = match rng.gen_range(0..3) {
        0 => [[Rat::one(), Rat::zero()], [c, Rat::one()]],
        1 => [[Rat::one(), c], [Rat::zero(), Rat::one()]],
        _ => [[Rat::zero(), Rat::one()], [Rat::one(), c]],
    };
    LinearFrame::new(m).expect("unimodular")
}

/// Normalized program: `prefix`, up to `extra` random steps, a random frame
/// (sometimes) and random weights, one of them infinite with probability `curve`.
fn gen_program<R: Rng>(
    rng: &mut R,
    prefix: Vec<DilatationStep>,
    extra: usize,
    denom_bound: u32,
    curve: f64,
) -> QuasiMonomialVal {
    loop {
        let mut steps = prefix.clone();
        let n = rng.gen_range(0..=extra);
        for _ in 0..n {
            steps.push(DilatationStep::at(gen_center(rng, denom_bound)));
        }
        let frame = if rng.gen_bool(0.2) {
            gen_frame(rng, denom_bound)
        } else {
            LinearFrame::identity()
        };
        let w1 = ExtRat::Finite(gen_pos_rat(rng, 3, denom_bound));
        let w2 = if rng.gen_bool(curve) {
            ExtRat::Infinity
        } else {
            ExtRat::Finite(gen_pos_rat(rng, 3, denom_bound))
        };
        let (w1, w2) = if rng.gen_bool(0.5) { (w1, w2) } else { (w2, w1) };
        let weights = MonomialWeights::new(w1, w2).expect("positive, one finite");
        if let Ok(v) = QuasiMonomialVal::new(steps, frame, weights) {
            return v.normalize();
        }
    }
}

fn gen_monomial<R: Rng>(rng: &mut R, denom_bound: u32) -> QuasiMonomialVal {
    let r = Rat::one() + gen_pos_rat(rng, 3, denom_bound);
    let (a, b) = if rng.gen_bool(0.5) {
        (ExtRat::Finite(Rat::one()), ExtRat::Finite(r))
    } else {
        (ExtRat::Finite(r), ExtRat::Finite(Rat::one()))
    };
    QuasiMonomialVal::monomial(a, b).expect("positive")
}

/// Normalized curve `ℓ = 0` through the origin for a random line `ℓ`.
pub fn gen_curve<R: Rng>(rng: &mut R, denom_bound: u32) -> QuasiMonomialVal {
    CanonicalForm {
        steps: Vec::new(),
        terminal: Terminal::Curve {
            direction: gen_center(rng, denom_bound),
            weight: Rat::one(),
        },
    }
    .to_qmv()
}

/// Random normalized valuation: `ν_m` (20%), a monomial valuation (30%),
/// a program with up to `max_depth` steps (40%), or a line (10%).
pub fn gen_qmv_with<R: Rng>(rng: &mut R, max_depth: usize, denom_bound: u32) -> QuasiMonomialVal {
    match rng.gen_range(0..10) {
        0 | 1 => QuasiMonomialVal::madic(),
        2..=4 => gen_monomial(rng, denom_bound),
        5..=8 if max_depth == 0 => gen_monomial(rng, denom_bound),
        5..=8 => {
            let depth = rng.gen_range(1..=max_depth);
            gen_program(rng, Vec::new(), depth, denom_bound, 0.15)
        }
        _ => gen_curve(rng, denom_bound),
    }
}

pub fn gen_qmv(seed: Seed, max_depth: usize, denom_bound: u32) -> QuasiMonomialVal {
    gen_qmv_with(&mut rng(seed), max_depth, denom_bound)
}

/// A pair that often shares a dilatation prefix: the second member keeps a
/// random prefix of the first one's canonical steps and continues randomly.
pub fn gen_qmv_pair<R: Rng>(
    rng: &mut R,
    max_depth: usize,
    denom_bound: u32,
) -> (QuasiMonomialVal, QuasiMonomialVal) {
    let a = gen_qmv_with(rng, max_depth, denom_bound);
    if rng.gen_bool(0.25) {
        return (a, gen_qmv_with(rng, max_depth, denom_bound));
    }
    let steps = canonicalize(&a).steps;
    let k = rng.gen_range(0..=steps.len());
    let extra = max_depth.saturating_sub(k).max(1);
    let b = gen_program(rng, steps[..k].to_vec(), extra, denom_bound, 0.15);
    if rng.gen_bool(0.5) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Unit or zero entries, not both zero, whose residues lie on `class` when given.
pub fn gen_unit_pair<R: Rng>(
    rng: &mut R,
    class: Option<&ProjPoint>,
    coeff_bound: i64,
) -> (BivarPoly, BivarPoly) {
    let (a0, b0) = match class {
        Some(p) => {
            let (a, b) = p.pair();
            let s = nonzero_coeff(rng, coeff_bound);
            (a * &s, b * &s)
        }
        None => loop {
            let a = int(rng.gen_range(-coeff_bound..=coeff_bound));
            let b = int(rng.gen_range(-coeff_bound..=coeff_bound));
            if !(a.is_zero() && b.is_zero()) {
                break (a, b);
            }
        },
    };
    let entry = |rng: &mut R, c: Rat| {
        if c.is_zero() {
            return BivarPoly::zero();
        }
        let mut tail = gen_poly_with(rng, 3, 3, coeff_bound);
        tail.add_term((0, 0), -tail.constant_term());
        &BivarPoly::constant(c) + &tail
    };
    let a = entry(rng, a0);
    let b = entry(rng, b0);
    (a, b)
}

/// Random tree with at most `max_nodes` nodes; some leaf edges are infinite.
pub fn gen_tree<R: Rng>(rng: &mut R, max_nodes: usize, denom_bound: u32) -> SyntheticTree {
    let n = rng.gen_range(1..=max_nodes.max(1));
    let mut b = TreeBuilder::new();
    let mut open = vec![0usize];
    for _ in 1..n {
        let parent = *open.choose(rng).unwrap();
        let infinite = rng.gen_bool(0.12);
        let len = if infinite {
            ExtRat::Infinity
        } else {
            ExtRat::Finite(gen_pos_rat(rng, 2, denom_bound))
        };
        let id = b.add_child(parent, len).expect("valid parent");
        if !infinite {
            open.push(id);
        }
    }
    b.build()
}

pub fn gen_param<R: Rng>(rng: &mut R, tree: &SyntheticTree, denom_bound: u32) -> Param {
    if rng.gen_bool(0.3) {
        return Param::arclength_plus_one(tree);
    }
    let slopes = (0..tree.node_count())
        .map(|_| gen_pos_rat(rng, 3, denom_bound))
        .collect();
    Param::new(tree, slopes).expect("positive slopes")
}

/// Random point: a node, or a grid-aligned parameter on a random edge.
pub fn gen_point<R: Rng>(rng: &mut R, tree: &SyntheticTree, denom_bound: u32) -> TreePoint {
    let node = rng.gen_range(0..tree.node_count());
    if node == 0 || rng.gen_bool(0.3) {
        return tree.node_point(node);
    }
    let t = match tree.edge_length(node) {
        ExtRat::Finite(l) => {
            let d = denom_bound.max(1) as i64;
            let k = rng.gen_range(1..=d);
            ExtRat::Finite(l * Rat::new(k.into(), d.into()))
        }
        ExtRat::Infinity => ExtRat::Finite(gen_pos_rat(rng, 4, denom_bound)),
    };
    tree.point(node, t).expect("t within the edge")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polys_are_deterministic_and_bounded() {
        assert_eq!(gen_poly(1, 4, 5, 10), gen_poly(1, 4, 5, 10));
        for seed in 0..50 {
            assert_eq!(gen_poly(seed, 4, 1, 10).len(), 1);
            let p = gen_poly(seed, 4, 6, 1);
            assert!(p.terms().all(|(_, c)| c.is_integer() && (c == &int(1) || c == &int(-1))));
            assert!(p.total_degree().unwrap() <= 4);
        }
    }

    #[test]
    fn valuations_are_normalized_and_deterministic() {
        for seed in 0..200 {
            let v = gen_qmv(seed, 4, 10);
            assert!(v.is_normalized(), "{v:?}");
            assert_eq!(canonicalize(&v), canonicalize(&gen_qmv(seed, 4, 10)));
            let w = gen_qmv(seed, 0, 1);
            assert!(w.steps().is_empty());
            for g in [w.weights().first(), w.weights().second()] {
                if let ExtRat::Finite(r) = g {
                    assert!(r.is_integer(), "{w:?}");
                }
            }
        }
    }

    #[test]
    fn unit_pairs_have_requested_residues() {
        let mut r = rng(3);
        let class = ProjPoint::Finite(int(2));
        for _ in 0..50 {
            let p = gen_unit_pair(&mut r, Some(&class), 5);
            assert_eq!(crate::valuation::lambda_of_pair(&p).unwrap(), class);
            let q = gen_unit_pair(&mut r, None, 5);
            assert!(crate::valuation::lambda_of_pair(&q).is_ok());
        }
    }

    #[test]
    fn trees_and_points() {
        let mut r = rng(9);
        for _ in 0..20 {
            let t = gen_tree(&mut r, 30, 4);
            assert!(t.node_count() <= 30);
            let p = gen_point(&mut r, &t, 4);
            assert!(t.check(&p).is_ok());
            let psi = gen_param(&mut r, &t, 4);
            assert!(psi.psi(&t, &p).unwrap() >= ExtRat::int(1));
        }
    }
}
