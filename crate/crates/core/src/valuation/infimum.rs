use std::cmp::Ordering;

use crate::algebra::{BivarPoly, LinearFrame, Rat};

use super::canonical::{canonicalize, CanonicalForm, Terminal};
use super::point::{DilatationStep, ProjPoint};
use super::qmv::{MonomialWeights, QuasiMonomialVal};
use super::ValuationError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Lt,
    Eq,
    Gt,
    Incomparable,
}

/// The direction `[a:b]` whose form `a·x + b·y` has value above `ν(m)`, if any.
pub fn exceptional_direction(v: &QuasiMonomialVal) -> Option<ProjPoint> {
    canonicalize(v).exceptional_direction()
}

/// A linear form with value above `ν(m)`; `None` exactly for multiples of `ν_m`.
pub fn homogeneous_witness(v: &QuasiMonomialVal) -> Option<BivarPoly> {
    exceptional_direction(v).map(|d| d.linear_form())
}

/// Pairs `(1,0), (0,1), (1,1), (1,−1), (1,2), (1,−2), …`.
fn candidate_pairs() -> impl Iterator<Item = (Rat, Rat)> {
    let head = [(1, 0), (0, 1)].into_iter();
    let tail = (1i64..).flat_map(|k| [(1, k), (1, -k)]);
    head.chain(tail)
        .map(|(a, b)| (Rat::from_integer(a.into()), Rat::from_integer(b.into())))
}

fn first_avoiding(avoid: &[Option<ProjPoint>]) -> (Rat, Rat) {
    candidate_pairs()
        .find(|(a, b)| {
            let d = ProjPoint::from_pair(a, b);
            !avoid.iter().any(|e| e.as_ref() == d.as_ref())
        })
        .expect("P¹(ℚ) has more than two points")
}

/// `(a, b)` with `ν(a·x + b·y) = ν(m)` and `μ(a·x + b·y) = μ(m)`.
pub fn common_minimizer(v: &QuasiMonomialVal, mu: &QuasiMonomialVal) -> (Rat, Rat) {
    first_avoiding(&[exceptional_direction(v), exceptional_direction(mu)])
}

/// Greatest lower bound of two canonical forms.
///
/// Walks the dilatation sequences while centers and multiplicities agree.
/// If the multiplicities split at some level, the infimum there is the
/// monomial valuation, in coordinates given by a common minimizing direction
/// and the exceptional direction of the smaller side, with the smaller of
/// the two values on each coordinate. If only the centers split, or one
/// sequence ends, it is the divisorial valuation `m·ν_m` of that level.
pub fn meet_canonical(a: &CanonicalForm, b: &CanonicalForm) -> CanonicalForm {
    if a == b {
        return a.clone();
    }
    let mut prefix: Vec<DilatationStep> = Vec::new();
    for level in 0.. {
        let la = a.at_level(level).expect("both sequences continue");
        let lb = b.at_level(level).expect("both sequences continue");
        let ma = a.multiplicity_at(level).unwrap();
        let mb = b.multiplicity_at(level).unwrap();
        if ma != mb {
            let (small, big) = if ma < mb { (&la, &lb) } else { (&lb, &la) };
            let e = match small.exceptional_direction() {
                None => {
                    let mut steps = prefix;
                    steps.extend(small.steps.iter().cloned());
                    return CanonicalForm {
                        steps,
                        terminal: small.terminal.clone(),
                    };
                }
                Some(e) => e,
            };
            let (p, q) = first_avoiding(&[Some(e.clone()), big.exceptional_direction()]);
            let (ea, eb) = e.pair();
            let (vs, vb) = (small.to_qmv(), big.to_qmv());
            let lmin = BivarPoly::linear(p.clone(), q.clone());
            let lexc = e.linear_form();
            let w1 = std::cmp::min(vs.eval(&lmin), vb.eval(&lmin));
            let w2 = std::cmp::min(vs.eval(&lexc), vb.eval(&lexc));
            let frame = LinearFrame::new([[p, q], [ea, eb]]).expect("distinct directions");
            let weights = MonomialWeights::new(w1, w2).expect("values on m are finite");
            let v = QuasiMonomialVal::new(prefix, frame, weights)
                .expect("a lower bound of centered valuations is centered");
            return canonicalize(&v);
        }
        let ca = a.center_at(level);
        let cb = b.center_at(level);
        match (ca, cb) {
            (Some(ca), Some(cb)) if ca == cb => prefix.push(DilatationStep::at(ca)),
            _ => {
                return CanonicalForm {
                    steps: prefix,
                    terminal: Terminal::Divisorial(ma),
                }
            }
        }
    }
    unreachable!()
}

pub fn meet(v: &QuasiMonomialVal, mu: &QuasiMonomialVal) -> QuasiMonomialVal {
    meet_canonical(&canonicalize(v), &canonicalize(mu)).to_qmv()
}

pub fn compare(v: &QuasiMonomialVal, mu: &QuasiMonomialVal) -> Comparison {
    let (a, b) = (canonicalize(v), canonicalize(mu));
    if a == b {
        return Comparison::Eq;
    }
    let m = meet_canonical(&a, &b);
    if m == a {
        Comparison::Lt
    } else if m == b {
        Comparison::Gt
    } else {
        Comparison::Incomparable
    }
}

impl Comparison {
    pub fn as_ordering(self) -> Option<Ordering> {
        match self {
            Comparison::Lt => Some(Ordering::Less),
            Comparison::Eq => Some(Ordering::Equal),
            Comparison::Gt => Some(Ordering::Greater),
            Comparison::Incomparable => None,
        }
    }
}

impl std::fmt::Display for Comparison {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Comparison::Lt => "LT",
            Comparison::Eq => "EQ",
            Comparison::Gt => "GT",
            Comparison::Incomparable => "INCOMPARABLE",
        })
    }
}

pub fn inf_finite(set: &[QuasiMonomialVal]) -> Result<QuasiMonomialVal, ValuationError> {
    let (first, rest) = set.split_first().ok_or(ValuationError::EmptySet)?;
    let acc = rest
        .iter()
        .fold(canonicalize(first), |acc, v| meet_canonical(&acc, &canonicalize(v)));
    Ok(acc.to_qmv())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ExtRat};
    use crate::valuation::canonical::equal;

    fn mono(a: ExtRat, b: ExtRat) -> QuasiMonomialVal {
        QuasiMonomialVal::monomial(a, b).unwrap()
    }

    fn mono_i(a: i64, b: i64) -> QuasiMonomialVal {
        mono(ExtRat::int(a), ExtRat::int(b))
    }

    fn div_steps(cs: &[i64]) -> QuasiMonomialVal {
        QuasiMonomialVal::new(
            cs.iter().map(|c| DilatationStep::finite(rat(*c))).collect(),
            LinearFrame::identity(),
            MonomialWeights::new(ExtRat::int(1), ExtRat::int(1)).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn meet_fixtures() {
        let a = mono_i(1, 2);
        let b = mono_i(2, 1).normalize();
        assert!(equal(&meet(&a, &b), &QuasiMonomialVal::madic()));
        assert!(equal(&meet(&a, &mono_i(1, 3)), &a));
        assert!(equal(&meet(&div_steps(&[0, 1]), &div_steps(&[0, 2])), &a));
        assert!(equal(&meet(&a, &a), &a));
        let c = mono(ExtRat::int(1), ExtRat::ratio(3, 2));
        let d = mono(ExtRat::int(1), ExtRat::ratio(5, 2));
        assert!(equal(&meet(&c, &d), &c));
    }

    #[test]
    fn meet_with_curves() {
        let curve = mono(ExtRat::int(1), ExtRat::Infinity);
        let a = mono_i(1, 3);
        assert!(equal(&meet(&a, &curve), &a));
        assert_eq!(compare(&a, &curve), Comparison::Lt);
        let other = mono(ExtRat::Infinity, ExtRat::int(1));
        assert!(equal(&meet(&curve, &other), &QuasiMonomialVal::madic()));
        let v = mono(ExtRat::int(1), ExtRat::ratio(7, 3));
        let w = mono(ExtRat::int(1), ExtRat::ratio(5, 2));
        assert!(equal(&meet(&v, &w), &v));
    }

    #[test]
    fn compare_fixtures() {
        assert_eq!(compare(&mono_i(1, 2), &mono_i(1, 3)), Comparison::Lt);
        assert_eq!(compare(&mono_i(1, 3), &mono_i(1, 2)), Comparison::Gt);
        assert_eq!(
            compare(&mono_i(1, 2), &mono_i(2, 1).normalize()),
            Comparison::Incomparable
        );
        assert_eq!(
            compare(&QuasiMonomialVal::madic(), &QuasiMonomialVal::madic()),
            Comparison::Eq
        );
        assert_eq!(
            compare(&QuasiMonomialVal::madic(), &div_steps(&[3, 0])),
            Comparison::Lt
        );
    }

    #[test]
    fn inf_finite_fixtures() {
        let set = [mono_i(1, 2), mono_i(2, 1).normalize(), mono_i(1, 3)];
        assert!(equal(&inf_finite(&set).unwrap(), &QuasiMonomialVal::madic()));
        assert!(equal(&inf_finite(&[mono_i(1, 3), mono_i(1, 2)]).unwrap(), &mono_i(1, 2)));
        assert!(equal(&inf_finite(&[mono_i(1, 3)]).unwrap(), &mono_i(1, 3)));
        assert_eq!(inf_finite(&[]), Err(ValuationError::EmptySet));
    }

    #[test]
    fn common_minimizer_fixtures() {
        assert_eq!(
            common_minimizer(&mono_i(1, 2), &mono_i(2, 1).normalize()),
            (rat(1), rat(1))
        );
        assert_eq!(
            common_minimizer(&QuasiMonomialVal::madic(), &QuasiMonomialVal::madic()),
            (rat(1), rat(0))
        );
        assert_eq!(common_minimizer(&mono_i(1, 2), &mono_i(1, 3)), (rat(1), rat(0)));
        let (a, b) = common_minimizer(&div_steps(&[0]), &mono(ExtRat::Infinity, ExtRat::int(1)));
        assert_eq!((a, b), (rat(1), rat(1)));
    }

    #[test]
    fn exceptional_and_witness_fixtures() {
        assert_eq!(
            exceptional_direction(&mono_i(1, 2)),
            Some(ProjPoint::Finite(rat(0)))
        );
        assert_eq!(exceptional_direction(&QuasiMonomialVal::madic()), None);
        assert_eq!(
            exceptional_direction(&div_steps(&[3])),
            Some(ProjPoint::Finite(rat(-3)))
        );
        assert_eq!(homogeneous_witness(&mono_i(1, 2)), Some(BivarPoly::y()));
        assert_eq!(homogeneous_witness(&QuasiMonomialVal::madic()), None);
        let w = homogeneous_witness(&div_steps(&[3])).unwrap();
        assert_eq!(w, "y - 3*x".parse().unwrap());
        assert_eq!(div_steps(&[3]).eval(&w), ExtRat::int(2));
    }
}
