use std::fmt;

use num_traits::Zero;

use crate::algebra::{ExtRat, LinearFrame, Rat};

use super::point::{DilatationStep, ProjPoint};
use super::qmv::{MonomialWeights, QuasiMonomialVal};
use super::ValuationError;

/// How the dilatation sequence of a valuation ends.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Terminal {
    /// The valuation at the last level is `γ·ν_m` of that level's ring.
    Divisorial(Rat),
    /// Order of vanishing along the smooth curve with tangent `direction`
    /// at the last level, scaled by `weight`.
    Curve { direction: ProjPoint, weight: Rat },
}

/// Normal form of a centered valuation: the dilatation centers followed by
/// the terminal. Two valuations are equal iff their forms are identical.
///
/// For curves the trailing steps that merely follow the curve are folded
/// into the direction, so the last step's chart never continues the curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub steps: Vec<DilatationStep>,
    pub terminal: Terminal,
}

/// Result of one quadratic dilatation of a head-form valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dilation {
    Continue(DilatationStep, QuasiMonomialVal),
    Terminal(Rat),
}

enum HeadStep {
    Continue(DilatationStep, MonomialWeights),
    Terminal(Rat),
}

/// One dilatation of the monomial valuation with `weights` in `frame` coordinates.
///
/// The coordinate with the larger weight cuts out the tangent line that is
/// blown up; the new weights are `(min, |γu − γv|)` in chart coordinates.
fn dilate_head(frame: &LinearFrame, weights: &MonomialWeights) -> HeadStep {
    let (gu, gv) = (weights.first(), weights.second());
    if gu == gv {
        let g = gu.finite().expect("weights are never both infinite").clone();
        return HeadStep::Terminal(g);
    }
    let m = frame.rows();
    let (low, high, line) = if gu < gv {
        (gu.finite().unwrap(), gv, &m[1])
    } else {
        (gv.finite().unwrap(), gu, &m[0])
    };
    let diff = high.minus(low);
    let low = ExtRat::Finite(low.clone());
    let dir = ProjPoint::from_pair(&line[0], &line[1]).expect("frame rows are nonzero");
    let center = dir.center_direction();
    let w = match center {
        // y ← x·(y + c): x keeps the low weight, the strict transform of the line gets the rest.
        ProjPoint::Finite(_) => MonomialWeights::new(low, diff),
        // x ← x·y: y keeps the low weight.
        ProjPoint::Inf => MonomialWeights::new(diff, low),
    }
    .expect("differences of distinct positive weights stay positive");
    HeadStep::Continue(DilatationStep::at(center), w)
}

/// Quadratic dilatation of a valuation given in head form (no steps).
pub fn dilate(v: &QuasiMonomialVal) -> Result<Dilation, ValuationError> {
    if !v.steps().is_empty() {
        return Err(ValuationError::NotHeadForm);
    }
    Ok(match dilate_head(v.frame(), v.weights()) {
        HeadStep::Terminal(g) => Dilation::Terminal(g),
        HeadStep::Continue(step, w) => Dilation::Continue(
            step,
            QuasiMonomialVal::new_unchecked(Vec::new(), LinearFrame::identity(), w),
        ),
    })
}

fn curve_of(frame: &LinearFrame, weights: &MonomialWeights) -> Option<(ProjPoint, Rat)> {
    let m = frame.rows();
    let (row, w) = match (weights.first(), weights.second()) {
        (ExtRat::Finite(g), ExtRat::Infinity) => (&m[1], g),
        (ExtRat::Infinity, ExtRat::Finite(g)) => (&m[0], g),
        _ => return None,
    };
    Some((ProjPoint::from_pair(&row[0], &row[1]).unwrap(), w.clone()))
}

/// The direction a curve keeps after the chart of `center`: `y = 0` in a
/// finite chart, `x = 0` in the `Inf` chart.
fn continuation(center: &ProjPoint) -> ProjPoint {
    match center {
        ProjPoint::Finite(_) => ProjPoint::Finite(Rat::zero()),
        ProjPoint::Inf => ProjPoint::Inf,
    }
}

pub fn canonicalize(v: &QuasiMonomialVal) -> CanonicalForm {
    let mut steps = v.steps().to_vec();
    let mut frame = v.frame().clone();
    let mut weights = v.weights().clone();
    loop {
        if let Some((mut direction, weight)) = curve_of(&frame, &weights) {
            while let Some(last) = steps.last() {
                if continuation(&last.center) != direction {
                    break;
                }
                direction = last.center.center_direction();
                steps.pop();
            }
            return CanonicalForm {
                steps,
                terminal: Terminal::Curve { direction, weight },
            };
        }
        match dilate_head(&frame, &weights) {
            HeadStep::Terminal(g) => {
                return CanonicalForm {
                    steps,
                    terminal: Terminal::Divisorial(g),
                }
            }
            HeadStep::Continue(step, w) => {
                steps.push(step);
                frame = LinearFrame::identity();
                weights = w;
            }
        }
    }
}

/// Canonical-form identity.
pub fn equal(a: &QuasiMonomialVal, b: &QuasiMonomialVal) -> bool {
    canonicalize(a) == canonicalize(b)
}

impl CanonicalForm {
    pub fn madic() -> Self {
        Self {
            steps: Vec::new(),
            terminal: Terminal::Divisorial(Rat::from_integer(1.into())),
        }
    }

    pub fn is_curve(&self) -> bool {
        matches!(self.terminal, Terminal::Curve { .. })
    }

    pub fn to_qmv(&self) -> QuasiMonomialVal {
        let (frame, weights) = match &self.terminal {
            Terminal::Divisorial(g) => (
                LinearFrame::identity(),
                MonomialWeights::new(g.clone().into(), g.clone().into()),
            ),
            Terminal::Curve { direction, weight } => {
                let frame = match direction {
                    ProjPoint::Finite(c) => LinearFrame::new([
                        [Rat::from_integer(1.into()), Rat::zero()],
                        [c.clone(), Rat::from_integer(1.into())],
                    ])
                    .unwrap(),
                    ProjPoint::Inf => LinearFrame::swap(),
                };
                (
                    frame,
                    MonomialWeights::new(weight.clone().into(), ExtRat::Infinity),
                )
            }
        };
        QuasiMonomialVal::new_unchecked(self.steps.clone(), frame, weights.expect("positive"))
    }

    /// Center of the dilatation at `level`, following a curve past its
    /// recorded steps. `None` once a divisorial sequence has ended.
    pub fn center_at(&self, level: usize) -> Option<ProjPoint> {
        if let Some(step) = self.steps.get(level) {
            return Some(step.center.clone());
        }
        match &self.terminal {
            Terminal::Divisorial(_) => None,
            Terminal::Curve { direction, .. } => {
                let first = direction.center_direction();
                if level == self.steps.len() {
                    Some(first)
                } else {
                    Some(continuation(&first).center_direction())
                }
            }
        }
    }

    /// The valuation induced on the level-`level` ring, in its canonical form.
    pub fn at_level(&self, level: usize) -> Option<CanonicalForm> {
        let n = self.steps.len();
        if level <= n {
            return Some(CanonicalForm {
                steps: self.steps[level..].to_vec(),
                terminal: self.terminal.clone(),
            });
        }
        match &self.terminal {
            Terminal::Divisorial(_) => None,
            Terminal::Curve { direction, weight } => Some(CanonicalForm {
                steps: Vec::new(),
                terminal: Terminal::Curve {
                    direction: continuation(&direction.center_direction()),
                    weight: weight.clone(),
                },
            }),
        }
    }

    /// `m^(level)`, the value of the maximal ideal at that level.
    pub fn multiplicity_at(&self, level: usize) -> Option<Rat> {
        let form = self.at_level(level)?;
        Some(match (&form.terminal, form.steps.is_empty()) {
            (Terminal::Divisorial(g), true) => g.clone(),
            (Terminal::Curve { weight, .. }, true) => weight.clone(),
            _ => form.to_qmv().m_value(),
        })
    }

    /// The direction `[a:b]` with `ν(a·x + b·y) > ν(m)`, if any.
    pub fn exceptional_direction(&self) -> Option<ProjPoint> {
        match (self.steps.first(), &self.terminal) {
            (Some(step), _) => Some(step.center.center_direction()),
            (None, Terminal::Divisorial(_)) => None,
            (None, Terminal::Curve { direction, .. }) => Some(direction.clone()),
        }
    }

    /// `λ(ν)`: number of rings in the dilatation sequence, `None` for curves.
    pub fn lambda(&self) -> Option<usize> {
        match self.terminal {
            Terminal::Divisorial(_) => Some(self.steps.len() + 1),
            Terminal::Curve { .. } => None,
        }
    }

    pub fn stream(&self) -> MultiplicityStream {
        MultiplicityStream {
            form: self.clone(),
            level: 0,
            done: false,
        }
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let steps: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        write!(f, "steps [{}], ", steps.join(", "))?;
        match &self.terminal {
            Terminal::Divisorial(g) => write!(f, "Divisorial({g})"),
            Terminal::Curve { direction, weight } => write!(f, "Curve({direction}, {weight})"),
        }
    }
}

/// One entry of a multiplicity sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StreamEntry {
    Step {
        level: usize,
        center: ProjPoint,
        multiplicity: Rat,
    },
    /// The divisorial end: the valuation is `multiplicity·ν_m` at `level`.
    Terminal { level: usize, multiplicity: Rat },
}

impl StreamEntry {
    pub fn multiplicity(&self) -> &Rat {
        match self {
            StreamEntry::Step { multiplicity, .. } | StreamEntry::Terminal { multiplicity, .. } => {
                multiplicity
            }
        }
    }
}

/// Lazy cursor over `(center_i, m^(i))`. Finite for divisorial valuations,
/// infinite (eventually constant) for curves.
#[derive(Clone, Debug)]
pub struct MultiplicityStream {
    form: CanonicalForm,
    level: usize,
    done: bool,
}

impl Iterator for MultiplicityStream {
    type Item = StreamEntry;

    fn next(&mut self) -> Option<StreamEntry> {
        if self.done {
            return None;
        }
        let level = self.level;
        let multiplicity = self.form.multiplicity_at(level)?;
        self.level += 1;
        match self.form.center_at(level) {
            Some(center) => Some(StreamEntry::Step {
                level,
                center,
                multiplicity,
            }),
            None => {
                self.done = true;
                Some(StreamEntry::Terminal {
                    level,
                    multiplicity,
                })
            }
        }
    }
}

pub fn stream(v: &QuasiMonomialVal) -> MultiplicityStream {
    canonicalize(v).stream()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio, BivarPoly};

    fn mono(a: ExtRat, b: ExtRat) -> QuasiMonomialVal {
        QuasiMonomialVal::monomial(a, b).unwrap()
    }

    fn steps(cs: &[Option<i64>]) -> Vec<DilatationStep> {
        cs.iter()
            .map(|c| match c {
                Some(c) => DilatationStep::finite(rat(*c)),
                None => DilatationStep::inf(),
            })
            .collect()
    }

    #[test]
    fn dilate_examples() {
        match dilate(&mono(ExtRat::int(1), ExtRat::ratio(5, 2))).unwrap() {
            Dilation::Continue(step, v) => {
                assert_eq!(step, DilatationStep::finite(rat(0)));
                assert_eq!(v, mono(ExtRat::int(1), ExtRat::ratio(3, 2)));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            dilate(&QuasiMonomialVal::madic()).unwrap(),
            Dilation::Terminal(rat(1))
        );
        match dilate(&mono(ExtRat::int(1), ExtRat::Infinity)).unwrap() {
            Dilation::Continue(step, v) => {
                assert_eq!(step, DilatationStep::finite(rat(0)));
                assert_eq!(v, mono(ExtRat::int(1), ExtRat::Infinity));
            }
            other => panic!("{other:?}"),
        }
        match dilate(&mono(ExtRat::int(3), ExtRat::int(1))).unwrap() {
            Dilation::Continue(step, v) => {
                assert_eq!(step, DilatationStep::inf());
                assert_eq!(v, mono(ExtRat::int(2), ExtRat::int(1)));
            }
            other => panic!("{other:?}"),
        }
        let deep = QuasiMonomialVal::new(
            steps(&[Some(0)]),
            LinearFrame::identity(),
            MonomialWeights::new(ExtRat::int(1), ExtRat::int(1)).unwrap(),
        )
        .unwrap();
        assert!(matches!(dilate(&deep), Err(ValuationError::NotHeadForm)));
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(
            canonicalize(&mono(ExtRat::int(1), ExtRat::int(2))),
            CanonicalForm {
                steps: steps(&[Some(0)]),
                terminal: Terminal::Divisorial(rat(1))
            }
        );
        assert_eq!(canonicalize(&QuasiMonomialVal::madic()), CanonicalForm::madic());
        assert_eq!(
            canonicalize(&mono(ExtRat::int(1), ExtRat::ratio(3, 2))),
            CanonicalForm {
                steps: steps(&[Some(0), None]),
                terminal: Terminal::Divisorial(ratio(1, 2))
            }
        );
    }

    #[test]
    fn curve_forms_fold_trailing_steps() {
        let plain = canonicalize(&mono(ExtRat::int(1), ExtRat::Infinity));
        assert_eq!(
            plain,
            CanonicalForm {
                steps: vec![],
                terminal: Terminal::Curve {
                    direction: ProjPoint::Finite(rat(0)),
                    weight: rat(1)
                }
            }
        );
        // The same curve seen after one blow-up.
        let lifted = QuasiMonomialVal::new(
            steps(&[Some(0)]),
            LinearFrame::identity(),
            MonomialWeights::new(ExtRat::int(1), ExtRat::Infinity).unwrap(),
        )
        .unwrap();
        assert_eq!(canonicalize(&lifted), plain);
        // y = 3x through the chart of center 3.
        let line = QuasiMonomialVal::new(
            steps(&[Some(3), Some(0)]),
            LinearFrame::identity(),
            MonomialWeights::new(ExtRat::int(1), ExtRat::Infinity).unwrap(),
        )
        .unwrap();
        let form = canonicalize(&line);
        assert_eq!(form.steps, vec![]);
        assert_eq!(
            form.terminal,
            Terminal::Curve {
                direction: ProjPoint::Finite(rat(-3)),
                weight: rat(1)
            }
        );
        let swapped = canonicalize(&mono(ExtRat::Infinity, ExtRat::int(2)));
        assert_eq!(
            swapped.terminal,
            Terminal::Curve {
                direction: ProjPoint::Inf,
                weight: rat(2)
            }
        );
        // y = x^2 is not a line: stays one level deep.
        let parabola = QuasiMonomialVal::new(
            steps(&[Some(0), Some(1)]),
            LinearFrame::identity(),
            MonomialWeights::new(ExtRat::int(1), ExtRat::Infinity).unwrap(),
        )
        .unwrap();
        let form = canonicalize(&parabola);
        assert_eq!(form.steps, steps(&[Some(0)]));
        assert_eq!(
            parabola.eval(&"y - x^2".parse::<BivarPoly>().unwrap()),
            ExtRat::Infinity
        );
    }

    #[test]
    fn canonical_round_trip_preserves_values() {
        let v = QuasiMonomialVal::new(
            steps(&[Some(2), None]),
            LinearFrame::new([[rat(1), rat(1)], [rat(0), rat(1)]]).unwrap(),
            MonomialWeights::new(ExtRat::ratio(1, 3), ExtRat::ratio(5, 7)).unwrap(),
        )
        .unwrap();
        let back = canonicalize(&v).to_qmv();
        for s in ["x", "y", "y - 2*x", "x^2 - y^3", "x*y + y^2 + x^3", "y^2 - 4*x^2 + x^3"] {
            let f: BivarPoly = s.parse().unwrap();
            assert_eq!(v.eval(&f), back.eval(&f), "{s}");
        }
    }

    #[test]
    fn stream_examples() {
        let entries: Vec<_> = stream(&mono(ExtRat::int(1), ExtRat::ratio(5, 2))).collect();
        assert_eq!(
            entries,
            vec![
                StreamEntry::Step {
                    level: 0,
                    center: ProjPoint::Finite(rat(0)),
                    multiplicity: rat(1)
                },
                StreamEntry::Step {
                    level: 1,
                    center: ProjPoint::Finite(rat(0)),
                    multiplicity: rat(1)
                },
                StreamEntry::Step {
                    level: 2,
                    center: ProjPoint::Inf,
                    multiplicity: ratio(1, 2)
                },
                StreamEntry::Terminal {
                    level: 3,
                    multiplicity: ratio(1, 2)
                },
            ]
        );
        assert_eq!(canonicalize(&mono(ExtRat::int(1), ExtRat::ratio(5, 2))).lambda(), Some(4));

        let madic: Vec<_> = stream(&QuasiMonomialVal::madic()).collect();
        assert_eq!(
            madic,
            vec![StreamEntry::Terminal {
                level: 0,
                multiplicity: rat(1)
            }]
        );
        assert_eq!(CanonicalForm::madic().lambda(), Some(1));

        let curve: Vec<_> = stream(&mono(ExtRat::int(1), ExtRat::Infinity)).take(6).collect();
        for (i, e) in curve.iter().enumerate() {
            assert_eq!(
                *e,
                StreamEntry::Step {
                    level: i,
                    center: ProjPoint::Finite(rat(0)),
                    multiplicity: rat(1)
                }
            );
        }
    }

    #[test]
    fn exceptional_direction_from_form() {
        assert_eq!(
            canonicalize(&mono(ExtRat::int(1), ExtRat::int(2))).exceptional_direction(),
            Some(ProjPoint::Finite(rat(0)))
        );
        assert_eq!(CanonicalForm::madic().exceptional_direction(), None);
    }

    #[test]
    fn equality_is_scaling_aware_only_after_normalizing() {
        let a = mono(ExtRat::int(2), ExtRat::int(4));
        let b = mono(ExtRat::int(1), ExtRat::int(2));
        assert!(!equal(&a, &b));
        assert!(equal(&a.normalize(), &b));
        let via_step = QuasiMonomialVal::new(
            steps(&[Some(0)]),
            LinearFrame::identity(),
            MonomialWeights::new(ExtRat::int(1), ExtRat::int(1)).unwrap(),
        )
        .unwrap();
        assert!(equal(&b, &via_step));
        assert!(!equal(&QuasiMonomialVal::madic(), &b));
    }
}
