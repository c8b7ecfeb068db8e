use num_traits::{Signed, Zero};

use crate::algebra::{BivarPoly, ExtRat, LinearFrame, Rat};

use super::point::{DilatationStep, ProjPoint};
use super::ValuationError;

/// Weights `(γ1, γ2)` of a monomial valuation: both positive, at most one infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialWeights {
    first: ExtRat,
    second: ExtRat,
}

impl MonomialWeights {
    pub fn new(first: ExtRat, second: ExtRat) -> Result<Self, ValuationError> {
        if first.is_infinite() && second.is_infinite() {
            return Err(ValuationError::BothWeightsInfinite);
        }
        if !first.is_positive() || !second.is_positive() {
            return Err(ValuationError::NonPositiveWeight);
        }
        Ok(Self { first, second })
    }

    pub fn first(&self) -> &ExtRat {
        &self.first
    }

    pub fn second(&self) -> &ExtRat {
        &self.second
    }

    pub fn has_infinite(&self) -> bool {
        self.first.is_infinite() || self.second.is_infinite()
    }

    fn scaled(&self, c: &Rat) -> Self {
        Self {
            first: self.first.scale(c),
            second: self.second.scale(c),
        }
    }
}

/// A centered valuation given by a finite program: pull back along the
/// dilatation `steps`, change coordinates by `frame`, then take the monomial
/// valuation with `weights`.
///
/// The m-adic valuation is the empty program with weights `(1, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiMonomialVal {
    steps: Vec<DilatationStep>,
    frame: LinearFrame,
    weights: MonomialWeights,
}

impl QuasiMonomialVal {
    /// Rejects programs whose value on the maximal ideal is infinite, which
    /// happens when the infinite weight sits on an exceptional curve.
    pub fn new(
        steps: Vec<DilatationStep>,
        frame: LinearFrame,
        weights: MonomialWeights,
    ) -> Result<Self, ValuationError> {
        let v = Self {
            steps,
            frame,
            weights,
        };
        if v.eval(&BivarPoly::x()).is_infinite() && v.eval(&BivarPoly::y()).is_infinite() {
            return Err(ValuationError::NotCentered);
        }
        Ok(v)
    }

    pub(crate) fn new_unchecked(
        steps: Vec<DilatationStep>,
        frame: LinearFrame,
        weights: MonomialWeights,
    ) -> Self {
        Self {
            steps,
            frame,
            weights,
        }
    }

    pub fn monomial(g1: ExtRat, g2: ExtRat) -> Result<Self, ValuationError> {
        Self::new(Vec::new(), LinearFrame::identity(), MonomialWeights::new(g1, g2)?)
    }

    pub fn madic() -> Self {
        Self::new_unchecked(
            Vec::new(),
            LinearFrame::identity(),
            MonomialWeights {
                first: ExtRat::int(1),
                second: ExtRat::int(1),
            },
        )
    }

    pub fn steps(&self) -> &[DilatationStep] {
        &self.steps
    }

    pub fn frame(&self) -> &LinearFrame {
        &self.frame
    }

    pub fn weights(&self) -> &MonomialWeights {
        &self.weights
    }

    /// Pulls `φ` back to the final chart and frame coordinates.
    pub fn transform(&self, phi: &BivarPoly) -> BivarPoly {
        let mut cur = phi.clone();
        for step in &self.steps {
            cur = step.pullback(&cur);
        }
        self.frame.apply(&cur)
    }

    /// `(ν(x_i), ν(y_i))` for the coordinates of every chart, level 0 first.
    fn coordinate_values(&self) -> Vec<(ExtRat, ExtRat)> {
        let top = |p: BivarPoly| {
            self.frame
                .apply(&p)
                .weighted_order(&self.weights.first, &self.weights.second)
                .expect("weights are never both infinite")
        };
        let mut vals = vec![(top(BivarPoly::x()), top(BivarPoly::y()))];
        for step in self.steps.iter().rev() {
            let (vx, vy) = vals.last().unwrap().clone();
            vals.push(match &step.center {
                ProjPoint::Finite(c) if c.is_zero() => (vx.clone(), &vx + &vy),
                // y + c is a unit for c ≠ 0.
                ProjPoint::Finite(_) => (vx.clone(), vx),
                ProjPoint::Inf => (&vx + &vy, vy),
            });
        }
        vals.reverse();
        vals
    }

    /// Same value as the weighted order of `transform(φ)`, but the monomial
    /// content is split off at every chart so only strict transforms are
    /// pulled back.
    pub fn eval(&self, phi: &BivarPoly) -> ExtRat {
        if phi.is_zero() {
            return ExtRat::Infinity;
        }
        let vals = self.coordinate_values();
        let mut acc = ExtRat::zero();
        let mut cur = phi.clone();
        for (level, (vx, vy)) in vals.iter().enumerate() {
            let (a, b) = cur.monomial_content();
            acc = &(&acc + &vx.times(a as u64)) + &vy.times(b as u64);
            cur = cur.unshift(a, b);
            // A unit has value 0 at every later level.
            if !cur.constant_term().is_zero() {
                return acc;
            }
            if let Some(step) = self.steps.get(level) {
                cur = step.pullback(&cur);
            }
        }
        let rest = self
            .frame
            .apply(&cur)
            .weighted_order(&self.weights.first, &self.weights.second)
            .expect("weights are never both infinite");
        &acc + &rest
    }

    /// `ν(m) = min(ν(x), ν(y))`; finite and positive by construction.
    pub fn m_value(&self) -> Rat {
        let m = std::cmp::min(self.eval(&BivarPoly::x()), self.eval(&BivarPoly::y()));
        match m {
            ExtRat::Finite(r) => {
                debug_assert!(r.is_positive());
                r
            }
            ExtRat::Infinity => unreachable!("constructor rejects infinite m-value"),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.m_value() == Rat::from_integer(1.into())
    }

    /// The equivalent valuation with `ν(m) = 1`.
    pub fn normalize(&self) -> Self {
        let m = self.m_value();
        let inv = m.recip();
        Self {
            steps: self.steps.clone(),
            frame: self.frame.clone(),
            weights: self.weights.scaled(&inv),
        }
    }

    /// `c·ν` for `c > 0`.
    pub fn scaled(&self, c: &Rat) -> Self {
        Self {
            steps: self.steps.clone(),
            frame: self.frame.clone(),
            weights: self.weights.scaled(c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::valuation::point::{DilatationStep, ProjPoint};

    fn p(s: &str) -> BivarPoly {
        s.parse().unwrap()
    }

    fn mono(a: ExtRat, b: ExtRat) -> QuasiMonomialVal {
        QuasiMonomialVal::monomial(a, b).unwrap()
    }

    #[test]
    fn eval_examples() {
        let via_step = QuasiMonomialVal::new(
            vec![DilatationStep::finite(rat(0))],
            LinearFrame::identity(),
            MonomialWeights::new(ExtRat::int(1), ExtRat::int(1)).unwrap(),
        )
        .unwrap();
        assert_eq!(via_step.eval(&p("y")), ExtRat::int(2));
        let direct = mono(ExtRat::int(1), ExtRat::int(2));
        for s in ["y", "x", "x^2 + y", "y^2 - x^3", "x*y + y^3"] {
            assert_eq!(via_step.eval(&p(s)), direct.eval(&p(s)), "{s}");
        }
        assert_eq!(QuasiMonomialVal::madic().eval(&p("x^2 + x*y^3")), ExtRat::int(2));
        let curve = mono(ExtRat::int(1), ExtRat::Infinity);
        assert_eq!(curve.eval(&p("x*y^2")), ExtRat::Infinity);
        assert_eq!(curve.eval(&p("x")), ExtRat::int(1));
    }

    #[test]
    fn m_value_examples() {
        assert_eq!(mono(ExtRat::int(1), ExtRat::int(2)).m_value(), rat(1));
        assert_eq!(mono(ExtRat::int(2), ExtRat::int(3)).m_value(), rat(2));
        let v = QuasiMonomialVal::new(
            vec![DilatationStep::finite(rat(0)), DilatationStep::finite(rat(1))],
            LinearFrame::identity(),
            MonomialWeights::new(ExtRat::int(1), ExtRat::int(1)).unwrap(),
        )
        .unwrap();
        // x ↦ 1; y ↦ x·y' ↦ x·x(y''+1) ↦ 2
        assert_eq!(v.eval(&p("x")), ExtRat::int(1));
        assert_eq!(v.eval(&p("y")), ExtRat::int(2));
        assert_eq!(v.m_value(), rat(1));
    }

    #[test]
    fn normalize_examples() {
        let n = mono(ExtRat::int(2), ExtRat::int(3)).normalize();
        assert_eq!(n, mono(ExtRat::int(1), ExtRat::ratio(3, 2)));
        assert_eq!(QuasiMonomialVal::madic().normalize(), QuasiMonomialVal::madic());
        let c = mono(ExtRat::int(1), ExtRat::Infinity);
        assert_eq!(c.normalize(), c);
        assert!(n.is_normalized());
        assert_eq!(n.normalize(), n);
        assert_eq!(mono(ExtRat::ratio(1, 3), ExtRat::int(5)).normalize().m_value(), rat(1));
    }

    #[test]
    fn constructor_rejections() {
        assert!(matches!(
            QuasiMonomialVal::monomial(ExtRat::Infinity, ExtRat::Infinity),
            Err(ValuationError::BothWeightsInfinite)
        ));
        assert!(matches!(
            QuasiMonomialVal::monomial(ExtRat::int(0), ExtRat::int(1)),
            Err(ValuationError::NonPositiveWeight)
        ));
        // After y ← x·y the line x = 0 is exceptional; an infinite weight there
        // makes every element of m infinite.
        assert!(matches!(
            QuasiMonomialVal::new(
                vec![DilatationStep::at(ProjPoint::Finite(rat(0)))],
                LinearFrame::identity(),
                MonomialWeights::new(ExtRat::Infinity, ExtRat::int(1)).unwrap(),
            ),
            Err(ValuationError::NotCentered)
        ));
        assert!(matches!(
            QuasiMonomialVal::new(
                vec![DilatationStep::inf()],
                LinearFrame::identity(),
                MonomialWeights::new(ExtRat::int(1), ExtRat::Infinity).unwrap(),
            ),
            Err(ValuationError::NotCentered)
        ));
    }
}
