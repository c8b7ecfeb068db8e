use num_traits::{One, Zero};

use super::poly::BivarPoly;
use super::rational::Rat;
use super::AlgebraError;

/// An invertible linear change of coordinates `(u, v) = M·(x, y)`.
///
/// Row `i` holds the coefficients of the `i`-th new coordinate, so
/// `u = m[0][0]·x + m[0][1]·y` and `v = m[1][0]·x + m[1][1]·y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearFrame {
    m: [[Rat; 2]; 2],
}

impl LinearFrame {
    pub fn new(m: [[Rat; 2]; 2]) -> Result<Self, AlgebraError> {
        let f = Self { m };
        if f.det().is_zero() {
            return Err(AlgebraError::SingularFrame);
        }
        Ok(f)
    }

    pub fn identity() -> Self {
        Self {
            m: [[Rat::one(), Rat::zero()], [Rat::zero(), Rat::one()]],
        }
    }

    pub fn swap() -> Self {
        Self {
            m: [[Rat::zero(), Rat::one()], [Rat::one(), Rat::zero()]],
        }
    }

    pub fn rows(&self) -> &[[Rat; 2]; 2] {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn det(&self) -> Rat {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    /// The new coordinate `i` (0 for `u`, 1 for `v`) as a linear form in `x, y`.
    pub fn coordinate(&self, i: usize) -> BivarPoly {
        BivarPoly::linear(self.m[i][0].clone(), self.m[i][1].clone())
    }

    /// Rewrites `φ(x, y)` in the coordinates `(u, v)`; the result uses `x` for `u` and `y` for `v`.
    pub fn apply(&self, phi: &BivarPoly) -> BivarPoly {
        if self.is_identity() {
            return phi.clone();
        }
        let d = self.det();
        // (x, y) = M⁻¹·(u, v)
        let ex = BivarPoly::linear(&self.m[1][1] / &d, -&self.m[0][1] / &d);
        let ey = BivarPoly::linear(-&self.m[1][0] / &d, &self.m[0][0] / &d);
        phi.substitute(&ex, &ey)
    }
}

impl Default for LinearFrame {
    fn default() -> Self {
        Self::identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn p(s: &str) -> BivarPoly {
        s.parse().unwrap()
    }

    #[test]
    fn frame_examples() {
        assert_eq!(LinearFrame::identity().apply(&p("x")), p("x"));
        let m = LinearFrame::new([[rat(1), rat(1)], [rat(0), rat(1)]]).unwrap();
        assert_eq!(m.apply(&p("x + y")), p("x"));
        assert_eq!(LinearFrame::swap().apply(&p("x*y^2")), p("x^2*y"));
    }

    #[test]
    fn singular_frame_rejected() {
        assert!(matches!(
            LinearFrame::new([[rat(1), rat(2)], [rat(2), rat(4)]]),
            Err(AlgebraError::SingularFrame)
        ));
    }

    #[test]
    fn coordinates_map_to_variables() {
        let m = LinearFrame::new([[rat(2), rat(-1)], [rat(3), rat(5)]]).unwrap();
        assert_eq!(m.apply(&m.coordinate(0)), BivarPoly::x());
        assert_eq!(m.apply(&m.coordinate(1)), BivarPoly::y());
    }
}
