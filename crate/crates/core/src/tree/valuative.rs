//! Order and meet of normalized valuations, viewed as a rooted tree.

use num_traits::One;

use crate::algebra::{ExtRat, Rat};
use crate::valuation::{compare, meet, Comparison, QuasiMonomialVal, ValuationError};

pub fn vt_root() -> QuasiMonomialVal {
    QuasiMonomialVal::madic()
}

pub fn vt_meet(a: &QuasiMonomialVal, b: &QuasiMonomialVal) -> QuasiMonomialVal {
    meet(a, b)
}

pub fn vt_leq(a: &QuasiMonomialVal, b: &QuasiMonomialVal) -> bool {
    matches!(compare(a, b), Comparison::Lt | Comparison::Eq)
}

/// The monomial valuation with weights `(1, t)`, whose `Ψ`-value is `t`.
pub fn monomial_segment_psi(t: &ExtRat) -> Result<QuasiMonomialVal, ValuationError> {
    if *t < ExtRat::Finite(Rat::one()) {
        return Err(ValuationError::NonPositiveWeight);
    }
    QuasiMonomialVal::monomial(ExtRat::Finite(Rat::one()), t.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuation::equal;

    #[test]
    fn adapter() {
        let a = QuasiMonomialVal::monomial(ExtRat::int(1), ExtRat::int(2)).unwrap();
        let b = QuasiMonomialVal::monomial(ExtRat::int(2), ExtRat::int(1))
            .unwrap()
            .normalize();
        assert!(equal(&vt_meet(&a, &b), &vt_root()));
        assert!(equal(&monomial_segment_psi(&ExtRat::int(1)).unwrap(), &vt_root()));
        let ts = [
            ExtRat::int(1),
            ExtRat::ratio(4, 3),
            ExtRat::ratio(3, 2),
            ExtRat::int(2),
            ExtRat::ratio(7, 2),
            ExtRat::Infinity,
        ];
        for (i, s) in ts.iter().enumerate() {
            for t in &ts[i..] {
                let (vs, vt) = (monomial_segment_psi(s).unwrap(), monomial_segment_psi(t).unwrap());
                assert!(vt_leq(&vs, &vt), "{s} {t}");
                assert_eq!(vt_leq(&vt, &vs), s == t);
            }
        }
        assert!(monomial_segment_psi(&ExtRat::ratio(1, 2)).is_err());
    }
}
