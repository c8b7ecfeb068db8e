use num_traits::Zero;

use crate::algebra::{BivarPoly, Rat};

use super::point::ProjPoint;
use super::ValuationError;

/// Residues `(a(0,0), b(0,0))` of a pair of units or zeros.
fn residues(p: &(BivarPoly, BivarPoly)) -> Result<(Rat, Rat), ValuationError> {
    let check = |f: &BivarPoly| {
        let c = f.constant_term();
        if !f.is_zero() && c.is_zero() {
            Err(ValuationError::InvalidPair)
        } else {
            Ok(c)
        }
    };
    let (a, b) = (check(&p.0)?, check(&p.1)?);
    if a.is_zero() && b.is_zero() {
        return Err(ValuationError::InvalidPair);
    }
    Ok((a, b))
}

/// `(a1,b1) ~ (a2,b2)` iff `a1·b2 − a2·b1 ∈ m`.
pub fn sim_pairs(
    p1: &(BivarPoly, BivarPoly),
    p2: &(BivarPoly, BivarPoly),
) -> Result<bool, ValuationError> {
    let (a1, b1) = residues(p1)?;
    let (a2, b2) = residues(p2)?;
    Ok((a1 * b2 - a2 * b1).is_zero())
}

/// The class `[a(0,0) : b(0,0)]` of a pair.
pub fn lambda_of_pair(p: &(BivarPoly, BivarPoly)) -> Result<ProjPoint, ValuationError> {
    let (a, b) = residues(p)?;
    Ok(ProjPoint::from_pair(&a, &b).expect("residues are not both zero"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn pair(a: &str, b: &str) -> (BivarPoly, BivarPoly) {
        (a.parse().unwrap(), b.parse().unwrap())
    }

    #[test]
    fn sim_examples() {
        assert!(sim_pairs(&pair("1", "2"), &pair("2", "4")).unwrap());
        assert!(!sim_pairs(&pair("1", "0"), &pair("0", "1")).unwrap());
        assert!(sim_pairs(&pair("1 + x", "2"), &pair("1", "2 - y")).unwrap());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_of_pair(&pair("1", "2")).unwrap().to_string(), "[1:2]");
        assert_eq!(lambda_of_pair(&pair("1 + x", "2")).unwrap().to_string(), "[1:2]");
        assert_eq!(lambda_of_pair(&pair("0", "1")).unwrap(), ProjPoint::Finite(rat(0)));
    }

    #[test]
    fn invalid_pairs() {
        assert_eq!(lambda_of_pair(&pair("0", "0")), Err(ValuationError::InvalidPair));
        assert_eq!(lambda_of_pair(&pair("x", "1")), Err(ValuationError::InvalidPair));
        assert_eq!(
            sim_pairs(&pair("1", "1"), &pair("1 + y", "x*y")),
            Err(ValuationError::InvalidPair)
        );
    }
}
