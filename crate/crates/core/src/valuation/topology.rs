use crate::algebra::{BivarPoly, ExtRat, Rat};

use super::qmv::QuasiMonomialVal;
use super::ValuationError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Gt,
    Lt,
}

fn values(
    v: &QuasiMonomialVal,
    num: &BivarPoly,
    den: &BivarPoly,
) -> Result<(ExtRat, ExtRat), ValuationError> {
    let d = v.eval(den);
    if d.is_infinite() {
        return Err(ValuationError::DivisionUndefined);
    }
    Ok((v.eval(num), d))
}

/// `num/den` lies in the valuation ring of `ν`.
pub fn zariski_member(
    v: &QuasiMonomialVal,
    num: &BivarPoly,
    den: &BivarPoly,
) -> Result<bool, ValuationError> {
    let (n, d) = values(v, num, den)?;
    Ok(n >= d)
}

/// `num/den` lies in the maximal ideal of the valuation ring of `ν`.
pub fn patch_member(
    v: &QuasiMonomialVal,
    num: &BivarPoly,
    den: &BivarPoly,
) -> Result<bool, ValuationError> {
    let (n, d) = values(v, num, den)?;
    Ok(n > d)
}

/// `ν(φ) > α` or `ν(φ) < α`.
pub fn weak_member(v: &QuasiMonomialVal, phi: &BivarPoly, alpha: &Rat, sense: Sense) -> bool {
    let value = v.eval(phi);
    match sense {
        Sense::Gt => value > *alpha,
        Sense::Lt => value < *alpha,
    }
}
