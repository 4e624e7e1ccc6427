//! The 2-adic valuation of the reduced norm on rational quaternions.
//!
//! `w(q) = v₂(nrd(q))` is additive and satisfies `w(p + q) ≥ min(w(p), w(q))`
//! because 2 ramifies in the Hamilton quaternions. The nonzero quaternions
//! split into three cells by the sign of `w`:
//!
//! | cell   | condition | role                              |
//! |--------|-----------|-----------------------------------|
//! | `U`    | `w = 0`   | the unit group                    |
//! | `M`    | `w < 0`   | the rest of the normal subset `𝕹` |
//! | `NBar` | `w > 0`   | the complement `𝔑̄` of `𝕹`        |
//!
//! The orientation (`𝔑̄` positive) is the one for which `n̄ + 1` lands in `𝕹`.

use dashu_int::UBig;
use serde::Serialize;
use thiserror::Error;

use crate::{Rational, RationalQuaternion};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValuationError {
    #[error("valuation of zero is undefined")]
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Cell {
    U,
    M,
    #[serde(rename = "NBAR")]
    NBar,
}

/// Exponent of 2 in the numerator minus that in the denominator.
pub fn v2(r: &Rational) -> Result<i64, ValuationError> {
    if r.is_zero() {
        return Err(ValuationError::Zero);
    }
    let num = r.numerator().trailing_zeros().expect("nonzero");
    let den = r.denominator().trailing_zeros().expect("nonzero");
    Ok(num as i64 - den as i64)
}

pub fn w(q: &RationalQuaternion) -> Result<i64, ValuationError> {
    v2(&q.nrd())
}

pub fn classify(q: &RationalQuaternion) -> Result<Cell, ValuationError> {
    Ok(match w(q)?.signum() {
        0 => Cell::U,
        -1 => Cell::M,
        _ => Cell::NBar,
    })
}

/// `2^k` as a rational, for any sign of `k`.
pub fn pow2(k: i64) -> Rational {
    let p = Rational::from(UBig::ONE << k.unsigned_abs() as usize);
    if k.is_negative() {
        Rational::ONE / p
    } else {
        p
    }
}

/// Stateless view of the partition, with the set predicates used by the
/// axiom and lemma checkers. Zero belongs to no set.
#[derive(Debug, Clone, Copy, Default)]
pub struct ValuationModel;

impl ValuationModel {
    pub fn w(&self, q: &RationalQuaternion) -> Option<i64> {
        w(q).ok()
    }

    pub fn cell(&self, q: &RationalQuaternion) -> Option<Cell> {
        classify(q).ok()
    }

    /// `𝕹 = U ∪ M`.
    pub fn in_n(&self, q: &RationalQuaternion) -> bool {
        matches!(self.cell(q), Some(Cell::U | Cell::M))
    }

    pub fn in_nbar(&self, q: &RationalQuaternion) -> bool {
        self.cell(q) == Some(Cell::NBar)
    }

    pub fn in_u(&self, q: &RationalQuaternion) -> bool {
        self.cell(q) == Some(Cell::U)
    }

    pub fn in_m(&self, q: &RationalQuaternion) -> bool {
        self.cell(q) == Some(Cell::M)
    }

    /// Membership in `U·F^#`: some nonzero rational `α` has `q/α ∈ U`.
    /// Since `w(α) = 2·v₂(α)` is even, this holds iff `w(q)` is even, and
    /// then `α = 2^{w(q)/2}` works. Returns that `α`.
    pub fn unit_times_scalar(&self, q: &RationalQuaternion) -> Option<Rational> {
        let wq = self.w(q)?;
        if wq % 2 != 0 {
            return None;
        }
        let alpha = pow2(wq / 2);
        self.in_u(&q.scale(&(Rational::ONE / alpha.clone())))
            .then_some(alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::Quaternion;

    fn r(n: i64, d: i64) -> Rational {
        crate::ratio(n, d)
    }

    fn rq(a: i64, b: i64, c: i64, d: i64) -> RationalQuaternion {
        Quaternion::new(r(a, 1), r(b, 1), r(c, 1), r(d, 1))
    }

    #[test]
    fn v2_examples() {
        assert_eq!(v2(&r(4, 1)), Ok(2));
        assert_eq!(v2(&r(3, 2)), Ok(-1));
        assert_eq!(v2(&r(-12, 5)), Ok(2));
        assert_eq!(v2(&r(0, 1)), Err(ValuationError::Zero));
    }

    #[test]
    fn w_examples() {
        let q = rq(1, 1, 0, 0);
        assert_eq!(w(&q), Ok(1));
        let sq = q.clone() * q;
        assert_eq!(sq, rq(0, 2, 0, 0));
        assert_eq!(w(&sq), Ok(2));
        assert_eq!(w(&rq(0, 0, 0, 0)), Err(ValuationError::Zero));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&rq(1, 0, 0, 0)), Ok(Cell::U));
        assert_eq!(classify(&rq(-1, 0, 0, 0)), Ok(Cell::U));
        let half = Quaternion::from_scalar(r(1, 2));
        assert_eq!(w(&half), Ok(-2));
        assert_eq!(classify(&half), Ok(Cell::M));
        assert_eq!(classify(&rq(2, 0, 0, 0)), Ok(Cell::NBar));
    }

    #[test]
    fn pow2_both_signs() {
        assert_eq!(pow2(3), r(8, 1));
        assert_eq!(pow2(-2), r(1, 4));
        assert_eq!(pow2(0), r(1, 1));
    }

    #[test]
    fn unit_times_scalar_by_parity() {
        let m = ValuationModel;
        assert_eq!(m.unit_times_scalar(&rq(2, 0, 0, 0)), Some(r(2, 1)));
        assert_eq!(m.unit_times_scalar(&rq(1, 1, 0, 0)), None);
        assert_eq!(m.unit_times_scalar(&rq(0, 2, 0, 0)), Some(r(2, 1)));
        assert!(m.unit_times_scalar(&rq(0, 0, 0, 0)).is_none());
    }
}
