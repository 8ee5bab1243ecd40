//! The trace lower bound for totally positive cyclotomic integers and the
//! divisibility of vanishing sums of p-power roots of unity.

use super::{CycloError, Cyclotomic, Rational};
use crate::arith;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SiegelOutcome {
    IsOne,
    /// Totally positive, not 1, average of conjugates `>= 3/2`.
    AverageAtLeastThreeHalves(Rational),
    NotTotallyPositive,
    /// Totally positive, not 1, average below `3/2`: a counterexample to the bound.
    BelowBound(Rational),
}

impl SiegelOutcome {
    pub fn is_violation(&self) -> bool {
        matches!(self, SiegelOutcome::BelowBound(_))
    }
}

/// Classifies a cyclotomic integer against the `3/2` average-of-conjugates bound.
pub fn siegel_bound_check(a: &Cyclotomic) -> Result<SiegelOutcome, CycloError> {
    if !a.is_algebraic_integer() {
        return Err(CycloError::NotAlgebraicInteger(a.to_string()));
    }
    if a.is_one() {
        return Ok(SiegelOutcome::IsOne);
    }
    if !a.is_totally_positive() {
        return Ok(SiegelOutcome::NotTotallyPositive);
    }
    let avg = a.average_of_conjugates();
    let bound = Rational::new(3.into(), 2.into());
    Ok(if avg >= bound {
        SiegelOutcome::AverageAtLeastThreeHalves(avg)
    } else {
        SiegelOutcome::BelowBound(avg)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSumOutcome {
    /// The sum vanished; `divisible` records whether `p` divides `count`.
    Zero { count: usize, divisible: bool },
    Nonzero { sum: Cyclotomic },
}

/// Sums roots of unity of p-power order and, when the sum vanishes, tests
/// whether `p` divides the number of terms.
pub fn p_power_root_sum_check(terms: &[Cyclotomic], p: u64) -> Result<RootSumOutcome, CycloError> {
    for (index, t) in terms.iter().enumerate() {
        let order = t.root_of_unity_order();
        let ok = order.is_some_and(|o| arith::p_part(o, p) == o);
        if !ok {
            return Err(CycloError::NotPPowerRoot { index, p });
        }
    }
    let sum = Cyclotomic::sum(terms);
    if sum.is_zero() {
        Ok(RootSumOutcome::Zero {
            count: terms.len(),
            divisible: (terms.len() as u64).is_multiple_of(p),
        })
    } else {
        Ok(RootSumOutcome::Nonzero { sum })
    }
}
