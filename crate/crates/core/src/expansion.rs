//! Greedy base-`ε_F` expansions of positive elements of `F`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::{eligibility, exact_floor, FieldContext, QuadRat};
use crate::residue::ResidueField;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EpsExpansion {
    /// `a_n, …, a_0`; empty when `α < 1`.
    pub integer_digits: Vec<u64>,
    pub preperiod: Vec<u64>,
    /// Minimal repeating block; empty for a terminating expansion.
    pub period: Vec<u64>,
}

fn write_digits(f: &mut fmt::Formatter<'_>, digits: &[u64]) -> fmt::Result {
    for &d in digits {
        if d < 10 {
            write!(f, "{d}")?;
        } else {
            write!(f, "{{{d}}}")?;
        }
    }
    Ok(())
}

/// `0.01(32202230)`: digits above 9 are written in braces, e.g. `{15}`.
impl fmt::Display for EpsExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.integer_digits.is_empty() {
            f.write_str("0")?;
        } else {
            write_digits(f, &self.integer_digits)?;
        }
        if self.preperiod.is_empty() && self.period.is_empty() {
            return Ok(());
        }
        f.write_str(".")?;
        write_digits(f, &self.preperiod)?;
        if !self.period.is_empty() {
            f.write_str("(")?;
            write_digits(f, &self.period)?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn digit(n: BigInt) -> u64 {
    n.to_u64().expect("greedy digit is bounded by Tr(eps)")
}

/// Smallest `k ≥ 1` such that `period` is a repetition of its first `k` digits.
fn primitive_len(period: &[u64]) -> usize {
    let n = period.len();
    (1..=n)
        .find(|&k| n.is_multiple_of(k) && (k..n).all(|i| period[i] == period[i - k]))
        .unwrap_or(n)
}

/// Expands `α > 0` greedily in base `ε_F` until the fractional state repeats.
pub fn eps_expand(field: &FieldContext, alpha: &QuadRat, max_digits: usize) -> Result<EpsExpansion> {
    if field.sign(alpha) != Ordering::Greater {
        return Err(Error::NonPositive);
    }
    let eps = QuadRat::from(field.eps());
    let top = field.trace_eps() - 1u32;

    // integer part: a_k = ⌊rem / ε^k⌋ from the largest power ε^n ≤ α down
    let mut powers = alloc::vec![QuadRat::from_integer(1)];
    loop {
        let next = field.mul_rat(powers.last().unwrap(), &eps);
        if field.cmp_real(&next, alpha) == Ordering::Greater {
            break;
        }
        powers.push(next);
    }
    let mut integer_digits = Vec::new();
    let mut rem = alpha.clone();
    if field.cmp_real(alpha, &powers[0]) != Ordering::Less {
        for pw in powers.iter().rev() {
            let a = exact_floor(field, &field.mul_rat(&rem, &field.inv_rat(pw)));
            rem = &rem - &field.mul_rat(&QuadRat::from_integer(a.clone()), pw);
            integer_digits.push(digit(a));
        }
    }

    let mut seen: BTreeMap<(BigRational, BigRational), usize> = BTreeMap::new();
    let mut digits = Vec::new();
    let mut state = rem;
    loop {
        if state.is_zero() {
            return Ok(EpsExpansion { integer_digits, preperiod: digits, period: Vec::new() });
        }
        if let Some(&start) = seen.get(&(state.u.clone(), state.v.clone())) {
            let period = digits.split_off(start);
            if primitive_len(&period) != period.len() {
                return Err(Error::InternalInconsistency(format!(
                    "period of length {} is not primitive",
                    period.len()
                )));
            }
            if period.iter().all(|&d| BigInt::from(d) == top) {
                return Err(Error::InternalInconsistency("greedy expansion ended in the forbidden tail".into()));
            }
            return Ok(EpsExpansion { integer_digits, preperiod: digits, period });
        }
        if digits.len() >= max_digits {
            return Err(Error::MaxDigitsExceeded(max_digits));
        }
        seen.insert((state.u.clone(), state.v.clone()), digits.len());
        let shifted = field.mul_rat(&eps, &state);
        let a = exact_floor(field, &shifted);
        state = &shifted - &QuadRat::from_integer(a.clone());
        digits.push(digit(a));
    }
}

/// `10·t·p²`, comfortably above the number of possible states.
pub fn default_max_digits(field: &FieldContext, p: u64) -> usize {
    let t = field.t().to_u64().unwrap_or(u64::MAX);
    t.saturating_mul(p).saturating_mul(p).saturating_mul(10).min(usize::MAX as u64) as usize
}

/// The expansion of `1/p`, with its period checked against `ord(ε mod p)`.
pub fn inv_p_expansion(field: &FieldContext, p: u64, max_digits: usize) -> Result<EpsExpansion> {
    let report = eligibility(field, p);
    if !report.eligible() {
        return Err(Error::Ineligible(report));
    }
    let e = eps_expand(field, &QuadRat::from_ratio(1, p), max_digits)?;
    let res = ResidueField::new(field, p)?;
    let order = res.element_order(res.reduce(field.s(), field.t()))?;
    if e.period.len() as u64 != order {
        return Err(Error::InternalInconsistency(format!(
            "period {} of 1/{p} differs from ord(eps mod p) = {order}",
            e.period.len()
        )));
    }
    Ok(e)
}

/// `ℓ_{F,p}`.
pub fn period_length_of_inv_p(field: &FieldContext, p: u64) -> Result<u64> {
    inv_p_expansion(field, p, default_max_digits(field, p)).map(|e| e.period.len() as u64)
}

impl EpsExpansion {
    /// Sum of the digit string as an element of `F`, with the period
    /// summed as a geometric series.
    pub fn value(&self, field: &FieldContext) -> QuadRat {
        let eps = QuadRat::from(field.eps());
        let inv = field.inv_rat(&eps);
        let mut acc = QuadRat::zero();
        for &d in &self.integer_digits {
            acc = &field.mul_rat(&acc, &eps) + &QuadRat::from_integer(d);
        }
        let mut scale = QuadRat::from_integer(1);
        for &d in &self.preperiod {
            scale = field.mul_rat(&scale, &inv);
            acc = &acc + &field.mul_rat(&QuadRat::from_integer(d), &scale);
        }
        if self.period.is_empty() {
            return acc;
        }
        let mut block = QuadRat::zero();
        let mut s = scale.clone();
        for &d in &self.period {
            s = field.mul_rat(&s, &inv);
            block = &block + &field.mul_rat(&QuadRat::from_integer(d), &s);
        }
        // s = scale·ε^{−L}; the tail is block / (1 − ε^{−L})
        let ratio = field.mul_rat(&s, &field.inv_rat(&scale));
        let one_minus = &QuadRat::from_integer(1) - &ratio;
        &acc + &field.mul_rat(&block, &field.inv_rat(&one_minus))
    }
}
