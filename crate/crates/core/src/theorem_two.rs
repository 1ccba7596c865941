//! The quadratic Hecke character of conductor `pO_F` on Shintani points and
//! the cycle-sum formula for `h_K`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::shintani::{ShintaniCycle, ShintaniPoint, ShintaniSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeckeValue {
    Minus,
    Zero,
    Plus,
}

impl HeckeValue {
    pub fn value(self) -> i8 {
        match self {
            HeckeValue::Minus => -1,
            HeckeValue::Zero => 0,
            HeckeValue::Plus => 1,
        }
    }
}

/// `χ(r·pO_F)`: zero on `R ∩ O_F`, otherwise `+1` iff `π(r)` is a square in
/// `𝔽_{p²}^×` (i.e. an even power of any generator).
pub fn hecke_chi(set: &ShintaniSet, r: &ShintaniPoint) -> HeckeValue {
    let z = set.pi_map(r);
    match set.residue_field().is_square(z) {
        Err(_) => HeckeValue::Zero,
        Ok(true) => HeckeValue::Plus,
        Ok(false) => HeckeValue::Minus,
    }
}

#[derive(Debug, Clone)]
pub struct CycleContribution {
    pub cycle: ShintaniCycle,
    pub chi: HeckeValue,
    /// `χ(rep) Σ_i Q_F(ε^i ∗ rep)`.
    pub signed_sum: BigRational,
}

#[derive(Debug, Clone)]
pub struct Thm2Result {
    pub h: u64,
    /// Common cycle length `ℓ_{F,p}`.
    pub ell: u64,
    /// One entry per nontrivial cycle, sorted by representative.
    pub cycles: Vec<CycleContribution>,
}

fn q_num(tr: i128, r: &ShintaniPoint) -> i128 {
    let (a, b) = (r.a() as i128, r.b() as i128);
    tr * a * a + 4 * a * b + tr * b * b
}

/// `h_K = ¼ Σ_{rep} χ(rep) Σ_{i=1..ℓ} Q_F(ε^i ∗ rep)` over nontrivial cycles.
pub fn class_number_thm2(set: &ShintaniSet) -> Result<Thm2Result> {
    let dec = set.cycle_decompose()?;
    let tr = set.trace_eps() as i128;
    let tp = set.tp() as i128;
    let den = BigInt::from(tp * tp);
    let mut total: i128 = 0;
    let mut cycles = Vec::with_capacity(dec.cycles.len());
    for cycle in dec.cycles {
        let chi = hecke_chi(set, &cycle.rep);
        let mut s: i128 = 0;
        for r in &cycle.points {
            if hecke_chi(set, r) != chi {
                return Err(Error::InternalInconsistency(format!(
                    "character not constant on the cycle of {}",
                    cycle.rep
                )));
            }
            s = s
                .checked_add(q_num(tr, r))
                .ok_or_else(|| Error::TooLarge(format!("Q_F cycle sum at {}", cycle.rep)))?;
        }
        let signed = s * chi.value() as i128;
        total = total
            .checked_add(signed)
            .ok_or_else(|| Error::TooLarge("Q_F total".into()))?;
        cycles.push(CycleContribution {
            cycle,
            chi,
            signed_sum: BigRational::new(BigInt::from(signed), den.clone()),
        });
    }
    let norm = 4 * tp * tp;
    if total % norm != 0 {
        return Err(Error::NonIntegralResult(format!("{total} / {norm}")));
    }
    let h = total / norm;
    if h <= 0 {
        return Err(Error::NonIntegralResult(format!("non-positive quotient {h}")));
    }
    Ok(Thm2Result { h: h.to_u64().expect("positive i128 quotient fits"), ell: dec.length, cycles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;

    #[test]
    fn chi_values() {
        let f = FieldContext::new(3).unwrap();
        let set = ShintaniSet::new(&f, 7).unwrap();
        assert_eq!(hecke_chi(&set, &set.point(1, 0).unwrap()), HeckeValue::Plus);
        assert_eq!(hecke_chi(&set, &set.point(7, 0).unwrap()), HeckeValue::Zero);
        let rho = set.residue_field().generator_from(6, 1).unwrap();
        let c = set.coset_reps(&rho, 1).unwrap();
        assert_eq!(hecke_chi(&set, &c.fiber[0]), HeckeValue::Minus);
    }

    #[test]
    fn example_d3_p7() {
        let f = FieldContext::new(3).unwrap();
        let set = ShintaniSet::new(&f, 7).unwrap();
        let r = class_number_thm2(&set).unwrap();
        assert_eq!((r.h, r.ell, r.cycles.len()), (2, 8, 6));
        let mut got: Vec<BigRational> = r.cycles.iter().map(|c| c.signed_sum.clone()).collect();
        got.sort();
        let mut want: Vec<BigRational> = [-220, 228, -188, 212, -180, 204]
            .iter()
            .map(|&n| BigRational::new(BigInt::from(n), BigInt::from(7)))
            .collect();
        want.sort();
        assert_eq!(got, want);
    }
}
