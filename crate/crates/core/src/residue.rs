//! `O_F/pO_F ≅ 𝔽_{p²}` for an inert prime `p`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::FieldContext;

/// `x + yθ + pO_F`, coordinates reduced to `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueElem {
    pub x: u64,
    pub y: u64,
}

impl ResidueElem {
    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }
}

impl fmt::Display for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}θ", self.x, self.y)
    }
}

/// A generator `ρ = a + bθ` of `𝔽_{p²}^×`, with `0 ≤ a, b < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    pub rho: ResidueElem,
    pub order: u64,
}

impl Generator {
    pub fn a(&self) -> u64 {
        self.rho.x
    }

    pub fn b(&self) -> u64 {
        self.rho.y
    }
}

/// Multiplication table data for `𝔽_p[θ]/(θ² − Tθ + N)`.
#[derive(Debug, Clone)]
pub struct ResidueField {
    p: u64,
    trace: u64,
    norm: u64,
    group_order: u64,
    // prime factors of p² − 1, computed once
    order_factors: Vec<(u64, u32)>,
}

impl ResidueField {
    /// Assumes `p` is an odd prime inert in `F`; arithmetic is still
    /// well-defined otherwise but the ring is not a field.
    pub fn new(field: &FieldContext, p: u64) -> Result<Self> {
        if p < 2 || p > u32::MAX as u64 {
            return Err(Error::TooLarge(alloc::format!("prime {p} out of supported range")));
        }
        let pi = p as i64;
        let group_order = p * p - 1;
        Ok(ResidueField {
            p,
            trace: field.trace_theta().rem_euclid(pi) as u64,
            norm: field.norm_theta().rem_euclid(pi) as u64,
            group_order,
            order_factors: arith::factorize(group_order),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `p² − 1`.
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn order_factors(&self) -> &[(u64, u32)] {
        &self.order_factors
    }

    pub fn elem(&self, x: i64, y: i64) -> ResidueElem {
        let p = self.p as i64;
        ResidueElem { x: x.rem_euclid(p) as u64, y: y.rem_euclid(p) as u64 }
    }

    pub fn reduce(&self, x: &BigInt, y: &BigInt) -> ResidueElem {
        let p = BigInt::from(self.p);
        let r = |v: &BigInt| {
            let m = v % &p;
            let m = if m < BigInt::from(0) { m + &p } else { m };
            m.to_u64().expect("residue below p")
        };
        ResidueElem { x: r(x), y: r(y) }
    }

    pub fn one(&self) -> ResidueElem {
        ResidueElem { x: 1 % self.p, y: 0 }
    }

    pub fn mul(&self, u: ResidueElem, v: ResidueElem) -> ResidueElem {
        let p = self.p as u128;
        let (ux, uy, vx, vy) = (u.x as u128, u.y as u128, v.x as u128, v.y as u128);
        let yy = uy * vy % p;
        // θ² = Tθ − N
        let x = (ux * vx + (p - self.norm as u128) * yy) % p;
        let y = (ux * vy + uy * vx + self.trace as u128 * yy) % p;
        ResidueElem { x: x as u64, y: y as u64 }
    }

    pub fn pow(&self, base: ResidueElem, mut e: u64) -> ResidueElem {
        let mut acc = self.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order, by stripping prime factors off `p² − 1`.
    pub fn element_order(&self, x: ResidueElem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut order = self.group_order;
        for &(q, e) in &self.order_factors {
            for _ in 0..e {
                if self.pow(x, order / q) == self.one() {
                    order /= q;
                } else {
                    break;
                }
            }
        }
        Ok(order)
    }

    pub fn is_generator(&self, x: ResidueElem) -> bool {
        !x.is_zero()
            && self
                .order_factors
                .iter()
                .all(|&(q, _)| self.pow(x, self.group_order / q) != self.one())
    }

    /// Smallest `(a, b)` in scan order `b = 1, 2, …` then `a = 0, 1, …` whose
    /// residue generates `𝔽_{p²}^×`.
    pub fn find_generator(&self) -> Result<Generator> {
        for y in 1..self.p {
            for x in 0..self.p {
                let rho = ResidueElem { x, y };
                if self.is_generator(rho) {
                    return Ok(Generator { rho, order: self.group_order });
                }
            }
        }
        Err(Error::InternalInconsistency(alloc::format!(
            "no generator of F_{{p^2}}^x for p = {}; is p inert?",
            self.p
        )))
    }

    /// Checks a caller-pinned `ρ = a + bθ`.
    pub fn generator_from(&self, a: u64, b: u64) -> Result<Generator> {
        let rho = ResidueElem { x: a % self.p, y: b % self.p };
        if rho.y == 0 || !self.is_generator(rho) {
            return Err(Error::NotGenerator { a, b, p: self.p });
        }
        Ok(Generator { rho, order: self.group_order })
    }

    /// Every full-order element, in scan order.
    pub fn all_generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        for y in 1..self.p {
            for x in 0..self.p {
                let rho = ResidueElem { x, y };
                if self.is_generator(rho) {
                    out.push(Generator { rho, order: self.group_order });
                }
            }
        }
        out
    }

    /// Euler's criterion in `𝔽_{p²}`: squares are the even powers of a generator.
    pub fn is_square(&self, x: ResidueElem) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.pow(x, self.group_order / 2) == self.one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f49() -> ResidueField {
        ResidueField::new(&FieldContext::new(3).unwrap(), 7).unwrap()
    }

    #[test]
    fn pow_examples() {
        let r = f49();
        let rho = r.elem(6, 1);
        assert_eq!(r.pow(rho, 0), r.one());
        assert_eq!(r.pow(rho, 2), r.elem(39, 12));
        assert_eq!(r.pow(rho, 2), r.elem(4, 5));
        assert_eq!(r.pow(r.elem(2, 1), 8), r.one());
    }

    #[test]
    fn order_examples() {
        let r = f49();
        assert_eq!(r.element_order(r.one()).unwrap(), 1);
        assert_eq!(r.element_order(r.elem(2, 1)).unwrap(), 8);
        assert_eq!(r.element_order(r.elem(6, 1)).unwrap(), 48);
        assert_eq!(r.element_order(r.elem(0, 0)), Err(Error::ZeroElement));
    }

    #[test]
    fn generators() {
        let r = f49();
        let g = r.find_generator().unwrap();
        assert_eq!(g.order, 48);
        assert!(g.b() >= 1);
        for &(q, _) in r.order_factors() {
            assert_ne!(r.pow(g.rho, 48 / q), r.one());
        }
        assert!(r.generator_from(6, 1).is_ok());
        assert!(r.generator_from(2, 1).is_err());
        let r19 = ResidueField::new(&FieldContext::new(3).unwrap(), 19).unwrap();
        assert!(r19.generator_from(1, 4).is_ok());
        assert_eq!(r19.element_order(r19.elem(1, 4)).unwrap(), 360);
    }

    #[test]
    fn squares() {
        let r = f49();
        let rho = r.elem(6, 1);
        assert!(r.is_square(r.one()).unwrap());
        assert!(!r.is_square(rho).unwrap());
        assert!(r.is_square(r.mul(rho, rho)).unwrap());
        assert_eq!(r.is_square(r.elem(0, 0)), Err(Error::ZeroElement));
    }
}
