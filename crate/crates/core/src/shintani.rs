//! The Shintani set `R_{F,p}`, the map `π: R → 𝔽_{p²}`, and the orbits of the
//! twisted unit action `ε ∗ r`.
//!
//! Every point of `R` has the shape `A/(tp) + (B/(tp))ε` with integers
//! `A ∈ (0, tp]`, `B ∈ [0, tp)` and `A + sB ≡ 0 (mod t)`, so points are stored
//! as the numerator pair over the common denominator `tp`. All operations here
//! are integer arithmetic on those numerators.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::{eligibility, FieldContext, QuadRat};
use crate::residue::{Generator, ResidueElem, ResidueField};

/// Upper bound on `(tp)²`, the size of the numerator grid.
const MAX_GRID: u64 = 1 << 28;

/// `r = r₁ + r₂ε` with `r₁ = a/den ∈ (0,1]`, `r₂ = b/den ∈ [0,1)`, `den = tp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShintaniPoint {
    a: i64,
    b: i64,
    den: i64,
}

impl ShintaniPoint {
    /// Numerator of `r₁` over `tp`.
    pub fn a(&self) -> i64 {
        self.a
    }

    /// Numerator of `r₂` over `tp`.
    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn r1(&self) -> Ratio<i64> {
        Ratio::new(self.a, self.den)
    }

    pub fn r2(&self) -> Ratio<i64> {
        Ratio::new(self.b, self.den)
    }
}

/// Lexicographic on `(r₁, r₂)`; only meaningful within one Shintani set.
impl Ord for ShintaniPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.a, self.b).cmp(&(other.a, other.b))
    }
}

impl PartialOrd for ShintaniPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ShintaniPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.r1())?;
        if self.b != 0 {
            write!(f, "+{}ε", self.r2())?;
        }
        Ok(())
    }
}

/// `κ_i = 1 − {si/t}_{[0,1)} + (i/t)ε`, the points of `R ∩ O_F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelElem {
    pub index: i64,
    pub point: ShintaniPoint,
}

/// The fiber `π⁻¹(ρ^m)`: a base point `x̃ + ỹε` and its `t` translates by the
/// kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetRep {
    pub m: u64,
    pub residue: ResidueElem,
    pub base: ShintaniPoint,
    /// `x̃_i(m) + ỹ_i(m)ε` for `i = 1..=t`.
    pub fiber: Vec<ShintaniPoint>,
}

impl CosetRep {
    /// `(x_i(m), y_i(m)) = (tp(2x̃_i − 1), tp(2ỹ_i − 1))` for each fiber point.
    pub fn scaled(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.fiber.iter().map(scale)
    }
}

fn scale(r: &ShintaniPoint) -> (i64, i64) {
    (2 * r.a - r.den, 2 * r.b - r.den)
}

/// One orbit of `ε ∗ ·` on `R ∖ O_F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShintaniCycle {
    /// Lexicographically least point of the orbit.
    pub rep: ShintaniPoint,
    /// `ε^i ∗ rep` for `i = 1..=len`; the last entry is `rep` itself.
    pub points: Vec<ShintaniPoint>,
}

impl ShintaniCycle {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct CycleDecomposition {
    /// Sorted by representative.
    pub cycles: Vec<ShintaniCycle>,
    /// `R ∩ O_F`, sorted.
    pub trivial: Vec<ShintaniPoint>,
    /// Common length of the nontrivial cycles.
    pub length: u64,
}

/// `R_{F,p}` together with the field data its arithmetic needs.
#[derive(Debug, Clone)]
pub struct ShintaniSet {
    p: i64,
    s: i64,
    t: i64,
    tp: i64,
    trace_eps: i64,
    residue: ResidueField,
}

fn small(x: &BigInt, what: &str) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::TooLarge(format!("{what} = {x} does not fit in 64 bits")))
}

impl ShintaniSet {
    /// Fails with [`Error::Ineligible`] unless `(d, p)` is eligible.
    pub fn new(field: &FieldContext, p: u64) -> Result<Self> {
        let report = eligibility(field, p);
        if !report.eligible() {
            return Err(Error::Ineligible(report));
        }
        let s = small(field.s(), "s")?;
        let t = small(field.t(), "t")?;
        let trace_eps = small(field.trace_eps(), "Tr(eps)")?;
        let tp = t
            .checked_mul(p as i64)
            .filter(|&tp| (tp as u64).checked_mul(tp as u64).is_some_and(|g| g <= MAX_GRID))
            .ok_or_else(|| Error::TooLarge(format!("t*p grid for t = {t}, p = {p}")))?;
        Ok(ShintaniSet { p: p as i64, s, t, tp, trace_eps, residue: ResidueField::new(field, p)? })
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    /// The common denominator `tp`.
    pub fn tp(&self) -> i64 {
        self.tp
    }

    pub fn trace_eps(&self) -> i64 {
        self.trace_eps
    }

    pub fn residue_field(&self) -> &ResidueField {
        &self.residue
    }

    /// `|R| = tp²`.
    pub fn len(&self) -> usize {
        (self.t * self.p * self.p) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The point `A/(tp) + (B/(tp))ε` if it lies in `R`.
    pub fn point(&self, a: i64, b: i64) -> Option<ShintaniPoint> {
        let r = ShintaniPoint { a, b, den: self.tp };
        self.contains(&r).then_some(r)
    }

    pub fn contains(&self, r: &ShintaniPoint) -> bool {
        r.den == self.tp
            && 0 < r.a
            && r.a <= self.tp
            && 0 <= r.b
            && r.b < self.tp
            && (r.a as i128 + self.s as i128 * r.b as i128).rem_euclid(self.t as i128) == 0
    }

    /// All of `R`, in lexicographic order of `(r₁, r₂)`.
    pub fn enumerate(&self) -> Vec<ShintaniPoint> {
        let mut out = Vec::with_capacity(self.len());
        for a in 1..=self.tp {
            for b in 0..self.tp {
                let r = ShintaniPoint { a, b, den: self.tp };
                if self.contains(&r) {
                    out.push(r);
                }
            }
        }
        out
    }

    pub fn kernel_elements(&self) -> Vec<KernelElem> {
        (0..self.t)
            .map(|i| {
                let frac_num = (self.s as i128 * i as i128).rem_euclid(self.t as i128) as i64;
                let point = ShintaniPoint { a: self.tp - frac_num * self.p, b: i * self.p, den: self.tp };
                KernelElem { index: i, point }
            })
            .collect()
    }

    /// `π(r) = p·r mod pO_F`, using `p·r = (A + sB)/t + Bθ`.
    pub fn pi_map(&self, r: &ShintaniPoint) -> ResidueElem {
        let x = (r.a as i128 + self.s as i128 * r.b as i128) / self.t as i128;
        let p = self.p as i128;
        ResidueElem { x: x.rem_euclid(p) as u64, y: (r.b as i128).rem_euclid(p) as u64 }
    }

    /// `r₁ + r₂ε` as an element `u + vθ` of `F`.
    pub fn as_element(&self, r: &ShintaniPoint) -> QuadRat {
        let den = BigInt::from(self.tp);
        let u = BigRational::new(BigInt::from(r.a as i128 + self.s as i128 * r.b as i128), den.clone());
        let v = BigRational::new(BigInt::from(self.t as i128 * r.b as i128), den);
        QuadRat::new(u, v)
    }

    /// `ε` reduced mod `p`.
    pub fn eps_residue(&self) -> ResidueElem {
        self.residue.elem(self.s.rem_euclid(self.p), self.t.rem_euclid(self.p))
    }

    /// `ε ∗ (r₁ + r₂ε) = (1 − r₂) + {r₁ + Tr(ε)r₂}_{[0,1)} ε`.
    pub fn eps_action(&self, r: &ShintaniPoint) -> ShintaniPoint {
        let b = (r.a as i128 + self.trace_eps as i128 * r.b as i128).rem_euclid(self.tp as i128);
        ShintaniPoint { a: self.tp - r.b, b: b as i64, den: self.tp }
    }

    /// The fiber over an arbitrary nonzero residue `x + yθ`.
    pub fn fiber_of(&self, z: ResidueElem, m: u64) -> CosetRep {
        let (tp, t, p) = (self.tp as i128, self.t as i128, self.p as i128);
        let (x, y) = (z.x as i128, z.y as i128);
        let s = self.s as i128;
        // x̃ = {x/p − sy/(tp)}_(0,1],  ỹ = {y/(tp)}_[0,1)
        let a0 = (t * x - s * y - 1).rem_euclid(tp) + 1;
        let b0 = y.rem_euclid(tp);
        let base = ShintaniPoint { a: a0 as i64, b: b0 as i64, den: self.tp };
        let fiber = (1..=t)
            .map(|i| {
                let shift = (s * i).rem_euclid(t) * p;
                let a = (a0 + tp - shift - 1).rem_euclid(tp) + 1;
                let b = (b0 + i * p).rem_euclid(tp);
                ShintaniPoint { a: a as i64, b: b as i64, den: self.tp }
            })
            .collect();
        CosetRep { m, residue: z, base, fiber }
    }

    /// The fiber `π⁻¹(ρ^m)` for `1 ≤ m ≤ p² − 1`.
    pub fn coset_reps(&self, rho: &Generator, m: u64) -> Result<CosetRep> {
        let max = self.residue.group_order();
        if m == 0 || m > max {
            return Err(Error::MOutOfRange { m, max });
        }
        Ok(self.fiber_of(self.residue.pow(rho.rho, m), m))
    }

    fn grid_index(&self, r: &ShintaniPoint) -> usize {
        ((r.a - 1) * self.tp + r.b) as usize
    }

    /// Splits `R` into the nontrivial orbits of `ε ∗ ·` and the kernel points.
    pub fn cycle_decompose(&self) -> Result<CycleDecomposition> {
        let expected = self.residue.element_order(self.eps_residue())?;
        let mut seen = vec![false; (self.tp * self.tp) as usize];
        let mut cycles = Vec::new();
        let mut trivial = Vec::new();
        // enumerate() is lexicographic, so the first unseen point of each
        // orbit is its least element
        for r in self.enumerate() {
            if seen[self.grid_index(&r)] {
                continue;
            }
            if self.pi_map(&r).is_zero() {
                seen[self.grid_index(&r)] = true;
                trivial.push(r);
                continue;
            }
            let mut points = Vec::with_capacity(expected as usize);
            let mut cur = r;
            loop {
                cur = self.eps_action(&cur);
                let idx = self.grid_index(&cur);
                if seen[idx] || points.len() > self.len() {
                    return Err(Error::InternalInconsistency(format!(
                        "eps action is not a permutation near {cur}"
                    )));
                }
                seen[idx] = true;
                points.push(cur);
                if cur == r {
                    break;
                }
            }
            if points.len() as u64 != expected {
                return Err(Error::InternalInconsistency(format!(
                    "orbit of {r} has length {}, expected {expected}",
                    points.len()
                )));
            }
            cycles.push(ShintaniCycle { rep: r, points });
        }
        Ok(CycleDecomposition { cycles, trivial, length: expected })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(d: u64, p: u64) -> ShintaniSet {
        ShintaniSet::new(&FieldContext::new(d).unwrap(), p).unwrap()
    }

    #[test]
    fn sizes() {
        let r = set(3, 7);
        let pts = r.enumerate();
        assert_eq!(pts.len(), 49);
        assert_eq!(pts.iter().filter(|x| !r.pi_map(x).is_zero()).count(), 48);
        assert_eq!(set(6, 7).enumerate().len(), 98);
    }

    #[test]
    fn rejects_ineligible() {
        let f = FieldContext::new(3).unwrap();
        assert!(matches!(ShintaniSet::new(&f, 13), Err(Error::Ineligible(_))));
    }

    #[test]
    fn kernels() {
        let r = set(3, 7);
        let k = r.kernel_elements();
        assert_eq!(k.len(), 1);
        assert_eq!((k[0].point.r1(), k[0].point.r2()), (Ratio::new(1, 1), Ratio::new(0, 1)));

        for (d, p) in [(6, 7), (2, 11)] {
            let r = set(d, p);
            let k = r.kernel_elements();
            assert_eq!(k.len(), 2);
            assert_eq!(k[0].point.r1(), Ratio::new(1, 1));
            assert_eq!((k[1].point.r1(), k[1].point.r2()), (Ratio::new(1, 2), Ratio::new(1, 2)));
            for e in &k {
                assert!(r.contains(&e.point));
                assert!(r.pi_map(&e.point).is_zero());
            }
        }
    }

    #[test]
    fn pi_examples() {
        let r = set(3, 7);
        let res = r.residue_field();
        assert_eq!(r.pi_map(&r.point(1, 1).unwrap()), res.elem(3, 1));
        assert_eq!(r.pi_map(&r.point(4, 1).unwrap()), res.elem(6, 1));
    }

    #[test]
    fn eps_action_examples() {
        let r = set(3, 7);
        assert_eq!(r.eps_action(&r.point(1, 1).unwrap()), r.point(6, 5).unwrap());
        assert_eq!(r.eps_action(&r.point(7, 0).unwrap()), r.point(7, 0).unwrap());
        let start = r.point(1, 0).unwrap();
        let mut cur = r.eps_action(&start);
        let mut n = 1;
        while cur != start {
            cur = r.eps_action(&cur);
            n += 1;
        }
        assert_eq!(n, 8);
    }

    #[test]
    fn coset_examples() {
        let r = set(3, 7);
        let rho = r.residue_field().generator_from(6, 1).unwrap();
        let c1 = r.coset_reps(&rho, 1).unwrap();
        assert_eq!((c1.base.r1(), c1.base.r2()), (Ratio::new(4, 7), Ratio::new(1, 7)));
        assert_eq!(c1.scaled().collect::<Vec<_>>(), [(1, -5)]);
        let c48 = r.coset_reps(&rho, 48).unwrap();
        assert_eq!(c48.scaled().collect::<Vec<_>>(), [(-5, -7)]);
        assert_eq!(r.coset_reps(&rho, 0), Err(Error::MOutOfRange { m: 0, max: 48 }));
        assert_eq!(r.coset_reps(&rho, 49), Err(Error::MOutOfRange { m: 49, max: 48 }));

        let r6 = set(6, 7);
        let rho6 = r6.residue_field().find_generator().unwrap();
        for m in [1, 17, 48] {
            let c = r6.coset_reps(&rho6, m).unwrap();
            assert_eq!(c.fiber.len(), 2);
            let target = r6.residue_field().pow(rho6.rho, m);
            assert!(c.fiber.iter().all(|x| r6.contains(x) && r6.pi_map(x) == target));
        }
    }

    #[test]
    fn cycles_d3_p7() {
        let r = set(3, 7);
        let dec = r.cycle_decompose().unwrap();
        assert_eq!(dec.length, 8);
        assert_eq!(dec.cycles.len(), 6);
        assert_eq!(dec.trivial, [r.point(7, 0).unwrap()]);
        for c in &dec.cycles {
            assert_eq!(*c.points.last().unwrap(), c.rep);
            assert!(c.points.iter().all(|x| *x >= c.rep));
        }
    }

    #[test]
    fn cycles_d3_p19() {
        let dec = set(3, 19).cycle_decompose().unwrap();
        assert_eq!((dec.cycles.len(), dec.length), (72, 5));
    }
}
