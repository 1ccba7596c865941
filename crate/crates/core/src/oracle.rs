//! Brute-force evaluation of the Bernoulli-polynomial form of Shintani's
//! formula over every point of `R_{F,p}`.
//!
//! Deliberately naive and independent of the `Q_F`, cycle and residue-field
//! code: points are found by testing membership of every candidate with
//! denominator `tp`, and the character is read off the norm of `p·r` through
//! the Legendre symbol (a nonzero `z ∈ 𝔽_{p²}` is a square iff `N(z)` is a
//! square in `𝔽_p`).

use alloc::format;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::legendre;
use crate::error::{Error, Result};
use crate::field::{eligibility, FieldContext, QuadInt};

pub fn bernoulli_eval(l: u32, x: &BigRational) -> Result<BigRational> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    match l {
        0 => Ok(BigRational::one()),
        1 => Ok(x - half),
        2 => Ok(x * x - x + BigRational::new(BigInt::one(), BigInt::from(6))),
        _ => Err(Error::LOutOfRange(l)),
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `Tr(ε^k)` for `k ∈ ℤ`, computed by repeated multiplication.
fn trace_eps_pow(field: &FieldContext, k: i32) -> BigInt {
    let base = if k < 0 { field.conj(field.eps()) } else { field.eps().clone() };
    let mut acc = QuadInt::one();
    for _ in 0..k.unsigned_abs() {
        acc = field.mul(&acc, &base);
    }
    field.trace(&acc)
}

/// `h_K` from `½ Σ_{r ∈ R} χ(r) Σ_{l₁+l₂=2} B_{l₁}(r₁)/l₁! · B_{l₂}(r₂)/l₂! · Tr(ε^{l₂−1})`.
pub fn class_number_direct(field: &FieldContext, p: u64) -> Result<u64> {
    class_number_direct_shifted(field, p, &BigRational::zero())
}

/// As [`class_number_direct`] with `shift` added to every inner sum; the
/// result must not depend on it because `Σ_r χ(r) = 0`.
pub fn class_number_direct_shifted(field: &FieldContext, p: u64, shift: &BigRational) -> Result<u64> {
    let report = eligibility(field, p);
    if !report.eligible() {
        return Err(Error::Ineligible(report));
    }
    let s = field.s().clone();
    let t = field.t().clone();
    let pb = BigInt::from(p);
    let den = &t * &pb;
    let den_u = den.to_u64().ok_or_else(|| Error::TooLarge(format!("tp = {den}")))?;
    let tr_theta = BigInt::from(field.trace_theta());
    let nm_theta = BigInt::from(field.norm_theta());

    let weights: [(u32, u32, BigRational); 3] = [
        (2, 0, BigRational::from_integer(trace_eps_pow(field, -1))),
        (1, 1, BigRational::from_integer(trace_eps_pow(field, 0))),
        (0, 2, BigRational::from_integer(trace_eps_pow(field, 1))),
    ];

    let mut total = BigRational::zero();
    for j in 1..=den_u {
        let r1 = BigRational::new(BigInt::from(j), den.clone());
        for k in 0..den_u {
            let r2 = BigRational::new(BigInt::from(k), den.clone());
            // r₁ + r₂ε = (r₁ + s r₂) + t r₂ θ must lie in (1/p)O_F
            let x = (&r1 + &r2 * BigRational::from_integer(s.clone())) * BigRational::from_integer(pb.clone());
            let y = &r2 * BigRational::from_integer(&t * &pb);
            if !x.is_integer() || !y.is_integer() {
                continue;
            }
            let (x, y) = (x.to_integer(), y.to_integer());
            let norm = &x * &x + &tr_theta * &x * &y + &nm_theta * &y * &y;
            let n_mod = norm.mod_floor(&pb);
            let chi = if x.is_multiple_of(&pb) && y.is_multiple_of(&pb) {
                0
            } else {
                legendre(n_mod.to_i64().expect("reduced below p"), p)
            };
            if chi == 0 {
                continue;
            }
            let mut inner = shift.clone();
            for (l1, l2, w) in &weights {
                let term = bernoulli_eval(*l1, &r1)? * bernoulli_eval(*l2, &r2)? * w
                    / BigRational::from_integer(factorial(*l1) * factorial(*l2));
                inner += term;
            }
            if chi > 0 {
                total += inner;
            } else {
                total -= inner;
            }
        }
    }
    let h = total / BigRational::from_integer(BigInt::from(2));
    if !h.is_integer() {
        return Err(Error::NonIntegralResult(format!("{h}")));
    }
    if !h.is_positive() {
        return Err(Error::NonIntegralResult(format!("non-positive value {h}")));
    }
    h.to_integer().to_u64().ok_or_else(|| Error::TooLarge(format!("h = {h}")))
}
