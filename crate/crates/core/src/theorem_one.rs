//! The alternating `Q_F` sum over powers of a generator `ρ` of `𝔽_{p²}^×`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::residue::Generator;
use crate::shintani::ShintaniSet;

/// Integer lift `a + bθ` of `ρ` with the constants of the denominator
/// `Cz² − Dz + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceParams {
    pub a: BigInt,
    pub b: BigInt,
    /// `N(a + bθ)`.
    pub c: BigInt,
    /// `Tr(a + bθ)`.
    pub d: BigInt,
}

pub fn cd_constants(field: &FieldContext, rho: &Generator) -> RecurrenceParams {
    let a = BigInt::from(rho.a());
    let b = BigInt::from(rho.b());
    let tr = BigInt::from(field.trace_theta());
    let nm = BigInt::from(field.norm_theta());
    let c = &a * &a + &a * &b * &tr + &nm * &b * &b;
    let d = BigInt::from(2) * &a + &b * &tr;
    RecurrenceParams { a, b, c, d }
}

/// `(x(m), y(m))` for `m = 1..=count`, where `ρ^m = x(m) + y(m)θ` over `ℤ`.
pub fn xy_sequences(field: &FieldContext, params: &RecurrenceParams, count: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let tr = BigInt::from(field.trace_theta());
    let nm = BigInt::from(field.norm_theta());
    let (a, b) = (&params.a, &params.b);
    let mut xs = Vec::with_capacity(count);
    let mut ys = Vec::with_capacity(count);
    let (mut x, mut y) = (a.clone(), b.clone());
    for _ in 0..count {
        let nx = a * &x - &nm * b * &y;
        let ny = b * &x + (a + &tr * b) * &y;
        xs.push(x);
        ys.push(y);
        x = nx;
        y = ny;
    }
    (xs, ys)
}

/// Coefficients of `z¹..z^count` in `num(z) / (1 − Dz + Cz²)` by long division.
fn series_divide(num: &[BigInt], params: &RecurrenceParams, count: usize) -> Vec<BigInt> {
    let den = [BigInt::from(1), -params.d.clone(), params.c.clone()];
    let mut out: Vec<BigInt> = vec![BigInt::zero(); count + 1];
    for k in 0..=count {
        let mut acc = num.get(k).cloned().unwrap_or_default();
        for (j, dj) in den.iter().enumerate().skip(1) {
            if j <= k {
                acc -= dj * &out[k - j];
            }
        }
        out[k] = acc;
    }
    out.remove(0);
    out
}

/// The same sequences as [`xy_sequences`], read off the rational functions
/// `X(z) = (az − Cz²)/(Cz² − Dz + 1)` and `Y(z) = bz/(Cz² − Dz + 1)`.
pub fn series_coeffs_oracle(params: &RecurrenceParams, count: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let xnum = [BigInt::zero(), params.a.clone(), -params.c.clone()];
    let ynum = [BigInt::zero(), params.b.clone()];
    (series_divide(&xnum, params, count), series_divide(&ynum, params, count))
}

/// `Q_F(Y₁, Y₂) = Tr(ε)Y₁² + 4Y₁Y₂ + Tr(ε)Y₂²`.
pub fn q_form_eval(field: &FieldContext, y1: &BigRational, y2: &BigRational) -> BigRational {
    let tr = BigRational::from_integer(field.trace_eps().clone());
    &tr * y1 * y1 + BigRational::from_integer(BigInt::from(4)) * y1 * y2 + &tr * y2 * y2
}

fn q_int(tr: i128, x: i128, y: i128) -> i128 {
    tr * x * x + 4 * x * y + tr * y * y
}

#[derive(Debug, Clone)]
pub struct Thm1Result {
    pub h: u64,
    pub params: RecurrenceParams,
    /// `(−1)^m Σ_i Q_F(x_i(m), y_i(m))` for `m = 1..=p²−1`.
    pub summands: Vec<i128>,
    /// The full sum before division by `16t²p²`.
    pub total: BigInt,
}

/// `h_K` from the alternating sum over `ρ^m`, `m = 1..=p²−1`.
pub fn class_number_thm1(field: &FieldContext, set: &ShintaniSet, rho: &Generator) -> Result<Thm1Result> {
    let res = set.residue_field();
    let tr = set.trace_eps() as i128;
    let n = res.group_order();
    let mut summands = Vec::with_capacity(n as usize);
    let mut total: i128 = 0;
    let mut z = res.one();
    for m in 1..=n {
        z = res.mul(z, rho.rho);
        let fiber = set.fiber_of(z, m);
        let mut s: i128 = fiber.scaled().map(|(x, y)| q_int(tr, x as i128, y as i128)).sum();
        if m % 2 == 1 {
            s = -s;
        }
        summands.push(s);
        total = total
            .checked_add(s)
            .ok_or_else(|| Error::TooLarge(format!("Q_F sum overflow at m = {m}")))?;
    }
    if z != res.one() {
        return Err(Error::InternalInconsistency(format!("rho^{n} != 1 for rho = {}", rho.rho)));
    }
    let t = set.t() as i128;
    let p = set.p() as i128;
    let norm = 16 * t * t * p * p;
    if total % norm != 0 {
        return Err(Error::NonIntegralResult(format!("{total} / {norm}")));
    }
    let h = total / norm;
    if h <= 0 {
        return Err(Error::NonIntegralResult(format!("non-positive quotient {h}")));
    }
    Ok(Thm1Result {
        h: h.to_u64().expect("positive i128 quotient fits"),
        params: cd_constants(field, rho),
        summands,
        total: BigInt::from(total),
    })
}
