//! Exact arithmetic in `F = ℚ(√d)` and `O_F = ℤ[θ]`.
//!
//! `θ = √d` when `d ≢ 1 (mod 4)` and `θ = (1+√d)/2` when `d ≡ 1 (mod 4)`, so
//! `θ² = Tθ − N` with `T = Tr(θ)`, `N = N(θ)`. Real numbers only ever appear
//! through the embedding `√d > 0`, and every comparison reduces to integer
//! square roots and sign checks.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaKind {
    /// `θ = √d`
    Sqrt,
    /// `θ = (1+√d)/2`
    HalfOnePlusSqrt,
}

/// `a + bθ ∈ O_F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt { a: a.into(), b: b.into() }
    }

    pub fn one() -> Self {
        QuadInt::new(1, 0)
    }
}

/// `u + vθ ∈ F` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadRat {
    pub u: BigRational,
    pub v: BigRational,
}

impl QuadRat {
    pub fn new(u: BigRational, v: BigRational) -> Self {
        QuadRat { u, v }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        QuadRat::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        QuadRat::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    pub fn zero() -> Self {
        QuadRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.v.is_zero() && self.u.is_integer()
    }
}

impl From<&QuadInt> for QuadRat {
    fn from(x: &QuadInt) -> Self {
        QuadRat::new(BigRational::from_integer(x.a.clone()), BigRational::from_integer(x.b.clone()))
    }
}

impl Add for &QuadRat {
    type Output = QuadRat;
    fn add(self, rhs: &QuadRat) -> QuadRat {
        QuadRat::new(&self.u + &rhs.u, &self.v + &rhs.v)
    }
}

impl Sub for &QuadRat {
    type Output = QuadRat;
    fn sub(self, rhs: &QuadRat) -> QuadRat {
        QuadRat::new(&self.u - &rhs.u, &self.v - &rhs.v)
    }
}

impl Neg for &QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat::new(-&self.u, -&self.v)
    }
}

/// Half-open unit intervals used for fractional parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interval {
    /// `(0, 1]`
    HalfOpenRight,
    /// `[0, 1)`
    HalfOpenLeft,
}

#[derive(Debug, Clone, Copy)]
pub struct FieldOptions {
    /// Hard cap on continued-fraction convergents in the unit search.
    pub max_convergents: u64,
    /// Cap on the `θ`-coefficient scanned when testing principality.
    pub principality_cap: u64,
}

impl Default for FieldOptions {
    fn default() -> Self {
        FieldOptions { max_convergents: 1_000_000, principality_cap: 10_000 }
    }
}

/// Everything derived from `d`. Immutable once built.
#[derive(Debug, Clone)]
pub struct FieldContext {
    d: u64,
    kind: ThetaKind,
    trace_theta: i64,
    norm_theta: i64,
    eps_fund: QuadInt,
    eps: QuadInt,
    trace_eps: BigInt,
    h1: bool,
}

impl FieldContext {
    pub fn new(d: u64) -> Result<Self> {
        Self::with_options(d, FieldOptions::default())
    }

    pub fn with_options(d: u64, opts: FieldOptions) -> Result<Self> {
        if d < 2 {
            return Err(Error::DTooSmall(d));
        }
        if !arith::is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        let di = i64::try_from(d).map_err(|_| Error::TooLarge("d exceeds i64".into()))?;
        let (kind, trace_theta, norm_theta) = if d % 4 == 1 {
            (ThetaKind::HalfOnePlusSqrt, 1, (1 - di) / 4)
        } else {
            // d ≡ 2, 3 (mod 4): O_F = ℤ[√d]
            (ThetaKind::Sqrt, 0, -di)
        };
        let mut field = FieldContext {
            d,
            kind,
            trace_theta,
            norm_theta,
            eps_fund: QuadInt::one(),
            eps: QuadInt::one(),
            trace_eps: BigInt::from(2),
            h1: false,
        };
        field.eps_fund = field.fundamental_unit_search(opts.max_convergents)?;
        field.eps = if field.norm(&field.eps_fund).is_negative() {
            field.mul(&field.eps_fund, &field.eps_fund)
        } else {
            field.eps_fund.clone()
        };
        field.trace_eps = field.trace(&field.eps);
        field.h1 = verify_h1_with_cap(&field, opts.principality_cap)?;
        Ok(field)
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn theta_kind(&self) -> ThetaKind {
        self.kind
    }

    pub fn trace_theta(&self) -> i64 {
        self.trace_theta
    }

    pub fn norm_theta(&self) -> i64 {
        self.norm_theta
    }

    /// Discriminant of `O_F`.
    pub fn discriminant(&self) -> u64 {
        match self.kind {
            ThetaKind::Sqrt => 4 * self.d,
            ThetaKind::HalfOnePlusSqrt => self.d,
        }
    }

    /// Fundamental unit `> 1`, of either norm.
    pub fn fundamental_unit(&self) -> &QuadInt {
        &self.eps_fund
    }

    /// Totally positive fundamental unit `ε_F = s + tθ`.
    pub fn eps(&self) -> &QuadInt {
        &self.eps
    }

    pub fn s(&self) -> &BigInt {
        &self.eps.a
    }

    pub fn t(&self) -> &BigInt {
        &self.eps.b
    }

    pub fn trace_eps(&self) -> &BigInt {
        &self.trace_eps
    }

    /// Certificate that `h_F = 1`, established at construction.
    pub fn class_number_one(&self) -> bool {
        self.h1
    }

    pub fn mul(&self, x: &QuadInt, y: &QuadInt) -> QuadInt {
        let bd = &x.b * &y.b;
        QuadInt {
            a: &x.a * &y.a - &bd * self.norm_theta,
            b: &x.a * &y.b + &x.b * &y.a + &bd * self.trace_theta,
        }
    }

    /// Galois conjugate, using `θ' = T − θ`.
    pub fn conj(&self, x: &QuadInt) -> QuadInt {
        QuadInt { a: &x.a + &x.b * self.trace_theta, b: -&x.b }
    }

    pub fn norm(&self, x: &QuadInt) -> BigInt {
        &x.a * &x.a + &x.a * &x.b * self.trace_theta + &x.b * &x.b * self.norm_theta
    }

    pub fn trace(&self, x: &QuadInt) -> BigInt {
        &x.a * 2 + &x.b * self.trace_theta
    }

    pub fn mul_rat(&self, x: &QuadRat, y: &QuadRat) -> QuadRat {
        let vv = &x.v * &y.v;
        QuadRat {
            u: &x.u * &y.u - &vv * BigInt::from(self.norm_theta),
            v: &x.u * &y.v + &x.v * &y.u + &vv * BigInt::from(self.trace_theta),
        }
    }

    pub fn conj_rat(&self, x: &QuadRat) -> QuadRat {
        QuadRat { u: &x.u + &x.v * BigInt::from(self.trace_theta), v: -&x.v }
    }

    pub fn norm_rat(&self, x: &QuadRat) -> BigRational {
        &x.u * &x.u
            + &x.u * &x.v * BigInt::from(self.trace_theta)
            + &x.v * &x.v * BigInt::from(self.norm_theta)
    }

    /// `x⁻¹` for `x ≠ 0`.
    pub fn inv_rat(&self, x: &QuadRat) -> QuadRat {
        let n = self.norm_rat(x);
        let c = self.conj_rat(x);
        QuadRat { u: &c.u / &n, v: &c.v / &n }
    }

    /// Writes `x` under the real embedding as `(a + b√d)/c` with `c > 0`.
    pub fn surd_parts(&self, x: &QuadRat) -> (BigInt, BigInt, BigInt) {
        let (rat, irr) = match self.kind {
            ThetaKind::Sqrt => (x.u.clone(), x.v.clone()),
            ThetaKind::HalfOnePlusSqrt => {
                let half = &x.v / BigInt::from(2);
                (&x.u + &half, half)
            }
        };
        let c = rat.denom().lcm(irr.denom());
        let a = rat.numer() * (&c / rat.denom());
        let b = irr.numer() * (&c / irr.denom());
        (a, b, c)
    }

    /// Sign of `x` under the real embedding.
    pub fn sign(&self, x: &QuadRat) -> Ordering {
        let (a, b, _) = self.surd_parts(x);
        surd_sign(&a, &b, self.d)
    }

    /// Compares `x` and `y` under the real embedding.
    pub fn cmp_real(&self, x: &QuadRat, y: &QuadRat) -> Ordering {
        self.sign(&(x - y))
    }

    fn fundamental_unit_search(&self, cap: u64) -> Result<QuadInt> {
        // continued fraction of θ = (P + √D)/Q, exact PQa recursion
        let d = BigInt::from(self.d);
        let root = d.sqrt();
        let (mut pp, mut qq) = match self.kind {
            ThetaKind::Sqrt => (BigInt::zero(), BigInt::one()),
            ThetaKind::HalfOnePlusSqrt => (BigInt::one(), BigInt::from(2)),
        };
        let (mut p_prev, mut p_cur) = (BigInt::zero(), BigInt::one());
        let (mut q_prev, mut q_cur) = (BigInt::one(), BigInt::zero());
        for _ in 0..cap {
            let m = &pp + &root;
            let a = if qq.is_positive() { m.div_floor(&qq) } else { (m + BigInt::one()).div_floor(&qq) };
            let p_next = &a * &p_cur + &p_prev;
            let q_next = &a * &q_cur + &q_prev;
            p_prev = core::mem::replace(&mut p_cur, p_next);
            q_prev = core::mem::replace(&mut q_cur, q_next);
            // p − qθ is tiny; its conjugate p − qθ' is the unit > 1
            let cand = QuadInt::new(p_cur.clone(), -q_cur.clone());
            if self.norm(&cand).abs().is_one() {
                return Ok(self.conj(&cand));
            }
            pp = &a * &qq - &pp;
            qq = (&d - &pp * &pp) / &qq;
        }
        Err(Error::UnitSearchExhausted { d: self.d, cap })
    }
}

/// Sign of `a + b√d` for squarefree `d > 1`, by squaring.
pub fn surd_sign(a: &BigInt, b: &BigInt, d: u64) -> Ordering {
    let sa = a.sign();
    let sb = b.sign();
    use num_bigint::Sign::*;
    match (sa, sb) {
        (NoSign, NoSign) => Ordering::Equal,
        (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => Ordering::Greater,
        (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => Ordering::Less,
        (Plus, Minus) => (a * a).cmp(&(b * b * d)),
        (Minus, Plus) => (b * b * d).cmp(&(a * a)),
    }
}

/// `⌊x⌋` under the real embedding `√d > 0`.
pub fn exact_floor(field: &FieldContext, x: &QuadRat) -> BigInt {
    let (a, b, c) = field.surd_parts(x);
    if b.is_zero() {
        return a.div_floor(&c);
    }
    // ⌊b√d⌋ via integer sqrt; √d irrational so b√d is never an integer
    let r = (&b * &b * field.d).sqrt();
    let fb = if b.is_positive() { r } else { -r - 1 };
    // a + b√d ∈ (a + fb, a + fb + 1) and no multiple of c lies strictly inside
    (a + fb).div_floor(&c)
}

/// The unique `y` in `interval` with `x − y ∈ ℤ`.
pub fn frac_part(field: &FieldContext, x: &QuadRat, interval: Interval) -> QuadRat {
    let n = exact_floor(field, x);
    if x.is_integer() {
        return match interval {
            Interval::HalfOpenRight => QuadRat::from_integer(1),
            Interval::HalfOpenLeft => QuadRat::zero(),
        };
    }
    QuadRat::new(&x.u - BigRational::from_integer(n), x.v.clone())
}

/// Decides `h_F = 1` by testing every split or ramified prime `q` below the
/// Minkowski bound `√Δ/2` for an element of norm `±q`.
pub fn verify_h1(field: &FieldContext) -> Result<bool> {
    verify_h1_with_cap(field, FieldOptions::default().principality_cap)
}

fn verify_h1_with_cap(field: &FieldContext, cap: u64) -> Result<bool> {
    let disc = field.discriminant();
    let mut q = 2u64;
    while 4 * q * q <= disc {
        if arith::is_prime(q) && !is_inert(field, q) && !has_element_of_norm(field, q, cap)? {
            return Ok(false);
        }
        q += 1;
    }
    Ok(true)
}

fn is_inert(field: &FieldContext, q: u64) -> bool {
    // q is inert iff x² − Tx + N has no root mod q
    let qi = q as i64;
    let (t, n) = (field.trace_theta.rem_euclid(qi), field.norm_theta.rem_euclid(qi));
    !(0..qi).any(|x| (x * x - t * x + n).rem_euclid(qi) == 0)
}

fn has_element_of_norm(field: &FieldContext, q: u64, cap: u64) -> Result<bool> {
    // A generator α of a principal ideal of norm q can be scaled by units so
    // that |α|,|α'| < √(qη); then |y| = |α − α'|/√d < 2√(qη/d).
    let eta = QuadRat::from(field.fundamental_unit());
    let eta_ceil: BigInt = exact_floor(field, &eta) + 1;
    let bound: BigInt = (eta_ceil * BigInt::from(4 * q) / BigInt::from(field.d)).sqrt() + 1;
    let bound = bound.to_u64().unwrap_or(u64::MAX);
    let scan = bound.min(cap);
    let disc = BigInt::from(field.discriminant());
    let t = BigInt::from(field.trace_theta);
    for y in 0..=scan {
        let y = BigInt::from(y);
        for sigma in [1i64, -1] {
            // x² + Txy + Ny² = σq  ⇔  (2x + Ty)² = Δy² + 4σq
            let rhs = &disc * &y * &y + BigInt::from(4 * q as i64 * sigma);
            if rhs.is_negative() {
                continue;
            }
            let k = rhs.sqrt();
            if &k * &k == rhs && (&k - &t * &y).is_even() {
                return Ok(true);
            }
        }
    }
    if bound > cap {
        return Err(Error::SearchExhausted { q, cap });
    }
    Ok(false)
}

/// Reasons a pair `(d, p)` is outside the supported range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Failure {
    NotPrime,
    PLessThan7,
    PNot3Mod4,
    DNotInert,
    DNotSquarefree,
    HfNotOne,
}

impl Failure {
    pub fn code(self) -> &'static str {
        match self {
            Failure::NotPrime => "NOT_PRIME",
            Failure::PLessThan7 => "P_LT_7",
            Failure::PNot3Mod4 => "P_NOT_3_MOD_4",
            Failure::DNotInert => "D_NOT_INERT",
            Failure::DNotSquarefree => "D_NOT_SQUAREFREE",
            Failure::HfNotOne => "HF_NOT_ONE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EligibilityReport {
    pub failures: Vec<Failure>,
}

impl EligibilityReport {
    pub fn eligible(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn codes(&self) -> Vec<&'static str> {
        self.failures.iter().map(|f| f.code()).collect()
    }
}

impl fmt::Display for EligibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eligible() {
            return f.write_str("eligible");
        }
        for (i, code) in self.codes().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(code)?;
        }
        Ok(())
    }
}

fn prime_failures(d: i64, p: u64, out: &mut Vec<Failure>) {
    let prime = arith::is_prime(p);
    if !prime {
        out.push(Failure::NotPrime);
    }
    if p < 7 {
        out.push(Failure::PLessThan7);
    }
    if p % 4 != 3 {
        out.push(Failure::PNot3Mod4);
    }
    if prime && p > 2 && arith::legendre(d, p) != -1 {
        out.push(Failure::DNotInert);
    }
}

/// Checks `p` prime, `p ≥ 7`, `p ≡ 3 (mod 4)`, `(d/p) = −1` and `h_F = 1`.
pub fn eligibility(field: &FieldContext, p: u64) -> EligibilityReport {
    let mut failures = Vec::new();
    prime_failures(field.d as i64, p, &mut failures);
    if !field.h1 {
        failures.push(Failure::HfNotOne);
    }
    EligibilityReport { failures }
}

/// Like [`eligibility`] but starting from a raw `d`, which may not define a
/// usable field at all.
pub fn pair_eligibility(d: u64, p: u64) -> Result<EligibilityReport> {
    match FieldContext::new(d) {
        Ok(field) => Ok(eligibility(&field, p)),
        Err(Error::NotSquarefree(_)) => {
            let mut failures = Vec::new();
            prime_failures(d as i64, p, &mut failures);
            failures.push(Failure::DNotSquarefree);
            Ok(EligibilityReport { failures })
        }
        Err(e) => Err(e),
    }
}
