//! Field-level results against brute-force searches that share no code with
//! the library's continued-fraction and principality routines.

use num_bigint::BigInt;
use shintani_core::arith::{is_prime, isqrt};
use shintani_core::field::{verify_h1, FieldContext, ThetaKind};

/// Smallest `(u, v)`, `v ≥ 1`, with `u² − dv² = 4` and `(u + v√d)/2 ∈ O_F`.
fn brute_force_unit(d: u64, vmax: u64) -> Option<(u64, u64)> {
    for v in 1..=vmax {
        let u2 = d * v * v + 4;
        let u = isqrt(u2);
        if u * u == u2 && (d % 4 == 1 || (u % 2 == 0 && v % 2 == 0)) {
            return Some((u, v));
        }
    }
    None
}

#[test]
fn totally_positive_unit() {
    for d in [2u64, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 29, 31, 33, 37, 41] {
        let f = FieldContext::new(d).unwrap();
        let (u, v) = brute_force_unit(d, 200_000).expect("unit within bound");
        // ε = s + tθ = (u + v√d)/2
        let (s, t) = (f.s().clone(), f.t().clone());
        let (u2, v2) = match f.theta_kind() {
            ThetaKind::Sqrt => (s * 2, t * 2),
            ThetaKind::HalfOnePlusSqrt => (s * 2 + &t, t),
        };
        assert_eq!((u2, v2), (BigInt::from(u), BigInt::from(v)), "d = {d}");
        assert_eq!(f.trace_eps(), &BigInt::from(u));
    }
}

/// Whether some element of `O_F` has norm `±q`, searching `a + bθ` in a box.
fn norm_in_box(f: &FieldContext, q: i64, bound: i64) -> bool {
    let (t, n) = (f.trace_theta(), f.norm_theta());
    (-bound..=bound).any(|a| (0..=bound).any(|b| (a * a + t * a * b + n * b * b).abs() == q))
}

/// Minkowski-bound sweep by box search; class number one iff every prime
/// below the bound is a norm or inert.
fn h1_by_box(f: &FieldContext) -> bool {
    let disc = f.discriminant();
    let (t, n) = (f.trace_theta(), f.norm_theta());
    (2..).take_while(|&q| 4 * q * q <= disc).filter(|&q| is_prime(q)).all(|q| {
        let qi = q as i64;
        let inert = !(0..qi).any(|x| (x * x - t * x + n).rem_euclid(qi) == 0);
        inert || norm_in_box(f, qi, 400)
    })
}

#[test]
fn class_number_one_certificate() {
    let known_h1 = [2u64, 3, 5, 6, 7, 11, 13, 14, 17, 19, 21, 22, 23, 29, 31, 33, 37, 38, 41, 43, 46, 47];
    let known_not = [10u64, 15, 26, 30, 34, 35, 39, 42];
    for d in known_h1 {
        let f = FieldContext::new(d).unwrap();
        assert!(verify_h1(&f).unwrap(), "d = {d}");
        assert!(h1_by_box(&f), "d = {d}");
    }
    for d in known_not {
        let f = FieldContext::new(d).unwrap();
        assert!(!verify_h1(&f).unwrap(), "d = {d}");
        assert!(!h1_by_box(&f), "d = {d}");
    }
}
