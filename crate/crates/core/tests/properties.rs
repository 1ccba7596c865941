use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use shintani_core::expansion::eps_expand;
use shintani_core::field::{exact_floor, FieldContext, QuadInt, QuadRat};
use shintani_core::oracle::{class_number_direct, class_number_direct_shifted};
use shintani_core::residue::ResidueField;
use shintani_core::theorem_one::{q_form_eval, series_coeffs_oracle, xy_sequences, RecurrenceParams};

const FIELDS: [u64; 7] = [2, 3, 5, 6, 7, 11, 13];

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_multiplicative(di in 0usize..7, a in -99i64..99, b in -99i64..99, c in -99i64..99, e in -99i64..99) {
        let f = FieldContext::new(FIELDS[di]).unwrap();
        let x = QuadInt::new(a, b);
        let y = QuadInt::new(c, e);
        prop_assert_eq!(f.norm(&f.mul(&x, &y)), f.norm(&x) * f.norm(&y));
        prop_assert_eq!(f.conj(&f.conj(&x)), x.clone());
        prop_assert_eq!(f.mul(&x, &f.conj(&x)), QuadInt::new(f.norm(&x), 0));
    }

    #[test]
    fn floor_matches_float(di in 0usize..7, u in -5000i64..5000, v in -5000i64..5000, den in 1i64..200) {
        let f = FieldContext::new(FIELDS[di]).unwrap();
        let x = QuadRat::new(rat(u, den), rat(v, den));
        let (a, b, c) = f.surd_parts(&x);
        let approx = (a.to_string().parse::<f64>().unwrap()
            + b.to_string().parse::<f64>().unwrap() * (FIELDS[di] as f64).sqrt())
            / c.to_string().parse::<f64>().unwrap();
        // only trust the float away from integers
        prop_assume!((approx - approx.round()).abs() > 1e-6);
        prop_assert_eq!(exact_floor(&f, &x), BigInt::from(approx.floor() as i64));
    }

    #[test]
    fn residue_field_axioms(pi in 0usize..4, x1 in 0u64..500, y1 in 0u64..500, x2 in 0u64..500, y2 in 0u64..500) {
        let p = [7u64, 19, 43, 79][pi];
        let f = FieldContext::new(3).unwrap();
        let r = ResidueField::new(&f, p).unwrap();
        let u = r.elem(x1 as i64, y1 as i64);
        let v = r.elem(x2 as i64, y2 as i64);
        prop_assert_eq!(r.mul(u, v), r.mul(v, u));
        prop_assume!(!u.is_zero());
        prop_assert_eq!(r.pow(u, r.group_order()), r.one());
        let ord = r.element_order(u).unwrap();
        prop_assert_eq!(r.group_order() % ord, 0);
        prop_assert_eq!(r.pow(u, ord), r.one());
    }

    #[test]
    fn series_oracle_matches_recurrence(di in 0usize..7, a in 0i64..100, b in 1i64..100) {
        let f = FieldContext::new(FIELDS[di]).unwrap();
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let (t, n) = (BigInt::from(f.trace_theta()), BigInt::from(f.norm_theta()));
        let c = &a * &a + &a * &b * &t + &n * &b * &b;
        let d = BigInt::from(2) * &a + &b * &t;
        let params = RecurrenceParams { a, b, c, d };
        prop_assert_eq!(series_coeffs_oracle(&params, 50), xy_sequences(&f, &params, 50));
    }

    #[test]
    fn q_form_symmetric(di in 0usize..7, n1 in -300i64..300, n2 in -300i64..300, den in 1i64..60) {
        let f = FieldContext::new(FIELDS[di]).unwrap();
        let (y1, y2) = (rat(n1, den), rat(n2, den));
        prop_assert_eq!(q_form_eval(&f, &y1, &y2), q_form_eval(&f, &y2, &y1));
        prop_assert!(q_form_eval(&f, &y1, &y2) >= rat(0, 1));
    }

    #[test]
    fn expansion_reconstructs(di in 0usize..5, pi in 0usize..3, u in 0i64..400, v in -50i64..50) {
        let f = FieldContext::new(FIELDS[di]).unwrap();
        let p = [7i64, 11, 19][pi];
        let alpha = QuadRat::new(rat(u, p), rat(v, p));
        prop_assume!(f.sign(&alpha) == std::cmp::Ordering::Greater);
        let e = eps_expand(&f, &alpha, 100_000).unwrap();
        prop_assert_eq!(e.value(&f), alpha);
        let top = f.trace_eps() - 1u32;
        prop_assert!(e.preperiod.iter().chain(&e.period).all(|&a| BigInt::from(a) <= top));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn oracle_ignores_constant_shift(case in 0usize..4, n in -1000i64..1000, den in 1i64..97) {
        let (d, p) = [(3, 7), (3, 19), (6, 7), (13, 11)][case];
        let f = FieldContext::new(d).unwrap();
        prop_assert_eq!(class_number_direct_shifted(&f, p, &rat(n, den)).unwrap(), class_number_direct(&f, p).unwrap());
    }
}
