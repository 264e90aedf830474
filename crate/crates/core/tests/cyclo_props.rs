mod common;

use cliffsub::cyclo::Cyclotomic;
use num_complex::Complex64;
use proptest::prelude::*;

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

fn cx(x: &Cyclotomic) -> Complex64 {
    let (re, im) = x.to_complex();
    Complex64::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms((a, b, c, _k) in common::triple()) {
        common::field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn arithmetic_agrees_with_floating_point((a, b, _c, _k) in common::triple()) {
        prop_assert!(close(cx(&(&a + &b)), cx(&a) + cx(&b)));
        prop_assert!(close(cx(&(&a * &b)), cx(&a) * cx(&b)));
        prop_assert!(close(cx(&a.conj()), cx(&a).conj()));
        if !a.is_zero() {
            prop_assert!(close(cx(&a.inverse().unwrap()), cx(&a).inv()));
        }
    }

    #[test]
    fn conjugation_and_galois_are_ring_maps((a, b, _c, k) in common::triple()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
        prop_assert_eq!(a.conj().conj(), a.clone());
    }

    #[test]
    fn canonical_text_round_trips((a, _b, _c, _k) in common::triple()) {
        let s = a.to_string();
        let back: Cyclotomic = s.parse().unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), s);
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Cyclotomic>(&json).unwrap(), a);
    }

    #[test]
    fn abs_squared_is_nonnegative_real((a, _b, _c, _k) in common::triple()) {
        let v = a.abs_squared();
        prop_assert_eq!(v.conj(), v.clone());
        prop_assert!(cx(&v).re >= -1e-12);
        prop_assert!(cx(&v).im.abs() < 1e-9);
    }
}

#[test]
fn named_square_roots_square_correctly() {
    for d in [2i64, 3, 5, -3, -7] {
        let r = Cyclotomic::sqrt_named(d).unwrap();
        assert_eq!(&r * &r, Cyclotomic::from_int(d), "sqrt({d})");
    }
}
