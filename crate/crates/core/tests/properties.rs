use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use octo::automorphism::{is_automorphism, s_element, torus_element};
use octo::composition::{Algebra, Octonion, SplitOctonions};
use octo::fields::{hilbert_symbol, hilbert_symbol_at_place, relevant_places, FieldSpec, Scalar};
use octo::forms::{self, quaternion_is_split, DiagonalForm};

fn rational() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| FieldSpec::Rationals.fraction(n, d).unwrap())
}

fn nonzero_int() -> impl Strategy<Value = i64> {
    (-30i64..=30).prop_filter("nonzero", |x| *x != 0)
}

fn octonion() -> impl Strategy<Value = Octonion> {
    proptest::collection::vec(rational(), 8).prop_map(|c| Octonion::from_coords(&c))
}

fn local_field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Reals),
        Just(FieldSpec::Padic(2)),
        Just(FieldSpec::Padic(3)),
        Just(FieldSpec::Padic(5)),
        Just(FieldSpec::Padic(7)),
        Just(FieldSpec::Padic(11)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_field_inverses(x in rational(), p in prop_oneof![Just(3u64), Just(5), Just(13)], n in -100i64..100) {
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
        let f = FieldSpec::PrimeField(p);
        let y = f.int(n);
        if !y.is_zero() {
            prop_assert!((&y * &y.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn octonion_norm_is_multiplicative(x in octonion(), y in octonion()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!((&x * &y).conj(), &y.conj() * &x.conj());
    }

    #[test]
    fn octonions_are_alternative(x in octonion(), y in octonion()) {
        let xx = &x * &x;
        prop_assert_eq!(&x * &(&x * &y), &xx * &y);
        prop_assert_eq!(&(&y * &x) * &x, &y * &xx);
    }

    #[test]
    fn hilbert_symmetry_and_bimultiplicativity(field in local_field(), a in nonzero_int(), b in nonzero_int(), c in nonzero_int()) {
        let (a, b, c) = (field.int(a), field.int(b), field.int(c));
        let h = |x: &Scalar, y: &Scalar| hilbert_symbol(x, y, field).unwrap();
        prop_assert_eq!(h(&a, &b), h(&b, &a));
        prop_assert_eq!(h(&a, &(&b * &c)), h(&a, &b) * h(&a, &c));
        prop_assert_eq!(h(&a, &-&a), 1);
    }

    #[test]
    fn verdict_depends_on_square_classes(field in local_field(), a in nonzero_int(), b in nonzero_int(), c in nonzero_int(), d in nonzero_int()) {
        let (a, b) = (field.int(a), field.int(b));
        let (c, d) = (field.int(c), field.int(d));
        let v1 = quaternion_is_split(&a, &b, field).unwrap().verdict;
        let v2 = quaternion_is_split(&(&a * &c.square()), &(&b * &d.square()), field).unwrap().verdict;
        prop_assert_eq!(v1, v2);
    }

    #[test]
    fn even_ramification(a in nonzero_int(), b in nonzero_int(), da in 1i64..20, db in 1i64..20) {
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let (a, b) = (q(a, da), q(b, db));
        let places = relevant_places(&[&a, &b]).unwrap();
        let bad = places.iter().filter(|&&v| hilbert_symbol_at_place(&a, &b, v).unwrap() == -1).count();
        prop_assert_eq!(bad % 2, 0);
    }

    #[test]
    fn isotropy_witnesses_are_zeros(p in prop_oneof![Just(3u64), Just(5), Just(7), Just(11), Just(13)],
                                    coeffs in proptest::collection::vec(1i64..50, 2..6)) {
        let f = FieldSpec::PrimeField(p);
        let c: Vec<Scalar> = coeffs.iter().map(|&x| f.int(x)).filter(|x| !x.is_zero()).collect();
        prop_assume!(c.len() >= 2);
        let form = DiagonalForm::new(c.clone(), f).unwrap();
        let iso = forms::is_isotropic(&form).unwrap();
        if c.len() >= 3 {
            prop_assert!(iso.isotropic);
        }
        if let Some(w) = iso.witness {
            prop_assert!(w.iter().any(|x| !x.is_zero()));
            prop_assert!(form.evaluate(&w).is_zero());
        }
    }

    #[test]
    fn torus_elements_are_automorphisms(b in nonzero_int(), g in nonzero_int()) {
        let q = FieldSpec::Rationals;
        let t = torus_element(&q.int(b), &q.int(g), q).unwrap();
        prop_assert!(is_automorphism(&t).holds);
        let s = s_element(q);
        prop_assert_eq!(s.compose(&t).unwrap().compose(&s).unwrap(), t.inverse().unwrap());
    }

    #[test]
    fn torus_multiplication(b1 in nonzero_int(), g1 in nonzero_int(), b2 in nonzero_int(), g2 in nonzero_int()) {
        let q = FieldSpec::Rationals;
        let t = |b: i64, g: i64| torus_element(&q.int(b), &q.int(g), q).unwrap();
        prop_assert_eq!(t(b1, g1).compose(&t(b2, g2)).unwrap(), t(b1 * b2, g1 * g2));
    }

    #[test]
    fn pure_elements_square_to_minus_norm(x in octonion()) {
        let alg = SplitOctonions::new(FieldSpec::Rationals);
        let c = x.coords();
        let half = FieldSpec::Rationals.fraction(1, 2).unwrap();
        let t = alg.bilinear(&c, &alg.unit()) * half;
        let pure: Vec<Scalar> = c.iter().zip(alg.unit()).map(|(a, e)| a - &(&t * &e)).collect();
        let sq = alg.mul(&pure, &pure);
        let expected: Vec<Scalar> = alg.unit().iter().map(|e| -(&alg.norm(&pure) * e)).collect();
        prop_assert_eq!(sq, expected);
    }
}
