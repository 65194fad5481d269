use proptest::prelude::*;

use weylqubit::oracle::{elements_residual, DEFAULT_TOL};
use weylqubit::qubit::{build_generators, extract_qubits, in_commutant, nest_iso, nest_iso_inverse, split};
use weylqubit::{AlgebraElement, Rational, RationalAngle, Scalar, Window};

fn angle() -> impl Strategy<Value = RationalAngle> {
    (prop::sample::select(vec![1i64, 2, 3, 4, 6]), 0i64..12).prop_map(|(q, p)| RationalAngle::new(p % (2 * q), q))
}

fn coeff() -> impl Strategy<Value = Scalar> {
    (1i64..4, 1i64..3, prop::sample::select(vec![1i64, 2, 3, 4]), 0i64..8).prop_map(|(n, d, q, p)| {
        Scalar::rational(n, d).mul(&Scalar::phase_pi(Rational::new(p % (2 * q), q)).unwrap()).unwrap()
    })
}

fn element(max_terms: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((coeff(), angle(), -3i64..=3), 1..=max_terms)
        .prop_map(|t| AlgebraElement::from_terms(t).unwrap())
}

fn commutant_element() -> impl Strategy<Value = AlgebraElement> {
    element(3).prop_map(|x| nest_iso(&x).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associativity(a in element(3), b in element(3), c in element(3)) {
        let l = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let r = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert!(l.equals(&r).unwrap());
    }

    #[test]
    fn star_axioms(a in element(4), b in element(4), c in coeff()) {
        prop_assert!(a.adjoint().unwrap().adjoint().unwrap().equals(&a).unwrap());
        let ab = a.try_mul(&b).unwrap().adjoint().unwrap();
        prop_assert!(ab.equals(&b.adjoint().unwrap().try_mul(&a.adjoint().unwrap()).unwrap()).unwrap());
        let ca = a.try_scale(&c).unwrap().adjoint().unwrap();
        prop_assert!(ca.equals(&a.adjoint().unwrap().try_scale(&c.conj().unwrap()).unwrap()).unwrap());
    }

    #[test]
    fn words_are_unitary(t in angle(), l in -5i64..=5) {
        let w = AlgebraElement::word(t, l);
        prop_assert!(w.try_mul(&w.adjoint().unwrap()).unwrap().equals(&AlgebraElement::identity()).unwrap());
    }

    #[test]
    fn canonical_form_is_unique(a in element(5)) {
        let shuffled: Vec<_> = a.terms().collect::<Vec<_>>().into_iter().rev()
            .map(|t| (Scalar::Exact(t.coeff), t.theta, t.ell)).collect();
        let b = AlgebraElement::from_terms(shuffled).unwrap();
        prop_assert_eq!(a.to_string(), b.to_string());
        prop_assert!(a.try_sub(&b).unwrap().is_zero());
    }

    #[test]
    fn nest_iso_is_a_star_homomorphism(a in element(3), b in element(3)) {
        let ab = nest_iso(&a.try_mul(&b).unwrap()).unwrap();
        prop_assert!(ab.equals(&nest_iso(&a).unwrap().try_mul(&nest_iso(&b).unwrap()).unwrap()).unwrap());
        prop_assert!(nest_iso(&a.adjoint().unwrap()).unwrap().equals(&nest_iso(&a).unwrap().adjoint().unwrap()).unwrap());
        prop_assert!(in_commutant(&nest_iso(&a).unwrap()).unwrap());
        prop_assert!(nest_iso_inverse(&nest_iso(&a).unwrap()).unwrap().equals(&a).unwrap());
    }

    #[test]
    fn split_round_trip(a in element(6)) {
        let d = split(&a).unwrap();
        prop_assert!(d.recombine().unwrap().equals(&a).unwrap());
        for (b, p) in d.blocks.iter().flatten().zip(d.preimages.iter().flatten()) {
            prop_assert!(in_commutant(b).unwrap());
            prop_assert!(nest_iso(p).unwrap().equals(b).unwrap());
        }
    }

    #[test]
    fn split_matches_oracle(a in element(4)) {
        let back = split(&a).unwrap().recombine().unwrap();
        prop_assert!(elements_residual(&a, &back, Window::new(24).unwrap(), 1).unwrap() <= DEFAULT_TOL);
    }

    #[test]
    fn commutant_commutes_with_qubit(x in commutant_element()) {
        for a in build_generators().paulis() {
            prop_assert!(x.commutator(a).unwrap().is_zero());
        }
    }

    #[test]
    fn extraction_round_trip(a in element(3), n in 1usize..=2) {
        prop_assert!(extract_qubits(&a, n).unwrap().recombine().unwrap().equals(&a).unwrap());
    }

    #[test]
    fn float_mode_tracks_exact(a in element(3), b in element(3)) {
        let exact = a.try_mul(&b).unwrap().to_float();
        let float = a.to_float().try_mul(&b.to_float()).unwrap();
        prop_assert!(exact.approx_eq(&float, 1e-12));
    }
}
