//! Property tests over randomly generated formulas, terms, rationals and
//! McNaughton functions.

use cmvkit::logic::{evaluate, parse_formula, Formula};
use cmvkit::pwl::{McNaughton, PwlFunction, PwlOp};
use cmvkit::term::{parse_term, Term};
use cmvkit::{MvOps, Rational, Subset};
use proptest::prelude::*;

fn formula() -> impl Strategy<Value = Formula> {
    Just(Formula::Var).prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::subst(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::oplus(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::odot(a, b)),
        ]
    })
}

fn term() -> impl Strategy<Value = Term> {
    prop_oneof![Just(Term::Var), Just(Term::Zero)].prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.oplus(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.odot(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.join(b)),
        ]
    })
}

fn unit() -> impl Strategy<Value = Rational> {
    (1i64..=24).prop_flat_map(|q| (0..=q).prop_map(move |p| Rational::new(p, q)))
}

fn function() -> impl Strategy<Value = PwlFunction> {
    term().prop_map(|t| t.to_pwl())
}

fn op() -> impl Strategy<Value = PwlOp> {
    proptest::sample::select(PwlOp::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn formulas_print_and_reparse(phi in formula()) {
        let text = phi.to_string();
        prop_assert_eq!(parse_formula(&text).unwrap(), phi);
    }

    #[test]
    fn terms_print_and_reparse(t in term()) {
        let back = parse_term(&t.to_string()).unwrap();
        prop_assert_eq!(back.to_pwl(), t.to_pwl());
    }

    #[test]
    fn rationals_print_and_reparse(p in -1000i64..1000, q in 1i64..1000) {
        let r = Rational::new(p, q);
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
    }

    #[test]
    fn pointwise_agrees_with_scalars(f in function(), g in function(), o in op(), x in unit()) {
        let h = PwlFunction::pointwise(o, &f, &g);
        let want = o.apply(&f.eval(&x).unwrap(), &g.eval(&x).unwrap());
        prop_assert_eq!(h.eval(&x).unwrap(), want);
    }

    #[test]
    fn composition_agrees_with_scalars(f in function(), g in function(), x in unit()) {
        let h = PwlFunction::compose(&f, &g);
        prop_assert_eq!(h.eval(&x).unwrap(), f.eval(&g.eval(&x).unwrap()).unwrap());
    }

    #[test]
    fn composition_is_associative(f in function(), g in function(), h in function()) {
        let left = PwlFunction::compose(&PwlFunction::compose(&f, &g), &h);
        let right = PwlFunction::compose(&f, &PwlFunction::compose(&g, &h));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn terms_stay_in_m1(t in term()) {
        let f = t.to_pwl();
        prop_assert!(f.membership().in_m1);
        prop_assert!(f.neg().membership().in_m1);
    }

    #[test]
    fn json_round_trip(f in function()) {
        let text = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<PwlFunction>(&text).unwrap(), f);
    }

    #[test]
    fn substitution_evaluates_as_composition(a in formula(), b in formula()) {
        let m = McNaughton;
        let lhs = evaluate(&m, &Formula::subst(a.clone(), b.clone()));
        let rhs = PwlFunction::compose(&evaluate(&m, &a), &evaluate(&m, &b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mv_identities_in_m1(f in function(), g in function()) {
        let m = McNaughton;
        // (x* ⊕ y)* ⊕ y = (y* ⊕ x)* ⊕ x
        let lhs = m.oplus(&m.neg(&m.oplus(&m.neg(&f), &g)), &g);
        let rhs = m.oplus(&m.neg(&m.oplus(&m.neg(&g), &f)), &f);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(m.neg(&m.neg(&f)), f);
    }

    #[test]
    fn subset_masks(items in proptest::collection::vec(0usize..40, 0..20)) {
        let s = Subset::new(items.iter().copied());
        prop_assert_eq!(Subset::from_mask(&s.mask(40)), s.clone());
        prop_assert!(items.iter().all(|&x| s.contains(x)));
    }
}
