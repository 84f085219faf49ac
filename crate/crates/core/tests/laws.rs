use std::fs;
use std::path::PathBuf;

use cccc_core::surface::{parse_file, parse_term, pretty};
use cccc_core::syntax::{alpha_eq, free_vars, occurs_free, rename, subst};
use cccc_core::{Name, SourceTerm as S, TargetTerm as T};
use proptest::prelude::*;

const NAMES: [&str; 5] = ["x", "y", "z", "A", "B"];

fn name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(&NAMES[..])
}

fn source() -> impl Strategy<Value = S> {
    let leaf = prop_oneof![
        name().prop_map(S::var),
        Just(S::Star),
        Just(S::Bool),
        Just(S::True),
        Just(S::False),
    ];
    leaf.prop_recursive(5, 48, 3, |inner| {
        prop_oneof![
            (name(), inner.clone(), inner.clone()).prop_map(|(x, a, b)| S::lam(x, a, b)),
            (name(), inner.clone(), inner.clone()).prop_map(|(x, a, b)| S::pi(x, a, b)),
            (name(), inner.clone(), inner.clone()).prop_map(|(x, a, b)| S::sigma(x, a, b)),
            (inner.clone(), inner.clone()).prop_map(|(f, a)| S::app(f, a)),
            (name(), inner.clone(), inner.clone(), inner.clone()).prop_map(|(x, e, t, b)| S::let_(x, e, t, b)),
            (inner.clone(), inner.clone(), name(), inner.clone(), inner.clone())
                .prop_map(|(a, b, x, t, u)| S::pair(a, b, S::sigma(x, t, u))),
            inner.clone().prop_map(|e| S::Fst(e.into())),
            inner.clone().prop_map(|e| S::Snd(e.into())),
            (inner.clone(), inner.clone(), inner).prop_map(|(c, t, f)| S::if_(c, t, f)),
        ]
    })
}

fn target() -> impl Strategy<Value = T> {
    let leaf = prop_oneof![
        name().prop_map(T::var),
        Just(T::Star),
        Just(T::UnitTy),
        Just(T::UnitVal),
        Just(T::True),
    ];
    leaf.prop_recursive(5, 48, 3, |inner| {
        prop_oneof![
            (name(), inner.clone(), name(), inner.clone(), inner.clone())
                .prop_map(|(n, a, x, b, c)| T::CodeVal(n.into(), a.into(), x.into(), b.into(), c.into())),
            (name(), inner.clone(), name(), inner.clone(), inner.clone())
                .prop_map(|(n, a, x, b, c)| T::CodeTy(n.into(), a.into(), x.into(), b.into(), c.into())),
            (inner.clone(), inner.clone()).prop_map(|(c, e)| T::Clo(c.into(), e.into())),
            (name(), inner.clone(), inner.clone()).prop_map(|(x, a, b)| T::pi(x, a, b)),
            (inner.clone(), inner.clone()).prop_map(|(f, a)| T::app(f, a)),
            (inner.clone(), inner.clone(), name(), inner)
                .prop_map(|(a, b, x, t)| T::pair(a, b, T::sigma(x, t, T::UnitTy))),
        ]
    })
}

proptest! {
    #[test]
    fn source_print_parse_round_trip(e in source()) {
        let back: S = parse_term(&pretty(&e)).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn target_print_parse_round_trip(e in target()) {
        let back: T = parse_term(&pretty(&e)).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn alpha_eq_is_reflexive_and_invariant_under_renaming(e in source(), x in name()) {
        prop_assert!(alpha_eq(&e, &e));
        let fresh = Name::new("fresh0");
        let body = S::lam(x, S::Bool, e.clone());
        let renamed = S::lam(fresh.clone(), S::Bool, rename(&e, &Name::new(x), &fresh));
        prop_assert!(alpha_eq(&body, &renamed));
    }

    #[test]
    fn substitution_removes_the_variable(e in source(), x in name(), v in source()) {
        let x = Name::new(x);
        prop_assume!(!occurs_free(&x, &v));
        let out = subst(&e, &v, &x);
        prop_assert!(!occurs_free(&x, &out));
        for y in free_vars(&out) {
            prop_assert!(occurs_free(&y, &e) || occurs_free(&y, &v));
        }
    }

    #[test]
    fn substitution_for_absent_variable_is_identity(e in source(), x in name()) {
        let x = Name::new(x);
        prop_assume!(!occurs_free(&x, &e));
        prop_assert!(alpha_eq(&subst(&e, &S::True, &x), &e));
    }

    #[test]
    fn substitution_avoids_capture(y in name(), x in name()) {
        prop_assume!(x != y);
        let e = S::lam(y, S::Bool, S::var(x));
        let out = subst(&e, &S::var(y), &Name::new(x));
        let S::Lam(binder, _, body) = &out else { unreachable!() };
        prop_assert_ne!(binder.as_str(), y);
        prop_assert_eq!(&**body, &S::var(y));
    }
}

#[test]
fn pair_annotation_must_be_sigma() {
    let err = parse_term::<S>("(pair true false Bool)").unwrap_err();
    assert!(err.to_string().starts_with("1:18: expected"), "{err}");
    parse_term::<S>("(pair true false (Sigma (x Bool) Bool))").unwrap();
}

#[test]
fn corpus_files_reprint_to_equal_files() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/cc");
    let mut n = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let file = parse_file::<S>(&fs::read_to_string(&path).unwrap()).unwrap();
        let again = parse_file::<S>(&file.to_string()).unwrap();
        assert_eq!(again.to_string(), file.to_string(), "{}", path.display());
        assert_eq!(again.main(), file.main());
        n += 1;
    }
    assert!(n >= 30);
}
