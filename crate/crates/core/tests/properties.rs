//! Property tests over random formulas and random words.

use std::sync::Arc;

use foaut::automaton::{complement_deterministic, intersection, union, Oracle};
use foaut::compile::{encode_foltl, encode_pure_past};
use foaut::emptiness::{demangle, mangle};
use foaut::foltl::nnf;
use foaut::frontends::{encode_sfa, SfaFile, Transition};
use foaut::{
    parse_formula, satisfies_pure_past, satisfies_sentence, Domains, Formula, Signature, Structure, Symbol, Term,
    Var, Word,
};
use proptest::prelude::*;

fn sigma() -> Signature {
    Signature::new(
        ["S"],
        vec![
            Symbol::proposition("p", false),
            Symbol::proposition("q", false),
            Symbol::predicate("a", &["S"], false),
        ],
    )
    .unwrap()
}

fn leaf() -> impl Strategy<Value = Formula> {
    let x = || Var::new("x", "S");
    let ax = || Formula::atom("a", vec![Term::var("x", "S")]);
    prop_oneof![
        Just(Formula::True),
        Just(Formula::False),
        Just(Formula::prop("p")),
        Just(Formula::prop("q")),
        Just(Formula::exists(x(), ax())),
        Just(Formula::forall(x(), ax())),
    ]
}

fn formula(past_only: bool) -> impl Strategy<Value = Formula> {
    leaf().prop_recursive(3, 12, 2, move |inner| {
        let common = prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and2(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or2(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            inner.clone().prop_map(Formula::yesterday),
            inner.clone().prop_map(Formula::weak_yesterday),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::since(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::triggered(a, b)),
        ];
        if past_only {
            common.boxed()
        } else {
            prop_oneof![
                common,
                inner.clone().prop_map(Formula::next),
                inner.clone().prop_map(Formula::weak_next),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::until(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::release(a, b)),
            ]
            .boxed()
        }
    })
}

/// Letters as `(p, q, a(e0), a(e1))`.
fn word(min: usize) -> impl Strategy<Value = Vec<(bool, bool, bool, bool)>> {
    prop::collection::vec(any::<(bool, bool, bool, bool)>(), min..=3)
}

fn build(letters: &[(bool, bool, bool, bool)]) -> Word {
    let sig = Arc::new(sigma());
    let d = Arc::new(Domains::uniform(&["S"], 2));
    let mk = |&(p, q, a0, a1): &(bool, bool, bool, bool)| {
        let mut s = Structure::default_for(sig.clone(), d.clone()).unwrap();
        s.set_predicate("p", &[], p).unwrap();
        s.set_predicate("q", &[], q).unwrap();
        s.set_predicate("a", &["e0"], a0).unwrap();
        s.set_predicate("a", &["e1"], a1).unwrap();
        s
    };
    Word::new(sig.clone(), d.clone(), letters.iter().map(mk).collect()).unwrap()
}

fn accepts(a: &foaut::Automaton, w: &Word) -> bool {
    let d = w.domains().merge(&Domains::uniform(a.state_signature().sorts(), 2)).unwrap();
    Oracle::new(a, &d).unwrap().accepts(w).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printing_round_trips(phi in formula(false)) {
        let text = phi.to_string();
        let back = parse_formula(&text, &sigma()).unwrap();
        prop_assert_eq!(back, phi);
    }

    #[test]
    fn nnf_preserves_meaning(phi in formula(false), w in word(1)) {
        let w = build(&w);
        let n = nnf(&phi);
        prop_assert!(n.is_nnf());
        prop_assert_eq!(satisfies_sentence(&w, &n).unwrap(), satisfies_sentence(&w, &phi).unwrap());
    }

    #[test]
    fn foltl_encoding_matches_semantics(phi in formula(false), w in word(0)) {
        let a = encode_foltl(&phi, &sigma()).unwrap();
        let w = build(&w);
        let expected = !w.is_empty() && satisfies_sentence(&w, &phi).unwrap();
        prop_assert_eq!(accepts(&a, &w), expected, "{}", phi);
    }

    #[test]
    fn pure_past_encoding_matches_and_complements(phi in formula(true), w in word(1)) {
        let a = encode_pure_past(&phi, &sigma()).unwrap();
        let w = build(&w);
        let v = satisfies_pure_past(&w, &phi).unwrap();
        prop_assert_eq!(accepts(&a, &w), v, "{}", phi);
        let c = complement_deterministic(&a).unwrap();
        prop_assert_eq!(accepts(&c, &w), !v, "{}", phi);
    }

    #[test]
    fn union_and_intersection_follow_membership(phi in formula(false), psi in formula(false), w in word(1)) {
        let (a, b) = (encode_foltl(&phi, &sigma()).unwrap(), encode_foltl(&psi, &sigma()).unwrap());
        let w = build(&w);
        let (x, y) = (accepts(&a, &w), accepts(&b, &w));
        prop_assert_eq!(accepts(&union(&a, &b).unwrap(), &w), x || y);
        prop_assert_eq!(accepts(&intersection(&a, &b).unwrap(), &w), x && y);
    }

    #[test]
    fn mangling_round_trips(base in "[A-Za-z_][A-Za-z0-9_]{0,8}('|#[0-9]{1,3})?", step in 0usize..10_000) {
        let m = mangle(&base, step);
        prop_assert_eq!(demangle(&m), Some((base.as_str(), step)));
    }

    #[test]
    fn sfa_state_bits(states in 1usize..40) {
        let file = SfaFile {
            algebra: Signature::new(["D"], vec![]).unwrap(),
            sort: "D".into(),
            variable: "x".into(),
            guards: [("top".to_string(), "true".to_string())].into(),
            states: (0..states).map(|i| format!("q{i}")).collect(),
            initial: "q0".into(),
            fin: vec![format!("q{}", states - 1)],
            transitions: (1..states)
                .map(|i| Transition { from: format!("q{}", i - 1), guard: "top".into(), to: format!("q{i}") })
                .collect(),
        };
        let a = encode_sfa(&file.into_sfa().unwrap()).unwrap();
        let expected = (states as f64).log2().ceil() as usize + 1;
        prop_assert_eq!(a.state_signature().len(), expected);
    }
}
