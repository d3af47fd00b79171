mod common;

use common::frontends::{algebras, counter_theory, data, sfa_correspondence, SFA_FILES};
use foaut::automaton::{accepts_oracle, WordSpace};
use foaut::emptiness::{emit_smtlib, model_constants, non_empty_semi, revalidate, unroll, BmcOptions, EmptinessResult, SolverVerdict};
use foaut::frontends::{encode_dmt, encode_dmt_with, encode_sfa, load_dmt, load_sfa, sfa_word, DmtOptions};
use foaut::{parse_formula, ControlClass, Error, Theory};

/// Panics on the first disagreement.
fn check_correspondence(file: &str) -> usize {
    sfa_correspondence(file).unwrap()
}

#[test]
fn sfa_files_load() {
    let m = load_sfa(&data("sfa_positive.json")).unwrap();
    assert_eq!(m.states(), ["ok", "bad"]);
    assert_eq!(m.used_guards(), ["any", "nonpos", "pos"]);
}

#[test]
fn sfa_schema_errors_name_the_field() {
    let text = data("sfa_positive.json").replace(r#""to": "bad"}"#, r#""to": "worse"}"#);
    let err = load_sfa(&text).unwrap_err().to_string();
    assert!(err.contains("transitions[1]") && err.contains("worse"), "{err}");
    let text = data("sfa_positive.json").replace(r#""initial": "ok""#, r#""initial": "start""#);
    assert!(load_sfa(&text).unwrap_err().to_string().contains("initial"));
    let text = data("sfa_positive.json").replace(r#""pos": "gt(x, zero)""#, r#""pos": "gt(y, zero)""#);
    assert!(load_sfa(&text).unwrap_err().to_string().contains("guards.pos"));
    let text = data("sfa_positive.json").replace(r#""guard": "any""#, r#""guard": "other""#);
    assert!(load_sfa(&text).unwrap_err().to_string().contains("undeclared guard"));
}

#[test]
fn sfa_state_bits() {
    let a = encode_sfa(&load_sfa(&data("sfa_marked.json")).unwrap()).unwrap();
    assert_eq!(a.state_signature().len(), 3);
    let a = encode_sfa(&load_sfa(&data("sfa_positive.json")).unwrap()).unwrap();
    assert_eq!(a.state_signature().len(), 2);
    let a = encode_sfa(&load_sfa(&data("sfa_universal.json")).unwrap()).unwrap();
    assert_eq!(a.state_signature().len(), 1);
}

#[test]
fn sfa_encodings_are_finite_control() {
    for f in SFA_FILES {
        let m = load_sfa(&data(f)).unwrap();
        let a = encode_sfa(&m).unwrap();
        assert_eq!(a.classify(), ControlClass::FiniteControl, "{f}");
        let sigma = a.word_signature();
        assert!(sigma.get("c").is_some_and(|s| s.is_constant() && !s.rigid));
        for g in m.used_guards() {
            assert!(sigma.get(g).is_some_and(|s| s.is_predicate() && s.rigid && s.arity() == 1));
        }
    }
}

#[test]
fn sfa_encodings_match_simulation() {
    for f in SFA_FILES {
        assert!(check_correspondence(f) > 0);
    }
}

/// Every word in which the guard predicate denotes `⊤` is accepted; the
/// others do not arise from character words.
#[test]
fn universal_sfa_accepts_everything() {
    let m = load_sfa(&data("sfa_universal.json")).unwrap();
    let a = encode_sfa(&m).unwrap();
    let meaning = parse_formula("forall x:D. top(x)", a.word_signature()).unwrap();
    let theory = Theory::with_axioms(vec![meaning]);
    for n in 1..=2 {
        let d = common::domains_for(&a, n);
        let sp = WordSpace::new(a.word_signature(), &d, &theory, Default::default()).unwrap();
        assert!(common::language(&a, &sp, &d, 3).into_iter().all(|v| v));
        let sp = common::space(a.word_signature(), &d);
        assert!(!common::language(&a, &sp, &d, 1).into_iter().all(|v| v));
    }
}

#[test]
fn positive_sfa_word_tables() {
    let m = load_sfa(&data("sfa_positive.json")).unwrap();
    let a = encode_sfa(&m).unwrap();
    // gt holds exactly for (e1, e0); zero is e0, so only e1 is positive.
    let alg = algebras(&m)
        .into_iter()
        .find(|s| {
            s.constant_value("zero").unwrap() == "e0"
                && s.holds("gt", &["e1", "e0"]).unwrap()
                && !s.holds("gt", &["e0", "e0"]).unwrap()
                && !s.holds("gt", &["e0", "e1"]).unwrap()
                && !s.holds("gt", &["e1", "e1"]).unwrap()
        })
        .expect("algebra present");
    let w = sfa_word(&m, &alg, &["e1", "e1"]).unwrap();
    assert!(w.letters()[0].holds("pos", &["e1"]).unwrap());
    assert!(!w.letters()[0].holds("pos", &["e0"]).unwrap());
    assert!(accepts_oracle(&a, &w, w.domains()).unwrap());
    let w = sfa_word(&m, &alg, &["e1", "e0"]).unwrap();
    assert!(!accepts_oracle(&a, &w, w.domains()).unwrap());
}

#[test]
fn dmt_files_load() {
    let b = load_dmt(&data("dmt_counter.json")).unwrap();
    assert_eq!(b.variables(), [("v".to_string(), "Int".to_string())]);
    assert_eq!(b.actions().len(), 1);
    assert_eq!(b.actions()[0].constraint.to_string(), "v' = add(v, one)");
}

#[test]
fn dmt_schema_errors() {
    let bad_init = data("dmt_counter.json").replace(r#""v": "zero""#, r#""v": "add""#);
    assert!(load_dmt(&bad_init).unwrap_err().to_string().contains("initial.v"));
    let forall = data("dmt_counter.json").replace("v_w = add(v_r, one)", "forall d: Int. v_w = add(v_r, d)");
    let err = load_dmt(&forall).unwrap_err().to_string();
    assert!(err.contains("actions[0]") && err.contains("conjunction"), "{err}");
    let disj = data("dmt_counter.json").replace("v_w = add(v_r, one)", "v_w = one | v_w = zero");
    assert!(load_dmt(&disj).is_err());
    let clash = data("dmt_counter.json").replace(r#""name": "inc""#, r#""name": "one""#);
    assert!(matches!(load_dmt(&clash), Err(Error::Schema(_))));
}

#[test]
fn dmt_encodings_are_data_control() {
    for f in ["dmt_counter.json", "dmt_two.json"] {
        let b = load_dmt(&data(f)).unwrap();
        for exactly_one in [true, false] {
            let opts = DmtOptions {
                exactly_one,
                ..DmtOptions::default()
            };
            let a = encode_dmt_with(&b, &opts).unwrap();
            assert_eq!(a.classify(), ControlClass::DataControl);
            for act in b.actions() {
                assert!(a.word_signature().get(&act.name).is_some_and(|s| s.is_proposition()));
            }
        }
    }
}

#[test]
fn dmt_transition_shapes() {
    let b = load_dmt(&data("dmt_two.json")).unwrap();
    let loose = encode_dmt_with(
        &b,
        &DmtOptions {
            exactly_one: false,
            ..DmtOptions::default()
        },
    )
    .unwrap();
    assert_eq!(
        loose.trans().to_string(),
        "(bump -> u' = add(u, one) & v' = v) | (copy -> (exists d:Int. gt(d, zero) & v' = add(u, d) & u' = u))"
    );
    let strict = encode_dmt(&b).unwrap();
    assert!(strict.trans().to_string().starts_with("(bump & !copy | !bump & copy) & "));
    assert_eq!(strict.init().to_string(), "u = zero & v = zero");
    assert_eq!(strict.fin().to_string(), "true");
}

#[test]
fn dmt_without_actions_allows_any_step() {
    let text = data("dmt_counter.json").replace(r#""actions": ["#, r#""unused": ["#);
    assert!(load_dmt(&text).is_err());
    let b = load_dmt(&data("dmt_counter.json").replace(
        r#"[
    {"name": "inc", "constraint": "v_w = add(v_r, one)"}
  ]"#,
        "[]",
    ))
    .unwrap();
    assert!(b.actions().is_empty());
    assert_eq!(encode_dmt(&b).unwrap().trans().to_string(), "true");
}

#[test]
fn counter_dmt_unrolling_forces_value() {
    let b = load_dmt(&data("dmt_counter.json")).unwrap();
    let a = encode_dmt(&b).unwrap();
    let theory = counter_theory();
    let solver = common::smt::solver();
    let script = emit_smtlib(&unroll(&a, 3, true), &theory).unwrap();
    let SolverVerdict::Sat(model) = solver.solve(&script).unwrap() else {
        panic!("counter unrolling is satisfiable");
    };
    let values = model_constants(&model).unwrap();
    for i in 0..=3 {
        assert_eq!(values[&format!("v@{i}")], i.to_string());
    }
    for i in 0..3 {
        assert_eq!(values[&format!("inc@{i}")], "true");
    }
    let opts = DmtOptions {
        fin: "!(v = add(add(one, one), one))".into(),
        ..DmtOptions::default()
    };
    let a = encode_dmt_with(&b, &opts).unwrap();
    let script = emit_smtlib(&unroll(&a, 3, true), &theory).unwrap();
    assert_eq!(solver.solve(&script).unwrap(), SolverVerdict::Unsat);
}

#[test]
fn counter_dmt_reaches_three_at_depth_three() {
    let b = load_dmt(&data("dmt_counter.json")).unwrap();
    let opts = DmtOptions {
        fin: "v = add(add(one, one), one)".into(),
        ..DmtOptions::default()
    };
    let a = encode_dmt_with(&b, &opts).unwrap();
    let theory = counter_theory();
    let solver = common::smt::solver();
    let bmc = BmcOptions {
        k_max: 5,
        ..BmcOptions::default()
    };
    match non_empty_semi(&a, &theory, &solver, &bmc).unwrap() {
        EmptinessResult::NotEmpty { k, witness } => {
            assert_eq!(k, 3);
            assert!(revalidate(&a, &theory, &solver, &witness).unwrap());
        }
        other => panic!("{other}"),
    }
}
