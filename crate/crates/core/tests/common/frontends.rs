//! s-FA and DMT fixtures and the s-FA correspondence sweep.

use std::sync::Arc;

use foaut::automaton::accepts_oracle;
use foaut::frontends::{encode_sfa, load_sfa, sfa_word, simulate_sfa, Sfa};
use foaut::{enumerate_structures, Domains, Structure, Theory};

pub const SFA_FILES: &[&str] = &["sfa_positive.json", "sfa_marked.json", "sfa_universal.json"];

pub fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

/// Every structure of the guard algebra over two characters.
pub fn algebras(m: &Sfa) -> Vec<Structure> {
    let domains = Arc::new(Domains::uniform(&[m.sort()], 2));
    enumerate_structures(Arc::new(m.algebra().clone()), domains).unwrap().collect()
}

pub fn char_words(elems: &[String], max_len: usize) -> Vec<Vec<&str>> {
    let mut out = vec![vec![]];
    let mut frontier: Vec<Vec<&str>> = vec![vec![]];
    for _ in 0..max_len {
        let next: Vec<Vec<&str>> = frontier
            .iter()
            .flat_map(|w| {
                elems.iter().map(move |e| {
                    let mut w2 = w.clone();
                    w2.push(e.as_str());
                    w2
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Compares the encoding with direct simulation on every character word of
/// length at most 3, for every algebra over two characters. Returns the
/// number of words checked or the first disagreement.
pub fn sfa_correspondence(file: &str) -> Result<usize, String> {
    let m = load_sfa(&data(file)).unwrap();
    let a = encode_sfa(&m).unwrap();
    let mut n = 0;
    for alg in algebras(&m) {
        let elems = alg.domains().elements(m.sort()).unwrap().to_vec();
        for chars in char_words(&elems, 3) {
            let word = sfa_word(&m, &alg, &chars).unwrap();
            let expected = simulate_sfa(&m, &alg, &chars).unwrap();
            let got = accepts_oracle(&a, &word, word.domains()).unwrap();
            if got != expected {
                return Err(format!("{file}: {chars:?} over {:?}: encoding {got}, s-FA {expected}", alg.tables()));
            }
            n += 1;
        }
    }
    Ok(n)
}

pub fn counter_theory() -> Theory {
    let mut t = Theory::empty();
    t.smt.logic = "QF_LIA".into();
    t.smt.sorts.insert("Int".into(), "Int".into());
    for (k, v) in [("zero", "0"), ("one", "1"), ("add", "+")] {
        t.smt.symbols.insert(k.into(), v.into());
    }
    t
}
