mod common;

use bifix::language::WordClass;
use bifix::substitution::catalog::*;
use bifix::{Alphabet, FactorSet, LanguageSource, Word};
use common::*;

/// Least `R` such that every factor of length `R` of a long iterate
/// contains every factor of length `k`.
fn uniform_bound(levels: &[std::collections::BTreeSet<Vec<u32>>], k: usize) -> Option<usize> {
    (k..levels.len()).find(|&r| {
        levels[r].iter().all(|w| levels[k].iter().all(|u| w.windows(k).any(|v| v == u.as_slice())))
    })
}

#[test]
fn sturmian_complexity() {
    let f = fibonacci().factor_language(30).unwrap();
    assert!((0..=30).all(|k| f.complexity(k).unwrap() == k + 1));
    assert_eq!(f.complexity(5).unwrap(), 6);
}

#[test]
fn uniform_recurrence_bounds_match_brute_force() {
    for phi in [fibonacci(), thue_morse(), s012()] {
        let f = phi.factor_language(40).unwrap();
        let oracle = factors_by_iteration(&phi, 40, 100_000);
        for k in 1..=5 {
            let u = f.is_uniformly_recurrent_up_to(k).unwrap();
            assert_eq!(u.bound, uniform_bound(&oracle, k), "{} order {k}", phi.to_rules());
        }
    }
}

#[test]
fn recurrence_of_windows() {
    assert!(fibonacci().factor_language(20).unwrap().is_recurrent_up_to(8).unwrap().recurrent);
    let a = Alphabet::from_chars("ab").unwrap();
    // no return from b to a
    let words = [a.parse_word("aabb").unwrap()];
    let mut all = Vec::new();
    for w in &words {
        for k in 1..=w.len() {
            for i in 0..=w.len() - k {
                all.push(w.factor(i, k));
            }
        }
    }
    let f = FactorSet::from_words(a, all.iter(), 3).unwrap();
    let r = f.is_recurrent_up_to(2).unwrap();
    assert!(!r.recurrent);
    assert_eq!(r.failing_order, Some(1));
}

#[test]
fn extension_graph_classes() {
    let f = s012().factor_language(20).unwrap();
    let a = f.alphabet().clone();
    assert_eq!(f.extension_graph(&a.parse_word("1").unwrap()).unwrap().classify(), WordClass::Disconnected);
    let g = f.extension_graph(&Word::empty()).unwrap();
    assert_eq!(g.vertex_count(), 6);
    let c = f.classify_words(3).unwrap();
    assert!(!c.connected);
    let tm = thue_morse().factor_language(20).unwrap();
    let c = tm.classify_words(2).unwrap();
    assert!(c.connected && !c.dendric);
    let s = s01().factor_language(20).unwrap();
    let c = s.classify_words(3).unwrap();
    assert_eq!(c.first_disconnected.map(|w| s.alphabet().render(&w)), Some("00".to_string()));
}

#[test]
fn json_round_trip_and_errors() {
    let f = thue_morse().factor_language(6).unwrap();
    let back = FactorSet::from_json(&f.to_json().to_string()).unwrap();
    assert_eq!(back, f);
    assert!(FactorSet::from_json(r#"{"alphabet":["a"],"L":1,"factors":[["aa"]]}"#).is_err());
    assert!(f.rauzy_graph(6).is_err());
    assert!(f.is_uniformly_recurrent_up_to(6).is_err());
}

#[test]
fn periodic_windows() {
    let f = LanguageSource::periodic("abc").unwrap().factor_set(9).unwrap();
    assert!((1..=9).all(|k| f.complexity(k).unwrap() == 3));
    assert_eq!(f.rauzy_graph(2).unwrap().single_cycle_length(), Some(3));
    assert_eq!(f.is_uniformly_recurrent_up_to(2).unwrap().bound, Some(4));
}
