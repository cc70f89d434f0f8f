mod common;

use bifix::monoid::{is_group_code, monoids_of_codes, DEFAULT_ELEMENT_CAP};
use bifix::par::Execution;
use bifix::{Alphabet, Dfa, Error, FiniteCode, FiniteMonoidPresentation};
use common::*;

fn ab() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

#[test]
fn power_codes_are_cyclic_groups() {
    let a = ab();
    for n in 1..=8 {
        let x = FiniteCode::power(&a, n).unwrap();
        let m = FiniteMonoidPresentation::of_code(&x).unwrap();
        assert!(m.is_group());
        assert_eq!(m.order(), n);
        // η(w) only depends on |w| mod n
        let w1 = a.parse_word(&"ab".repeat(n + 1)).unwrap();
        let w2 = a.parse_word("ba").unwrap();
        assert_eq!(m.eta(&w1), m.eta(&w2));
        assert_eq!(is_group_code(&x).unwrap().order, Some(n));
    }
}

#[test]
fn green_matches_naive_oracle() {
    let a = ab();
    for text in ["a,ba", "aa,ab,ba,bb", "a,ab,bb", "ab,ba", "aab,abb,b"] {
        let x = FiniteCode::parse(&a, text).unwrap();
        let m = FiniteMonoidPresentation::of_code(&x).unwrap();
        let g = m.green();
        let o = naive_green(&m);
        assert_eq!(g.r_classes, o.r, "{text}");
        assert_eq!(g.l_classes, o.l, "{text}");
        assert_eq!(g.j_classes, o.j, "{text}");
        assert_eq!(g.h_classes, o.h, "{text}");
        assert_eq!(g.idempotents, o.idempotents, "{text}");
        assert_eq!(g.minimal_ideal, o.minimal_ideal, "{text}");
    }
}

#[test]
fn automaton_json_round_trip() {
    let a = ab();
    let dfa = Dfa::of_star(&FiniteCode::parse(&a, "a,ba").unwrap());
    let back = Dfa::from_json(&a, &dfa.to_json().to_string()).unwrap();
    assert_eq!(back, dfa);
    assert!(Dfa::from_json(&a, r#"{"states":1,"initial":0,"accepting":[3],"delta":{"a":[0],"b":[0]}}"#).is_err());
    assert!(Dfa::from_json(&a, r#"{"states":1,"initial":0,"accepting":[],"delta":{"a":[0]}}"#).is_err());
}

#[test]
fn element_cap_is_a_resource_limit() {
    let x = FiniteCode::parse(&ab(), "aab,abb,b,ba").unwrap();
    let dfa = Dfa::of_star(&x);
    assert!(matches!(
        FiniteMonoidPresentation::transition_monoid_capped(&dfa, 2),
        Err(Error::ResourceLimit { .. })
    ));
    assert!(FiniteMonoidPresentation::transition_monoid_capped(&dfa, DEFAULT_ELEMENT_CAP).is_ok());
}

#[test]
fn batch_construction_is_order_preserving() {
    let a = ab();
    let codes: Vec<FiniteCode> = (1..=6).map(|n| FiniteCode::power(&a, n).unwrap()).collect();
    let seq = monoids_of_codes(&codes, 1000, Execution::Sequential);
    let par = monoids_of_codes(&codes, 1000, Execution::Parallel);
    let orders = |v: &[bifix::Result<FiniteMonoidPresentation>]| -> Vec<usize> {
        v.iter().map(|m| m.as_ref().unwrap().order()).collect()
    };
    assert_eq!(orders(&seq), vec![1, 2, 3, 4, 5, 6]);
    assert_eq!(orders(&seq), orders(&par));
}
