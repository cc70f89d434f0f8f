mod common;

use bifix::charging::{
    charged_verdict, charging_certificate, is_g_invertible, is_nilpotent_pi_invertible, omega_image,
    procyclic_fingerprint, Certificate, ChargeOptions, Formation,
};
use bifix::par::Execution;
use bifix::substitution::catalog::*;
use bifix::{Alphabet, ChargeOutcome, Dfa, FiniteCode, FiniteGroup, GroupCodeSpec, LanguageSource, Substitution};
use common::*;

#[test]
fn g_invertibility_agrees_with_free_group_search() {
    for phi in [fibonacci(), thue_morse(), s012(), s01(), ab_periodic()] {
        let found = letters_reachable_in_free_group(&phi, 6);
        assert_eq!(is_g_invertible(&phi), found, "{}", phi.to_rules());
    }
    // a substitution whose images are a basis only after a long chain
    let phi = Substitution::parse("a->aab; b->ab").unwrap();
    assert!(is_g_invertible(&phi));
    assert!(letters_reachable_in_free_group(&phi, 4));
}

#[test]
fn omega_images_match_matrix_powers() {
    for phi in [fibonacci(), thue_morse(), s012(), s01()] {
        let k = phi.alphabet().size();
        for n in 1..=12usize {
            let o = omega_image(&phi, &FiniteGroup::cyclic(n), &vec![1 % n; k]);
            let got: Vec<u64> = o.values.iter().map(|&v| v as u64).collect();
            assert_eq!(got, omega_lengths_mod(&phi, n as u64), "{} mod {n}", phi.to_rules());
            assert!(o.exponent >= o.preperiod.max(1) && o.exponent.is_multiple_of(o.period));
        }
    }
}

#[test]
fn unimodular_proper_fingerprints_are_trivial() {
    let f = procyclic_fingerprint(&s012().into(), 12, &ChargeOptions::default(), Execution::default()).unwrap();
    assert!(f.entries.iter().all(|e| e.d == 1 && e.exact));
}

#[test]
fn nilpotent_invertibility_depends_on_primes() {
    let r = is_nilpotent_pi_invertible(&s01(), &[2, 3]);
    assert!(!r.invertible);
    assert_eq!(r.failing_prime, Some(2));
    assert_eq!(r.determinant, "-2");
    assert!(charging_certificate(&s01(), &Formation::NilpotentPi(vec![5])).unwrap().is_some());
    assert!(charging_certificate(&fibonacci(), &Formation::AllFiniteGroups).unwrap().is_some());
}

#[test]
fn ladder_outcomes() {
    let o = ChargeOptions::default();
    let v = charged_verdict(&s01().into(), &GroupCodeSpec::Power(2), &o).unwrap();
    assert_eq!(v.outcome, ChargeOutcome::NotCharged { certificate: Certificate::ProperNonperiodicExact });
    assert_eq!(v.image_order(), Some(1));
    let v = charged_verdict(&fibonacci().into(), &GroupCodeSpec::Power(5), &o).unwrap();
    assert!(v.outcome.is_charged());
    let v = charged_verdict(&LanguageSource::periodic("ab").unwrap(), &GroupCodeSpec::Power(2), &o).unwrap();
    assert_eq!(v.outcome, ChargeOutcome::NotCharged { certificate: Certificate::PeriodicShortcut });
    let v = charged_verdict(&LanguageSource::periodic("ab").unwrap(), &GroupCodeSpec::Power(3), &o).unwrap();
    assert_eq!(v.outcome, ChargeOutcome::Charged { certificate: Certificate::PeriodicShortcut });
    let j = v.to_json();
    assert_eq!(j["verdict"], "Charged");
    assert_eq!(j["group_order"], 3);
}

#[test]
fn syntactic_group_codes() {
    let a = Alphabet::from_chars("01").unwrap();
    // (A²)* given through its automaton agrees with A^2
    let z = GroupCodeSpec::from_dfa("(A^2)*", &Dfa::of_star(&FiniteCode::power(&a, 2).unwrap())).unwrap();
    let o = ChargeOptions::default();
    let v1 = charged_verdict(&s01().into(), &z, &o).unwrap();
    let v2 = charged_verdict(&s01().into(), &GroupCodeSpec::Power(2), &o).unwrap();
    assert_eq!(v1.outcome.name(), v2.outcome.name());
    assert_eq!(v1.image_order(), v2.image_order());
    assert!(GroupCodeSpec::from_code(&FiniteCode::parse(&a, "0,10").unwrap()).is_err());
}

#[test]
fn no_alarm_over_catalog() {
    let o = ChargeOptions::default();
    for phi in [fibonacci(), thue_morse(), s012(), s01()] {
        for n in 2..=8 {
            let v = charged_verdict(&phi.clone().into(), &GroupCodeSpec::Power(n), &o).unwrap();
            assert!(v.alarm.is_none(), "{} A^{n}: {:?}", phi.to_rules(), v.alarm);
        }
    }
}
