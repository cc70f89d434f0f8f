//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when
//! any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use bifix::charging::{
    charged_verdict, compare_fingerprints, is_g_invertible, is_nilpotent_pi_invertible, omega_image,
    procyclic_fingerprint, Certificate, ChargeOptions, FingerprintVerdict, ProcyclicFingerprint,
};
use bifix::code::{
    classify_code, is_f_maximal_prefix, is_left_f_complete, is_right_f_complete, parse, sample_bifix_codes,
    sample_prefix_codes, CompletenessVerdict, FMaximality,
};
use bifix::decoding::{
    check_decoding_recurrence, decode, higher_power, theorem_consistency_report, ConsistencyStatus, ReportParams,
};
use bifix::language::WordClass;
use bifix::monoid::is_group_code;
use bifix::par::Execution;
use bifix::substitution::catalog::*;
use bifix::{
    Alphabet, ChargeOutcome, Dfa, FactorSet, FiniteCode, FiniteGroup, FiniteMonoidPresentation, GroupCodeSpec,
    LanguageSource, Substitution, Word,
};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ab() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

fn signed(m: &[Vec<u64>]) -> Vec<Vec<i64>> {
    m.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()
}

fn letter(phi: &Substitution, name: &str) -> Option<u32> {
    phi.alphabet().letter(name)
}

fn fibonacci_suite() -> Check {
    let phi = fibonacci();
    let m = phi.incidence_matrix();
    let prim = phi.is_primitive().map_err(err)?;
    ensure!(prim.witness_exponent == Some(2), "primitivity witness {:?}", prim.witness_exponent);
    ensure!(primitive_exponent(&m.entries, 50) == Some(2), "oracle primitivity exponent differs");
    ensure!(!phi.is_proper().proper, "reported proper");
    let s = phi.stability().map_err(err)?;
    ensure!(s.witness_k.is_some_and(|k| k <= 2), "stability witness {:?}", s.witness_k);
    ensure!(m.determinant().to_string() == "-1", "det {}", m.determinant());
    ensure!(leibniz_determinant(&signed(&m.entries)) == -1, "Leibniz det differs");
    let f12 = phi.factor_language(12).map_err(err)?;
    for k in 0..=12 {
        ensure!(f12.complexity(k).map_err(err)? == k + 1, "p({k}) = {}", f12.level(k).len());
    }
    let oracle = factors_by_iteration(&phi, 12, 20_000);
    for k in 1..=12 {
        let lib: BTreeSet<Vec<u32>> = f12.level(k).iter().map(|w| w.letters().to_vec()).collect();
        ensure!(lib == oracle[k], "factors of length {k} differ from the iteration oracle");
    }
    let f40 = phi.factor_language(40).map_err(err)?;
    let cls = f40.classify_words(8).map_err(err)?;
    ensure!(cls.dendric, "not dendric up to 8: {:?}", cls.first_non_tree);
    let f20 = phi.factor_language(20).map_err(err)?;
    let x = FiniteCode::parse(&ab(), "a,ba").map_err(err)?;
    ensure!(
        is_right_f_complete(&x, &f20).map_err(err)? == CompletenessVerdict::HoldsUpTo { bound: 20 },
        "{{a,ba}} not right F-complete up to 20"
    );
    let y = FiniteCode::parse(&ab(), "aa,bb").map_err(err)?;
    let d = decode(&f40, &y, 6).map_err(err)?;
    let members: Vec<String> = d.members().into_iter().flatten().collect();
    ensure!(members == ["ε", "⟨aa⟩"], "decoding {members:?}");
    ensure!(d.is_finite_within(), "decoding reported infinite");
    // enumeration oracle: sequences over {aa, bb} spelling a factor
    let long = factors_by_iteration(&phi, 12, 20_000);
    let mut found = vec!["ε".to_string()];
    for len in 1..=6 {
        for bits in 0..(1u32 << len) {
            let seq: Vec<u32> = (0..len).map(|i| (bits >> i) & 1).collect();
            let spelled: Vec<u32> = seq.iter().flat_map(|&b| [b, b]).collect();
            if long[spelled.len()].contains(&spelled) {
                found.push(seq.iter().map(|&b| if b == 0 { "⟨aa⟩" } else { "⟨bb⟩" }).collect());
            }
        }
    }
    ensure!(found == members, "enumeration oracle gives {found:?}");
    Ok(())
}

fn counterexample_suite() -> Check {
    let src = LanguageSource::periodic("ab").map_err(err)?;
    let f = src.factor_set(24).map_err(err)?;
    let x = FiniteCode::parse(&ab(), "ab,ba").map_err(err)?;
    let d = decode(&f, &x, 12).map_err(err)?;
    let z = d.alphabet().letter("⟨ab⟩").ok_or("no ⟨ab⟩")?;
    let t = d.alphabet().letter("⟨ba⟩").ok_or("no ⟨ba⟩")?;
    for k in 1..=12 {
        let expect: BTreeSet<Word> = [Word::from(vec![z; k]), Word::from(vec![t; k])].into();
        ensure!(d.factors().level(k) == &expect, "level {k} is not {{z^k, t^k}}");
    }
    let r = check_decoding_recurrence(&d, 3).map_err(err)?;
    ensure!(r.recurrence.failing_order == Some(1), "first failing order {:?}", r.recurrence.failing_order);
    Ok(())
}

fn s012_suite() -> Check {
    let phi = s012();
    let p = phi.is_proper();
    ensure!(
        p.proper && p.first == letter(&phi, "0") && p.last == letter(&phi, "2"),
        "properness {p:?}"
    );
    ensure!(phi.is_primitive().map_err(err)?.primitive, "not primitive");
    let m = phi.incidence_matrix();
    ensure!(m.determinant().to_string() == "-1", "det {}", m.determinant());
    ensure!(leibniz_determinant(&signed(&m.entries)) == -1, "Leibniz det differs");
    ensure!(is_g_invertible(&phi), "not G-invertible");
    ensure!(letters_reachable_in_free_group(&phi, 6), "free-group oracle finds no letters");
    let f = phi.factor_language(40).map_err(err)?;
    let one = letter(&phi, "1").unwrap();
    let a1a: Vec<String> = f
        .level(3)
        .iter()
        .filter(|w| w.letters()[1] == one)
        .map(|w| phi.alphabet().render(w))
        .collect();
    ensure!(a1a == ["012", "210"], "F ∩ A1A = {a1a:?}");
    let oracle: Vec<String> = factors_by_iteration(&phi, 3, 20_000)[3]
        .iter()
        .filter(|w| w[1] == one)
        .map(|w| phi.alphabet().render(&word(w)))
        .collect();
    ensure!(oracle == a1a, "iteration oracle gives {oracle:?}");
    let g = f.extension_graph(&Word::from(vec![one])).map_err(err)?;
    ensure!(g.classify() == WordClass::Disconnected, "E(1) is {:?}", g.classify());
    let src: LanguageSource = phi.clone().into();
    for n in 2..=6 {
        let v = charged_verdict(&src, &GroupCodeSpec::Power(n), &ChargeOptions::default()).map_err(err)?;
        ensure!(v.outcome.is_charged(), "A^{n}: {:?}", v.outcome);
    }
    for (n, lx) in [(2, 120), (3, 150)] {
        let f = phi.factor_language(n * lx).map_err(err)?;
        let d = higher_power(&f, n, lx).map_err(err)?;
        let r = check_decoding_recurrence(&d, 6).map_err(err)?;
        ensure!(
            r.recurrence.recurrent && r.uniformly_recurrent_up_to() == 6,
            "power {n}: uniformly recurrent only up to {}",
            r.uniformly_recurrent_up_to()
        );
    }
    Ok(())
}

fn s01_suite() -> Check {
    let phi = s01();
    let p = phi.is_proper();
    ensure!(
        p.proper && p.first == letter(&phi, "0") && p.last == letter(&phi, "1"),
        "properness {p:?}"
    );
    let m = phi.incidence_matrix();
    ensure!(m.determinant().to_string() == "-2", "det {}", m.determinant());
    ensure!(leibniz_determinant(&signed(&m.entries)) == -2, "Leibniz det differs");
    ensure!(is_nilpotent_pi_invertible(&phi, &[3, 5, 7]).invertible, "not invertible for {{3,5,7}}");
    ensure!(!is_nilpotent_pi_invertible(&phi, &[2]).invertible, "invertible for {{2}}");
    let src: LanguageSource = phi.clone().into();
    let opts = ChargeOptions::default();
    let v2 = charged_verdict(&src, &GroupCodeSpec::Power(2), &opts).map_err(err)?;
    ensure!(matches!(v2.outcome, ChargeOutcome::NotCharged { .. }), "A²: {:?}", v2.outcome);
    let v3 = charged_verdict(&src, &GroupCodeSpec::Power(3), &opts).map_err(err)?;
    ensure!(v3.outcome.is_charged(), "A³: {:?}", v3.outcome);
    let omega = v3.omega_image.as_ref().ok_or("A³: no omega-image")?;
    ensure!(omega.values == [1, 1], "A³ omega-image {:?}", omega.values);
    ensure!(omega_lengths_mod(&phi, 3) == [1, 1], "matrix oracle disagrees on the omega-image");
    ensure!(
        v3.supporting.contains(&(Certificate::ProperNonperiodicExact, "Charged")),
        "A³: exact step missing from {:?}",
        v3.supporting
    );
    let fp = procyclic_fingerprint(&src, 3, &opts, Execution::default()).map_err(err)?;
    ensure!(fp.d(2) == Some(2) && fp.d(3) == Some(1), "d(2) = {:?}, d(3) = {:?}", fp.d(2), fp.d(3));
    Ok(())
}

fn all_words(max_len: usize) -> Vec<String> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for bits in 0..(1u32 << len) {
            out.push((0..len).map(|i| if (bits >> i) & 1 == 0 { 'a' } else { 'b' }).collect());
        }
    }
    out
}

fn monoid_suite() -> Check {
    let a = ab();
    let m = FiniteMonoidPresentation::of_code(&FiniteCode::power(&a, 2).map_err(err)?).map_err(err)?;
    ensure!(m.is_group() && m.order() == 2, "(A²)* monoid: group {}, order {}", m.is_group(), m.order());
    for n in 1..=8 {
        let g = is_group_code(&FiniteCode::power(&a, n).map_err(err)?).map_err(err)?;
        ensure!(g.group && g.order == Some(n), "A^{n}: {g:?}");
    }
    let words = all_words(3);
    let mut compared = 0;
    for i in 0..words.len() {
        for j in i..words.len() {
            for k in j..words.len() {
                let mut set = vec![words[i].clone(), words[j].clone(), words[k].clone()];
                set.dedup();
                let Ok(x) = FiniteCode::parse(&a, &set.join(",")) else { continue };
                if !classify_code(&x).is_code {
                    continue;
                }
                let Ok(m) = FiniteMonoidPresentation::transition_monoid_capped(&Dfa::of_star(&x), 60) else {
                    continue;
                };
                let g = m.green();
                let o = naive_green(&m);
                let name = set.join(",");
                ensure!(g.r_classes == o.r, "{name}: R-classes differ");
                ensure!(g.l_classes == o.l, "{name}: L-classes differ");
                ensure!(g.j_classes == o.j, "{name}: J-classes differ");
                ensure!(g.h_classes == o.h, "{name}: H-classes differ");
                ensure!(g.idempotents == o.idempotents, "{name}: idempotents differ");
                ensure!(g.minimal_ideal == o.minimal_ideal, "{name}: minimal ideal differs");
                let h = &g.maximal_subgroup;
                ensure!(
                    o.minimal_ideal.contains(&h.idempotent) && o.h.contains(&h.elements),
                    "{name}: maximal subgroup is not an H-class of the minimal ideal"
                );
                compared += 1;
            }
        }
    }
    ensure!(compared > 100, "only {compared} monoids compared");
    Ok(())
}

fn random_code(rng: &mut ChaCha8Rng, a: &Alphabet) -> FiniteCode {
    loop {
        let n = rng.gen_range(1..=4);
        let words: Vec<Word> = (0..n)
            .map(|_| (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(0..2u32)).collect())
            .collect();
        if let Ok(x) = FiniteCode::new(a.clone(), words) {
            return x;
        }
    }
}

fn random_primitive(rng: &mut ChaCha8Rng) -> Substitution {
    loop {
        let k = rng.gen_range(2..=3);
        let a = Alphabet::from_chars(&"abc"[..k]).unwrap();
        let images: Vec<Word> = (0..k)
            .map(|_| (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(0..k as u32)).collect())
            .collect();
        if let Ok(phi) = Substitution::new(a, images) {
            if phi.is_primitive().is_ok_and(|p| p.primitive) {
                return phi;
            }
        }
    }
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let a = ab();

    let mut non_codes = 0;
    for _ in 0..500 {
        let x = random_code(&mut rng, &a);
        let flags = classify_code(&x);
        let oracle = double_factorization(&x, SP_ORACLE_BOUND);
        ensure!(flags.is_code == oracle.is_none(), "{:?}: SP {} vs oracle", x.render(), flags.is_code);
        if let Some(c) = flags.counterexample {
            non_codes += 1;
            ensure!(
                c.first != c.second && x.concatenate(&c.first) == c.word && x.concatenate(&c.second) == c.word,
                "{:?}: bad double factorization",
                x.render()
            );
        }
    }
    ensure!(non_codes > 0, "no non-codes sampled");

    let windows: Vec<FactorSet> = [fibonacci(), thue_morse()]
        .iter()
        .map(|phi| phi.factor_language(20))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let (mut complete, mut incomplete) = (0, 0);
    for f in &windows {
        for x in sample_prefix_codes(f, 50, 6, &mut rng) {
            let maximal = matches!(is_f_maximal_prefix(&x, f).map_err(err)?, FMaximality::MaximalUpTo { .. });
            let right = is_right_f_complete(&x, f).map_err(err)?.holds();
            ensure!(maximal == right, "{:?}: maximal {maximal}, right complete {right}", x.render());
            if right {
                complete += 1;
            } else {
                incomplete += 1;
            }
        }
    }
    ensure!(complete > 0 && incomplete > 0, "degenerate sample: {complete} complete, {incomplete} not");

    let recurrent: Vec<FactorSet> = [fibonacci(), thue_morse(), s012()]
        .iter()
        .map(|phi| phi.factor_language(20))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    for f in &recurrent {
        for x in sample_bifix_codes(f, 40, 5, &mut rng) {
            let left = is_left_f_complete(&x, f).map_err(err)?.holds();
            let right = is_right_f_complete(&x, f).map_err(err)?.holds();
            ensure!(left == right, "{:?}: left {left}, right {right}", x.render());
        }
    }

    let mut trips = 0;
    while trips < 1000 {
        let x = random_code(&mut rng, &a);
        if !classify_code(&x).is_code {
            continue;
        }
        let seq: Vec<usize> = (0..rng.gen_range(0..12)).map(|_| rng.gen_range(0..x.len())).collect();
        let back = parse(&x, &x.concatenate(&seq)).map_err(err)?;
        ensure!(back == seq, "{:?}: parse ∘ concatenate ≠ id on {seq:?}", x.render());
        trips += 1;
    }

    let mut subs = vec![fibonacci(), thue_morse(), s012(), s01(), ab_periodic()];
    subs.extend((0..20).map(|_| random_primitive(&mut rng)));
    for phi in &subs {
        let k = phi.alphabet().size();
        for n in 1..=12usize {
            let o = omega_image(phi, &FiniteGroup::cyclic(n), &vec![1 % n; k]);
            let got: Vec<u64> = o.values.iter().map(|&v| v as u64).collect();
            let want = omega_lengths_mod(phi, n as u64);
            ensure!(got == want, "{} mod {n}: {got:?} vs matrix {want:?}", phi.to_rules());
        }
    }
    Ok(())
}

fn d_values(fp: &ProcyclicFingerprint) -> Vec<(usize, usize, bool)> {
    fp.entries.iter().map(|e| (e.n, e.d, e.exact)).collect()
}

fn invariance() -> Check {
    let opts = ChargeOptions::default();
    for phi in [fibonacci(), thue_morse(), s012(), s01()] {
        let sq = phi.power(2);
        ensure!(
            phi.factor_language(20).map_err(err)? == sq.factor_language(20).map_err(err)?,
            "{}: φ and φ² windows differ",
            phi.to_rules()
        );
        let f1 = procyclic_fingerprint(&phi.clone().into(), 8, &opts, Execution::default()).map_err(err)?;
        let f2 = procyclic_fingerprint(&sq.into(), 8, &opts, Execution::default()).map_err(err)?;
        ensure!(
            d_values(&f1) == d_values(&f2),
            "{}: fingerprints {:?} vs {:?}",
            phi.to_rules(),
            d_values(&f1),
            d_values(&f2)
        );
    }
    let golden: serde_json::Value =
        serde_json::from_str(include_str!("golden/fingerprints.json")).map_err(err)?;
    let fib01 = fibonacci().relabel(Alphabet::from_chars("01").unwrap()).map_err(err)?;
    let pairs = [("01/0001", s01()), ("fibonacci", fib01)];
    let mut fps = Vec::new();
    for (name, phi) in pairs {
        let fp = procyclic_fingerprint(&phi.into(), 8, &opts, Execution::default()).map_err(err)?;
        for e in &fp.entries {
            let want = golden[name][e.n.to_string()].as_u64().ok_or("golden entry missing")?;
            ensure!(e.exact && e.d as u64 == want, "{name} d({}) = {} (exact {}), oracle {want}", e.n, e.d, e.exact);
        }
        fps.push(fp);
    }
    let c = compare_fingerprints(&fps[0], &fps[1]);
    let want = golden["first_difference"].as_u64().map(|n| n as usize);
    let got = match c.verdict {
        FingerprintVerdict::NotConjugate { witness } => Some(witness),
        FingerprintVerdict::Inconclusive => None,
    };
    ensure!(got == want, "comparison {:?}, oracle first difference {want:?}", c.verdict);
    Ok(())
}

fn no_contradiction() -> Check {
    let mut sources: Vec<LanguageSource> =
        [fibonacci(), thue_morse(), s012(), s01()].into_iter().map(Into::into).collect();
    sources.push(LanguageSource::periodic("ab").map_err(err)?);
    for src in &sources {
        for n in 2..=6 {
            let params = ReportParams::default();
            let r = theorem_consistency_report(src, &GroupCodeSpec::Power(n), &params).map_err(err)?;
            ensure!(
                r.status != ConsistencyStatus::Contradiction,
                "{} with A^{n}: {:?}",
                src.describe(),
                r.notes
            );
            ensure!(r.verdict.alarm.is_none(), "{} with A^{n}: alarm {:?}", src.describe(), r.verdict.alarm);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("1 Fibonacci suite", fibonacci_suite),
        ("2 counterexample suite ((ab)^∞ by {ab,ba})", counterexample_suite),
        ("3 012-substitution suite", s012_suite),
        ("4 01/0001 suite", s01_suite),
        ("5 monoid suite", monoid_suite),
        ("6 property suites", property_suites),
        ("7 invariance sanity", invariance),
        ("consistency alarm never fires", no_contradiction),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let started = std::time::Instant::now();
        match check() {
            Ok(()) => println!("PASS  criterion {name} ({:.1?})", started.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
