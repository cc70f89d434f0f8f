//! One function per subcommand. Each returns the text report and the JSON
//! result; `run` wraps them with the request echo.

use std::fmt::Write as _;

use bifix::charging::{
    charged_verdict, compare_fingerprints, is_g_invertible, procyclic_fingerprint, ChargeOptions, ChargeVerdict,
    FingerprintVerdict, ProcyclicFingerprint,
};
use bifix::code::{
    classify_code, intersect_with_f, is_f_complete_bifix, is_f_maximal_prefix, is_left_f_complete,
    is_right_f_complete, maximality_sample, CompletenessVerdict, FMaximality, RationalCode,
};
use bifix::decoding::{decode, higher_power, theorem_consistency_report, ConsistencyStatus, ReportParams};
use bifix::par::Execution;
use bifix::{
    Alphabet, DecodedLanguage, Error, FactorSet, FiniteCode, FiniteMonoidPresentation, GroupCodeSpec, LanguageSource,
    Result, Word,
};
use serde_json::{json, Map, Value};

use crate::input::{automaton, finite_code, group_code, CodeInput};
use crate::{Bounds, Command};

pub struct Report {
    pub text: String,
    pub json: Value,
}

/// What a command produced, before the request echo is added.
struct Output {
    request: Map<String, Value>,
    text: String,
    result: Value,
}

impl Output {
    fn new() -> Self {
        Output {
            request: Map::new(),
            text: String::new(),
            result: Value::Null,
        }
    }

    fn source(&mut self, key: &str, s: &LanguageSource) {
        self.request.insert(key.into(), json!(s.describe()));
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

const SAMPLE_MAX_LEN: usize = 6;

pub fn run(cmd: &Command, b: &Bounds) -> Result<Report> {
    for (name, v) in [("L", b.l), ("Lx", b.lx), ("k-max", b.k_max), ("n-max", b.n_max)] {
        if v == 0 {
            return Err(Error::InvalidInput(format!("--{name} must be positive")));
        }
    }
    let (name, out) = match cmd {
        Command::AnalyzeSubstitution { source } => ("analyze-substitution", analyze(&source.required()?, b)?),
        Command::Factors { source } => ("factors", factors(&source.required()?, b)?),
        Command::CheckCode { source, code, sample } => {
            let src = source.optional()?;
            let input = code.required()?;
            let alphabet = code.alphabet(src.as_ref(), &input)?;
            ("check-code", check_code(src.as_ref(), &input, &alphabet, *sample, b)?)
        }
        Command::Monoid { source, code } => {
            let src = source.optional()?;
            let input = code.required()?;
            let alphabet = code.alphabet(src.as_ref(), &input)?;
            ("monoid", monoid(&input, &alphabet)?)
        }
        Command::Charge { source, code } => {
            let src = source.required()?;
            let input = code.required()?;
            let z = group_code(&input, &code.alphabet(Some(&src), &input)?)?;
            ("charge", charge(&src, &input, &z, b)?)
        }
        Command::Fingerprint { source } => ("fingerprint", fingerprint(&source.required()?, b)?),
        Command::Compare { source, second } => ("compare", compare(&source.required()?, &second.required()?, b)?),
        Command::Decode { source, code } => {
            let src = source.required()?;
            let input = code.required()?;
            let x = finite_code(&input, &code.alphabet(Some(&src), &input)?)?;
            ("decode", decode_cmd(&src, &x, b)?)
        }
        Command::HigherPower { source, n } => ("higher-power", higher_power_cmd(&source.required()?, *n, b)?),
        Command::VerifyTheorems { source, code, slack } => {
            let src = source.required()?;
            let input = code.optional()?;
            let z = match &input {
                Some(i) => vec![(i.describe(), group_code(i, &code.alphabet(Some(&src), i)?)?)],
                None => (2..=b.n_max.max(2))
                    .map(|n| Ok((format!("A^{n}"), GroupCodeSpec::power(n)?)))
                    .collect::<Result<Vec<_>>>()?,
            };
            ("verify-theorems", verify(&src, &z, *slack, b)?)
        }
    };
    Ok(envelope(name, out, b))
}

fn envelope(name: &str, out: Output, b: &Bounds) -> Report {
    let mut request = out.request;
    request.insert(
        "bounds".into(),
        json!({"L": b.l, "Lx": b.lx, "k_max": b.k_max, "n_max": b.n_max}),
    );
    request.insert("assert_aperiodic".into(), json!(b.assert_aperiodic));
    request.insert("seed".into(), json!(b.seed));
    let header = format!(
        "bifix {name}  L={} Lx={} k_max={} n_max={}{}\n",
        b.l,
        b.lx,
        b.k_max,
        b.n_max,
        if b.assert_aperiodic { " assert-aperiodic" } else { "" }
    );
    Report {
        text: header + &out.text,
        json: json!({"command": name, "request": request, "result": out.result}),
    }
}

fn render(a: &Alphabet, w: &Word) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        a.render(w)
    }
}

fn render_letter(a: &Alphabet, x: bifix::Letter) -> String {
    a.render(&Word::from(vec![x]))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn completeness_json(a: &Alphabet, v: &CompletenessVerdict) -> Value {
    match v {
        CompletenessVerdict::HoldsUpTo { bound } => json!({"holds": true, "bound": bound}),
        CompletenessVerdict::Fails { counterexample } => {
            json!({"holds": false, "counterexample": render(a, counterexample)})
        }
    }
}

fn completeness_text(a: &Alphabet, v: &CompletenessVerdict) -> String {
    match v {
        CompletenessVerdict::HoldsUpTo { bound } => format!("yes (up to L={bound})"),
        CompletenessVerdict::Fails { counterexample } => format!("no (counterexample {})", render(a, counterexample)),
    }
}

fn big_json(s: String) -> Value {
    s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))
}

fn analyze(src: &LanguageSource, b: &Bounds) -> Result<Output> {
    let phi = src
        .substitution()
        .ok_or_else(|| Error::InvalidInput("analyze-substitution needs --rules or --rules-json".into()))?;
    let a = phi.alphabet();
    let mut out = Output::new();
    out.source("rules", src);
    let prim = phi.is_primitive()?;
    let proper = phi.is_proper();
    let maps = phi.boundary_maps();
    let matrix = phi.incidence_matrix();
    let det = matrix.determinant().to_string();
    let g_invertible = is_g_invertible(phi);

    out.line(format!("rules: {}", phi.to_rules()));
    out.line(format!(
        "primitive: {}",
        match prim.witness_exponent {
            Some(k) => format!("yes (M^{k} > 0)"),
            None => "no".into(),
        }
    ));
    out.line(format!(
        "proper: {}",
        match (proper.first, proper.last) {
            (Some(x), Some(y)) => format!("yes ({}, {})", render_letter(a, x), render_letter(a, y)),
            _ => "no".into(),
        }
    ));
    out.line(format!(
        "boundary maps: preperiod {}, period {}",
        maps.preperiod, maps.period
    ));
    out.line("incidence matrix:");
    for row in &matrix.entries {
        out.line(format!(
            "  {}",
            row.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
        ));
    }
    out.line(format!("det: {det}"));
    out.line(format!("G-invertible: {}", yes(g_invertible)));

    let mut result = json!({
        "alphabet": a.names(),
        "substitution": phi.to_json(),
        "primitive": {"primitive": prim.primitive, "witness_exponent": prim.witness_exponent},
        "proper": {
            "proper": proper.proper,
            "first": proper.first.map(|x| render_letter(a, x)),
            "last": proper.last.map(|x| render_letter(a, x)),
        },
        "boundary_maps": {
            "first": maps.first.iter().map(|&x| render_letter(a, x)).collect::<Vec<_>>(),
            "last": maps.last.iter().map(|&x| render_letter(a, x)).collect::<Vec<_>>(),
            "preperiod": maps.preperiod,
            "period": maps.period,
        },
        "incidence_matrix": matrix.entries,
        "determinant": big_json(det),
        "g_invertible": g_invertible,
    });

    if !prim.primitive {
        out.line("language: not analysed (substitution is not primitive)");
        result["language"] = Value::Null;
        out.result = result;
        return Ok(out);
    }
    let stab = phi.stability()?;
    let f = phi.factor_language(b.l)?;
    let per = src.periodicity(b.l, b.assert_aperiodic)?;
    let rec = f.is_recurrent_up_to(b.k_max)?;
    let uniform = (1..=b.k_max)
        .map(|k| f.is_uniformly_recurrent_up_to(k))
        .collect::<Result<Vec<_>>>()?;
    let cls = f.classify_words(b.k_max)?;
    let table = f.complexity_table();

    out.line(format!(
        "stable: {} (searched k in [{}, {}])",
        match stab.witness_k {
            Some(k) => format!("yes, k = {k}"),
            None => "no".into(),
        },
        stab.window.0,
        stab.window.1
    ));
    out.line(format!("periodicity: {per}"));
    out.line("complexity p(k):");
    for (k, p) in table.iter().enumerate() {
        out.line(format!("  {k:>3} {p}"));
    }
    out.line(format!(
        "recurrent up to order {}: {}",
        b.k_max,
        match rec.failing_order {
            None => "yes".into(),
            Some(k) => format!("no (fails at order {k})"),
        }
    ));
    for u in &uniform {
        out.line(format!(
            "uniform recurrence order {}: {}",
            u.order,
            match u.bound {
                Some(r) => format!("R = {r}"),
                None => format!("no bound within L={}", u.window),
            }
        ));
    }
    out.line(format!(
        "extension graphs up to center length {}: {}",
        cls.max_center,
        if cls.dendric {
            "all trees (dendric)".to_string()
        } else if cls.connected {
            format!("connected, first non-tree at {}", render(a, cls.first_non_tree.as_ref().unwrap()))
        } else {
            format!("first disconnected at {}", render(a, cls.first_disconnected.as_ref().unwrap()))
        }
    ));

    result["language"] = json!({
        "stable": {"stable": stab.stable, "witness_k": stab.witness_k, "window": [stab.window.0, stab.window.1]},
        "periodicity": per.to_string(),
        "complexity": table,
        "recurrence": {"k_max": rec.k_max, "recurrent": rec.recurrent, "failing_order": rec.failing_order},
        "uniform_recurrence": uniform.iter().map(|u| json!({"order": u.order, "bound": u.bound})).collect::<Vec<_>>(),
        "extension_graphs": {
            "max_center": cls.max_center,
            "dendric": cls.dendric,
            "connected": cls.connected,
            "first_non_tree": cls.first_non_tree.as_ref().map(|w| render(a, w)),
            "first_disconnected": cls.first_disconnected.as_ref().map(|w| render(a, w)),
        },
    });
    out.result = result;
    Ok(out)
}

fn factors(src: &LanguageSource, b: &Bounds) -> Result<Output> {
    let f = src.factor_set(b.l)?;
    let mut out = Output::new();
    out.source("source", src);
    out.line(format!("language: {}", src.describe()));
    for k in 1..=f.max_length() {
        let words: Vec<String> = f.level(k).iter().map(|w| render(f.alphabet(), w)).collect();
        out.line(format!("{k:>3} ({}): {}", words.len(), words.join(" ")));
    }
    let mut result = f.to_json();
    result["complexity"] = json!(f.complexity_table());
    out.result = result;
    Ok(out)
}

fn check_code(
    src: Option<&LanguageSource>,
    input: &CodeInput,
    alphabet: &Alphabet,
    sample: usize,
    b: &Bounds,
) -> Result<Output> {
    let x = finite_code(input, alphabet)?;
    let mut out = Output::new();
    if let Some(s) = src {
        out.source("source", s);
    }
    out.request.insert("code".into(), json!(input.describe()));
    let flags = classify_code(&x);
    let words = x.render();
    out.line(format!("code: {}", words.join(",")));
    out.line(format!("is code: {}", yes(flags.is_code)));
    if let Some(c) = &flags.counterexample {
        let show = |ix: &[usize]| ix.iter().map(|&i| words[i].as_str()).collect::<Vec<_>>().join("·");
        out.line(format!(
            "  double factorization of {}: {} = {}",
            render(alphabet, &c.word),
            show(&c.first),
            show(&c.second)
        ));
    }
    out.line(format!("prefix: {}", yes(flags.is_prefix)));
    out.line(format!("suffix: {}", yes(flags.is_suffix)));
    out.line(format!("bifix: {}", yes(flags.is_bifix)));
    let mut result = json!({
        "alphabet": alphabet.names(),
        "code": words,
        "is_code": flags.is_code,
        "is_prefix": flags.is_prefix,
        "is_suffix": flags.is_suffix,
        "is_bifix": flags.is_bifix,
        "double_factorization": flags.counterexample.as_ref().map(|c| json!({
            "word": render(alphabet, &c.word),
            "first": c.first.iter().map(|&i| &words[i]).collect::<Vec<_>>(),
            "second": c.second.iter().map(|&i| &words[i]).collect::<Vec<_>>(),
        })),
    });
    let Some(src) = src else {
        if sample > 0 {
            return Err(Error::InvalidInput("--sample needs a language".into()));
        }
        out.result = result;
        return Ok(out);
    };
    let f = src.factor_set(b.l)?;
    let outside: Vec<String> = x
        .words()
        .iter()
        .filter(|w| !f.contains(w))
        .map(|w| render(alphabet, w))
        .collect();
    let right = is_right_f_complete(&x, &f)?;
    let left = is_left_f_complete(&x, &f)?;
    let inter = intersect_with_f(RationalCode::Finite(&x), &f)?;
    out.line(format!("language: {} (L={})", src.describe(), b.l));
    if !outside.is_empty() {
        out.line(format!("words outside F: {}", outside.join(",")));
    }
    out.line(format!("X ∩ F: {}", inter.code.render().join(",")));
    out.line(format!("right F-complete: {}", completeness_text(alphabet, &right)));
    out.line(format!("left F-complete: {}", completeness_text(alphabet, &left)));
    let mut lang = json!({
        "outside_f": outside,
        "intersection": inter.code.render(),
        "right_complete": completeness_json(alphabet, &right),
        "left_complete": completeness_json(alphabet, &left),
        "f_maximal_prefix": Value::Null,
        "bifix_complete": Value::Null,
    });
    if flags.is_prefix && outside.is_empty() {
        let m = is_f_maximal_prefix(&x, &f)?;
        let (j, t) = match &m {
            FMaximality::MaximalUpTo { bound } => (
                json!({"maximal": true, "bound": bound}),
                format!("yes (up to L={bound})"),
            ),
            FMaximality::Extension { word } => (
                json!({"maximal": false, "extension": render(alphabet, word)}),
                format!("no (can add {})", render(alphabet, word)),
            ),
        };
        out.line(format!("F-maximal prefix: {t}"));
        lang["f_maximal_prefix"] = j;
    }
    if flags.is_bifix && outside.is_empty() {
        let c = is_f_complete_bifix(&x, &f)?;
        out.line(format!("F-complete bifix: {}", yes(c.complete)));
        if c.consistency_alarm {
            out.line("ALARM: left and right completeness disagree on a recurrent window");
        }
        lang["bifix_complete"] = json!({"complete": c.complete, "consistency_alarm": c.consistency_alarm});
    }
    if sample > 0 {
        let s = maximality_sample(&f, sample, SAMPLE_MAX_LEN, b.seed)?;
        out.line(format!(
            "sampled prefix codes (seed {}): {}/{} agree on F-maximal vs right F-complete",
            s.seed, s.agreeing, s.sampled
        ));
        lang["sample"] = json!({
            "seed": s.seed,
            "sampled": s.sampled,
            "max_len": SAMPLE_MAX_LEN,
            "agreeing": s.agreeing,
            "disagreements": s.disagreements.iter().map(FiniteCode::render).collect::<Vec<_>>(),
        });
    }
    result["language"] = lang;
    out.result = result;
    Ok(out)
}

fn monoid(input: &CodeInput, alphabet: &Alphabet) -> Result<Output> {
    let dfa = automaton(input, alphabet)?.minimize();
    let m = FiniteMonoidPresentation::transition_monoid(&dfa)?;
    let green = m.green();
    let mut out = Output::new();
    out.request.insert("code".into(), json!(input.describe()));
    out.line(format!("code: {}", input.describe()));
    out.line(format!("alphabet: {}", alphabet.names().join(" ")));
    out.line(format!("minimal automaton of X*: {} states", dfa.states()));
    out.line(format!("transition monoid: {} elements", m.order()));
    out.line(format!(
        "group: {}",
        if m.is_group() {
            format!("yes, order {}", m.order())
        } else {
            "no".into()
        }
    ));
    out.text.push_str(&green.egg_box_text(&m));
    if !out.text.ends_with('\n') {
        out.text.push('\n');
    }
    out.result = json!({
        "alphabet": alphabet.names(),
        "automaton": dfa.to_json(),
        "order": m.order(),
        "is_group": m.is_group(),
        "green": green.to_json(&m),
    });
    Ok(out)
}

fn charge_options(b: &Bounds) -> ChargeOptions {
    ChargeOptions {
        window: b.l,
        scale: b.k_max,
        assert_aperiodic: b.assert_aperiodic,
    }
}

fn verdict_lines(out: &mut Output, v: &ChargeVerdict) {
    out.line(format!(
        "verdict: {}{}",
        v.outcome.name(),
        v.outcome.certificate().map(|c| format!(" ({c})")).unwrap_or_default()
    ));
    if let bifix::ChargeOutcome::Unknown { obstructions } = &v.outcome {
        for o in obstructions {
            out.line(format!("  obstruction: {o}"));
        }
    }
    out.line(format!("assumptions: {}", v.assumptions.join(", ")));
    out.line(format!("periodicity: {}", v.periodicity));
    let j = v.to_json();
    if let Some(o) = j["omega_image"].as_object() {
        let values: Vec<String> = o["values"]
            .as_object()
            .unwrap()
            .iter()
            .map(|(k, v)| format!("{k} ↦ {}", v.as_str().unwrap_or_default()))
            .collect();
        out.line(format!("omega-image: {}", values.join(", ")));
    }
    out.line(format!(
        "image: {} of {}",
        v.image_order().map(|n| n.to_string()).unwrap_or_else(|| "?".into()),
        v.group.order()
    ));
    for (c, o) in &v.supporting {
        out.line(format!("  supporting: {c}: {o}"));
    }
    if let Some(a) = &v.alarm {
        out.line(format!("ALARM: {a}"));
    }
}

const NOT_CHARGED_NOTE: &str = "A verdict other than Charged says nothing about recurrence of the decoding.";

fn charge(src: &LanguageSource, input: &CodeInput, z: &GroupCodeSpec, b: &Bounds) -> Result<Output> {
    let v = charged_verdict(src, z, &charge_options(b))?;
    let mut out = Output::new();
    out.source("source", src);
    out.request.insert("code".into(), json!(input.describe()));
    out.line(format!("language: {}", src.describe()));
    out.line(format!("group code: {} (group of order {})", z.describe(), v.group.order()));
    verdict_lines(&mut out, &v);
    let mut result = v.to_json();
    if !v.outcome.is_charged() {
        out.line(NOT_CHARGED_NOTE);
        result["note"] = json!(NOT_CHARGED_NOTE);
    }
    out.result = result;
    Ok(out)
}

fn fingerprint_of(src: &LanguageSource, b: &Bounds) -> Result<ProcyclicFingerprint> {
    procyclic_fingerprint(src, b.n_max, &charge_options(b), Execution::default())
}

fn fingerprint(src: &LanguageSource, b: &Bounds) -> Result<Output> {
    let fp = fingerprint_of(src, b)?;
    let mut out = Output::new();
    out.source("source", src);
    out.line(format!("language: {}", src.describe()));
    out.line("   n  d(n)  certificate");
    for e in &fp.entries {
        out.line(format!(
            "{:>4}  {:>4}{}  {}",
            e.n,
            e.d,
            if e.exact { " " } else { "≥" },
            e.certificate.map(|c| c.to_string()).unwrap_or_else(|| "-".into())
        ));
    }
    let mut result = fp.to_json();
    result["trivial_primes"] = json!(fp.trivial_primes());
    out.result = result;
    Ok(out)
}

fn compare(s1: &LanguageSource, s2: &LanguageSource, b: &Bounds) -> Result<Output> {
    let (f1, f2) = (fingerprint_of(s1, b)?, fingerprint_of(s2, b)?);
    let c = compare_fingerprints(&f1, &f2);
    let mut out = Output::new();
    out.source("source", s1);
    out.source("source2", s2);
    out.line(format!("first: {}", s1.describe()));
    out.line(format!("second: {}", s2.describe()));
    out.line("   n  d1  d2");
    for r in &c.table {
        out.line(format!(
            "{:>4} {:>3} {:>3}{}",
            r.n,
            r.d1,
            r.d2,
            if r.compared { "" } else { "  (bound only)" }
        ));
    }
    let verdict = match c.verdict {
        FingerprintVerdict::NotConjugate { witness } => {
            out.line(format!("verdict: NotConjugate (d differs at n = {witness})"));
            json!({"verdict": "NotConjugate", "witness": witness})
        }
        FingerprintVerdict::Inconclusive => {
            out.line("verdict: Inconclusive");
            json!({"verdict": "Inconclusive", "witness": null})
        }
    };
    out.line(&c.note);
    out.result = json!({
        "comparison": verdict,
        "table": c.table.iter().map(|r| json!({"n": r.n, "d1": r.d1, "d2": r.d2, "compared": r.compared})).collect::<Vec<_>>(),
        "excluded": c.excluded,
        "trivial_primes_1": c.trivial_primes_1,
        "trivial_primes_2": c.trivial_primes_2,
        "fingerprint_1": f1.to_json(),
        "fingerprint_2": f2.to_json(),
        "note": c.note,
    });
    Ok(out)
}

fn decoded_lines(out: &mut Output, d: &DecodedLanguage, lx: usize) {
    let code = d.code().render();
    out.line(format!("code: {}", code.join(",")));
    for (k, level) in d.members().iter().enumerate() {
        if !level.is_empty() {
            out.line(format!("{k:>3} ({}): {}", level.len(), level.join(" ")));
        }
    }
    out.line(format!(
        "finite within Lx={lx}: {}",
        if d.is_finite_within() { "yes (no decoded word reaches length Lx)" } else { "no" }
    ));
}

fn decoded_json(d: &DecodedLanguage, lx: usize) -> Value {
    let mut j = d.to_json();
    j["code"] = json!(d.code().render());
    j["Lx"] = json!(lx);
    j["finite_within"] = json!(d.is_finite_within());
    j["complexity"] = json!(d.factors().complexity_table());
    j
}

fn decode_cmd(src: &LanguageSource, x: &FiniteCode, b: &Bounds) -> Result<Output> {
    let f = src.factor_set(b.l)?;
    let d = decode(&f, x, b.lx)?;
    let mut out = Output::new();
    out.source("source", src);
    out.request.insert("code".into(), json!(x.render().join(",")));
    out.line(format!("language: {}", src.describe()));
    decoded_lines(&mut out, &d, b.lx);
    out.result = decoded_json(&d, b.lx);
    Ok(out)
}

fn higher_power_cmd(src: &LanguageSource, n: usize, b: &Bounds) -> Result<Output> {
    let f: FactorSet = src.factor_set(b.l)?;
    let d = higher_power(&f, n, b.lx)?;
    let mut out = Output::new();
    out.source("source", src);
    out.request.insert("n".into(), json!(n));
    out.line(format!("language: {}", src.describe()));
    out.line(format!("block length: {n}"));
    decoded_lines(&mut out, &d, b.lx);
    let mut result = decoded_json(&d, b.lx);
    result["n"] = json!(n);
    out.result = result;
    Ok(out)
}

fn verify(src: &LanguageSource, codes: &[(String, GroupCodeSpec)], slack: usize, b: &Bounds) -> Result<Output> {
    let params = ReportParams {
        window: b.l,
        lx: b.lx,
        k_max: b.k_max,
        assert_aperiodic: b.assert_aperiodic,
        slack,
    };
    let reports = Execution::default()
        .map(codes, |(_, z)| theorem_consistency_report(src, z, &params))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut out = Output::new();
    out.source("source", src);
    out.request.insert("slack".into(), json!(slack));
    if codes.len() == 1 {
        out.request.insert("code".into(), json!(codes[0].0));
    }
    out.line(format!("language: {}", src.describe()));
    let mut entries = Vec::new();
    let mut contradictions = 0;
    for ((name, _), r) in codes.iter().zip(&reports) {
        let status = serde_json::to_value(r.status).expect("serializable");
        if r.status == ConsistencyStatus::Contradiction {
            contradictions += 1;
        }
        let _ = writeln!(
            out.text,
            "{name}: {} [{}{}], decoding recurrent up to {}, uniformly recurrent up to {} (window L={})",
            status.as_str().unwrap(),
            r.verdict.outcome.name(),
            r.verdict.outcome.certificate().map(|c| format!(" {c}")).unwrap_or_default(),
            r.recurrence.recurrent_up_to(),
            r.recurrence.uniformly_recurrent_up_to(),
            r.window_used
        );
        for n in &r.notes {
            out.line(format!("  note: {n}"));
        }
        let mut j = r.to_json();
        j.as_object_mut().unwrap().insert("group_code".into(), json!(name));
        entries.push(j);
    }
    out.line(format!("contradictions: {contradictions}"));
    out.result = json!({"reports": entries, "contradictions": contradictions});
    Ok(out)
}
