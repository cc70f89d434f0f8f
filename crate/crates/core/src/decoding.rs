//! Decodings `F ∩ X*` read over the alphabet `X`, higher powers, and the
//! consistency check between charging verdicts and the recurrence of the
//! decoded language.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::json;

use crate::charging::{charged_verdict, ChargeOptions, ChargeOutcome, ChargeVerdict, GroupCodeSpec};
use crate::code::{classify_code, intersect_with_f, FiniteCode, RationalCode};
use crate::error::{Error, Result};
use crate::language::{FactorSet, Recurrence, UniformRecurrence};
use crate::source::LanguageSource;
use crate::word::{Alphabet, Letter, Word};

/// `F ∩ X*` up to `X`-length `Lx`, over an alphabet whose letters are the
/// code words (named `⟨x⟩`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedLanguage {
    code: FiniteCode,
    factors: FactorSet,
}

impl DecodedLanguage {
    pub fn code(&self) -> &FiniteCode {
        &self.code
    }

    pub fn factors(&self) -> &FactorSet {
        &self.factors
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.factors.alphabet()
    }

    /// The word of `A*` spelled by a word over `X`.
    pub fn expand(&self, m: &Word) -> Word {
        self.code.concatenate(&m.iter().map(|&x| x as usize).collect::<Vec<_>>())
    }

    /// Members rendered over `X`, by `X`-length.
    pub fn members(&self) -> Vec<Vec<String>> {
        (0..=self.factors.max_length())
            .map(|k| self.factors.level(k).iter().map(|w| self.render(w)).collect())
            .collect()
    }

    pub fn render(&self, m: &Word) -> String {
        if m.is_empty() {
            "ε".to_string()
        } else {
            self.alphabet().render(m)
        }
    }

    pub fn is_finite_within(&self) -> bool {
        self.factors.level(self.factors.max_length()).is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut j = self.factors.to_json();
        let expansion: serde_json::Map<String, serde_json::Value> = self
            .alphabet()
            .names()
            .iter()
            .zip(self.code.render())
            .map(|(n, x)| (n.clone(), json!(x)))
            .collect();
        j["expansion"] = serde_json::Value::Object(expansion);
        j
    }
}

/// All words of `F ∩ X*` of `X`-length at most `lx`. `F` must reach
/// `lx · max|x|` so that no member is cut off by the window.
pub fn decode(f: &FactorSet, x: &FiniteCode, lx: usize) -> Result<DecodedLanguage> {
    if x.alphabet() != f.alphabet() {
        return Err(Error::invalid("code and language use different alphabets"));
    }
    if !classify_code(x).is_code {
        return Err(Error::invalid("decoding needs a code"));
    }
    let need = lx * x.max_word_len();
    if need > f.max_length() {
        return Err(Error::limit(
            format!("decoding to X-length {lx} needs L ≥ {need}, window has L = {}", f.max_length()),
            None,
        ));
    }
    let names: Vec<String> = x.render().iter().map(|w| format!("⟨{w}⟩")).collect();
    let alphabet = Alphabet::new(names)?;
    let mut levels: Vec<BTreeSet<Word>> = vec![std::iter::once(Word::empty()).collect()];
    // F is factorial, so every member extends a member one code word shorter
    let mut frontier: Vec<(Word, Word)> = vec![(Word::empty(), Word::empty())];
    for _ in 1..=lx {
        let mut next = Vec::new();
        let mut level = BTreeSet::new();
        for (m, spelled) in &frontier {
            for (i, z) in x.words().iter().enumerate() {
                let s = spelled.concat(z);
                if f.contains(&s) {
                    let mut m2 = m.clone();
                    m2.push(i as Letter);
                    level.insert(m2.clone());
                    next.push((m2, s));
                }
            }
        }
        levels.push(level);
        frontier = next;
    }
    Ok(DecodedLanguage {
        code: x.clone(),
        factors: FactorSet::from_levels(alphabet, levels),
    })
}

/// The `n`-th higher power: `F` decoded by `F ∩ A^n`.
pub fn higher_power(f: &FactorSet, n: usize, lx: usize) -> Result<DecodedLanguage> {
    let x = intersect_with_f(RationalCode::Power(n), f)?.code;
    decode(f, &x, lx)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodingRecurrence {
    pub k_max: usize,
    pub recurrence: Recurrence,
    /// One entry per order `1..=k_max`.
    pub uniform: Vec<UniformRecurrence>,
}

impl DecodingRecurrence {
    /// Largest `k` such that every order up to `k` is recurrent.
    pub fn recurrent_up_to(&self) -> usize {
        self.recurrence.failing_order.map_or(self.k_max, |k| k - 1)
    }

    /// Largest `k` such that every order up to `k` is uniformly recurrent
    /// within the window.
    pub fn uniformly_recurrent_up_to(&self) -> usize {
        self.uniform.iter().take_while(|u| u.uniform).count()
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        json!({
            "k_max": self.k_max,
            "recurrent_up_to": self.recurrent_up_to(),
            "uniformly_recurrent_up_to": self.uniformly_recurrent_up_to(),
            "first_non_recurrent_order": self.recurrence.failing_order,
            "uniform_bounds": self.uniform.iter().map(|u| json!({
                "order": u.order,
                "bound": u.bound,
                "counterexample": u.counterexample.as_ref().map(|c| json!({
                    "missing": alphabet.render(&c.missing),
                    "window_word": alphabet.render(&c.window_word),
                })),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Recurrence and uniform recurrence of the decoded language for orders up
/// to `k_max`, which must be below `Lx`.
pub fn check_decoding_recurrence(d: &DecodedLanguage, k_max: usize) -> Result<DecodingRecurrence> {
    let recurrence = d.factors.is_recurrent_up_to(k_max)?;
    let uniform = (1..=k_max)
        .map(|k| d.factors.is_uniformly_recurrent_up_to(k))
        .collect::<Result<Vec<_>>>()?;
    Ok(DecodingRecurrence {
        k_max,
        recurrence,
        uniform,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConsistencyStatus {
    #[serde(rename = "CONSISTENT")]
    Consistent,
    #[serde(rename = "CONTRADICTION")]
    Contradiction,
    Observational,
}

#[derive(Clone, Debug)]
pub struct ReportParams {
    pub window: usize,
    pub lx: usize,
    pub k_max: usize,
    pub assert_aperiodic: bool,
    /// A uniform-recurrence failure only counts against a charged verdict
    /// when `Lx ≥ k + slack`; shorter windows are reported as insufficient.
    pub slack: usize,
}

impl Default for ReportParams {
    fn default() -> Self {
        ReportParams {
            window: 40,
            lx: 10,
            k_max: 8,
            assert_aperiodic: false,
            slack: 256,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub status: ConsistencyStatus,
    pub verdict: ChargeVerdict,
    pub decoded: DecodedLanguage,
    pub recurrence: DecodingRecurrence,
    pub notes: Vec<String>,
    pub window_used: usize,
}

impl ConsistencyReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "status": self.status,
            "charge": self.verdict.to_json(),
            "code": self.decoded.code().render(),
            "window_used": self.window_used,
            "decoded_complexity": self.decoded.factors().complexity_table(),
            "recurrence": self.recurrence.to_json(self.decoded.alphabet()),
            "notes": self.notes,
        })
    }
}

/// Charged decodings of (uniformly) recurrent languages are (uniformly)
/// recurrent. The report checks that implication on the window: a
/// recurrence failure under a charged verdict is a contradiction, and so
/// is a uniform-recurrence failure on a window long enough per `slack`.
/// Other verdicts only produce observations.
pub fn theorem_consistency_report(
    source: &LanguageSource,
    z: &GroupCodeSpec,
    params: &ReportParams,
) -> Result<ConsistencyReport> {
    if params.k_max == 0 || params.k_max >= params.lx {
        return Err(Error::invalid(format!(
            "recurrence order k_max = {} must satisfy 1 ≤ k_max < Lx = {}",
            params.k_max, params.lx
        )));
    }
    let opts = ChargeOptions {
        window: params.window,
        scale: params.k_max,
        assert_aperiodic: params.assert_aperiodic,
    };
    let verdict = charged_verdict(source, z, &opts)?;
    let f = source.factor_set(params.window)?;
    let x = match z {
        GroupCodeSpec::Power(n) => intersect_with_f(RationalCode::Power(*n), &f)?.code,
        GroupCodeSpec::Syntactic { star, .. } => intersect_with_f(RationalCode::Star(star), &f)?.code,
    };
    let window_used = params.window.max(params.lx * x.max_word_len());
    let f = if window_used > f.max_length() {
        source.factor_set(window_used)?
    } else {
        f
    };
    let decoded = decode(&f, &x, params.lx)?;
    let recurrence = check_decoding_recurrence(&decoded, params.k_max)?;
    let mut notes = Vec::new();
    let status = match &verdict.outcome {
        ChargeOutcome::Charged { .. } => {
            if let Some(k) = recurrence.recurrence.failing_order {
                notes.push(format!("charged but the decoding is not recurrent at order {k}"));
                ConsistencyStatus::Contradiction
            } else {
                let failing = recurrence.uniform.iter().find(|u| !u.uniform);
                match failing {
                    Some(u) if params.lx >= u.order + params.slack => {
                        notes.push(format!(
                            "charged but no uniform recurrence bound at order {} within Lx = {}",
                            u.order, params.lx
                        ));
                        ConsistencyStatus::Contradiction
                    }
                    Some(u) => {
                        notes.push(format!(
                            "uniform recurrence from order {} is undecided: no bound within Lx = {}, \
                             and a failure only counts from Lx ≥ order + {}",
                            u.order, params.lx, params.slack
                        ));
                        ConsistencyStatus::Consistent
                    }
                    None => ConsistencyStatus::Consistent,
                }
            }
        }
        _ => {
            notes.push(
                "not charged or unknown: the recurrence of the decoding is recorded as an observation only"
                    .to_string(),
            );
            ConsistencyStatus::Observational
        }
    };
    if let Some(alarm) = &verdict.alarm {
        notes.push(format!("charging alarm: {alarm}"));
    }
    Ok(ConsistencyReport {
        status,
        verdict,
        decoded,
        recurrence,
        notes,
        window_used,
    })
}
