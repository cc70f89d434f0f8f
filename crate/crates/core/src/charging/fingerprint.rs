use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use super::{charged_verdict, Certificate, ChargeOptions, ChargeOutcome, GroupCodeSpec};
use crate::error::Result;
use crate::par::Execution;
use crate::source::LanguageSource;
use crate::util::is_prime;

/// The image of `ℓ_n` (every letter to `1 mod n`) restricted to a maximal
/// subgroup is `d(n)·Z/nZ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FingerprintEntry {
    pub n: usize,
    pub d: usize,
    /// False when `d` only bounds the true divisor from above.
    pub exact: bool,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcyclicFingerprint {
    pub n_max: usize,
    pub entries: Vec<FingerprintEntry>,
}

impl ProcyclicFingerprint {
    pub fn d(&self, n: usize) -> Option<usize> {
        self.entries.iter().find(|e| e.n == n).map(|e| e.d)
    }

    /// Primes `p` with `d(p) = p`, i.e. trivial `ℓ_p` image.
    pub fn trivial_primes(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| is_prime(e.n as u64) && e.d == e.n && e.exact)
            .map(|e| e.n)
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d: serde_json::Map<String, serde_json::Value> =
            self.entries.iter().map(|e| (e.n.to_string(), json!(e.d))).collect();
        let lower: Vec<usize> = self.entries.iter().filter(|e| !e.exact).map(|e| e.n).collect();
        json!({
            "n_max": self.n_max,
            "d": d,
            "lower_bound_only": lower,
            "certificates": self.entries.iter().map(|e| (e.n.to_string(), json!(e.certificate.map(|c| c.to_string())))).collect::<serde_json::Map<_, _>>(),
        })
    }
}

/// `d(n)` for `1 ≤ n ≤ n_max`, one charging analysis per `n`.
pub fn procyclic_fingerprint(
    source: &LanguageSource,
    n_max: usize,
    opts: &ChargeOptions,
    exec: Execution,
) -> Result<ProcyclicFingerprint> {
    let entries = exec
        .map_range(1, n_max + 1, |n| -> Result<FingerprintEntry> {
            if n == 1 {
                return Ok(FingerprintEntry {
                    n,
                    d: 1,
                    exact: true,
                    certificate: None,
                });
            }
            let v = charged_verdict(source, &GroupCodeSpec::Power(n), opts)?;
            let (order, exact) = match &v.outcome {
                ChargeOutcome::Charged { .. } => (n, true),
                ChargeOutcome::NotCharged { .. } => (v.image_order().unwrap_or(1), true),
                // the lower bound on the image gives an upper bound on d
                ChargeOutcome::Unknown { .. } => (v.image_order().unwrap_or(1), false),
            };
            Ok(FingerprintEntry {
                n,
                d: n / order,
                exact,
                certificate: v.outcome.certificate(),
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(ProcyclicFingerprint { n_max, entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FingerprintVerdict {
    NotConjugate { witness: usize },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FingerprintRow {
    pub n: usize,
    pub d1: usize,
    pub d2: usize,
    pub compared: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FingerprintComparison {
    pub verdict: FingerprintVerdict,
    pub table: Vec<FingerprintRow>,
    /// Values of `n` left out because an entry was only a bound.
    pub excluded: Vec<usize>,
    pub trivial_primes_1: Vec<usize>,
    pub trivial_primes_2: Vec<usize>,
    pub note: String,
}

const EVENTUAL_NOTE: &str = "Conjugate subshifts have equal procyclic images, so a differing exact entry \
rules out conjugacy. Equal tables prove nothing. Eventually conjugate subshifts may differ in at most \
one element beyond an unknown threshold; no eventual-conjugacy verdict is given.";

/// Conjugacy obstruction from two fingerprints: the least `n` where both
/// entries are exact and differ.
pub fn compare_fingerprints(f1: &ProcyclicFingerprint, f2: &ProcyclicFingerprint) -> FingerprintComparison {
    let by_n = |f: &ProcyclicFingerprint| -> BTreeMap<usize, (usize, bool)> {
        f.entries.iter().map(|e| (e.n, (e.d, e.exact))).collect()
    };
    let (m1, m2) = (by_n(f1), by_n(f2));
    let mut table = Vec::new();
    let mut excluded = Vec::new();
    let mut witness = None;
    for (&n, &(d1, e1)) in &m1 {
        let Some(&(d2, e2)) = m2.get(&n) else { continue };
        let compared = e1 && e2;
        if !compared {
            excluded.push(n);
        } else if d1 != d2 && witness.is_none() {
            witness = Some(n);
        }
        table.push(FingerprintRow { n, d1, d2, compared });
    }
    FingerprintComparison {
        verdict: match witness {
            Some(witness) => FingerprintVerdict::NotConjugate { witness },
            None => FingerprintVerdict::Inconclusive,
        },
        table,
        excluded,
        trivial_primes_1: f1.trivial_primes(),
        trivial_primes_2: f2.trivial_primes(),
        note: EVENTUAL_NOTE.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::catalog::*;

    fn fp(src: LanguageSource, n_max: usize) -> ProcyclicFingerprint {
        procyclic_fingerprint(&src, n_max, &ChargeOptions::default(), Execution::default()).unwrap()
    }

    #[test]
    fn s01_fingerprint() {
        let f = fp(s01().into(), 6);
        assert_eq!(f.d(1), Some(1));
        assert_eq!(f.d(2), Some(2));
        assert_eq!(f.d(3), Some(1));
        assert!(f.entries.iter().all(|e| e.exact));
        assert_eq!(f.trivial_primes(), vec![2]);
    }

    #[test]
    fn s012_fingerprint_is_full() {
        let f = fp(s012().into(), 6);
        assert!(f.entries.iter().all(|e| e.d == 1 && e.exact));
    }

    #[test]
    fn periodic_fingerprint() {
        let f = fp(LanguageSource::periodic("ab").unwrap(), 6);
        let ds: Vec<usize> = f.entries.iter().map(|e| e.d).collect();
        assert_eq!(ds, vec![1, 2, 1, 2, 1, 2]);
    }

    #[test]
    fn comparison() {
        let a = fp(s01().into(), 8);
        let b = fp(fibonacci().relabel(crate::word::Alphabet::from_chars("01").unwrap()).unwrap().into(), 8);
        let c = compare_fingerprints(&a, &b);
        assert_eq!(c.verdict, FingerprintVerdict::NotConjugate { witness: 2 });
        let c = compare_fingerprints(&a, &a);
        assert_eq!(c.verdict, FingerprintVerdict::Inconclusive);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let src: LanguageSource = s01().into();
        let o = ChargeOptions::default();
        assert_eq!(
            procyclic_fingerprint(&src, 8, &o, Execution::Sequential).unwrap(),
            procyclic_fingerprint(&src, 8, &o, Execution::Parallel).unwrap()
        );
    }
}
