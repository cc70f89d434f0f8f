use serde_json::json;

use super::{
    charging_certificate, connected_charging, omega_image, Certificate, FiniteGroup, Formation, GroupCodeSpec,
    OmegaImage,
};
use crate::error::{Error, Result};
use crate::source::LanguageSource;
use crate::substitution::PeriodicityVerdict;
use crate::word::Alphabet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChargeOutcome {
    Charged { certificate: Certificate },
    NotCharged { certificate: Certificate },
    Unknown { obstructions: Vec<String> },
}

impl ChargeOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            ChargeOutcome::Charged { .. } => "Charged",
            ChargeOutcome::NotCharged { .. } => "NotCharged",
            ChargeOutcome::Unknown { .. } => "Unknown",
        }
    }

    pub fn is_charged(&self) -> bool {
        matches!(self, ChargeOutcome::Charged { .. })
    }

    pub fn certificate(&self) -> Option<Certificate> {
        match self {
            ChargeOutcome::Charged { certificate } | ChargeOutcome::NotCharged { certificate } => Some(*certificate),
            ChargeOutcome::Unknown { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ChargeOptions {
    /// Window length used for periodicity and connectedness.
    pub window: usize,
    /// Largest center length for the connectedness check.
    pub scale: usize,
    pub assert_aperiodic: bool,
}

impl Default for ChargeOptions {
    fn default() -> Self {
        ChargeOptions {
            window: 40,
            scale: 8,
            assert_aperiodic: false,
        }
    }
}

/// The outcome of the decision ladder together with everything that was
/// established on the way.
#[derive(Clone, Debug)]
pub struct ChargeVerdict {
    pub outcome: ChargeOutcome,
    /// Hypotheses verified (or asserted) for the deciding step.
    pub assumptions: Vec<String>,
    /// Every step that reached a conclusion, in ladder order, with the
    /// outcome it supports.
    pub supporting: Vec<(Certificate, &'static str)>,
    pub omega_image: Option<OmegaImage>,
    /// Elements of the computed image subgroup, when one was computed.
    pub image: Option<Vec<usize>>,
    pub group: FiniteGroup,
    pub periodicity: PeriodicityVerdict,
    /// Set when two steps disagree; the theory rules this out.
    pub alarm: Option<String>,
    alphabet: Alphabet,
}

impl ChargeVerdict {
    /// Order of the image of the maximal subgroup in the syntactic group,
    /// when known exactly or as a lower bound.
    pub fn image_order(&self) -> Option<usize> {
        match (&self.outcome, &self.image) {
            (ChargeOutcome::Charged { .. }, _) => Some(self.group.order()),
            (_, Some(s)) => Some(s.len()),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let omega = self.omega_image.as_ref().map(|o| {
            let values: serde_json::Map<String, serde_json::Value> = self
                .alphabet
                .letters()
                .map(|a| {
                    (
                        self.alphabet.name(a).to_string(),
                        json!(self.group.label(o.values[a as usize])),
                    )
                })
                .collect();
            json!({
                "values": values,
                "preperiod": o.preperiod,
                "period": o.period,
                "exponent": o.exponent,
            })
        });
        let mut j = json!({
            "verdict": self.outcome.name(),
            "certificate": self.outcome.certificate().map(|c| c.to_string()),
            "assumptions": self.assumptions,
            "omega_image": omega,
            "group_order": self.group.order(),
            "image_order": self.image_order(),
            "periodicity": self.periodicity.to_string(),
            "supporting": self.supporting.iter().map(|(c, o)| format!("{c}: {o}")).collect::<Vec<_>>(),
            "alarm": self.alarm,
        });
        if let ChargeOutcome::Unknown { obstructions } = &self.outcome {
            j["obstructions"] = json!(obstructions);
        }
        j
    }
}

/// Decision ladder for "`Z` is `F`-charged", `Z` a group code:
///
/// 1. a stability-plus-invertibility certificate for a formation holding
///    the syntactic group of `Z*`;
/// 2. connectedness of `F` on the window;
/// 3. for proper `φ` with nonperiodicity evidence, the exact image
///    generated by the omega-image of the letters (periodic languages use
///    the image of the period word instead);
/// 4. for stable `φ`, the same image as a lower bound;
/// 5. otherwise unknown.
///
/// All applicable steps are evaluated; the first conclusive one decides.
pub fn charged_verdict(source: &LanguageSource, z: &GroupCodeSpec, opts: &ChargeOptions) -> Result<ChargeVerdict> {
    let alphabet = source.alphabet().clone();
    let group = z.group();
    let eta = z.eta(&alphabet)?;
    let window = source.factor_set(opts.window)?;
    let periodicity = source.periodicity(opts.window, opts.assert_aperiodic)?;
    let mut v = ChargeVerdict {
        outcome: ChargeOutcome::Unknown { obstructions: Vec::new() },
        assumptions: Vec::new(),
        supporting: Vec::new(),
        omega_image: None,
        image: None,
        group: group.clone(),
        periodicity: periodicity.clone(),
        alarm: None,
        alphabet: alphabet.clone(),
    };
    let mut decided: Option<(ChargeOutcome, Vec<String>)> = None;
    let mut obstructions = Vec::new();
    let mut decide = |v: &mut ChargeVerdict, outcome: ChargeOutcome, assumptions: Vec<String>| {
        v.supporting.push((outcome.certificate().unwrap(), outcome.name()));
        if decided.is_none() {
            decided = Some((outcome, assumptions));
        }
    };

    let phi = source.substitution();
    if let Some(phi) = phi {
        if !phi.is_primitive()?.primitive {
            return Err(Error::not_applicable("charging needs a primitive substitution"));
        }
        // 1. formation certificates
        let mut formations = vec![Formation::AllFiniteGroups];
        if group.is_nilpotent() {
            formations.push(Formation::NilpotentPi(group.prime_divisors()));
        }
        let cert = formations
            .iter()
            .find_map(|f| charging_certificate(phi, f).transpose())
            .transpose()?;
        match cert {
            Some(c) => {
                let inv = match &c.formation {
                    Formation::AllFiniteGroups => "GInvertible".to_string(),
                    Formation::NilpotentPi(ps) => format!("NilpotentPiInvertible({ps:?})"),
                };
                decide(
                    &mut v,
                    ChargeOutcome::Charged {
                        certificate: Certificate::HChargingByStableInvertible,
                    },
                    vec![format!("Stable(k={})", c.stable_at), inv],
                );
            }
            None => obstructions.push("no stability-plus-invertibility certificate".to_string()),
        }
    }

    // 2. connectedness on the window
    let scale = opts.scale.min(opts.window.saturating_sub(2));
    match connected_charging(&window, scale)? {
        Some(c) => decide(
            &mut v,
            ChargeOutcome::Charged {
                certificate: Certificate::GChargingByConnectedness,
            },
            vec![format!("ConnectedUpTo(center={}, L={}) [window only]", c.scale, c.window)],
        ),
        None => obstructions.push(format!("not connected and uniformly recurrent up to scale {scale}")),
    }

    // 3./4. images computed in the group
    if let PeriodicityVerdict::Periodic { period } = periodicity {
        let u = window
            .level(period)
            .iter()
            .next()
            .cloned()
            .ok_or_else(|| Error::invalid("periodic window has no factor of the period length"))?;
        let g = z.eta_word(&alphabet, &u)?;
        let s = group.subgroup_generated(&[g]);
        v.image = Some(s.elements.iter().copied().collect());
        let certificate = Certificate::PeriodicShortcut;
        let outcome = if s.order() == group.order() {
            ChargeOutcome::Charged { certificate }
        } else {
            ChargeOutcome::NotCharged { certificate }
        };
        decide(
            &mut v,
            outcome,
            vec![
                format!("Periodic({period})"),
                format!("PeriodWord({})", alphabet.render(&u)),
            ],
        );
    } else if let Some(phi) = phi {
        let proper = phi.is_proper();
        let stability = phi.stability()?;
        if proper.proper || stability.stable {
            let o = omega_image(phi, &group, &eta);
            let s = group.subgroup_generated(&o.values);
            v.image = Some(s.elements.iter().copied().collect());
            let full = s.order() == group.order();
            v.omega_image = Some(o);
            if proper.proper {
                let certificate = Certificate::ProperNonperiodicExact;
                let outcome = if full {
                    ChargeOutcome::Charged { certificate }
                } else {
                    ChargeOutcome::NotCharged { certificate }
                };
                let one = |a| alphabet.render(&crate::word::Word::from(vec![a]));
                decide(
                    &mut v,
                    outcome,
                    vec![
                        format!("Proper({},{})", one(proper.first.unwrap()), one(proper.last.unwrap())),
                        periodicity.to_string(),
                    ],
                );
            } else if full {
                decide(
                    &mut v,
                    ChargeOutcome::Charged {
                        certificate: Certificate::StableLowerBound,
                    },
                    vec![format!("Stable(k={})", stability.witness_k.unwrap())],
                );
            } else {
                obstructions.push(format!(
                    "stable but not proper: image of order {} is only a lower bound",
                    s.order()
                ));
            }
        } else {
            obstructions.push("neither proper nor stable".to_string());
        }
    } else {
        obstructions.push("aperiodic window without a substitution".to_string());
    }

    let charged = v.supporting.iter().any(|(_, o)| *o == "Charged");
    let not_charged = v.supporting.iter().any(|(_, o)| *o == "NotCharged");
    if charged && not_charged {
        v.alarm = Some(format!("ladder steps disagree: {:?}", v.supporting));
    }
    match decided {
        Some((outcome, assumptions)) => {
            v.outcome = outcome;
            v.assumptions = assumptions;
            if opts.assert_aperiodic {
                v.assumptions.push("AssertedAperiodic [user assertion]".to_string());
            }
        }
        None => v.outcome = ChargeOutcome::Unknown { obstructions },
    }
    Ok(v)
}
