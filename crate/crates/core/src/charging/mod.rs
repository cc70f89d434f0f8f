//! Charged group codes.
//!
//! A group code `Z` is charged by a language `F` when the image of a
//! maximal subgroup of the minimal `J`-class of `F`'s closure is the whole
//! syntactic group of `Z*`. Nothing profinite is represented here; every
//! verdict goes through a finite quotient: sufficient conditions on the
//! substitution (stability plus invertibility in a free or free nilpotent
//! group), connectedness of the language on a window, or the exact
//! omega-image of the letters for proper nonperiodic substitutions.

mod fingerprint;
mod group;
mod omega;
mod stallings;
mod verdict;

pub use fingerprint::{
    compare_fingerprints, procyclic_fingerprint, FingerprintComparison, FingerprintEntry, FingerprintRow,
    FingerprintVerdict, ProcyclicFingerprint,
};
pub use group::{FiniteGroup, Subgroup};
pub use omega::{omega_image, OmegaImage};
pub use stallings::{is_g_invertible, is_nilpotent_pi_invertible, NilpotentInvertibility};
pub use verdict::{charged_verdict, ChargeOptions, ChargeOutcome, ChargeVerdict};

use serde::Serialize;

use crate::code::FiniteCode;
use crate::error::{Error, Result};
use crate::language::FactorSet;
use crate::monoid::{Dfa, FiniteMonoidPresentation};
use crate::substitution::Substitution;
use crate::word::{Alphabet, Word};

/// A group code, given either as `A^n` or through the minimal automaton
/// of `Z*` whose transition monoid is a group.
#[derive(Clone, Debug)]
pub enum GroupCodeSpec {
    Power(usize),
    Syntactic {
        name: String,
        star: Dfa,
        group: FiniteGroup,
        /// `η(a)` for each letter.
        eta: Vec<usize>,
    },
}

impl GroupCodeSpec {
    pub fn power(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("A^0 is not a code"));
        }
        Ok(GroupCodeSpec::Power(n))
    }

    pub fn from_dfa(name: impl Into<String>, dfa: &Dfa) -> Result<Self> {
        let star = dfa.minimize();
        let m = FiniteMonoidPresentation::transition_monoid(&star)?;
        if !m.is_group() {
            return Err(Error::invalid("the syntactic monoid of Z* is not a group"));
        }
        let group = FiniteGroup::from_monoid(&m)?;
        let eta = m.alphabet().letters().map(|a| m.generator(a)).collect();
        Ok(GroupCodeSpec::Syntactic {
            name: name.into(),
            star,
            group,
            eta,
        })
    }

    pub fn from_code(x: &FiniteCode) -> Result<Self> {
        Self::from_dfa(x.render().join(","), &Dfa::of_star(x))
    }

    pub fn group(&self) -> FiniteGroup {
        match self {
            GroupCodeSpec::Power(n) => FiniteGroup::cyclic(*n),
            GroupCodeSpec::Syntactic { group, .. } => group.clone(),
        }
    }

    /// `η` on the letters of `alphabet`.
    pub fn eta(&self, alphabet: &Alphabet) -> Result<Vec<usize>> {
        match self {
            GroupCodeSpec::Power(n) => Ok(vec![1 % n; alphabet.size()]),
            GroupCodeSpec::Syntactic { star, eta, .. } => {
                if star.alphabet() != alphabet {
                    return Err(Error::invalid("group code and language use different alphabets"));
                }
                Ok(eta.clone())
            }
        }
    }

    /// `η(w)`.
    pub fn eta_word(&self, alphabet: &Alphabet, w: &Word) -> Result<usize> {
        let group = self.group();
        let eta = self.eta(alphabet)?;
        Ok(w.iter().fold(group.identity(), |acc, &a| group.multiply(acc, eta[a as usize])))
    }

    pub fn describe(&self) -> String {
        match self {
            GroupCodeSpec::Power(n) => format!("A^{n}"),
            GroupCodeSpec::Syntactic { name, .. } => name.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Certificate {
    HChargingByStableInvertible,
    GChargingByConnectedness,
    ProperNonperiodicExact,
    StableLowerBound,
    PeriodicShortcut,
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

/// The class of finite groups a charging certificate is requested for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formation {
    AllFiniteGroups,
    /// Nilpotent groups whose order has prime factors in the given set.
    NilpotentPi(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargingCertificate {
    pub certificate: Certificate,
    pub stable_at: usize,
    pub formation: Formation,
}

/// Stability plus invertibility in the free group (or in the free
/// nilpotent `π`-groups) makes `F_φ` charging for every group code whose
/// syntactic group lies in the formation.
pub fn charging_certificate(phi: &Substitution, target: &Formation) -> Result<Option<ChargingCertificate>> {
    let stability = phi.stability()?;
    let Some(k) = stability.witness_k else {
        return Ok(None);
    };
    let invertible = match target {
        Formation::AllFiniteGroups => is_g_invertible(phi),
        Formation::NilpotentPi(primes) => is_nilpotent_pi_invertible(phi, primes).invertible,
    };
    Ok(invertible.then(|| ChargingCertificate {
        certificate: Certificate::HChargingByStableInvertible,
        stable_at: k,
        formation: target.clone(),
    }))
}

/// Connectedness of every extension graph with center length up to `scale`
/// in a window that is uniformly recurrent at order `scale`. The result
/// only speaks for the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectedCertificate {
    pub scale: usize,
    pub window: usize,
}

pub fn connected_charging(f: &FactorSet, scale: usize) -> Result<Option<ConnectedCertificate>> {
    if scale + 2 > f.max_length() {
        return Err(Error::invalid(format!(
            "connectedness at scale {scale} needs L ≥ {}, window has L = {}",
            scale + 2,
            f.max_length()
        )));
    }
    let order = scale.max(1);
    if !f.is_uniformly_recurrent_up_to(order)?.uniform {
        return Ok(None);
    }
    Ok(f.classify_words(scale)?.connected.then_some(ConnectedCertificate {
        scale,
        window: f.max_length(),
    }))
}
