//! Where a language comes from: a primitive substitution or a periodic word.

use crate::error::{Error, Result};
use crate::language::FactorSet;
use crate::substitution::{periodicity, PeriodicityVerdict, Substitution};
use crate::word::{Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LanguageSource {
    Substitution(Substitution),
    /// Factors of the bi-infinite word `...uuu...`.
    Periodic { alphabet: Alphabet, word: Word },
}

impl LanguageSource {
    /// A periodic source given as text over single-character letters; the
    /// alphabet is the set of letters in order of first appearance.
    pub fn periodic(text: &str) -> Result<Self> {
        let tokens = Alphabet::tokenize(text)?;
        if tokens.is_empty() {
            return Err(Error::invalid("period word must be nonempty"));
        }
        let mut names: Vec<String> = Vec::new();
        for t in &tokens {
            if !names.contains(t) {
                names.push(t.clone());
            }
        }
        let alphabet = Alphabet::new(names)?;
        let word = alphabet.parse_word(text)?;
        Ok(LanguageSource::Periodic { alphabet, word })
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            LanguageSource::Substitution(s) => s.alphabet(),
            LanguageSource::Periodic { alphabet, .. } => alphabet,
        }
    }

    pub fn factor_set(&self, max_len: usize) -> Result<FactorSet> {
        match self {
            LanguageSource::Substitution(s) => s.factor_language(max_len),
            LanguageSource::Periodic { alphabet, word } => FactorSet::of_periodic_word(alphabet.clone(), word, max_len),
        }
    }

    pub fn substitution(&self) -> Option<&Substitution> {
        match self {
            LanguageSource::Substitution(s) => Some(s),
            LanguageSource::Periodic { .. } => None,
        }
    }

    /// Periodicity evidence on a window of length `max_len`, or the user's
    /// assertion when `assert_aperiodic` is set.
    pub fn periodicity(&self, max_len: usize, assert_aperiodic: bool) -> Result<PeriodicityVerdict> {
        if assert_aperiodic {
            return Ok(PeriodicityVerdict::AssertedAperiodic);
        }
        Ok(periodicity(&self.factor_set(max_len)?))
    }

    pub fn describe(&self) -> String {
        match self {
            LanguageSource::Substitution(s) => s.to_rules(),
            LanguageSource::Periodic { alphabet, word } => format!("({})^∞", alphabet.render(word)),
        }
    }
}

impl From<Substitution> for LanguageSource {
    fn from(s: Substitution) -> Self {
        LanguageSource::Substitution(s)
    }
}
