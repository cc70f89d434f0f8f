//! Minimal automata of `X*`, their transition monoids (the syntactic
//! monoids of `X*`) and Green's relations.

mod dfa;
mod green;

pub use dfa::Dfa;
pub use green::{EggBox, GreenSummary, MaximalSubgroup};

use std::collections::{HashMap, VecDeque};

use crate::code::FiniteCode;
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::word::{Alphabet, Letter, Word};

/// Default cap on the number of monoid elements.
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

/// A map from states to states; the monoid acts on the right, so the
/// product `s·t` applies `s` first.
pub type Transformation = Vec<u32>;

/// The transition monoid of an automaton, enumerated by breadth-first
/// closure. Element `0` is the identity; every element keeps the
/// shortlex-least word that produces it.
#[derive(Clone, Debug)]
pub struct FiniteMonoidPresentation {
    alphabet: Alphabet,
    elements: Vec<Transformation>,
    index: HashMap<Transformation, usize>,
    words: Vec<Word>,
    generators: Vec<usize>,
    /// `right[x][a]` is `x·η(a)`.
    right: Vec<Vec<usize>>,
}

impl FiniteMonoidPresentation {
    pub fn transition_monoid(dfa: &Dfa) -> Result<Self> {
        Self::transition_monoid_capped(dfa, DEFAULT_ELEMENT_CAP)
    }

    pub fn transition_monoid_capped(dfa: &Dfa, cap: usize) -> Result<Self> {
        let n = dfa.states();
        let letter_maps: Vec<Transformation> = dfa
            .delta()
            .iter()
            .map(|row| row.iter().map(|&q| q as u32).collect())
            .collect();
        let identity: Transformation = (0..n as u32).collect();
        let mut elements = vec![identity.clone()];
        let mut words = vec![Word::empty()];
        let mut index = HashMap::from([(identity, 0)]);
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let mut row = Vec::with_capacity(letter_maps.len());
            for (a, g) in letter_maps.iter().enumerate() {
                let y: Transformation = elements[x].iter().map(|&q| g[q as usize]).collect();
                let id = match index.get(&y) {
                    Some(&id) => id,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::limit(
                                format!("transition monoid exceeds {cap} elements"),
                                Some(elements.len()),
                            ));
                        }
                        let mut w = words[x].clone();
                        w.push(a as Letter);
                        elements.push(y.clone());
                        words.push(w);
                        index.insert(y, elements.len() - 1);
                        queue.push_back(elements.len() - 1);
                        elements.len() - 1
                    }
                };
                row.push(id);
            }
            debug_assert_eq!(right.len(), x);
            right.push(row);
        }
        let generators = right[0].clone();
        Ok(FiniteMonoidPresentation {
            alphabet: dfa.alphabet().clone(),
            elements,
            index,
            words,
            generators,
            right,
        })
    }

    /// Syntactic monoid of `X*`.
    pub fn of_code(x: &FiniteCode) -> Result<Self> {
        Self::transition_monoid(&Dfa::of_star(x))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, x: usize) -> &Transformation {
        &self.elements[x]
    }

    /// Shortlex-least word representing `x`.
    pub fn word(&self, x: usize) -> &Word {
        &self.words[x]
    }

    pub fn label(&self, x: usize) -> String {
        if x == 0 {
            "1".to_string()
        } else {
            self.alphabet.render(&self.words[x])
        }
    }

    pub fn generator(&self, a: Letter) -> usize {
        self.generators[a as usize]
    }

    pub fn multiply(&self, x: usize, y: usize) -> usize {
        // x·y = x·η(w) for the representative w of y
        self.words[y].iter().fold(x, |z, &a| self.right[z][a as usize])
    }

    pub fn times_letter(&self, x: usize, a: Letter) -> usize {
        self.right[x][a as usize]
    }

    pub fn lookup(&self, t: &Transformation) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// `η(w)`.
    pub fn eta(&self, w: &Word) -> usize {
        w.iter().fold(0, |x, &a| self.right[x][a as usize])
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.multiply(x, x) == x
    }

    /// Every element is a permutation of the states. For a finite monoid
    /// this holds iff every generator is one.
    pub fn is_group(&self) -> bool {
        self.generators.iter().all(|&g| {
            let t = &self.elements[g];
            let mut seen = vec![false; t.len()];
            t.iter().all(|&q| !std::mem::replace(&mut seen[q as usize], true))
        })
    }

    pub fn green(&self) -> GreenSummary {
        green::summarize(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GroupCodeCheck {
    pub group: bool,
    pub order: Option<usize>,
}

/// Whether the syntactic monoid of `X*` is a finite group.
pub fn is_group_code(x: &FiniteCode) -> Result<GroupCodeCheck> {
    let m = FiniteMonoidPresentation::of_code(x)?;
    let group = m.is_group();
    Ok(GroupCodeCheck {
        group,
        order: group.then(|| m.order()),
    })
}

/// Syntactic monoids of many codes at once.
pub fn monoids_of_codes(codes: &[FiniteCode], cap: usize, exec: Execution) -> Vec<Result<FiniteMonoidPresentation>> {
    exec.map(codes, |x| FiniteMonoidPresentation::transition_monoid_capped(&Dfa::of_star(x), cap))
}
