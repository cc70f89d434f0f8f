//! Finite windows onto factorial languages and the at-scale analyses run on
//! them: Rauzy graphs, recurrence, uniform recurrence, extension graphs and
//! factor complexity.
//!
//! All verdicts hold "up to" the bound they report; none of them is a
//! statement about the infinite language.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::{scc, UnionFind};
use crate::word::{Alphabet, Letter, Word};

/// Words of a language of length at most `L`, grouped by length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    alphabet: Alphabet,
    /// `levels[k]` holds the words of length `k`; `levels[0] = {ε}`.
    levels: Vec<BTreeSet<Word>>,
}

#[derive(Serialize, Deserialize)]
struct FactorSetJson {
    alphabet: Vec<String>,
    #[serde(rename = "L")]
    max_length: usize,
    factors: Vec<Vec<String>>,
}

impl FactorSet {
    pub(crate) fn from_levels(alphabet: Alphabet, mut levels: Vec<BTreeSet<Word>>) -> Self {
        if levels.is_empty() {
            levels.push(BTreeSet::new());
        }
        levels[0] = std::iter::once(Word::empty()).collect();
        FactorSet { alphabet, levels }
    }

    /// The factorial closure of `words`, truncated at `max_len`.
    pub fn from_words<'a>(alphabet: Alphabet, words: impl IntoIterator<Item = &'a Word>, max_len: usize) -> Result<Self> {
        let mut levels = vec![BTreeSet::new(); max_len + 1];
        for w in words {
            alphabet.check(w)?;
            for k in 1..=max_len.min(w.len()) {
                for f in w.factors_of_len(k) {
                    levels[k].insert(Word::from(f));
                }
            }
        }
        Ok(FactorSet::from_levels(alphabet, levels))
    }

    /// Factors of the bi-infinite periodic word `...uuu...`.
    pub fn of_periodic_word(alphabet: Alphabet, period: &Word, max_len: usize) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::invalid("period word must be nonempty"));
        }
        let reps = max_len / period.len() + 2;
        let long: Word = (0..reps).flat_map(|_| period.iter().copied()).collect();
        FactorSet::from_words(alphabet, [&long], max_len)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn max_length(&self) -> usize {
        self.levels.len() - 1
    }

    /// Words of length `k` (empty set beyond the bound).
    pub fn level(&self, k: usize) -> &BTreeSet<Word> {
        static EMPTY: BTreeSet<Word> = BTreeSet::new();
        self.levels.get(k).unwrap_or(&EMPTY)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.level(w.len()).contains(w)
    }

    /// Members in length-then-lexicographic order (ε first).
    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.levels.iter().flat_map(|l| l.iter())
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn restrict(&self, max_len: usize) -> FactorSet {
        let keep = max_len.min(self.max_length());
        FactorSet {
            alphabet: self.alphabet.clone(),
            levels: self.levels[..=keep].to_vec(),
        }
    }

    /// Every factor of a member is a member.
    pub fn is_factorial(&self) -> bool {
        self.levels.iter().skip(2).all(|level| {
            level.iter().all(|w| {
                self.contains(&Word::from(&w.letters()[1..])) && self.contains(&Word::from(&w.letters()[..w.len() - 1]))
            })
        })
    }

    /// Every member of length `< upto` extends by one letter on each side.
    pub fn is_prolongable_below(&self, upto: usize) -> bool {
        let n = self.alphabet.size() as Letter;
        (0..upto.min(self.max_length())).all(|k| {
            self.level(k).iter().all(|w| {
                let right = (0..n).any(|a| self.contains(&w.concat(&Word::from(vec![a]))));
                let left = (0..n).any(|a| self.contains(&Word::from(vec![a]).concat(w)));
                right && left
            })
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = FactorSetJson {
            alphabet: self.alphabet.names().to_vec(),
            max_length: self.max_length(),
            factors: self.levels[1..]
                .iter()
                .map(|l| {
                    let mut v: Vec<String> = l.iter().map(|w| self.alphabet.render(w)).collect();
                    v.sort();
                    v
                })
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: FactorSetJson =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("factor set JSON: {e}")))?;
        let alphabet = Alphabet::new(j.alphabet)?;
        if j.factors.len() != j.max_length {
            return Err(Error::invalid("factor levels do not match L"));
        }
        let mut levels = vec![BTreeSet::new()];
        for (k, level) in j.factors.iter().enumerate() {
            let mut set = BTreeSet::new();
            for s in level {
                let w = alphabet.parse_word(s)?;
                if w.len() != k + 1 {
                    return Err(Error::invalid(format!("{s:?} listed at length {}", k + 1)));
                }
                set.insert(w);
            }
            levels.push(set);
        }
        Ok(FactorSet::from_levels(alphabet, levels))
    }

    fn check_order(&self, k: usize, need: usize, what: &str) -> Result<()> {
        if k + need > self.max_length() {
            return Err(Error::invalid(format!(
                "{what} of order {k} needs L ≥ {}, window has L = {}",
                k + need,
                self.max_length()
            )));
        }
        Ok(())
    }

    /// Number of factors of length `k`.
    pub fn complexity(&self, k: usize) -> Result<usize> {
        self.check_order(k, 0, "complexity")?;
        Ok(self.level(k).len())
    }

    pub fn complexity_table(&self) -> Vec<usize> {
        self.levels.iter().map(BTreeSet::len).collect()
    }

    pub fn rauzy_graph(&self, k: usize) -> Result<RauzyGraph> {
        self.check_order(k, 1, "Rauzy graph")?;
        let vertices: Vec<Word> = self.level(k).iter().cloned().collect();
        let index = |w: &[Letter]| vertices.binary_search_by(|v| v.letters().cmp(w)).ok();
        let mut edges = Vec::new();
        for e in self.level(k + 1) {
            let l = e.letters();
            if let (Some(u), Some(v)) = (index(&l[..k]), index(&l[1..])) {
                edges.push((u, v, e.clone()));
            }
        }
        Ok(RauzyGraph { order: k, vertices, edges })
    }

    /// Recurrence at scale: every Rauzy graph of order `1..=k_max` is
    /// nonempty, strongly connected and has an edge out of every vertex.
    pub fn is_recurrent_up_to(&self, k_max: usize) -> Result<Recurrence> {
        self.check_order(k_max, 1, "recurrence check")?;
        let failing = (1..=k_max).find(|&k| !self.rauzy_graph(k).unwrap().is_strongly_connected());
        Ok(Recurrence {
            recurrent: failing.is_none(),
            failing_order: failing,
            k_max,
        })
    }

    /// Uniform recurrence of order `k` at scale: the least `R ≤ L` such that
    /// every factor of length `R` exists and contains every factor of
    /// length `k`.
    pub fn is_uniformly_recurrent_up_to(&self, k: usize) -> Result<UniformRecurrence> {
        if k == 0 || k >= self.max_length() {
            return Err(Error::invalid(format!(
                "uniform recurrence order must satisfy 1 ≤ k < L = {}",
                self.max_length()
            )));
        }
        let targets = self.level(k);
        let covers = |w: &Word| {
            let seen: HashSet<&[Letter]> = w.factors_of_len(k).collect();
            seen.len() == targets.len()
        };
        let r = (k..=self.max_length()).find(|&r| {
            let level = self.level(r);
            !level.is_empty() && !targets.is_empty() && level.iter().all(covers)
        });
        let counterexample = match r {
            Some(_) => None,
            None => self.level(self.max_length()).iter().find(|w| !covers(w)).map(|w| {
                let missing = targets
                    .iter()
                    .find(|u| !u.is_factor_of(w))
                    .cloned()
                    .expect("a non-covering window misses some target");
                UniformCounterexample {
                    missing,
                    window_word: w.clone(),
                }
            }),
        };
        Ok(UniformRecurrence {
            order: k,
            uniform: r.is_some(),
            bound: r,
            counterexample,
            window: self.max_length(),
        })
    }

    pub fn extension_graph(&self, w: &Word) -> Result<ExtensionGraph> {
        self.check_order(w.len(), 2, "extension graph")?;
        if !self.contains(w) {
            return Err(Error::invalid(format!("{} is not in the language", self.alphabet.render(w))));
        }
        let n = self.alphabet.size() as Letter;
        let one = |a: Letter| Word::from(vec![a]);
        let left: Vec<Letter> = (0..n).filter(|&a| self.contains(&one(a).concat(w))).collect();
        let right: Vec<Letter> = (0..n).filter(|&b| self.contains(&w.concat(&one(b)))).collect();
        let mut edges = Vec::new();
        for &a in &left {
            for &b in &right {
                if self.contains(&one(a).concat(w).concat(&one(b))) {
                    edges.push((a, b));
                }
            }
        }
        Ok(ExtensionGraph {
            center: w.clone(),
            left,
            right,
            edges,
        })
    }

    /// Extension-graph classification of every member with
    /// `|w| ≤ max_center`.
    pub fn classify_words(&self, max_center: usize) -> Result<WordClassification> {
        self.check_order(max_center, 2, "classification")?;
        let mut entries = Vec::new();
        for k in 0..=max_center {
            for w in self.level(k) {
                let class = self.extension_graph(w)?.classify();
                entries.push((w.clone(), class));
            }
        }
        let first_non_tree = entries
            .iter()
            .find(|(_, c)| *c != WordClass::Tree)
            .map(|(w, _)| w.clone());
        let first_disconnected = entries
            .iter()
            .find(|(_, c)| *c == WordClass::Disconnected)
            .map(|(w, _)| w.clone());
        Ok(WordClassification {
            max_center,
            dendric: first_non_tree.is_none(),
            connected: first_disconnected.is_none(),
            first_non_tree,
            first_disconnected,
            entries,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RauzyGraph {
    pub order: usize,
    pub vertices: Vec<Word>,
    /// `(from, to, label)` with the label a factor of length `order + 1`.
    pub edges: Vec<(usize, usize, Word)>,
}

impl RauzyGraph {
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (u, v, _) in &self.edges {
            adj[*u].push(*v);
        }
        adj
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let adj = self.adjacency();
        if adj.iter().any(Vec::is_empty) {
            return false;
        }
        let ids = scc(&adj);
        ids.iter().all(|&c| c == ids[0])
    }

    /// Length of the cycle when the graph is one directed cycle.
    pub fn single_cycle_length(&self) -> Option<usize> {
        let adj = self.adjacency();
        if adj.iter().any(|a| a.len() != 1) || !self.is_strongly_connected() {
            return None;
        }
        Some(self.vertices.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recurrence {
    pub recurrent: bool,
    pub failing_order: Option<usize>,
    pub k_max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformCounterexample {
    /// A factor of length `order` ...
    pub missing: Word,
    /// ... absent from this factor of maximal length.
    pub window_word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformRecurrence {
    pub order: usize,
    pub uniform: bool,
    /// Least recurrence bound `R` found within the window.
    pub bound: Option<usize>,
    pub counterexample: Option<UniformCounterexample>,
    pub window: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WordClass {
    Tree,
    ConnectedNotTree,
    Disconnected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionGraph {
    pub center: Word,
    pub left: Vec<Letter>,
    pub right: Vec<Letter>,
    pub edges: Vec<(Letter, Letter)>,
}

impl ExtensionGraph {
    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_connected(&self) -> bool {
        if self.edges.is_empty() {
            return false;
        }
        // left vertices first, then right
        let li = |a: Letter| self.left.iter().position(|&x| x == a).unwrap();
        let ri = |b: Letter| self.left.len() + self.right.iter().position(|&x| x == b).unwrap();
        let mut uf = UnionFind::new(self.vertex_count());
        for &(a, b) in &self.edges {
            uf.union(li(a), ri(b));
        }
        let root = uf.find(0);
        (0..self.vertex_count()).all(|v| uf.find(v) == root)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.vertex_count()
    }

    pub fn classify(&self) -> WordClass {
        if self.is_tree() {
            WordClass::Tree
        } else if self.is_connected() {
            WordClass::ConnectedNotTree
        } else {
            WordClass::Disconnected
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordClassification {
    pub max_center: usize,
    pub dendric: bool,
    pub connected: bool,
    pub first_non_tree: Option<Word>,
    pub first_disconnected: Option<Word>,
    pub entries: Vec<(Word, WordClass)>,
}
