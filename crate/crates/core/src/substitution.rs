//! Substitutions (endomorphisms of the free monoid that send letters to
//! nonempty words) and their structural properties.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::FactorSet;
use crate::word::{Alphabet, Letter, Word};

/// Default cap on the number of factors kept while generating a factor
/// language.
pub const DEFAULT_FACTOR_CAP: usize = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Alphabet,
    images: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct SubstitutionJson {
    alphabet: Vec<String>,
    images: BTreeMap<String, String>,
}

impl Substitution {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != alphabet.size() {
            return Err(Error::invalid(format!(
                "{} images for an alphabet of {} letters",
                images.len(),
                alphabet.size()
            )));
        }
        for (a, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::invalid(format!(
                    "image of {} is empty",
                    alphabet.name(a as Letter)
                )));
            }
            alphabet.check(img)?;
        }
        Ok(Substitution { alphabet, images })
    }

    /// Parses rules such as `a->ab; b->a`. The alphabet is the list of rule
    /// heads in order of appearance; braces name multi-character letters
    /// (`{x1}->{x1}{x2}`).
    pub fn parse(text: &str) -> Result<Self> {
        let mut heads = Vec::new();
        let mut bodies = Vec::new();
        for rule in text.split([';', '\n']).map(str::trim).filter(|r| !r.is_empty()) {
            let (lhs, rhs) = rule
                .split_once("->")
                .ok_or_else(|| Error::invalid(format!("rule {rule:?} lacks '->'")))?;
            let head = Alphabet::tokenize(lhs)?;
            if head.len() != 1 {
                return Err(Error::invalid(format!("rule head {lhs:?} must be one letter")));
            }
            heads.push(head.into_iter().next().unwrap());
            bodies.push(Alphabet::tokenize(rhs)?);
        }
        let alphabet = Alphabet::new(heads)?;
        let images = bodies
            .iter()
            .map(|body| {
                body.iter()
                    .map(|t| {
                        alphabet
                            .letter(t)
                            .ok_or_else(|| Error::invalid(format!("letter {t:?} has no rule")))
                    })
                    .collect::<Result<Word>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(alphabet, images)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: SubstitutionJson =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("substitution JSON: {e}")))?;
        let alphabet = Alphabet::new(j.alphabet)?;
        if j.images.len() != alphabet.size() {
            return Err(Error::invalid("images must cover exactly the alphabet"));
        }
        let images = alphabet
            .names()
            .iter()
            .map(|n| {
                let img = j
                    .images
                    .get(n)
                    .ok_or_else(|| Error::invalid(format!("no image for {n:?}")))?;
                alphabet.parse_word(img)
            })
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(alphabet, images)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = SubstitutionJson {
            alphabet: self.alphabet.names().to_vec(),
            images: self
                .alphabet
                .letters()
                .map(|a| (self.alphabet.name(a).to_string(), self.alphabet.render(self.image(a))))
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    /// Rule text in the same format accepted by [`Substitution::parse`].
    pub fn to_rules(&self) -> String {
        let one = |a: Letter| self.alphabet.render(&Word::from(vec![a]));
        self.alphabet
            .letters()
            .map(|a| format!("{}->{}", one(a), self.alphabet.render(self.image(a))))
            .collect::<Vec<_>>()
            .join("; ")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn image(&self, a: Letter) -> &Word {
        &self.images[a as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Same substitution under new letter names (same order).
    pub fn relabel(&self, alphabet: Alphabet) -> Result<Self> {
        if alphabet.size() != self.alphabet.size() {
            return Err(Error::invalid("relabelling must keep the alphabet size"));
        }
        Substitution::new(alphabet, self.images.clone())
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.alphabet.check(w)?;
        Ok(self.apply_unchecked(w))
    }

    pub(crate) fn apply_unchecked(&self, w: &Word) -> Word {
        w.iter()
            .flat_map(|&a| self.images[a as usize].iter().copied())
            .collect()
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution> {
        if self.alphabet != other.alphabet {
            return Err(Error::invalid("composition needs a common alphabet"));
        }
        let images = other.images.iter().map(|w| self.apply_unchecked(w)).collect();
        Substitution::new(self.alphabet.clone(), images)
    }

    pub fn power(&self, k: u32) -> Substitution {
        let mut images: Vec<Word> = self.alphabet.letters().map(|a| Word::from(vec![a])).collect();
        for _ in 0..k {
            images = images.iter().map(|w| self.apply_unchecked(w)).collect();
        }
        Substitution {
            alphabet: self.alphabet.clone(),
            images,
        }
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let n = self.alphabet.size();
        let mut entries = vec![vec![0u64; n]; n];
        for (b, img) in self.images.iter().enumerate() {
            for &a in img.iter() {
                entries[a as usize][b] += 1;
            }
        }
        IncidenceMatrix { entries }
    }

    /// Primitivity via positivity of a power of the incidence matrix, with
    /// the search bounded by Wielandt's exponent `(n-1)^2 + 1`.
    pub fn is_primitive(&self) -> Result<Primitivity> {
        let n = self.alphabet.size();
        if n < 2 {
            return Err(Error::not_applicable(
                "primitivity needs an alphabet with at least two letters",
            ));
        }
        let pattern: Vec<Vec<bool>> = self
            .incidence_matrix()
            .entries
            .iter()
            .map(|row| row.iter().map(|&x| x > 0).collect())
            .collect();
        let bound = (n - 1) * (n - 1) + 1;
        let mut power = pattern.clone();
        for k in 1..=bound {
            if power.iter().all(|row| row.iter().all(|&x| x)) {
                return Ok(Primitivity {
                    primitive: true,
                    witness_exponent: Some(k),
                });
            }
            power = bool_mul(&power, &pattern);
        }
        Ok(Primitivity {
            primitive: false,
            witness_exponent: None,
        })
    }

    pub fn is_proper(&self) -> Properness {
        let first = self.images[0].first();
        let last = self.images[0].last();
        let proper = self
            .images
            .iter()
            .all(|w| w.first() == first && w.last() == last);
        if proper {
            Properness {
                proper,
                first,
                last,
            }
        } else {
            Properness {
                proper,
                first: None,
                last: None,
            }
        }
    }

    pub fn boundary_maps(&self) -> BoundaryMaps {
        let first: Vec<Letter> = self.images.iter().map(|w| w.first().unwrap()).collect();
        let last: Vec<Letter> = self.images.iter().map(|w| w.last().unwrap()).collect();
        // state(k) = (last^k, first^k), indexed from k = 1
        let mut seen: HashMap<(Vec<Letter>, Vec<Letter>), usize> = HashMap::new();
        let mut state = (last.clone(), first.clone());
        let mut k = 1;
        loop {
            if let Some(&j) = seen.get(&state) {
                return BoundaryMaps {
                    first,
                    last,
                    preperiod: j - 1,
                    period: k - j,
                };
            }
            seen.insert(state.clone(), k);
            state = (
                state.0.iter().map(|&x| last[x as usize]).collect(),
                state.1.iter().map(|&x| first[x as usize]).collect(),
            );
            k += 1;
        }
    }

    /// Stability: some `k` such that `last^k(a) first^k(b)` is a factor for
    /// all letters `a, b`. The condition only depends on the boundary-map
    /// state and is monotone in `k`, so one period past the preperiod
    /// decides it.
    pub fn is_stable(&self, two_factors: &BTreeSet<Word>) -> Result<Stability> {
        if !self.is_primitive()?.primitive {
            return Err(Error::not_applicable("stability is defined for primitive substitutions"));
        }
        let maps = self.boundary_maps();
        let window = (maps.preperiod + 1)..=(maps.preperiod + maps.period);
        let witness = window.clone().find(|&k| self.boundary_condition(&maps, k, two_factors));
        Ok(Stability {
            stable: witness.is_some(),
            witness_k: witness,
            window: (*window.start(), *window.end()),
        })
    }

    /// Whether every `last^k(a) first^k(b)` lies in `two_factors`.
    pub fn boundary_condition(&self, maps: &BoundaryMaps, k: usize, two_factors: &BTreeSet<Word>) -> bool {
        let l = maps.last_power(k);
        let f = maps.first_power(k);
        l.iter()
            .all(|&x| f.iter().all(|&y| two_factors.contains(&Word::from(vec![x, y]))))
    }

    /// Convenience: stability with the 2-factors computed here.
    pub fn stability(&self) -> Result<Stability> {
        let f = self.factor_language(2)?;
        self.is_stable(f.level(2))
    }

    /// All factors of `F_φ` of length at most `max_len`.
    ///
    /// Every factor of length at least two is a factor of `φ(u)` spanning
    /// from the image of the first letter of `u` to the image of its last
    /// one, for some factor `u` no longer than itself. The set is therefore
    /// the least fixed point of `S ↦ A ∪ spanning(φ(S))` truncated at
    /// `max_len`, computed by a worklist; reaching the fixed point is the
    /// exactness certificate.
    pub fn factor_language(&self, max_len: usize) -> Result<FactorSet> {
        self.factor_language_capped(max_len, DEFAULT_FACTOR_CAP)
    }

    pub fn factor_language_capped(&self, max_len: usize, cap: usize) -> Result<FactorSet> {
        if max_len == 0 {
            return Err(Error::invalid("length bound must be positive"));
        }
        if self.alphabet.size() == 1 {
            if self.images[0].len() < 2 {
                return Err(Error::not_applicable(
                    "a one-letter substitution must be growing to generate a subshift language",
                ));
            }
        } else if !self.is_primitive()?.primitive {
            return Err(Error::not_applicable("factor language generation needs a primitive substitution"));
        }

        let mut levels: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); max_len + 1];
        levels[0].insert(Word::empty());
        let mut total = 0usize;
        let mut queue: Vec<Word> = Vec::new();
        for a in self.alphabet.letters() {
            let w = Word::from(vec![a]);
            levels[1].insert(w.clone());
            total += 1;
            queue.push(w);
        }
        while let Some(u) = queue.pop() {
            let img = self.apply_unchecked(&u);
            let img = img.letters();
            let head = self.images[u.first().unwrap() as usize].len();
            let tail = self.images[u.last().unwrap() as usize].len();
            let spanning_start = if u.len() == 1 { img.len() } else { head };
            for i in 0..spanning_start {
                // a spanning factor must end inside the image of the last letter
                let min_end = if u.len() == 1 { i + 1 } else { img.len() - tail + 1 };
                for end in min_end..=img.len() {
                    let len = end - i;
                    if len > max_len {
                        break;
                    }
                    let w = Word::from(&img[i..end]);
                    if levels[len].insert(w.clone()) {
                        total += 1;
                        if total > cap {
                            return Err(Error::limit(
                                format!("factor language exceeded {cap} words before reaching length {max_len}"),
                                Some(total),
                            ));
                        }
                        queue.push(w);
                    }
                }
            }
        }
        Ok(FactorSet::from_levels(self.alphabet.clone(), levels))
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_rules())
    }
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] && b[k][j])).collect())
        .collect()
}

/// `entries[a][b]` counts occurrences of letter `a` in the image of `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceMatrix {
    pub entries: Vec<Vec<u64>>,
}

impl IncidenceMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn identity(n: usize) -> Self {
        IncidenceMatrix {
            entries: (0..n)
                .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn column_sums(&self) -> Vec<u64> {
        let n = self.size();
        (0..n).map(|j| (0..n).map(|i| self.entries[i][j]).sum()).collect()
    }

    pub fn mul(&self, other: &IncidenceMatrix) -> IncidenceMatrix {
        let n = self.size();
        IncidenceMatrix {
            entries: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|k| self.entries[i][k] * other.entries[k][j]).sum())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.entries)
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(entries: &[Vec<u64>]) -> BigInt {
    let n = entries.len();
    let mut m: Vec<Vec<BigInt>> = entries
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &m[n - 1][n - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Primitivity {
    pub primitive: bool,
    pub witness_exponent: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Properness {
    pub proper: bool,
    pub first: Option<Letter>,
    pub last: Option<Letter>,
}

/// First/last-letter maps of the images and the eventual period of
/// `k ↦ (last^k, first^k)` for `k ≥ 1`: the state at `k` equals the state at
/// `k + period` for every `k ≥ preperiod + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryMaps {
    pub first: Vec<Letter>,
    pub last: Vec<Letter>,
    pub preperiod: usize,
    pub period: usize,
}

impl BoundaryMaps {
    fn iterate(map: &[Letter], k: usize) -> Vec<Letter> {
        (0..map.len() as Letter)
            .map(|mut a| {
                for _ in 0..k {
                    a = map[a as usize];
                }
                a
            })
            .collect()
    }

    /// `a ↦ first letter of φ^k(a)`.
    pub fn first_power(&self, k: usize) -> Vec<Letter> {
        Self::iterate(&self.first, k)
    }

    /// `a ↦ last letter of φ^k(a)`.
    pub fn last_power(&self, k: usize) -> Vec<Letter> {
        Self::iterate(&self.last, k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stability {
    pub stable: bool,
    pub witness_k: Option<usize>,
    /// The (derived) window of exponents that was searched.
    pub window: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeriodicityVerdict {
    Periodic { period: usize },
    AperiodicUpTo { bound: usize },
    AssertedAperiodic,
}

impl PeriodicityVerdict {
    pub fn is_periodic(&self) -> bool {
        matches!(self, PeriodicityVerdict::Periodic { .. })
    }
}

impl fmt::Display for PeriodicityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodicityVerdict::Periodic { period } => write!(f, "Periodic({period})"),
            PeriodicityVerdict::AperiodicUpTo { bound } => write!(f, "AperiodicUpTo({bound})"),
            PeriodicityVerdict::AssertedAperiodic => write!(f, "AssertedAperiodic"),
        }
    }
}

/// Complexity-plateau test: `p(k+1) = p(k)` for some `1 ≤ k < L` means the
/// order-`k` Rauzy graph is a single cycle whose length is the period.
pub fn periodicity(f: &FactorSet) -> PeriodicityVerdict {
    let l = f.max_length();
    for k in 1..l {
        let pk = f.level(k).len();
        if pk > 0 && pk == f.level(k + 1).len() {
            let period = f
                .rauzy_graph(k)
                .ok()
                .and_then(|g| g.single_cycle_length())
                .unwrap_or(pk);
            return PeriodicityVerdict::Periodic { period };
        }
    }
    PeriodicityVerdict::AperiodicUpTo { bound: l }
}

/// Some well-known substitutions, used by tests, benches and the CLI.
pub mod catalog {
    use super::Substitution;

    pub fn fibonacci() -> Substitution {
        Substitution::parse("a->ab; b->a").unwrap()
    }

    pub fn thue_morse() -> Substitution {
        Substitution::parse("a->ab; b->ba").unwrap()
    }

    /// `0 ↦ 012, 1 ↦ 0122, 2 ↦ 0121012`.
    pub fn s012() -> Substitution {
        Substitution::parse("0->012; 1->0122; 2->0121012").unwrap()
    }

    /// `0 ↦ 01, 1 ↦ 0001`.
    pub fn s01() -> Substitution {
        Substitution::parse("0->01; 1->0001").unwrap()
    }

    /// A primitive substitution whose language is the factors of `(ab)^∞`.
    pub fn ab_periodic() -> Substitution {
        Substitution::parse("a->ab; b->ab").unwrap()
    }
}
