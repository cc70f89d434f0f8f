//! Finite codes and their relation to a factorial language `F`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::language::FactorSet;
use crate::monoid::Dfa;
use crate::word::{Alphabet, Letter, Word};

/// A finite nonempty set of nonempty words, kept in length-then-lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCode {
    alphabet: Alphabet,
    words: Vec<Word>,
}

fn length_lex(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl FiniteCode {
    pub fn new(alphabet: Alphabet, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut words: Vec<Word> = words.into_iter().collect();
        if words.is_empty() {
            return Err(Error::invalid("a code must be nonempty"));
        }
        for w in &words {
            if w.is_empty() {
                return Err(Error::invalid("a code cannot contain the empty word"));
            }
            alphabet.check(w)?;
        }
        words.sort_by(length_lex);
        let before = words.len();
        words.dedup();
        if words.len() != before {
            return Err(Error::invalid("duplicate code words"));
        }
        Ok(FiniteCode { alphabet, words })
    }

    /// Comma-separated word list, e.g. `aa,ab,ba`.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let words = text
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| alphabet.parse_word(t))
            .collect::<Result<Vec<_>>>()?;
        FiniteCode::new(alphabet.clone(), words)
    }

    /// `A^n`.
    pub fn power(alphabet: &Alphabet, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("A^0 is not a code"));
        }
        let k = alphabet.size() as Letter;
        let mut words = vec![Word::empty()];
        for _ in 0..n {
            words = words
                .iter()
                .flat_map(|w| (0..k).map(move |a| w.concat(&Word::from(vec![a]))))
                .collect();
        }
        FiniteCode::new(alphabet.clone(), words)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_word_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn render(&self) -> Vec<String> {
        self.words.iter().map(|w| self.alphabet.render(w)).collect()
    }

    pub fn reversed(&self) -> FiniteCode {
        FiniteCode::new(self.alphabet.clone(), self.words.iter().map(Word::reversed))
            .expect("reversal keeps a valid word set")
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.words.iter().position(|x| x == w)
    }

    pub fn is_prefix(&self) -> bool {
        self.words
            .iter()
            .all(|u| self.words.iter().all(|v| u == v || !u.is_prefix_of(v)))
    }

    pub fn is_suffix(&self) -> bool {
        self.words
            .iter()
            .all(|u| self.words.iter().all(|v| u == v || !u.is_suffix_of(v)))
    }

    pub fn concatenate(&self, seq: &[usize]) -> Word {
        seq.iter().flat_map(|&i| self.words[i].iter().copied()).collect()
    }
}

/// Two distinct factorizations of the same word (indices into the code).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleFactorization {
    pub word: Word,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFlags {
    pub is_code: bool,
    pub is_prefix: bool,
    pub is_suffix: bool,
    pub is_bifix: bool,
    pub counterexample: Option<DoubleFactorization>,
}

/// Code test by Sardinas–Patterson, run as a breadth-first search over
/// dangling suffixes so that a double factorization can be rebuilt when
/// the test fails.
pub fn classify_code(x: &FiniteCode) -> CodeFlags {
    let is_prefix = x.is_prefix();
    let is_suffix = x.is_suffix();
    let counterexample = if is_prefix || is_suffix {
        None
    } else {
        sardinas_patterson(x)
    };
    CodeFlags {
        is_code: counterexample.is_none(),
        is_prefix,
        is_suffix,
        is_bifix: is_prefix && is_suffix,
        counterexample,
    }
}

/// A node of the search: the "ahead" side has spelled `dangling` more
/// letters than the other one.
struct SpNode {
    dangling: Word,
    ahead: Vec<usize>,
    behind: Vec<usize>,
}

fn sardinas_patterson(x: &FiniteCode) -> Option<DoubleFactorization> {
    let words = x.words();
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    let mut queue: VecDeque<SpNode> = VecDeque::new();
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            if i != j && u.is_prefix_of(v) {
                let d = Word::from(&v.letters()[u.len()..]);
                if seen.insert(d.clone()) {
                    queue.push_back(SpNode {
                        dangling: d,
                        ahead: vec![j],
                        behind: vec![i],
                    });
                }
            }
        }
    }
    while let Some(node) = queue.pop_front() {
        for (k, z) in words.iter().enumerate() {
            let mut behind = node.behind.clone();
            behind.push(k);
            if *z == node.dangling {
                let word = x.concatenate(&node.ahead);
                return Some(DoubleFactorization {
                    word,
                    first: node.ahead.clone(),
                    second: behind,
                });
            }
            let (next, ahead, behind) = if node.dangling.is_prefix_of(z) {
                // the lagging side overtakes
                (Word::from(&z.letters()[node.dangling.len()..]), behind, node.ahead.clone())
            } else if z.is_prefix_of(&node.dangling) {
                (Word::from(&node.dangling.letters()[z.len()..]), node.ahead.clone(), behind)
            } else {
                continue;
            };
            if seen.insert(next.clone()) {
                queue.push_back(SpNode {
                    dangling: next,
                    ahead,
                    behind,
                });
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletenessVerdict {
    HoldsUpTo { bound: usize },
    Fails { counterexample: Word },
}

impl CompletenessVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, CompletenessVerdict::HoldsUpTo { .. })
    }
}

/// Trie of the code words, used as an NFA for the prefixes of `X*`:
/// reading a letter moves down the trie and, on completing a code word,
/// may restart at the root.
struct PrefixAutomaton {
    children: Vec<HashMap<Letter, usize>>,
    terminal: Vec<bool>,
}

impl PrefixAutomaton {
    fn new(words: &[Word]) -> Self {
        let mut children = vec![HashMap::new()];
        let mut terminal = vec![false];
        for w in words {
            let mut node = 0;
            for &a in w.iter() {
                node = match children[node].get(&a) {
                    Some(&c) => c,
                    None => {
                        children.push(HashMap::new());
                        terminal.push(false);
                        let c = children.len() - 1;
                        children[node].insert(a, c);
                        c
                    }
                };
            }
            terminal[node] = true;
        }
        PrefixAutomaton { children, terminal }
    }

    fn step(&self, states: &BTreeSet<usize>, a: Letter) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &s in states {
            if let Some(&c) = self.children[s].get(&a) {
                out.insert(c);
                if self.terminal[c] {
                    out.insert(0);
                }
            }
        }
        out
    }
}

/// Whether every member of `f` is a prefix of a word of `X*`. The answer
/// for the window is exact: if some member fails, so does one of length at
/// most the longest code word.
pub fn is_right_f_complete(x: &FiniteCode, f: &FactorSet) -> Result<CompletenessVerdict> {
    if x.alphabet() != f.alphabet() {
        return Err(Error::invalid("code and language use different alphabets"));
    }
    let aut = PrefixAutomaton::new(x.words());
    let mut states: HashMap<Word, BTreeSet<usize>> = HashMap::new();
    states.insert(Word::empty(), std::iter::once(0).collect());
    for k in 1..=f.max_length() {
        let mut next = HashMap::with_capacity(f.level(k).len());
        for w in f.level(k) {
            let parent = Word::from(&w.letters()[..k - 1]);
            let s = match states.get(&parent) {
                Some(s) => aut.step(s, w.last().unwrap()),
                None => BTreeSet::new(),
            };
            if s.is_empty() {
                return Ok(CompletenessVerdict::Fails {
                    counterexample: w.clone(),
                });
            }
            next.insert(w.clone(), s);
        }
        states = next;
    }
    Ok(CompletenessVerdict::HoldsUpTo { bound: f.max_length() })
}

/// Mirror image of [`is_right_f_complete`]: every member is a suffix of a
/// word of `X*`. The counterexample is the first in length-then-lex order.
pub fn is_left_f_complete(x: &FiniteCode, f: &FactorSet) -> Result<CompletenessVerdict> {
    if x.alphabet() != f.alphabet() {
        return Err(Error::invalid("code and language use different alphabets"));
    }
    let rx = x.reversed();
    let aut = PrefixAutomaton::new(rx.words());
    for k in 1..=f.max_length() {
        for w in f.level(k) {
            let mut s: BTreeSet<usize> = std::iter::once(0).collect();
            for &a in w.letters().iter().rev() {
                s = aut.step(&s, a);
                if s.is_empty() {
                    break;
                }
            }
            if s.is_empty() {
                return Ok(CompletenessVerdict::Fails {
                    counterexample: w.clone(),
                });
            }
        }
    }
    Ok(CompletenessVerdict::HoldsUpTo { bound: f.max_length() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FMaximality {
    MaximalUpTo { bound: usize },
    Extension { word: Word },
}

fn check_inside(x: &FiniteCode, f: &FactorSet) -> Result<()> {
    if x.alphabet() != f.alphabet() {
        return Err(Error::invalid("code and language use different alphabets"));
    }
    if let Some(w) = x.words().iter().find(|w| !f.contains(w)) {
        return Err(Error::invalid(format!(
            "code word {} is not in the language window",
            x.alphabet().render(w)
        )));
    }
    Ok(())
}

/// Direct search for a word of `F \ X` that keeps `X` prefix when added.
pub fn is_f_maximal_prefix(x: &FiniteCode, f: &FactorSet) -> Result<FMaximality> {
    if !x.is_prefix() {
        return Err(Error::invalid("code is not prefix"));
    }
    check_inside(x, f)?;
    for w in f.iter().filter(|w| !w.is_empty()) {
        let compatible = x
            .words()
            .iter()
            .all(|v| v != w && !v.is_prefix_of(w) && !w.is_prefix_of(v));
        if compatible {
            return Ok(FMaximality::Extension { word: w.clone() });
        }
    }
    Ok(FMaximality::MaximalUpTo { bound: f.max_length() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BifixCompleteness {
    pub complete: bool,
    pub left: CompletenessVerdict,
    pub right: CompletenessVerdict,
    /// Left and right verdicts disagree while the window is recurrent.
    pub consistency_alarm: bool,
}

pub fn is_f_complete_bifix(x: &FiniteCode, f: &FactorSet) -> Result<BifixCompleteness> {
    if !(x.is_prefix() && x.is_suffix()) {
        return Err(Error::invalid("code is not bifix"));
    }
    check_inside(x, f)?;
    let left = is_left_f_complete(x, f)?;
    let right = is_right_f_complete(x, f)?;
    let order = f.max_length().saturating_sub(1).min(4);
    let recurrent = order >= 1 && f.is_recurrent_up_to(order).map(|r| r.recurrent).unwrap_or(false);
    Ok(BifixCompleteness {
        complete: left.holds() && right.holds(),
        consistency_alarm: recurrent && left.holds() != right.holds(),
        left,
        right,
    })
}

/// A rational code given in one of the supported forms.
#[derive(Clone, Copy, Debug)]
pub enum RationalCode<'a> {
    /// `A^n`.
    Power(usize),
    Finite(&'a FiniteCode),
    /// The minimal automaton of `Z*` for a prefix code `Z`: the code words
    /// are the nonempty accepted words with no nonempty accepted proper
    /// prefix.
    Star(&'a Dfa),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub code: FiniteCode,
    pub complete_window: bool,
}

/// `Z ∩ F` computed on the window of `F`.
pub fn intersect_with_f(z: RationalCode<'_>, f: &FactorSet) -> Result<Intersection> {
    let alphabet = f.alphabet().clone();
    let words: Vec<Word> = match z {
        RationalCode::Power(n) => {
            if n == 0 {
                return Err(Error::invalid("A^0 is not a code"));
            }
            if n > f.max_length() {
                return Err(Error::limit(
                    format!("A^{n} ∩ F needs L ≥ {n}, window has L = {}", f.max_length()),
                    None,
                ));
            }
            f.level(n).iter().cloned().collect()
        }
        RationalCode::Finite(x) => {
            if x.alphabet() != f.alphabet() {
                return Err(Error::invalid("code and language use different alphabets"));
            }
            if x.max_word_len() > f.max_length() {
                return Err(Error::limit(
                    format!("code words up to length {} exceed window L = {}", x.max_word_len(), f.max_length()),
                    None,
                ));
            }
            x.words().iter().filter(|w| f.contains(w)).cloned().collect()
        }
        RationalCode::Star(dfa) => {
            if dfa.alphabet() != f.alphabet() {
                return Err(Error::invalid("automaton and language use different alphabets"));
            }
            if !dfa.is_accepting(dfa.initial()) {
                return Err(Error::invalid("automaton of Z* must accept the empty word"));
            }
            // walk the factor trie level by level with the automaton state
            let mut found = Vec::new();
            let mut live: Vec<(Word, usize)> = vec![(Word::empty(), dfa.initial())];
            for k in 1..=f.max_length() {
                let mut next = Vec::new();
                for (w, q) in &live {
                    for a in alphabet.letters() {
                        let wa = w.concat(&Word::from(vec![a]));
                        if !f.contains(&wa) {
                            continue;
                        }
                        let q2 = dfa.step(*q, a);
                        if dfa.is_accepting(q2) {
                            found.push(wa);
                        } else if dfa.can_accept(q2) {
                            next.push((wa, q2));
                        }
                    }
                }
                live = next;
                if live.is_empty() {
                    break;
                }
                if k == f.max_length() {
                    return Err(Error::limit(
                        format!("Z ∩ F not exhausted within window L = {}", f.max_length()),
                        Some(found.len()),
                    ));
                }
            }
            found
        }
    };
    Ok(Intersection {
        code: FiniteCode::new(alphabet, words)?,
        complete_window: true,
    })
}

/// The unique factorization of `w` over the code `x`.
pub fn parse(x: &FiniteCode, w: &Word) -> Result<Vec<usize>> {
    let flags = classify_code(x);
    if !flags.is_code {
        return Err(Error::invalid("parsing needs a code"));
    }
    parse_unchecked(x, w)
}

/// As [`parse`] without re-running the code test.
pub(crate) fn parse_unchecked(x: &FiniteCode, w: &Word) -> Result<Vec<usize>> {
    let n = w.len();
    // back[i] = (previous cut, word index) for a factorization of w[..i]
    let mut back: Vec<Option<(usize, usize)>> = vec![None; n + 1];
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for i in 0..n {
        if !reach[i] {
            continue;
        }
        for (k, z) in x.words().iter().enumerate() {
            let j = i + z.len();
            if j <= n && !reach[j] && w.letters()[i..j] == *z.letters() {
                reach[j] = true;
                back[j] = Some((i, k));
            }
        }
    }
    if !reach[n] {
        return Err(Error::NotInStar(x.alphabet().render(w)));
    }
    let mut out = Vec::new();
    let mut i = n;
    while i > 0 {
        let (prev, k) = back[i].unwrap();
        out.push(k);
        i = prev;
    }
    out.reverse();
    Ok(out)
}

/// Random prefix codes inside `F`: half are grown by splitting leaves of
/// the trie of `F` (hence right `F`-complete), half are greedy random
/// antichains (usually not complete).
pub fn sample_prefix_codes<R: Rng>(f: &FactorSet, count: usize, max_len: usize, rng: &mut R) -> Vec<FiniteCode> {
    let max_len = max_len.min(f.max_length());
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let words = if out.len() % 2 == 0 {
            let mut leaves: Vec<Word> = f.level(1).iter().cloned().collect();
            let splits = rng.gen_range(0..=4);
            for _ in 0..splits {
                let splittable: Vec<usize> = (0..leaves.len()).filter(|&i| leaves[i].len() < max_len).collect();
                let Some(&i) = splittable.choose(rng) else { break };
                let w = leaves.swap_remove(i);
                for a in f.alphabet().letters() {
                    let wa = w.concat(&Word::from(vec![a]));
                    if f.contains(&wa) {
                        leaves.push(wa);
                    }
                }
            }
            leaves
        } else {
            let pool: Vec<&Word> = (1..=max_len).flat_map(|k| f.level(k).iter()).collect();
            let mut chosen: Vec<Word> = Vec::new();
            for _ in 0..rng.gen_range(1..=5) {
                let w = (*pool.choose(rng).unwrap()).clone();
                if chosen.iter().all(|v| !v.is_prefix_of(&w) && !w.is_prefix_of(v)) {
                    chosen.push(w);
                }
            }
            chosen
        };
        if let Ok(c) = FiniteCode::new(f.alphabet().clone(), words) {
            out.push(c);
        }
    }
    out
}

/// Random bifix codes inside `F`: `F ∩ A^n` for small `n` (complete) mixed
/// with greedy random bifix antichains.
pub fn sample_bifix_codes<R: Rng>(f: &FactorSet, count: usize, max_len: usize, rng: &mut R) -> Vec<FiniteCode> {
    let max_len = max_len.min(f.max_length());
    let pool: Vec<&Word> = (1..=max_len).flat_map(|k| f.level(k).iter()).collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let words: Vec<Word> = if out.len() % 3 == 0 {
            let n = rng.gen_range(1..=max_len);
            f.level(n).iter().cloned().collect()
        } else {
            let mut chosen: Vec<Word> = Vec::new();
            for _ in 0..rng.gen_range(1..=6) {
                let w = (*pool.choose(rng).unwrap()).clone();
                let ok = chosen.iter().all(|v| {
                    !v.is_prefix_of(&w) && !w.is_prefix_of(v) && !v.is_suffix_of(&w) && !w.is_suffix_of(v)
                });
                if ok {
                    chosen.push(w);
                }
            }
            chosen
        };
        if let Ok(c) = FiniteCode::new(f.alphabet().clone(), words) {
            out.push(c);
        }
    }
    out
}

/// Seeded comparison of `F`-maximality and right `F`-completeness over
/// sampled prefix codes inside `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalitySample {
    pub seed: u64,
    pub sampled: usize,
    pub agreeing: usize,
    pub disagreements: Vec<FiniteCode>,
}

pub fn maximality_sample(f: &FactorSet, count: usize, max_len: usize, seed: u64) -> Result<MaximalitySample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disagreements = Vec::new();
    let codes = sample_prefix_codes(f, count, max_len, &mut rng);
    for x in &codes {
        let maximal = matches!(is_f_maximal_prefix(x, f)?, FMaximality::MaximalUpTo { .. });
        if maximal != is_right_f_complete(x, f)?.holds() {
            disagreements.push(x.clone());
        }
    }
    Ok(MaximalitySample {
        seed,
        sampled: codes.len(),
        agreeing: codes.len() - disagreements.len(),
        disagreements,
    })
}
