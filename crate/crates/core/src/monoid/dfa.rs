use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::code::FiniteCode;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

/// A complete deterministic automaton. `delta[a][q]` is the successor of
/// state `q` under letter `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: usize,
    accepting: Vec<bool>,
    delta: Vec<Vec<usize>>,
    /// States from which an accepting state is reachable.
    live: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct DfaJson {
    states: usize,
    initial: usize,
    accepting: Vec<usize>,
    delta: BTreeMap<String, Vec<usize>>,
}

impl Dfa {
    pub fn new(alphabet: Alphabet, initial: usize, accepting: Vec<bool>, delta: Vec<Vec<usize>>) -> Result<Self> {
        let n = accepting.len();
        if n == 0 || initial >= n {
            return Err(Error::invalid("automaton needs states and a valid initial state"));
        }
        if delta.len() != alphabet.size() {
            return Err(Error::invalid("one transition row per letter is required"));
        }
        for row in &delta {
            if row.len() != n || row.iter().any(|&q| q >= n) {
                return Err(Error::invalid("transition table must be total over the states"));
            }
        }
        let live = co_reachable(&accepting, &delta);
        Ok(Dfa {
            alphabet,
            initial,
            accepting,
            delta,
            live,
        })
    }

    pub fn from_json(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let j: DfaJson = serde_json::from_str(text).map_err(|e| Error::invalid(format!("automaton JSON: {e}")))?;
        let mut accepting = vec![false; j.states];
        for &q in &j.accepting {
            *accepting
                .get_mut(q)
                .ok_or_else(|| Error::invalid(format!("accepting state {q} out of range")))? = true;
        }
        if j.delta.len() != alphabet.size() {
            return Err(Error::invalid("delta must have one row per letter"));
        }
        let delta = alphabet
            .names()
            .iter()
            .map(|n| {
                j.delta
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Error::invalid(format!("delta has no row for {n:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Dfa::new(alphabet.clone(), j.initial, accepting, delta)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = DfaJson {
            states: self.states(),
            initial: self.initial,
            accepting: (0..self.states()).filter(|&q| self.accepting[q]).collect(),
            delta: self
                .alphabet
                .letters()
                .map(|a| (self.alphabet.name(a).to_string(), self.delta[a as usize].clone()))
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    /// Minimal automaton of `X*`: the trie of `X` read as an automaton that
    /// may jump back to the root after each code word, determinized and
    /// minimized.
    pub fn of_star(x: &FiniteCode) -> Dfa {
        let alphabet = x.alphabet().clone();
        let k = alphabet.size();
        let mut children: Vec<HashMap<Letter, usize>> = vec![HashMap::new()];
        let mut terminal = vec![false];
        for w in x.words() {
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
        let start: BTreeSet<usize> = std::iter::once(0).collect();
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut sets = vec![start.clone()];
        index.insert(start, 0);
        let mut delta = vec![Vec::new(); k];
        let mut i = 0;
        while i < sets.len() {
            for a in 0..k {
                let mut next = BTreeSet::new();
                for &s in &sets[i] {
                    if let Some(&c) = children[s].get(&(a as Letter)) {
                        next.insert(c);
                        if terminal[c] {
                            next.insert(0);
                        }
                    }
                }
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    sets.push(next);
                    sets.len() - 1
                });
                delta[a].push(id);
            }
            i += 1;
        }
        let accepting = sets.iter().map(|s| s.contains(&0)).collect();
        Dfa::new(alphabet, 0, accepting, delta)
            .expect("subset construction is total")
            .minimize()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    /// Whether some word leads from `q` to an accepting state.
    pub fn can_accept(&self, q: usize) -> bool {
        self.live[q]
    }

    pub fn step(&self, q: usize, a: Letter) -> usize {
        self.delta[a as usize][q]
    }

    pub fn delta(&self) -> &[Vec<usize>] {
        &self.delta
    }

    pub fn run(&self, q: usize, w: &Word) -> usize {
        w.iter().fold(q, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.accepting[self.run(self.initial, w)]
    }

    /// Restriction to the states reachable from the initial one, numbered
    /// in breadth-first order (letters in alphabet order).
    pub fn trim(&self) -> Dfa {
        let (order, _) = self.bfs_order(|q| q);
        self.renumber(&order, |q| q)
    }

    /// Hopcroft minimization followed by canonical breadth-first numbering,
    /// so equal languages give equal automata.
    pub fn minimize(&self) -> Dfa {
        let t = self.trim();
        let blocks = hopcroft(&t.accepting, &t.delta);
        let (order, _) = t.bfs_order(|q| blocks[q]);
        t.renumber(&order, |q| blocks[q])
    }

    /// BFS from the initial state over classes given by `class`; returns
    /// the classes in visiting order.
    fn bfs_order(&self, class: impl Fn(usize) -> usize) -> (Vec<usize>, HashMap<usize, usize>) {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut reps = Vec::new();
        let mut queue = VecDeque::from([self.initial]);
        seen.insert(class(self.initial), 0);
        reps.push(self.initial);
        while let Some(q) = queue.pop_front() {
            for row in &self.delta {
                let r = row[q];
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(class(r)) {
                    e.insert(reps.len());
                    reps.push(r);
                    queue.push_back(r);
                }
            }
        }
        (reps, seen)
    }

    /// New automaton whose state `i` is the class of `reps[i]`.
    fn renumber(&self, reps: &[usize], class: impl Fn(usize) -> usize) -> Dfa {
        let id: HashMap<usize, usize> = reps.iter().enumerate().map(|(i, &q)| (class(q), i)).collect();
        let accepting = reps.iter().map(|&q| self.accepting[q]).collect();
        let delta = self
            .delta
            .iter()
            .map(|row| reps.iter().map(|&q| id[&class(row[q])]).collect())
            .collect();
        Dfa::new(self.alphabet.clone(), 0, accepting, delta).expect("renumbering keeps the table total")
    }
}

fn co_reachable(accepting: &[bool], delta: &[Vec<usize>]) -> Vec<bool> {
    let n = accepting.len();
    let mut rev = vec![Vec::new(); n];
    for row in delta {
        for (p, &q) in row.iter().enumerate() {
            rev[q].push(p);
        }
    }
    let mut live = accepting.to_vec();
    let mut stack: Vec<usize> = (0..n).filter(|&q| accepting[q]).collect();
    while let Some(q) = stack.pop() {
        for &p in &rev[q] {
            if !live[p] {
                live[p] = true;
                stack.push(p);
            }
        }
    }
    live
}

/// Hopcroft's partition refinement; returns a block id per state.
fn hopcroft(accepting: &[bool], delta: &[Vec<usize>]) -> Vec<usize> {
    let n = accepting.len();
    let k = delta.len();
    let mut inverse = vec![vec![Vec::new(); n]; k];
    for (a, row) in delta.iter().enumerate() {
        for (p, &q) in row.iter().enumerate() {
            inverse[a][q].push(p);
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let (acc, rej): (Vec<usize>, Vec<usize>) = (0..n).partition(|&q| accepting[q]);
    for b in [acc, rej] {
        if !b.is_empty() {
            blocks.push(b);
        }
    }
    let mut block_of = vec![0; n];
    for (i, b) in blocks.iter().enumerate() {
        for &q in b {
            block_of[q] = i;
        }
    }
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut work: Vec<(usize, usize)> = Vec::new();
    for b in 0..blocks.len() {
        for a in 0..k {
            pending.insert((b, a));
            work.push((b, a));
        }
    }
    while let Some((c, a)) = work.pop() {
        pending.remove(&(c, a));
        let mut hit: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &q in &blocks[c] {
            for &p in &inverse[a][q] {
                hit.entry(block_of[p]).or_default().push(p);
            }
        }
        for (y, xs) in hit {
            if xs.len() == blocks[y].len() {
                continue;
            }
            let inside: HashSet<usize> = xs.into_iter().collect();
            let (keep, moved): (Vec<usize>, Vec<usize>) = blocks[y].iter().partition(|q| inside.contains(q));
            let z = blocks.len();
            for &q in &moved {
                block_of[q] = z;
            }
            let smaller = if keep.len() <= moved.len() { y } else { z };
            blocks[y] = keep;
            blocks.push(moved);
            for b in 0..k {
                if pending.contains(&(y, b)) {
                    pending.insert((z, b));
                    work.push((z, b));
                } else if pending.insert((smaller, b)) {
                    work.push((smaller, b));
                }
            }
        }
    }
    block_of
}
