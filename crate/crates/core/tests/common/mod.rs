//! Brute-force oracles shared by the integration tests. Each one recomputes
//! a library answer by the most direct method available, without touching
//! the library's own algorithms.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use bifix::{FiniteCode, FiniteMonoidPresentation, Letter, Substitution, Word};

/// Longest ambiguous word the double-factorization oracle looks at. Every
/// non-code with at most four binary words of length at most four has an
/// ambiguity within twelve letters.
pub const SP_ORACLE_BOUND: usize = 12;

/// Number of factorizations (capped at 2) of every word of `X*` up to
/// `bound` letters; a word with two is a witness against `X` being a code.
pub fn double_factorization(x: &FiniteCode, bound: usize) -> Option<Vec<Letter>> {
    let words: Vec<Vec<Letter>> = x.words().iter().map(|w| w.letters().to_vec()).collect();
    let mut count: HashMap<Vec<Letter>, u8> = HashMap::new();
    count.insert(Vec::new(), 1);
    let mut by_len: Vec<Vec<Vec<Letter>>> = vec![vec![Vec::new()]];
    for l in 1..=bound {
        let mut fresh = Vec::new();
        for w in &words {
            if w.len() > l {
                continue;
            }
            for u in by_len[l - w.len()].clone() {
                let c = count[&u];
                let mut v = u.clone();
                v.extend_from_slice(w);
                let e = count.entry(v.clone()).or_insert(0);
                if *e == 0 {
                    fresh.push(v.clone());
                }
                *e = (*e + c).min(2);
            }
        }
        if let Some(w) = fresh.iter().find(|w| count[*w] >= 2) {
            return Some(w.clone());
        }
        by_len.push(fresh);
    }
    None
}

/// Factors up to `max_len` of long iterates `φ^k(a)` for every letter.
pub fn factors_by_iteration(phi: &Substitution, max_len: usize, min_word: usize) -> Vec<BTreeSet<Vec<Letter>>> {
    let mut levels = vec![BTreeSet::new(); max_len + 1];
    levels[0].insert(Vec::new());
    for a in phi.alphabet().letters() {
        let mut w = vec![a];
        let mut guard = 0;
        while w.len() < min_word && guard < 200 {
            w = w.iter().flat_map(|&b| phi.image(b).letters().to_vec()).collect();
            guard += 1;
        }
        for k in 1..=max_len.min(w.len()) {
            for f in w.windows(k) {
                levels[k].insert(f.to_vec());
            }
        }
    }
    levels
}

/// Least `k ≤ limit` with `M^k` entrywise positive, by repeated squaring-free
/// multiplication of the integer matrix.
pub fn primitive_exponent(m: &[Vec<u64>], limit: usize) -> Option<usize> {
    let n = m.len();
    let pos: Vec<Vec<bool>> = m.iter().map(|r| r.iter().map(|&x| x > 0).collect()).collect();
    let mut p = pos.clone();
    for k in 1..=limit {
        if p.iter().all(|r| r.iter().all(|&x| x)) {
            return Some(k);
        }
        let mut q = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                q[i][j] = (0..n).any(|t| p[i][t] && pos[t][j]);
            }
        }
        p = q;
    }
    None
}

/// Leibniz expansion over all permutations.
pub fn leibniz_determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total: i128 = 0;
    permute(&mut perm, 0, &mut |p| {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        total += sign * (0..n).map(|i| m[i][p[i]] as i128).product::<i128>();
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// `ℓ_n` of `φ^ω(a)` for each letter: the row vector `1ᵀ M^e mod n` where
/// `M^e` is the idempotent power of the incidence matrix mod `n`.
pub fn omega_lengths_mod(phi: &Substitution, n: u64) -> Vec<u64> {
    let m = &phi.incidence_matrix().entries;
    let k = m.len();
    let mul = |a: &Vec<Vec<u64>>, b: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
        (0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum::<u64>() % n).collect())
            .collect()
    };
    let base: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x % n).collect()).collect();
    let mut p = base.clone();
    loop {
        if mul(&p, &p) == p {
            break;
        }
        p = mul(&p, &base);
    }
    // entries[i][j] counts letter i in φ(j)
    (0..k).map(|j| (0..k).map(|i| p[i][j]).sum::<u64>() % n).collect()
}

/// Green's relations from ideals: `x R y` iff `xM = yM`, `x L y` iff
/// `Mx = My`, `x J y` iff `MxM = MyM`.
pub struct NaiveGreen {
    pub r: Vec<Vec<usize>>,
    pub l: Vec<Vec<usize>>,
    pub j: Vec<Vec<usize>>,
    pub h: Vec<Vec<usize>>,
    pub idempotents: Vec<usize>,
    pub minimal_ideal: Vec<usize>,
}

pub fn naive_green(m: &FiniteMonoidPresentation) -> NaiveGreen {
    let n = m.order();
    let table: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| m.multiply(x, y)).collect()).collect();
    let right: Vec<BTreeSet<usize>> = (0..n).map(|x| (0..n).map(|s| table[x][s]).collect()).collect();
    let left: Vec<BTreeSet<usize>> = (0..n).map(|x| (0..n).map(|s| table[s][x]).collect()).collect();
    let two: Vec<BTreeSet<usize>> = (0..n)
        .map(|x| {
            (0..n)
                .flat_map(|s| right[x].iter().map(move |&y| (s, y)))
                .map(|(s, y)| table[s][y])
                .collect()
        })
        .collect();
    let classes = |key: &dyn Fn(usize) -> Vec<BTreeSet<usize>>| -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut seen = vec![false; n];
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let c: Vec<usize> = (x..n).filter(|&y| key(y) == key(x)).collect();
            for &y in &c {
                seen[y] = true;
            }
            out.push(c);
        }
        out
    };
    let r = classes(&|x| vec![right[x].clone()]);
    let l = classes(&|x| vec![left[x].clone()]);
    let j = classes(&|x| vec![two[x].clone()]);
    let h = classes(&|x| vec![right[x].clone(), left[x].clone()]);
    let idempotents = (0..n).filter(|&x| table[x][x] == x).collect();
    let smallest = (0..n).min_by_key(|&x| two[x].len()).unwrap();
    let minimal_ideal = (0..n).filter(|&x| two[x] == two[smallest]).collect();
    NaiveGreen {
        r,
        l,
        j,
        h,
        idempotents,
        minimal_ideal,
    }
}

/// Whether every letter is a product of at most `depth` factors
/// `φ(b)^{±1}` in the free group, by breadth-first search over reduced
/// words.
pub fn letters_reachable_in_free_group(phi: &Substitution, depth: usize) -> bool {
    // letters encoded as +(a+1) and -(a+1)
    let gens: Vec<Vec<i32>> = phi
        .images()
        .iter()
        .flat_map(|w| {
            let pos: Vec<i32> = w.iter().map(|&a| a as i32 + 1).collect();
            let neg: Vec<i32> = w.iter().rev().map(|&a| -(a as i32 + 1)).collect();
            [pos, neg]
        })
        .collect();
    let reduce = |mut u: Vec<i32>, v: &[i32]| {
        for &x in v {
            if u.last() == Some(&-x) {
                u.pop();
            } else {
                u.push(x);
            }
        }
        u
    };
    let mut frontier: BTreeSet<Vec<i32>> = BTreeSet::from([Vec::new()]);
    let mut seen = frontier.clone();
    for _ in 0..depth {
        let mut next = BTreeSet::new();
        for u in &frontier {
            for g in &gens {
                let v = reduce(u.clone(), g);
                if seen.insert(v.clone()) {
                    next.insert(v);
                }
            }
        }
        frontier = next;
    }
    (1..=phi.alphabet().size() as i32).all(|a| seen.contains(&vec![a]))
}

pub fn word(letters: &[Letter]) -> Word {
    Word::from(letters.to_vec())
}
