use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::substitution::Substitution;
use crate::util::UnionFind;
use crate::word::Letter;

/// Whether `φ(A)` generates the free group on `A`.
///
/// Builds the wedge of loops spelling each `φ(a)` at a base vertex and
/// folds it; the subgroup is the whole free group iff the folded graph is
/// the rose with one vertex and one loop per letter.
pub fn is_g_invertible(phi: &Substitution) -> bool {
    let mut vertices = 1;
    let mut edges: Vec<(usize, Letter, usize)> = Vec::new();
    for img in phi.images() {
        let mut at = 0;
        for (i, &a) in img.iter().enumerate() {
            let to = if i + 1 == img.len() {
                0
            } else {
                vertices += 1;
                vertices - 1
            };
            edges.push((at, a, to));
            at = to;
        }
    }
    let mut uf = UnionFind::new(vertices);
    loop {
        let mut merged = false;
        let mut out: HashMap<(usize, Letter), usize> = HashMap::new();
        let mut inc: HashMap<(usize, Letter), usize> = HashMap::new();
        for &(u, a, v) in &edges {
            let (u, v) = (uf.find(u), uf.find(v));
            if let Some(&w) = out.get(&(u, a)) {
                merged |= uf.union(w, v);
            } else {
                out.insert((u, a), v);
            }
            let (u, v) = (uf.find(u), uf.find(v));
            if let Some(&w) = inc.get(&(v, a)) {
                merged |= uf.union(w, u);
            } else {
                inc.insert((v, a), u);
            }
        }
        if !merged {
            break;
        }
    }
    let folded: BTreeSet<(usize, Letter, usize)> = edges
        .iter()
        .map(|&(u, a, v)| (uf.find(u), a, uf.find(v)))
        .collect();
    let one_vertex = (0..vertices).all(|v| uf.find(v) == uf.find(0));
    one_vertex && folded.len() == phi.alphabet().size()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotentInvertibility {
    pub invertible: bool,
    pub failing_prime: Option<u64>,
    pub determinant: String,
}

/// `det M_φ ≢ 0 (mod p)` for every `p` in `primes`.
pub fn is_nilpotent_pi_invertible(phi: &Substitution, primes: &[u64]) -> NilpotentInvertibility {
    let det = phi.incidence_matrix().determinant();
    let failing_prime = primes
        .iter()
        .copied()
        .find(|&p| (&det % BigInt::from(p)).is_zero());
    NilpotentInvertibility {
        invertible: failing_prime.is_none(),
        failing_prime,
        determinant: det.to_string(),
    }
}
