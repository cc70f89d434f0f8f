use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::monoid::FiniteMonoidPresentation;
use crate::util::prime_divisors;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// `Z/nZ`, elements labelled `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order zero");
        FiniteGroup {
            table: (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect(),
            identity: 0,
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    /// The monoid itself, which must be a group.
    pub fn from_monoid(m: &FiniteMonoidPresentation) -> Result<Self> {
        if !m.is_group() {
            return Err(Error::invalid("monoid is not a group"));
        }
        let n = m.order();
        Ok(FiniteGroup {
            table: (0..n).map(|x| (0..n).map(|y| m.multiply(x, y)).collect()).collect(),
            identity: m.identity(),
            labels: (0..n).map(|x| m.label(x)).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn multiply(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn inverse(&self, x: usize) -> usize {
        (0..self.order())
            .find(|&y| self.table[x][y] == self.identity)
            .expect("group elements are invertible")
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.table[y][x];
            k += 1;
        }
        k
    }

    /// A finite group is nilpotent iff each Sylow subgroup is normal, i.e.
    /// for every prime `p` the elements of `p`-power order number exactly
    /// the `p`-part of the order.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.order() as u64;
        prime_divisors(n).into_iter().all(|p| {
            let mut part = 1;
            while n.is_multiple_of(part * p) {
                part *= p;
            }
            let count = (0..self.order())
                .filter(|&x| {
                    let mut o = self.element_order(x) as u64;
                    while o.is_multiple_of(p) {
                        o /= p;
                    }
                    o == 1
                })
                .count() as u64;
            count == part
        })
    }

    pub fn prime_divisors(&self) -> Vec<u64> {
        prime_divisors(self.order() as u64)
    }

    /// Closure of `gens` under products; in a finite group the generated
    /// submonoid is already a subgroup.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut elements: BTreeSet<usize> = std::iter::once(self.identity).collect();
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.table[x][g];
                if elements.insert(y) {
                    stack.push(y);
                }
            }
        }
        Subgroup { elements }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: BTreeSet<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}
