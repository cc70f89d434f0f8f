use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::json;

use super::FiniteMonoidPresentation;
use crate::util::{classes_from_ids, scc, UnionFind};

/// Green's relations of a finite monoid. Classes are lists of element
/// indices, each sorted, listed by smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenSummary {
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    /// `D = J` in a finite monoid.
    pub j_classes: Vec<Vec<usize>>,
    pub h_classes: Vec<Vec<usize>>,
    pub idempotents: Vec<usize>,
    pub minimal_ideal: Vec<usize>,
    pub maximal_subgroup: MaximalSubgroup,
    pub is_group: bool,
}

/// The `H`-class of an idempotent of the minimal ideal, with its
/// multiplication table over positions in `elements`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalSubgroup {
    pub idempotent: usize,
    pub elements: Vec<usize>,
    pub table: Vec<Vec<usize>>,
}

pub(super) fn summarize(m: &FiniteMonoidPresentation) -> GreenSummary {
    let n = m.order();
    let k = m.alphabet().size();
    let mut right_adj = vec![Vec::with_capacity(k); n];
    let mut left_adj = vec![Vec::with_capacity(k); n];
    for x in 0..n {
        for a in m.alphabet().letters() {
            right_adj[x].push(m.times_letter(x, a));
            left_adj[x].push(m.multiply(m.generator(a), x));
        }
    }
    let r_ids = scc(&right_adj);
    let l_ids = scc(&left_adj);
    let mut uf = UnionFind::new(n);
    for ids in [&r_ids, &l_ids] {
        let mut first: BTreeMap<usize, usize> = BTreeMap::new();
        for (x, &c) in ids.iter().enumerate() {
            let rep = *first.entry(c).or_insert(x);
            uf.union(rep, x);
        }
    }
    let j_ids: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    let mut h_key: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let h_ids: Vec<usize> = (0..n)
        .map(|x| {
            let next = h_key.len();
            *h_key.entry((r_ids[x], l_ids[x])).or_insert(next)
        })
        .collect();

    let idempotents: Vec<usize> = (0..n).filter(|&x| m.is_idempotent(x)).collect();
    // the product of all elements lies in every ideal
    let zero_like = (0..n).fold(m.identity(), |acc, x| m.multiply(acc, x));
    let minimal_ideal: Vec<usize> = (0..n).filter(|&x| j_ids[x] == j_ids[zero_like]).collect();
    let e = *idempotents
        .iter()
        .find(|&&e| j_ids[e] == j_ids[zero_like])
        .expect("the minimal ideal is a regular class");
    let group: Vec<usize> = (0..n).filter(|&x| h_ids[x] == h_ids[e]).collect();
    let position: BTreeMap<usize, usize> = group.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let table = group
        .iter()
        .map(|&x| group.iter().map(|&y| position[&m.multiply(x, y)]).collect())
        .collect();

    GreenSummary {
        r_classes: classes_from_ids(&r_ids),
        l_classes: classes_from_ids(&l_ids),
        j_classes: classes_from_ids(&j_ids),
        h_classes: classes_from_ids(&h_ids),
        idempotents,
        minimal_ideal,
        maximal_subgroup: MaximalSubgroup {
            idempotent: e,
            elements: group,
            table,
        },
        is_group: m.is_group(),
    }
}

/// One `J`-class drawn as a grid: rows are `R`-classes, columns are
/// `L`-classes, cells are `H`-classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EggBox {
    pub rows: usize,
    pub columns: usize,
    pub cells: Vec<Vec<Vec<usize>>>,
    /// Cells holding an idempotent (hence a group).
    pub group_cells: Vec<(usize, usize)>,
    pub minimal: bool,
}

impl GreenSummary {
    pub fn egg_boxes(&self) -> Vec<EggBox> {
        let class_of = |classes: &Vec<Vec<usize>>| -> BTreeMap<usize, usize> {
            classes
                .iter()
                .enumerate()
                .flat_map(|(i, c)| c.iter().map(move |&x| (x, i)))
                .collect()
        };
        let r_of = class_of(&self.r_classes);
        let l_of = class_of(&self.l_classes);
        let idem: BTreeSet<usize> = self.idempotents.iter().copied().collect();
        self.j_classes
            .iter()
            .map(|j| {
                let rows: Vec<usize> = j.iter().map(|x| r_of[x]).collect::<BTreeSet<_>>().into_iter().collect();
                let cols: Vec<usize> = j.iter().map(|x| l_of[x]).collect::<BTreeSet<_>>().into_iter().collect();
                let mut cells = vec![vec![Vec::new(); cols.len()]; rows.len()];
                let mut group_cells = BTreeSet::new();
                for &x in j {
                    let r = rows.binary_search(&r_of[&x]).unwrap();
                    let c = cols.binary_search(&l_of[&x]).unwrap();
                    cells[r][c].push(x);
                    if idem.contains(&x) {
                        group_cells.insert((r, c));
                    }
                }
                EggBox {
                    rows: rows.len(),
                    columns: cols.len(),
                    cells,
                    group_cells: group_cells.into_iter().collect(),
                    minimal: j.first() == self.minimal_ideal.first(),
                }
            })
            .collect()
    }

    /// Structured report with elements named by their representative words.
    pub fn to_json(&self, m: &FiniteMonoidPresentation) -> serde_json::Value {
        let names = |xs: &[usize]| xs.iter().map(|&x| m.label(x)).collect::<Vec<_>>();
        let classes = |cs: &[Vec<usize>]| cs.iter().map(|c| names(c)).collect::<Vec<_>>();
        let boxes: Vec<serde_json::Value> = self
            .egg_boxes()
            .iter()
            .map(|b| {
                json!({
                    "rows": b.rows,
                    "columns": b.columns,
                    "minimal": b.minimal,
                    "cells": b.cells.iter().map(|row| row.iter().map(|c| names(c)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "group_cells": b.group_cells,
                })
            })
            .collect();
        json!({
            "order": m.order(),
            "is_group": self.is_group,
            "r_classes": classes(&self.r_classes),
            "l_classes": classes(&self.l_classes),
            "j_classes": classes(&self.j_classes),
            "h_classes": classes(&self.h_classes),
            "idempotents": names(&self.idempotents),
            "minimal_ideal": names(&self.minimal_ideal),
            "maximal_subgroup": {
                "idempotent": m.label(self.maximal_subgroup.idempotent),
                "elements": names(&self.maximal_subgroup.elements),
                "order": self.maximal_subgroup.elements.len(),
                "table": self.maximal_subgroup.table,
            },
            "egg_box": boxes,
        })
    }

    /// Plain-text egg-box diagrams, one per `J`-class; `*` marks cells that
    /// contain an idempotent.
    pub fn egg_box_text(&self, m: &FiniteMonoidPresentation) -> String {
        let mut out = String::new();
        for (i, b) in self.egg_boxes().iter().enumerate() {
            let cell_text: Vec<Vec<String>> = b
                .cells
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(c, xs)| {
                            let mut s = xs.iter().map(|&x| m.label(x)).collect::<Vec<_>>().join(" ");
                            if b.group_cells.contains(&(r, c)) {
                                s.insert(0, '*');
                            }
                            s
                        })
                        .collect()
                })
                .collect();
            let width = cell_text
                .iter()
                .flatten()
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(1);
            let rule = format!("+{}\n", format!("{}+", "-".repeat(width + 2)).repeat(b.columns));
            out.push_str(&format!(
                "J-class {i}{}: {}x{}\n",
                if b.minimal { " (minimal ideal)" } else { "" },
                b.rows,
                b.columns
            ));
            out.push_str(&rule);
            for row in &cell_text {
                out.push('|');
                for s in row {
                    let pad = width - s.chars().count();
                    out.push_str(&format!(" {s}{} |", " ".repeat(pad)));
                }
                out.push('\n');
                out.push_str(&rule);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::code::FiniteCode;
    use crate::monoid::FiniteMonoidPresentation;
    use crate::word::Alphabet;

    fn monoid(code: &str) -> FiniteMonoidPresentation {
        let a = Alphabet::from_chars("ab").unwrap();
        FiniteMonoidPresentation::of_code(&FiniteCode::parse(&a, code).unwrap()).unwrap()
    }

    #[test]
    fn cyclic_group_is_one_h_class() {
        let a = Alphabet::from_chars("ab").unwrap();
        let m = FiniteMonoidPresentation::of_code(&FiniteCode::power(&a, 4).unwrap()).unwrap();
        let g = m.green();
        assert!(g.is_group);
        assert_eq!(g.h_classes.len(), 1);
        assert_eq!(g.maximal_subgroup.elements.len(), 4);
        assert_eq!(g.idempotents, vec![0]);
        assert_eq!(g.minimal_ideal.len(), 4);
    }

    #[test]
    fn zero_of_a_ba() {
        let m = monoid("a,ba");
        let g = m.green();
        assert!(!g.is_group);
        assert_eq!(g.minimal_ideal.len(), 1);
        let z = g.minimal_ideal[0];
        assert_eq!(m.label(z), "bb");
        for x in 0..m.order() {
            assert_eq!(m.multiply(x, z), z);
            assert_eq!(m.multiply(z, x), z);
        }
        assert_eq!(g.maximal_subgroup.elements, vec![z]);
    }

    #[test]
    fn egg_box_of_ab_ba() {
        let m = monoid("ab,ba");
        let g = m.green();
        let text = g.egg_box_text(&m);
        assert!(text.contains("(minimal ideal)"));
        let total: usize = g.egg_boxes().iter().map(|b| b.cells.iter().flatten().map(Vec::len).sum::<usize>()).sum();
        assert_eq!(total, m.order());
        let j = g.to_json(&m);
        assert_eq!(j["order"], m.order());
    }
}
