//! The two-vertex quiver with arrows `u, v: 1 -> 2`, `ubar, vbar: 2 -> 1`
//! and relations
//!
//! ```text
//! ubar v = vbar u = 0,   ubar u = vbar v,
//! u vbar = v ubar = 0,   u ubar = v vbar.
//! ```
//!
//! Words are written in composition order: `ubar u` runs `u` first.

use std::collections::BTreeMap;

use crate::linalg::{Fp, Matrix};

pub const ARROWS: [&str; 4] = ["u", "v", "ubar", "vbar"];
/// `(source, target)` of each arrow, vertices numbered from 0.
const ENDS: [(usize, usize); 4] = [(0, 1), (0, 1), (1, 0), (1, 0)];
/// `Φ`: `u ↔ ubar`, `v ↔ vbar`.
const BAR: [usize; 4] = [2, 3, 0, 1];

type Word = Vec<usize>;
type Combination = Vec<(Word, i64)>;

fn relations() -> Vec<Combination> {
    let (u, v, ub, vb) = (0, 1, 2, 3);
    vec![
        vec![(vec![ub, v], 1)],
        vec![(vec![vb, u], 1)],
        vec![(vec![ub, u], 1), (vec![vb, v], -1)],
        vec![(vec![u, vb], 1)],
        vec![(vec![v, ub], 1)],
        vec![(vec![u, ub], 1), (vec![v, vb], -1)],
    ]
}

fn composable(w: &[usize]) -> bool {
    w.windows(2).all(|p| ENDS[p[0]].0 == ENDS[p[1]].1)
}

/// Target and source vertex of a nonempty word.
fn ends(w: &[usize]) -> (usize, usize) {
    (ENDS[w[0]].1, ENDS[w[w.len() - 1]].0)
}

fn words(len: usize) -> Vec<Word> {
    let mut out: Vec<Word> = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| (0..4).map(move |a| [w.clone(), vec![a]].concat()))
            .filter(|w| composable(w))
            .collect();
    }
    out
}

/// Path algebra modulo the relations, truncated at a path length.
pub struct QuiverAlgebra {
    field: Fp,
    max_len: usize,
    /// Per length, all composable words and a basis of the ideal in that length.
    words: Vec<Vec<Word>>,
    ideal: Vec<Matrix>,
}

impl QuiverAlgebra {
    /// Lengths `0..=max_len`. Length-2 relations generate the ideal, so its
    /// part in length `L` is spanned by `p·r·q` with `|p| + |q| = L - 2`.
    pub fn new(field: Fp, max_len: usize) -> Self {
        let rels = relations();
        let mut all_words = Vec::new();
        let mut ideal = Vec::new();
        for len in 0..=max_len {
            let ws = if len == 0 { vec![] } else { words(len) };
            let index: BTreeMap<&Word, usize> =
                ws.iter().enumerate().map(|(i, w)| (w, i)).collect();
            let mut gens = Vec::new();
            if len >= 2 {
                for left in 0..=len - 2 {
                    for p in words(left) {
                        for q in words(len - 2 - left) {
                            for r in &rels {
                                let mut v = vec![0u32; ws.len()];
                                let mut ok = true;
                                for (w, c) in r {
                                    let full = [p.clone(), w.clone(), q.clone()].concat();
                                    match index.get(&full) {
                                        Some(&i) => v[i] = field.add(v[i], field.from_i64(*c)),
                                        None => ok = false,
                                    }
                                }
                                if ok {
                                    gens.push(v);
                                }
                            }
                        }
                    }
                }
            }
            ideal.push(Matrix::from_columns(field, ws.len(), &gens));
            all_words.push(ws);
        }
        QuiverAlgebra {
            field,
            max_len,
            words: all_words,
            ideal,
        }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// `dim e_s B_len e_t`, keyed `(s, t, len)`; zero entries omitted.
    pub fn cartan(&self) -> BTreeMap<(usize, usize, u32), usize> {
        let mut out = BTreeMap::new();
        out.insert((0, 0, 0), 1);
        out.insert((1, 1, 0), 1);
        for len in 1..=self.max_len {
            for s in 0..2 {
                for t in 0..2 {
                    let rows: Vec<usize> = (0..self.words[len].len())
                        .filter(|&i| ends(&self.words[len][i]) == (s, t))
                        .collect();
                    // the relations are homogeneous in the endpoints
                    let cols: Vec<Vec<u32>> = (0..self.ideal[len].cols())
                        .map(|c| rows.iter().map(|&r| self.ideal[len].get(r, c)).collect())
                        .collect();
                    let rank = Matrix::from_columns(self.field, rows.len(), &cols).rank();
                    let dim = rows.len() - rank;
                    if dim > 0 {
                        out.insert((s, t, len as u32), dim);
                    }
                }
            }
        }
        out
    }

    /// `dim B_len` for `len = 0..=max_len`.
    pub fn degree_dims(&self) -> Vec<usize> {
        let cartan = self.cartan();
        (0..=self.max_len as u32)
            .map(|d| {
                cartan
                    .iter()
                    .filter(|(k, _)| k.2 == d)
                    .map(|(_, n)| n)
                    .sum()
            })
            .collect()
    }

    fn in_ideal(&self, len: usize, combo: &Combination) -> bool {
        let ws = &self.words[len];
        let mut v = vec![0u32; ws.len()];
        for (w, c) in combo {
            let i = ws.iter().position(|x| x == w).expect("composable word");
            v[i] = self.field.add(v[i], self.field.from_i64(*c));
        }
        let ideal = &self.ideal[len];
        let with = ideal
            .transpose()
            .vstack(&Matrix::from_columns(self.field, ws.len(), &[v]).transpose());
        with.rank() == ideal.rank()
    }

    /// Whether `Φ` (reverse words, swap barred arrows) sends every relation
    /// into the ideal. Returns the first offending relation otherwise.
    pub fn anti_automorphism_witness(&self) -> Option<String> {
        for r in relations() {
            let image: Combination = r
                .iter()
                .map(|(w, c)| (w.iter().rev().map(|&a| BAR[a]).collect(), *c))
                .collect();
            if !self.in_ideal(2, &image) {
                return Some(render(&r));
            }
        }
        None
    }
}

fn render(c: &Combination) -> String {
    c.iter()
        .map(|(w, k)| {
            let word: Vec<&str> = w.iter().map(|&a| ARROWS[a]).collect();
            format!("{k:+} {}", word.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// `Φ` is an involution on arrows.
pub fn bar_is_involution() -> bool {
    (0..4).all(|a| BAR[BAR[a]] == a && ENDS[BAR[a]] == (ENDS[a].1, ENDS[a].0))
}
