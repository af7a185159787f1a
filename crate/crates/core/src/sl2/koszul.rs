//! Minimal graded projective resolutions of the simple modules of a block,
//! by iterated projective covers of left modules.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::block::BlockAlgebra;
use crate::linalg::Matrix;

/// Generator of a free module: `A·ε_s` placed in internal degree `degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveSummand {
    pub vertex: usize,
    pub degree: u32,
}

struct FreeModule {
    /// `(generator, basis vector x of A ε_s)`.
    basis: Vec<(usize, usize)>,
    degrees: Vec<u32>,
}

impl FreeModule {
    fn new(a: &BlockAlgebra, gens: Vec<ProjectiveSummand>) -> Self {
        let mut basis = Vec::new();
        let mut degrees = Vec::new();
        for (k, g) in gens.iter().enumerate() {
            let eps = a.primitive_idempotent(g.vertex);
            for x in 0..a.dim() {
                if a.mul(x, eps) == Some(x) {
                    basis.push((k, x));
                    degrees.push(g.degree + a.degree(x));
                }
            }
        }
        FreeModule { basis, degrees }
    }

    fn position(&self, k: usize, x: usize) -> usize {
        self.basis
            .iter()
            .position(|&b| b == (k, x))
            .expect("x ε = x")
    }

    /// `a · v` for a basis vector `a` of the algebra.
    fn act(&self, alg: &BlockAlgebra, a: usize, v: &[u32]) -> Vec<u32> {
        let fld = alg.field();
        let mut out = vec![0; v.len()];
        for (i, &c) in v.iter().enumerate().filter(|(_, &c)| c != 0) {
            let (k, x) = self.basis[i];
            if let Some(ax) = alg.mul(a, x) {
                let j = self.position(k, ax);
                out[j] = fld.add(out[j], c);
            }
        }
        out
    }

    fn indices_of_degree(&self, d: u32) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| self.degrees[i] == d)
            .collect()
    }
}

/// Homogeneous vectors of `m`, grouped by degree.
type Graded = BTreeMap<u32, Vec<Vec<u32>>>;

fn degree_of(m: &FreeModule, v: &[u32]) -> u32 {
    let i = v.iter().position(|&c| c != 0).expect("nonzero vector");
    m.degrees[i]
}

/// Choose a minimal set of homogeneous generators of the submodule spanned
/// by `k` (which must be a submodule). A vector `ε_s·w` whose class in
/// `ε_s K / ε_s A_+ K` is new becomes a generator of type `s`.
fn minimal_generators(
    a: &BlockAlgebra,
    m: &FreeModule,
    k: &Graded,
) -> Vec<(ProjectiveSummand, Vec<u32>)> {
    let fld = a.field();
    let positive: Vec<usize> = (0..a.dim()).filter(|&x| a.degree(x) > 0).collect();
    let mut radical: Graded = BTreeMap::new();
    for vs in k.values() {
        for v in vs {
            for &x in &positive {
                let w = m.act(a, x, v);
                if w.iter().any(|&c| c != 0) {
                    radical.entry(degree_of(m, &w)).or_default().push(w);
                }
            }
        }
    }
    let mut out = Vec::new();
    for (&d, vs) in k {
        for s in 0..a.basic().vertices() {
            let eps = a.primitive_idempotent(s);
            let mut span: Vec<Vec<u32>> = radical
                .get(&d)
                .map(|r| r.iter().map(|w| m.act(a, eps, w)).collect())
                .unwrap_or_default();
            let mut rank = Matrix::from_columns(fld, m.basis.len(), &span).rank();
            for v in vs {
                let w = m.act(a, eps, v);
                span.push(w.clone());
                let r = Matrix::from_columns(fld, m.basis.len(), &span).rank();
                if r > rank {
                    rank = r;
                    out.push((
                        ProjectiveSummand {
                            vertex: s,
                            degree: d,
                        },
                        w,
                    ));
                } else {
                    span.pop();
                }
            }
        }
    }
    out
}

/// Kernel of the map `F -> M` sending generator `k` to `images[k]`.
fn kernel(a: &BlockAlgebra, f: &FreeModule, m: &FreeModule, images: &[Vec<u32>]) -> Graded {
    let fld = a.field();
    let mut by_degree: Graded = BTreeMap::new();
    let mut degrees: Vec<u32> = f.degrees.clone();
    degrees.sort_unstable();
    degrees.dedup();
    for d in degrees {
        let src = f.indices_of_degree(d);
        let tgt = m.indices_of_degree(d);
        let cols: Vec<Vec<u32>> = src
            .iter()
            .map(|&i| {
                let (k, x) = f.basis[i];
                let img = m.act(a, x, &images[k]);
                tgt.iter().map(|&j| img[j]).collect()
            })
            .collect();
        let ker = Matrix::from_columns(fld, tgt.len(), &cols).kernel_basis();
        for c in 0..ker.cols() {
            let mut v = vec![0; f.basis.len()];
            for (r, &i) in src.iter().enumerate() {
                v[i] = ker.get(r, c);
            }
            by_degree.entry(d).or_default().push(v);
        }
    }
    by_degree
}

/// Projective summands of `P_0, ..., P_hbound` in a minimal resolution of
/// the simple module at vertex `s`.
pub fn minimal_resolution(
    a: &BlockAlgebra,
    s: usize,
    hbound: usize,
) -> Vec<Vec<ProjectiveSummand>> {
    let mut terms = vec![vec![ProjectiveSummand {
        vertex: s,
        degree: 0,
    }]];
    let mut current = FreeModule::new(a, terms[0].clone());
    // the radical of A ε_s is its positive part, since A_0 is semisimple
    let mut syzygy: Graded = BTreeMap::new();
    for (i, &d) in current.degrees.iter().enumerate() {
        if d > 0 {
            let mut v = vec![0; current.basis.len()];
            v[i] = 1;
            syzygy.entry(d).or_default().push(v);
        }
    }
    for _ in 1..=hbound {
        let gens = minimal_generators(a, &current, &syzygy);
        if gens.is_empty() {
            break;
        }
        let summands: Vec<ProjectiveSummand> = gens.iter().map(|(g, _)| *g).collect();
        let images: Vec<Vec<u32>> = gens.into_iter().map(|(_, v)| v).collect();
        let next = FreeModule::new(a, summands.clone());
        syzygy = kernel(a, &next, &current, &images);
        terms.push(summands);
        current = next;
    }
    terms
}

/// Linearity of the minimal resolutions of all simple modules.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KoszulityReport {
    pub hbound: usize,
    /// Per vertex, the number of summands of each `P_i`.
    pub betti: Vec<Vec<usize>>,
    pub linear: bool,
    /// `(vertex, i, degree)` of the first summand of `P_i` off degree `i`.
    pub witness: Option<(usize, usize, u32)>,
}

pub fn koszulity_probe(a: &BlockAlgebra, hbound: usize) -> KoszulityReport {
    let mut betti = Vec::new();
    let mut witness = None;
    for s in 0..a.basic().vertices() {
        let terms = minimal_resolution(a, s, hbound);
        for (i, t) in terms.iter().enumerate() {
            if let Some(g) = t.iter().find(|g| g.degree as usize != i) {
                witness.get_or_insert((s, i, g.degree));
            }
        }
        betti.push(terms.iter().map(Vec::len).collect());
    }
    KoszulityReport {
        hbound,
        betti,
        linear: witness.is_none(),
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::block::{build_regular_block, build_singular_block};

    #[test]
    fn regular_block_is_linear() {
        let a = build_regular_block(3, 0).unwrap();
        let r = koszulity_probe(&a, 4);
        assert!(r.linear, "{r:?}");
        assert_eq!(r.betti[0].len(), 5);
    }

    #[test]
    fn singular_block_has_trivial_resolutions() {
        let a = build_singular_block(3).unwrap();
        let r = koszulity_probe(&a, 4);
        assert!(r.linear);
        assert_eq!(r.betti, vec![vec![1]]);
    }
}
