//! Blocks of the restricted enveloping algebra of SL(2) in characteristic
//! `p > 2` with their Koszul grading, computed from line-bundle cohomology on
//! the projective line, together with the checks that the graded algebras are
//! Frobenius, carry the expected anti-automorphism and are Koszul.

mod block;
mod koszul;
mod p1;
mod quiver;

pub use block::{
    build_regular_block, build_singular_block, displayed_ext_tables, regular_hom_tables,
    BasicAlgebra, BasicElement, BlockAlgebra, BlockBasis, BlockKind, REGULAR_SIMPLES,
};
pub use koszul::{koszulity_probe, minimal_resolution, KoszulityReport, ProjectiveSummand};
pub use p1::{cohomology_p1, cohomology_p1_closed, ext_zero_sections, ExtTable};
pub use quiver::{bar_is_involution, QuiverAlgebra, ARROWS};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::Matrix;
use crate::suites::SCHEMA;

/// Trace pairing `⟨x, y⟩ = τ(xy)`, where `τ` sums the diagonal coefficients
/// of the degree-`topdeg` component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrobeniusReport {
    pub topdeg: u32,
    pub dim: usize,
    pub rank: usize,
    pub nondegenerate: bool,
    pub symmetric: bool,
    pub graded: bool,
}

impl FrobeniusReport {
    pub fn pass(&self) -> bool {
        self.nondegenerate && self.symmetric && self.graded
    }
}

fn trace_weight(a: &BlockAlgebra, x: usize, topdeg: u32) -> u32 {
    let b = a.basis()[x];
    let e = a.element(x);
    u32::from(b.r == b.c && e.row == e.col && e.degree == topdeg)
}

pub fn gram_matrix(a: &BlockAlgebra, topdeg: u32) -> Matrix {
    let n = a.dim();
    let mut g = Matrix::zeros(a.field(), n, n);
    for x in 0..n {
        for y in 0..n {
            if let Some(z) = a.mul(x, y) {
                g.set(x, y, trace_weight(a, z, topdeg));
            }
        }
    }
    g
}

pub fn frobenius_form(a: &BlockAlgebra, topdeg: u32) -> FrobeniusReport {
    let g = gram_matrix(a, topdeg);
    let n = a.dim();
    let rank = g.rank();
    let pairs = || (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
    FrobeniusReport {
        topdeg,
        dim: n,
        rank,
        nondegenerate: rank == n,
        symmetric: pairs().all(|(x, y)| g.get(x, y) == g.get(y, x)),
        graded: pairs().all(|(x, y)| g.get(x, y) == 0 || a.degree(x) + a.degree(y) == topdeg),
    }
}

/// `Φ(E_rc ⊗ b) = E_cr ⊗ b̄` on the block, and the same assignment on the
/// quiver relations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AntiAutomorphismReport {
    pub reverses_products: bool,
    pub involution: bool,
    pub preserves_degree: bool,
    /// Only for regular blocks.
    pub relations_preserved: Option<bool>,
    /// First basis pair `(x, y)` with `Φ(xy) ≠ Φ(y)Φ(x)`.
    pub witness: Option<(usize, usize)>,
}

impl AntiAutomorphismReport {
    pub fn pass(&self) -> bool {
        self.reverses_products
            && self.involution
            && self.preserves_degree
            && self.relations_preserved != Some(false)
    }
}

pub fn anti_automorphism(a: &BlockAlgebra, x: usize) -> usize {
    let b = a.basis()[x];
    a.index_of(BlockBasis {
        elem: a.basic().bar(b.elem),
        r: b.c,
        c: b.r,
    })
    .expect("Φ maps the basis to itself")
}

pub fn anti_automorphism_check(a: &BlockAlgebra) -> AntiAutomorphismReport {
    let n = a.dim();
    let phi: Vec<usize> = (0..n).map(|x| anti_automorphism(a, x)).collect();
    let witness = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| a.mul(x, y).map(|z| phi[z]) != a.mul(phi[y], phi[x]));
    let relations_preserved = match a.kind() {
        BlockKind::Regular { .. } => Some(
            QuiverAlgebra::new(a.field(), 2)
                .anti_automorphism_witness()
                .is_none()
                && bar_is_involution(),
        ),
        BlockKind::Singular => None,
    };
    AntiAutomorphismReport {
        reverses_products: witness.is_none(),
        involution: (0..n).all(|x| phi[phi[x]] == x),
        preserves_degree: (0..n).all(|x| a.degree(phi[x]) == a.degree(x)),
        relations_preserved,
        witness,
    }
}

/// Coefficients of `P(t) = Σ dim A_d t^d` and whether
/// `P(t^{-1}) t^{2N} = P(t)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoincareReport {
    pub n: u32,
    pub coefficients: Vec<usize>,
    pub palindromic: bool,
}

pub fn poincare_symmetry(a: &BlockAlgebra, n: u32) -> PoincareReport {
    let c = a.degree_dims();
    let top = 2 * n as usize;
    let at = |d: usize| c.get(d).copied().unwrap_or(0);
    let palindromic = c.len() <= top + 1 && (0..=top).all(|d| at(d) == at(top - d));
    PoincareReport {
        n,
        coefficients: c,
        palindromic,
    }
}

/// Graded Cartan data of the block against the quiver algebra inflated by
/// the multiplicities.
pub fn cartan_matches_quiver(a: &BlockAlgebra, q: &QuiverAlgebra) -> bool {
    let m = a.multiplicities();
    let inflated: std::collections::BTreeMap<_, _> = q
        .cartan()
        .into_iter()
        .map(|((s, t, d), n)| ((s, t, d), n * m[s] * m[t]))
        .collect();
    a.cartan() == inflated
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verdict {
    fn new(name: &str, pass: bool, detail: impl Into<Option<String>>) -> Self {
        Verdict {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// Everything known about one block, for the CLI.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sl2Report {
    pub schema: u32,
    pub p: u32,
    pub block: BlockKind,
    pub multiplicities: Vec<usize>,
    /// Dimensions of the simple modules.
    pub simple_dims: Vec<usize>,
    pub dimension: usize,
    pub degree_dims: Vec<usize>,
    pub poincare: PoincareReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ext_tables: Vec<ExtTable>,
    pub frobenius: FrobeniusReport,
    pub anti_automorphism: AntiAutomorphismReport,
    pub koszulity: KoszulityReport,
    pub checks: Vec<Verdict>,
    pub pass: bool,
}

/// Build the block for `(p, λ)` (or the singular block when `lambda` is
/// `None`) and run every check on it.
pub fn sl2_report(p: u32, lambda: Option<u32>, hbound: usize) -> Result<Sl2Report> {
    let a = match lambda {
        Some(l) => build_regular_block(p, l)?,
        None => build_singular_block(p)?,
    };
    let pp = (p as usize).pow(2);
    let topdeg = match a.kind() {
        BlockKind::Regular { .. } => 2,
        BlockKind::Singular => 0,
    };
    let degree_dims = a.degree_dims();
    let mut checks = vec![
        Verdict::new(
            "associative",
            a.associativity_witness().is_none(),
            a.associativity_witness()
                .map(|w| format!("basis triple {w:?}")),
        ),
        Verdict::new("unital", a.unit_holds(), None),
        Verdict::new("graded multiplication", a.grading_holds(), None),
    ];
    let mut ext_tables = Vec::new();
    match a.kind() {
        BlockKind::Regular { lambda } => {
            let (m1, m2) = ((lambda + 1) as usize, (p - 1 - lambda) as usize);
            let outer = m1 * m1 + m2 * m2;
            let want = vec![outer, 4 * m1 * m2, outer];
            checks.push(Verdict::new(
                "dimension 2p^2",
                a.dim() == 2 * pp,
                format!("{} vs {}", a.dim(), 2 * pp),
            ));
            checks.push(Verdict::new(
                "degree dimensions",
                degree_dims == want,
                format!("{degree_dims:?} vs {want:?}"),
            ));
            ext_tables = displayed_ext_tables().to_vec();
            let shapes: Vec<Vec<(i32, usize)>> = ext_tables
                .iter()
                .map(|t| t.dims.iter().map(|(&i, &n)| (i, n)).collect())
                .collect();
            checks.push(Verdict::new(
                "ext tables",
                shapes == [vec![(0, 1), (2, 1)], vec![(0, 2)], vec![(2, 2)]],
                format!("{shapes:?}"),
            ));
            let cech = (-8..=8).all(|d| cohomology_p1(d) == cohomology_p1_closed(d));
            checks.push(Verdict::new(
                "cech cohomology matches closed form",
                cech,
                None,
            ));
            let weighted: usize = regular_hom_tables()
                .iter()
                .map(|(&(s, t), dims)| {
                    a.multiplicities()[s] * a.multiplicities()[t] * dims.values().sum::<usize>()
                })
                .sum();
            checks.push(Verdict::new(
                "weighted ext total",
                weighted == 2 * pp,
                format!("{weighted}"),
            ));
            let q = QuiverAlgebra::new(a.field(), 4);
            let qd = q.degree_dims();
            checks.push(Verdict::new(
                "quiver degree dimensions",
                qd == [2, 4, 2, 0, 0],
                format!("{qd:?}"),
            ));
            checks.push(Verdict::new(
                "graded cartan matches quiver",
                cartan_matches_quiver(&a, &q),
                None,
            ));
        }
        BlockKind::Singular => {
            checks.push(Verdict::new(
                "dimension p^2",
                a.dim() == pp,
                format!("{} vs {pp}", a.dim()),
            ));
            checks.push(Verdict::new(
                "degree 0 only",
                degree_dims == [pp],
                format!("{degree_dims:?}"),
            ));
            checks.push(Verdict::new(
                "matrix algebra",
                is_matrix_algebra(&a, p as usize),
                None,
            ));
        }
    }
    let frobenius = frobenius_form(&a, topdeg);
    checks.push(Verdict::new(
        "frobenius form",
        frobenius.pass(),
        format!("rank {} of {}", frobenius.rank, frobenius.dim),
    ));
    let anti_automorphism = anti_automorphism_check(&a);
    checks.push(Verdict::new(
        "anti-automorphism",
        anti_automorphism.pass(),
        anti_automorphism
            .witness
            .map(|w| format!("basis pair {w:?}")),
    ));
    let poincare = poincare_symmetry(&a, topdeg / 2);
    checks.push(Verdict::new(
        "poincare palindromic",
        poincare.palindromic,
        None,
    ));
    let koszulity = koszulity_probe(&a, hbound);
    checks.push(Verdict::new(
        "koszul",
        koszulity.linear,
        koszulity
            .witness
            .map(|(s, i, d)| format!("vertex {s}: P_{i} has a summand in degree {d}")),
    ));
    let pass = checks.iter().all(|c| c.pass);
    Ok(Sl2Report {
        schema: SCHEMA,
        p,
        block: a.kind(),
        multiplicities: a.multiplicities().to_vec(),
        simple_dims: a.multiplicities().to_vec(),
        dimension: a.dim(),
        degree_dims,
        poincare,
        ext_tables,
        frobenius,
        anti_automorphism,
        koszulity,
        checks,
        pass,
    })
}

/// Products agree with matrix units: `E_ij E_kl = δ_jk E_il`.
fn is_matrix_algebra(a: &BlockAlgebra, n: usize) -> bool {
    let idx = |r, c| a.index_of(BlockBasis { elem: 0, r, c });
    a.dim() == n * n
        && (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    (0..n).all(|l| {
                        let want = if j == k { idx(i, l) } else { None };
                        a.mul(idx(i, j).unwrap(), idx(k, l).unwrap()) == want
                    })
                })
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_on_small_blocks() {
        let r = frobenius_form(&build_regular_block(3, 0).unwrap(), 2);
        assert_eq!(r.rank, 18);
        assert!(r.pass());
        let s = frobenius_form(&build_singular_block(3).unwrap(), 0);
        assert_eq!(s.rank, 9);
        assert!(s.pass());
    }

    #[test]
    fn wrong_top_degree_is_degenerate() {
        let r = frobenius_form(&build_regular_block(3, 0).unwrap(), 1);
        assert!(!r.nondegenerate);
    }

    #[test]
    fn poincare_examples() {
        let r = poincare_symmetry(&build_regular_block(3, 0).unwrap(), 1);
        assert_eq!(r.coefficients, vec![5, 8, 5]);
        assert!(r.palindromic);
        assert!(!poincare_symmetry(&build_regular_block(3, 0).unwrap(), 0).palindromic);
    }

    #[test]
    fn full_reports_pass() {
        assert!(sl2_report(3, Some(0), 4).unwrap().pass);
        let s = sl2_report(5, None, 4).unwrap();
        assert!(s.pass);
        assert_eq!((s.dimension, s.degree_dims.clone()), (25, vec![25]));
    }
}
