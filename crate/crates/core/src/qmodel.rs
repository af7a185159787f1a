//! The big Koszul model `Q = Sym(E/F) ⊗ Λ(E)`, its comparison with `T`, the
//! pushforward to `P = Sym(E/F)` and the duality `D_Q`.
//!
//! Exterior variable `k` of `Q` is the `k`-th basis vector of `E`; the first
//! `f` of them span `F` and are cycles, the others map to the polynomial
//! variables. So `T = Λ(F)` sits inside `Q` on the first `f` exterior variables.

use crate::algebra::{Algebra, AlgebraKind, Element, Monomial};
use crate::bigraded::{BigradedDims, Window};
use crate::complex::{DgObject, SliceChainMap, SliceComplex, SliceMap};
use crate::error::{Error, Result};
use crate::homdual::{dual_semifree, DualityReport};
use crate::linalg::Fp;
use crate::module::{slice_map_from, Chain, Row, SemifreeDgModule};

fn require(m: &SemifreeDgModule, kind: AlgebraKind) -> Result<()> {
    if m.algebra().kind() != kind {
        return Err(Error::Input(format!(
            "expected a module over {kind}, got one over {}",
            m.algebra().kind()
        )));
    }
    Ok(())
}

fn to_q(q: &Algebra, mu: &Monomial) -> Monomial {
    Monomial {
        exps: vec![0; q.n_poly()],
        mask: mu.mask,
    }
}

/// `Q ⊗_T N`: same generators, `θ_k ↦ η_k`.
pub fn extend_to_q(n: &SemifreeDgModule) -> Result<SemifreeDgModule> {
    require(n, AlgebraKind::T)?;
    let spec = n.spec();
    let q = Algebra::new(AlgebraKind::Q, spec.e, spec.f, spec.p)?;
    let diff = n
        .diff_rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|(&l, e)| {
                    let terms = e.terms.iter().map(|(m, c)| (to_q(&q, m), *c)).collect();
                    (l, Element { terms })
                })
                .collect()
        })
        .collect();
    SemifreeDgModule::new(q, n.gens().to_vec(), diff)
}

/// The comparison `N -> Q ⊗_T N`, `θ^β g ↦ η^β g`, as a map of underlying complexes.
pub struct QComparison {
    pub source: SemifreeDgModule,
    pub target: SemifreeDgModule,
}

impl QComparison {
    pub fn new(n: &SemifreeDgModule) -> Result<Self> {
        Ok(QComparison {
            source: n.clone(),
            target: extend_to_q(n)?,
        })
    }
}

impl SliceChainMap for QComparison {
    fn field(&self) -> Fp {
        self.source.algebra().field()
    }

    fn slice_triple(&self, j: i32) -> (SliceComplex, SliceComplex, SliceMap) {
        let q = self.target.algebra();
        let maps = slice_map_from(
            &self.source.slice_basis(j),
            &self.target.slice_basis(j),
            self.field(),
            |k, mu| Chain::from([((k, to_q(q, mu)), 1)]),
        );
        (
            self.source.slice(j),
            self.target.slice(j),
            SliceMap { maps },
        )
    }
}

/// `Rp_*`: the Q-module as a semifree module over `P = Sym(E/F)`.
/// Generator `k·2^e + γ` is `η^γ g_k`.
pub fn pushforward_p(m: &SemifreeDgModule) -> Result<SemifreeDgModule> {
    require(m, AlgebraKind::Q)?;
    let q = m.algebra();
    let spec = q.spec();
    let p = Algebra::new(AlgebraKind::P, spec.e, spec.f, spec.p)?;
    let fld = p.field();
    let width = 1usize << spec.e;
    let mut gens = Vec::with_capacity(m.rank() * width);
    for g in m.gens() {
        for mask in 0..width as u32 {
            gens.push(
                *g + q.degree(&Monomial {
                    exps: vec![0; q.n_poly()],
                    mask,
                }),
            );
        }
    }
    let mut diff = vec![Row::new(); gens.len()];
    for k in 0..m.rank() {
        for mask in 0..width as u32 {
            let eta = Monomial {
                exps: vec![0; q.n_poly()],
                mask,
            };
            let row = &mut diff[k * width + mask as usize];
            for ((l, mu), c) in m.d_basis(k, &eta) {
                let poly = Monomial {
                    exps: mu.exps.clone(),
                    mask: 0,
                };
                row.entry(l * width + mu.mask as usize)
                    .or_insert_with(Element::zero)
                    .add_term(fld, poly, c);
            }
        }
    }
    SemifreeDgModule::new(p, gens, diff)
}

/// `D_Q`.
pub fn dualize_q(m: &SemifreeDgModule) -> Result<SemifreeDgModule> {
    require(m, AlgebraKind::Q)?;
    Ok(dual_semifree(m))
}

/// `Hom_P(-, P)` on a semifree P-module.
pub fn dualize_p(m: &SemifreeDgModule) -> Result<SemifreeDgModule> {
    require(m, AlgebraKind::P)?;
    Ok(dual_semifree(m))
}

fn fbot_window(m: &SemifreeDgModule) -> Window {
    let e = m.spec().e as i32;
    let (lo, hi) = m.internal_range().unwrap_or((0, 0));
    Window::internal(-hi - 2, -lo + 2 * e + 4)
}

/// `Rp_*(D_Q M)` against `Hom_P(Rp_* M, P)[m]<2m>`, `m = dim E`.
pub fn check_fbot(m: &SemifreeDgModule) -> Result<DualityReport> {
    require(m, AlgebraKind::Q)?;
    let e = m.spec().e as i32;
    let w = fbot_window(m);
    let lhs = pushforward_p(&dualize_q(m)?)?.cohomology(&w);
    let rhs = dualize_p(&pushforward_p(m)?)?
        .cohomology(&w.shift(-e, -2 * e))
        .shift(e, 2 * e);
    Ok(DualityReport::new(
        "Rp(D_Q M) vs D_P(Rp M)[m]<2m>",
        w,
        lhs,
        rhs,
    ))
}

/// Cohomology of `Q` over itself, for the comparison with `T`.
pub fn q_cohomology(e: usize, f: usize, p: u32, w: &Window) -> Result<BigradedDims> {
    let q = Algebra::new(AlgebraKind::Q, e, f, p)?;
    Ok(SemifreeDgModule::rank_one(q).cohomology(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: usize, f: usize) -> Algebra {
        Algebra::new(AlgebraKind::T, e, f, 5).unwrap()
    }

    #[test]
    fn q_is_quasi_isomorphic_to_t() {
        let w = Window::internal(-4, 14);
        for e in 0..=3 {
            for f in 0..=e {
                let tq = SemifreeDgModule::rank_one(t(e, f)).cohomology(&w);
                assert_eq!(q_cohomology(e, f, 5, &w).unwrap(), tq, "e={e} f={f}");
            }
        }
    }

    #[test]
    fn extension_examples() {
        let w = Window::internal(-4, 14);
        // e = f: nothing changes
        let n = SemifreeDgModule::rank_one(t(2, 2));
        let q = extend_to_q(&n).unwrap();
        assert_eq!(q.cohomology(&w), n.cohomology(&w));
        // f = 0: Q resolves k
        let k = extend_to_q(&SemifreeDgModule::rank_one(t(2, 0))).unwrap();
        assert_eq!(k.cohomology(&w), BigradedDims::from_entries([((0, 0), 1)]));
        // e = 2, f = 1
        let q = extend_to_q(&SemifreeDgModule::rank_one(t(2, 1))).unwrap();
        assert_eq!(
            q.cohomology(&w),
            BigradedDims::from_entries([((0, 0), 1), ((-1, 2), 1)])
        );
        let cmp = QComparison::new(&SemifreeDgModule::rank_one(t(2, 1))).unwrap();
        cmp.check_chain_on(&w).unwrap();
        assert!(cmp.is_quasi_iso(&w));
    }

    #[test]
    fn pushforward_of_q_with_one_variable() {
        let q = Algebra::new(AlgebraKind::Q, 1, 0, 5).unwrap();
        let m = SemifreeDgModule::rank_one(q);
        let pm = pushforward_p(&m).unwrap();
        assert_eq!(
            pm.cohomology(&Window::internal(-4, 10)),
            BigradedDims::from_entries([((0, 0), 1)])
        );
        let r = check_fbot(&m).unwrap();
        assert!(r.is_equal(), "{r:?}");
    }

    #[test]
    fn fbot_on_free_modules() {
        for e in 0..=2 {
            for f in 0..=e {
                let q = Algebra::new(AlgebraKind::Q, e, f, 3).unwrap();
                let m = SemifreeDgModule::rank_one(q);
                for (a, b) in [(0, 0), (1, 2), (-1, 0)] {
                    let r = check_fbot(&m.shift(a, b)).unwrap();
                    assert!(r.is_equal(), "e={e} f={f} shift ({a},{b}): {r:?}");
                }
            }
        }
    }
}
