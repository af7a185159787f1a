//! Homological dualities: `Hom_A(M, A)` on semifree presentations, the closed
//! k-linear formula for finite-dimensional T-modules, and the comparison of
//! both sides of the compatibility between `D_S`, `D_T` and `κ`.
//!
//! Sign conventions for `Hom_A(M, A)`: `φ(a·m) = (-1)^{|a||φ|} a·φ(m)` and
//! `(dφ)(m) = d(φ(m)) - (-1)^{|φ|} φ(dm)`. On the dual basis `g_k^∨` this gives
//!
//! ```text
//! d(g_k^∨) = Σ_l -(-1)^{p_k + p_k p_l} D[l][k] g_l^∨        (p = parity of g)
//! ```
//!
//! Over the even algebras with zero differential (`S`, `R`, `P`) the rescaled
//! but isomorphic form `d(g_k^∨) = -Σ_l D[l][k] g_l^∨` is used instead, which
//! makes double dualization the identity on presentations.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraKind, Element};
use crate::bigraded::{Bidegree, BigradedDims, Window};
use crate::complex::DgObject;
use crate::error::{Error, Result};
use crate::findim::FinDimDgModule;
use crate::linalg::Matrix;
use crate::lkd::functor_f;
use crate::module::{DgMap, Row, SemifreeDgModule};

/// Table-level verdict. Equality of derived objects is certified by equality
/// of bigraded cohomology tables on the window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub check: String,
    pub window: Window,
    pub lhs: BigradedDims,
    pub rhs: BigradedDims,
    /// `"equal"` or `"mismatch"`.
    pub verdict: String,
    pub first_mismatch: Option<Bidegree>,
}

impl DualityReport {
    pub fn new(check: &str, window: Window, lhs: BigradedDims, rhs: BigradedDims) -> Self {
        let lhs = lhs.restrict(&window);
        let rhs = rhs.restrict(&window);
        let first_mismatch = lhs.first_mismatch(&rhs);
        DualityReport {
            check: check.to_string(),
            window,
            verdict: if first_mismatch.is_none() {
                "equal"
            } else {
                "mismatch"
            }
            .into(),
            lhs,
            rhs,
            first_mismatch,
        }
    }

    pub fn is_equal(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// `Hom_A(M, A)` on the semifree presentation.
pub fn dual_semifree(m: &SemifreeDgModule) -> SemifreeDgModule {
    let a = m.algebra();
    let fld = a.field();
    let even = a.n_ext() == 0;
    let gens: Vec<Bidegree> = m.gens().iter().map(|g| -*g).collect();
    let mut diff = vec![Row::new(); m.rank()];
    for (l, row) in m.diff_rows().iter().enumerate() {
        for (&k, entry) in row {
            let sign = if even {
                -1
            } else {
                let (pk, pl) = (m.gens()[k].parity(), m.gens()[l].parity());
                -(if (pk + pk * pl) % 2 == 0 { 1 } else { -1 })
            };
            diff[k].insert(l, entry.scale(fld, fld.from_i64(sign)));
        }
    }
    SemifreeDgModule::new_unchecked(a.clone(), gens, diff).expect("shapes preserved")
}

fn require(m: &SemifreeDgModule, kind: AlgebraKind) -> Result<()> {
    if m.algebra().kind() != kind {
        return Err(Error::Input(format!(
            "expected a module over {kind}, got one over {}",
            m.algebra().kind()
        )));
    }
    Ok(())
}

/// `D_S`.
pub fn dualize_s(m: &SemifreeDgModule) -> Result<SemifreeDgModule> {
    require(m, AlgebraKind::S)?;
    Ok(dual_semifree(m))
}

/// `D_T` on a semifree presentation.
pub fn dualize_t_res(m: &SemifreeDgModule) -> Result<SemifreeDgModule> {
    require(m, AlgebraKind::T)?;
    Ok(dual_semifree(m))
}

/// Evaluation `M -> Hom(Hom(M, A), A)`, `g ↦ (-1)^{|g|} g^∨∨`.
pub fn biduality_map(m: &SemifreeDgModule) -> Result<DgMap> {
    let dd = dual_semifree(&dual_semifree(m));
    let a = m.algebra();
    let fld = a.field();
    let even = a.n_ext() == 0;
    let entries = m
        .gens()
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let s = if even { 1 } else { fld.sign(g.parity()) };
            [(k, Element::monomial(a.one(), s))].into_iter().collect()
        })
        .collect();
    DgMap::new(m.clone(), dd, entries)
}

/// `Hom_k(M, k) ⊗ L[n]<2n>` with `(t·φ)(m) = (-1)^{|t||φ|} φ(t·m)`.
pub fn dualize_t_formula(m: &FinDimDgModule) -> Result<FinDimDgModule> {
    let a = m.algebra();
    let fld = a.field();
    let n = a.spec().f as i32;
    let dim = m.dim();
    let degrees = m
        .degrees()
        .iter()
        .map(|b| (-*b).shifted(n, 2 * n))
        .collect();
    let sn = fld.sign(n as i64);
    // column b of the dual is b*; row b'' collects the coefficient of b''*
    let twisted = |src: &Matrix, extra: i64| {
        let mut out = Matrix::zeros(fld, dim, dim);
        for b in 0..dim {
            let s = fld.mul(sn, fld.sign(m.degrees()[b].parity() + extra));
            for b2 in 0..dim {
                let v = src.get(b, b2);
                if v != 0 {
                    out.set(b2, b, fld.mul(s, v));
                }
            }
        }
        out
    };
    let d = twisted(m.d(), 1);
    let action = m.action().iter().map(|t| twisted(t, 0)).collect();
    FinDimDgModule::new(a.clone(), degrees, d, action)
}

/// Window covering everything both sides of the T-oracle can see.
fn t_window(m: &SemifreeDgModule) -> Window {
    let n = m.spec().f as i32;
    let (lo, hi) = m.internal_range().unwrap_or((0, 0));
    Window::internal(-hi - 2 * n - 2, -lo + 2 * n + 2)
}

/// Both routes to `D_T(M)`: the semifree dual and the closed formula.
pub fn oracle_compare_t(m: &SemifreeDgModule) -> Result<DualityReport> {
    let w = t_window(m);
    let res = dualize_t_res(m)?;
    let formula = dualize_t_formula(&FinDimDgModule::from_semifree(m)?)?;
    Ok(DualityReport::new(
        "dualize_T_res vs dualize_T_formula",
        w,
        res.cohomology(&w),
        formula.cohomology(&w),
    ))
}

/// `D_T(κ M)` against `κ(D_S M)[n]<2n>`, on a window around the dual of `M`.
pub fn check_compat(m: &SemifreeDgModule) -> Result<DualityReport> {
    require(m, AlgebraKind::S)?;
    let n = m.spec().f as i32;
    let (lo, hi) = m.internal_range().unwrap_or((0, 0));
    let w = Window::internal(-hi - 2, -lo + 2 * n + 2);
    // D_T of the truncation agrees with D_T(F M) in internal degrees <= 2n - exact_from
    let left = functor_f(m, 2 * n - w.j1)?;
    let lhs = dualize_t_res(&left.module)?.cohomology(&w);
    // F of the truncation is exact from exact_from, then moved up by 2n
    let right = functor_f(&dualize_s(m)?, w.j0 - 2 * n)?;
    let rhs = right
        .module
        .cohomology(&Window::internal(w.j0 - 2 * n, w.j1 - 2 * n))
        .shift(n, 2 * n);
    Ok(DualityReport::new(
        "D_T(kappa M) vs kappa(D_S M)[n]<2n>",
        w,
        lhs,
        rhs,
    ))
}
