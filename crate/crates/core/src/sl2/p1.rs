//! Line bundles on the projective line and Ext between twisted structure
//! sheaves of the zero section in its cotangent bundle.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::linalg::{Fp, Matrix};

/// `(h^0, h^1)` of `O(d)` from the Čech complex of the cover
/// `U_0 = {X_0 ≠ 0}`, `U_1 = {X_1 ≠ 0}`.
///
/// Sections are spanned by monomials `X_0^a X_1^(d-a)`: `a ≤ d` on `U_0`,
/// `a ≥ 0` on `U_1`, any `a` on the overlap. The differential preserves `a`,
/// and outside `min(0,d) ≤ a ≤ max(0,d)` exactly one chart covers the overlap
/// term, so the exponent range below loses nothing.
pub fn cohomology_p1(d: i32) -> (usize, usize) {
    // the differential has entries ±1, so any field gives the same ranks
    let fld = Fp::new(3).expect("3 is prime");
    let lo = d.min(0) - 2;
    let hi = d.max(0) + 2;
    let overlap: Vec<i32> = (lo..=hi).collect();
    let c0: Vec<(usize, i32)> = overlap
        .iter()
        .filter(|&&a| a <= d)
        .map(|&a| (0, a))
        .chain(overlap.iter().filter(|&&a| a >= 0).map(|&a| (1, a)))
        .collect();
    // (s_0, s_1) ↦ s_1|_{U01} - s_0|_{U01}
    let mut delta = Matrix::zeros(fld, overlap.len(), c0.len());
    for (col, &(chart, a)) in c0.iter().enumerate() {
        let row = (a - lo) as usize;
        delta.set(row, col, if chart == 1 { 1 } else { fld.neg(1) });
    }
    let r = delta.rank();
    (c0.len() - r, overlap.len() - r)
}

/// `h^0 = max(d+1, 0)`, `h^1 = max(-d-1, 0)`.
pub fn cohomology_p1_closed(d: i32) -> (usize, usize) {
    ((d + 1).max(0) as usize, (-d - 1).max(0) as usize)
}

/// `Ext^*(O(a), O(b))` on the zero section `P^1` of the cotangent bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtTable {
    pub a: i32,
    pub b: i32,
    /// Cohomological degree to dimension; zero entries are omitted.
    pub dims: BTreeMap<i32, usize>,
}

impl ExtTable {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }
}

/// Resolve `O_{P^1}(a)` by `O(a+2) -> O(a)` on the cotangent bundle and apply
/// `Hom(-, O_{P^1}(b))`. The resulting map `O(b-a) -> O(b-a-2)` is multiplication
/// by the fibre coordinate, which vanishes on the zero section, so
/// `Ext^i = H^i(O(b-a)) ⊕ H^{i-1}(O(b-a-2))`.
pub fn ext_zero_sections(a: i32, b: i32) -> ExtTable {
    let (h0, h1) = cohomology_p1(b - a);
    let (g0, g1) = cohomology_p1(b - a - 2);
    let dims = [(0, h0), (1, h1 + g0), (2, g1)]
        .into_iter()
        .filter(|&(_, n)| n > 0)
        .collect();
    ExtTable { a, b, dims }
}
