//! Finite cochain complexes of GF(p)-vector spaces.
//!
//! Every differential in the crate has bidegree (1,0), so a bigraded dg-module
//! splits as a direct sum over internal degrees `j` of ordinary complexes.
//! For all the algebras in scope each summand is finite-dimensional; it is
//! called a *slice*. Cohomology, cones and quasi-isomorphism tests are all
//! computed slice by slice, which makes them exact on any window.

use std::collections::BTreeMap;

use crate::bigraded::{Bidegree, BigradedDims, Window};
use crate::error::{Error, Result};
use crate::linalg::{Fp, Matrix};

/// The internal-degree-`j` summand of a dg-module.
#[derive(Clone, Debug)]
pub struct SliceComplex {
    pub field: Fp,
    pub j: i32,
    /// cohomological degree -> dimension
    pub dims: BTreeMap<i32, usize>,
    /// `diffs[i]` is the `dims[i+1] x dims[i]` matrix of `d: C^i -> C^(i+1)`.
    pub diffs: BTreeMap<i32, Matrix>,
}

impl SliceComplex {
    pub fn new(field: Fp, j: i32, dims: BTreeMap<i32, usize>) -> Self {
        let dims: BTreeMap<i32, usize> = dims.into_iter().filter(|(_, n)| *n > 0).collect();
        SliceComplex {
            field,
            j,
            dims,
            diffs: BTreeMap::new(),
        }
    }

    pub fn dim(&self, i: i32) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    /// `d^i`, materialising a zero matrix when absent.
    pub fn diff(&self, i: i32) -> Matrix {
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(i + 1), self.dim(i)))
    }

    fn rank_of(&self, i: i32) -> usize {
        self.diffs.get(&i).map_or(0, Matrix::rank)
    }

    /// `d^(i+1) d^i = 0` for every `i`; reports the first failure.
    pub fn check_square_zero(&self) -> Result<()> {
        for (&i, d) in &self.diffs {
            if let Some(next) = self.diffs.get(&(i + 1)) {
                if !next.mul(d)?.is_zero() {
                    return Err(Error::Invalid(format!(
                        "d^2 != 0 at bidegree {}",
                        Bidegree::new(i, self.j)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `dim H^i` for every `i` with a nonzero group.
    pub fn cohomology(&self) -> BTreeMap<i32, usize> {
        let ranks: BTreeMap<i32, usize> =
            self.diffs.keys().map(|&i| (i, self.rank_of(i))).collect();
        self.dims
            .iter()
            .filter_map(|(&i, &n)| {
                let out = ranks.get(&i).copied().unwrap_or(0);
                let inc = ranks.get(&(i - 1)).copied().unwrap_or(0);
                let h = n - out - inc;
                (h > 0).then_some((i, h))
            })
            .collect()
    }

    /// Basis of the cocycles in degree `i`, as columns.
    pub fn cocycles(&self, i: i32) -> Matrix {
        self.diff(i).kernel_basis()
    }
}

/// A degree-(0,0) linear map between two slices with the same `j`.
#[derive(Clone, Debug)]
pub struct SliceMap {
    /// `maps[i]` is `target.dim(i) x source.dim(i)`.
    pub maps: BTreeMap<i32, Matrix>,
}

impl SliceMap {
    pub fn component(&self, source: &SliceComplex, target: &SliceComplex, i: i32) -> Matrix {
        self.maps
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(source.field, target.dim(i), source.dim(i)))
    }
}

/// Checks `d_target φ = φ d_source` on one slice.
pub fn check_slice_chain_map(
    source: &SliceComplex,
    target: &SliceComplex,
    map: &SliceMap,
) -> Result<()> {
    let degrees: std::collections::BTreeSet<i32> = source
        .dims
        .keys()
        .chain(target.dims.keys())
        .copied()
        .collect();
    for &i in &degrees {
        let lhs = target.diff(i).mul(&map.component(source, target, i))?;
        let rhs = map.component(source, target, i + 1).mul(&source.diff(i))?;
        if lhs != rhs {
            return Err(Error::NotChainMap(format!(
                "fails at bidegree {}",
                Bidegree::new(i, source.j)
            )));
        }
    }
    Ok(())
}

/// Mapping cone on a slice: `C^i = target^i ⊕ source^(i+1)`,
/// `d(t, s) = (d t + φ s, -d s)`.
pub fn slice_cone(source: &SliceComplex, target: &SliceComplex, map: &SliceMap) -> SliceComplex {
    let f = source.field;
    let mut dims = BTreeMap::new();
    for (&i, &n) in &target.dims {
        *dims.entry(i).or_insert(0) += n;
    }
    for (&i, &n) in &source.dims {
        *dims.entry(i - 1).or_insert(0) += n;
    }
    let mut cone = SliceComplex::new(f, source.j, dims);
    let degrees: Vec<i32> = cone.dims.keys().copied().collect();
    for &i in &degrees {
        if cone.dim(i + 1) == 0 {
            continue;
        }
        let (t0, s0) = (target.dim(i), source.dim(i + 1));
        let (t1, s1) = (target.dim(i + 1), source.dim(i + 2));
        let mut d = Matrix::zeros(f, t1 + s1, t0 + s0);
        let dt = target.diff(i);
        let phi = map.component(source, target, i + 1);
        let ds = source.diff(i + 1);
        for r in 0..t1 {
            for c in 0..t0 {
                d.set(r, c, dt.get(r, c));
            }
            for c in 0..s0 {
                d.set(r, t0 + c, phi.get(r, c));
            }
        }
        for r in 0..s1 {
            for c in 0..s0 {
                d.set(t1 + r, t0 + c, f.neg(ds.get(r, c)));
            }
        }
        if !d.is_zero() {
            cone.diffs.insert(i, d);
        }
    }
    cone
}

/// Anything that can produce its internal-degree slices.
pub trait DgObject {
    fn field(&self) -> Fp;
    fn slice(&self, j: i32) -> SliceComplex;

    /// Bigraded cohomology dimensions inside `window`.
    fn cohomology(&self, window: &Window) -> BigradedDims {
        let mut t = BigradedDims::new();
        for j in window.internal_degrees() {
            for (i, h) in self.slice(j).cohomology() {
                let b = Bidegree::new(i, j);
                if window.contains(b) {
                    t.add(b, h);
                }
            }
        }
        t
    }

    /// Dimension table of the underlying bigraded space inside `window`.
    fn dims(&self, window: &Window) -> BigradedDims {
        let mut t = BigradedDims::new();
        for j in window.internal_degrees() {
            for (i, n) in self.slice(j).dims {
                let b = Bidegree::new(i, j);
                if window.contains(b) {
                    t.add(b, n);
                }
            }
        }
        t
    }
}

/// A degree-(0,0) map that can be restricted to each slice.
pub trait SliceChainMap {
    fn field(&self) -> Fp;
    /// `(source slice, target slice, map)` at internal degree `j`.
    fn slice_triple(&self, j: i32) -> (SliceComplex, SliceComplex, SliceMap);

    /// Chain-map condition on every slice of the window.
    fn check_chain_on(&self, window: &Window) -> Result<()> {
        for j in window.internal_degrees() {
            let (s, t, m) = self.slice_triple(j);
            check_slice_chain_map(&s, &t, &m)?;
        }
        Ok(())
    }

    /// Cohomology of the mapping cone inside `window`. Only meaningful when
    /// the map is a chain map there (see [`SliceChainMap::check_chain_on`]).
    fn cone_cohomology(&self, window: &Window) -> BigradedDims {
        let mut table = BigradedDims::new();
        for j in window.internal_degrees() {
            let (s, t, m) = self.slice_triple(j);
            for (i, h) in slice_cone(&s, &t, &m).cohomology() {
                let b = Bidegree::new(i, j);
                if window.contains(b) {
                    table.add(b, h);
                }
            }
        }
        table
    }

    /// True iff the map is a chain map on the window and its cone is acyclic there.
    fn is_quasi_iso(&self, window: &Window) -> bool {
        self.check_chain_on(window).is_ok() && self.cone_cohomology(window).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    /// k --1--> k in degrees 0, 1.
    fn interval(f: Fp) -> SliceComplex {
        let mut c = SliceComplex::new(f, 0, [(0, 1), (1, 1)].into_iter().collect());
        c.diffs.insert(0, Matrix::identity(f, 1));
        c
    }

    #[test]
    fn cohomology_of_acyclic_interval() {
        let c = interval(gf(5));
        c.check_square_zero().unwrap();
        assert!(c.cohomology().is_empty());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let f = gf(3);
        let c = SliceComplex::new(f, 0, [(0, 2), (3, 1)].into_iter().collect());
        let id = SliceMap {
            maps: [(0, Matrix::identity(f, 2)), (3, Matrix::identity(f, 1))]
                .into_iter()
                .collect(),
        };
        check_slice_chain_map(&c, &c, &id).unwrap();
        let cone = slice_cone(&c, &c, &id);
        cone.check_square_zero().unwrap();
        assert!(cone.cohomology().is_empty());
    }

    #[test]
    fn cone_of_zero_is_direct_sum() {
        let f = gf(3);
        let c = SliceComplex::new(f, 0, [(0, 2), (3, 1)].into_iter().collect());
        let zero = SliceMap {
            maps: BTreeMap::new(),
        };
        let h = slice_cone(&c, &c, &zero).cohomology();
        assert_eq!(h, [(-1, 2), (0, 2), (2, 1), (3, 1)].into_iter().collect());
    }
}
