//! Semifree resolutions of finite-dimensional modules over an exterior algebra.
//!
//! Generators are attached one internal degree at a time, from the bottom of
//! the module upwards. Exterior generators raise internal degree, so a slice
//! only sees generators at or below it and each slice can be finished before
//! moving on.

use std::collections::BTreeMap;

use crate::algebra::{Element, Monomial};
use crate::bigraded::Bidegree;
use crate::complex::{slice_cone, DgObject, SliceChainMap, SliceComplex, SliceMap};
use crate::error::Result;
use crate::findim::FinDimDgModule;
use crate::linalg::{Fp, Matrix};
use crate::module::{Row, SemifreeDgModule};

/// A semifree module `P` with a map `π: P -> M`, given on generators.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: SemifreeDgModule,
    pub target: FinDimDgModule,
    /// `images[k]` is `π(g_k)` as a vector in the basis of the target.
    pub images: Vec<Vec<u32>>,
    /// Internal degrees `<= top` are resolved exactly.
    pub top: i32,
}

impl Resolution {
    /// `π(μ g_k)`.
    fn apply(&self, k: usize, mu: &Monomial) -> Vec<u32> {
        let mut v = self.images[k].clone();
        // μ = θ_{a1} ... θ_{ar} with a1 < ... < ar; apply right to left
        let idx: Vec<usize> = (0..32).filter(|b| mu.mask >> b & 1 == 1).collect();
        for &a in idx.iter().rev() {
            v = self.target.action()[a].mul_vec(&v).expect("shapes agree");
        }
        v
    }
}

impl SliceChainMap for Resolution {
    fn field(&self) -> Fp {
        self.target.algebra().field()
    }

    fn slice_triple(&self, j: i32) -> (SliceComplex, SliceComplex, SliceMap) {
        let src = self.module.slice(j);
        let tgt = self.target.slice(j);
        let basis = self.module.slice_basis(j);
        let mut maps = BTreeMap::new();
        for (&i, elems) in &basis {
            let rows = self.target.indices_at(Bidegree::new(i, j));
            if rows.is_empty() {
                continue;
            }
            let mut m = Matrix::zeros(self.field(), rows.len(), elems.len());
            for (c, (k, mu)) in elems.iter().enumerate() {
                let v = self.apply(*k, mu);
                for (r, &rr) in rows.iter().enumerate() {
                    m.set(r, c, v[rr]);
                }
            }
            if !m.is_zero() {
                maps.insert(i, m);
            }
        }
        (src, tgt, SliceMap { maps })
    }
}

/// Resolve `m` through internal degree `max internal(m) + 2·depth`.
pub fn semifree_resolution(m: &FinDimDgModule, depth: u32) -> Result<Resolution> {
    let a = m.algebra().clone();
    let f = a.field();
    let Some((lo, hi)) = m.internal_range() else {
        return Ok(Resolution {
            module: SemifreeDgModule::free(a, Vec::new()),
            target: m.clone(),
            images: Vec::new(),
            top: i32::MAX,
        });
    };
    let top = hi + 2 * depth as i32;
    let mut res = Resolution {
        module: SemifreeDgModule::free(a.clone(), Vec::new()),
        target: m.clone(),
        images: Vec::new(),
        top,
    };
    for j in lo..=top {
        let (s, t, map) = res.slice_triple(j);
        let cone = slice_cone(&s, &t, &map);
        let classes = cohomology_representatives(&cone);
        if classes.is_empty() {
            continue;
        }
        let basis = res.module.slice_basis(j);
        let mut gens = res.module.gens().to_vec();
        let mut diff: Vec<Row> = res.module.diff_rows().to_vec();
        for (i, v) in classes {
            // v = (m-part of length t.dim(i), p-part of length s.dim(i+1))
            let tm = t.dim(i);
            let rows = m.indices_at(Bidegree::new(i, j));
            let mut image = vec![0u32; m.dim()];
            for (r, &rr) in rows.iter().enumerate() {
                image[rr] = v[r];
            }
            let mut row = Row::new();
            if let Some(elems) = basis.get(&(i + 1)) {
                for (c, (l, mu)) in elems.iter().enumerate() {
                    let coeff = f.neg(v[tm + c]);
                    if coeff != 0 {
                        row.entry(*l)
                            .or_insert_with(Element::zero)
                            .add_term(f, mu.clone(), coeff);
                    }
                }
            }
            gens.push(Bidegree::new(i, j));
            diff.push(row);
            res.images.push(image);
        }
        res.module = SemifreeDgModule::new(a.clone(), gens, diff)?;
    }
    Ok(res)
}

/// One cocycle per basis class of cohomology, as `(degree, vector)`.
fn cohomology_representatives(c: &SliceComplex) -> Vec<(i32, Vec<u32>)> {
    let mut out = Vec::new();
    for (&i, &n) in &c.dims {
        let z = c.cocycles(i);
        if z.cols() == 0 {
            continue;
        }
        // extend a basis of the boundaries by cocycles, keeping the new ones
        let b = c.diff(i - 1);
        let mut cols: Vec<Vec<u32>> = (0..b.cols()).map(|k| b.column(k)).collect();
        let mut rank = Matrix::from_columns(c.field, n, &cols).rank();
        for k in 0..z.cols() {
            let v = z.column(k);
            cols.push(v.clone());
            let r = Matrix::from_columns(c.field, n, &cols).rank();
            if r > rank {
                rank = r;
                out.push((i, v));
            } else {
                cols.pop();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, AlgebraKind};
    use crate::bigraded::Window;

    #[test]
    fn free_module_resolves_to_itself() {
        let t = Algebra::new(AlgebraKind::T, 2, 2, 5).unwrap();
        let free = SemifreeDgModule::rank_one(t);
        let m = FinDimDgModule::from_semifree(&free).unwrap();
        let r = semifree_resolution(&m, 3).unwrap();
        assert_eq!(r.module.gens(), &[Bidegree::ZERO]);
        assert!(r.is_quasi_iso(&Window::internal(-2, r.top)));
    }

    #[test]
    fn trivial_module_one_generator_per_step() {
        let t = Algebra::new(AlgebraKind::T, 1, 1, 5).unwrap();
        let k = FinDimDgModule::trivial(t, Bidegree::ZERO).unwrap();
        let r = semifree_resolution(&k, 3).unwrap();
        let want: Vec<Bidegree> = (0..=3).map(|s| Bidegree::new(-2 * s, 2 * s)).collect();
        assert_eq!(r.module.gens(), want.as_slice());
        let w = Window::internal(-2, r.top);
        r.check_chain_on(&w).unwrap();
        assert!(r.is_quasi_iso(&w));
    }
}
