//! Linear Koszul duality over a point: `F(M) = T* ⊗ M` from S-modules to
//! T-modules, `G(N) = S ⊗ N` back, their unit and counit, and the regrading
//! `ξ` between `S` and `R`.
//!
//! `T*` is the free T-module on `ε = (θ_1 ⋯ θ_n)*` in bidegree `(n, -2n)`.
//! For a k-basis element `b` of `M`,
//!
//! ```text
//! d(ε ⊗ b) = (-1)^n ε ⊗ d b + Σ_i θ_i · (ε ⊗ x_i b)
//! d(1 ⊗ b) = 1 ⊗ d b − Σ_i x_i · (1 ⊗ θ_i b)
//! ```
//!
//! `F(M)` has one generator per k-basis element of `M`, so it is infinitely
//! generated. [`functor_f`] keeps the generators coming from internal degrees
//! `>= exact_from` and quotients out the rest; the generators dropped span a
//! dg-submodule living in internal degrees `< exact_from`, so the result
//! agrees with `F(M)` in every internal degree `>= exact_from`.

use std::collections::HashMap;

use crate::algebra::{wedge_sign, Algebra, AlgebraKind, Element, Monomial};
use crate::bigraded::{Bidegree, Window};
use crate::error::{Error, Result};
use crate::module::{DgMap, Row, SemifreeDgModule};

/// `F ⊂ E` with the split basis: the first `f` of the `e` basis vectors span `F`.
#[derive(Clone, Debug)]
pub struct KoszulContext {
    pub e: usize,
    pub f: usize,
    pub p: u32,
}

impl KoszulContext {
    pub fn new(e: usize, f: usize, p: u32) -> Result<Self> {
        Algebra::new(AlgebraKind::Q, e, f, p)?;
        Ok(KoszulContext { e, f, p })
    }

    /// Rank of `F`.
    pub fn n(&self) -> usize {
        self.f
    }

    /// Rank of `E`.
    pub fn m(&self) -> usize {
        self.e
    }

    pub fn algebra(&self, kind: AlgebraKind) -> Algebra {
        Algebra::new(kind, self.e, self.f, self.p).expect("validated in new")
    }
}

/// A truncated `F(M)` together with the basis element of `M` behind each generator.
#[derive(Clone, Debug)]
pub struct KoszulImage {
    pub module: SemifreeDgModule,
    pub basis: Vec<(usize, Monomial)>,
    pub exact_from: i32,
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

fn ext_mono(a: &Algebra, mask: u32) -> Monomial {
    Monomial {
        exps: vec![0; a.n_poly()],
        mask,
    }
}

/// `F(M)`, exact in internal degrees `>= exact_from`.
pub fn functor_f(m: &SemifreeDgModule, exact_from: i32) -> Result<KoszulImage> {
    require(m, AlgebraKind::S)?;
    let s = m.algebra();
    let spec = s.spec();
    let t = Algebra::new(AlgebraKind::T, spec.e, spec.f, spec.p)?;
    let fld = t.field();
    let n = spec.f;
    let eps = Bidegree::new(n as i32, -2 * n as i32);

    let mut basis = Vec::new();
    if let Some((_, hi)) = m.internal_range() {
        for j in exact_from..=hi {
            for (_, elems) in m.slice_basis(j) {
                basis.extend(elems);
            }
        }
    }
    let index: HashMap<(usize, Monomial), usize> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, b)| (b, i))
        .collect();
    let gens = basis
        .iter()
        .map(|(k, mu)| eps + m.gens()[*k] + s.degree(mu))
        .collect();
    let sign_n = fld.sign(n as i64);
    let mut diff = vec![Row::new(); basis.len()];
    for (g, (k, mu)) in basis.iter().enumerate() {
        let row = &mut diff[g];
        for (key, c) in m.d_basis(*k, mu) {
            let l = index[&key];
            row.entry(l)
                .or_insert_with(Element::zero)
                .add_term(fld, t.one(), fld.mul(sign_n, c));
        }
        for i in 0..n {
            let (xmu, _) = s
                .mul_monomials(mu, &s.poly_var(i))
                .expect("polynomial product");
            if let Some(&l) = index.get(&(*k, xmu)) {
                row.entry(l)
                    .or_insert_with(Element::zero)
                    .add_term(fld, t.ext_var(i), 1);
            }
        }
    }
    let module = SemifreeDgModule::new(t, gens, diff)?;
    Ok(KoszulImage {
        module,
        basis,
        exact_from,
    })
}

/// `G(N) = S ⊗ N`. Generator `l·2^n + β` is `1 ⊗ θ^β h_l`.
pub fn functor_g(nm: &SemifreeDgModule) -> Result<SemifreeDgModule> {
    require(nm, AlgebraKind::T)?;
    let t = nm.algebra();
    let spec = t.spec();
    let s = Algebra::new(AlgebraKind::S, spec.e, spec.f, spec.p)?;
    let fld = s.field();
    let n = spec.f;
    let width = 1usize << n;
    let mut gens = Vec::with_capacity(nm.rank() * width);
    for h in nm.gens() {
        for mask in 0..width as u32 {
            gens.push(*h + t.degree(&ext_mono(t, mask)));
        }
    }
    let mut diff = vec![Row::new(); gens.len()];
    for l in 0..nm.rank() {
        for mask in 0..width as u32 {
            let g = l * width + mask as usize;
            let row = &mut diff[g];
            for ((l2, mu), c) in nm.d_basis(l, &ext_mono(t, mask)) {
                row.entry(l2 * width + mu.mask as usize)
                    .or_insert_with(Element::zero)
                    .add_term(fld, s.one(), c);
            }
            for i in 0..n {
                if let Some(sg) = wedge_sign(1 << i, mask) {
                    let target = l * width + (mask | 1 << i) as usize;
                    row.entry(target).or_insert_with(Element::zero).add_term(
                        fld,
                        s.poly_var(i),
                        fld.from_i64(-sg),
                    );
                }
            }
        }
    }
    SemifreeDgModule::new(s, gens, diff)
}

/// `κ = F`.
pub fn kappa(m: &SemifreeDgModule, exact_from: i32) -> Result<KoszulImage> {
    functor_f(m, exact_from)
}

/// `κ^{-1} = G`.
pub fn kappa_inv(n: &SemifreeDgModule) -> Result<SemifreeDgModule> {
    functor_g(n)
}

/// The counit `G(F(M)) -> M` together with the window on which it is a chain map.
///
/// It sends `1 ⊗ θ^top ε ⊗ μ g_k` to `μ g_k` and every other generator to zero.
/// The truncation makes it a chain map only in internal degrees `>= exact_from`,
/// so it is checked slice by slice on the returned window.
pub fn counit(m: &SemifreeDgModule, depth: u32) -> Result<(DgMap, Window)> {
    require(m, AlgebraKind::S)?;
    let (lo, hi) = m.internal_range().unwrap_or((0, 0));
    let exact_from = lo - 2 * depth as i32;
    let fm = functor_f(m, exact_from)?;
    let gfm = functor_g(&fm.module)?;
    let s = m.algebra();
    let n = s.spec().f;
    let width = 1usize << n;
    let top = (width - 1) as u32;
    let mut entries = vec![Row::new(); gfm.rank()];
    for (l, (k, mu)) in fm.basis.iter().enumerate() {
        entries[l * width + top as usize].insert(*k, Element::monomial(mu.clone(), 1));
    }
    let map = DgMap::new(gfm, m.clone(), entries)?;
    Ok((map, Window::internal(exact_from, hi)))
}

/// The unit `N -> F(G(N))`, an honest chain map, and the window on which
/// the truncated target agrees with `F(G(N))`.
///
/// `h ↦ Σ_β s_β θ^{β^c} · ε ⊗ (1 ⊗ θ^β h)` with signs chosen so the canonical
/// element `Σ_β (θ^β)* ⊗ θ^β` is T-invariant.
pub fn unit(nm: &SemifreeDgModule, depth: u32) -> Result<(DgMap, Window)> {
    require(nm, AlgebraKind::T)?;
    let t = nm.algebra();
    let fld = t.field();
    let n = t.spec().f;
    let width = 1usize << n;
    let (lo, hi) = nm.internal_range().unwrap_or((0, 0));
    let exact_from = lo - 2 * depth as i32;
    let gn = functor_g(nm)?;
    let fgn = functor_f(&gn, exact_from)?;
    let index: HashMap<(usize, Monomial), usize> = fgn
        .basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, b)| (b, i))
        .collect();
    let signs = unit_signs(n);
    let full = (width - 1) as u32;
    let s_one = Monomial::one(n);
    let mut entries = vec![Row::new(); nm.rank()];
    for (l, row) in entries.iter_mut().enumerate() {
        for beta in 0..width as u32 {
            if let Some(&g) = index.get(&(l * width + beta as usize, s_one.clone())) {
                let coeff = Element::monomial(
                    ext_mono(t, full & !beta),
                    fld.from_i64(signs[beta as usize]),
                );
                row.insert(g, coeff);
            }
        }
    }
    let map = DgMap::new(nm.clone(), fgn.module, entries)?;
    Ok((map, Window::internal(exact_from, hi)))
}

/// `s_β` from `s_∅ = 1` and `s_β = s_{β∖k} σ τ`, where
/// `θ^{β∖k} θ_k = σ θ^β` and `θ_k θ^{β^c} = τ θ^{(β∖k)^c}`.
fn unit_signs(n: usize) -> Vec<i64> {
    let width = 1usize << n;
    let full = (width - 1) as u32;
    let mut s = vec![0i64; width];
    s[0] = 1;
    for beta in 1..width as u32 {
        let k = beta.trailing_zeros();
        let rest = beta & !(1 << k);
        let sigma = wedge_sign(rest, 1 << k).expect("disjoint");
        let tau = wedge_sign(1 << k, full & !beta).expect("disjoint");
        s[beta as usize] = s[rest as usize] * sigma * tau;
    }
    s
}

/// `ξ`: the S-module `M` regraded as an R-module, `(i, j) -> (i + j, j)`.
pub fn regrade_xi(m: &SemifreeDgModule) -> Result<SemifreeDgModule> {
    require(m, AlgebraKind::S)?;
    let spec = m.spec();
    let r = Algebra::new(AlgebraKind::R, spec.e, spec.f, spec.p)?;
    let gens = m
        .gens()
        .iter()
        .map(|g| Bidegree::new(g.i + g.j, g.j))
        .collect();
    SemifreeDgModule::new(r, gens, m.diff_rows().to_vec())
}

/// `ξ^{-1}`: `(i, j) -> (i - j, j)` from R back to S.
pub fn regrade_xi_inv(m: &SemifreeDgModule) -> Result<SemifreeDgModule> {
    require(m, AlgebraKind::R)?;
    let spec = m.spec();
    let s = Algebra::new(AlgebraKind::S, spec.e, spec.f, spec.p)?;
    let gens = m
        .gens()
        .iter()
        .map(|g| Bidegree::new(g.i - g.j, g.j))
        .collect();
    SemifreeDgModule::new(s, gens, m.diff_rows().to_vec())
}

/// Table-level `ξ`: `(i, j) -> (i + j, j)`.
pub fn xi_dims(d: &crate::bigraded::BigradedDims) -> crate::bigraded::BigradedDims {
    let mut out = crate::bigraded::BigradedDims::new();
    for (b, n) in d.iter() {
        out.add(Bidegree::new(b.i + b.j, b.j), n);
    }
    out
}
