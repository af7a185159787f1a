//! Semifree dg-modules over the algebras of [`crate::algebra`] and chain maps
//! between them.
//!
//! A semifree module is free on homogeneous generators `g_k`, with
//! `d(g_k) = Σ_l D[k][l] g_l`. Signs: `d(a·g) = d(a)·g + (-1)^|a| a·d(g)` with
//! `|a|` the cohomological degree. Maps of degree (0,0) satisfy
//! `φ(a·g) = a·φ(g)`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraSpec, Element, Monomial};
use crate::bigraded::Bidegree;
use crate::complex::{DgObject, SliceChainMap, SliceComplex, SliceMap};
use crate::error::{Error, Result};
use crate::linalg::{Fp, Matrix};

/// Sparse row of a matrix with algebra entries.
pub type Row = BTreeMap<usize, Element>;

/// A vector in the underlying bigraded space: `(generator, monomial) -> coefficient`.
pub type Chain = BTreeMap<(usize, Monomial), u32>;

fn chain_add(f: Fp, acc: &mut Chain, key: (usize, Monomial), c: u32) {
    if c == 0 {
        return;
    }
    let slot = acc.entry(key.clone()).or_insert(0);
    *slot = f.add(*slot, c);
    if *slot == 0 {
        acc.remove(&key);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SemifreeDgModule {
    algebra: Algebra,
    gens: Vec<Bidegree>,
    diff: Vec<Row>,
}

impl SemifreeDgModule {
    /// Builds a module and validates it.
    pub fn new(algebra: Algebra, gens: Vec<Bidegree>, diff: Vec<Row>) -> Result<Self> {
        let m = Self::new_unchecked(algebra, gens, diff)?;
        m.validate()?;
        Ok(m)
    }

    /// Only checks shapes; see [`SemifreeDgModule::validate`].
    pub fn new_unchecked(
        algebra: Algebra,
        gens: Vec<Bidegree>,
        mut diff: Vec<Row>,
    ) -> Result<Self> {
        if diff.is_empty() {
            diff = vec![Row::new(); gens.len()];
        }
        if diff.len() != gens.len() {
            return Err(Error::Input(format!(
                "{} generators but {} differential rows",
                gens.len(),
                diff.len()
            )));
        }
        for row in &mut diff {
            row.retain(|_, e| !e.is_zero());
            if let Some((&l, _)) = row.iter().find(|(&l, _)| l >= gens.len()) {
                return Err(Error::Input(format!(
                    "differential refers to generator {l}"
                )));
            }
        }
        Ok(SemifreeDgModule {
            algebra,
            gens,
            diff,
        })
    }

    /// Free module with zero differential.
    pub fn free(algebra: Algebra, gens: Vec<Bidegree>) -> Self {
        let n = gens.len();
        SemifreeDgModule {
            algebra,
            gens,
            diff: vec![Row::new(); n],
        }
    }

    /// The algebra as a module over itself.
    pub fn rank_one(algebra: Algebra) -> Self {
        Self::free(algebra, vec![Bidegree::ZERO])
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.algebra.spec()
    }

    pub fn gens(&self) -> &[Bidegree] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn diff_rows(&self) -> &[Row] {
        &self.diff
    }

    pub fn entry(&self, k: usize, l: usize) -> Option<&Element> {
        self.diff[k].get(&l)
    }

    pub fn internal_range(&self) -> Option<(i32, i32)> {
        let lo = self.gens.iter().map(|g| g.j).min()?;
        let hi = self.gens.iter().map(|g| g.j).max()?;
        Some((lo, hi))
    }

    /// `d(μ·g_k)` as a chain.
    pub fn d_basis(&self, k: usize, mu: &Monomial) -> Chain {
        let a = &self.algebra;
        let f = a.field();
        let mut out = Chain::new();
        for (dm, c) in a.d_monomial(mu).terms {
            chain_add(f, &mut out, (k, dm), c);
        }
        let sign = f.sign(a.degree(mu).i as i64);
        for (&l, entry) in &self.diff[k] {
            for (m, c) in &entry.terms {
                if let Some((prod, s)) = a.mul_monomials(mu, m) {
                    let coeff = f.mul(f.mul(sign, *c), f.from_i64(s));
                    chain_add(f, &mut out, (l, prod), coeff);
                }
            }
        }
        out
    }

    /// `d` applied to a chain.
    pub fn d_chain(&self, x: &Chain) -> Chain {
        let f = self.algebra.field();
        let mut out = Chain::new();
        for ((k, mu), c) in x {
            for (key, v) in self.d_basis(*k, mu) {
                chain_add(f, &mut out, key, f.mul(v, *c));
            }
        }
        out
    }

    /// Checks homogeneity of every entry and `d^2 = 0` on every generator.
    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        for (k, row) in self.diff.iter().enumerate() {
            for (&l, entry) in row {
                let want = self.gens[k] - self.gens[l] + Bidegree::new(1, 0);
                if !a.is_homogeneous_of(entry, want) {
                    return Err(Error::Invalid(format!(
                        "entry ({k},{l}) is not homogeneous of bidegree {want}"
                    )));
                }
            }
        }
        for k in 0..self.rank() {
            let one = a.one();
            let dd = self.d_chain(&self.d_basis(k, &one));
            if let Some(((l, m), _)) = dd.iter().next() {
                return Err(Error::Invalid(format!(
                    "d^2(g_{k}) != 0: nonzero term on generator {l} at bidegree {}",
                    self.gens[*l] + a.degree(m)
                )));
            }
        }
        Ok(())
    }

    /// Basis of the slice at internal degree `j`, grouped by cohomological degree.
    pub fn slice_basis(&self, j: i32) -> BTreeMap<i32, Vec<(usize, Monomial)>> {
        let mut out: BTreeMap<i32, Vec<(usize, Monomial)>> = BTreeMap::new();
        for (k, g) in self.gens.iter().enumerate() {
            for mu in self.algebra.monomials_of_internal(j - g.j) {
                let i = g.i + self.algebra.degree(&mu).i;
                out.entry(i).or_default().push((k, mu));
            }
        }
        out
    }

    /// `M[a]<b>`: generators move to `deg - (a, 0) + (0, b)`, `d` picks up `(-1)^a`
    /// and the action on the shifted copy picks up `(-1)^{a|x|}`.
    pub fn shift(&self, a: i32, b: i32) -> Self {
        let alg = &self.algebra;
        let f = alg.field();
        let diff = self
            .diff
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(&l, e)| {
                        let mut out = Element::zero();
                        for (m, c) in &e.terms {
                            let s = a as i64 * (1 + alg.degree(m).i as i64);
                            out.add_term(f, m.clone(), f.mul(*c, f.sign(s)));
                        }
                        (l, out)
                    })
                    .collect()
            })
            .collect();
        SemifreeDgModule {
            algebra: self.algebra.clone(),
            gens: self.gens.iter().map(|g| g.shifted(a, b)).collect(),
            diff,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::Input("direct sum over different algebras".into()));
        }
        let off = self.rank();
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        let mut diff = self.diff.clone();
        diff.extend(
            other
                .diff
                .iter()
                .map(|row| row.iter().map(|(&l, e)| (l + off, e.clone())).collect()),
        );
        Ok(SemifreeDgModule {
            algebra: self.algebra.clone(),
            gens,
            diff,
        })
    }
}

impl DgObject for SemifreeDgModule {
    fn field(&self) -> Fp {
        self.algebra.field()
    }

    fn slice(&self, j: i32) -> SliceComplex {
        let basis = self.slice_basis(j);
        let f = self.field();
        let dims = basis.iter().map(|(&i, v)| (i, v.len())).collect();
        let mut slice = SliceComplex::new(f, j, dims);
        let index: BTreeMap<i32, HashMap<&(usize, Monomial), usize>> = basis
            .iter()
            .map(|(&i, v)| (i, v.iter().enumerate().map(|(n, key)| (key, n)).collect()))
            .collect();
        for (&i, elems) in &basis {
            let Some(target) = index.get(&(i + 1)) else {
                continue;
            };
            let mut d = Matrix::zeros(f, target.len(), elems.len());
            for (col, (k, mu)) in elems.iter().enumerate() {
                for (key, c) in self.d_basis(*k, mu) {
                    let row = target[&key];
                    d.add_to(row, col, c);
                }
            }
            if !d.is_zero() {
                slice.diffs.insert(i, d);
            }
        }
        slice
    }
}

/// A degree-(0,0) map of semifree modules over the same algebra:
/// `φ(g_k) = Σ_l entries[k][l] h_l`.
#[derive(Clone, Debug)]
pub struct DgMap {
    source: SemifreeDgModule,
    target: SemifreeDgModule,
    entries: Vec<Row>,
}

impl DgMap {
    pub fn new(
        source: SemifreeDgModule,
        target: SemifreeDgModule,
        mut entries: Vec<Row>,
    ) -> Result<Self> {
        if source.algebra != target.algebra {
            return Err(Error::Input(
                "map between modules over different algebras".into(),
            ));
        }
        if entries.len() != source.rank() {
            return Err(Error::Input("map has the wrong number of rows".into()));
        }
        let a = source.algebra.clone();
        for (k, row) in entries.iter_mut().enumerate() {
            row.retain(|_, e| !e.is_zero());
            for (&l, e) in row.iter() {
                if l >= target.rank() {
                    return Err(Error::Input(format!("map refers to target generator {l}")));
                }
                let want = source.gens[k] - target.gens[l];
                if !a.is_homogeneous_of(e, want) {
                    return Err(Error::Input(format!(
                        "map entry ({k},{l}) is not homogeneous of bidegree {want}"
                    )));
                }
            }
        }
        Ok(DgMap {
            source,
            target,
            entries,
        })
    }

    pub fn identity(m: &SemifreeDgModule) -> Self {
        let entries = (0..m.rank())
            .map(|k| [(k, m.algebra.unit())].into_iter().collect())
            .collect();
        DgMap {
            source: m.clone(),
            target: m.clone(),
            entries,
        }
    }

    pub fn zero(source: &SemifreeDgModule, target: &SemifreeDgModule) -> Result<Self> {
        Self::new(
            source.clone(),
            target.clone(),
            vec![Row::new(); source.rank()],
        )
    }

    pub fn source(&self) -> &SemifreeDgModule {
        &self.source
    }

    pub fn target(&self) -> &SemifreeDgModule {
        &self.target
    }

    pub fn entries(&self) -> &[Row] {
        &self.entries
    }

    /// `φ(μ·g_k)` as a chain of the target.
    pub fn apply_basis(&self, k: usize, mu: &Monomial) -> Chain {
        let a = &self.source.algebra;
        let f = a.field();
        let mut out = Chain::new();
        for (&l, e) in &self.entries[k] {
            for (m, c) in &e.terms {
                if let Some((prod, s)) = a.mul_monomials(mu, m) {
                    chain_add(f, &mut out, (l, prod), f.mul(*c, f.from_i64(s)));
                }
            }
        }
        out
    }

    /// Exact chain-map test on generators: `d φ(g_k) = φ(d g_k)`.
    pub fn check_chain_map(&self) -> Result<()> {
        let a = &self.source.algebra;
        let f = a.field();
        for k in 0..self.source.rank() {
            let image = self.apply_basis(k, &a.one());
            let lhs = self.target.d_chain(&image);
            let mut rhs = Chain::new();
            for ((l, mu), c) in self.source.d_basis(k, &a.one()) {
                for (key, v) in self.apply_basis(l, &mu) {
                    chain_add(f, &mut rhs, key, f.mul(v, c));
                }
            }
            if lhs != rhs {
                return Err(Error::NotChainMap(format!(
                    "d∘φ and φ∘d differ on source generator {k} (bidegree {})",
                    self.source.gens[k]
                )));
            }
        }
        Ok(())
    }

    /// Mapping cone: generators `target.gens` followed by `source.gens[1]`.
    pub fn cone(&self) -> Result<SemifreeDgModule> {
        self.check_chain_map()?;
        let a = &self.source.algebra;
        let f = a.field();
        let nt = self.target.rank();
        let mut gens = self.target.gens.clone();
        gens.extend(self.source.gens.iter().map(|g| g.shifted(1, 0)));
        let mut diff = self.target.diff.clone();
        for k in 0..self.source.rank() {
            let mut row: Row = self.entries[k].clone();
            for (&m, e) in &self.source.diff[k] {
                let mut out = Element::zero();
                for (mono, c) in &e.terms {
                    let s = 1 + a.degree(mono).i as i64;
                    out.add_term(f, mono.clone(), f.mul(*c, f.sign(s)));
                }
                row.insert(nt + m, out);
            }
            diff.push(row);
        }
        SemifreeDgModule::new(self.source.algebra.clone(), gens, diff)
    }
}

impl SliceChainMap for DgMap {
    fn field(&self) -> Fp {
        self.source.algebra.field()
    }

    fn slice_triple(&self, j: i32) -> (SliceComplex, SliceComplex, SliceMap) {
        let s = self.source.slice(j);
        let t = self.target.slice(j);
        let sb = self.source.slice_basis(j);
        let tb = self.target.slice_basis(j);
        let maps = slice_map_from(&sb, &tb, self.field(), |k, mu| self.apply_basis(k, mu));
        (s, t, SliceMap { maps })
    }
}

/// Assemble per-degree matrices from a basis-level rule.
pub(crate) fn slice_map_from(
    source: &BTreeMap<i32, Vec<(usize, Monomial)>>,
    target: &BTreeMap<i32, Vec<(usize, Monomial)>>,
    f: Fp,
    apply: impl Fn(usize, &Monomial) -> Chain,
) -> BTreeMap<i32, Matrix> {
    let mut maps = BTreeMap::new();
    for (&i, elems) in source {
        let Some(tgt) = target.get(&i) else { continue };
        let index: HashMap<&(usize, Monomial), usize> =
            tgt.iter().enumerate().map(|(n, k)| (k, n)).collect();
        let mut m = Matrix::zeros(f, tgt.len(), elems.len());
        for (col, (k, mu)) in elems.iter().enumerate() {
            for (key, c) in apply(*k, mu) {
                if let Some(&row) = index.get(&key) {
                    m.add_to(row, col, c);
                }
            }
        }
        if !m.is_zero() {
            maps.insert(i, m);
        }
    }
    maps
}

// ---------------------------------------------------------------------------
// serialization

/// On-disk form of a semifree module (schema 1).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleDocument {
    pub schema: u32,
    pub algebra: AlgebraSpec,
    pub generators: Vec<[i32; 2]>,
    pub differential: Vec<EntryDocument>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryDocument {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<TermDocument>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDocument {
    /// exponents of the polynomial variables
    pub poly: Vec<u8>,
    /// indices of the exterior variables, increasing
    pub ext: Vec<u32>,
    pub coeff: u32,
}

impl SemifreeDgModule {
    pub fn to_document(&self) -> ModuleDocument {
        let mut differential = Vec::new();
        for (k, row) in self.diff.iter().enumerate() {
            for (&l, e) in row {
                let terms = e
                    .terms
                    .iter()
                    .map(|(m, c)| TermDocument {
                        poly: m.exps.clone(),
                        ext: (0..32).filter(|b| m.mask >> b & 1 == 1).collect(),
                        coeff: *c,
                    })
                    .collect();
                differential.push(EntryDocument {
                    row: k,
                    col: l,
                    terms,
                });
            }
        }
        ModuleDocument {
            schema: 1,
            algebra: self.spec(),
            generators: self.gens.iter().map(|g| [g.i, g.j]).collect(),
            differential,
        }
    }

    pub fn from_document(doc: &ModuleDocument) -> Result<Self> {
        if doc.schema != 1 {
            return Err(Error::Input(format!("unsupported schema {}", doc.schema)));
        }
        let algebra = Algebra::from_spec(doc.algebra)?;
        let f = algebra.field();
        let gens: Vec<Bidegree> = doc
            .generators
            .iter()
            .map(|[i, j]| Bidegree::new(*i, *j))
            .collect();
        let mut diff = vec![Row::new(); gens.len()];
        for entry in &doc.differential {
            if entry.row >= gens.len() || entry.col >= gens.len() {
                return Err(Error::Input(format!(
                    "entry ({}, {}) out of range",
                    entry.row, entry.col
                )));
            }
            let mut e = Element::zero();
            for t in &entry.terms {
                if t.poly.len() != algebra.n_poly() {
                    return Err(Error::Input(format!(
                        "monomial has {} exponents, algebra has {} polynomial variables",
                        t.poly.len(),
                        algebra.n_poly()
                    )));
                }
                let mut mask = 0u32;
                for &b in &t.ext {
                    if b as usize >= algebra.n_ext() || mask >> b & 1 == 1 {
                        return Err(Error::Input(format!("bad exterior index {b}")));
                    }
                    mask |= 1 << b;
                }
                e.add_term(
                    f,
                    Monomial {
                        exps: t.poly.clone(),
                        mask,
                    },
                    t.coeff % f.p(),
                );
            }
            diff[entry.row].insert(entry.col, e);
        }
        SemifreeDgModule::new(algebra, gens, diff)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document())
            .expect("module documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: ModuleDocument = serde_json::from_str(s)?;
        Self::from_document(&doc)
    }
}
