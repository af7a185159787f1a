//! Graded block algebras assembled from a basic algebra and multiplicities.
//!
//! An element `E_rc ⊗ b` with `b ∈ e_s B e_t` is a matrix unit of size
//! `m_s × m_t` tensored with a basic element. Basic products are monomial
//! (a basis element or zero), and so are block products.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::p1::{ext_zero_sections, ExtTable};
use crate::error::{Error, Result};
use crate::linalg::{is_prime, Fp};

/// Twist and shift of the two simple objects of a regular block,
/// `O(-1)` and `O(-2)[1]` on the zero section.
pub const REGULAR_SIMPLES: [(i32, i32); 2] = [(-1, 0), (-2, 1)];

/// A basis vector of `e_row B e_col`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicElement {
    pub name: String,
    pub row: usize,
    pub col: usize,
    pub degree: u32,
}

/// A graded basic algebra with monomial multiplication.
#[derive(Clone, Debug)]
pub struct BasicAlgebra {
    vertices: usize,
    elements: Vec<BasicElement>,
    products: Vec<Vec<Option<usize>>>,
    /// `Φ` on basis elements: fixes idempotents, reverses arrows.
    bar: Vec<usize>,
}

impl BasicAlgebra {
    /// A basic algebra from its multiplication table. `products[x][y]` must
    /// vanish unless `x` ends where `y` starts, and nonzero products must be
    /// homogeneous; `bar` is the candidate anti-automorphism on the basis.
    pub fn new(
        vertices: usize,
        elements: Vec<BasicElement>,
        products: Vec<Vec<Option<usize>>>,
        bar: Vec<usize>,
    ) -> Result<Self> {
        let n = elements.len();
        if products.len() != n || products.iter().any(|r| r.len() != n) || bar.len() != n {
            return Err(Error::Input(format!("tables must be {n} x {n}")));
        }
        for (x, ex) in elements.iter().enumerate() {
            if ex.row >= vertices || ex.col >= vertices || bar[x] >= n {
                return Err(Error::Input(format!("element {} is out of range", ex.name)));
            }
            for (y, ey) in elements.iter().enumerate() {
                let Some(z) = products[x][y] else { continue };
                let ez = elements
                    .get(z)
                    .ok_or_else(|| Error::Input(format!("product index {z} out of range")))?;
                if ex.col != ey.row
                    || ez.row != ex.row
                    || ez.col != ey.col
                    || ez.degree != ex.degree + ey.degree
                {
                    return Err(Error::Input(format!(
                        "{} * {} = {} is not compatible with vertices and degrees",
                        ex.name, ey.name, ez.name
                    )));
                }
            }
        }
        Ok(BasicAlgebra {
            vertices,
            elements,
            products,
            bar,
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn elements(&self) -> &[BasicElement] {
        &self.elements
    }

    pub fn product(&self, x: usize, y: usize) -> Option<usize> {
        self.products[x][y]
    }

    pub fn bar(&self, x: usize) -> usize {
        self.bar[x]
    }

    fn index(&self, name: &str) -> usize {
        self.elements
            .iter()
            .position(|e| e.name == name)
            .expect("known basic element")
    }

    /// `Mat_1` on one vertex.
    pub fn point() -> Self {
        BasicAlgebra {
            vertices: 1,
            elements: vec![BasicElement {
                name: "e".into(),
                row: 0,
                col: 0,
                degree: 0,
            }],
            products: vec![vec![Some(0)]],
            bar: vec![0],
        }
    }

    /// The Ext algebra of `O(-1) ⊕ O(-2)[1]`. Graded pieces come from
    /// [`regular_hom_tables`]; the product is composition, with the
    /// pairing of `V = Hom(L_1, L_2)` and `V* = Hom(L_2, L_1)` landing on
    /// the degree-2 classes `z_1`, `z_2`.
    pub fn regular() -> Result<Self> {
        let tables = regular_hom_tables();
        let expect = |s: usize, t: usize, want: &[(i32, usize)]| -> Result<()> {
            let got: Vec<(i32, usize)> = tables[&(s, t)].iter().map(|(&i, &n)| (i, n)).collect();
            if got != want {
                return Err(Error::Invalid(format!(
                    "Hom(L_{}, L_{}) has dimensions {got:?}, expected {want:?}",
                    t + 1,
                    s + 1
                )));
            }
            Ok(())
        };
        expect(0, 0, &[(0, 1), (2, 1)])?;
        expect(1, 1, &[(0, 1), (2, 1)])?;
        expect(1, 0, &[(1, 2)])?;
        expect(0, 1, &[(1, 2)])?;

        let el = |name: &str, row, col, degree| BasicElement {
            name: name.into(),
            row,
            col,
            degree,
        };
        let elements = vec![
            el("e1", 0, 0, 0),
            el("e2", 1, 1, 0),
            el("u", 1, 0, 1),
            el("v", 1, 0, 1),
            el("ubar", 0, 1, 1),
            el("vbar", 0, 1, 1),
            el("z1", 0, 0, 2),
            el("z2", 1, 1, 2),
        ];
        let mut b = BasicAlgebra {
            vertices: 2,
            products: vec![vec![None; elements.len()]; elements.len()],
            bar: Vec::new(),
            elements,
        };
        let pairing = [
            ("ubar", "u", "z1"),
            ("vbar", "v", "z1"),
            ("u", "ubar", "z2"),
            ("v", "vbar", "z2"),
        ];
        let n = b.elements.len();
        for x in 0..n {
            for y in 0..n {
                let (ex, ey) = (&b.elements[x], &b.elements[y]);
                if ex.col != ey.row {
                    continue;
                }
                b.products[x][y] = if ex.degree == 0 {
                    Some(y)
                } else if ey.degree == 0 {
                    Some(x)
                } else {
                    pairing
                        .iter()
                        .find(|(l, r, _)| *l == ex.name && *r == ey.name)
                        .map(|(_, _, z)| b.index(z))
                };
            }
        }
        fn swap(name: &str) -> &str {
            match name {
                "u" => "ubar",
                "ubar" => "u",
                "v" => "vbar",
                "vbar" => "v",
                other => other,
            }
        }
        b.bar = (0..n).map(|x| b.index(swap(&b.elements[x].name))).collect();
        Ok(b)
    }
}

/// `Hom^*(L_t, L_s)` keyed by `(s, t)`, read off the Ext tables:
/// `Ext^i(O(a)[x], O(b)[y]) = Ext^{i+y-x}(O(a), O(b))`.
pub fn regular_hom_tables() -> BTreeMap<(usize, usize), BTreeMap<i32, usize>> {
    let mut out = BTreeMap::new();
    for (s, &(b, y)) in REGULAR_SIMPLES.iter().enumerate() {
        for (t, &(a, x)) in REGULAR_SIMPLES.iter().enumerate() {
            let ext = ext_zero_sections(a, b);
            let dims = ext.dims.iter().map(|(&k, &n)| (k - (y - x), n)).collect();
            out.insert((s, t), dims);
        }
    }
    out
}

/// The three Ext computations behind the regular blocks.
pub fn displayed_ext_tables() -> [ExtTable; 3] {
    [
        ext_zero_sections(0, 0),
        ext_zero_sections(-1, 0),
        ext_zero_sections(0, -1),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum BlockKind {
    Regular { lambda: u32 },
    Singular,
}

/// Basis vector `E_rc ⊗ b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockBasis {
    pub elem: usize,
    pub r: usize,
    pub c: usize,
}

/// A block of the restricted enveloping algebra with its Koszul grading.
#[derive(Clone, Debug)]
pub struct BlockAlgebra {
    field: Fp,
    kind: BlockKind,
    multiplicities: Vec<usize>,
    basic: BasicAlgebra,
    basis: Vec<BlockBasis>,
    products: Vec<Vec<Option<usize>>>,
}

fn check_prime(p: u32) -> Result<Fp> {
    if p < 3 || !is_prime(p) {
        return Err(Error::Input(format!("p = {p} is not an odd prime")));
    }
    Fp::new(p)
}

/// The regular block of weight `λ`, `0 ≤ λ ≤ (p-3)/2`.
pub fn build_regular_block(p: u32, lambda: u32) -> Result<BlockAlgebra> {
    let field = check_prime(p)?;
    if lambda > (p - 3) / 2 {
        return Err(Error::Input(format!(
            "λ = {lambda} is not a regular weight for p = {p} (need 0 ≤ λ ≤ {})",
            (p - 3) / 2
        )));
    }
    let m1 = (lambda + 1) as usize;
    let m2 = (p - 1 - lambda) as usize;
    Ok(BlockAlgebra::inflate(
        field,
        BlockKind::Regular { lambda },
        BasicAlgebra::regular()?,
        vec![m1, m2],
    ))
}

/// The singular block `Mat_p`, concentrated in degree 0.
pub fn build_singular_block(p: u32) -> Result<BlockAlgebra> {
    let field = check_prime(p)?;
    Ok(BlockAlgebra::inflate(
        field,
        BlockKind::Singular,
        BasicAlgebra::point(),
        vec![p as usize],
    ))
}

impl BlockAlgebra {
    pub fn inflate(
        field: Fp,
        kind: BlockKind,
        basic: BasicAlgebra,
        multiplicities: Vec<usize>,
    ) -> Self {
        let mut basis = Vec::new();
        for (elem, be) in basic.elements().iter().enumerate() {
            for r in 0..multiplicities[be.row] {
                for c in 0..multiplicities[be.col] {
                    basis.push(BlockBasis { elem, r, c });
                }
            }
        }
        let index: HashMap<BlockBasis, usize> =
            basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let products = basis
            .iter()
            .map(|x| {
                basis
                    .iter()
                    .map(|y| {
                        if x.c != y.r {
                            return None;
                        }
                        let elem = basic.product(x.elem, y.elem)?;
                        Some(
                            index[&BlockBasis {
                                elem,
                                r: x.r,
                                c: y.c,
                            }],
                        )
                    })
                    .collect()
            })
            .collect();
        BlockAlgebra {
            field,
            kind,
            multiplicities,
            basic,
            basis,
            products,
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn basic(&self) -> &BasicAlgebra {
        &self.basic
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BlockBasis] {
        &self.basis
    }

    pub fn element(&self, x: usize) -> &BasicElement {
        &self.basic.elements()[self.basis[x].elem]
    }

    pub fn degree(&self, x: usize) -> u32 {
        self.element(x).degree
    }

    /// Product of basis vectors.
    pub fn mul(&self, x: usize, y: usize) -> Option<usize> {
        self.products[x][y]
    }

    pub fn index_of(&self, b: BlockBasis) -> Option<usize> {
        self.basis.iter().position(|&x| x == b)
    }

    /// `E_00 ⊗ e_s`, a primitive idempotent for vertex `s`.
    pub fn primitive_idempotent(&self, s: usize) -> usize {
        let elem = (0..self.basic.elements().len())
            .find(|&i| {
                let e = &self.basic.elements()[i];
                e.row == s && e.col == s && e.degree == 0
            })
            .expect("every vertex has an idempotent");
        self.index_of(BlockBasis { elem, r: 0, c: 0 })
            .expect("present")
    }

    /// `Σ_s Σ_r E_rr ⊗ e_s`.
    pub fn unit(&self) -> Vec<u32> {
        let mut one = vec![0; self.dim()];
        for (x, b) in self.basis.iter().enumerate() {
            if b.r == b.c && self.degree(x) == 0 && self.element(x).row == self.element(x).col {
                one[x] = 1;
            }
        }
        one
    }

    /// Product of arbitrary elements.
    pub fn mul_vec(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let fld = self.field;
        let mut out = vec![0; self.dim()];
        for (i, &a) in x.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in y.iter().enumerate().filter(|(_, &b)| b != 0) {
                if let Some(k) = self.products[i][j] {
                    out[k] = fld.add(out[k], fld.mul(a, b));
                }
            }
        }
        out
    }

    /// `dim A_d` for `d = 0..=top`.
    pub fn degree_dims(&self) -> Vec<usize> {
        let top = (0..self.dim()).map(|x| self.degree(x)).max().unwrap_or(0);
        let mut dims = vec![0; top as usize + 1];
        for x in 0..self.dim() {
            dims[self.degree(x) as usize] += 1;
        }
        dims
    }

    /// First basis triple with `(xy)z ≠ x(yz)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let left = self.mul(x, y).and_then(|xy| self.mul(xy, z));
                    let right = self.mul(y, z).and_then(|yz| self.mul(x, yz));
                    if left != right {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn unit_holds(&self) -> bool {
        let one = self.unit();
        (0..self.dim()).all(|x| {
            let mut v = vec![0; self.dim()];
            v[x] = 1;
            self.mul_vec(&one, &v) == v && self.mul_vec(&v, &one) == v
        })
    }

    /// `deg(xy) = deg x + deg y` whenever `xy ≠ 0`.
    pub fn grading_holds(&self) -> bool {
        (0..self.dim()).all(|x| {
            (0..self.dim()).all(|y| match self.mul(x, y) {
                Some(z) => self.degree(z) == self.degree(x) + self.degree(y),
                None => true,
            })
        })
    }

    /// `dim E_s A_d E_t` with `E_s` the full idempotent of vertex `s`,
    /// computed from the multiplication table.
    pub fn cartan(&self) -> BTreeMap<(usize, usize, u32), usize> {
        let fld = self.field;
        let full = |s: usize| -> Vec<u32> {
            let mut v = vec![0; self.dim()];
            for (x, b) in self.basis.iter().enumerate() {
                let e = self.element(x);
                if e.row == s && e.col == s && e.degree == 0 && b.r == b.c {
                    v[x] = 1;
                }
            }
            v
        };
        let idem: Vec<Vec<u32>> = (0..self.basic.vertices()).map(full).collect();
        let mut out = BTreeMap::new();
        for (s, es) in idem.iter().enumerate() {
            for (t, et) in idem.iter().enumerate() {
                let mut by_degree: BTreeMap<u32, Vec<Vec<u32>>> = BTreeMap::new();
                for x in 0..self.dim() {
                    let mut v = vec![0; self.dim()];
                    v[x] = 1;
                    let w = self.mul_vec(&self.mul_vec(es, &v), et);
                    by_degree.entry(self.degree(x)).or_default().push(w);
                }
                for (d, cols) in by_degree {
                    let m = crate::linalg::Matrix::from_columns(fld, self.dim(), &cols);
                    let r = m.rank();
                    if r > 0 {
                        out.insert((s, t, d), r);
                    }
                }
            }
        }
        out
    }
}
