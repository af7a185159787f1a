//! The bigraded dg-algebras over a point: `S = Sym(F*)`, its regrading `R`,
//! `T = Λ(F)`, the big Koszul model `Q = Sym(E/F) ⊗ Λ(E)`, and `P = Sym(E/F)`.
//!
//! Every one of them is free graded-commutative on a set of even
//! ("polynomial") and odd ("exterior") variables, and the differential is a
//! derivation sending exterior variables to polynomial variables. Monomials
//! are exponent tuples times subset bitmasks; exterior products are ordered by
//! increasing index and signs come from counting inversions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bigraded::Bidegree;
use crate::error::{Error, Result};
use crate::linalg::Fp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraKind {
    /// `Sym(F*)`, generators in bidegree (2,-2).
    S,
    /// `Sym(F*)`, generators in bidegree (0,-2).
    R,
    /// `Λ(F)`, generators in bidegree (-1,2).
    T,
    /// `Sym(E/F) ⊗ Λ(E)` with `d(x) = [x]` for `x` in `E`.
    Q,
    /// `Sym(E/F)`, generators in bidegree (0,2): functions on `F^⊥`.
    P,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlgebraKind::S => "S",
            AlgebraKind::R => "R",
            AlgebraKind::T => "T",
            AlgebraKind::Q => "Q",
            AlgebraKind::P => "P",
        };
        f.write_str(s)
    }
}

/// Which algebra, over which `F ⊂ E`, over which prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub kind: AlgebraKind,
    pub e: usize,
    pub f: usize,
    pub p: u32,
}

/// `y^exps · η^mask`; polynomial part first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub exps: Vec<u8>,
    pub mask: u32,
}

impl Monomial {
    pub fn one(n_poly: usize) -> Self {
        Monomial {
            exps: vec![0; n_poly],
            mask: 0,
        }
    }

    pub fn is_one(&self) -> bool {
        self.mask == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn ext_len(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn poly_len(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }
}

/// Sign of `η^a · η^b` relative to `η^(a|b)`, or `None` if they overlap.
pub fn wedge_sign(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    // count pairs (x in a, y in b) with x > y
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> (y + 1)).count_ones();
    }
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// Homogeneous or not; coefficients are nonzero residues.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Element {
    pub terms: BTreeMap<Monomial, u32>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, c: u32) -> Self {
        let mut e = Self::zero();
        if c != 0 {
            e.terms.insert(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, field: Fp, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(m).or_insert(0);
        *slot = field.add(*slot, c);
        if *slot == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn add_assign(&mut self, field: Fp, other: &Element) {
        for (m, c) in &other.terms {
            self.add_term(field, m.clone(), *c);
        }
    }

    pub fn scale(&self, field: Fp, c: u32) -> Element {
        if c == 0 {
            return Element::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), field.mul(*v, c)))
                .collect(),
        }
    }
}

/// A concrete free graded-commutative dg-algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    spec: AlgebraSpec,
    field: Fp,
    n_poly: usize,
    n_ext: usize,
    poly_deg: Bidegree,
    ext_deg: Bidegree,
    /// `d(η_k) = y_{ext_diff[k]}` when present.
    ext_diff: Vec<Option<usize>>,
}

impl Algebra {
    pub fn new(kind: AlgebraKind, e: usize, f: usize, p: u32) -> Result<Self> {
        if f > e {
            return Err(Error::Input(format!("dim F = {f} exceeds dim E = {e}")));
        }
        if e > 16 {
            return Err(Error::Input(format!("dim E = {e} is too large")));
        }
        let field = Fp::new(p)?;
        let (n_poly, n_ext) = match kind {
            AlgebraKind::S | AlgebraKind::R => (f, 0),
            AlgebraKind::T => (0, f),
            AlgebraKind::Q => (e - f, e),
            AlgebraKind::P => (e - f, 0),
        };
        let poly_deg = match kind {
            AlgebraKind::S => Bidegree::new(2, -2),
            AlgebraKind::R => Bidegree::new(0, -2),
            _ => Bidegree::new(0, 2),
        };
        let ext_deg = Bidegree::new(-1, 2);
        let ext_diff = (0..n_ext)
            .map(|k| (kind == AlgebraKind::Q && k >= f).then(|| k - f))
            .collect();
        Ok(Algebra {
            spec: AlgebraSpec { kind, e, f, p },
            field,
            n_poly,
            n_ext,
            poly_deg,
            ext_deg,
            ext_diff,
        })
    }

    pub fn from_spec(spec: AlgebraSpec) -> Result<Self> {
        Self::new(spec.kind, spec.e, spec.f, spec.p)
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    pub fn kind(&self) -> AlgebraKind {
        self.spec.kind
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn n_poly(&self) -> usize {
        self.n_poly
    }

    pub fn n_ext(&self) -> usize {
        self.n_ext
    }

    pub fn poly_degree(&self) -> Bidegree {
        self.poly_deg
    }

    pub fn ext_degree(&self) -> Bidegree {
        self.ext_deg
    }

    pub fn has_differential(&self) -> bool {
        self.ext_diff.iter().any(Option::is_some)
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.n_poly)
    }

    pub fn unit(&self) -> Element {
        Element::monomial(self.one(), 1)
    }

    pub fn poly_var(&self, k: usize) -> Monomial {
        let mut m = self.one();
        m.exps[k] = 1;
        m
    }

    pub fn ext_var(&self, k: usize) -> Monomial {
        Monomial {
            exps: vec![0; self.n_poly],
            mask: 1 << k,
        }
    }

    pub fn degree(&self, m: &Monomial) -> Bidegree {
        let np = m.poly_len() as i32;
        let ne = m.ext_len() as i32;
        Bidegree::new(
            np * self.poly_deg.i + ne * self.ext_deg.i,
            np * self.poly_deg.j + ne * self.ext_deg.j,
        )
    }

    /// Bidegree of a homogeneous element; `None` for zero or inhomogeneous.
    pub fn element_degree(&self, x: &Element) -> Option<Bidegree> {
        let mut it = x.terms.keys().map(|m| self.degree(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, x: &Element, d: Bidegree) -> bool {
        x.terms.keys().all(|m| self.degree(m) == d)
    }

    /// Product of monomials with its Koszul sign, `None` if zero.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, i64)> {
        let sign = wedge_sign(a.mask, b.mask)?;
        let exps = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
        Some((
            Monomial {
                exps,
                mask: a.mask | b.mask,
            },
            sign,
        ))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let f = self.field;
        let mut out = Element::zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some((m, s)) = self.mul_monomials(ma, mb) {
                    out.add_term(f, m, f.mul(f.mul(*ca, *cb), f.from_i64(s)));
                }
            }
        }
        out
    }

    /// The algebra differential on a monomial.
    pub fn d_monomial(&self, m: &Monomial) -> Element {
        let f = self.field;
        let mut out = Element::zero();
        let mut rest = m.mask;
        let mut position = 0i64;
        while rest != 0 {
            let k = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if let Some(y) = self.ext_diff[k] {
                let mut exps = m.exps.clone();
                exps[y] += 1;
                let image = Monomial {
                    exps,
                    mask: m.mask & !(1 << k),
                };
                out.add_term(f, image, f.sign(position));
            }
            position += 1;
        }
        out
    }

    pub fn d(&self, x: &Element) -> Element {
        let f = self.field;
        let mut out = Element::zero();
        for (m, c) in &x.terms {
            for (dm, dc) in self.d_monomial(m).terms {
                out.add_term(f, dm, f.mul(dc, *c));
            }
        }
        out
    }

    /// All monomials of bidegree `d`, in canonical order.
    pub fn monomials_of_degree(&self, d: Bidegree) -> Vec<Monomial> {
        // every variable carries the same internal weight
        let w = if self.n_poly > 0 {
            self.poly_deg.j
        } else {
            self.ext_deg.j
        };
        if d.j % w != 0 || d.j / w < 0 {
            return Vec::new();
        }
        let total = (d.j / w) as usize;
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << self.n_ext) {
            let ne = mask.count_ones() as usize;
            if ne > total {
                continue;
            }
            let np = total - ne;
            if np > 0 && self.n_poly == 0 {
                continue;
            }
            let coh = np as i32 * self.poly_deg.i + ne as i32 * self.ext_deg.i;
            if coh != d.i {
                continue;
            }
            for exps in compositions(np, self.n_poly) {
                out.push(Monomial { exps, mask });
            }
        }
        out.sort();
        out
    }

    /// All monomials of internal degree `j`, any cohomological degree.
    pub fn monomials_of_internal(&self, j: i32) -> Vec<Monomial> {
        let w = if self.n_poly > 0 {
            self.poly_deg.j
        } else {
            self.ext_deg.j
        };
        if j % w != 0 || j / w < 0 {
            return Vec::new();
        }
        let total = (j / w) as usize;
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << self.n_ext) {
            let ne = mask.count_ones() as usize;
            if ne > total {
                continue;
            }
            let np = total - ne;
            if np > 0 && self.n_poly == 0 {
                continue;
            }
            for exps in compositions(np, self.n_poly) {
                out.push(Monomial { exps, mask });
            }
        }
        out.sort();
        out
    }

    /// Dimension table of the algebra itself in internal degrees `[j0, j1]`.
    pub fn dims_in(&self, j0: i32, j1: i32) -> crate::bigraded::BigradedDims {
        let mut t = crate::bigraded::BigradedDims::new();
        for j in j0..=j1 {
            for m in self.monomials_of_internal(j) {
                t.add(self.degree(&m), 1);
            }
        }
        t
    }
}

/// Exponent vectors of length `n` summing to `total`, lexicographically.
pub fn compositions(total: usize, n: usize) -> Vec<Vec<u8>> {
    fn rec(total: usize, n: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if n == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if n == 1 {
            prefix.push(total as u8);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=total {
            prefix.push(k as u8);
            rec(total - k, n - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_exterior() {
        let t = Algebra::new(AlgebraKind::T, 1, 1, 5).unwrap();
        let theta = Element::monomial(t.ext_var(0), 1);
        assert!(t.mul(&theta, &theta).is_zero());
        assert_eq!(t.degree(&t.ext_var(0)), Bidegree::new(-1, 2));
        assert_eq!(t.monomials_of_degree(Bidegree::new(0, 0)).len(), 1);
        assert_eq!(t.monomials_of_degree(Bidegree::new(-1, 2)).len(), 1);
        assert_eq!(t.monomials_of_degree(Bidegree::new(-2, 4)).len(), 0);
    }

    #[test]
    fn rank_one_symmetric() {
        let s = Algebra::new(AlgebraKind::S, 1, 1, 5).unwrap();
        assert_eq!(s.degree(&s.poly_var(0)), Bidegree::new(2, -2));
        for k in 0..5 {
            assert_eq!(s.monomials_of_degree(Bidegree::new(2 * k, -2 * k)).len(), 1);
        }
        assert!(!s.has_differential());
    }

    #[test]
    fn q_with_e_equal_f_is_t() {
        let q = Algebra::new(AlgebraKind::Q, 1, 1, 5).unwrap();
        assert!(!q.has_differential());
        assert_eq!(q.n_poly(), 0);
        assert_eq!(q.n_ext(), 1);
    }

    #[test]
    fn q_differential_squares_to_zero() {
        let q = Algebra::new(AlgebraKind::Q, 3, 1, 7).unwrap();
        for j in 0..=8 {
            for i in -3..=0 {
                for m in q.monomials_of_degree(Bidegree::new(i, j)) {
                    let dm = q.d_monomial(&m);
                    assert!(q.d(&dm).is_zero());
                    assert!(q.is_homogeneous_of(&dm, q.degree(&m) + Bidegree::new(1, 0)));
                }
            }
        }
    }

    #[test]
    fn q_differential_is_a_derivation() {
        let q = Algebra::new(AlgebraKind::Q, 2, 0, 5).unwrap();
        let f = q.field();
        let a = Element::monomial(q.ext_var(0), 1);
        let b = Element::monomial(q.ext_var(1), 1);
        let ab = q.mul(&a, &b);
        // d(ab) = d(a) b - a d(b)
        let mut rhs = q.mul(&q.d(&a), &b);
        rhs.add_assign(f, &q.mul(&a, &q.d(&b)).scale(f, f.neg(1)));
        assert_eq!(q.d(&ab), rhs);
    }

    #[test]
    fn f_greater_than_e_rejected() {
        assert!(Algebra::new(AlgebraKind::S, 1, 2, 5).is_err());
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b01, 0b10), Some(1));
        assert_eq!(wedge_sign(0b10, 0b01), Some(-1));
        assert_eq!(wedge_sign(0b11, 0b01), None);
        assert_eq!(wedge_sign(0b100, 0b011), Some(1));
        assert_eq!(wedge_sign(0b110, 0b001), Some(1));
        assert_eq!(wedge_sign(0b010, 0b101), Some(-1));
    }

    #[test]
    fn compositions_count() {
        // C(k+n-1, n-1)
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(compositions(0, 0).len(), 1);
        assert_eq!(compositions(2, 0).len(), 0);
    }
}
