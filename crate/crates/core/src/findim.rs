//! Finite-dimensional dg-modules over an exterior algebra, stored as explicit
//! matrices: the differential and one action matrix per exterior generator.
//!
//! Matrices act on column vectors: `d.get(r, c)` is the coefficient of basis
//! vector `r` in `d(b_c)`, and likewise for `action[k]` and `θ_k · b_c`.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{wedge_sign, Algebra};
use crate::bigraded::Bidegree;
use crate::complex::{DgObject, SliceComplex};
use crate::error::{Error, Result};
use crate::linalg::{Fp, Matrix};
use crate::module::SemifreeDgModule;

#[derive(Clone, Debug, PartialEq)]
pub struct FinDimDgModule {
    algebra: Algebra,
    degrees: Vec<Bidegree>,
    d: Matrix,
    action: Vec<Matrix>,
}

impl FinDimDgModule {
    pub fn new(
        algebra: Algebra,
        degrees: Vec<Bidegree>,
        d: Matrix,
        action: Vec<Matrix>,
    ) -> Result<Self> {
        if algebra.n_poly() != 0 || algebra.has_differential() {
            return Err(Error::Input(format!(
                "finite-dimensional modules need an exterior algebra, got {}",
                algebra.kind()
            )));
        }
        let n = degrees.len();
        let square = |m: &Matrix| m.rows() == n && m.cols() == n;
        if !square(&d) || action.len() != algebra.n_ext() || !action.iter().all(square) {
            return Err(Error::Input("matrix shapes do not match the basis".into()));
        }
        let m = FinDimDgModule {
            algebra,
            degrees,
            d,
            action,
        };
        m.validate()?;
        Ok(m)
    }

    /// The trivial one-dimensional module `k` placed at `deg`.
    pub fn trivial(algebra: Algebra, deg: Bidegree) -> Result<Self> {
        let f = algebra.field();
        let action = vec![Matrix::zeros(f, 1, 1); algebra.n_ext()];
        Self::new(algebra, vec![deg], Matrix::zeros(f, 1, 1), action)
    }

    /// Underlying vector space of a semifree module over an exterior algebra,
    /// in the basis `θ^β g_k` ordered by generator, then by `β`.
    pub fn from_semifree(m: &SemifreeDgModule) -> Result<Self> {
        let a = m.algebra();
        if a.n_poly() != 0 || a.has_differential() {
            return Err(Error::Input(format!(
                "{} is not an exterior algebra",
                a.kind()
            )));
        }
        let f = a.field();
        let basis: Vec<(usize, u32)> = (0..m.rank())
            .flat_map(|k| (0..1u32 << a.n_ext()).map(move |mask| (k, mask)))
            .collect();
        let index: HashMap<(usize, u32), usize> =
            basis.iter().enumerate().map(|(n, b)| (*b, n)).collect();
        let degrees = basis
            .iter()
            .map(|&(k, mask)| m.gens()[k] + a.degree(&mono(a, mask)))
            .collect();
        let n = basis.len();
        let mut d = Matrix::zeros(f, n, n);
        for (col, &(k, mask)) in basis.iter().enumerate() {
            for ((l, mu), c) in m.d_basis(k, &mono(a, mask)) {
                d.add_to(index[&(l, mu.mask)], col, c);
            }
        }
        let action = (0..a.n_ext())
            .map(|i| {
                let mut t = Matrix::zeros(f, n, n);
                for (col, &(k, mask)) in basis.iter().enumerate() {
                    if let Some(s) = wedge_sign(1 << i, mask) {
                        t.set(index[&(k, mask | 1 << i)], col, f.from_i64(s));
                    }
                }
                t
            })
            .collect();
        Self::new(a.clone(), degrees, d, action)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn degrees(&self) -> &[Bidegree] {
        &self.degrees
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn internal_range(&self) -> Option<(i32, i32)> {
        let lo = self.degrees.iter().map(|g| g.j).min()?;
        let hi = self.degrees.iter().map(|g| g.j).max()?;
        Some((lo, hi))
    }

    /// Homogeneity, `d^2 = 0`, `θ_k θ_l = -θ_l θ_k`, `θ_k^2 = 0`, `d θ_k = -θ_k d`.
    pub fn validate(&self) -> Result<()> {
        let check_degree = |m: &Matrix, shift: Bidegree, what: &str| -> Result<()> {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if m.get(r, c) != 0 && self.degrees[r] != self.degrees[c] + shift {
                        return Err(Error::Invalid(format!(
                            "{what} sends basis vector {c} at {} to {r} at {}",
                            self.degrees[c], self.degrees[r]
                        )));
                    }
                }
            }
            Ok(())
        };
        check_degree(&self.d, Bidegree::new(1, 0), "d")?;
        let theta_deg = self.algebra.ext_degree();
        for (k, t) in self.action.iter().enumerate() {
            check_degree(t, theta_deg, &format!("θ_{k}"))?;
        }
        if !self.d.mul(&self.d)?.is_zero() {
            return Err(Error::Invalid("d^2 != 0".into()));
        }
        for (k, a) in self.action.iter().enumerate() {
            let da = self.d.mul(a)?;
            let ad = a.mul(&self.d)?;
            if !sum_is_zero(&da, &ad) {
                return Err(Error::Invalid(format!("d θ_{k} != -θ_{k} d")));
            }
            for (l, b) in self.action.iter().enumerate().skip(k) {
                if !sum_is_zero(&a.mul(b)?, &b.mul(a)?) {
                    return Err(Error::Invalid(format!(
                        "θ_{k} and θ_{l} do not anticommute"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Basis indices grouped by cohomological degree, for one internal degree.
    fn slice_indices(&self, j: i32) -> BTreeMap<i32, Vec<usize>> {
        let mut out: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (n, b) in self.degrees.iter().enumerate() {
            if b.j == j {
                out.entry(b.i).or_default().push(n);
            }
        }
        out
    }

    /// Restrict a full-size matrix to a block given by row and column index lists.
    pub(crate) fn block(m: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(m.field(), rows.len(), cols.len());
        for (r, &rr) in rows.iter().enumerate() {
            for (c, &cc) in cols.iter().enumerate() {
                out.set(r, c, m.get(rr, cc));
            }
        }
        out
    }

    /// Indices of the slice basis at `(i, j)`, in order.
    pub fn indices_at(&self, b: Bidegree) -> Vec<usize> {
        (0..self.dim()).filter(|&n| self.degrees[n] == b).collect()
    }
}

fn mono(a: &Algebra, mask: u32) -> crate::algebra::Monomial {
    crate::algebra::Monomial {
        exps: vec![0; a.n_poly()],
        mask,
    }
}

fn sum_is_zero(a: &Matrix, b: &Matrix) -> bool {
    let f = a.field();
    (0..a.rows()).all(|r| (0..a.cols()).all(|c| f.add(a.get(r, c), b.get(r, c)) == 0))
}

impl DgObject for FinDimDgModule {
    fn field(&self) -> Fp {
        self.algebra.field()
    }

    fn slice(&self, j: i32) -> SliceComplex {
        let idx = self.slice_indices(j);
        let dims = idx.iter().map(|(&i, v)| (i, v.len())).collect();
        let mut s = SliceComplex::new(self.field(), j, dims);
        for (&i, cols) in &idx {
            if let Some(rows) = idx.get(&(i + 1)) {
                let m = Self::block(&self.d, rows, cols);
                if !m.is_zero() {
                    s.diffs.insert(i, m);
                }
            }
        }
        s
    }
}
