//! Exact arithmetic in GF(p) and dense linear algebra.
//!
//! Matrices are row-major with entries stored as residues in `[0, p)`.
//! Every cohomology computation in the crate reduces to ranks of these.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field GF(p) for an odd prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::Input(format!("{p} is not an odd prime")));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Reduce a signed integer into `[0, p)`.
    #[inline]
    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, mut a: u32, mut e: u32) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// `(-1)^k` as a field element.
    #[inline]
    pub fn sign(self, k: i64) -> u32 {
        if k.rem_euclid(2) == 0 {
            1
        } else {
            self.p - 1
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense matrix over GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from signed integer rows, reducing mod p.
    pub fn from_rows(field: Fp, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(x));
            }
        }
        m
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: u32) {
        let k = i * self.cols + j;
        self.data[k] = self.field.add(self.data[k], v);
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Input(format!(
                "dimension mismatch: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let p = f.p() as u64;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in other.row(k).iter().enumerate() {
                    if *slot != 0 {
                        acc[j] = (acc[j] + a * *slot as u64) % p;
                    }
                }
            }
            for (j, a) in acc.iter().enumerate() {
                out.set(i, j, *a as u32);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::Input(format!(
                "dimension mismatch: {}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let p = self.field.p() as u64;
        Ok((0..self.rows)
            .map(|i| {
                let s = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |s, (&a, &b)| (s + a as u64 * b as u64) % p);
                s as u32
            })
            .collect())
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: Fp, rows: usize, cols: &[Vec<u32>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let v = self.get(r, j);
                self.set(r, j, f.mul(v, inv));
            }
            let pivot_row: Vec<u32> = self.row(r)[c..].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for (off, &pv) in pivot_row.iter().enumerate() {
                    if pv != 0 {
                        let j = c + off;
                        let v = self.get(i, j);
                        self.set(i, j, f.sub(v, f.mul(factor, pv)));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place();
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate along the shorter side
        if self.rows > self.cols {
            return self.transpose().rank();
        }
        let mut m = self.clone();
        forward_eliminate(&mut m)
    }

    /// Columns form a basis of the right kernel `{x : A x = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (col, &fc) in free.iter().enumerate() {
            k.set(fc, col, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                k.set(pc, col, self.field.neg(r.get(row, fc)));
            }
        }
        k
    }

    /// Solve `A x = b`; `Ok(None)` when inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::Input(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for (i, &bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, bi);
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(row, self.cols);
        }
        Ok(Some(x))
    }
}

/// Row echelon without back-substitution; returns the rank.
fn forward_eliminate(m: &mut Matrix) -> usize {
    let f = m.field;
    let cols = m.cols;
    let mut r = 0;
    for c in 0..cols {
        if r == m.rows {
            break;
        }
        let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                m.data.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m.get(r, c));
        let pivot_row: Vec<(usize, u32)> = (c..cols)
            .filter_map(|j| {
                let v = m.get(r, j);
                (v != 0).then(|| (j, f.mul(v, inv)))
            })
            .collect();
        for i in (r + 1)..m.rows {
            let factor = m.get(i, c);
            if factor == 0 {
                continue;
            }
            for &(j, pv) in &pivot_row {
                let v = m.get(i, j);
                m.set(i, j, f.sub(v, f.mul(factor, pv)));
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn rejects_non_odd_primes() {
        assert!(Fp::new(2).is_err());
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(1).is_err());
        assert!(Fp::new(7).is_ok());
    }

    #[test]
    fn rank_examples() {
        let f = gf(5);
        assert_eq!(Matrix::identity(f, 2).rank(), 2);
        assert_eq!(Matrix::zeros(f, 3, 4).rank(), 0);
        assert_eq!(Matrix::from_rows(f, &[vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let f = gf(5);
        assert_eq!(Matrix::identity(f, 3).kernel_basis().cols(), 0);
        let k = Matrix::zeros(f, 2, 3).kernel_basis();
        assert_eq!(k.cols(), 3);
        assert_eq!(k.rank(), 3);
        let a = Matrix::from_rows(f, &[vec![1, 2], vec![2, 4]]);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 1);
        // x + 2y = 0 over GF(5): (3, 1) up to scaling
        assert_eq!(k.column(0), vec![3, 1]);
        assert!(a.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn solve_examples() {
        let f = gf(3);
        let id = Matrix::identity(f, 2);
        assert_eq!(id.solve(&[2, 1]).unwrap(), Some(vec![2, 1]));
        assert_eq!(Matrix::zeros(f, 2, 2).solve(&[1, 0]).unwrap(), None);
        let a = Matrix::from_rows(f, &[vec![1, 1], vec![0, 1]]);
        assert_eq!(a.solve(&[2, 1]).unwrap(), Some(vec![1, 1]));
        assert!(a.solve(&[1]).is_err());
    }

    #[test]
    fn field_ops() {
        let f = gf(7);
        assert_eq!(f.mul(3, f.inv(3)), 1);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.sign(3), 6);
        assert_eq!(f.sign(-2), 1);
    }
}
