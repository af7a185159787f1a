//! Bidegrees, dimension tables of bigraded vector spaces, and the two shifts.
//!
//! Shift convention, used everywhere in the crate:
//! `M[a]<b>` has `(M[a]<b>)^i_j = M^{i+a}_{j-b}`, so `[1]` lowers the
//! cohomological degree of an element by one and `<1>` raises its internal
//! degree by one.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// One-line statement of the shift convention, printed in report headers.
pub const SHIFT_CONVENTION: &str = "M[a]<b>^i_j = M^(i+a)_(j-b)";

/// (cohomological degree, internal degree).
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct Bidegree {
    pub i: i32,
    pub j: i32,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { i: 0, j: 0 };

    pub const fn new(i: i32, j: i32) -> Self {
        Bidegree { i, j }
    }

    /// Where an element of bidegree `self` lands inside `M[a]<b>`.
    pub fn shifted(self, a: i32, b: i32) -> Self {
        Bidegree::new(self.i - a, self.j + b)
    }

    /// Cohomological parity, the only thing Koszul signs depend on.
    pub fn parity(self) -> i64 {
        self.i.rem_euclid(2) as i64
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.i + o.i, self.j + o.j)
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.i - o.i, self.j - o.j)
    }
}

impl Neg for Bidegree {
    type Output = Bidegree;
    fn neg(self) -> Bidegree {
        Bidegree::new(-self.i, -self.j)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Sparse table `Bidegree -> dimension`; absent entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedDims {
    table: BTreeMap<Bidegree, usize>,
}

impl BigradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((i32, i32), usize)>) -> Self {
        let mut d = Self::new();
        for ((i, j), n) in entries {
            d.add(Bidegree::new(i, j), n);
        }
        d
    }

    pub fn get(&self, b: Bidegree) -> usize {
        self.table.get(&b).copied().unwrap_or(0)
    }

    pub fn add(&mut self, b: Bidegree, n: usize) {
        if n > 0 {
            *self.table.entry(b).or_insert(0) += n;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn total(&self) -> usize {
        self.table.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.table.iter().map(|(b, n)| (*b, *n))
    }

    /// Table of `M[a]<b>`: `D'(i,j) = D(i+a, j-b)`.
    pub fn shift(&self, a: i32, b: i32) -> Self {
        BigradedDims {
            table: self
                .table
                .iter()
                .map(|(d, n)| (d.shifted(a, b), *n))
                .collect(),
        }
    }

    /// Table of the linear dual: `D'(i,j) = D(-i,-j)`.
    pub fn dual_dims(&self) -> Self {
        BigradedDims {
            table: self.table.iter().map(|(d, n)| (-*d, *n)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, n) in other.iter() {
            out.add(b, n);
        }
        out
    }

    /// Keep only the entries inside `w`.
    pub fn restrict(&self, w: &Window) -> Self {
        BigradedDims {
            table: self
                .table
                .iter()
                .filter(|(b, _)| w.contains(**b))
                .map(|(b, n)| (*b, *n))
                .collect(),
        }
    }

    /// Alternating sum over cohomological degree, per internal degree.
    pub fn euler_by_internal(&self) -> BTreeMap<i32, i64> {
        let mut out = BTreeMap::new();
        for (b, n) in self.iter() {
            let s = if b.i.rem_euclid(2) == 0 { 1 } else { -1 };
            *out.entry(b.j).or_insert(0) += s * n as i64;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Lexicographically sorted `[i, j, dim]` triples.
    pub fn triples(&self) -> Vec<[i64; 3]> {
        self.iter()
            .map(|(b, n)| [b.i as i64, b.j as i64, n as i64])
            .collect()
    }

    /// First bidegree (in lexicographic order) where the two tables differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<Bidegree> {
        let mut keys: Vec<Bidegree> = self
            .table
            .keys()
            .chain(other.table.keys())
            .copied()
            .collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find(|&b| self.get(b) != other.get(b))
    }
}

impl Serialize for BigradedDims {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.triples().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BigradedDims {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let triples: Vec<[i64; 3]> = Vec::deserialize(d)?;
        let mut out = BigradedDims::new();
        for [i, j, n] in triples {
            if n < 0 {
                return Err(serde::de::Error::custom("negative dimension"));
            }
            out.add(Bidegree::new(i as i32, j as i32), n as usize);
        }
        Ok(out)
    }
}

impl fmt::Display for BigradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(b, n)| format!("{b}:{n}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Rectangle of bidegrees `[i0, i1] x [j0, j1]`, bounds inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub i0: i32,
    pub i1: i32,
    pub j0: i32,
    pub j1: i32,
}

impl Window {
    pub fn new(i0: i32, i1: i32, j0: i32, j1: i32) -> Self {
        Window { i0, i1, j0, j1 }
    }

    /// All cohomological degrees, internal degrees `[j0, j1]`.
    pub fn internal(j0: i32, j1: i32) -> Self {
        Window::new(-1000, 1000, j0, j1)
    }

    pub fn contains(&self, b: Bidegree) -> bool {
        (self.i0..=self.i1).contains(&b.i) && (self.j0..=self.j1).contains(&b.j)
    }

    pub fn internal_degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.j0..=self.j1
    }

    pub fn shift(&self, a: i32, b: i32) -> Self {
        Window::new(self.i0 - a, self.i1 - a, self.j0 + b, self.j1 + b)
    }
}

impl FromStr for Window {
    type Err = Error;

    /// Parses `i0:i1,j0:j1`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Input(format!("window must look like i0:i1,j0:j1, got {s:?}"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let range = |t: &str| -> Result<(i32, i32), Error> {
            let (x, y) = t.split_once(':').ok_or_else(bad)?;
            let x = x.trim().parse().map_err(|_| bad())?;
            let y = y.trim().parse().map_err(|_| bad())?;
            if x > y {
                return Err(bad());
            }
            Ok((x, y))
        };
        let (i0, i1) = range(a)?;
        let (j0, j1) = range(b)?;
        Ok(Window::new(i0, i1, j0, j1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn shift_examples() {
        let d = BigradedDims::from_entries([((0, 0), 1)]);
        assert_eq!(d.shift(0, 0), d);
        assert_eq!(d.shift(1, 2), BigradedDims::from_entries([((-1, 2), 1)]));
    }

    #[test]
    fn dual_examples() {
        let d = BigradedDims::from_entries([((2, -2), 1)]);
        assert_eq!(d.dual_dims(), BigradedDims::from_entries([((-2, 2), 1)]));
        let sym = BigradedDims::from_entries([((1, 1), 2), ((-1, -1), 2), ((0, 0), 3)]);
        assert_eq!(sym.dual_dims(), sym);
    }

    #[test]
    fn serializes_as_sorted_triples() {
        let d = BigradedDims::from_entries([((1, 0), 2), ((-1, 2), 1), ((-1, -3), 4)]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, "[[-1,-3,4],[-1,2,1],[1,0,2]]");
        let back: BigradedDims = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn window_parse() {
        let w: Window = "-3:4,-10:2".parse().unwrap();
        assert_eq!(w, Window::new(-3, 4, -10, 2));
        assert!("1:0,0:1".parse::<Window>().is_err());
        assert!("garbage".parse::<Window>().is_err());
    }

    fn table() -> impl Strategy<Value = BigradedDims> {
        proptest::collection::vec(((-6i32..6, -6i32..6), 1usize..4), 0..8)
            .prop_map(BigradedDims::from_entries)
    }

    proptest! {
        #[test]
        fn shift_is_a_group_action(d in table(), a in -4i32..4, b in -4i32..4, c in -4i32..4, e in -4i32..4) {
            prop_assert_eq!(d.shift(a, b).shift(c, e), d.shift(a + c, b + e));
            prop_assert_eq!(d.shift(a, b).shift(-a, -b), d.clone());
            prop_assert_eq!(d.total(), d.shift(a, b).total());
        }

        #[test]
        fn dual_intertwines_shift(d in table(), a in -4i32..4, b in -4i32..4) {
            prop_assert_eq!(d.shift(a, b).dual_dims(), d.dual_dims().shift(-a, -b));
            prop_assert_eq!(d.dual_dims().dual_dims(), d);
        }
    }
}
