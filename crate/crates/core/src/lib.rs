//! Linear Koszul duality between dg-modules over `Sym(F*)` and `Λ(F)` over a
//! point, the homological dualities on both sides, and the block algebras of
//! the restricted enveloping algebra of SL(2).
//!
//! Everything is exact over a prime field GF(p). Bigraded objects are
//! handled one internal degree at a time (see [`complex`]).

pub mod algebra;
pub mod bigraded;
pub mod complex;
pub mod error;
pub mod findim;
pub mod homdual;
pub mod linalg;
pub mod lkd;
pub mod module;
pub mod qmodel;
pub mod random;
pub mod resolution;
pub mod sl2;
pub mod suites;

pub use algebra::{Algebra, AlgebraKind, AlgebraSpec, Element, Monomial};
pub use bigraded::{Bidegree, BigradedDims, Window, SHIFT_CONVENTION};
pub use complex::{DgObject, SliceChainMap, SliceComplex, SliceMap};
pub use error::{Error, Result};
pub use linalg::{Fp, Matrix};
pub use module::{DgMap, SemifreeDgModule};
