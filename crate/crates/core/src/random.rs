//! Seeded random semifree modules.
//!
//! Modules are built by cell attachment: start from a few free generators,
//! then repeatedly pick a random cocycle `z` of the current module and adjoin
//! a generator `g` with `d g = z`. Every intermediate module satisfies
//! `d^2 = 0` by construction, so nothing is ever rejected.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, AlgebraKind, Element};
use crate::bigraded::Bidegree;
use crate::complex::DgObject;
use crate::module::{DgMap, Row, SemifreeDgModule};

/// Stream for trial `trial` of the run labelled `label` under `seed`.
/// Independent of execution order, so parallel and serial runs agree.
pub fn trial_rng(seed: u64, label: &str, trial: u64) -> ChaCha8Rng {
    // FNV-1a keeps the label mixing stable across platforms and releases
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in label.bytes() {
        h ^= byte as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ h);
    rng.set_stream(trial);
    rng
}

/// Bounds for generated modules.
#[derive(Clone, Copy, Debug)]
pub struct RandomShape {
    pub max_gens: usize,
    /// Cohomological degrees of the free generators lie in `[-spread, spread]`.
    pub spread: i32,
    /// When false, no cells are attached and the differential is zero.
    pub with_differential: bool,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape {
            max_gens: 4,
            spread: 2,
            with_differential: true,
        }
    }
}

/// A random semifree module over `a`.
pub fn random_module(a: &Algebra, shape: RandomShape, rng: &mut impl Rng) -> SemifreeDgModule {
    let fld = a.field();
    let total = rng.gen_range(1..=shape.max_gens);
    let free = if shape.with_differential {
        rng.gen_range(1..=total.min(2))
    } else {
        total
    };
    let gens: Vec<Bidegree> = (0..free)
        .map(|_| {
            Bidegree::new(
                rng.gen_range(-shape.spread..=shape.spread),
                2 * rng.gen_range(-1..=1),
            )
        })
        .collect();
    let mut m = SemifreeDgModule::free(a.clone(), gens);
    // multiplication moves internal degree down over S and R, up otherwise
    let step = match a.kind() {
        AlgebraKind::S | AlgebraKind::R => -2,
        _ => 2,
    };
    let mut attempts = 0;
    while m.rank() < total && attempts < 16 {
        attempts += 1;
        let base = m.gens().choose(rng).expect("at least one generator").j;
        let j = base + step * rng.gen_range(0..=2);
        let basis = m.slice_basis(j);
        let slice = m.slice(j);
        let degrees: Vec<i32> = basis.keys().copied().collect();
        let Some(&i) = degrees.choose(rng) else {
            continue;
        };
        let z = slice.cocycles(i);
        if z.cols() == 0 {
            continue;
        }
        let coeffs: Vec<u32> = (0..z.cols()).map(|_| rng.gen_range(0..fld.p())).collect();
        let v = z.mul_vec(&coeffs).expect("shapes agree");
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let mut row = Row::new();
        for (c, (l, mu)) in basis[&i].iter().enumerate() {
            if v[c] != 0 {
                row.entry(*l)
                    .or_insert_with(Element::zero)
                    .add_term(fld, mu.clone(), v[c]);
            }
        }
        let mut gens = m.gens().to_vec();
        gens.push(Bidegree::new(i - 1, j));
        let mut diff = m.diff_rows().to_vec();
        diff.push(row);
        m = SemifreeDgModule::new(a.clone(), gens, diff)
            .expect("cell attachment preserves d^2 = 0");
    }
    m
}

/// `cone(id_M)` for a random `M`: acyclic by construction.
pub fn random_acyclic(a: &Algebra, shape: RandomShape, rng: &mut impl Rng) -> SemifreeDgModule {
    let m = random_module(a, shape, rng);
    DgMap::identity(&m).cone().expect("identity is a chain map")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraded::Window;

    #[test]
    fn generated_modules_validate() {
        for kind in [AlgebraKind::S, AlgebraKind::T, AlgebraKind::Q] {
            let a = Algebra::new(kind, 3, 2, 5).unwrap();
            for t in 0..20 {
                let mut rng = trial_rng(11, "validate", t);
                let m = random_module(&a, RandomShape::default(), &mut rng);
                m.validate().unwrap();
                assert!(m.rank() <= 4);
            }
        }
    }

    #[test]
    fn same_seed_same_module() {
        let a = Algebra::new(AlgebraKind::S, 2, 2, 3).unwrap();
        let m1 = random_module(&a, RandomShape::default(), &mut trial_rng(7, "x", 3));
        let m2 = random_module(&a, RandomShape::default(), &mut trial_rng(7, "x", 3));
        assert_eq!(m1, m2);
    }

    #[test]
    fn cones_of_identity_are_acyclic() {
        let a = Algebra::new(AlgebraKind::T, 2, 2, 3).unwrap();
        let m = random_acyclic(&a, RandomShape::default(), &mut trial_rng(1, "acyclic", 0));
        assert!(m.cohomology(&Window::internal(-12, 12)).is_empty());
    }

    #[test]
    fn some_differentials_are_nonzero() {
        let a = Algebra::new(AlgebraKind::S, 2, 2, 5).unwrap();
        let nonzero = (0..40)
            .filter(|&t| {
                let m = random_module(&a, RandomShape::default(), &mut trial_rng(3, "nz", t));
                m.diff_rows().iter().any(|r| !r.is_empty())
            })
            .count();
        assert!(
            nonzero > 5,
            "only {nonzero} of 40 modules have a differential"
        );
    }
}
