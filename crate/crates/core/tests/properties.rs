use proptest::prelude::*;

use koszulkit_core::homdual::{check_compat, dualize_s};
use koszulkit_core::lkd::functor_f;
use koszulkit_core::module::Row;
use koszulkit_core::random::{random_module, trial_rng, RandomShape};
use koszulkit_core::{
    Algebra, AlgebraKind, BigradedDims, DgMap, DgObject, Element, Fp, Matrix, Monomial,
    SemifreeDgModule, Window,
};

/// Relabel the polynomial variables: `x_i ↦ x_perm[i]`.
fn permute_variables(m: &SemifreeDgModule, perm: &[usize]) -> SemifreeDgModule {
    let diff = m
        .diff_rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|(&l, e)| {
                    let terms = e
                        .terms
                        .iter()
                        .map(|(mu, &c)| {
                            let mut exps = vec![0; mu.exps.len()];
                            for (i, &x) in mu.exps.iter().enumerate() {
                                exps[perm[i]] = x;
                            }
                            (
                                Monomial {
                                    exps,
                                    mask: mu.mask,
                                },
                                c,
                            )
                        })
                        .collect();
                    (l, Element { terms })
                })
                .collect()
        })
        .collect();
    SemifreeDgModule::new(m.algebra().clone(), m.gens().to_vec(), diff).unwrap()
}

fn matrix() -> impl Strategy<Value = Matrix> {
    (prop::sample::select(vec![3u32, 5, 7]), 1usize..6, 1usize..6).prop_flat_map(|(p, r, c)| {
        prop::collection::vec(0i64..7, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
            Matrix::from_rows(Fp::new(p).unwrap(), &rows)
        })
    })
}

fn dims() -> impl Strategy<Value = BigradedDims> {
    prop::collection::vec(((-4i32..4, -4i32..4), 1usize..4), 0..6)
        .prop_map(BigradedDims::from_entries)
}

fn module(kind: AlgebraKind) -> impl Strategy<Value = SemifreeDgModule> {
    (
        any::<u64>(),
        0usize..=2,
        prop::sample::select(vec![3u32, 5]),
    )
        .prop_map(move |(seed, f, p)| {
            let a = Algebra::new(kind, 2, f, p).unwrap();
            random_module(
                &a,
                RandomShape::default(),
                &mut trial_rng(seed, "properties", 0),
            )
        })
}

fn module_pair(kind: AlgebraKind) -> impl Strategy<Value = (SemifreeDgModule, SemifreeDgModule)> {
    (
        any::<u64>(),
        0usize..=2,
        prop::sample::select(vec![3u32, 5]),
    )
        .prop_map(move |(seed, f, p)| {
            let a = Algebra::new(kind, 2, f, p).unwrap();
            let mut rng = trial_rng(seed, "properties/pair", 0);
            let m = random_module(&a, RandomShape::default(), &mut rng);
            (m, random_module(&a, RandomShape::default(), &mut rng))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(a in matrix()) {
        let k = a.kernel_basis();
        prop_assert_eq!(a.rank() + k.cols(), a.cols());
        prop_assert!(a.mul(&k).unwrap().is_zero());
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn solve_recovers_a_preimage(a in matrix(), seed in any::<u64>()) {
        let x: Vec<u32> = (0..a.cols()).map(|i| ((seed >> (i % 60)) % a.field().p() as u64) as u32).collect();
        let b = a.mul_vec(&x).unwrap();
        let y = a.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(a.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn shifts_and_duals(d in dims(), a in -3i32..3, b in -3i32..3) {
        prop_assert_eq!(d.shift(a, b).shift(-a, -b), d.clone());
        prop_assert_eq!(d.dual_dims().dual_dims(), d.clone());
        prop_assert_eq!(d.shift(a, b).total(), d.total());
        prop_assert_eq!(d.shift(a, b).dual_dims(), d.dual_dims().shift(-a, -b));
    }

    #[test]
    fn random_modules_validate_and_serialize(m in module(AlgebraKind::T)) {
        m.validate().unwrap();
        prop_assert_eq!(SemifreeDgModule::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn d_s_is_an_involution(m in module(AlgebraKind::S)) {
        let d = dualize_s(&m).unwrap();
        d.validate().unwrap();
        prop_assert_eq!(dualize_s(&d).unwrap(), m);
    }

    #[test]
    fn kappa_is_additive((m, n) in module_pair(AlgebraKind::S)) {
        let sum = m.direct_sum(&n).unwrap();
        let lo = sum.internal_range().map_or(0, |r| r.0) - 4;
        let hi = sum.internal_range().map_or(0, |r| r.1);
        let w = Window::internal(lo, hi);
        let h = |x: &SemifreeDgModule| functor_f(x, lo).unwrap().module.cohomology(&w);
        prop_assert_eq!(h(&sum), h(&m).direct_sum(&h(&n)));
    }

    /// Multiplication by `x_0` is a chain map `M<2>[-2] -> M`; its cone obeys
    /// the long exact sequence bound and the Euler characteristic identity.
    #[test]
    fn cone_of_multiplication(m in module(AlgebraKind::S)) {
        prop_assume!(m.spec().f > 0);
        let s = m.algebra().clone();
        let src = m.shift(-2, -2);
        let entries: Vec<Row> = (0..m.rank())
            .map(|k| [(k, Element::monomial(s.poly_var(0), 1))].into_iter().collect())
            .collect();
        let x = DgMap::new(src.clone(), m.clone(), entries).unwrap();
        x.check_chain_map().unwrap();
        let cone = x.cone().unwrap();
        let (lo, hi) = m.internal_range().unwrap();
        let w = Window::internal(lo - 6, hi);
        let (hm, hn, hc) = (src.cohomology(&w), m.cohomology(&w), cone.cohomology(&w));
        for (b, c) in hc.iter() {
            let bound = hn.get(b) + hm.get(koszulkit_core::Bidegree::new(b.i + 1, b.j));
            prop_assert!(c <= bound, "h^{}({}) = {} > {}", b.i, b.j, c, bound);
        }
        let (ec, en, em) = (hc.euler_by_internal(), hn.euler_by_internal(), hm.euler_by_internal());
        for j in w.internal_degrees() {
            let g = |e: &std::collections::BTreeMap<i32, i64>| e.get(&j).copied().unwrap_or(0);
            prop_assert_eq!(g(&ec), g(&en) - g(&em));
        }
    }

    /// The Koszul differential does not depend on the chosen basis of `F`.
    #[test]
    fn koszul_functor_ignores_basis_order(seed in any::<u64>(), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let a = Algebra::new(AlgebraKind::S, 3, 3, 5).unwrap();
        let m = random_module(&a, RandomShape::default(), &mut trial_rng(seed, "properties/perm", 0));
        let mp = permute_variables(&m, &perm);
        mp.validate().unwrap();
        let (lo, hi) = m.internal_range().unwrap();
        let w = Window::internal(lo - 4, hi);
        let h = |x: &SemifreeDgModule| functor_f(x, lo - 4).unwrap().module.cohomology(&w);
        prop_assert_eq!(h(&mp), h(&m));
        let (r, rp) = (check_compat(&m).unwrap(), check_compat(&mp).unwrap());
        prop_assert!(rp.is_equal());
        prop_assert_eq!(rp.lhs, r.lhs);
    }
}
