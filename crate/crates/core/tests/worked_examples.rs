//! Small cases whose answers are known independently of the code.

use koszulkit_core::findim::FinDimDgModule;
use koszulkit_core::homdual::{
    biduality_map, check_compat, dualize_s, dualize_t_formula, dualize_t_res, oracle_compare_t,
};
use koszulkit_core::lkd::{
    counit, functor_f, functor_g, kappa, kappa_inv, regrade_xi, regrade_xi_inv, unit,
};
use koszulkit_core::module::Row;
use koszulkit_core::qmodel::{check_fbot, dualize_q, extend_to_q, pushforward_p, QComparison};
use koszulkit_core::resolution::semifree_resolution;
use koszulkit_core::{
    Algebra, AlgebraKind, Bidegree, BigradedDims, DgMap, DgObject, Element, Fp, Matrix,
    SemifreeDgModule, SliceChainMap, Window,
};

fn alg(kind: AlgebraKind, e: usize, f: usize) -> Algebra {
    Algebra::new(kind, e, f, 5).unwrap()
}

fn dims(entries: &[((i32, i32), usize)]) -> BigradedDims {
    BigradedDims::from_entries(entries.iter().copied())
}

fn wide() -> Window {
    Window::internal(-12, 12)
}

#[test]
fn matrix_examples() {
    let f5 = Fp::new(5).unwrap();
    assert_eq!(Matrix::identity(f5, 2).rank(), 2);
    assert_eq!(Matrix::zeros(f5, 3, 4).rank(), 0);
    let a = Matrix::from_rows(f5, &[vec![1, 2], vec![2, 4]]);
    assert_eq!(a.rank(), 1);
    let k = a.kernel_basis();
    assert_eq!(k.cols(), 1);
    assert!(a.mul(&k).unwrap().is_zero());
    assert_eq!(Matrix::identity(f5, 3).kernel_basis().cols(), 0);
    assert_eq!(Matrix::zeros(f5, 2, 3).kernel_basis().cols(), 3);
    let f3 = Fp::new(3).unwrap();
    let b = Matrix::from_rows(f3, &[vec![1, 1], vec![0, 1]]);
    assert_eq!(b.solve(&[2, 1]).unwrap(), Some(vec![1, 1]));
    assert_eq!(Matrix::zeros(f3, 2, 2).solve(&[1, 0]).unwrap(), None);
}

#[test]
fn algebras() {
    let t = alg(AlgebraKind::T, 1, 1);
    assert_eq!(t.dims_in(-10, 10), dims(&[((0, 0), 1), ((-1, 2), 1)]));
    let s = alg(AlgebraKind::S, 1, 1);
    assert_eq!(s.poly_degree(), Bidegree::new(2, -2));
    // E = F: the big model has no differential and is T
    let q = alg(AlgebraKind::Q, 1, 1);
    assert!(!q.has_differential());
    assert_eq!(q.dims_in(-10, 10), t.dims_in(-10, 10));
}

#[test]
fn cones() {
    let t = alg(AlgebraKind::T, 2, 1);
    let m = SemifreeDgModule::rank_one(t.clone())
        .direct_sum(&SemifreeDgModule::rank_one(t).shift(1, 2))
        .unwrap();
    assert!(DgMap::identity(&m)
        .cone()
        .unwrap()
        .cohomology(&wide())
        .is_empty());
    let zero = DgMap::zero(&m, &m).unwrap();
    let expected = m
        .cohomology(&wide())
        .direct_sum(&m.cohomology(&wide()).shift(1, 0));
    assert_eq!(zero.cone().unwrap().cohomology(&wide()), expected);
    assert!(DgMap::identity(&m).is_quasi_iso(&wide()));
    assert!(!zero.is_quasi_iso(&wide()));
}

#[test]
fn resolution_of_k_over_t() {
    let t = alg(AlgebraKind::T, 1, 1);
    let k = FinDimDgModule::trivial(t, Bidegree::ZERO).unwrap();
    let res = semifree_resolution(&k, 3).unwrap();
    let gens: Vec<Bidegree> = res.module.gens().to_vec();
    assert_eq!(
        gens,
        (0..4)
            .map(|s| Bidegree::new(-2 * s, 2 * s))
            .collect::<Vec<_>>()
    );
    assert!(res.is_quasi_iso(&Window::internal(-2, 6)));
    // D_T(k) through the resolution agrees with the closed formula
    let d = dualize_t_res(&res.module).unwrap();
    let formula = dualize_t_formula(&k).unwrap();
    let w = Window::internal(-2, 4);
    assert_eq!(d.cohomology(&w), formula.cohomology(&w));
    assert_eq!(formula.cohomology(&wide()), dims(&[((-1, 2), 1)]));
}

#[test]
fn koszul_functors() {
    let s = SemifreeDgModule::rank_one(alg(AlgebraKind::S, 1, 1));
    assert_eq!(
        functor_f(&s, -14).unwrap().module.cohomology(&wide()),
        dims(&[((0, 0), 1)])
    );
    let t = alg(AlgebraKind::T, 1, 1);
    let gt = functor_g(&SemifreeDgModule::rank_one(t.clone())).unwrap();
    assert_eq!(gt.cohomology(&wide()), dims(&[((-1, 2), 1)]));
    // f = 0: both functors are the identity on tables
    let s0 = alg(AlgebraKind::S, 2, 0);
    let m = SemifreeDgModule::free(s0, vec![Bidegree::new(1, 2), Bidegree::new(0, -2)]);
    assert_eq!(
        kappa(&m, -14).unwrap().module.cohomology(&wide()),
        m.cohomology(&wide())
    );
    let n = SemifreeDgModule::free(alg(AlgebraKind::T, 2, 0), vec![Bidegree::new(3, 0)]);
    assert_eq!(
        kappa_inv(&n).unwrap().cohomology(&wide()),
        n.cohomology(&wide())
    );
}

#[test]
fn unit_and_counit_on_free_modules() {
    for f in 1..=2 {
        let s = SemifreeDgModule::rank_one(alg(AlgebraKind::S, f, f));
        let (eps, w) = counit(&s, 1).unwrap();
        eps.check_chain_on(&w).unwrap();
        assert!(eps.is_quasi_iso(&w));
        let t = SemifreeDgModule::rank_one(alg(AlgebraKind::T, f, f));
        let (eta, w) = unit(&t, 1).unwrap();
        eta.check_chain_map().unwrap();
        assert!(eta.is_quasi_iso(&w));
    }
}

#[test]
fn regrading() {
    let s = alg(AlgebraKind::S, 1, 1);
    let m = SemifreeDgModule::free(s.clone(), vec![Bidegree::new(2, -2)]);
    let r = regrade_xi(&m).unwrap();
    assert_eq!(r.gens(), &[Bidegree::new(0, -2)]);
    assert_eq!(regrade_xi_inv(&r).unwrap(), m);
}

#[test]
fn dualities() {
    let s = SemifreeDgModule::rank_one(alg(AlgebraKind::S, 2, 2));
    assert_eq!(dualize_s(&s).unwrap(), s);
    assert_eq!(dualize_s(&s.shift(2, -3)).unwrap(), s.shift(-2, 3));
    let t = SemifreeDgModule::rank_one(alg(AlgebraKind::T, 1, 1));
    assert_eq!(dualize_t_res(&t).unwrap(), t);
    assert_eq!(dualize_t_res(&t.shift(1, 2)).unwrap(), t.shift(-1, -2));
    assert!(oracle_compare_t(&t).unwrap().is_equal());

    // cone of θ: T<2>[1] -> T
    let ta = alg(AlgebraKind::T, 1, 1);
    let mut diff = vec![Row::new(), Row::new()];
    diff[1].insert(0, Element::monomial(ta.ext_var(0), 1));
    let cone = SemifreeDgModule::new(ta, vec![Bidegree::ZERO, Bidegree::new(-2, 2)], diff).unwrap();
    assert!(oracle_compare_t(&cone).unwrap().is_equal());
    let ev = biduality_map(&cone).unwrap();
    assert!(ev.is_quasi_iso(&wide()));
}

#[test]
fn compatibility_on_s() {
    let s = SemifreeDgModule::rank_one(alg(AlgebraKind::S, 1, 1));
    let r = check_compat(&s).unwrap();
    assert_eq!(r.verdict, "equal");
    assert_eq!(r.lhs, dims(&[((-1, 2), 1)]));
    assert_eq!(r.rhs, dims(&[((-1, 2), 1)]));
}

#[test]
fn big_model() {
    let n = SemifreeDgModule::rank_one(alg(AlgebraKind::T, 2, 1));
    let q = extend_to_q(&n).unwrap();
    assert_eq!(q.cohomology(&wide()), dims(&[((0, 0), 1), ((-1, 2), 1)]));
    assert!(QComparison::new(&n).unwrap().is_quasi_iso(&wide()));
    let k = extend_to_q(&SemifreeDgModule::rank_one(alg(AlgebraKind::T, 2, 0))).unwrap();
    assert_eq!(k.cohomology(&wide()), dims(&[((0, 0), 1)]));

    let q1 = SemifreeDgModule::rank_one(alg(AlgebraKind::Q, 1, 0));
    assert_eq!(
        pushforward_p(&q1).unwrap().cohomology(&wide()),
        dims(&[((0, 0), 1)])
    );
    assert_eq!(dualize_q(&q1).unwrap(), q1);
    let ev = biduality_map(&q1).unwrap();
    ev.check_chain_map().unwrap();
    assert!(ev.is_quasi_iso(&wide()));
    for (e, f) in [(1, 0), (2, 1), (2, 2)] {
        let m = SemifreeDgModule::rank_one(alg(AlgebraKind::Q, e, f));
        assert!(check_fbot(&m).unwrap().is_equal(), "e={e} f={f}");
        assert!(check_fbot(&m.shift(1, -2)).unwrap().is_equal());
    }
}

#[test]
fn json_round_trip() {
    let t = alg(AlgebraKind::T, 2, 2);
    let mut diff = vec![Row::new(), Row::new()];
    diff[1].insert(0, Element::monomial(t.ext_var(1), 3));
    let m = SemifreeDgModule::new(t, vec![Bidegree::ZERO, Bidegree::new(-2, 2)], diff).unwrap();
    assert_eq!(SemifreeDgModule::from_json(&m.to_json()).unwrap(), m);
    assert!(SemifreeDgModule::from_json("{\"schema\": 1}").is_err());
}
