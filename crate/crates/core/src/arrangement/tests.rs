use super::*;
use crate::exact::rational::int;
use crate::fixtures::{self, lf};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn generic(n: usize, hs: Vec<LinearFunctional>) -> Arrangement {
    Arrangement::new(n, hs, Infinity::Generic).unwrap()
}

fn four_generic_lines() -> Arrangement {
    generic(2, vec![lf(0, &[1, 0]), lf(0, &[0, 1]), lf(-1, &[1, 1]), lf(3, &[1, -2])])
}

fn idx(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.iter().map(|i| i + 1).collect()).collect()
}

#[test]
fn rejects_proportional_and_constant_functionals() {
    assert!(Arrangement::new(1, vec![lf(1, &[1]), lf(2, &[2])], Infinity::Generic).is_err());
    assert!(Arrangement::new(1, vec![lf(1, &[0])], Infinity::Generic).is_err());
    assert!(Arrangement::new(2, vec![lf(1, &[1])], Infinity::Generic).is_err());
    assert!(Arrangement::new(1, vec![lf(1, &[1])], Infinity::Explicit(lf(-3, &[-3]))).is_err());
}

#[test]
fn three_generic_lines_poset() {
    let poset = fixtures::unit_triangle().flat_poset();
    let ranks: Vec<usize> = poset.flats().iter().map(|f| f.rank).collect();
    assert_eq!(ranks, vec![0, 1, 1, 1, 2, 2, 2, 3]);
    // μ: 1, -1 ×3, 1 ×3, then -(1 - 3 + 3) = -1
    let top = poset.top().unwrap();
    assert_eq!(poset.moebius(top), -1);
    assert_eq!(poset.combinatorial_rank(), 1);
    assert!(poset.moebius_recursion_holds());
    assert!(poset.is_graded());
}

#[test]
fn single_hyperplane_is_not_essential() {
    let poset = generic(3, vec![lf(1, &[1, 2, 3])]).flat_poset();
    assert_eq!(poset.flats().len(), 2);
    assert!(!poset.is_essential());
    assert_eq!(poset.combinatorial_rank(), 0);
}

#[test]
fn four_generic_lines_moebius() {
    // 1 - 4 + 6 points, so μ(1̂) = -3
    let arr = four_generic_lines();
    let poset = arr.flat_poset();
    assert_eq!(poset.flats().iter().filter(|f| f.rank == 2).count(), 6);
    assert_eq!(poset.moebius(poset.top().unwrap()), -3);
    assert_eq!(arr.combinatorial_rank_moebius(), 3);
}

#[test]
fn concurrent_pencil_has_rank_zero() {
    let arr = generic(3, vec![lf(0, &[1, 0, 0]), lf(0, &[0, 1, 0]), lf(0, &[1, 1, 0])]);
    assert_eq!(arr.combinatorial_rank_moebius(), 0);
}

#[test]
fn flat_affine_parts() {
    let poset = fixtures::unit_triangle().flat_poset();
    let x_axis = poset.flats().iter().find(|f| f.closure == vec![2]).unwrap();
    assert_eq!(x_axis.basepoint, Some(vec![int(0), int(0)]));
    assert_eq!(x_axis.direction_basis, vec![vec![int(1), int(0)]]);
    let corner = poset.flats().iter().find(|f| f.closure == vec![2, 3]).unwrap();
    assert_eq!(corner.basepoint, Some(vec![int(1), int(0)]));
    assert!(corner.direction_basis.is_empty());
    let closure = fixtures::unit_triangle().projective_closure().flat_poset();
    let at_infinity = closure.flats().iter().find(|f| f.closure == vec![0]).unwrap();
    assert_eq!(at_infinity.basepoint, None);
}

#[test]
fn circuits_of_examples() {
    assert_eq!(idx(&fixtures::square_pyramid().circuits()), vec![vec![1, 2, 3, 4]]);
    assert!(fixtures::unit_triangle().circuits().is_empty());
    assert!(generic(2, vec![lf(0, &[1, 0]), lf(-1, &[1, 0])]).circuits().is_empty());
    assert_eq!(idx(&fixtures::four_lines().circuits()), vec![vec![1, 2, 3]]);
}

#[test]
fn nbc_sets_of_examples() {
    let pyr = fixtures::square_pyramid();
    assert_eq!(
        idx(&pyr.nbc_sets(3)),
        vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 2, 5], vec![1, 3, 4], vec![1, 4, 5], vec![2, 3, 5], vec![3, 4, 5]]
    );
    assert_eq!(pyr.nbc_sets(0), vec![Vec::<usize>::new()]);
    assert_eq!(idx(&fixtures::unit_triangle().nbc_sets(2)), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
    for s in pyr.nbc_sets(2).iter().chain(&pyr.nbc_sets(3)) {
        assert!(pyr.is_independent(s));
        assert_eq!(pyr.rank_of_set(s), s.len());
    }
}

#[test]
fn explicit_infinity_changes_intersections() {
    // Two parallel lines meet at the chart's infinity; with H0 = x + y - 1
    // they meet inside the chart.
    let hs = vec![lf(0, &[1, 0]), lf(-1, &[1, 0])];
    assert!(!generic(2, hs.clone()).intersects(&[0, 1]));
    let arr = Arrangement::new(2, hs, Infinity::Explicit(lf(-1, &[1, 1]))).unwrap();
    assert!(arr.intersects(&[0, 1]));
    assert_eq!(arr.nbc_sets(2).len(), 1);
}

#[test]
fn bounded_regions_of_examples() {
    let tri = fixtures::unit_triangle().bounded_regions().unwrap();
    assert_eq!(tri.len(), 1);
    assert_eq!(tri[0].signs, vec![1, 1, 1]);
    assert_eq!(four_generic_lines().bounded_regions().unwrap().len(), 3);
    let five = fixtures::five_lines();
    assert_eq!(five.bounded_regions().unwrap().len(), 5);
    assert_eq!(five.deletion(1).unwrap().bounded_regions().unwrap().len(), 3);
    let restricted = five.restriction(1).unwrap().arrangement;
    assert_eq!(restricted.bounded_regions().unwrap().len(), 2);
    for r in &tri {
        assert_eq!(fixtures::unit_triangle().sign_vector_at(&r.witness).unwrap(), r.signs);
    }
}

#[test]
fn non_generic_infinity_is_reported() {
    match fixtures::hypercube(2).bounded_regions() {
        Err(Error::NonGenericInfinity { flat }) => assert_eq!(flat, "{1,2}"),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(
        fixtures::unit_triangle().projective_closure().bounded_regions(),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn sign_vectors_at_points() {
    let tri = fixtures::unit_triangle();
    assert_eq!(tri.sign_vector_at(&fixtures::point(&[(1, 3), (1, 7)])).unwrap(), vec![1, 1, 1]);
    assert!(matches!(tri.sign_vector_at(&[int(0), int(0)]), Err(Error::Degenerate(_))));
    let pyr = fixtures::square_pyramid();
    assert_eq!(pyr.sign_vector_at(&fixtures::square_pyramid_interior()).unwrap(), vec![1; 5]);
}

#[test]
fn restriction_of_square_to_top_edge() {
    let r = fixtures::hypercube(2).restriction(3).unwrap();
    assert_eq!(r.arrangement.ambient_dim(), 1);
    assert_eq!(r.arrangement.hyperplanes(), &[lf(0, &[1]), lf(-1, &[1])]);
    assert_eq!(r.index_map, vec![Some(0), Some(1), None, None]);
}

#[test]
fn restriction_of_pyramid() {
    let base = fixtures::square_pyramid().restriction(4).unwrap();
    assert_eq!(
        base.arrangement.hyperplanes(),
        &[lf(1, &[1, 0]), lf(1, &[0, 1]), lf(1, &[-1, 0]), lf(1, &[0, -1])]
    );
    // On H4 (y = -z), chart (x, z): x - z, -2z, -x - z, z + 1.
    let side = fixtures::square_pyramid().restriction(3).unwrap();
    assert_eq!(side.pivot, 1);
    assert_eq!(
        side.arrangement.hyperplanes(),
        &[lf(0, &[1, -1]), lf(0, &[0, -2]), lf(0, &[-1, -1]), lf(1, &[0, 1])]
    );
    assert_eq!(side.index_map, vec![Some(0), Some(1), Some(2), None, Some(3)]);
    let p = side.lift_point(&[int(0), int(-1)]);
    assert_eq!(p, vec![int(0), int(1), int(-1)]);
}

#[test]
fn deletion_and_restriction_commute() {
    let pyr = fixtures::square_pyramid();
    // delete H1 then restrict to old H5, versus restrict to H5 then delete the trace of H1
    let a = pyr.deletion(0).unwrap().restriction(3).unwrap().arrangement;
    let r = pyr.restriction(4).unwrap();
    let b = r.arrangement.deletion(r.index_map[0].unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn json_round_trip() {
    let text = r#"{"ambient_dim":2,"variables":["x","y"],"hyperplanes":[{"name":"H1","constant":"0","linear":["1","0"]},{"name":"H2","constant":"-1/2","linear":["1","1"]}],"infinity":"generic"}"#;
    let arr = Arrangement::from_json_str(text).unwrap();
    assert_eq!(serde_json::to_string(&arr.to_json()).unwrap(), text);
    let explicit = r#"{"ambient_dim":1,"hyperplanes":[{"constant":"0","linear":["1"]}],"infinity":{"explicit":{"constant":"1","linear":["1"]}}}"#;
    let arr = Arrangement::from_json_str(explicit).unwrap();
    assert_eq!(arr.infinity(), &Infinity::Explicit(lf(1, &[1])));
    assert!(Arrangement::from_json_str(r#"{"ambient_dim":1,"hyperplanes":[],"infinity":"sideways"}"#).is_err());
    assert!(matches!(
        Arrangement::from_json_str(r#"{"ambient_dim":2,"hyperplanes":[{"constant":"0","linear":["1"]}]}"#),
        Err(Error::Parse { .. })
    ));
}

fn random_arrangement(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Arrangement {
    let mut hs: Vec<LinearFunctional> = Vec::new();
    while hs.len() < count {
        let g: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..3)).collect();
        if g.iter().all(|&x| x == 0) {
            continue;
        }
        let f = lf(rng.gen_range(-2..3), &g);
        if hs.iter().any(|h| h.same_hyperplane(&f)) {
            continue;
        }
        hs.push(f);
    }
    generic(n, hs)
}

#[test]
fn nbc_count_matches_moebius_rank_of_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..15 {
        let n = rng.gen_range(2..=3);
        let count = rng.gen_range(n..=6);
        let arr = random_arrangement(&mut rng, n, count);
        let closure = arr.projective_closure();
        assert_eq!(arr.nbc_sets(n).len() as i64, closure.combinatorial_rank_moebius(), "{arr}");
        let poset = closure.flat_poset();
        assert!(poset.moebius_recursion_holds());
        assert!(poset.is_graded());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn flats_are_order_insensitive(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=3);
        let count = rng.gen_range(2..=5);
        let arr = random_arrangement(&mut rng, n, count);
        let mut order: Vec<usize> = (0..arr.len()).collect();
        order.shuffle(&mut rng);
        let perm = arr.permuted(&order).unwrap();
        let relabel = |f: &Flat| -> Vec<usize> {
            let mut c: Vec<usize> = f.closure.iter().map(|&l| order[l - 1] + 1).collect();
            c.sort();
            c
        };
        let mut a: Vec<(Vec<usize>, Option<Vec<Rational>>, Vec<Vec<Rational>>)> = arr
            .flat_poset().flats().iter().map(|f| (f.closure.clone(), f.basepoint.clone(), f.direction_basis.clone())).collect();
        let mut b: Vec<(Vec<usize>, Option<Vec<Rational>>, Vec<Vec<Rational>>)> = perm
            .flat_poset().flats().iter().map(|f| (relabel(f), f.basepoint.clone(), f.direction_basis.clone())).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert_eq!(arr.combinatorial_rank_moebius(), perm.combinatorial_rank_moebius());
        prop_assert_eq!(arr.nbc_sets(n).len(), perm.nbc_sets(n).len());
    }
}
