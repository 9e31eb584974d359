use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::arrangement::combinations;
use crate::exact::rational::{frac, int};
use crate::fixtures::{self, lf, point};

fn region(arr: Arrangement, p: Vec<Rational>) -> Region {
    Region::from_point(Arc::new(arr), &p).unwrap()
}

fn quadrant_sign(n: usize) -> i32 {
    if (n * (n + 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

#[test]
fn interval_boundary_is_end_minus_start() {
    let r = region(fixtures::interval(int(0), int(1)), vec![frac(1, 2)]);
    let top = OrientedFace::of_region(&r);
    assert_eq!(top.partial_boundary(0).unwrap().value(), -1);
    assert_eq!(top.partial_boundary(1).unwrap().value(), 1);
}

#[test]
fn square_top_edge_runs_right_to_left() {
    let r = region(fixtures::hypercube(2), fixtures::hypercube_centre(2));
    let FaceBoundary::Face(top) = OrientedFace::of_region(&r).partial_boundary(3).unwrap() else {
        panic!("top edge missing");
    };
    let dx = &top.basis()[0][0] * int(top.sign().into());
    assert!(dx < int(0));
    assert_eq!(r.facets(), vec![0, 1, 2, 3]);
    assert_eq!(r.vertices().len(), 4);
}

#[test]
fn pyramid_iterated_boundaries() {
    let r = region(fixtures::square_pyramid(), fixtures::square_pyramid_interior());
    let expected = [
        (vec![0, 1, 2], -1),
        (vec![0, 1, 3], 0),
        (vec![0, 1, 4], 1),
        (vec![0, 2, 3], -1),
        (vec![0, 3, 4], -1),
        (vec![1, 2, 4], 1),
        (vec![2, 3, 4], 1),
    ];
    for (set, value) in expected {
        assert_eq!(r.iterated_boundary(&set).unwrap(), value, "I = {set:?}");
    }
    assert!(matches!(r.iterated_boundary(&[0, 2, 4]), Err(Error::Precondition(_))));
}

#[test]
fn four_lines_corner_through_triple_point() {
    let r = region(fixtures::four_lines(), fixtures::four_lines_triangle());
    assert_eq!(r.iterated_boundary(&[0, 1]).unwrap(), -1);
    // L1 touches the triangle only at a vertex
    assert_eq!(r.boundary_chain(&[0, 1]).unwrap().value(), 0);
    assert!(matches!(
        r.vertex_sign_shortcut(&[1, 2]),
        Err(Error::NonSimpleVertex { facets: 3, .. })
    ));
}

#[test]
fn quadrant_sign_pattern() {
    for n in 1..=4 {
        let r = region(fixtures::quadrant(n), vec![int(1); n]);
        let all: Vec<usize> = (0..n).collect();
        assert_eq!(r.iterated_boundary(&all).unwrap(), quadrant_sign(n), "n = {n}");
        assert_eq!(r.vertex_sign_shortcut(&all).unwrap(), quadrant_sign(n));
    }
}

#[test]
fn unit_triangle_vertex_signs() {
    let r = region(fixtures::unit_triangle(), point(&[(1, 4), (1, 4)]));
    for (set, value) in [(vec![0, 1], -1), (vec![1, 2], -1), (vec![0, 2], 1)] {
        assert_eq!(r.iterated_boundary(&set).unwrap(), value);
        assert_eq!(r.vertex_sign_shortcut(&set).unwrap(), value);
    }
}

#[test]
fn chain_order_is_antisymmetric() {
    let r = region(fixtures::unit_triangle(), point(&[(1, 4), (1, 4)]));
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        let ab = r.boundary_chain(&[a, b]).unwrap().value();
        let ba = r.boundary_chain(&[b, a]).unwrap().value();
        assert_eq!(ab, -ba);
        assert_ne!(ab, 0);
    }
}

#[test]
fn reversing_orientation_negates() {
    let r = region(fixtures::square_pyramid(), fixtures::square_pyramid_interior());
    let rev = r.reversed();
    for set in r.arrangement().nbc_sets(3) {
        assert_eq!(r.iterated_boundary(&set).unwrap(), -rev.iterated_boundary(&set).unwrap());
    }
}

#[test]
fn boundary_is_independent_of_face_bases() {
    let r = region(fixtures::hypercube(3), fixtures::hypercube_centre(3));
    let shear = |f: &OrientedFace| {
        let d = f.dim();
        let t: Vec<Vec<Rational>> = (0..d)
            .map(|i| (0..d).map(|j| if j == i { int(-2) } else if j == (i + 1) % d { int(1) } else { int(0) }).collect())
            .collect();
        if d == 0 {
            Ok(f.clone())
        } else {
            f.rebased(&t)
        }
    };
    for set in r.arrangement().nbc_sets(3) {
        assert_eq!(
            r.iterated_boundary(&set).unwrap(),
            r.iterated_boundary_rebased(&set, shear).unwrap(),
            "I = {set:?}"
        );
    }
}

#[test]
fn rebase_rejects_singular_change() {
    let r = region(fixtures::hypercube(2), fixtures::hypercube_centre(2));
    let top = OrientedFace::of_region(&r);
    assert!(top.rebased(&[vec![int(1), int(1)], vec![int(2), int(2)]]).is_err());
}

#[test]
fn boundaries_are_additive_under_cuts() {
    let r = region(fixtures::hypercube(2), fixtures::hypercube_centre(2));
    let (plus, minus, extended) = r.cut(&lf(0, &[-1, 1])).unwrap();
    let cut = extended.len() - 1;
    for set in combinations(extended.len(), 2) {
        if !extended.is_independent(&set) {
            continue;
        }
        let total = plus.iterated_boundary(&set).unwrap() + minus.iterated_boundary(&set).unwrap();
        let expected = if set.contains(&cut) { 0 } else { r.iterated_boundary(&set).unwrap() };
        assert_eq!(total, expected, "I = {set:?}");
    }
    assert!(matches!(r.cut(&lf(-5, &[1, 0])), Err(Error::NoCut)));
}

#[test]
fn facet_region_carries_induced_orientation() {
    let r = region(fixtures::hypercube(2), fixtures::hypercube_centre(2));
    let (facet, restriction) = r.facet_region(3).unwrap().unwrap();
    assert_eq!(facet.ambient_dim(), 1);
    assert_eq!(facet.orientation(), -1);
    assert_eq!(restriction.hyperplane, 3);
    // the two-step boundary equals the boundary of the induced region
    for (i, j) in restriction.index_map.iter().enumerate().filter_map(|(i, j)| j.map(|j| (i, j))) {
        let direct = r.boundary_chain(&[3, i]).unwrap().value();
        let induced = OrientedFace::of_region(&facet).partial_boundary(j).unwrap().value();
        assert_eq!(direct, induced, "H_{}", i + 1);
    }
    assert!(r.facet_region(3).unwrap().is_some());
    let t = region(fixtures::four_lines(), fixtures::four_lines_triangle());
    assert!(t.facet_region(0).unwrap().is_none());
}

#[test]
fn json_round_trip_and_inline_points() {
    let arr = Arc::new(fixtures::unit_triangle());
    let r = Region::parse(arr.clone(), "1/4,1/4").unwrap().reversed();
    let text = serde_json::to_string(&r.to_json()).unwrap();
    let back = Region::parse(arr.clone(), &text).unwrap();
    assert_eq!(back.orientation(), -1);
    assert_eq!(back.signs(), r.signs());
    assert!(matches!(Region::parse(arr.clone(), "0,1/2"), Err(Error::Degenerate(_))));
    assert!(Region::parse(arr, "1/4").is_err());
}

#[test]
fn bounded_regions_are_detected() {
    let arr = fixtures::four_lines();
    assert!(region(arr.clone(), fixtures::four_lines_triangle()).is_bounded());
    assert!(!region(arr, point(&[(5, 1), (5, 1)])).is_bounded());
}

fn random_lines() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((-6i64..=6, -6i64..=6, -6i64..=6), 3..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shortcut_agrees_with_iterated_boundary(lines in random_lines(), px in -20i64..20, py in -20i64..20) {
        let hs: Vec<_> = lines.iter().map(|&(c, a, b)| lf(c, &[a, b])).collect();
        prop_assume!(hs.iter().all(|h| !h.is_constant()));
        let Ok(arr) = Arrangement::new(2, hs, Infinity::Generic) else { return Ok(()) };
        let p = vec![frac(px, 7), frac(py, 11)];
        let Ok(r) = Region::from_point(Arc::new(arr), &p) else { return Ok(()) };
        for set in combinations(r.arrangement().len(), 2) {
            if !r.arrangement().is_independent(&set) {
                continue;
            }
            let value = r.iterated_boundary(&set).unwrap();
            match r.vertex_sign_shortcut(&set) {
                Ok(s) => prop_assert_eq!(s, value),
                Err(Error::Precondition(_)) => prop_assert_eq!(value, 0),
                Err(Error::NonSimpleVertex { .. }) => {}
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }

    #[test]
    fn reversal_negates_every_corner(lines in random_lines(), px in -20i64..20, py in -20i64..20) {
        let hs: Vec<_> = lines.iter().map(|&(c, a, b)| lf(c, &[a, b])).collect();
        prop_assume!(hs.iter().all(|h| !h.is_constant()));
        let Ok(arr) = Arrangement::new(2, hs, Infinity::Generic) else { return Ok(()) };
        let Ok(r) = Region::from_point(Arc::new(arr), &[frac(px, 7), frac(py, 11)]) else { return Ok(()) };
        for set in r.arrangement().nbc_sets(2) {
            prop_assert_eq!(r.iterated_boundary(&set).unwrap(), -r.reversed().iterated_boundary(&set).unwrap());
        }
    }
}
