use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::arrangement::combinations;
use crate::exact::rational::{frac, int};
use crate::exact::{LinearFunctional, MultiPoly};
use crate::fixtures::{self, lf, point};
use crate::region::Region;

fn arc(a: Arrangement) -> Arc<Arrangement> {
    Arc::new(a)
}

fn el(arr: &Arc<Arrangement>, k: usize, terms: &[(&[usize], i64)]) -> OSElement {
    OSElement::from_terms(arr.clone(), k, terms.iter().map(|(t, c)| (t.iter().map(|i| i - 1).collect(), int(*c)))).unwrap()
}

fn region(arr: Arrangement, p: Vec<Rational>) -> Region {
    Region::from_point(arc(arr), &p).unwrap()
}

fn pyramid() -> Region {
    region(fixtures::square_pyramid(), fixtures::square_pyramid_interior())
}

fn quadrant_sign(n: usize) -> i64 {
    if (n * (n + 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

#[test]
fn pyramid_circuit_relation() {
    let arr = pyramid().arrangement().clone();
    let x = el(&arr, 3, &[(&[2, 3, 4], 1)]);
    let expected = el(&arr, 3, &[(&[1, 2, 3], 1), (&[1, 2, 4], -1), (&[1, 3, 4], 1)]);
    assert_eq!(os_normalize(&x).unwrap(), expected);
    assert!(os_normalize(&el(&arr, 3, &[(&[2, 4, 5], 1)])).unwrap().is_zero());
    for s in arr.nbc_sets(3) {
        let m = OSElement::monomial(arr.clone(), &s).unwrap();
        assert_eq!(os_normalize(&m).unwrap(), m);
    }
}

#[test]
fn normalization_is_idempotent_and_monomials_anticommute() {
    let arr = arc(fixtures::five_lines());
    let x = el(&arr, 2, &[(&[3, 1], 2), (&[4, 5], -1), (&[2, 3], 3)]);
    let y = os_normalize(&x).unwrap();
    assert!(y.is_nbc_normal());
    assert_eq!(os_normalize(&y).unwrap(), y);
    assert_eq!(el(&arr, 2, &[(&[2, 1], 1)]), el(&arr, 2, &[(&[1, 2], -1)]));
    assert!(el(&arr, 2, &[(&[2, 2], 1)]).is_zero());
}

#[test]
fn relations_vanish_as_forms() {
    for arr in [fixtures::square_pyramid(), fixtures::four_lines(), fixtures::hypercube(3)] {
        let arr = arc(arr);
        for k in 1..=arr.ambient_dim() {
            for r in relations(&arr, k) {
                assert!(r.to_rational_form().is_zero(), "relation {r} does not vanish");
            }
        }
    }
}

#[test]
fn wedge_commutes_with_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let arr = arc(fixtures::square_pyramid());
    for _ in 0..20 {
        let a = rng.gen_range(0..arr.len());
        let (b, c) = (rng.gen_range(0..arr.len()), rng.gen_range(0..arr.len()));
        let x = OSElement::monomial(arr.clone(), &[a]).unwrap();
        let y = OSElement::monomial(arr.clone(), &[b, c]).unwrap();
        assert_eq!(x.wedge(&y).to_rational_form(), x.to_rational_form().wedge(&y.to_rational_form()));
    }
}

#[test]
fn pyramid_canonical_form() {
    let p = pyramid();
    let arr = p.arrangement().clone();
    let expected = el(
        &arr,
        3,
        &[(&[1, 2, 3], -1), (&[1, 3, 4], -1), (&[1, 2, 5], 1), (&[2, 3, 5], 1), (&[3, 4, 5], 1), (&[1, 4, 5], -1)],
    );
    let w = canonical_form_nbc(&p).unwrap();
    assert_eq!(w, expected);
    assert!(w.coefficient(&[0, 1, 3]).is_zero());
    assert_eq!(
        w.to_latex(),
        "-\\omega_{1}\\wedge\\omega_{2}\\wedge\\omega_{3}+\\omega_{1}\\wedge\\omega_{2}\\wedge\\omega_{5}\
         -\\omega_{1}\\wedge\\omega_{3}\\wedge\\omega_{4}-\\omega_{1}\\wedge\\omega_{4}\\wedge\\omega_{5}\
         +\\omega_{2}\\wedge\\omega_{3}\\wedge\\omega_{5}+\\omega_{3}\\wedge\\omega_{4}\\wedge\\omega_{5}"
    );
    assert!(matches!(canonical_form_simple_polytope(&p), Err(Error::NonSimpleVertex { facets: 4, .. })));
}

#[test]
fn interval_canonical_form() {
    let (a, b) = (frac(-1, 3), int(2));
    let r = region(fixtures::interval(a.clone(), b.clone()), vec![int(1)]);
    let w = canonical_form_nbc(&r).unwrap();
    assert_eq!(w, el(r.arrangement(), 1, &[(&[1], -1), (&[2], 1)]));
    assert_eq!(w.to_latex(), "-\\omega_{1}+\\omega_{2}");
    let expected = RationalForm::top(
        1,
        MultiPoly::constant(1, &b - &a),
        &[
            (LinearFunctional::new(-a, vec![int(1)]), 1),
            (LinearFunctional::new(-b, vec![int(1)]), 1),
        ],
    )
    .unwrap();
    assert_eq!(w.to_rational_form(), expected);
}

#[test]
fn unit_triangle_three_ways() {
    let r = region(fixtures::unit_triangle(), point(&[(1, 4), (1, 4)]));
    let arr = r.arrangement().clone();
    let expected = el(&arr, 2, &[(&[1, 2], -1), (&[1, 3], 1), (&[2, 3], -1)]);
    assert_eq!(canonical_form_nbc(&r).unwrap(), expected);
    assert_eq!(canonical_form_polygon(&r, &[1, 2, 0]).unwrap(), expected);
    assert_eq!(canonical_form_simple_polytope(&r).unwrap(), expected);
    let form = RationalForm::top(2, MultiPoly::constant(2, int(-1)), &[(lf(0, &[1, 0]), 1), (lf(0, &[0, 1]), 1), (lf(1, &[-1, -1]), 1)]).unwrap();
    assert_eq!(expected.to_rational_form(), form);
}

#[test]
fn polygon_formula_checks_its_side_list() {
    let r = region(fixtures::unit_triangle(), point(&[(1, 4), (1, 4)]));
    assert!(matches!(canonical_form_polygon(&r, &[0, 2, 1]), Err(Error::Mismatch(_))));
    assert!(matches!(canonical_form_polygon(&r, &[1, 2]), Err(Error::Mismatch(_))));
    let sq = region(fixtures::hypercube(2), fixtures::hypercube_centre(2));
    assert_eq!(
        canonical_form_polygon(&sq, &[2, 1, 3, 0]).unwrap(),
        canonical_form_nbc(&sq).unwrap()
    );
    let pent = region(fixtures::rational_pentagon(), point(&[(0, 1), (0, 1)]));
    assert_eq!(
        canonical_form_polygon(&pent, &[0, 1, 2, 3, 4]).unwrap(),
        canonical_form_nbc(&pent).unwrap()
    );
    assert_eq!(
        canonical_form_polygon(&pent.reversed(), &[4, 0, 1, 2, 3]).unwrap(),
        canonical_form_nbc(&pent).unwrap().neg()
    );
}

fn hypercube_closed_form(n: usize) -> RationalForm {
    let mut factors = Vec::new();
    for i in 0..n {
        let mut g = vec![0; n];
        g[i] = 1;
        factors.push((lf(0, &g), 1));
        g[i] = -1;
        factors.push((lf(1, &g), 1));
    }
    RationalForm::top(n, MultiPoly::constant(n, int(quadrant_sign(n))), &factors).unwrap()
}

fn simplex_closed_form(n: usize) -> RationalForm {
    let factors: Vec<(LinearFunctional, u32)> = fixtures::simplex(n).hyperplanes().iter().map(|f| (f.clone(), 1)).collect();
    RationalForm::top(n, MultiPoly::constant(n, int(quadrant_sign(n))), &factors).unwrap()
}

#[test]
fn hypercube_and_simplex_closed_forms() {
    for n in 1..=4 {
        let cube = region(fixtures::hypercube(n), fixtures::hypercube_centre(n));
        let w = canonical_form_nbc(&cube).unwrap();
        assert_eq!(w, canonical_form_simple_polytope(&cube).unwrap(), "cube n = {n}");
        assert_eq!(w.to_rational_form(), hypercube_closed_form(n), "cube n = {n}");

        let simplex = region(fixtures::simplex(n), fixtures::simplex_interior(n));
        let w = canonical_form_nbc(&simplex).unwrap();
        assert_eq!(w, canonical_form_simple_polytope(&simplex).unwrap(), "simplex n = {n}");
        assert_eq!(w.to_rational_form(), simplex_closed_form(n), "simplex n = {n}");
    }
}

#[test]
fn square_residue_along_top_edge() {
    let sq = region(fixtures::hypercube(2), fixtures::hypercube_centre(2));
    let w = canonical_form_nbc(&sq).unwrap();
    let square = RationalForm::top(
        2,
        MultiPoly::constant(2, int(-1)),
        &[(lf(0, &[1, 0]), 1), (lf(-1, &[1, 0]), 1), (lf(0, &[0, 1]), 1), (lf(-1, &[0, 1]), 1)],
    )
    .unwrap();
    assert_eq!(w.to_rational_form(), square);
    let (res, restriction) = residue(&w, 3).unwrap();
    // -dlog((z1 - 1)/z1) on the restricted line
    let expected = el(&Arc::new(restriction.arrangement.clone()), 1, &[(&[1], 1), (&[2], -1)]);
    assert_eq!(res, expected);
    let (facet, _) = sq.facet_region(3).unwrap().unwrap();
    assert_eq!(canonical_form_nbc(&facet).unwrap(), res);
}

#[test]
fn polygon_residues_are_neighbour_differences() {
    let pent = region(fixtures::rational_pentagon(), point(&[(0, 1), (0, 1)]));
    let w = canonical_form_nbc(&pent).unwrap();
    for i in 0..5 {
        let (res, restriction) = residue(&w, i).unwrap();
        let (next, prev) = ((i + 1) % 5, (i + 4) % 5);
        let target = Arc::new(restriction.arrangement.clone());
        let expected = OSElement::from_terms(
            target,
            1,
            [
                (vec![restriction.index_map[next].unwrap()], int(1)),
                (vec![restriction.index_map[prev].unwrap()], int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(res, os_normalize(&expected).unwrap(), "side {}", i + 1);
    }
    let r = region(fixtures::unit_triangle(), point(&[(1, 4), (1, 4)]));
    let x = el(r.arrangement(), 2, &[(&[1, 2], 1)]);
    assert!(residue(&x, 2).unwrap().0.is_zero());
}

#[test]
fn pyramid_corner_residues() {
    let p = pyramid();
    let w = canonical_form_nbc(&p).unwrap();
    let corners = corner_residues(&w).unwrap();
    let listed: [(&[usize], i64); 7] = [
        (&[1, 2, 3], -1),
        (&[1, 2, 4], 0),
        (&[1, 3, 4], -1),
        (&[1, 2, 5], 1),
        (&[2, 3, 5], 1),
        (&[3, 4, 5], 1),
        (&[1, 4, 5], -1),
    ];
    for (s, c) in listed {
        let s: Vec<usize> = s.iter().map(|i| i - 1).collect();
        assert_eq!(corners.get(&s), Some(&int(c)), "corner {s:?}");
    }
    assert_eq!(corners.entries.len(), 7);
    assert_eq!(corners.to_json()["1,2,3"], "-1");
    assert!(corner_residues(&OSElement::zero(p.arrangement().clone(), 3))
        .unwrap()
        .entries
        .iter()
        .all(|(_, c)| c.is_zero()));
}

#[test]
fn szenes_duality_on_fixtures() {
    for arr in [fixtures::square_pyramid(), fixtures::five_lines(), fixtures::hypercube(3)] {
        let arr = arc(arr);
        let n = arr.ambient_dim();
        let nbc = arr.nbc_sets(n);
        for j in &nbc {
            let v = corner_residues(&OSElement::monomial(arr.clone(), j).unwrap()).unwrap();
            for (i, c) in &v.entries {
                assert_eq!(*c, int(i64::from(i == j)), "Res_{i:?} ω_{j:?}");
            }
        }
    }
}

#[test]
fn adjoint_degrees() {
    for n in 1..=4 {
        let s = region(fixtures::simplex(n), fixtures::simplex_interior(n));
        let a = adjoint_polynomial(&canonical_form_nbc(&s).unwrap().to_rational_form(), s.arrangement()).unwrap();
        assert_eq!(a.as_constant(), Some(int(quadrant_sign(n))));
    }
    let sq = region(fixtures::hypercube(2), fixtures::hypercube_centre(2));
    let a = adjoint_polynomial(&canonical_form_nbc(&sq).unwrap().to_rational_form(), sq.arrangement()).unwrap();
    assert_eq!(a, MultiPoly::var(3, 0).neg());
    let p = pyramid();
    let a = adjoint_polynomial(&canonical_form_nbc(&p).unwrap().to_rational_form(), p.arrangement()).unwrap();
    assert_eq!(a.num_vars(), 4);
    assert_eq!(a.degree(), Some(1));
    assert!(a.is_homogeneous());
    let doubled = RationalForm::top(1, MultiPoly::one(1), &[(lf(0, &[1]), 2)]).unwrap();
    assert!(adjoint_polynomial(&doubled, &fixtures::interval(int(0), int(1))).is_err());
}

#[test]
fn products_of_cubes() {
    for p in 1..=3 {
        for q in 1..=(4 - p) {
            let a = region(fixtures::hypercube(p), fixtures::hypercube_centre(p));
            let b = region(fixtures::hypercube(q), fixtures::hypercube_centre(q));
            let prod = product_form(&canonical_form_nbc(&a).unwrap(), &canonical_form_nbc(&b).unwrap()).unwrap();
            let direct = region(fixtures::hypercube(p + q), fixtures::hypercube_centre(p + q));
            assert_eq!(prod, canonical_form_nbc(&direct).unwrap(), "p = {p}, q = {q}");
        }
    }
    let a = region(fixtures::hypercube(2), fixtures::hypercube_centre(2));
    let pt = Arc::new(Arrangement::new(0, vec![], Infinity::Generic).unwrap());
    let w = canonical_form_nbc(&a).unwrap();
    let prod = product_form(&w, &OSElement::one(pt)).unwrap();
    assert_eq!(prod.terms(), w.terms());
    let explicit = arc(fixtures::interval(int(0), int(1)).with_infinity(Infinity::Explicit(lf(3, &[1]))).unwrap());
    assert!(matches!(
        product_form(&OSElement::monomial(explicit, &[0]).unwrap(), &w),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn power_maps() {
    let one = |a: i64| (int(a), int(1));
    let x = DlogCombination::linear("w", &[(int(1), int(1)), (int(0), int(-1))]);
    for n in 1..=4 {
        let pushed = pushforward_power(&x, n, "z").unwrap();
        assert_eq!(pushed, DlogCombination::linear("z", &[(int(1), int(1)), (int(0), int(-1))]));
        assert_eq!(pushed.residue_total(), x.residue_total());
    }
    assert_eq!(
        pushforward_power(&DlogCombination::linear("w", &[one(2)]), 2, "z").unwrap(),
        DlogCombination::linear("z", &[one(4)])
    );
    let z = DlogCombination::linear("z", &[(int(1), int(1)), (int(0), int(-1))]);
    assert_eq!(
        pullback_power(&z, 2, "w").unwrap(),
        DlogCombination::linear("w", &[(int(1), int(1)), (int(-1), int(1)), (int(0), int(-2))])
    );
    assert_eq!(pullback_power(&z, 1, "w").unwrap(), DlogCombination::linear("w", &[(int(1), int(1)), (int(0), int(-1))]));
    assert_eq!(
        pullback_power(&DlogCombination::linear("z", &[one(4)]), 2, "w").unwrap(),
        DlogCombination::linear("w", &[one(2), one(-2)])
    );
    let cubic = pullback_power(&z, 3, "w").unwrap();
    assert_eq!(cubic.to_string(), "-3 dlog(w) + dlog(w - 1) + dlog(w^2 + w + 1)");
    let mut expected = DlogCombination::new("w");
    expected.add(DlogAtom::Poly(vec![int(-1), int(0), int(0), int(1)]), int(1));
    expected.add(DlogAtom::Linear(int(0)), int(-3));
    assert!(cubic.equivalent(&expected));
    assert!(pushforward_power(&cubic, 2, "z").is_err());
    let text = serde_json::to_string(&cubic.to_json()).unwrap();
    let back = DlogCombination::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, cubic);
}

#[test]
fn os_json_round_trip() {
    let p = pyramid();
    let w = canonical_form_nbc(&p).unwrap();
    let text = serde_json::to_string(&w.to_json()).unwrap();
    assert!(text.starts_with("{\"degree\":3,\"terms\":[{\"indices\":[1,2,3],\"coeff\":\"-1\"}"));
    let back = OSElement::from_json(p.arrangement().clone(), &serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, w);
    assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
    let bad = OSElementJson {
        degree: 1,
        terms: vec![OSTermJson {
            indices: vec![9],
            coeff: int(1),
        }],
    };
    assert!(OSElement::from_json(p.arrangement().clone(), &bad).is_err());
}

#[test]
fn orientation_reversal_and_order_independence() {
    let p = pyramid();
    assert_eq!(canonical_form_nbc(&p.reversed()).unwrap(), canonical_form_nbc(&p).unwrap().neg());
    let form = canonical_form_nbc(&p).unwrap().to_rational_form();
    for order in [vec![4, 3, 2, 1, 0], vec![2, 0, 4, 1, 3], vec![1, 2, 3, 4, 0]] {
        let q = p.permuted(&order).unwrap();
        assert_eq!(canonical_form_nbc(&q).unwrap().to_rational_form(), form, "order {order:?}");
    }
}

#[test]
fn cut_pentagon_adds_up() {
    let pent = region(fixtures::rational_pentagon(), point(&[(0, 1), (0, 1)]));
    let whole = canonical_form_nbc(&pent).unwrap().to_rational_form();
    let (plus, minus, _) = pent.cut(&lf(1, &[3, -7])).unwrap();
    let sum = canonical_form_nbc(&plus)
        .unwrap()
        .to_rational_form()
        .add(&canonical_form_nbc(&minus).unwrap().to_rational_form())
        .cancel();
    assert_eq!(sum, whole);
    assert!(sum.denominator().iter().all(|(f, _)| !f.same_hyperplane(&lf(1, &[3, -7]))));
}

#[test]
fn normalizer_dimension_matches_nbc_count() {
    let arr = arc(fixtures::five_lines());
    for k in 0..=2 {
        let norm = Normalizer::of(&arr, k).unwrap();
        assert_eq!(norm.nbc().len(), arr.nbc_sets(k).len());
        let monomials = combinations(arr.len(), k);
        for m in monomials {
            let x = os_normalize(&OSElement::monomial(arr.clone(), &m).unwrap()).unwrap();
            assert!(x.is_nbc_normal());
        }
    }
}
