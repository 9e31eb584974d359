use super::*;

#[test]
fn conic_and_two_lines() {
    let input = StrataInput::conic_two_lines();
    let c = dual_complex(&input).unwrap();
    assert_eq!(c.counts(), vec![3, 5, 1]);
    assert!(c.boundary_squares_to_zero());
    let h = reduced_homology_dims(&c);
    assert_eq!(h.reduced, vec![0, 2, 0]);
    assert_eq!(h.euler_characteristic, -1);
}

#[test]
fn disjoint_hyperplanes() {
    let input = StrataInput {
        components: vec!["H".into(), "H'".into()],
        strata: BTreeMap::new(),
    };
    let c = dual_complex(&input).unwrap();
    assert_eq!(c.counts(), vec![2]);
    assert_eq!(reduced_homology_dims(&c).reduced, vec![1]);
}

#[test]
fn single_point_is_acyclic() {
    let input = StrataInput {
        components: vec!["Y".into()],
        strata: BTreeMap::new(),
    };
    assert_eq!(reduced_homology_dims(&dual_complex(&input).unwrap()).reduced, vec![0]);
}

#[test]
fn simplex_boundaries_are_spheres() {
    for n in 1..=5 {
        let c = dual_complex(&StrataInput::coordinate_simplex(n)).unwrap();
        assert_eq!(c.dim(), Some(n - 1));
        assert!(c.boundary_squares_to_zero());
        let h = reduced_homology_dims(&c);
        let mut expected = vec![0; n];
        expected[n - 1] = 1;
        assert_eq!(h.reduced, expected, "n = {n}");
        let alternating: i64 = h.reduced.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        assert_eq!(h.euler_characteristic - 1, alternating);
    }
}

#[test]
fn json_round_trip_and_validation() {
    let input = StrataInput::conic_two_lines();
    let text = serde_json::to_string(&input.to_json()).unwrap();
    assert!(text.contains("\"[0,1]\""));
    let back = StrataInput::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, input);

    let mut broken = input.clone();
    broken.strata.get_mut(&vec![0, 1, 2]).unwrap()[0].faces.insert(0, "q1".into());
    assert!(matches!(dual_complex(&broken), Err(Error::InconsistentStrata { stratum, .. }) if stratum == "p"));

    // relabelling the containing point of L1 ∩ L2 keeps the data consistent
    let mut twisted = input.clone();
    twisted.strata.get_mut(&vec![1, 2]).unwrap().push(Stratum {
        name: "r".into(),
        faces: [(1, "L2".to_string()), (2, "L1".to_string())].into_iter().collect(),
    });
    twisted.strata.get_mut(&vec![0, 1, 2]).unwrap()[0].faces.insert(0, "r".into());
    assert!(dual_complex(&twisted).is_ok());

    let mut wrong_parent = input;
    wrong_parent.strata.get_mut(&vec![0, 1]).unwrap()[0].faces.insert(0, "L2".into());
    assert!(matches!(dual_complex(&wrong_parent), Err(Error::InconsistentStrata { .. })));
}

#[test]
fn rank_and_genus_calculators() {
    assert_eq!(curve_rank(&[2], 1).unwrap(), 1);
    assert_eq!(curve_rank(&[], 1).unwrap(), 0);
    assert_eq!(curve_rank(&[3], 3).unwrap(), 0);
    assert!(curve_rank(&[2], 0).is_err());
    assert_eq!(curve_rank_relative(0, 2), RelativeRank::Relative(1));
    assert_eq!(curve_rank_relative(0, 3).value(), 2);
    assert_eq!(curve_rank_relative(0, 1).value(), 0);
    assert_eq!(curve_rank_relative(4, 0), RelativeRank::Absolute(4));
    assert_eq!(genus_plane_curve(3, &[]).unwrap(), 1);
    assert_eq!(genus_plane_curve(3, &[1]).unwrap(), 0);
    assert_eq!(genus_plane_curve(1, &[]).unwrap(), 0);
    assert!(genus_plane_curve(3, &[1, 1]).is_err());
    assert_eq!(genus_of_union(&[(3, vec![]), (4, vec![1]), (1, vec![])]).unwrap(), 1 + 2);
    assert_eq!(genus_smooth_hypersurface(4, 3).unwrap(), 0);
    assert_eq!(genus_smooth_hypersurface(2, 4).unwrap(), 3);
    assert_eq!(genus_smooth_hypersurface(3, 1).unwrap(), 0);
    assert_eq!(logforms_dim_ncd(2, 3).unwrap(), 1);
    assert_eq!(logforms_dim_ncd(2, 4).unwrap(), 3);
    for n in 1..=5 {
        assert_eq!(logforms_dim_ncd(n, n + 1).unwrap(), 1);
    }
}
