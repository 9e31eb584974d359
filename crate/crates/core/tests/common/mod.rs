//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use std::sync::Arc;

use canform::arrangement::{Arrangement, Infinity};
use canform::exact::rational::{frac, int};
use canform::exact::{LinearFunctional, Rational};
use canform::region::Region;
use rand::Rng;

fn random_normal(rng: &mut impl Rng, n: usize, range: i64) -> Vec<Rational> {
    loop {
        let g: Vec<i64> = (0..n).map(|_| rng.gen_range(-range..=range)).collect();
        if g.iter().any(|&x| x != 0) {
            return g.into_iter().map(int).collect();
        }
    }
}

/// A bounded polytope `{b_i - a_i·z ≥ 0}` around the origin in which every
/// hyperplane is a facet.
pub fn random_polytope(rng: &mut impl Rng, n: usize, max_facets: usize) -> Region {
    loop {
        let m = rng.gen_range(n + 1..=max_facets);
        let hs: Vec<LinearFunctional> = (0..m)
            .map(|_| {
                let a = random_normal(rng, n, 6);
                LinearFunctional::new(int(rng.gen_range(1..=6)), a.into_iter().map(|x| -x).collect())
            })
            .collect();
        let Ok(arr) = Arrangement::new(n, hs, Infinity::Generic) else {
            continue;
        };
        let Ok(region) = Region::from_point(Arc::new(arr), &vec![int(0); n]) else {
            continue;
        };
        if region.is_bounded() && region.facets().len() == m {
            return region;
        }
    }
}

/// A hyperplane through a point near the origin, with a random normal.
pub fn random_cut(rng: &mut impl Rng, n: usize) -> LinearFunctional {
    let a = random_normal(rng, n, 7);
    LinearFunctional::new(frac(rng.gen_range(-9..=9), 100), a)
}

/// A small-coefficient arrangement; coincidences such as concurrent or
/// parallel hyperplanes are likely.
pub fn random_arrangement(rng: &mut impl Rng, n: usize, count: usize) -> Arc<Arrangement> {
    loop {
        let hs: Vec<LinearFunctional> = (0..count)
            .map(|_| LinearFunctional::new(int(rng.gen_range(-2..=2)), random_normal(rng, n, 2)))
            .collect();
        if let Ok(arr) = Arrangement::new(n, hs, Infinity::Generic) {
            return Arc::new(arr);
        }
    }
}

/// `d` affine hyperplanes whose projective members are in general position
/// and whose chart has generic infinity.
pub fn random_generic_arrangement(rng: &mut impl Rng, n: usize, d: usize) -> Arrangement {
    loop {
        let hs: Vec<LinearFunctional> = (0..d)
            .map(|_| LinearFunctional::new(int(rng.gen_range(-20..=20)), random_normal(rng, n, 20)))
            .collect();
        let Ok(arr) = Arrangement::new(n, hs, Infinity::Generic) else {
            continue;
        };
        if canform::checks::general_position_strata(&arr).is_some() && arr.check_generic_infinity().is_ok() {
            return arr;
        }
    }
}
