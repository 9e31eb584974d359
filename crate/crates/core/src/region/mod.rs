//! Oriented regions of real arrangements, their faces, and signed iterated
//! boundaries.
//!
//! Boundary orientations follow the outward-normal-first rule: the induced
//! basis `b` of a facet is such that `(outward normal, b)` is a positive basis
//! of the face it bounds.

mod face;

use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Infinity};
use crate::error::{Error, Result};
use crate::exact::lp::{recession_cone_is_trivial, strictly_positive_point};
use crate::exact::matrix::{rank_of, ExactMatrix};
use crate::exact::rational::{self, Rational};
use crate::exact::LinearFunctional;

pub use face::{FaceBoundary, OrientedFace};

/// A full-dimensional cell of a real arrangement with an orientation relative
/// to `dz_1 ∧ … ∧ dz_n`.
#[derive(Debug, Clone)]
pub struct Region {
    arrangement: Arc<Arrangement>,
    signs: Vec<i8>,
    /// Sign of `f_0` on the region in explicit-infinity mode.
    infinity_sign: Option<i8>,
    witness: Vec<Rational>,
    orientation: i32,
}

/// A vertex of a region with the hyperplanes through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub point: Vec<Rational>,
    pub hyperplanes: Vec<usize>,
}

impl Region {
    /// The region containing `p`, with positive orientation.
    pub fn from_point(arrangement: Arc<Arrangement>, p: &[Rational]) -> Result<Region> {
        let signs = arrangement.sign_vector_at(p)?;
        let infinity_sign = match arrangement.infinity() {
            Infinity::Explicit(f0) => {
                let v = f0.eval(p);
                if v.is_zero() {
                    return Err(Error::Degenerate("point lies on H0".into()));
                }
                Some(if v.is_positive() { 1 } else { -1 })
            }
            _ => None,
        };
        Ok(Region {
            arrangement,
            signs,
            infinity_sign,
            witness: p.to_vec(),
            orientation: 1,
        })
    }

    pub fn with_orientation(mut self, orientation: i32) -> Result<Region> {
        if orientation != 1 && orientation != -1 {
            return Err(Error::InvalidInput(format!("orientation must be 1 or -1, got {orientation}")));
        }
        self.orientation = orientation;
        Ok(self)
    }

    pub fn reversed(&self) -> Region {
        let mut r = self.clone();
        r.orientation = -r.orientation;
        r
    }

    pub fn arrangement(&self) -> &Arc<Arrangement> {
        &self.arrangement
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn witness(&self) -> &[Rational] {
        &self.witness
    }

    pub fn orientation(&self) -> i32 {
        self.orientation
    }

    pub fn ambient_dim(&self) -> usize {
        self.arrangement.ambient_dim()
    }

    /// `s_j f_j` for every hyperplane, each nonnegative on the region.
    pub fn oriented_functional(&self, j: usize) -> LinearFunctional {
        let f = self.arrangement.hyperplane(j);
        if self.signs[j] < 0 {
            f.neg()
        } else {
            f.clone()
        }
    }

    /// Inequalities `g ≥ 0` cutting out the closed region, with the index of
    /// the hyperplane each comes from (`None` for `H_0`).
    pub fn constraints(&self) -> Vec<(Option<usize>, LinearFunctional)> {
        let mut out: Vec<(Option<usize>, LinearFunctional)> =
            (0..self.arrangement.len()).map(|j| (Some(j), self.oriented_functional(j))).collect();
        if let (Infinity::Explicit(f0), Some(s)) = (self.arrangement.infinity(), self.infinity_sign) {
            out.push((None, if s < 0 { f0.neg() } else { f0.clone() }));
        }
        out
    }

    pub fn is_bounded(&self) -> bool {
        let funcs: Vec<LinearFunctional> = self.constraints().into_iter().map(|(_, f)| f).collect();
        recession_cone_is_trivial(&funcs, self.ambient_dim())
    }

    /// Hyperplanes meeting the closure of the region in a codimension-one face.
    pub fn facets(&self) -> Vec<usize> {
        let top = OrientedFace::of_region(self);
        (0..self.arrangement.len())
            .filter(|&i| matches!(top.partial_boundary(i), Ok(FaceBoundary::Face(_))))
            .collect()
    }

    /// Vertices of the closed region, by brute force over `n`-subsets of facets.
    pub fn vertices(&self) -> Vec<Vertex> {
        let n = self.ambient_dim();
        let facets = self.facets();
        let constraints = self.constraints();
        let mut out: Vec<Vertex> = Vec::new();
        for subset in crate::arrangement::combinations(facets.len(), n) {
            let set: Vec<usize> = subset.iter().map(|&k| facets[k]).collect();
            let rows: Vec<Vec<Rational>> = set.iter().map(|&i| self.arrangement.hyperplane(i).gradient.clone()).collect();
            if rank_of(&rows, n) < n {
                continue;
            }
            let rhs: Vec<Rational> = set.iter().map(|&i| -self.arrangement.hyperplane(i).constant.clone()).collect();
            let Some(p) = ExactMatrix::from_rows(n, rows).solve(&rhs) else {
                continue;
            };
            if constraints.iter().any(|(_, g)| g.eval(&p).is_negative()) {
                continue;
            }
            if out.iter().any(|v| v.point == p) {
                continue;
            }
            let hyperplanes = (0..self.arrangement.len())
                .filter(|&j| self.arrangement.hyperplane(j).eval(&p).is_zero())
                .collect();
            out.push(Vertex { point: p, hyperplanes });
        }
        out.sort_by(|a, b| a.hyperplanes.cmp(&b.hyperplanes));
        out
    }

    /// Splits the region along `h`, which becomes the last hyperplane of the
    /// extended arrangement. Returns the parts where `h > 0` and `h < 0`.
    pub fn cut(&self, h: &LinearFunctional) -> Result<(Region, Region, Arc<Arrangement>)> {
        let n = self.ambient_dim();
        if h.num_vars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: h.num_vars(),
            });
        }
        let extended = Arc::new(self.arrangement.extended(h.clone(), None)?);
        let base: Vec<LinearFunctional> = self.constraints().into_iter().map(|(_, f)| f).collect();
        let side = |g: LinearFunctional| -> Result<Region> {
            let mut funcs = base.clone();
            funcs.push(g);
            let w = strictly_positive_point(&funcs, n).ok_or(Error::NoCut)?;
            Region::from_point(extended.clone(), &w)?.with_orientation(self.orientation)
        };
        let plus = side(h.clone())?;
        let minus = side(h.neg())?;
        Ok((plus, minus, extended))
    }

    /// The same region viewed in a reordered arrangement.
    pub fn permuted(&self, order: &[usize]) -> Result<Region> {
        let arr = Arc::new(self.arrangement.permuted(order)?);
        Region::from_point(arr, &self.witness)?.with_orientation(self.orientation)
    }

    pub fn to_json(&self) -> RegionJson {
        RegionJson {
            point: self.witness.clone(),
            orientation: self.orientation,
        }
    }

    pub fn from_json(arrangement: Arc<Arrangement>, j: &RegionJson) -> Result<Region> {
        if j.point.len() != arrangement.ambient_dim() {
            return Err(Error::parse(
                "point",
                format!("expected {} coordinates, found {}", arrangement.ambient_dim(), j.point.len()),
            ));
        }
        Region::from_point(arrangement, &j.point)?.with_orientation(j.orientation)
    }

    /// Parses a region from JSON text or from an inline point such as `1/3,1/7`.
    pub fn parse(arrangement: Arc<Arrangement>, text: &str) -> Result<Region> {
        let t = text.trim();
        if t.starts_with('{') {
            let j: RegionJson = serde_json::from_str(t).map_err(|e| Error::parse("region", e.to_string()))?;
            return Region::from_json(arrangement, &j);
        }
        let point = t
            .split(',')
            .map(rational::parse)
            .collect::<Result<Vec<Rational>>>()?;
        Region::from_json(arrangement, &RegionJson { point, orientation: 1 })
    }
}

fn default_orientation() -> i32 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionJson {
    #[serde(with = "rational::serde_str_vec")]
    pub point: Vec<Rational>,
    #[serde(default = "default_orientation")]
    pub orientation: i32,
}

#[cfg(test)]
mod tests;
