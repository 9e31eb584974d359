use std::sync::Arc;

use num_traits::{One, Zero};

use super::Region;
use crate::arrangement::Restriction;
use crate::error::{Error, Result};
use crate::exact::linear::solution_space;
use crate::exact::lp::strictly_positive_point;
use crate::exact::matrix::{dot, ExactMatrix};
use crate::exact::rational::{signum, Rational};
use crate::exact::LinearFunctional;

/// A face of the closure of a region: a flat cut out by a chain of
/// hyperplanes, a point of its relative interior, and an orientation given as
/// `sign · [basis]`.
#[derive(Debug, Clone)]
pub struct OrientedFace {
    region: Region,
    chain: Vec<usize>,
    equations: Vec<LinearFunctional>,
    basepoint: Vec<Rational>,
    direction: Vec<Vec<Rational>>,
    basis: Vec<Vec<Rational>>,
    sign: i32,
    witness: Vec<Rational>,
}

#[derive(Debug, Clone)]
pub enum FaceBoundary {
    Face(OrientedFace),
    Zero,
}

impl FaceBoundary {
    /// Orientation sign of a 0-dimensional face, 0 for the zero chain.
    pub fn value(&self) -> i32 {
        match self {
            FaceBoundary::Face(f) => f.sign,
            FaceBoundary::Zero => 0,
        }
    }
}

/// `d` coordinate positions on which the rows of `basis` are independent.
fn independent_columns(basis: &[Vec<Rational>], n: usize) -> Vec<usize> {
    ExactMatrix::from_rows(n, basis.to_vec()).rref().pivots
}

fn minor(vectors: &[Vec<Rational>], cols: &[usize]) -> Rational {
    let rows: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| cols.iter().map(|&c| v[c].clone()).collect())
        .collect();
    ExactMatrix::from_rows(cols.len(), rows).det()
}

impl OrientedFace {
    /// The region itself as a top-dimensional face.
    pub fn of_region(region: &Region) -> OrientedFace {
        let n = region.ambient_dim();
        let identity: Vec<Vec<Rational>> = ExactMatrix::identity(n).rows().to_vec();
        OrientedFace {
            region: region.clone(),
            chain: Vec::new(),
            equations: Vec::new(),
            basepoint: vec![Rational::zero(); n],
            direction: identity.clone(),
            basis: identity,
            sign: region.orientation(),
            witness: region.witness().to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.direction.len()
    }

    pub fn chain(&self) -> &[usize] {
        &self.chain
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn sign(&self) -> i32 {
        self.sign
    }

    pub fn witness(&self) -> &[Rational] {
        &self.witness
    }

    pub fn basepoint(&self) -> &[Rational] {
        &self.basepoint
    }

    /// Canonical (reduced echelon) basis of the flat's direction space.
    pub fn direction(&self) -> &[Vec<Rational>] {
        &self.direction
    }

    fn vanishes(&self, f: &LinearFunctional) -> bool {
        f.eval(&self.basepoint).is_zero() && self.direction.iter().all(|d| dot(&f.gradient, d).is_zero())
    }

    /// The same oriented face with basis `t · basis`; orientation is unchanged.
    pub fn rebased(&self, t: &[Vec<Rational>]) -> Result<OrientedFace> {
        let d = self.dim();
        if t.len() != d || t.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: t.len(),
            });
        }
        let det = ExactMatrix::from_rows(d, t.to_vec()).det();
        if det.is_zero() {
            return Err(Error::InvalidInput("change of basis is singular".into()));
        }
        let n = self.region.ambient_dim();
        let basis = t
            .iter()
            .map(|row| {
                (0..n)
                    .map(|c| {
                        row.iter()
                            .zip(&self.basis)
                            .fold(Rational::zero(), |acc, (a, b)| acc + a * &b[c])
                    })
                    .collect()
            })
            .collect();
        let mut out = self.clone();
        out.basis = basis;
        out.sign *= signum(&det);
        Ok(out)
    }

    /// `∂_{H_i}` of this face: the facet on `H_i` with the outward-normal-first
    /// orientation, or zero when `H_i` does not cut a facet.
    pub fn partial_boundary(&self, i: usize) -> Result<FaceBoundary> {
        let arr = self.region.arrangement().clone();
        arr.check_index(i)?;
        let n = arr.ambient_dim();
        let fi = arr.hyperplane(i);
        if self.vanishes(fi) {
            return Err(Error::InvalidHyperplane { index: i + 1 });
        }
        let slopes: Vec<Rational> = self.direction.iter().map(|d| dot(&fi.gradient, d)).collect();
        if slopes.iter().all(Zero::is_zero) {
            return Ok(FaceBoundary::Zero);
        }
        let mut equations = self.equations.clone();
        equations.push(fi.clone());
        let (base, dir) = solution_space(&equations, n)
            .ok_or_else(|| Error::internal("face-nonempty", "hyperplane misses a flat it is not parallel to"))?;

        let restricted: Vec<LinearFunctional> = self
            .region
            .constraints()
            .into_iter()
            .filter(|(_, g)| !(g.eval(&base).is_zero() && dir.iter().all(|d| dot(&g.gradient, d).is_zero())))
            .map(|(_, g)| LinearFunctional::new(g.eval(&base), dir.iter().map(|d| dot(&g.gradient, d)).collect()))
            .collect();
        let Some(t) = strictly_positive_point(&restricted, dir.len()) else {
            return Ok(FaceBoundary::Zero);
        };
        let witness: Vec<Rational> = (0..n)
            .map(|c| {
                dir.iter()
                    .zip(&t)
                    .fold(base[c].clone(), |acc, (d, tk)| acc + &d[c] * tk)
            })
            .collect();

        let si = Rational::from_integer(self.region.signs()[i].into());
        let outward: Vec<Rational> = (0..n)
            .map(|c| {
                -self
                    .direction
                    .iter()
                    .zip(&slopes)
                    .fold(Rational::zero(), |acc, (d, a)| acc + a * &d[c])
                    * &si
            })
            .collect();
        let mut frame = vec![outward];
        frame.extend(dir.iter().cloned());
        let cols = independent_columns(&self.basis, n);
        let new_det = minor(&frame, &cols);
        let old_det = minor(&self.basis, &cols);
        if new_det.is_zero() || old_det.is_zero() {
            return Err(Error::internal("facet-frame", "outward normal is not transversal to the facet"));
        }
        let mut chain = self.chain.clone();
        chain.push(i);
        Ok(FaceBoundary::Face(OrientedFace {
            region: self.region.clone(),
            chain,
            equations,
            basepoint: base,
            direction: dir.clone(),
            basis: dir,
            sign: self.sign * signum(&new_det) * signum(&old_det),
            witness,
        }))
    }
}

impl Region {
    fn check_index_set(&self, set: &[usize]) -> Result<Vec<usize>> {
        let arr = self.arrangement();
        for &i in set {
            arr.check_index(i)?;
        }
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != set.len() {
            return Err(Error::Precondition("index set has repeated entries".into()));
        }
        if !arr.is_independent(&sorted) {
            return Err(Error::Precondition(format!(
                "hyperplanes {} are dependent or do not meet in the chart",
                label(&sorted)
            )));
        }
        Ok(sorted)
    }

    /// Applies `∂_{H_i}` for `i` in the given order, starting from the region.
    pub fn boundary_chain(&self, order: &[usize]) -> Result<FaceBoundary> {
        self.boundary_chain_rebased(order, |f| Ok(f.clone()))
    }

    /// As [`Region::boundary_chain`], letting `rebase` replace the orientation
    /// basis of every intermediate face.
    pub fn boundary_chain_rebased(
        &self,
        order: &[usize],
        mut rebase: impl FnMut(&OrientedFace) -> Result<OrientedFace>,
    ) -> Result<FaceBoundary> {
        let mut face = rebase(&OrientedFace::of_region(self))?;
        for &i in order {
            match face.partial_boundary(i)? {
                FaceBoundary::Zero => return Ok(FaceBoundary::Zero),
                FaceBoundary::Face(f) => face = rebase(&f)?,
            }
        }
        Ok(FaceBoundary::Face(face))
    }

    /// `∂_I`, applying the largest index first. `I` must be independent.
    pub fn boundary_face(&self, set: &[usize]) -> Result<FaceBoundary> {
        let sorted = self.check_index_set(set)?;
        let order: Vec<usize> = sorted.into_iter().rev().collect();
        self.boundary_chain(&order)
    }

    /// The integer `∂_I(σ)` for an independent `n`-set `I`.
    pub fn iterated_boundary(&self, set: &[usize]) -> Result<i32> {
        self.iterated_boundary_rebased(set, |f| Ok(f.clone()))
    }

    pub fn iterated_boundary_rebased(
        &self,
        set: &[usize],
        rebase: impl FnMut(&OrientedFace) -> Result<OrientedFace>,
    ) -> Result<i32> {
        if set.len() != self.ambient_dim() {
            return Err(Error::Precondition(format!(
                "iterated boundary needs {} hyperplanes, got {}",
                self.ambient_dim(),
                set.len()
            )));
        }
        let sorted = self.check_index_set(set)?;
        let order: Vec<usize> = sorted.into_iter().rev().collect();
        Ok(self.boundary_chain_rebased(&order, rebase)?.value())
    }

    /// `(-1)^{n(n+1)/2} · sign det(s_i ∇f_i)_{i∈I} · orientation` at a simple
    /// vertex `H_I` of the region.
    pub fn vertex_sign_shortcut(&self, set: &[usize]) -> Result<i32> {
        let n = self.ambient_dim();
        if set.len() != n {
            return Err(Error::Precondition(format!("a vertex needs {n} hyperplanes, got {}", set.len())));
        }
        let sorted = self.check_index_set(set)?;
        let arr = self.arrangement();
        let rows: Vec<Vec<Rational>> = sorted.iter().map(|&i| arr.hyperplane(i).gradient.clone()).collect();
        let rhs: Vec<Rational> = sorted.iter().map(|&i| -arr.hyperplane(i).constant.clone()).collect();
        let v = ExactMatrix::from_rows(n, rows)
            .solve(&rhs)
            .ok_or_else(|| Error::internal("vertex", "independent set has no common point"))?;
        if self.constraints().iter().any(|(_, g)| g.eval(&v) < Rational::zero()) {
            return Err(Error::Precondition(format!("H_{} is not a vertex of the region", label(&sorted))));
        }
        let through: Vec<usize> = (0..arr.len()).filter(|&j| arr.hyperplane(j).eval(&v).is_zero()).collect();
        let at_infinity_plane = self
            .constraints()
            .iter()
            .any(|(k, g)| k.is_none() && g.eval(&v).is_zero());
        if through.len() > n || at_infinity_plane {
            return Err(Error::NonSimpleVertex {
                vertex: label(&sorted),
                facets: through.len() + usize::from(at_infinity_plane),
            });
        }
        let oriented: Vec<Vec<Rational>> = sorted.iter().map(|&i| self.oriented_functional(i).gradient).collect();
        let det = ExactMatrix::from_rows(n, oriented).det();
        let quadrant = if (n * (n + 1) / 2) % 2 == 0 { 1 } else { -1 };
        Ok(quadrant * signum(&det) * self.orientation())
    }

    /// `∂_{H_i}` of the region as a region of the restricted arrangement, with
    /// the orientation transported to the restricted chart.
    pub fn facet_region(&self, i: usize) -> Result<Option<(Region, Restriction)>> {
        let face = match OrientedFace::of_region(self).partial_boundary(i)? {
            FaceBoundary::Zero => return Ok(None),
            FaceBoundary::Face(f) => f,
        };
        let restriction = self.arrangement().restriction(i)?;
        let projected: Vec<Vec<Rational>> = face.basis().iter().map(|b| restriction.project(b)).collect();
        let d = projected.len();
        let det = if d == 0 {
            Rational::one()
        } else {
            ExactMatrix::from_rows(d, projected).det()
        };
        let witness = restriction.project(face.witness());
        let region = Region::from_point(Arc::new(restriction.arrangement.clone()), &witness)?
            .with_orientation(face.sign() * signum(&det))?;
        Ok(Some((region, restriction)))
    }
}

/// `{1,2,3}` style label of 0-based indices.
pub(crate) fn label(set: &[usize]) -> String {
    format!(
        "{{{}}}",
        set.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
    )
}
