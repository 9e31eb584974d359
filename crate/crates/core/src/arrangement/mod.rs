//! Hyperplane arrangements over the rationals.
//!
//! Hyperplanes are stored as affine functionals on a fixed chart and handled
//! homogeneously: `H_i` has coefficient vector `F_i = (c_i, g_i)`. The chart
//! itself is the complement of a distinguished hyperplane `H_0` whose vector
//! `F_0` is `(1, 0, …, 0)` unless an explicit `H_0` is given. A set `S` meets
//! inside the chart exactly when `rank(F_S ∪ F_0) = rank(F_S) + 1`.
//!
//! Indices are 0-based in this API; `H_{i+1}` in printed output is `i` here.

mod flats;
mod matroid;
mod regions;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::linear::{proportional, FunctionalJson};
use crate::exact::{LinearFunctional, Rational};
use crate::os::Normalizer;

pub use flats::{Flat, FlatPoset};
pub use matroid::combinations;
pub use regions::SignVector;

/// How the hyperplane at infinity of the chart relates to the arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infinity {
    /// The chart's hyperplane at infinity is not a member; `ω_i = dlog f_i`.
    Generic,
    /// The hyperplane at infinity of the chart is a member, labelled `H_0`.
    ProjectiveClosure,
    /// `H_0 = {f_0 = 0}` is a member and `ω_i = dlog(f_i / f_0)`.
    Explicit(LinearFunctional),
}

impl Infinity {
    pub fn is_generic(&self) -> bool {
        matches!(self, Infinity::Generic)
    }
}

#[derive(Debug)]
pub struct Arrangement {
    ambient_dim: usize,
    variables: Vec<String>,
    names: Vec<String>,
    hyperplanes: Vec<LinearFunctional>,
    infinity: Infinity,
    homogeneous: Vec<Vec<Rational>>,
    infinity_vector: Vec<Rational>,
    pub(crate) os_cache: Vec<OnceLock<Arc<Normalizer>>>,
}

impl Clone for Arrangement {
    fn clone(&self) -> Self {
        Arrangement::build(
            self.ambient_dim,
            self.variables.clone(),
            self.names.clone(),
            self.hyperplanes.clone(),
            self.infinity.clone(),
        )
    }
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.hyperplanes == other.hyperplanes
            && self.infinity == other.infinity
    }
}

impl Eq for Arrangement {}

fn default_variables(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("z{i}")).collect()
}

impl Arrangement {
    fn build(
        ambient_dim: usize,
        variables: Vec<String>,
        names: Vec<String>,
        hyperplanes: Vec<LinearFunctional>,
        infinity: Infinity,
    ) -> Self {
        let homogeneous = hyperplanes.iter().map(LinearFunctional::homogeneous).collect();
        let infinity_vector = match &infinity {
            Infinity::Explicit(f0) => f0.homogeneous(),
            _ => LinearFunctional::unit(ambient_dim).homogeneous(),
        };
        Arrangement {
            ambient_dim,
            variables,
            names,
            hyperplanes,
            infinity,
            homogeneous,
            infinity_vector,
            os_cache: (0..=ambient_dim).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Validates and builds an arrangement with default names.
    pub fn new(ambient_dim: usize, hyperplanes: Vec<LinearFunctional>, infinity: Infinity) -> Result<Self> {
        let names = (1..=hyperplanes.len()).map(|i| format!("H{i}")).collect();
        Self::with_names(ambient_dim, default_variables(ambient_dim), names, hyperplanes, infinity)
    }

    pub fn with_names(
        ambient_dim: usize,
        variables: Vec<String>,
        names: Vec<String>,
        hyperplanes: Vec<LinearFunctional>,
        infinity: Infinity,
    ) -> Result<Self> {
        if variables.len() != ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: variables.len(),
            });
        }
        if names.len() != hyperplanes.len() {
            return Err(Error::InvalidInput("one name per hyperplane is required".into()));
        }
        for (i, f) in hyperplanes.iter().enumerate() {
            if f.num_vars() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: f.num_vars(),
                });
            }
            if f.is_constant() {
                return Err(Error::InvalidInput(format!("hyperplane H{} has zero gradient", i + 1)));
            }
            for (j, g) in hyperplanes.iter().enumerate().take(i) {
                if f.same_hyperplane(g) {
                    return Err(Error::InvalidInput(format!(
                        "hyperplanes H{} and H{} have the same zero locus",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        if let Infinity::Explicit(f0) = &infinity {
            if f0.num_vars() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: f0.num_vars(),
                });
            }
            if f0.is_constant() && f0.constant.is_zero() {
                return Err(Error::InvalidInput("H0 is the zero functional".into()));
            }
            if let Some(i) = hyperplanes.iter().position(|f| f.same_hyperplane(f0)) {
                return Err(Error::InvalidInput(format!("H{} coincides with H0", i + 1)));
            }
        }
        Ok(Self::build(ambient_dim, variables, names, hyperplanes, infinity))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[LinearFunctional] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &LinearFunctional {
        &self.hyperplanes[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn infinity(&self) -> &Infinity {
        &self.infinity
    }

    /// `f_0` for explicit mode, the constant `1` otherwise.
    pub fn infinity_functional(&self) -> LinearFunctional {
        match &self.infinity {
            Infinity::Explicit(f0) => f0.clone(),
            _ => LinearFunctional::unit(self.ambient_dim),
        }
    }

    pub(crate) fn homogeneous(&self, i: usize) -> &[Rational] {
        &self.homogeneous[i]
    }

    pub(crate) fn infinity_vector(&self) -> &[Rational] {
        &self.infinity_vector
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            return Err(Error::InvalidInput(format!(
                "hyperplane index {} out of range 1..={}",
                i + 1,
                self.len()
            )));
        }
        Ok(())
    }

    /// Same hyperplanes with the plane at infinity added as `H_0`.
    pub fn projective_closure(&self) -> Arrangement {
        let infinity = match &self.infinity {
            Infinity::Generic => Infinity::ProjectiveClosure,
            other => other.clone(),
        };
        Self::build(
            self.ambient_dim,
            self.variables.clone(),
            self.names.clone(),
            self.hyperplanes.clone(),
            infinity,
        )
    }

    pub fn with_infinity(&self, infinity: Infinity) -> Result<Arrangement> {
        Self::with_names(
            self.ambient_dim,
            self.variables.clone(),
            self.names.clone(),
            self.hyperplanes.clone(),
            infinity,
        )
    }

    /// Reorders hyperplanes: the new `H_{k+1}` is the old `H_{order[k]+1}`.
    pub fn permuted(&self, order: &[usize]) -> Result<Arrangement> {
        let mut seen = vec![false; self.len()];
        if order.len() != self.len() {
            return Err(Error::InvalidInput(format!(
                "order lists {} indices for {} hyperplanes",
                order.len(),
                self.len()
            )));
        }
        for &i in order {
            self.check_index(i)?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidInput(format!("index {} repeated in order", i + 1)));
            }
        }
        Ok(Self::build(
            self.ambient_dim,
            self.variables.clone(),
            order.iter().map(|&i| self.names[i].clone()).collect(),
            order.iter().map(|&i| self.hyperplanes[i].clone()).collect(),
            self.infinity.clone(),
        ))
    }

    /// Appends a hyperplane as the last member.
    pub fn extended(&self, h: LinearFunctional, name: Option<String>) -> Result<Arrangement> {
        let mut hyperplanes = self.hyperplanes.clone();
        hyperplanes.push(h);
        let mut names = self.names.clone();
        names.push(name.unwrap_or_else(|| format!("H{}", hyperplanes.len())));
        Self::with_names(self.ambient_dim, self.variables.clone(), names, hyperplanes, self.infinity.clone())
    }

    pub fn deletion(&self, i: usize) -> Result<Arrangement> {
        self.check_index(i)?;
        if self.len() < 2 {
            return Err(Error::Precondition("deletion needs at least two hyperplanes".into()));
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&j| j != i).collect();
        Ok(Self::build(
            self.ambient_dim,
            self.variables.clone(),
            keep.iter().map(|&j| self.names[j].clone()).collect(),
            keep.iter().map(|&j| self.hyperplanes[j].clone()).collect(),
            self.infinity.clone(),
        ))
    }

    /// Restriction to `H_i`, charted by eliminating the pivot variable of `f_i`.
    pub fn restriction(&self, i: usize) -> Result<Restriction> {
        self.check_index(i)?;
        let fi = &self.homogeneous[i];
        let pivot = self.hyperplanes[i].pivot().expect("hyperplanes have nonzero gradient");
        let hp = pivot + 1;
        let restrict = |v: &[Rational]| -> Vec<Rational> {
            let ratio = &v[hp] / &fi[hp];
            v.iter()
                .zip(fi)
                .enumerate()
                .filter(|(k, _)| *k != hp)
                .map(|(_, (a, b))| a - &ratio * b)
                .collect()
        };
        let inf = restrict(&self.infinity_vector);
        let mut traces: Vec<Vec<Rational>> = Vec::new();
        let mut names = Vec::new();
        let mut index_map = vec![None; self.len()];
        for j in 0..self.len() {
            if j == i {
                continue;
            }
            let r = restrict(&self.homogeneous[j]);
            if r.iter().all(Zero::is_zero) || proportional(&r, &inf) {
                continue;
            }
            if r[1..].iter().all(Zero::is_zero) {
                return Err(Error::Precondition(format!(
                    "the trace of H{} on H{} lies at infinity of the coordinate chart",
                    j + 1,
                    i + 1
                )));
            }
            match traces.iter().position(|t| proportional(t, &r)) {
                Some(t) => index_map[j] = Some(t),
                None => {
                    index_map[j] = Some(traces.len());
                    traces.push(r);
                    names.push(self.names[j].clone());
                }
            }
        }
        let infinity = match &self.infinity {
            Infinity::Explicit(_) => Infinity::Explicit(LinearFunctional::from_homogeneous(&inf)),
            other => other.clone(),
        };
        let mut variables = self.variables.clone();
        variables.remove(pivot);
        let arrangement = Arrangement::build(
            self.ambient_dim - 1,
            variables,
            names,
            traces.iter().map(|t| LinearFunctional::from_homogeneous(t)).collect(),
            infinity,
        );
        Ok(Restriction {
            arrangement,
            index_map,
            hyperplane: i,
            pivot,
            functional: self.hyperplanes[i].clone(),
        })
    }

    pub fn to_json(&self) -> ArrangementJson {
        ArrangementJson {
            ambient_dim: self.ambient_dim,
            variables: Some(self.variables.clone()),
            hyperplanes: self
                .hyperplanes
                .iter()
                .zip(&self.names)
                .map(|(f, n)| FunctionalJson::from_functional(Some(n.clone()), f))
                .collect(),
            infinity: match &self.infinity {
                Infinity::Generic => InfinityJson::Mode("generic".into()),
                Infinity::ProjectiveClosure => InfinityJson::Mode("projective-closure".into()),
                Infinity::Explicit(f0) => InfinityJson::Explicit {
                    explicit: FunctionalJson::from_functional(None, f0),
                },
            },
        }
    }

    pub fn from_json(j: &ArrangementJson) -> Result<Self> {
        let variables = match &j.variables {
            Some(v) => v.clone(),
            None => default_variables(j.ambient_dim),
        };
        for (k, h) in j.hyperplanes.iter().enumerate() {
            if h.linear.len() != j.ambient_dim {
                return Err(Error::parse(
                    &format!("hyperplanes[{k}].linear"),
                    format!("expected {} entries, found {}", j.ambient_dim, h.linear.len()),
                ));
            }
        }
        let names = j
            .hyperplanes
            .iter()
            .enumerate()
            .map(|(k, h)| h.name.clone().unwrap_or_else(|| format!("H{}", k + 1)))
            .collect();
        let infinity = match &j.infinity {
            InfinityJson::Mode(m) if m == "generic" => Infinity::Generic,
            InfinityJson::Mode(m) if m == "projective-closure" => Infinity::ProjectiveClosure,
            InfinityJson::Mode(m) => {
                return Err(Error::parse(
                    "infinity",
                    format!("unknown mode {m:?}; expected \"generic\", \"projective-closure\" or {{\"explicit\":…}}"),
                ))
            }
            InfinityJson::Explicit { explicit } => Infinity::Explicit(explicit.to_functional()),
        };
        Self::with_names(
            j.ambient_dim,
            variables,
            names,
            j.hyperplanes.iter().map(FunctionalJson::to_functional).collect(),
            infinity,
        )
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let j: ArrangementJson =
            serde_json::from_str(text).map_err(|e| Error::parse("arrangement", e.to_string()))?;
        Self::from_json(&j)
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (h, name)) in self.hyperplanes.iter().zip(&self.names).enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{} ({}): {} = 0", k + 1, name, h.display_with(&self.variables))?;
        }
        Ok(())
    }
}

/// A restricted arrangement together with the bookkeeping that relates it to
/// its parent.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub arrangement: Arrangement,
    /// Parent index `j` to trace index, `None` for `H_i` itself and for
    /// hyperplanes without a trace in the chart.
    pub index_map: Vec<Option<usize>>,
    pub hyperplane: usize,
    /// Ambient coordinate eliminated by the chart of `H_i`.
    pub pivot: usize,
    pub functional: LinearFunctional,
}

impl Restriction {
    /// Drops the pivot coordinate.
    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        v.iter()
            .enumerate()
            .filter(|(k, _)| *k != self.pivot)
            .map(|(_, x)| x.clone())
            .collect()
    }

    /// Point of `H_i` with the given restricted coordinates.
    pub fn lift_point(&self, p: &[Rational]) -> Vec<Rational> {
        let g = &self.functional.gradient;
        let mut rest = self.functional.constant.clone();
        let mut out = Vec::with_capacity(p.len() + 1);
        let mut it = p.iter();
        for k in 0..g.len() {
            if k == self.pivot {
                out.push(Rational::zero());
            } else {
                let x = it.next().expect("restricted point dimension").clone();
                rest += &g[k] * &x;
                out.push(x);
            }
        }
        out[self.pivot] = -rest / &g[self.pivot];
        out
    }

    /// Direction in `H_i` with the given restricted components.
    pub fn lift_vector(&self, v: &[Rational]) -> Vec<Rational> {
        let g = &self.functional.gradient;
        let mut rest = Rational::zero();
        let mut out = Vec::with_capacity(v.len() + 1);
        let mut it = v.iter();
        for k in 0..g.len() {
            if k == self.pivot {
                out.push(Rational::zero());
            } else {
                let x = it.next().expect("restricted vector dimension").clone();
                rest += &g[k] * &x;
                out.push(x);
            }
        }
        out[self.pivot] = -rest / &g[self.pivot];
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrangementJson {
    pub ambient_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    pub hyperplanes: Vec<FunctionalJson>,
    #[serde(default = "generic_json")]
    pub infinity: InfinityJson,
}

fn generic_json() -> InfinityJson {
    InfinityJson::Mode("generic".into())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InfinityJson {
    Mode(String),
    Explicit { explicit: FunctionalJson },
}

#[cfg(test)]
mod tests;
