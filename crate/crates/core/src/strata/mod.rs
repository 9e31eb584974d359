//! Dual complexes of boundary divisors, their rational homology, and closed
//! form rank and genus calculators.

mod invariants;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::arrangement::combinations;
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rational};

pub use invariants::{
    curve_rank, curve_rank_relative, genus_of_union, genus_plane_curve, genus_smooth_hypersurface, logforms_dim_ncd,
    RelativeRank,
};

/// A stratum of `Y_I`: a connected component of the intersection, with the
/// stratum of each `Y_{I∖i}` containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub name: String,
    /// Keyed by the removed component `i`.
    pub faces: BTreeMap<usize, String>,
}

/// Components `Y_i` and the connected components of every `Y_I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataInput {
    pub components: Vec<String>,
    /// Keyed by sorted index sets of size at least 2; a missing set means
    /// the intersection is empty.
    pub strata: BTreeMap<Vec<usize>, Vec<Stratum>>,
}

/// A simplex of a Δ-complex: `faces[j]` is the face opposite vertex `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplex {
    pub name: String,
    pub faces: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaComplex {
    /// `simplices[k]` lists the `k`-simplices.
    pub simplices: Vec<Vec<Simplex>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    /// `h̃_0, h̃_1, …` up to the top dimension.
    pub reduced: Vec<usize>,
    pub euler_characteristic: i64,
}

fn set_label(s: &[usize]) -> String {
    format!("[{}]", s.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

impl StrataInput {
    /// Strata of `Y_I` in lookup order, singletons included.
    fn strata_of(&self, set: &[usize]) -> Vec<Stratum> {
        if set.len() == 1 {
            return vec![Stratum {
                name: self.components[set[0]].clone(),
                faces: BTreeMap::new(),
            }];
        }
        self.strata.get(set).cloned().unwrap_or_default()
    }

    fn validate(&self) -> Result<()> {
        let n = self.components.len();
        let mut names = BTreeSet::new();
        for c in &self.components {
            if !names.insert(c.clone()) {
                return Err(Error::InconsistentStrata {
                    stratum: c.clone(),
                    message: "component name repeated".into(),
                });
            }
        }
        for (set, list) in &self.strata {
            let label = set_label(set);
            if set.len() < 2 || set.windows(2).any(|w| w[0] >= w[1]) || set.iter().any(|&i| i >= n) {
                return Err(Error::InconsistentStrata {
                    stratum: label,
                    message: format!("index sets must be sorted subsets of 0..{n} with at least two entries"),
                });
            }
            for s in list {
                if !names.insert(s.name.clone()) {
                    return Err(Error::InconsistentStrata {
                        stratum: s.name.clone(),
                        message: "stratum name repeated".into(),
                    });
                }
                let expected: BTreeSet<usize> = set.iter().copied().collect();
                let given: BTreeSet<usize> = s.faces.keys().copied().collect();
                if given != expected {
                    return Err(Error::InconsistentStrata {
                        stratum: s.name.clone(),
                        message: format!("needs exactly one containing stratum for each facet set of {label}"),
                    });
                }
                for (&i, parent) in &s.faces {
                    let sub: Vec<usize> = set.iter().copied().filter(|&j| j != i).collect();
                    if !self.strata_of(&sub).iter().any(|t| t.name == *parent) {
                        return Err(Error::InconsistentStrata {
                            stratum: s.name.clone(),
                            message: format!("{parent} is not a stratum of {}", set_label(&sub)),
                        });
                    }
                }
                // the two routes down to Y_{I∖{i,j}} must agree
                if set.len() >= 3 {
                    for (&i, pi) in &s.faces {
                        for (&j, pj) in &s.faces {
                            if i >= j {
                                continue;
                            }
                            let via_i = self.parent(set, i, pi, j);
                            let via_j = self.parent(set, j, pj, i);
                            if via_i != via_j {
                                return Err(Error::InconsistentStrata {
                                    stratum: s.name.clone(),
                                    message: format!(
                                        "containing strata disagree after removing components {i} and {j}"
                                    ),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Name of the stratum containing `name ⊂ Y_{I∖a}` after also removing `b`.
    fn parent(&self, set: &[usize], a: usize, name: &str, b: usize) -> Option<String> {
        let sub: Vec<usize> = set.iter().copied().filter(|&j| j != a).collect();
        let s = self.strata_of(&sub).into_iter().find(|t| t.name == name)?;
        if sub.len() == 1 {
            return None;
        }
        s.faces.get(&b).cloned()
    }

    /// `n + 1` coordinate hyperplanes of `P^n`: every proper intersection is
    /// nonempty and connected.
    pub fn coordinate_simplex(n: usize) -> StrataInput {
        let components: Vec<String> = (0..=n).map(|i| format!("Y{i}")).collect();
        let name = |s: &[usize]| {
            if s.len() == 1 {
                components[s[0]].clone()
            } else {
                format!("Y{}", s.iter().map(usize::to_string).collect::<Vec<_>>().join(""))
            }
        };
        let mut strata = BTreeMap::new();
        for k in 2..=n {
            for s in combinations(n + 1, k) {
                let faces = s
                    .iter()
                    .map(|&i| {
                        let sub: Vec<usize> = s.iter().copied().filter(|&j| j != i).collect();
                        (i, name(&sub))
                    })
                    .collect();
                strata.insert(s.clone(), vec![Stratum { name: name(&s), faces }]);
            }
        }
        StrataInput { components, strata }
    }

    /// A conic `C` and lines `L1`, `L2` meeting at a point `p` of `C`.
    pub fn conic_two_lines() -> StrataInput {
        let faces = |pairs: &[(usize, &str)]| pairs.iter().map(|&(i, s)| (i, s.to_string())).collect();
        let st = |name: &str, f: BTreeMap<usize, String>| Stratum {
            name: name.into(),
            faces: f,
        };
        let mut strata = BTreeMap::new();
        strata.insert(
            vec![0, 1],
            vec![st("p_CL1", faces(&[(0, "L1"), (1, "C")])), st("q1", faces(&[(0, "L1"), (1, "C")]))],
        );
        strata.insert(
            vec![0, 2],
            vec![st("p_CL2", faces(&[(0, "L2"), (2, "C")])), st("q2", faces(&[(0, "L2"), (2, "C")]))],
        );
        strata.insert(vec![1, 2], vec![st("p_L1L2", faces(&[(1, "L2"), (2, "L1")]))]);
        strata.insert(
            vec![0, 1, 2],
            vec![st("p", faces(&[(0, "p_L1L2"), (1, "p_CL2"), (2, "p_CL1")]))],
        );
        StrataInput {
            components: vec!["C".into(), "L1".into(), "L2".into()],
            strata,
        }
    }

    pub fn to_json(&self) -> StrataJson {
        StrataJson {
            components: self.components.clone(),
            strata: self
                .strata
                .iter()
                .map(|(s, list)| {
                    let entries = list
                        .iter()
                        .map(|t| StratumJson {
                            name: t.name.clone(),
                            faces: t.faces.iter().map(|(&i, p)| {
                                let sub: Vec<usize> = s.iter().copied().filter(|&j| j != i).collect();
                                (set_label(&sub), p.clone())
                            }).collect(),
                        })
                        .collect();
                    (set_label(s), entries)
                })
                .collect(),
        }
    }

    pub fn from_json(j: &StrataJson) -> Result<StrataInput> {
        let parse_set = |key: &str, field: &str| -> Result<Vec<usize>> {
            serde_json::from_str::<Vec<usize>>(key)
                .map_err(|e| Error::parse(field, format!("subset key {key:?}: {e}")))
        };
        let mut strata = BTreeMap::new();
        for (key, list) in &j.strata {
            let set = parse_set(key, "strata")?;
            let mut parsed = Vec::with_capacity(list.len());
            for t in list {
                let mut faces = BTreeMap::new();
                for (fkey, parent) in &t.faces {
                    let sub = parse_set(fkey, "strata.faces")?;
                    let removed: Vec<usize> = set.iter().copied().filter(|i| !sub.contains(i)).collect();
                    if removed.len() != 1 || sub.len() + 1 != set.len() {
                        return Err(Error::InconsistentStrata {
                            stratum: t.name.clone(),
                            message: format!("face key {fkey} is not a facet set of {key}"),
                        });
                    }
                    faces.insert(removed[0], parent.clone());
                }
                parsed.push(Stratum {
                    name: t.name.clone(),
                    faces,
                });
            }
            strata.insert(set, parsed);
        }
        let input = StrataInput {
            components: j.components.clone(),
            strata,
        };
        input.validate()?;
        Ok(input)
    }
}

/// One `k`-simplex per stratum of each `(k+1)`-fold intersection, glued along
/// the inclusions.
pub fn dual_complex(input: &StrataInput) -> Result<DeltaComplex> {
    input.validate()?;
    let n = input.components.len();
    let mut simplices: Vec<Vec<Simplex>> = Vec::new();
    // (index set, stratum name) -> position within its dimension
    let mut position: BTreeMap<(Vec<usize>, String), usize> = BTreeMap::new();
    for k in 1..=n {
        let mut layer = Vec::new();
        for set in combinations(n, k) {
            for s in input.strata_of(&set) {
                let faces = if k == 1 {
                    Vec::new()
                } else {
                    set.iter()
                        .map(|&i| {
                            let sub: Vec<usize> = set.iter().copied().filter(|&j| j != i).collect();
                            position[&(sub, s.faces[&i].clone())]
                        })
                        .collect()
                };
                position.insert((set.clone(), s.name.clone()), layer.len());
                layer.push(Simplex { name: s.name, faces });
            }
        }
        if layer.is_empty() {
            break;
        }
        simplices.push(layer);
    }
    Ok(DeltaComplex { simplices })
}

impl DeltaComplex {
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    /// Matrix of `∂_k : C_k → C_{k-1}` with rows indexed by `(k-1)`-simplices.
    pub fn boundary_matrix(&self, k: usize) -> ExactMatrix {
        let rows = self.simplices.get(k - 1).map_or(0, Vec::len);
        let cols = self.simplices.get(k).map_or(0, Vec::len);
        let mut m = ExactMatrix::zeros(rows, cols);
        for (c, s) in self.simplices.get(k).into_iter().flatten().enumerate() {
            for (j, &f) in s.faces.iter().enumerate() {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let v = m.get(f, c) + Rational::from_integer(sign.into());
                m.set(f, c, v);
            }
        }
        m
    }

    /// Whether `∂_{k-1} ∘ ∂_k = 0` in every degree.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.simplices.len()).all(|k| {
            let (a, b) = (self.boundary_matrix(k - 1), self.boundary_matrix(k));
            (0..a.nrows()).all(|i| {
                (0..b.ncols()).all(|j| {
                    (0..a.ncols())
                        .fold(Rational::from_integer(0.into()), |acc, l| acc + a.get(i, l) * b.get(l, j))
                        == Rational::from_integer(0.into())
                })
            })
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }
}

/// Reduced rational homology from exact ranks of boundary matrices; the
/// augmentation `C_0 → Q` plays the role of `∂_0`.
pub fn reduced_homology_dims(c: &DeltaComplex) -> Homology {
    let top = c.simplices.len();
    let rank = |k: usize| -> usize {
        match k {
            0 => usize::from(c.simplices.first().is_some_and(|v| !v.is_empty())),
            k if k < top => c.boundary_matrix(k).rank(),
            _ => 0,
        }
    };
    let reduced = (0..top).map(|k| c.simplices[k].len() - rank(k) - rank(k + 1)).collect();
    Homology {
        reduced,
        euler_characteristic: c.euler_characteristic(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrataJson {
    pub components: Vec<String>,
    #[serde(default)]
    pub strata: BTreeMap<String, Vec<StratumJson>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumJson {
    pub name: String,
    pub faces: BTreeMap<String, String>,
}

#[cfg(test)]
mod tests;
