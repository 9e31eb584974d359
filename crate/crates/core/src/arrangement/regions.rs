//! Sign vectors and bounded-region enumeration.

use std::fmt;

use num_traits::Signed;

use super::flats::FlatPoset;
use super::Arrangement;
use crate::error::{Error, Result};
use crate::exact::lp::{recession_cone_is_trivial, strictly_positive_point};
use crate::exact::{LinearFunctional, Rational};

/// A realizable full-support sign vector with an interior witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVector {
    pub signs: Vec<i8>,
    pub witness: Vec<Rational>,
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            f.write_str(match s {
                1 => "+",
                -1 => "-",
                _ => "0",
            })?;
        }
        Ok(())
    }
}

/// Oriented functionals `s_j f_j` for a full sign vector.
pub(crate) fn oriented(arr: &Arrangement, signs: &[i8]) -> Vec<LinearFunctional> {
    arr.hyperplanes()
        .iter()
        .zip(signs)
        .map(|(f, &s)| if s < 0 { f.neg() } else { f.clone() })
        .collect()
}

impl Arrangement {
    /// Checks that the chart's infinity is generic: no flat of codimension at
    /// most `n` contains the direction at infinity of the chart.
    pub fn check_generic_infinity(&self) -> Result<()> {
        if !self.infinity().is_generic() {
            return Err(Error::Precondition(
                "bounded regions require the generic infinity mode".into(),
            ));
        }
        let poset = FlatPoset::build(self);
        for flat in poset.flats() {
            if flat.rank == 0 || flat.rank > self.ambient_dim() {
                continue;
            }
            if self.flat_contains_chart_infinity(flat) {
                return Err(Error::NonGenericInfinity { flat: flat.label() });
            }
        }
        Ok(())
    }

    /// Signs of all `f_i` at `p`, or `Degenerate` if `p` lies on a hyperplane.
    pub fn sign_vector_at(&self, p: &[Rational]) -> Result<Vec<i8>> {
        if p.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: p.len(),
            });
        }
        self.hyperplanes()
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let v = f.eval(p);
                if v.is_positive() {
                    Ok(1)
                } else if v.is_negative() {
                    Ok(-1)
                } else {
                    Err(Error::Degenerate(format!("point lies on hyperplane H{}", i + 1)))
                }
            })
            .collect()
    }

    /// All realizable full-support sign vectors, sorted, with witnesses.
    pub fn regions(&self) -> Vec<SignVector> {
        let n = self.ambient_dim();
        let mut out = Vec::new();
        let mut stack: Vec<Vec<i8>> = vec![Vec::new()];
        while let Some(prefix) = stack.pop() {
            let k = prefix.len();
            let funcs: Vec<LinearFunctional> = oriented(self, &prefix);
            let Some(w) = strictly_positive_point(&funcs, n) else {
                continue;
            };
            if k == self.len() {
                out.push(SignVector {
                    signs: prefix,
                    witness: w,
                });
                continue;
            }
            for s in [-1i8, 1] {
                let mut next = prefix.clone();
                next.push(s);
                stack.push(next);
            }
        }
        out.sort_by(|a, b| a.signs.cmp(&b.signs));
        out
    }

    /// Bounded regions of a real arrangement with generic infinity.
    pub fn bounded_regions(&self) -> Result<Vec<SignVector>> {
        self.check_generic_infinity()?;
        let n = self.ambient_dim();
        Ok(self
            .regions()
            .into_iter()
            .filter(|r| recession_cone_is_trivial(&oriented(self, &r.signs), n))
            .collect())
    }
}
