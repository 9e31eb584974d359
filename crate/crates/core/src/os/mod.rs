//! The Orlik–Solomon algebra of an arrangement and canonical forms of its
//! regions.
//!
//! Generators are `ω_i = dlog(f_i/f_0)` in explicit-infinity mode and
//! `ω_i = dlog f_i` otherwise. Index tuples are 0-based internally and printed
//! 1-based.

mod canonical;
mod normalize;
mod power;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Infinity};
use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::RationalForm;

pub use canonical::{
    adjoint_polynomial, canonical_form_nbc, canonical_form_polygon, canonical_form_simple_polytope, corner_residues,
    iterated_residue, product_arrangement, product_form, residue, CornerResidueVector,
};
pub use normalize::{os_normalize, relations, Normalizer};
pub use power::{pullback_power, pushforward_power, DlogAtom, DlogCombination, DlogCombinationJson, DlogTermJson};

/// A homogeneous element `Σ c_J ω_J` of degree `k`.
#[derive(Debug, Clone)]
pub struct OSElement {
    arrangement: Arc<Arrangement>,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
}

/// Sorts `tuple` in place, returning the permutation sign, or `None` when an
/// index repeats.
pub(crate) fn sort_with_sign(tuple: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..tuple.len() {
        let mut j = i;
        while j > 0 && tuple[j - 1] > tuple[j] {
            tuple.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if tuple.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl OSElement {
    pub fn zero(arrangement: Arc<Arrangement>, degree: usize) -> OSElement {
        OSElement {
            arrangement,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `1` in degree 0.
    pub fn one(arrangement: Arc<Arrangement>) -> OSElement {
        Self::constant(arrangement, Rational::one())
    }

    pub fn constant(arrangement: Arc<Arrangement>, c: Rational) -> OSElement {
        let mut x = Self::zero(arrangement, 0);
        x.add_term(Vec::new(), c);
        x
    }

    /// `ω_{j_1} ∧ … ∧ ω_{j_k}` in the given order.
    pub fn monomial(arrangement: Arc<Arrangement>, tuple: &[usize]) -> Result<OSElement> {
        let mut x = Self::zero(arrangement, tuple.len());
        x.add_monomial(tuple, Rational::one())?;
        Ok(x)
    }

    /// Builds `Σ c_J ω_J` from unsorted tuples of a common length.
    pub fn from_terms(
        arrangement: Arc<Arrangement>,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, Rational)>,
    ) -> Result<OSElement> {
        let mut x = Self::zero(arrangement, degree);
        for (t, c) in terms {
            if t.len() != degree {
                return Err(Error::DimensionMismatch {
                    expected: degree,
                    found: t.len(),
                });
            }
            x.add_monomial(&t, c)?;
        }
        Ok(x)
    }

    fn add_monomial(&mut self, tuple: &[usize], c: Rational) -> Result<()> {
        for &i in tuple {
            self.arrangement.check_index(i)?;
        }
        let mut t = tuple.to_vec();
        if let Some(s) = sort_with_sign(&mut t) {
            self.add_term(t, if s < 0 { -c } else { c });
        }
        Ok(())
    }

    /// Adds `c ω_t` for a sorted tuple `t`.
    pub(crate) fn add_term(&mut self, t: Vec<usize>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(t.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&t);
        }
    }

    pub fn arrangement(&self) -> &Arc<Arrangement> {
        &self.arrangement
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Terms in lexicographic tuple order.
    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, tuple: &[usize]) -> Rational {
        self.terms.get(tuple).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every tuple is an nbc set.
    pub fn is_nbc_normal(&self) -> bool {
        let nbc = self.arrangement.nbc_sets(self.degree);
        self.terms.keys().all(|t| nbc.binary_search(t).is_ok())
    }

    fn check_compatible(&self, other: &OSElement) -> Result<()> {
        if !Arc::ptr_eq(&self.arrangement, &other.arrangement) && *self.arrangement != *other.arrangement {
            return Err(Error::Mismatch("elements live on different arrangements".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &OSElement) -> Result<OSElement> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::Mismatch(format!(
                "cannot add elements of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &OSElement) -> OSElement {
        self.try_add(other).expect("compatible OS elements")
    }

    pub fn scale(&self, c: &Rational) -> OSElement {
        let mut out = Self::zero(self.arrangement.clone(), self.degree);
        for (t, a) in &self.terms {
            out.add_term(t.clone(), a * c);
        }
        out
    }

    pub fn neg(&self) -> OSElement {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &OSElement) -> OSElement {
        self.add(&other.neg())
    }

    pub fn try_wedge(&self, other: &OSElement) -> Result<OSElement> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.arrangement.clone(), self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut t = a.clone();
                t.extend_from_slice(b);
                if let Some(s) = sort_with_sign(&mut t) {
                    let c = ca * cb;
                    out.add_term(t, if s < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &OSElement) -> OSElement {
        self.try_wedge(other).expect("compatible OS elements")
    }

    /// The same element viewed on `arrangement`, which must have the same
    /// hyperplanes.
    pub fn rehomed(&self, arrangement: Arc<Arrangement>) -> Result<OSElement> {
        if *arrangement != *self.arrangement {
            return Err(Error::Mismatch("arrangements differ".into()));
        }
        Ok(OSElement {
            arrangement,
            degree: self.degree,
            terms: self.terms.clone(),
        })
    }

    /// The element under a relabelling: hyperplane `i` becomes `map[i]`.
    pub fn relabelled(&self, arrangement: Arc<Arrangement>, map: &[usize]) -> Result<OSElement> {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| (t.iter().map(|&i| map[i]).collect(), c.clone()))
            .collect::<Vec<_>>();
        Self::from_terms(arrangement, self.degree, terms)
    }

    /// Expands every monomial as a wedge of `dlog` factors and cancels.
    pub fn to_rational_form(&self) -> RationalForm {
        let arr = &self.arrangement;
        let n = arr.ambient_dim();
        let generator = |i: usize| {
            let w = RationalForm::dlog(arr.hyperplane(i));
            match arr.infinity() {
                Infinity::Explicit(f0) => w.sub(&RationalForm::dlog(f0)),
                _ => w,
            }
        };
        let generators: Vec<RationalForm> = (0..arr.len()).map(generator).collect();
        let mut total = RationalForm::zero(n, self.degree);
        for (t, c) in &self.terms {
            let mut w = RationalForm::constant(n, c.clone());
            for &i in t {
                w = w.wedge(&generators[i]);
            }
            total = total.add(&w);
        }
        total.cancel()
    }

    pub fn display_plain(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (t, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = split_sign(c);
            push_sign(&mut out, sign, k == 0, " ");
            let mono = if t.is_empty() {
                String::new()
            } else {
                format!("w{{{}}}", t.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","))
            };
            match (mag.is_one(), mono.is_empty()) {
                (true, false) => out.push_str(&mono),
                (_, true) => out.push_str(&rational::to_string(&mag)),
                (false, false) => out.push_str(&format!("{}*{}", rational::to_string(&mag), mono)),
            }
        }
        out
    }

    /// `\omega_{1}\wedge\omega_{2}` terms in lexicographic tuple order.
    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (t, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = split_sign(c);
            push_sign(&mut out, sign, k == 0, "");
            let mono = t
                .iter()
                .map(|i| format!("\\omega_{{{}}}", i + 1))
                .collect::<Vec<_>>()
                .join("\\wedge");
            let coeff = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
            };
            match (mag.is_one(), mono.is_empty()) {
                (true, false) => out.push_str(&mono),
                (_, true) => out.push_str(&coeff),
                (false, false) => out.push_str(&format!("{coeff}{mono}")),
            }
        }
        out
    }

    pub fn to_json(&self) -> OSElementJson {
        OSElementJson {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| OSTermJson {
                    indices: t.iter().map(|i| i + 1).collect(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(arrangement: Arc<Arrangement>, j: &OSElementJson) -> Result<OSElement> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.indices.iter().any(|&i| i == 0 || i > arrangement.len()) {
                return Err(Error::parse(
                    "terms.indices",
                    format!("indices must lie in 1..={}", arrangement.len()),
                ));
            }
            terms.push((t.indices.iter().map(|i| i - 1).collect(), t.coeff.clone()));
        }
        Self::from_terms(arrangement, j.degree, terms)
    }
}

fn split_sign(c: &Rational) -> (bool, Rational) {
    if *c < Rational::zero() {
        (true, -c.clone())
    } else {
        (false, c.clone())
    }
}

fn push_sign(out: &mut String, negative: bool, first: bool, pad: &str) {
    match (negative, first) {
        (true, true) => out.push('-'),
        (false, true) => {}
        (true, false) => out.push_str(&format!("{pad}-{pad}")),
        (false, false) => out.push_str(&format!("{pad}+{pad}")),
    }
}

/// Equality of representatives; compare nbc-normal elements.
impl PartialEq for OSElement {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.terms == other.terms && *self.arrangement == *other.arrangement
    }
}

impl fmt::Display for OSElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_plain())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OSElementJson {
    pub degree: usize,
    pub terms: Vec<OSTermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OSTermJson {
    pub indices: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub coeff: Rational,
}

#[cfg(test)]
mod tests;
