//! Rational differential forms with factored linear denominators.
//!
//! A form of degree `k` on a chart of dimension `n` is
//! `Σ_S p_S dz_S / ∏ f_j^{e_j}` where `S` runs over sorted `k`-subsets of the
//! chart differentials. The denominator factors are monic, pairwise distinct
//! affine functionals, so the product is a factorization into coprime
//! irreducibles and least common multiples are exponent maxima.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::linear::{FunctionalJson, LinearFunctional};
use super::poly::{MultiPoly, TermJson};
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct RationalForm {
    chart_dim: usize,
    degree: usize,
    components: BTreeMap<Vec<usize>, MultiPoly>,
    denominator: BTreeMap<LinearFunctional, u32>,
}

/// Sign of the shuffle that sorts the concatenation of two sorted index lists,
/// or `None` when they share an index.
pub fn merge_sign(a: &[usize], b: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut inversions = 0usize;
    for x in a {
        for y in b {
            if x == y {
                return None;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    let mut merged: Vec<usize> = a.iter().chain(b).copied().collect();
    merged.sort_unstable();
    Some((if inversions % 2 == 0 { 1 } else { -1 }, merged))
}

impl RationalForm {
    pub fn zero(chart_dim: usize, degree: usize) -> Self {
        RationalForm {
            chart_dim,
            degree,
            components: BTreeMap::new(),
            denominator: BTreeMap::new(),
        }
    }

    /// The constant 0-form `c`.
    pub fn constant(chart_dim: usize, c: Rational) -> Self {
        Self::scalar_poly(chart_dim, MultiPoly::constant(chart_dim, c))
    }

    pub fn scalar_poly(chart_dim: usize, p: MultiPoly) -> Self {
        let mut f = Self::zero(chart_dim, 0);
        if !p.is_zero() {
            f.components.insert(Vec::new(), p);
        }
        f
    }

    /// `numerator · dz_1∧…∧dz_n / ∏ factors`.
    pub fn top(chart_dim: usize, numerator: MultiPoly, factors: &[(LinearFunctional, u32)]) -> Result<Self> {
        let mut comps = BTreeMap::new();
        comps.insert((0..chart_dim).collect::<Vec<_>>(), numerator);
        Self::from_parts(chart_dim, chart_dim, comps, factors)
    }

    /// Builds a form from raw parts. Denominator factors may be non-monic or
    /// repeated; scalars are moved into the numerators.
    pub fn from_parts(
        chart_dim: usize,
        degree: usize,
        components: BTreeMap<Vec<usize>, MultiPoly>,
        factors: &[(LinearFunctional, u32)],
    ) -> Result<Self> {
        if degree > chart_dim {
            return Err(Error::InvalidInput(format!(
                "form degree {degree} exceeds chart dimension {chart_dim}"
            )));
        }
        let mut scalar = Rational::one();
        let mut denominator: BTreeMap<LinearFunctional, u32> = BTreeMap::new();
        for (f, e) in factors {
            if f.num_vars() != chart_dim {
                return Err(Error::DimensionMismatch {
                    expected: chart_dim,
                    found: f.num_vars(),
                });
            }
            if *e == 0 {
                continue;
            }
            if f.is_constant() {
                if f.constant.is_zero() {
                    return Err(Error::InvalidInput("zero factor in denominator".into()));
                }
                scalar *= num_traits::pow(f.constant.clone(), *e as usize);
                continue;
            }
            let (m, c) = f.monic();
            scalar *= num_traits::pow(c, *e as usize);
            *denominator.entry(m).or_insert(0) += e;
        }
        let inv = Rational::one() / scalar;
        let mut out = RationalForm {
            chart_dim,
            degree,
            components: BTreeMap::new(),
            denominator,
        };
        for (s, p) in components {
            if s.len() != degree || s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&i| i >= chart_dim) {
                return Err(Error::InvalidInput(format!(
                    "differential index list {s:?} is not a sorted {degree}-subset"
                )));
            }
            if p.num_vars() != chart_dim {
                return Err(Error::DimensionMismatch {
                    expected: chart_dim,
                    found: p.num_vars(),
                });
            }
            out.add_component(s, p.scale(&inv));
        }
        Ok(out)
    }

    /// `dlog f = df / f`. A constant functional gives the zero 1-form.
    pub fn dlog(f: &LinearFunctional) -> Self {
        let n = f.num_vars();
        if f.is_constant() {
            return Self::zero(n, 1);
        }
        let (m, _) = f.monic();
        let mut out = Self::zero(n, 1);
        for (j, g) in m.gradient.iter().enumerate() {
            if !g.is_zero() {
                out.components.insert(vec![j], MultiPoly::constant(n, g.clone()));
            }
        }
        out.denominator.insert(m, 1);
        out
    }

    fn add_component(&mut self, s: Vec<usize>, p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        match self.components.get_mut(&s) {
            Some(q) => {
                let sum = q.add(&p);
                if sum.is_zero() {
                    self.components.remove(&s);
                } else {
                    *q = sum;
                }
            }
            None => {
                self.components.insert(s, p);
            }
        }
    }

    pub fn chart_dim(&self) -> usize {
        self.chart_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, MultiPoly> {
        &self.components
    }

    /// Monic denominator factors with exponents, sorted.
    pub fn denominator(&self) -> Vec<(LinearFunctional, u32)> {
        self.denominator.iter().map(|(f, e)| (f.clone(), *e)).collect()
    }

    /// Numerator of a top-degree form (the coefficient of `dz_1∧…∧dz_n`).
    pub fn top_numerator(&self) -> MultiPoly {
        let full: Vec<usize> = (0..self.chart_dim).collect();
        self.components
            .get(&full)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.chart_dim))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.chart_dim != other.chart_dim {
            return Err(Error::DimensionMismatch {
                expected: self.chart_dim,
                found: other.chart_dim,
            });
        }
        Ok(())
    }

    /// Rewrites the form over the denominator `target`, which must be a
    /// multiple of the current one.
    fn over(&self, target: &BTreeMap<LinearFunctional, u32>) -> BTreeMap<Vec<usize>, MultiPoly> {
        let mut mult = MultiPoly::one(self.chart_dim);
        for (f, e) in target {
            let have = self.denominator.get(f).copied().unwrap_or(0);
            debug_assert!(have <= *e);
            if *e > have {
                mult = mult.mul(&MultiPoly::from_linear(f).pow(e - have));
            }
        }
        self.components
            .iter()
            .map(|(s, p)| (s.clone(), p.mul(&mult)))
            .collect()
    }

    fn lcm(&self, other: &Self) -> BTreeMap<LinearFunctional, u32> {
        let mut d = self.denominator.clone();
        for (f, e) in &other.denominator {
            let slot = d.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        d
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            if self.is_zero() {
                return Ok(other.clone());
            }
            if other.is_zero() {
                return Ok(self.clone());
            }
            return Err(Error::InvalidInput(format!(
                "cannot add forms of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let d = self.lcm(other);
        let mut out = RationalForm {
            chart_dim: self.chart_dim,
            degree: self.degree,
            components: self.over(&d),
            denominator: d.clone(),
        };
        for (s, p) in other.over(&d) {
            out.add_component(s, p);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("incompatible forms")
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.chart_dim, self.degree);
        }
        RationalForm {
            chart_dim: self.chart_dim,
            degree: self.degree,
            components: self.components.iter().map(|(s, p)| (s.clone(), p.scale(c))).collect(),
            denominator: self.denominator.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn try_wedge(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let degree = self.degree + other.degree;
        if degree > self.chart_dim {
            return Ok(Self::zero(self.chart_dim, self.chart_dim));
        }
        let mut denominator = self.denominator.clone();
        for (f, e) in &other.denominator {
            *denominator.entry(f.clone()).or_insert(0) += e;
        }
        let mut out = RationalForm {
            chart_dim: self.chart_dim,
            degree,
            components: BTreeMap::new(),
            denominator,
        };
        for (s, p) in &self.components {
            for (t, q) in &other.components {
                if let Some((sign, merged)) = merge_sign(s, t) {
                    out.add_component(merged, p.mul(q).scale(&Rational::from_integer(sign.into())));
                }
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.try_wedge(other).expect("incompatible forms")
    }

    /// Divides out every denominator factor that divides all numerators.
    /// Never changes the value of the form.
    pub fn cancel(&self) -> Self {
        let mut out = self.clone();
        if out.components.is_empty() {
            out.denominator.clear();
            return out;
        }
        let factors: Vec<LinearFunctional> = out.denominator.keys().cloned().collect();
        for f in factors {
            loop {
                let e = out.denominator[&f];
                if e == 0 {
                    break;
                }
                let divided: Option<BTreeMap<Vec<usize>, MultiPoly>> = out
                    .components
                    .iter()
                    .map(|(s, p)| p.exact_divide(&f).map(|q| (s.clone(), q)))
                    .collect();
                match divided {
                    Some(c) => {
                        out.components = c;
                        *out.denominator.get_mut(&f).unwrap() -= 1;
                    }
                    None => break,
                }
            }
            if out.denominator[&f] == 0 {
                out.denominator.remove(&f);
            }
        }
        out
    }

    /// Equality by cross-multiplication over a common denominator.
    pub fn equals(&self, other: &Self) -> bool {
        if self.chart_dim != other.chart_dim {
            return false;
        }
        if self.degree != other.degree {
            return self.is_zero() && other.is_zero();
        }
        let d = self.lcm(other);
        self.over(&d) == other.over(&d)
    }

    /// Coefficients of each `dz_S` at `point`, or `None` on the polar locus.
    pub fn eval(&self, point: &[Rational]) -> Option<BTreeMap<Vec<usize>, Rational>> {
        let mut den = Rational::one();
        for (f, e) in &self.denominator {
            den *= num_traits::pow(f.eval(point), *e as usize);
        }
        if den.is_zero() {
            return None;
        }
        Some(
            self.components
                .iter()
                .map(|(s, p)| (s.clone(), p.eval(point) / &den))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        )
    }

    fn differential_names(s: &[usize], names: &[String], latex: bool) -> String {
        let sep = if latex { "\\wedge " } else { "^" };
        s.iter()
            .map(|&i| format!("d{}", names[i]))
            .collect::<Vec<_>>()
            .join(sep)
    }

    fn denominator_text(&self, names: &[String]) -> String {
        self.denominator
            .iter()
            .map(|(f, e)| {
                let base = format!("({})", f.display_with(names));
                if *e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("")
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let den = self.denominator_text(names);
        let num: Vec<String> = self
            .components
            .iter()
            .map(|(s, p)| {
                let d = Self::differential_names(s, names, false);
                match (d.is_empty(), p.len() > 1) {
                    (true, _) => format!("({})", p.display_with(names)),
                    (false, _) => format!("({})*{}", p.display_with(names), d),
                }
            })
            .collect();
        if den.is_empty() {
            num.join(" + ")
        } else {
            format!("[{}] / {}", num.join(" + "), den)
        }
    }

    pub fn to_latex(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let den = self.denominator_text(names).replace('*', " ");
        self.components
            .iter()
            .map(|(s, p)| {
                let num = p.display_with(names).replace('*', " ");
                let d = Self::differential_names(s, names, true);
                let body = if den.is_empty() {
                    format!("\\left({num}\\right)")
                } else {
                    format!("\\frac{{{num}}}{{{den}}}")
                };
                if d.is_empty() {
                    body
                } else {
                    format!("{body}\\,{d}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json(&self) -> RationalFormJson {
        RationalFormJson {
            chart_dim: self.chart_dim,
            degree: self.degree,
            components: self
                .components
                .iter()
                .map(|(s, p)| ComponentJson {
                    differentials: s.iter().map(|i| i + 1).collect(),
                    numerator: p.to_json_terms(),
                })
                .collect(),
            denominator: self
                .denominator
                .iter()
                .map(|(f, e)| FactorJson {
                    functional: FunctionalJson::from_functional(None, f),
                    exp: *e,
                })
                .collect(),
        }
    }

    pub fn from_json(j: &RationalFormJson) -> Result<Self> {
        let mut comps = BTreeMap::new();
        for c in &j.components {
            if c.differentials.iter().any(|&d| d == 0) {
                return Err(Error::parse("differentials", "indices are 1-based"));
            }
            let s: Vec<usize> = c.differentials.iter().map(|d| d - 1).collect();
            comps.insert(s, MultiPoly::from_json_terms(j.chart_dim, &c.numerator)?);
        }
        let factors: Vec<(LinearFunctional, u32)> = j
            .denominator
            .iter()
            .map(|f| (f.functional.to_functional(), f.exp))
            .collect();
        Self::from_parts(j.chart_dim, j.degree, comps, &factors)
    }
}

impl PartialEq for RationalForm {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.chart_dim).map(|i| format!("z{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalFormJson {
    pub chart_dim: usize,
    pub degree: usize,
    pub components: Vec<ComponentJson>,
    pub denominator: Vec<FactorJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub differentials: Vec<usize>,
    pub numerator: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorJson {
    pub functional: FunctionalJson,
    pub exp: u32,
}
