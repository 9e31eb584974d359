//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::linear::LinearFunctional;
use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically: total degree first,
/// then lexicographic on the exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `num_vars` variables. Zero coefficients are never stored, so
/// equal polynomials have identical term maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(num_vars), c);
        }
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::one())
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut p = Self::zero(num_vars);
        p.terms.insert(Monomial::var(num_vars, i), Rational::one());
        p
    }

    pub fn from_terms(
        num_vars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(num_vars);
        for (exp, c) in terms {
            if exp.len() != num_vars {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    found: exp.len(),
                });
            }
            p.add_term(Monomial(exp), c);
        }
        Ok(p)
    }

    pub fn from_linear(f: &LinearFunctional) -> Self {
        let n = f.num_vars();
        let mut p = Self::constant(n, f.constant.clone());
        for (i, g) in f.gradient.iter().enumerate() {
            p.add_term(Monomial::var(n, i), g.clone());
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The constant value, if the polynomial has degree at most zero.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.coeff(&Monomial::one(self.num_vars))),
            Some(_) => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Infallible arithmetic for operands already known to share a variable count.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("variable count mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("variable count mismatch")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("variable count mismatch")
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.num_vars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.num_vars, "evaluation point dimension");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact division by an affine-linear polynomial.
    ///
    /// Returns `None` when `lin` does not divide `self`; a remainder is never
    /// approximated. A constant nonzero `lin` divides everything.
    pub fn exact_divide(&self, lin: &LinearFunctional) -> Option<Self> {
        assert_eq!(lin.num_vars(), self.num_vars, "divisor dimension");
        let Some(pivot) = lin.pivot() else {
            if lin.constant.is_zero() {
                return None;
            }
            return Some(self.scale(&(Rational::one() / &lin.constant)));
        };
        let lead = lin.gradient[pivot].clone();
        let divisor = MultiPoly::from_linear(lin);
        let mut rem = self.clone();
        let mut quot = Self::zero(self.num_vars);
        loop {
            // Any term still containing the pivot variable can be reduced.
            let next = rem
                .terms
                .iter()
                .rev()
                .find(|(m, _)| m.0[pivot] > 0)
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = next else { break };
            let mut qm = m.0.clone();
            qm[pivot] -= 1;
            let q_term = MultiPoly {
                num_vars: self.num_vars,
                terms: BTreeMap::from([(Monomial(qm), c / &lead)]),
            };
            rem = rem.sub(&q_term.mul(&divisor));
            quot = quot.add(&q_term);
        }
        if rem.is_zero() {
            Some(quot)
        } else {
            None
        }
    }

    /// Homogenizes to total degree `deg` with a new leading variable `x0`.
    /// Fails when some term already exceeds `deg`.
    pub fn homogenize(&self, deg: u32) -> Option<Self> {
        let mut out = Self::zero(self.num_vars + 1);
        for (m, c) in &self.terms {
            let d = m.degree();
            if d > deg {
                return None;
            }
            let mut e = Vec::with_capacity(self.num_vars + 1);
            e.push(deg - d);
            e.extend_from_slice(&m.0);
            out.add_term(Monomial(e), c.clone());
        }
        Some(out)
    }

    /// Substitutes variable `var` by the polynomial `value` (same variable count).
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (m, c) in &self.terms {
            let mut rest = m.0.clone();
            let e = rest[var];
            rest[var] = 0;
            let base = MultiPoly {
                num_vars: self.num_vars,
                terms: BTreeMap::from([(Monomial(rest), c.clone())]),
            };
            out = out.add(&base.mul(&value.pow(e)));
        }
        out
    }

    /// Drops variable `var`, which must not occur in any term.
    pub fn drop_var(&self, var: usize) -> Self {
        let mut out = Self::zero(self.num_vars - 1);
        for (m, c) in &self.terms {
            assert_eq!(m.0[var], 0, "dropped variable still occurs");
            let mut e = m.0.clone();
            e.remove(var);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| TermJson {
                exp: m.0.clone(),
                coeff: c.clone(),
            })
            .collect()
    }

    pub fn from_json_terms(num_vars: usize, terms: &[TermJson]) -> Result<Self> {
        Self::from_terms(num_vars, terms.iter().map(|t| (t.exp.clone(), t.coeff.clone())))
    }

    /// Human-readable text with the given variable names, leading term first.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&rational::to_string(&abs));
            } else if abs.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", rational::to_string(&abs), mono.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.num_vars).map(|i| format!("z{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

/// One term of the JSON polynomial encoding `{"exp":[1,0,2],"coeff":"1/2"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    #[serde(with = "rational::serde_str")]
    pub coeff: Rational,
}
