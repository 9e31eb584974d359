//! One-variable `dlog` combinations and the power map `w ↦ w^N`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::poly::MultiPoly;
use crate::exact::rational::{self, exact_root, Rational};

/// `dlog(v - a)`, or `dlog p` for a monic polynomial `p` with no rational
/// root left to split off.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DlogAtom {
    Linear(Rational),
    /// Coefficients from the constant term up; the leading one is 1.
    Poly(Vec<Rational>),
}

impl DlogAtom {
    fn poly(&self) -> MultiPoly {
        let coeffs: Vec<Rational> = match self {
            DlogAtom::Linear(a) => vec![-a.clone(), Rational::one()],
            DlogAtom::Poly(c) => c.clone(),
        };
        MultiPoly::from_terms(
            1,
            coeffs
                .into_iter()
                .enumerate()
                .map(|(e, c)| (vec![e as u32], c)),
        )
        .expect("one variable")
    }

    fn display(&self, var: &str) -> String {
        match self {
            DlogAtom::Linear(a) if a.is_zero() => format!("dlog({var})"),
            DlogAtom::Linear(a) if *a < Rational::zero() => format!("dlog({var} + {})", rational::to_string(&-a)),
            DlogAtom::Linear(a) => format!("dlog({var} - {})", rational::to_string(a)),
            DlogAtom::Poly(_) => format!("dlog({})", self.poly().display_with(&[var.to_string()])),
        }
    }
}

/// `Σ c_a dlog(atom_a)` in one variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DlogCombination {
    variable: String,
    terms: BTreeMap<DlogAtom, Rational>,
}

impl DlogCombination {
    pub fn new(variable: impl Into<String>) -> DlogCombination {
        DlogCombination {
            variable: variable.into(),
            terms: BTreeMap::new(),
        }
    }

    /// `Σ c dlog(v - a)` from `(a, c)` pairs.
    pub fn linear(variable: impl Into<String>, terms: &[(Rational, Rational)]) -> DlogCombination {
        let mut x = Self::new(variable);
        for (a, c) in terms {
            x.add(DlogAtom::Linear(a.clone()), c.clone());
        }
        x
    }

    pub fn add(&mut self, atom: DlogAtom, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(atom.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&atom);
        }
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn terms(&self) -> &BTreeMap<DlogAtom, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The total of all coefficients weighted by atom degree: the number of
    /// poles counted with residue.
    pub fn residue_total(&self) -> Rational {
        self.terms
            .iter()
            .map(|(a, c)| match a {
                DlogAtom::Linear(_) => c.clone(),
                DlogAtom::Poly(p) => c * Rational::from_integer(((p.len() - 1) as i64).into()),
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// `(P, Q)` with the combination equal to `P/Q dv`.
    pub fn as_fraction(&self) -> (MultiPoly, MultiPoly) {
        let mut num = MultiPoly::zero(1);
        let mut den = MultiPoly::one(1);
        for (atom, c) in &self.terms {
            let p = atom.poly();
            let dp = derivative(&p);
            num = num.mul(&p).add(&dp.mul(&den).scale(c));
            den = den.mul(&p);
        }
        (num, den)
    }

    /// Equality as rational 1-forms, independent of how atoms are split.
    pub fn equivalent(&self, other: &DlogCombination) -> bool {
        let (a, b) = self.as_fraction();
        let (c, d) = other.as_fraction();
        a.mul(&d) == c.mul(&b)
    }

    pub fn to_json(&self) -> DlogCombinationJson {
        DlogCombinationJson {
            variable: self.variable.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, c)| match a {
                    DlogAtom::Linear(r) => DlogTermJson {
                        root: Some(r.clone()),
                        poly: None,
                        coeff: c.clone(),
                    },
                    DlogAtom::Poly(p) => DlogTermJson {
                        root: None,
                        poly: Some(p.clone()),
                        coeff: c.clone(),
                    },
                })
                .collect(),
        }
    }

    pub fn from_json(j: &DlogCombinationJson) -> Result<DlogCombination> {
        let mut x = Self::new(j.variable.clone());
        for (k, t) in j.terms.iter().enumerate() {
            let atom = match (&t.root, &t.poly) {
                (Some(r), None) => DlogAtom::Linear(r.clone()),
                (None, Some(p)) => {
                    if p.len() < 2 || !p.last().is_some_and(One::is_one) {
                        return Err(Error::parse(
                            "terms.poly",
                            format!("term {}: polynomial must be monic of degree at least 1", k + 1),
                        ));
                    }
                    if p.len() == 2 {
                        DlogAtom::Linear(-p[0].clone())
                    } else {
                        DlogAtom::Poly(p.clone())
                    }
                }
                _ => {
                    return Err(Error::parse(
                        "terms",
                        format!("term {}: give exactly one of root and poly", k + 1),
                    ))
                }
            };
            x.add(atom, t.coeff.clone());
        }
        Ok(x)
    }
}

impl fmt::Display for DlogCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (atom, c)) in self.terms.iter().enumerate() {
            let neg = *c < Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k == 0, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            if !mag.is_one() {
                write!(f, "{} ", rational::to_string(&mag))?;
            }
            f.write_str(&atom.display(&self.variable))?;
        }
        Ok(())
    }
}

fn derivative(p: &MultiPoly) -> MultiPoly {
    MultiPoly::from_terms(
        1,
        p.terms().filter(|(m, _)| m.0[0] > 0).map(|(m, c)| {
            let e = m.0[0];
            (vec![e - 1], c * Rational::from_integer(e.into()))
        }),
    )
    .expect("one variable")
}

fn check_power(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("the power N must be positive".into()));
    }
    Ok(())
}

/// `f_*` for `f(w) = w^N`: `dlog(w - a) ↦ dlog(z - a^N)`.
pub fn pushforward_power(x: &DlogCombination, n: u32, target: &str) -> Result<DlogCombination> {
    check_power(n)?;
    let mut out = DlogCombination::new(target);
    for (atom, c) in &x.terms {
        match atom {
            DlogAtom::Linear(a) => out.add(DlogAtom::Linear(num_traits::pow(a.clone(), n as usize)), c.clone()),
            DlogAtom::Poly(_) => {
                return Err(Error::UnsupportedForm(
                    "pushforward accepts only dlog of linear factors".into(),
                ))
            }
        }
    }
    Ok(out)
}

/// `g^*` for `g(w) = w^N`: `dlog(z - a) ↦ dlog(w^N - a)`, split into linear
/// factors at the rational `N`-th roots of `a`.
pub fn pullback_power(x: &DlogCombination, n: u32, target: &str) -> Result<DlogCombination> {
    check_power(n)?;
    let mut out = DlogCombination::new(target);
    for (atom, c) in &x.terms {
        let DlogAtom::Linear(a) = atom else {
            return Err(Error::UnsupportedForm("pullback accepts only dlog of linear factors".into()));
        };
        if a.is_zero() {
            out.add(DlogAtom::Linear(Rational::zero()), c * Rational::from_integer(n.into()));
            continue;
        }
        // w^N - a as dense coefficients
        let mut rest = vec![Rational::zero(); n as usize + 1];
        rest[0] = -a.clone();
        rest[n as usize] = Rational::one();
        let mut roots = Vec::new();
        if let Some(r) = exact_root(a, n) {
            roots.push(r.clone());
            if n % 2 == 0 {
                roots.push(-r);
            }
        }
        for r in roots {
            rest = divide_by_root(&rest, &r);
            out.add(DlogAtom::Linear(r), c.clone());
        }
        if rest.len() > 1 {
            out.add(DlogAtom::Poly(rest), c.clone());
        }
    }
    Ok(out)
}

/// Synthetic division of a dense polynomial by `v - r`, which must divide it.
fn divide_by_root(p: &[Rational], r: &Rational) -> Vec<Rational> {
    let d = p.len() - 1;
    let mut q = vec![Rational::zero(); d];
    let mut carry = Rational::zero();
    for k in (1..=d).rev() {
        carry = &p[k] + carry * r;
        q[k - 1] = carry.clone();
    }
    debug_assert!((&p[0] + carry * r).is_zero());
    q
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DlogCombinationJson {
    pub variable: String,
    pub terms: Vec<DlogTermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DlogTermJson {
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub root: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational_vec")]
    pub poly: Option<Vec<Rational>>,
    #[serde(with = "rational::serde_str")]
    pub coeff: Rational,
}

mod opt_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exact::rational::{self, Rational};

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&rational::to_string(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| rational::parse(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

mod opt_rational_vec {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exact::rational::{self, Rational};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.iter().map(rational::to_string).collect::<Vec<_>>()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        Option::<Vec<String>>::deserialize(d)?
            .map(|v| {
                v.iter()
                    .map(|t| rational::parse(t).map_err(serde::de::Error::custom))
                    .collect()
            })
            .transpose()
    }
}
