use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::ExactMatrix;
use super::rational::{self, Rational};

/// Affine-linear function `constant + gradient · z` on a chart of dimension
/// `gradient.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearFunctional {
    pub constant: Rational,
    pub gradient: Vec<Rational>,
}

impl LinearFunctional {
    pub fn new(constant: Rational, gradient: Vec<Rational>) -> Self {
        LinearFunctional { constant, gradient }
    }

    /// The constant functional `1` on an `n`-dimensional chart.
    pub fn unit(n: usize) -> Self {
        LinearFunctional::new(Rational::one(), vec![Rational::zero(); n])
    }

    /// The coordinate function `z_i`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut g = vec![Rational::zero(); n];
        g[i] = Rational::one();
        LinearFunctional::new(Rational::zero(), g)
    }

    pub fn num_vars(&self) -> usize {
        self.gradient.len()
    }

    /// Index of the first nonzero gradient entry.
    pub fn pivot(&self) -> Option<usize> {
        self.gradient.iter().position(|g| !g.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.pivot().is_none()
    }

    pub fn eval(&self, z: &[Rational]) -> Rational {
        assert_eq!(z.len(), self.gradient.len(), "evaluation point dimension");
        self.gradient
            .iter()
            .zip(z)
            .fold(self.constant.clone(), |acc, (g, x)| acc + g * x)
    }

    /// Homogeneous coefficient vector `(constant, gradient...)`.
    pub fn homogeneous(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.gradient.len() + 1);
        v.push(self.constant.clone());
        v.extend(self.gradient.iter().cloned());
        v
    }

    pub fn from_homogeneous(v: &[Rational]) -> Self {
        LinearFunctional::new(v[0].clone(), v[1..].to_vec())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LinearFunctional::new(
            &self.constant * c,
            self.gradient.iter().map(|g| g * c).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Monic representative (leading gradient entry 1) and the scalar `c` with
    /// `self = c · monic`. Constant functionals are returned unchanged with `c = 1`.
    pub fn monic(&self) -> (Self, Rational) {
        match self.pivot() {
            None => (self.clone(), Rational::one()),
            Some(p) => {
                let lead = self.gradient[p].clone();
                (self.scale(&(Rational::one() / &lead)), lead)
            }
        }
    }

    /// Whether the zero loci coincide (proportional homogeneous vectors).
    pub fn same_hyperplane(&self, other: &Self) -> bool {
        proportional(&self.homogeneous(), &other.homogeneous())
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (g, name) in self.gradient.iter().zip(names) {
            if g.is_zero() {
                continue;
            }
            let neg = g < &Rational::zero();
            let abs = if neg { -g.clone() } else { g.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if abs.is_one() {
                out.push_str(name);
            } else {
                out.push_str(&format!("{}*{}", rational::to_string(&abs), name));
            }
        }
        if !self.constant.is_zero() || out.is_empty() {
            let neg = self.constant < Rational::zero();
            let abs = if neg { -self.constant.clone() } else { self.constant.clone() };
            if out.is_empty() {
                out = rational::to_string(&self.constant);
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&rational::to_string(&abs));
            }
        }
        out
    }
}

impl fmt::Display for LinearFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.num_vars()).map(|i| format!("z{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

/// Whether two nonzero vectors are scalar multiples of each other.
pub fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(p) = a.iter().position(|x| !x.is_zero()) else {
        return b.iter().all(Zero::is_zero);
    };
    if b[p].is_zero() {
        return false;
    }
    let ratio = &b[p] / &a[p];
    a.iter().zip(b).all(|(x, y)| &(x * &ratio) == y)
}

/// Common zero set of affine functionals on an `n`-dimensional chart, as a
/// basepoint (free coordinates zero) and a reduced echelon direction basis.
/// `None` when the zero set is empty.
pub fn solution_space(eqs: &[LinearFunctional], n: usize) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let rows: Vec<Vec<Rational>> = eqs.iter().map(|f| f.gradient.clone()).collect();
    let rhs: Vec<Rational> = eqs.iter().map(|f| -f.constant.clone()).collect();
    let a = ExactMatrix::from_rows(n, rows);
    let base = a.solve(&rhs)?;
    let kernel = a.kernel();
    let direction = if kernel.is_empty() {
        Vec::new()
    } else {
        let r = ExactMatrix::from_rows(n, kernel).rref();
        r.matrix.rows()[..r.rank].to_vec()
    };
    Some((base, direction))
}

/// JSON shape `{"name":"H1","constant":"0","linear":["1","0"]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(with = "rational::serde_str")]
    pub constant: Rational,
    #[serde(with = "rational::serde_str_vec")]
    pub linear: Vec<Rational>,
}

impl FunctionalJson {
    pub fn to_functional(&self) -> LinearFunctional {
        LinearFunctional::new(self.constant.clone(), self.linear.clone())
    }

    pub fn from_functional(name: Option<String>, f: &LinearFunctional) -> Self {
        FunctionalJson {
            name,
            constant: f.constant.clone(),
            linear: f.gradient.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, int};

    #[test]
    fn monic_rescaling() {
        let f = LinearFunctional::new(int(3), vec![int(0), int(-2)]);
        let (m, c) = f.monic();
        assert_eq!(m, LinearFunctional::new(frac(-3, 2), vec![int(0), int(1)]));
        assert_eq!(m.scale(&c), f);
    }

    #[test]
    fn proportional_hyperplanes() {
        let f = LinearFunctional::new(int(1), vec![int(2), int(-1)]);
        assert!(f.same_hyperplane(&f.scale(&frac(-5, 3))));
        assert!(!f.same_hyperplane(&LinearFunctional::new(int(2), vec![int(2), int(-1)])));
    }

    #[test]
    fn display() {
        let names = vec!["x".to_string(), "y".to_string()];
        let f = LinearFunctional::new(int(1), vec![int(-1), int(-1)]);
        assert_eq!(f.display_with(&names), "-x - y + 1");
        assert_eq!(LinearFunctional::unit(2).display_with(&names), "1");
    }
}
