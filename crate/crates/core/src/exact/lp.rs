//! Exact linear programming: dense two-phase simplex with Bland's rule.
//!
//! Problems are tiny (a handful of variables, a few dozen constraints), so the
//! tableau is dense and reduced costs are recomputed every iteration.

use num_traits::{One, Signed, Zero};

use super::linear::LinearFunctional;
use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: Vec<Rational>, value: Rational },
    Unbounded,
    Infeasible,
}

/// One constraint `coeffs · x ≤ bound`.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub bound: Rational,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&prow) {
                *x -= &f * y;
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost · y` over columns `< allowed`, starting from the current
    /// feasible basis. Returns false when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    r -= &cost[b] * &self.rows[i][j];
                }
                r.is_positive()
            });
            let Some(j) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][j].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((i, _)) => self.pivot(i, j),
            }
        }
    }

    fn value_of(&self, var: usize) -> Rational {
        self.basis
            .iter()
            .position(|&b| b == var)
            .map_or_else(Rational::zero, |i| self.rhs[i].clone())
    }
}

/// Maximizes `objective · x` over free variables `x` subject to `constraints`.
pub fn maximize(objective: &[Rational], constraints: &[Constraint]) -> LpOutcome {
    let n = objective.len();
    let m = constraints.len();
    // Columns: x+ (n), x- (n), slacks (m), artificials (one per negative bound).
    let n_real = 2 * n + m;
    let needs_art: Vec<usize> = (0..m).filter(|&i| constraints[i].bound.is_negative()).collect();
    let total = n_real + needs_art.len();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for (i, c) in constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), n, "constraint dimension");
        let mut row = vec![Rational::zero(); total];
        for k in 0..n {
            row[k] = c.coeffs[k].clone();
            row[n + k] = -c.coeffs[k].clone();
        }
        row[2 * n + i] = Rational::one();
        let mut b = c.bound.clone();
        if let Some(a) = needs_art.iter().position(|&r| r == i) {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            b = -b;
            row[n_real + a] = Rational::one();
            basis.push(n_real + a);
        } else {
            basis.push(2 * n + i);
        }
        rows.push(row);
        rhs.push(b);
    }
    let mut t = Tableau { rows, rhs, basis };

    if !needs_art.is_empty() {
        let mut cost = vec![Rational::zero(); total];
        for c in cost.iter_mut().skip(n_real) {
            *c = -Rational::one();
        }
        t.optimize(&cost, total);
        let infeasible = (n_real..total).any(|a| !t.value_of(a).is_zero());
        if infeasible {
            return LpOutcome::Infeasible;
        }
        // Drive zero-valued artificials out of the basis where possible; rows
        // where that fails are redundant and keep an inert artificial.
        for r in 0..m {
            if t.basis[r] >= n_real {
                if let Some(j) = (0..n_real).find(|&j| !t.rows[r][j].is_zero()) {
                    t.pivot(r, j);
                }
            }
        }
    }

    let mut cost = vec![Rational::zero(); total];
    for k in 0..n {
        cost[k] = objective[k].clone();
        cost[n + k] = -objective[k].clone();
    }
    if !t.optimize(&cost, n_real) {
        return LpOutcome::Unbounded;
    }
    let point: Vec<Rational> = (0..n).map(|k| t.value_of(k) - t.value_of(n + k)).collect();
    let value = objective
        .iter()
        .zip(&point)
        .fold(Rational::zero(), |acc, (c, x)| acc + c * x);
    LpOutcome::Optimal { point, value }
}

/// A point where every functional is strictly positive, if one exists.
pub fn strictly_positive_point(functionals: &[LinearFunctional], num_vars: usize) -> Option<Vec<Rational>> {
    // Variables (x, s): maximize s with f_j(x) ≥ s and s ≤ 1.
    let mut constraints = Vec::with_capacity(functionals.len() + 1);
    for f in functionals {
        let mut coeffs: Vec<Rational> = f.gradient.iter().map(|g| -g.clone()).collect();
        coeffs.push(Rational::one());
        constraints.push(Constraint {
            coeffs,
            bound: f.constant.clone(),
        });
    }
    let mut cap = vec![Rational::zero(); num_vars];
    cap.push(Rational::one());
    constraints.push(Constraint {
        coeffs: cap.clone(),
        bound: Rational::one(),
    });
    match maximize(&cap, &constraints) {
        LpOutcome::Optimal { mut point, value } if value.is_positive() => {
            point.truncate(num_vars);
            Some(point)
        }
        _ => None,
    }
}

/// Whether `{x : f_j(x) ≥ 0}` has a trivial recession cone, i.e. is bounded
/// whenever it is nonempty.
pub fn recession_cone_is_trivial(functionals: &[LinearFunctional], num_vars: usize) -> bool {
    let mut constraints: Vec<Constraint> = functionals
        .iter()
        .map(|f| Constraint {
            coeffs: f.gradient.iter().map(|g| -g.clone()).collect(),
            bound: Rational::zero(),
        })
        .collect();
    for k in 0..num_vars {
        for sign in [1i64, -1] {
            let mut coeffs = vec![Rational::zero(); num_vars];
            coeffs[k] = Rational::from_integer(sign.into());
            constraints.push(Constraint {
                coeffs,
                bound: Rational::one(),
            });
        }
    }
    for k in 0..num_vars {
        for sign in [1i64, -1] {
            let mut obj = vec![Rational::zero(); num_vars];
            obj[k] = Rational::from_integer(sign.into());
            if let LpOutcome::Optimal { value, .. } = maximize(&obj, &constraints) {
                if value.is_positive() {
                    return false;
                }
            }
        }
    }
    true
}
