use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::OSElement;
use crate::arrangement::{combinations, Arrangement};
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rational};

/// Reduction of degree-`k` elements onto the nbc basis, from a reduced echelon
/// form of the relation space whose pivots are exactly the non-nbc monomials.
#[derive(Debug)]
pub struct Normalizer {
    degree: usize,
    /// Reduced relation rows keyed by their pivot (a non-nbc monomial), with
    /// entries on the nbc monomials.
    reductions: BTreeMap<Vec<usize>, BTreeMap<Vec<usize>, Rational>>,
    nbc: Vec<Vec<usize>>,
}

/// `∂e_S = Σ_j (-1)^j e_{S∖s_j}` for sorted `S`.
fn alternating(arr: &Arc<Arrangement>, s: &[usize]) -> OSElement {
    let mut x = OSElement::zero(arr.clone(), s.len() - 1);
    for j in 0..s.len() {
        let mut t = s.to_vec();
        t.remove(j);
        let c = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
        x.add_term(t, c);
    }
    x
}

/// Spanning set of the degree-`k` relation space: monomials of sets that do
/// not meet in the chart, and `e_T ∧ ∂e_C` for circuits `C`.
pub fn relations(arr: &Arc<Arrangement>, k: usize) -> Vec<OSElement> {
    let n = arr.len();
    let mut out = Vec::new();
    for s in combinations(n, k) {
        if !arr.intersects(&s) {
            out.push(OSElement::from_terms(arr.clone(), k, [(s, Rational::one())]).expect("valid indices"));
        }
    }
    for c in arr.circuits() {
        if c.len() > k + 1 {
            continue;
        }
        let d = alternating(arr, &c);
        for t in combinations(n, k + 1 - c.len()) {
            let r = OSElement::monomial(arr.clone(), &t).expect("valid indices").wedge(&d);
            if !r.is_zero() {
                out.push(r);
            }
        }
    }
    out
}

impl Normalizer {
    pub fn build(arr: &Arc<Arrangement>, k: usize) -> Result<Normalizer> {
        let nbc = arr.nbc_sets(k);
        let mut columns: Vec<Vec<usize>> = combinations(arr.len(), k)
            .into_iter()
            .filter(|t| nbc.binary_search(t).is_err())
            .collect();
        let non_nbc = columns.len();
        columns.extend(nbc.iter().cloned());
        let position: BTreeMap<&Vec<usize>, usize> = columns.iter().enumerate().map(|(i, t)| (t, i)).collect();

        let rows: Vec<Vec<Rational>> = relations(arr, k)
            .iter()
            .map(|r| {
                let mut row = vec![Rational::zero(); columns.len()];
                for (t, c) in r.terms() {
                    row[position[t]] = c.clone();
                }
                row
            })
            .collect();
        let rref = ExactMatrix::from_rows(columns.len(), rows).rref();
        if rref.rank != non_nbc || rref.pivots.iter().any(|&p| p >= non_nbc) {
            return Err(Error::internal(
                "nbc-basis",
                format!(
                    "degree {k}: relation rank {} against {} non-nbc monomials",
                    rref.rank, non_nbc
                ),
            ));
        }
        let reductions = rref
            .pivots
            .iter()
            .enumerate()
            .map(|(r, &p)| {
                let row = rref.matrix.row(r);
                let tail = (non_nbc..columns.len())
                    .filter(|&c| !row[c].is_zero())
                    .map(|c| (columns[c].clone(), row[c].clone()))
                    .collect();
                (columns[p].clone(), tail)
            })
            .collect();
        Ok(Normalizer {
            degree: k,
            reductions,
            nbc,
        })
    }

    /// Cached normalizer of `arr` in degree `k ≤ n`.
    pub fn of(arr: &Arc<Arrangement>, k: usize) -> Result<Arc<Normalizer>> {
        let slot = &arr.os_cache[k];
        if let Some(n) = slot.get() {
            return Ok(n.clone());
        }
        let built = Arc::new(Normalizer::build(arr, k)?);
        Ok(slot.get_or_init(|| built).clone())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nbc(&self) -> &[Vec<usize>] {
        &self.nbc
    }

    fn reduce(&self, x: &OSElement) -> OSElement {
        let mut out = OSElement::zero(x.arrangement().clone(), x.degree());
        for (t, c) in x.terms() {
            match self.reductions.get(t) {
                // e_t ≡ -Σ row[s] e_s
                Some(tail) => {
                    for (s, a) in tail {
                        out.add_term(s.clone(), -(a * c));
                    }
                }
                None => out.add_term(t.clone(), c.clone()),
            }
        }
        out
    }
}

/// The nbc-normal representative of `x` modulo the Orlik–Solomon relations.
pub fn os_normalize(x: &OSElement) -> Result<OSElement> {
    let arr = x.arrangement();
    if x.degree() > arr.ambient_dim() {
        return Ok(OSElement::zero(arr.clone(), x.degree()));
    }
    Ok(Normalizer::of(arr, x.degree())?.reduce(x))
}
