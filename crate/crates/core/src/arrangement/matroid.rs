//! Chart matroid data: intersecting sets, circuits, broken circuits, nbc sets.

use super::Arrangement;
use crate::exact::matrix::rank_of;
use crate::exact::Rational;

/// Strictly increasing `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

impl Arrangement {
    fn vectors_of(&self, set: &[usize]) -> Vec<Vec<Rational>> {
        set.iter().map(|&i| self.homogeneous(i).to_vec()).collect()
    }

    /// Codimension of `∩_{i∈S} H_i` in projective space.
    pub fn rank_of_set(&self, set: &[usize]) -> usize {
        rank_of(&self.vectors_of(set), self.ambient_dim() + 1)
    }

    /// Whether `∩_{i∈S} H_i` meets the chart.
    pub fn intersects(&self, set: &[usize]) -> bool {
        let mut v = self.vectors_of(set);
        let r = rank_of(&v, self.ambient_dim() + 1);
        v.push(self.infinity_vector().to_vec());
        rank_of(&v, self.ambient_dim() + 1) == r + 1
    }

    /// Intersecting with codimension `|S|`.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        self.intersects(set) && self.rank_of_set(set) == set.len()
    }

    /// Minimal intersecting dependent sets, sorted lexicographically.
    pub fn circuits(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        for k in 2..=(self.ambient_dim() + 1).min(n) {
            for s in combinations(n, k) {
                if !self.intersects(&s) || self.rank_of_set(&s) == k {
                    continue;
                }
                let minimal = (0..k).all(|drop| {
                    let sub: Vec<usize> = s.iter().enumerate().filter(|(p, _)| *p != drop).map(|(_, &x)| x).collect();
                    self.rank_of_set(&sub) == k - 1
                });
                if minimal {
                    out.push(s);
                }
            }
        }
        out.sort();
        out
    }

    /// Circuits with their least element removed.
    pub fn broken_circuits(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.circuits().into_iter().map(|c| c[1..].to_vec()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Independent `k`-sets containing no broken circuit, sorted lexicographically.
    pub fn nbc_sets(&self, k: usize) -> Vec<Vec<usize>> {
        let broken = self.broken_circuits();
        combinations(self.len(), k)
            .into_iter()
            .filter(|s| self.is_independent(s))
            .filter(|s| !broken.iter().any(|b| b.iter().all(|x| s.contains(x))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_in_lex_order() {
        assert_eq!(combinations(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
        assert_eq!(combinations(6, 3).len(), 20);
    }
}
