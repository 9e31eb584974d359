use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Zero;

use super::Arrangement;
use crate::exact::linear::solution_space;
use crate::exact::matrix::{in_span, rank_of};
use crate::exact::Rational;

/// A flat of the projective arrangement.
///
/// `closure` lists member labels: `0` is `H_0` (present outside generic mode)
/// and `k ≥ 1` is `H_k`. The affine part is the flat's trace on the chart, in
/// canonical form, when it is nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    pub closure: Vec<usize>,
    /// Codimension in projective space.
    pub rank: usize,
    /// Projective dimension; `-1` for the empty flat.
    pub dim: isize,
    pub basepoint: Option<Vec<Rational>>,
    pub direction_basis: Vec<Vec<Rational>>,
}

impl Flat {
    pub fn label(&self) -> String {
        format!(
            "{{{}}}",
            self.closure.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

#[derive(Debug, Clone)]
pub struct FlatPoset {
    ambient_dim: usize,
    flats: Vec<Flat>,
    moebius: Vec<i64>,
    essential: bool,
}

pub(super) struct Members {
    pub labels: Vec<usize>,
    pub vectors: Vec<Vec<Rational>>,
    pub functionals: Vec<crate::exact::LinearFunctional>,
}

impl Members {
    pub fn of(arr: &Arrangement) -> Self {
        let mut labels = Vec::new();
        let mut vectors = Vec::new();
        let mut functionals = Vec::new();
        if !arr.infinity().is_generic() {
            labels.push(0);
            vectors.push(arr.infinity_vector().to_vec());
            functionals.push(arr.infinity_functional());
        }
        for i in 0..arr.len() {
            labels.push(i + 1);
            vectors.push(arr.homogeneous(i).to_vec());
            functionals.push(arr.hyperplane(i).clone());
        }
        Members {
            labels,
            vectors,
            functionals,
        }
    }

    fn closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let basis: Vec<Vec<Rational>> = set.iter().map(|&k| self.vectors[k].clone()).collect();
        (0..self.vectors.len())
            .filter(|&k| set.contains(&k) || in_span(&basis, &self.vectors[k]))
            .collect()
    }
}

fn affine_part(
    members: &Members,
    set: &BTreeSet<usize>,
    n: usize,
) -> (Option<Vec<Rational>>, Vec<Vec<Rational>>) {
    let eqs: Vec<_> = set.iter().map(|&k| members.functionals[k].clone()).collect();
    match solution_space(&eqs, n) {
        Some((base, dir)) => (Some(base), dir),
        None => (None, Vec::new()),
    }
}

impl FlatPoset {
    pub fn build(arr: &Arrangement) -> FlatPoset {
        let n = arr.ambient_dim();
        let members = Members::of(arr);
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let bottom: BTreeSet<usize> = members.closure(&BTreeSet::new());
        let mut queue = VecDeque::from([bottom.clone()]);
        seen.insert(bottom);
        while let Some(x) = queue.pop_front() {
            for k in 0..members.vectors.len() {
                if x.contains(&k) {
                    continue;
                }
                let mut y = x.clone();
                y.insert(k);
                let y = members.closure(&y);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut flats: Vec<Flat> = seen
            .into_iter()
            .map(|set| {
                let vecs: Vec<Vec<Rational>> = set.iter().map(|&k| members.vectors[k].clone()).collect();
                let rank = rank_of(&vecs, n + 1);
                let (basepoint, direction_basis) = affine_part(&members, &set, n);
                Flat {
                    closure: set.iter().map(|&k| members.labels[k]).collect(),
                    rank,
                    dim: n as isize - rank as isize,
                    basepoint,
                    direction_basis,
                }
            })
            .collect();
        flats.sort_by(|a, b| a.rank.cmp(&b.rank).then_with(|| a.closure.cmp(&b.closure)));

        let sets: Vec<BTreeSet<usize>> = flats.iter().map(|f| f.closure.iter().copied().collect()).collect();
        let mut moebius: Vec<i64> = Vec::with_capacity(flats.len());
        for (x, sx) in sets.iter().enumerate() {
            if x == 0 {
                moebius.push(1);
                continue;
            }
            let s: i64 = (0..x)
                .filter(|&y| sets[y].is_subset(sx) && sets[y] != *sx)
                .map(|y| moebius[y])
                .sum();
            moebius.push(-s);
        }
        let essential = flats.last().is_some_and(|f| f.rank == n + 1);
        FlatPoset {
            ambient_dim: n,
            flats,
            moebius,
            essential,
        }
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn moebius(&self, k: usize) -> i64 {
        self.moebius[k]
    }

    pub fn is_essential(&self) -> bool {
        self.essential
    }

    /// Index of the empty flat when the arrangement is essential.
    pub fn top(&self) -> Option<usize> {
        self.essential.then(|| self.flats.len() - 1)
    }

    /// Whether flat `a` lies below flat `b` (reverse inclusion of loci).
    pub fn le(&self, a: usize, b: usize) -> bool {
        let sb: BTreeSet<usize> = self.flats[b].closure.iter().copied().collect();
        self.flats[a].closure.iter().all(|k| sb.contains(k))
    }

    /// `(-1)^{n-1} μ(0̂, 1̂)` when essential, else 0.
    pub fn combinatorial_rank(&self) -> i64 {
        match self.top() {
            Some(t) => {
                let sign = if self.ambient_dim % 2 == 1 { 1 } else { -1 };
                sign * self.moebius[t]
            }
            None => 0,
        }
    }

    /// Flats grouped by rank.
    pub fn by_rank(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, f) in self.flats.iter().enumerate() {
            out.entry(f.rank).or_default().push(k);
        }
        out
    }

    /// Checks `Σ_{G ≤ F} μ(G) = 0` for every `F > 0̂`.
    pub fn moebius_recursion_holds(&self) -> bool {
        (1..self.flats.len()).all(|f| {
            (0..=f)
                .filter(|&g| self.le(g, f))
                .map(|g| self.moebius[g])
                .sum::<i64>()
                == 0
        })
    }

    /// Whether the poset is graded by rank: every covering step raises rank by one.
    pub fn is_graded(&self) -> bool {
        for b in 0..self.flats.len() {
            for a in 0..self.flats.len() {
                if a == b || !self.le(a, b) {
                    continue;
                }
                let covers = !(0..self.flats.len()).any(|c| c != a && c != b && self.le(a, c) && self.le(c, b));
                if covers && self.flats[b].rank != self.flats[a].rank + 1 {
                    return false;
                }
            }
        }
        true
    }
}

impl Arrangement {
    pub fn flat_poset(&self) -> FlatPoset {
        FlatPoset::build(self)
    }

    /// `(-1)^{n-1} μ(0̂, 1̂)` of the projective arrangement, 0 if not essential.
    pub fn combinatorial_rank_moebius(&self) -> i64 {
        self.flat_poset().combinatorial_rank()
    }

    /// Labels of the flat poset members: `0` is `H_0`, `k` is `H_k`.
    pub fn member_labels(&self) -> Vec<usize> {
        Members::of(self).labels
    }

    /// Whether the chart's infinity vector lies in the span of the flat.
    pub(crate) fn flat_contains_chart_infinity(&self, flat: &Flat) -> bool {
        let members = Members::of(self);
        let vecs: Vec<Vec<Rational>> = flat
            .closure
            .iter()
            .map(|&l| members.vectors[members.labels.iter().position(|&m| m == l).unwrap()].clone())
            .collect();
        let e: Vec<Rational> = (0..=self.ambient_dim())
            .map(|k| if k == 0 { Rational::from_integer(1.into()) } else { Rational::zero() })
            .collect();
        in_span(&vecs, &e)
    }
}
