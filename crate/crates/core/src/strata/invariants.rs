use num_integer::binomial;

use crate::error::{Error, Result};

/// `cr(C) = Σ_P (r_P - 1) - (k - 1)` for a connected curve with `k`
/// components and `r_P` local branches at each singular point.
pub fn curve_rank(branches: &[u32], components: i64) -> Result<i64> {
    if components <= 0 {
        return Err(Error::InvalidInput(format!(
            "component count must be positive, got {components}"
        )));
    }
    if branches.contains(&0) {
        return Err(Error::InvalidInput("every point has at least one branch".into()));
    }
    let excess: i64 = branches.iter().map(|&r| i64::from(r) - 1).sum();
    Ok(excess - (components - 1))
}

/// Relative rank `cr(C, S)`, or the absolute rank when `S` is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelativeRank {
    Relative(i64),
    Absolute(i64),
}

impl RelativeRank {
    pub fn value(self) -> i64 {
        match self {
            RelativeRank::Relative(v) | RelativeRank::Absolute(v) => v,
        }
    }
}

/// `cr(C, S) = cr(C) + |S| - 1` for nonempty `S`.
pub fn curve_rank_relative(cr_c: i64, s: usize) -> RelativeRank {
    if s == 0 {
        RelativeRank::Absolute(cr_c)
    } else {
        RelativeRank::Relative(cr_c + s as i64 - 1)
    }
}

/// `g = (d - 1)(d - 2)/2 - Σ δ_P`.
pub fn genus_plane_curve(d: u64, deltas: &[u64]) -> Result<u64> {
    if d == 0 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    let arithmetic = (d - 1) * (d.max(2) - 2) / 2;
    let total: u64 = deltas.iter().sum();
    arithmetic.checked_sub(total).ok_or_else(|| {
        Error::InvalidInput(format!(
            "inconsistent input: δ-invariants sum to {total}, above the arithmetic genus {arithmetic}"
        ))
    })
}

/// Genus of a disjoint union: the sum over components given as
/// `(degree, δ-invariants)`.
pub fn genus_of_union(components: &[(u64, Vec<u64>)]) -> Result<u64> {
    components.iter().map(|(d, deltas)| genus_plane_curve(*d, deltas)).sum()
}

fn check_positive(n: u64, d: u64) -> Result<()> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput(format!(
            "dimension and degree must be positive, got n = {n}, d = {d}"
        )));
    }
    Ok(())
}

/// `binom(d - 1, n)` for a smooth degree-`d` hypersurface in `P^n`.
pub fn genus_smooth_hypersurface(n: u64, d: u64) -> Result<u64> {
    check_positive(n, d)?;
    Ok(binomial(u128::from(d - 1), u128::from(n)) as u64)
}

/// `binom(d - 1, n)` log forms for a normal crossing divisor of total degree
/// `d` in `P^n`.
pub fn logforms_dim_ncd(n: u64, d: u64) -> Result<u64> {
    check_positive(n, d)?;
    Ok(binomial(u128::from(d - 1), u128::from(n)) as u64)
}
