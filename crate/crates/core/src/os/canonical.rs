use std::sync::Arc;

use num_traits::{One, Zero};
use serde_json::{Map, Value};

use super::{os_normalize, OSElement};
use crate::arrangement::{Arrangement, Infinity, Restriction};
use crate::error::{Error, Result};
use crate::exact::rational::{self, signum};
use crate::exact::{ExactMatrix, LinearFunctional, MultiPoly, Rational, RationalForm};
use crate::region::Region;

fn sign_of_parity(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `(-1)^{n(n+1)/2}`.
fn quadrant_sign(n: usize) -> Rational {
    sign_of_parity(n * (n + 1) / 2)
}

/// `ϖ_σ = Σ_{I nbc, |I| = n} ∂_I(σ) ω_I`.
pub fn canonical_form_nbc(region: &Region) -> Result<OSElement> {
    let arr = region.arrangement().clone();
    let n = arr.ambient_dim();
    let mut terms = Vec::new();
    for set in arr.nbc_sets(n) {
        let c = region.iterated_boundary(&set)?;
        terms.push((set, Rational::from_integer(c.into())));
    }
    OSElement::from_terms(arr, n, terms)
}

fn check_bounded(region: &Region) -> Result<()> {
    if region.is_bounded() {
        Ok(())
    } else {
        Err(Error::Precondition("region is not bounded".into()))
    }
}

/// `-(ω_{c_1}∧ω_{c_2} + … + ω_{c_m}∧ω_{c_1})` for sides listed counterclockwise.
pub fn canonical_form_polygon(region: &Region, ccw: &[usize]) -> Result<OSElement> {
    let arr = region.arrangement().clone();
    if arr.ambient_dim() != 2 {
        return Err(Error::Precondition(format!(
            "polygon formula needs a planar region, got dimension {}",
            arr.ambient_dim()
        )));
    }
    check_bounded(region)?;
    for &i in ccw {
        arr.check_index(i)?;
    }
    let mut listed = ccw.to_vec();
    listed.sort_unstable();
    if listed != region.facets() {
        return Err(Error::Mismatch(format!(
            "side list {} does not match the facets {} of the region",
            label(ccw),
            label(&region.facets())
        )));
    }
    let vertices = region.vertices();
    let m = ccw.len();
    let mut corners = Vec::with_capacity(m);
    for k in 0..m {
        let (a, b) = (ccw[k], ccw[(k + 1) % m]);
        let v = vertices
            .iter()
            .find(|v| v.hyperplanes.contains(&a) && v.hyperplanes.contains(&b))
            .ok_or_else(|| Error::Mismatch(format!("sides H{} and H{} are not adjacent", a + 1, b + 1)))?;
        corners.push(v.point.clone());
    }
    let area2 = (0..m).fold(Rational::zero(), |acc, k| {
        let (p, q) = (&corners[k], &corners[(k + 1) % m]);
        acc + &p[0] * &q[1] - &p[1] * &q[0]
    });
    if area2 <= Rational::zero() {
        return Err(Error::Mismatch("sides are not listed counterclockwise".into()));
    }
    let c = -Rational::from_integer(region.orientation().into());
    let terms = (0..m).map(|k| (vec![ccw[k], ccw[(k + 1) % m]], c.clone()));
    os_normalize(&OSElement::from_terms(arr, 2, terms)?)
}

/// `Σ_v (-1)^{n(n+1)/2} ⋀_{F∋v} ω_F`, each wedge ordered so that the inward
/// normals of the facets form a positive basis.
pub fn canonical_form_simple_polytope(region: &Region) -> Result<OSElement> {
    let arr = region.arrangement().clone();
    let n = arr.ambient_dim();
    check_bounded(region)?;
    let base = quadrant_sign(n) * Rational::from_integer(region.orientation().into());
    let mut x = OSElement::zero(arr.clone(), n);
    for v in region.vertices() {
        if v.hyperplanes.len() != n {
            return Err(Error::NonSimpleVertex {
                vertex: point_label(&v.point),
                facets: v.hyperplanes.len(),
            });
        }
        let mut order = v.hyperplanes.clone();
        let inward: Vec<Vec<Rational>> = order.iter().map(|&i| region.oriented_functional(i).gradient).collect();
        let det = ExactMatrix::from_rows(n, inward).det();
        let mut c = base.clone();
        if signum(&det) < 0 {
            // a 1-dimensional vertex has a single facet, so the sign moves
            // into the coefficient
            if n >= 2 {
                order.swap(n - 2, n - 1);
            } else {
                c = -c;
            }
        }
        x = x.add(&OSElement::from_terms(arr.clone(), n, [(order, c)])?);
    }
    os_normalize(&x)
}

fn point_label(p: &[Rational]) -> String {
    format!("({})", p.iter().map(rational::to_string).collect::<Vec<_>>().join(", "))
}

pub(crate) fn label(set: &[usize]) -> String {
    format!(
        "{{{}}}",
        set.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
    )
}

/// `Res_{H_i}` with the trailing convention `Res(ω ∧ ω_i) = ω|_{H_i}`, as an
/// nbc-normal element of the restricted arrangement.
pub fn residue(x: &OSElement, i: usize) -> Result<(OSElement, Restriction)> {
    let arr = x.arrangement();
    arr.check_index(i)?;
    let x = os_normalize(x)?;
    let restriction = arr.restriction(i)?;
    let target = Arc::new(restriction.arrangement.clone());
    if x.degree() == 0 {
        return Ok((OSElement::zero(target, 0), restriction));
    }
    let k = x.degree();
    let mut out = OSElement::zero(target.clone(), k - 1);
    'terms: for (t, c) in x.terms() {
        let Some(p) = t.iter().position(|&j| j == i) else {
            continue;
        };
        let mut image = Vec::with_capacity(k - 1);
        for &j in t.iter().filter(|&&j| j != i) {
            match restriction.index_map[j] {
                Some(m) => image.push(m),
                // ω_j restricts to dlog of a constant
                None => continue 'terms,
            }
        }
        // position p is 0-based, so the sign is (-1)^{k-(p+1)}
        let term = OSElement::from_terms(target.clone(), k - 1, [(image, sign_of_parity(k - 1 - p) * c)])?;
        out = out.add(&term);
    }
    Ok((os_normalize(&out)?, restriction))
}

/// `Res_I(x)` for an independent `n`-set, applying the largest index first.
pub fn iterated_residue(x: &OSElement, set: &[usize]) -> Result<Rational> {
    let arr = x.arrangement();
    let n = arr.ambient_dim();
    if x.degree() != n || set.len() != n {
        return Err(Error::Precondition(format!(
            "iterated residues pair degree-{n} elements with {n}-sets"
        )));
    }
    for &i in set {
        arr.check_index(i)?;
    }
    let mut remaining = set.to_vec();
    remaining.sort_unstable();
    if !arr.is_independent(&remaining) {
        return Err(Error::Precondition(format!("{} is not an independent set", label(set))));
    }
    let mut current = x.clone();
    while let Some(i) = remaining.pop() {
        let (next, restriction) = residue(&current, i)?;
        remaining = remaining
            .iter()
            .map(|&j| {
                restriction.index_map[j].ok_or_else(|| {
                    Error::internal("residue-chain", format!("H{} lost its trace on H{}", j + 1, i + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        current = next;
    }
    Ok(current.coefficient(&[]))
}

/// Iterated residues at every nbc `n`-set, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerResidueVector {
    pub entries: Vec<(Vec<usize>, Rational)>,
}

impl CornerResidueVector {
    pub fn get(&self, set: &[usize]) -> Option<&Rational> {
        self.entries.iter().find(|(s, _)| s == set).map(|(_, c)| c)
    }

    /// JSON object keyed by 1-based sets such as `"1,2,3"`.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (s, c) in &self.entries {
            let key = s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
            m.insert(key, Value::String(rational::to_string(c)));
        }
        Value::Object(m)
    }

    pub fn display_plain(&self) -> String {
        self.entries
            .iter()
            .map(|(s, c)| format!("{} {}", label(s), rational::to_string(c)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

pub fn corner_residues(x: &OSElement) -> Result<CornerResidueVector> {
    let arr = x.arrangement();
    let n = arr.ambient_dim();
    let entries = arr
        .nbc_sets(n)
        .into_iter()
        .map(|s| iterated_residue(x, &s).map(|c| (s, c)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CornerResidueVector { entries })
}

/// The homogeneous numerator `A` with `x = A / ∏ f_i`, of degree `N - n - 1`
/// in `x_0, z_1, …, z_n`.
///
/// Hyperplanes missing from the denominator of `x` (cancelled factors) are
/// multiplied back into the numerator.
pub fn adjoint_polynomial(x: &RationalForm, arr: &Arrangement) -> Result<MultiPoly> {
    let n = arr.ambient_dim();
    if x.chart_dim() != n || x.degree() != n {
        return Err(Error::InvalidInput(format!(
            "adjoint needs a top-degree form on a {n}-dimensional chart"
        )));
    }
    let monic: Vec<(LinearFunctional, Rational)> = arr.hyperplanes().iter().map(|f| f.monic()).collect();
    let mut present = vec![false; arr.len()];
    for (g, e) in x.denominator() {
        let Some(i) = monic.iter().position(|(m, _)| *m == g) else {
            return Err(Error::InvalidInput("denominator has a factor outside the arrangement".into()));
        };
        if e > 1 {
            return Err(Error::InvalidInput(format!("pole of order {e} along H{}", i + 1)));
        }
        present[i] = true;
    }
    let mut numerator = x.top_numerator();
    for (i, (_, c)) in monic.iter().enumerate() {
        numerator = if present[i] {
            numerator.scale(c)
        } else {
            numerator.mul(&MultiPoly::from_linear(arr.hyperplane(i)))
        };
    }
    let Some(degree) = (arr.len() as u32).checked_sub(n as u32 + 1) else {
        return Err(Error::Precondition(format!(
            "{} hyperplanes cannot bound a region in dimension {n}",
            arr.len()
        )));
    };
    numerator
        .homogenize(degree)
        .ok_or_else(|| Error::Precondition("form has a pole along the hyperplane at infinity".into()))
}

/// Hyperplanes of `a` followed by those of `b` in `R^p × R^q`.
pub fn product_arrangement(a: &Arrangement, b: &Arrangement) -> Result<Arrangement> {
    if !a.infinity().is_generic() || !b.infinity().is_generic() {
        return Err(Error::Precondition("products need generic infinity on both factors".into()));
    }
    let (p, q) = (a.ambient_dim(), b.ambient_dim());
    let mut hs = Vec::with_capacity(a.len() + b.len());
    for f in a.hyperplanes() {
        let mut g = f.gradient.clone();
        g.extend(std::iter::repeat(Rational::zero()).take(q));
        hs.push(LinearFunctional::new(f.constant.clone(), g));
    }
    for f in b.hyperplanes() {
        let mut g = vec![Rational::zero(); p];
        g.extend(f.gradient.iter().cloned());
        hs.push(LinearFunctional::new(f.constant.clone(), g));
    }
    Arrangement::new(p + q, hs, Infinity::Generic)
}

/// `(-1)^{pq} p_1^*x ∧ p_2^*y` on the product arrangement.
pub fn product_form(x: &OSElement, y: &OSElement) -> Result<OSElement> {
    let (a, b) = (x.arrangement(), y.arrangement());
    let (p, q) = (a.ambient_dim(), b.ambient_dim());
    if x.degree() != p || y.degree() != q {
        return Err(Error::Precondition("product_form multiplies top-degree elements".into()));
    }
    let product = Arc::new(product_arrangement(a, b)?);
    let shift = a.len();
    let sign = sign_of_parity(p * q);
    let mut terms = Vec::new();
    for (s, c) in x.terms() {
        for (t, d) in y.terms() {
            let mut u = s.clone();
            u.extend(t.iter().map(|j| j + shift));
            terms.push((u, &sign * c * d));
        }
    }
    os_normalize(&OSElement::from_terms(product, p + q, terms)?)
}
