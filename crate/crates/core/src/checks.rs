//! Invariant suites run against a user-supplied arrangement or strata input.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::arrangement::{combinations, Arrangement, Infinity};
use crate::error::{Error, Result};
use crate::exact::rational::int;
use crate::exact::{ExactMatrix, LinearFunctional, Rational};
use crate::os::{self, OSElement};
use crate::region::{FaceBoundary, Region};
use crate::strata::{self, StrataInput, Stratum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Exact,
    Arrangement,
    Region,
    Os,
    Strata,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Exact, Suite::Arrangement, Suite::Region, Suite::Os, Suite::Strata];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Exact => "exact",
            Suite::Arrangement => "arrangement",
            Suite::Region => "region",
            Suite::Os => "os",
            Suite::Strata => "strata",
        }
    }

    /// Parses a suite name; `all` selects every suite.
    pub fn parse_list(text: &str) -> Result<Vec<Suite>> {
        if text == "all" {
            return Ok(Self::ALL.to_vec());
        }
        text.split(',')
            .map(|t| {
                Self::ALL
                    .into_iter()
                    .find(|s| s.name() == t.trim())
                    .ok_or_else(|| Error::parse("suite", format!("unknown suite {t:?}")))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub invariant: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub outcomes: Vec<Outcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn first_failure(&self) -> Option<&Outcome> {
        self.outcomes.iter().find(|o| !o.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            let status = if o.passed { "pass" } else { "FAIL" };
            write!(f, "{status} {}/{}", self.suite.name(), o.invariant)?;
            if !o.detail.is_empty() {
                write!(f, ": {}", o.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// What a suite runs against.
pub enum CheckInput {
    Arrangement {
        arrangement: Arc<Arrangement>,
        region: Option<Region>,
    },
    Strata(StrataInput),
}

#[derive(Default)]
struct Recorder {
    outcomes: Vec<Outcome>,
}

impl Recorder {
    fn record(&mut self, invariant: &str, passed: bool, detail: impl Into<String>) {
        self.outcomes.push(Outcome {
            invariant: invariant.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn skip(&mut self, invariant: &str, why: &str) {
        self.record(invariant, true, format!("skipped: {why}"));
    }

    /// Records an invariant computed through fallible steps; an error counts
    /// as a failure.
    fn check(&mut self, invariant: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        match f() {
            Ok((passed, detail)) => self.record(invariant, passed, detail),
            Err(e) => self.record(invariant, false, e.to_string()),
        }
    }
}

pub fn run_suites(input: &CheckInput, suites: &[Suite]) -> Vec<SuiteReport> {
    suites
        .iter()
        .map(|&suite| {
            let mut rec = Recorder::default();
            match (suite, input) {
                (Suite::Strata, CheckInput::Strata(s)) => strata_suite(&mut rec, s),
                (Suite::Strata, CheckInput::Arrangement { arrangement, .. }) => arrangement_strata_suite(&mut rec, arrangement),
                (_, CheckInput::Strata(_)) => rec.skip("input", "strata input has no arrangement"),
                (Suite::Exact, CheckInput::Arrangement { arrangement, .. }) => exact_suite(&mut rec, arrangement),
                (Suite::Arrangement, CheckInput::Arrangement { arrangement, .. }) => arrangement_suite(&mut rec, arrangement),
                (Suite::Region, CheckInput::Arrangement { arrangement, region }) => {
                    for r in regions_under_test(arrangement, region) {
                        region_suite(&mut rec, &r);
                    }
                }
                (Suite::Os, CheckInput::Arrangement { arrangement, region }) => {
                    os_algebra_suite(&mut rec, arrangement);
                    for r in regions_under_test(arrangement, region) {
                        os_region_suite(&mut rec, &r);
                    }
                }
            }
            SuiteReport {
                suite,
                outcomes: rec.outcomes,
            }
        })
        .collect()
}

/// The given region, or else the bounded regions, or else every region.
fn regions_under_test(arr: &Arc<Arrangement>, region: &Option<Region>) -> Vec<Region> {
    if let Some(r) = region {
        return vec![r.clone()];
    }
    let cells = match arr.bounded_regions() {
        Ok(b) if !b.is_empty() => b,
        _ => arr.regions(),
    };
    cells
        .iter()
        .filter_map(|c| Region::from_point(arr.clone(), &c.witness).ok())
        .collect()
}

fn exact_suite(rec: &mut Recorder, arr: &Arrangement) {
    let rows: Vec<Vec<Rational>> = arr.hyperplanes().iter().map(LinearFunctional::homogeneous).collect();
    let m = ExactMatrix::from_rows(arr.ambient_dim() + 1, rows);
    let r = m.rref();
    rec.record("rref-idempotent", r.matrix.rref().matrix == r.matrix, "");
    let kernel = m.transpose().kernel();
    let ok = kernel.iter().all(|v| {
        (0..m.ncols()).all(|c| {
            (0..m.nrows()).fold(int(0), |acc, i| acc + &v[i] * m.get(i, c)) == int(0)
        })
    });
    rec.record("kernel-annihilates", ok, format!("{} dependencies", kernel.len()));
    rec.record(
        "rank-nullity",
        kernel.len() + m.rank() == m.nrows(),
        format!("rank {}", m.rank()),
    );
}

fn arrangement_suite(rec: &mut Recorder, arr: &Arc<Arrangement>) {
    let poset = arr.flat_poset();
    rec.record("moebius-recursion", poset.moebius_recursion_holds(), "");
    rec.record("poset-graded", poset.is_graded(), format!("{} flats", poset.flats().len()));
    let n = arr.ambient_dim();
    let nbc = arr.nbc_sets(n).len() as i64;
    let rank = arr.combinatorial_rank_moebius();
    match arr.infinity() {
        Infinity::Generic => {
            let closure = arr.projective_closure().combinatorial_rank_moebius();
            rec.record(
                "nbc-count-equals-closure-moebius-rank",
                nbc == closure,
                format!("|nbc| = {nbc}, closure rank = {closure}"),
            );
            match arr.bounded_regions() {
                Ok(b) => rec.record(
                    "bounded-regions-equal-moebius-rank",
                    b.len() as i64 == rank,
                    format!("{} bounded regions, rank = {rank}", b.len()),
                ),
                Err(Error::NonGenericInfinity { flat }) => rec.skip(
                    "bounded-regions-equal-moebius-rank",
                    &format!("flat {flat} is not generic at infinity"),
                ),
                Err(e) => rec.record("bounded-regions-equal-moebius-rank", false, e.to_string()),
            }
        }
        _ => rec.record(
            "nbc-count-equals-moebius-rank",
            nbc == rank,
            format!("|nbc| = {nbc}, rank = {rank}"),
        ),
    }
    for k in 0..=n {
        let sets = arr.nbc_sets(k);
        let ok = sets.iter().all(|s| arr.is_independent(s)) && sets.windows(2).all(|w| w[0] < w[1]);
        rec.record(&format!("nbc-{k}-independent-and-sorted"), ok, format!("{} sets", sets.len()));
    }
}

fn region_suite(rec: &mut Recorder, region: &Region) {
    let arr = region.arrangement();
    let n = arr.ambient_dim();
    let tag = format!("region at ({})", region.witness().iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", "));
    rec.check("shortcut-matches-iterated-boundary", || {
        let mut compared = 0;
        for v in region.vertices() {
            if v.hyperplanes.len() != n {
                continue;
            }
            let a = region.iterated_boundary(&v.hyperplanes)?;
            let b = region.vertex_sign_shortcut(&v.hyperplanes)?;
            if a != b {
                return Ok((false, format!("{tag}: vertex {:?} gives {a} and {b}", v.hyperplanes)));
            }
            compared += 1;
        }
        Ok((true, format!("{tag}: {compared} simple vertices")))
    });
    rec.check("reversal-negates-boundaries", || {
        let rev = region.reversed();
        for s in arr.nbc_sets(n) {
            if region.iterated_boundary(&s)? != -rev.iterated_boundary(&s)? {
                return Ok((false, format!("{tag}: corner {s:?}")));
            }
        }
        Ok((true, tag.clone()))
    });
    rec.check("boundary-chains-antisymmetric", || {
        for pair in combinations(arr.len(), 2) {
            if n < 2 || !arr.is_independent(&pair) {
                continue;
            }
            let (a, b) = (pair[0], pair[1]);
            let ab = region.boundary_chain(&[a, b])?;
            let ba = region.boundary_chain(&[b, a])?;
            if let (FaceBoundary::Face(x), FaceBoundary::Face(y)) = (&ab, &ba) {
                if x.sign() != -y.sign() || x.basis() != y.basis() {
                    return Ok((false, format!("{tag}: pair {pair:?}")));
                }
            }
        }
        Ok((true, tag.clone()))
    });
}

fn os_algebra_suite(rec: &mut Recorder, arr: &Arc<Arrangement>) {
    let n = arr.ambient_dim();
    rec.check("relations-vanish-as-forms", || {
        for k in 1..=n {
            for r in os::relations(arr, k) {
                if !r.to_rational_form().is_zero() {
                    return Ok((false, format!("relation {r}")));
                }
            }
        }
        Ok((true, String::new()))
    });
    rec.check("normalization-idempotent", || {
        for k in 0..=n {
            for t in combinations(arr.len(), k) {
                let x = os::os_normalize(&OSElement::monomial(arr.clone(), &t)?)?;
                if !x.is_nbc_normal() || os::os_normalize(&x)? != x {
                    return Ok((false, format!("monomial {t:?}")));
                }
            }
        }
        Ok((true, String::new()))
    });
    rec.check("szenes-duality", || {
        let nbc = arr.nbc_sets(n);
        for j in &nbc {
            let v = os::corner_residues(&OSElement::monomial(arr.clone(), j)?)?;
            for (i, c) in &v.entries {
                if *c != int(i64::from(i == j)) {
                    return Ok((false, format!("Res_{i:?} of w_{j:?} is {c}")));
                }
            }
        }
        Ok((true, format!("{} nbc sets", nbc.len())))
    });
}

/// A hyperplane through the witness, transverse to every coordinate axis.
fn interior_cut(region: &Region) -> LinearFunctional {
    let n = region.ambient_dim();
    let g: Vec<Rational> = (0..n).map(|i| int(if i % 2 == 0 { 3 + i as i64 } else { -(2 + i as i64) })).collect();
    let c = -region.witness().iter().zip(&g).fold(int(0), |acc, (w, a)| acc + w * a);
    LinearFunctional::new(c, g)
}

fn os_region_suite(rec: &mut Recorder, region: &Region) {
    let arr = region.arrangement();
    let tag = format!("region at ({})", region.witness().iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", "));
    rec.check("canonical-form-reversal", || {
        let w = os::canonical_form_nbc(region)?;
        Ok((os::canonical_form_nbc(&region.reversed())? == w.neg(), tag.clone()))
    });
    rec.check("residue-recursion", || {
        let w = os::canonical_form_nbc(region)?;
        for i in 0..arr.len() {
            let (res, _) = match os::residue(&w, i) {
                Ok(r) => r,
                // a trace lies at infinity of the restricted chart
                Err(Error::Precondition(_)) => continue,
                Err(e) => return Err(e),
            };
            let expected = match region.facet_region(i)? {
                Some((facet, _)) => os::canonical_form_nbc(&facet)?.rehomed(res.arrangement().clone())?,
                None => OSElement::zero(res.arrangement().clone(), res.degree()),
            };
            if res != expected {
                return Ok((false, format!("{tag}: H{}", i + 1)));
            }
        }
        Ok((true, tag.clone()))
    });
    rec.check("order-independence", || {
        let form = os::canonical_form_nbc(region)?.to_rational_form();
        let len = arr.len();
        let orders = [
            (0..len).rev().collect::<Vec<_>>(),
            (0..len).map(|k| (k + 1) % len).collect(),
        ];
        for order in orders {
            let other = os::canonical_form_nbc(&region.permuted(&order)?)?.to_rational_form();
            if other != form {
                return Ok((false, format!("{tag}: order {order:?}")));
            }
        }
        Ok((true, tag.clone()))
    });
    rec.check("triangulation-linearity", || {
        if !arr.infinity().is_generic() {
            return Ok((true, "skipped: needs generic infinity".into()));
        }
        let h = interior_cut(region);
        let (plus, minus, _) = match region.cut(&h) {
            Ok(parts) => parts,
            Err(Error::InvalidInput(_)) => return Ok((true, "skipped: cut coincides with a hyperplane".into())),
            Err(e) => return Err(e),
        };
        let sum = os::canonical_form_nbc(&plus)?
            .to_rational_form()
            .add(&os::canonical_form_nbc(&minus)?.to_rational_form())
            .cancel();
        let whole = os::canonical_form_nbc(region)?.to_rational_form();
        let cancelled = sum.denominator().iter().all(|(f, _)| !f.same_hyperplane(&h));
        Ok((sum == whole && cancelled, tag.clone()))
    });
}

/// Homogeneous vectors of the poset members: `H_0` first outside generic mode.
fn member_vectors(arr: &Arrangement) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    if !arr.infinity().is_generic() {
        out.push(arr.infinity_functional().homogeneous());
    }
    out.extend(arr.hyperplanes().iter().map(LinearFunctional::homogeneous));
    out
}

/// Whether every set of at most `n + 1` members is independent in projective
/// space.
fn general_position(arr: &Arrangement) -> bool {
    let vectors = member_vectors(arr);
    let n = arr.ambient_dim();
    let m = vectors.len();
    (1..=(n + 1).min(m)).all(|k| {
        combinations(m, k).iter().all(|s| {
            let rows: Vec<Vec<Rational>> = s.iter().map(|&i| vectors[i].clone()).collect();
            ExactMatrix::from_rows(n + 1, rows).rank() == k
        })
    })
}

/// Strata of the projective members in general position: every set of at
/// most `n` members meets in one connected linear space.
pub fn general_position_strata(arr: &Arrangement) -> Option<StrataInput> {
    if !general_position(arr) {
        return None;
    }
    let n = arr.ambient_dim();
    let m = member_vectors(arr).len();
    let components: Vec<String> = (0..m).map(|i| format!("Y{i}")).collect();
    let name = |s: &[usize]| {
        if s.len() == 1 {
            components[s[0]].clone()
        } else {
            format!("Y{}", s.iter().map(usize::to_string).collect::<Vec<_>>().join("_"))
        }
    };
    let mut strata = BTreeMap::new();
    for k in 2..=n.min(m) {
        for s in combinations(m, k) {
            let faces = s
                .iter()
                .map(|&i| (i, name(&s.iter().copied().filter(|&j| j != i).collect::<Vec<_>>())))
                .collect();
            strata.insert(s.clone(), vec![Stratum { name: name(&s), faces }]);
        }
    }
    Some(StrataInput { components, strata })
}

/// `d` projective members in general position: `binom(d-1, n)`, the Möbius
/// rank, the nbc count with the last member as `H_0`, the bounded regions
/// (generic mode) and the dual complex homology all agree.
fn arrangement_strata_suite(rec: &mut Recorder, arr: &Arc<Arrangement>) {
    let Some(input) = general_position_strata(arr) else {
        rec.skip("four-way-rank-agreement", "arrangement is not in general position");
        return;
    };
    if let Err(e) = arr.infinity().is_generic().then(|| arr.check_generic_infinity()).unwrap_or(Ok(())) {
        rec.skip("four-way-rank-agreement", &e.to_string());
        strata_suite(rec, &input);
        return;
    }
    let n = arr.ambient_dim();
    rec.check("four-way-rank-agreement", || {
        let d = member_vectors(arr).len();
        let binom = strata::logforms_dim_ncd(n as u64, d as u64)? as i64;
        let moebius = arr.combinatorial_rank_moebius();
        let (nbc, bounded) = match arr.infinity() {
            Infinity::Generic => {
                let (last, rest) = arr.hyperplanes().split_last().expect("general position needs members");
                let charted = Arrangement::new(n, rest.to_vec(), Infinity::Explicit(last.clone()))?;
                (charted.nbc_sets(n).len() as i64, arr.bounded_regions()?.len() as i64)
            }
            _ => {
                let nbc = arr.nbc_sets(n).len() as i64;
                (nbc, nbc)
            }
        };
        let c = strata::dual_complex(&input)?;
        let homology = strata::reduced_homology_dims(&c).reduced.get(n - 1).copied().unwrap_or(0) as i64;
        let detail = format!("binom {binom}, moebius {moebius}, nbc {nbc}, bounded {bounded}, dual complex {homology}");
        Ok((binom == moebius && moebius == nbc && nbc == bounded && bounded == homology, detail))
    });
    strata_suite(rec, &input);
}

fn strata_suite(rec: &mut Recorder, input: &StrataInput) {
    rec.check("dual-complex-boundary-squares-to-zero", || {
        let c = strata::dual_complex(input)?;
        Ok((c.boundary_squares_to_zero(), format!("counts {:?}", c.counts())))
    });
    rec.check("euler-characteristic", || {
        let c = strata::dual_complex(input)?;
        let h = strata::reduced_homology_dims(&c);
        let alternating: i64 = h
            .reduced
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        let reduced_euler = h.euler_characteristic - i64::from(!c.simplices.is_empty());
        Ok((alternating == reduced_euler, format!("reduced homology {:?}", h.reduced)))
    });
}
