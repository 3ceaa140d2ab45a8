//! Exact checks of `r_ij ≤ d_ij` and of the identities resistance distance
//! satisfies on balanced strongly connected digraphs.
//!
//! No tolerance appears anywhere here: resistances are rationals, distances
//! are integers, and every comparison is exact.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::blocks::{self, ClassCVerdict};
use crate::digraph::{Digraph, Distance, DistanceMatrix};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::{self, Rat};
use crate::spectral::{self, ResistanceResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub arcs: usize,
    pub balanced: bool,
    pub strongly_connected: bool,
}

impl GraphSummary {
    pub fn of(d: &Digraph) -> Self {
        Self {
            n: d.n(),
            arcs: d.arc_count(),
            balanced: d.is_balanced(),
            strongly_connected: d.is_strongly_connected(),
        }
    }
}

/// An ordered pair with `r_ij > d_ij`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "ser_rat")]
    pub r: Rat,
    pub d: usize,
    /// 4-place rendering of `r`.
    pub r_decimal: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcBound {
    pub holds: bool,
    /// Arc of maximal resistance, ties broken by arc order.
    pub worst_arc: Option<(usize, usize)>,
    #[serde(serialize_with = "ser_opt_rat")]
    pub worst: Option<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SuiteResult {
    Pass { checked: usize },
    Fail { checked: usize, witness: String },
    Skipped { reason: String },
}

impl SuiteResult {
    pub fn failed(&self) -> bool {
        matches!(self, SuiteResult::Fail { .. })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Timings {
    pub resistance_ms: u128,
    pub distances_ms: u128,
    pub compare_ms: u128,
    pub identities_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub graph: GraphSummary,
    pub conjecture_holds: bool,
    /// Sorted by `(i, j)`.
    pub violations: Vec<Violation>,
    pub arc_bound_holds: bool,
    pub identities: BTreeMap<String, SuiteResult>,
    /// Wall-clock data; excluded from serialized reports unless requested.
    #[serde(skip)]
    pub timings: Timings,
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat::to_exact_string(r))
}

fn ser_opt_rat<S: serde::Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => ser_rat(r, s),
        None => s.serialize_none(),
    }
}

/// Pairs `(i, j)` with `r_ij > d_ij`, comparing rationals to integers exactly.
pub fn violations(d: &Digraph, res: &ResistanceResult, dist: &DistanceMatrix) -> Vec<Violation> {
    let mut out = Vec::new();
    for i in 1..=d.n() {
        for j in 1..=d.n() {
            if i == j {
                continue;
            }
            let Distance::Finite(dij) = dist.get(i, j) else {
                continue;
            };
            let r = res.r(i, j);
            if *r > rat::int(dij as i64) {
                out.push(Violation {
                    i,
                    j,
                    r: r.clone(),
                    d: dij,
                    r_decimal: rat::to_decimal(r, 4),
                });
            }
        }
    }
    out
}

pub fn arc_bound(d: &Digraph, res: &ResistanceResult) -> ArcBound {
    let one = rat::int(1);
    let mut worst: Option<((usize, usize), Rat)> = None;
    for (u, v) in d.arcs() {
        let r = res.r(u, v);
        if worst.as_ref().is_none_or(|(_, w)| r > w) {
            worst = Some(((u, v), r.clone()));
        }
    }
    ArcBound {
        holds: worst.as_ref().is_none_or(|(_, w)| *w <= one),
        worst_arc: worst.as_ref().map(|(a, _)| *a),
        worst: worst.map(|(_, w)| w),
    }
}

/// Compares every resistance against the shortest-path distance.
pub fn check_conjecture(d: &Digraph) -> Result<VerifyReport> {
    let t0 = Instant::now();
    let res = spectral::resistance(d)?;
    let t1 = Instant::now();
    let dist = d.shortest_distances();
    let t2 = Instant::now();
    let report = report_with(d, &res, &dist);
    let t3 = Instant::now();
    Ok(VerifyReport {
        timings: Timings {
            resistance_ms: (t1 - t0).as_millis(),
            distances_ms: (t2 - t1).as_millis(),
            compare_ms: (t3 - t2).as_millis(),
            identities_ms: 0,
        },
        ..report
    })
}

/// Builds a report from an already computed resistance matrix.
pub fn report_from(d: &Digraph, res: &ResistanceResult) -> VerifyReport {
    report_with(d, res, &d.shortest_distances())
}

fn report_with(d: &Digraph, res: &ResistanceResult, dist: &DistanceMatrix) -> VerifyReport {
    let violations = violations(d, res, dist);
    VerifyReport {
        graph: GraphSummary::of(d),
        conjecture_holds: violations.is_empty(),
        violations,
        arc_bound_holds: arc_bound(d, res).holds,
        identities: BTreeMap::new(),
        timings: Timings::default(),
    }
}

/// Maximal arc resistance of a balanced strongly connected digraph and
/// whether it stays at or below one.
pub fn check_arc_bound(d: &Digraph) -> Result<ArcBound> {
    if !d.is_balanced() {
        return Err(Error::NotBalanced("arc bound"));
    }
    let res = spectral::resistance(d)?;
    Ok(arc_bound(d, &res))
}

pub const SUITE_NONNEGATIVE: &str = "nonnegativity";
pub const SUITE_ZERO_DIAGONAL: &str = "zero_diagonal_iff";
pub const SUITE_TRIANGLE: &str = "triangle_inequality";
pub const SUITE_SUM_IDENTITY: &str = "sum_identity";
pub const SUITE_ARC_COFACTOR: &str = "arc_cofactor_bound";
pub const SUITE_INDEGREE_ONE: &str = "indegree_one_arc_bound";
pub const SUITE_PARTITIONED_PINV: &str = "partitioned_pinv_matches_general";

pub const ALL_SUITES: [&str; 7] = [
    SUITE_NONNEGATIVE,
    SUITE_ZERO_DIAGONAL,
    SUITE_TRIANGLE,
    SUITE_SUM_IDENTITY,
    SUITE_ARC_COFACTOR,
    SUITE_INDEGREE_ONE,
    SUITE_PARTITIONED_PINV,
];

/// Runs every identity suite. On unbalanced input each suite is skipped,
/// since all of them assume a balanced digraph.
pub fn check_identities(d: &Digraph) -> Result<BTreeMap<String, SuiteResult>> {
    if !d.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    if !d.is_balanced() {
        return Ok(ALL_SUITES
            .iter()
            .map(|s| {
                (
                    s.to_string(),
                    SuiteResult::Skipped {
                        reason: "not balanced".into(),
                    },
                )
            })
            .collect());
    }
    let res = spectral::resistance(d)?;
    identities_from(d, &res)
}

/// Identity suites over a precomputed resistance result of a balanced graph.
pub fn identities_from(
    d: &Digraph,
    res: &ResistanceResult,
) -> Result<BTreeMap<String, SuiteResult>> {
    let n = d.n();
    let kappa = res
        .kappa
        .clone()
        .ok_or(Error::NotBalanced("identity suites"))?;
    let zero = rat::int(0);
    let one = rat::int(1);
    let two = rat::int(2);
    let pairs = || (1..=n).flat_map(move |i| (1..=n).map(move |j| (i, j)));
    let mut out = BTreeMap::new();

    let mut suite = |name: &str, checked: usize, witness: Option<String>| {
        let r = match witness {
            None => SuiteResult::Pass { checked },
            Some(w) => SuiteResult::Fail {
                checked,
                witness: w,
            },
        };
        out.insert(name.to_string(), r);
    };

    let neg = pairs().find(|&(i, j)| *res.r(i, j) < zero);
    suite(
        SUITE_NONNEGATIVE,
        n * n,
        neg.map(|(i, j)| format!("r({i},{j}) = {}", res.r(i, j))),
    );

    let zd = pairs().find(|&(i, j)| (*res.r(i, j) == zero) != (i == j));
    suite(
        SUITE_ZERO_DIAGONAL,
        n * n,
        zd.map(|(i, j)| format!("r({i},{j}) = {}", res.r(i, j))),
    );

    let mut tri = None;
    'outer: for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if *res.r(i, j) > res.r(i, k) + res.r(k, j) {
                    tri = Some(format!(
                        "r({i},{j}) = {} > r({i},{k}) + r({k},{j}) = {}",
                        res.r(i, j),
                        res.r(i, k) + res.r(k, j)
                    ));
                    break 'outer;
                }
            }
        }
    }
    suite(SUITE_TRIANGLE, n * n * n, tri);

    let mut sum_fail = None;
    let mut sum_checked = 0;
    let mut cof_fail = None;
    let mut cof_checked = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            let cof = spectral::pair_cofactor(d, i, j)?;
            sum_checked += 1;
            let lhs = res.r(i, j) + res.r(j, i);
            let rhs = &two * &cof / &kappa;
            if sum_fail.is_none() && lhs != rhs {
                sum_fail = Some(format!(
                    "r({i},{j}) + r({j},{i}) = {lhs} but 2·det/κ = {rhs}"
                ));
            }
            if d.has_arc(i, j) || d.has_arc(j, i) {
                cof_checked += 1;
                if cof_fail.is_none() && cof > kappa {
                    cof_fail = Some(format!("det L[{{{i},{j}}}ᶜ] = {cof} > κ = {kappa}"));
                }
            }
        }
    }
    suite(SUITE_SUM_IDENTITY, sum_checked, sum_fail);
    suite(SUITE_ARC_COFACTOR, cof_checked, cof_fail);

    let qualifying: Vec<(usize, usize)> = d
        .arcs()
        .filter(|&(u, v)| d.indegree(u) == 1 && d.indegree(v) == 1)
        .collect();
    let ind = qualifying
        .iter()
        .find(|&&(u, v)| *res.r(u, v) > one)
        .map(|&(u, v)| format!("arc ({u},{v}) has r = {}", res.r(u, v)));
    suite(SUITE_INDEGREE_ONE, qualifying.len(), ind);

    let general = linalg::pinv_general(&res.lap);
    let pinv_fail = (general != res.lap_pinv)
        .then(|| "partitioned pseudoinverse differs from rank-factorization pseudoinverse".into());
    suite(SUITE_PARTITIONED_PINV, 1, pinv_fail);

    Ok(out)
}

/// Conjecture check plus identity suites, timed.
pub fn check_all(d: &Digraph) -> Result<VerifyReport> {
    let mut report = check_conjecture(d)?;
    let t = Instant::now();
    report.identities = check_identities(d)?;
    report.timings.identities_ms = t.elapsed().as_millis();
    Ok(report)
}

/// Block-level verdicts next to the whole-graph verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub certificate: ClassCVerdict,
    pub whole: VerifyReport,
    /// False only if every block passes while the whole graph fails.
    pub consistent: bool,
}

/// Certifies the graph as an iterated one-point union of blocks that each
/// satisfy `r ≤ d`, then checks the whole graph.
pub fn verify_theorem_main(d: &Digraph) -> Result<TheoremReport> {
    if !d.is_connected() {
        return Err(Error::NotConnected);
    }
    let mut block_error = None;
    let certificate = blocks::class_c_certificate(d, |piece| match check_conjecture(piece) {
        Ok(r) => r.conjecture_holds,
        Err(e) => {
            block_error.get_or_insert(e);
            false
        }
    })?;
    if let Some(e) = block_error {
        return Err(e);
    }
    let whole = check_conjecture(d)?;
    let consistent = !(certificate.is_certified() && !whole.conjecture_holds);
    Ok(TheoremReport {
        certificate,
        whole,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn cycle(n: usize) -> Digraph {
        Digraph::new(n, (1..=n).map(|i| (i, i % n + 1))).unwrap()
    }

    fn cex() -> Digraph {
        Digraph::new(4, [(1, 3), (1, 4), (2, 1), (3, 1), (4, 1), (4, 2)]).unwrap()
    }

    #[test]
    fn c3_holds() {
        let r = check_conjecture(&cycle(3)).unwrap();
        assert!(r.conjecture_holds);
        let res = spectral::resistance(&cycle(3)).unwrap();
        assert_eq!(*res.r(1, 2), ratio(2, 3));
        assert_eq!(*res.r(2, 1), ratio(4, 3));
    }

    #[test]
    fn cex_violation() {
        let r = check_conjecture(&cex()).unwrap();
        assert!(!r.conjecture_holds);
        assert!(r
            .violations
            .iter()
            .any(|v| (v.i, v.j, v.d) == (3, 1, 1) && v.r == ratio(23, 20)));
        assert!(r
            .violations
            .windows(2)
            .all(|w| (w[0].i, w[0].j) < (w[1].i, w[1].j)));
        assert!(r.violations.iter().all(|v| v.r > rat::int(v.d as i64)));
    }

    #[test]
    fn arc_bounds() {
        let c3 = check_arc_bound(&cycle(3)).unwrap();
        assert!(c3.holds);
        assert_eq!(c3.worst, Some(ratio(2, 3)));
        let digon = check_arc_bound(&cycle(2)).unwrap();
        assert!(digon.holds);
        assert_eq!(digon.worst, Some(rat::int(1)));
        assert!(check_arc_bound(&cex()).is_err());
    }

    #[test]
    fn identities_skip_on_unbalanced() {
        let ids = check_identities(&cex()).unwrap();
        assert_eq!(
            ids[SUITE_SUM_IDENTITY],
            SuiteResult::Skipped {
                reason: "not balanced".into()
            }
        );
        let ids = check_identities(&cycle(4)).unwrap();
        assert_eq!(ids.len(), ALL_SUITES.len());
        assert!(ids.values().all(|s| matches!(s, SuiteResult::Pass { .. })));
    }

    #[test]
    fn not_strongly_connected() {
        let g = Digraph::new(2, [(1, 2)]).unwrap();
        assert_eq!(check_conjecture(&g), Err(Error::NotStronglyConnected));
    }
}
