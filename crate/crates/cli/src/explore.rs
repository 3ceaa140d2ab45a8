//! Batch checks over seeded graph families.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use resdist::generators;
use resdist::rat::{self, Rat};
use resdist::rng::SplitMix64;
use resdist::{spectral, verify, Digraph};

use crate::args::{ExploreArgs, Family, OutputFormat};
use crate::{
    arc_budget, merge, output_config, piece_kind, rat_pair, table, to_json, violation_out,
    CliError, CliResult, Outcome, ViolationOut, EXIT_OK, EXIT_VIOLATION, TOOL,
};

/// A generated sample, or the reason it was not tested.
enum Drawn {
    Graph(Digraph),
    Discarded(&'static str),
}

fn draw(a: &ExploreArgs, seed: u64) -> CliResult<Drawn> {
    let s = &a.shape;
    let g = match a.family {
        Family::Cactus => generators::gen_cactus(s.blocks, s.min_len, s.max_len, seed)?,
        Family::ClassC => generators::gen_class_c(s.blocks, piece_kind(s), seed)?.graph,
        Family::Balanced => generators::gen_balanced_random(s.n, arc_budget(s.n, s.arcs), seed)?,
        Family::TwoOverlap => {
            if s.min_n < 2 || s.min_n > s.max_n {
                return Err(CliError::Usage(format!(
                    "piece size range [{}, {}] must satisfy 2 <= min <= max",
                    s.min_n, s.max_n
                )));
            }
            let mut rng = SplitMix64::new(seed);
            let piece = |rng: &mut SplitMix64| {
                let n = rng.range_inclusive(s.min_n, s.max_n);
                let budget = (n * s.arc_factor_pct / 100).clamp(n, n * (n - 1));
                generators::gen_balanced_random(n, budget, rng.next_u64())
            };
            let left = piece(&mut rng)?;
            let right = piece(&mut rng)?;
            match generators::two_vertex_overlap(&left, &right, &mut rng)? {
                Some(g) => g,
                None => return Ok(Drawn::Discarded("arc_collision")),
            }
        }
    };
    if !g.is_balanced() {
        return Ok(Drawn::Discarded("unbalanced"));
    }
    if !g.is_strongly_connected() {
        return Ok(Drawn::Discarded("not_strongly_connected"));
    }
    Ok(Drawn::Graph(g))
}

/// Largest `r_ij - d_ij` over ordered pairs `i != j` of one sample.
struct Gap {
    i: usize,
    j: usize,
    r: Rat,
    d: usize,
    gap: Rat,
}

struct Sample {
    index: usize,
    seed: u64,
    n: usize,
    violations: Vec<verify::Violation>,
    gap: Option<Gap>,
}

fn evaluate(index: usize, seed: u64, g: &Digraph) -> CliResult<Sample> {
    let res = spectral::resistance(g)?;
    let dist = g.shortest_distances();
    let mut gap: Option<Gap> = None;
    for i in 1..=g.n() {
        for j in 1..=g.n() {
            let Some(d) = dist.get(i, j).finite().filter(|_| i != j) else {
                continue;
            };
            let diff = res.r(i, j) - rat::int(d as i64);
            if gap.as_ref().is_none_or(|best| diff > best.gap) {
                gap = Some(Gap {
                    i,
                    j,
                    r: res.r(i, j).clone(),
                    d,
                    gap: diff,
                });
            }
        }
    }
    Ok(Sample {
        index,
        seed,
        n: g.n(),
        violations: verify::violations(g, &res, &dist),
        gap,
    })
}

#[derive(Serialize)]
struct GapOut {
    sample: usize,
    seed: u64,
    n: usize,
    i: usize,
    j: usize,
    r: String,
    r_decimal: String,
    d: usize,
    gap: String,
    gap_decimal: String,
}

#[derive(Serialize)]
struct FailureOut {
    sample: usize,
    seed: u64,
    n: usize,
    violations: usize,
    first: ViolationOut,
}

#[derive(Serialize)]
struct ExploreOut {
    tool: crate::Tool,
    config: serde_json::Value,
    requested: usize,
    tested: usize,
    holding: usize,
    /// Samples not tested, by reason.
    discarded: BTreeMap<&'static str, usize>,
    all_hold: bool,
    max_gap: Option<GapOut>,
    /// At most [`MAX_FAILURES`] entries, by sample index.
    failures: Vec<FailureOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

const MAX_FAILURES: usize = 20;

pub(crate) fn cmd_explore(a: &ExploreArgs) -> CliResult<Outcome> {
    let start = Instant::now();
    let places = a.output.precision as usize;
    let results: Vec<(usize, u64, Drawn)> = (0..a.count)
        .into_par_iter()
        .map(|t| {
            let seed = a.seed.wrapping_add(t as u64);
            draw(a, seed).map(|d| (t, seed, d))
        })
        .collect::<CliResult<_>>()?;
    let samples: Vec<Sample> = results
        .par_iter()
        .filter_map(|(t, seed, d)| match d {
            Drawn::Graph(g) => Some(evaluate(*t, *seed, g)),
            Drawn::Discarded(_) => None,
        })
        .collect::<CliResult<_>>()?;

    let mut discarded: BTreeMap<&'static str, usize> = BTreeMap::new();
    for (_, _, d) in &results {
        if let Drawn::Discarded(reason) = d {
            *discarded.entry(reason).or_default() += 1;
        }
    }
    let holding = samples.iter().filter(|s| s.violations.is_empty()).count();
    let mut best: Option<(&Sample, &Gap)> = None;
    for s in &samples {
        if let Some(g) = &s.gap {
            if best.is_none_or(|(_, b)| g.gap > b.gap) {
                best = Some((s, g));
            }
        }
    }
    let max_gap = best.map(|(s, g)| {
        let (r, r_decimal) = rat_pair(&g.r, places);
        let (gap, gap_decimal) = rat_pair(&g.gap, places);
        GapOut {
            sample: s.index,
            seed: s.seed,
            n: s.n,
            i: g.i,
            j: g.j,
            r,
            r_decimal,
            d: g.d,
            gap,
            gap_decimal,
        }
    });
    let failures: Vec<FailureOut> = samples
        .iter()
        .filter(|s| !s.violations.is_empty())
        .take(MAX_FAILURES)
        .map(|s| FailureOut {
            sample: s.index,
            seed: s.seed,
            n: s.n,
            violations: s.violations.len(),
            first: violation_out(&s.violations[0], places),
        })
        .collect();
    let sh = &a.shape;
    let config = merge(
        json!({
            "command": "explore",
            "family": a.family,
            "count": a.count,
            "seed": a.seed,
            "n": sh.n,
            "arcs": sh.arcs,
            "blocks": sh.blocks,
            "min_len": sh.min_len,
            "max_len": sh.max_len,
            "piece": sh.piece,
            "min_n": sh.min_n,
            "max_n": sh.max_n,
            "arc_factor_pct": sh.arc_factor_pct,
            "timings": a.timings,
        }),
        output_config(&a.output),
    );
    let out = ExploreOut {
        tool: TOOL,
        config,
        requested: a.count,
        tested: samples.len(),
        holding,
        discarded,
        all_hold: holding == samples.len(),
        max_gap,
        failures,
        elapsed_ms: a.timings.then(|| start.elapsed().as_millis()),
    };
    let body = match a.output.output_format {
        OutputFormat::Json => to_json(&out),
        OutputFormat::Table => {
            let disc: Vec<String> = out
                .discarded
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            let mut pairs = vec![
                ("requested", out.requested.to_string()),
                ("tested", out.tested.to_string()),
                ("holding", out.holding.to_string()),
                ("discarded", format!("[{}]", disc.join(", "))),
                ("all_hold", out.all_hold.to_string()),
            ];
            if let Some(g) = &out.max_gap {
                pairs.push((
                    "max_gap",
                    format!(
                        "{} ({}) at sample {} seed {}: r({},{}) = {} vs d = {}",
                        g.gap, g.gap_decimal, g.sample, g.seed, g.i, g.j, g.r, g.d
                    ),
                ));
            }
            table::key_values(&pairs)
        }
    };
    Ok(Outcome {
        body,
        dest: a.output.output.clone(),
        code: if out.all_hold {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        },
    })
}
