//! Command-line front end for the `resdist` library.
//!
//! [`run`] parses arguments, executes one command and returns the process
//! exit code: [`EXIT_OK`] when every check holds, [`EXIT_VIOLATION`] when a
//! mathematical check fails, [`EXIT_INPUT`] for unreadable or invalid input
//! and usage errors.
//!
//! Reports are pretty-printed JSON (or fixed-width tables) and contain no
//! wall-clock data unless `--timings` is given, so identical invocations
//! produce identical bytes.

pub mod args;
mod explore;
mod table;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};

use resdist::blocks::{self, ClassCVerdict};
use resdist::digraph::Distance;
use resdist::generators::{Fixture, GenKind, GenSpec, PieceKind};
use resdist::io::{self, GraphFormat};
use resdist::rat::{self, Rat};
use resdist::verify::{self, GraphSummary, SuiteResult, Timings};
use resdist::{spectral, Digraph, RatMatrix};

use args::{
    Cli, Command, ComputeArgs, DecomposeArgs, FixturesArgs, FormatArg, GenArgs, GenKindArg,
    InputArgs, OutputArgs, OutputFormat, PieceArg, ShapeArgs, VerifyArgs,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] resdist::Error),
    #[error("{path}: {source}")]
    Input {
        path: String,
        source: resdist::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            // a failed internal identity is a mathematical finding, not bad input
            CliError::Core(resdist::Error::Invariant(_)) => EXIT_VIOLATION,
            _ => EXIT_INPUT,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Text to write plus the exit code it implies.
struct Outcome {
    body: String,
    dest: Option<PathBuf>,
    code: i32,
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let result = dispatch(&cli.command).and_then(|out| {
        match &out.dest {
            Some(path) => std::fs::write(path, &out.body).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?,
            None => {
                let _ = stdout.write_all(out.body.as_bytes());
                let _ = stdout.flush();
            }
        }
        Ok(out.code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: &Command) -> CliResult<Outcome> {
    match cmd {
        Command::Compute(a) => cmd_compute(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Fixtures(a) => cmd_fixtures(a),
        Command::Explore(a) => explore::cmd_explore(a),
    }
}

#[derive(Debug, Clone, Serialize)]
struct Tool {
    name: &'static str,
    version: &'static str,
}

const TOOL: Tool = Tool {
    name: "resdist",
    version: env!("CARGO_PKG_VERSION"),
};

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

struct Loaded {
    graph: Digraph,
    /// `{"fixture": NAME}` or `{"path": PATH}`.
    source: Value,
    format: Option<FormatArg>,
}

fn infer_format(path: &Path, explicit: Option<FormatArg>) -> FormatArg {
    explicit.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => FormatArg::Json,
        _ => FormatArg::Edges,
    })
}

fn load(input: &InputArgs) -> CliResult<Loaded> {
    match (&input.source.input, &input.source.fixture) {
        (Some(path), None) => {
            let shown = path.display().to_string();
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: shown.clone(),
                source,
            })?;
            let format = infer_format(path, input.format);
            let graph = io::parse(&text, format.into()).map_err(|source| CliError::Input {
                path: shown.clone(),
                source,
            })?;
            Ok(Loaded {
                graph,
                source: json!({ "path": shown }),
                format: Some(format),
            })
        }
        (None, Some(name)) => {
            let f: Fixture = name.parse()?;
            Ok(Loaded {
                graph: f.graph(),
                source: json!({ "fixture": f.name() }),
                format: None,
            })
        }
        _ => Err(CliError::Usage(
            "exactly one of --input or --fixture is required".into(),
        )),
    }
}

fn output_config(o: &OutputArgs) -> Value {
    json!({
        "output": o.output.as_ref().map(|p| p.display().to_string()),
        "output_format": o.output_format,
        "precision": o.precision,
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

#[derive(Serialize)]
struct MatrixOut {
    exact: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decimal: Option<Vec<Vec<String>>>,
}

fn matrix_out(m: &RatMatrix, places: Option<usize>) -> MatrixOut {
    MatrixOut {
        exact: m.to_exact_rows(),
        decimal: places.map(|p| m.to_decimal_rows(p)),
    }
}

#[derive(Serialize)]
struct ComputeReport {
    tool: Tool,
    config: Value,
    graph: GraphSummary,
    arcs: Vec<(usize, usize)>,
    /// Spanning arborescences at any root; balanced inputs only.
    kappa: Option<String>,
    /// `partitioned` for balanced inputs, `rank_factorization` otherwise.
    method: &'static str,
    laplacian: MatrixOut,
    pseudoinverse: MatrixOut,
    resistance: MatrixOut,
    distances: Vec<Vec<Distance>>,
}

fn cmd_compute(a: &ComputeArgs) -> CliResult<Outcome> {
    let loaded = load(&a.input)?;
    let d = &loaded.graph;
    let res = spectral::resistance(d)?;
    let dist = d.shortest_distances();
    let places = a.output.precision as usize;
    let config = merge(
        json!({
            "command": "compute",
            "input": loaded.source,
            "format": loaded.format,
            "exact_only": a.exact_only,
        }),
        output_config(&a.output),
    );
    let method = if res.balanced_path_used {
        "partitioned"
    } else {
        "rank_factorization"
    };
    let body = match a.output.output_format {
        OutputFormat::Json => {
            let dec = (!a.exact_only).then_some(places);
            to_json(&ComputeReport {
                tool: TOOL,
                config,
                graph: GraphSummary::of(d),
                arcs: d.arcs().collect(),
                kappa: res.kappa.as_ref().map(rat::to_exact_string),
                method,
                laplacian: matrix_out(&res.lap, dec),
                pseudoinverse: matrix_out(&res.lap_pinv, dec),
                resistance: matrix_out(&res.rmat, dec),
                distances: dist.rows(),
            })
        }
        OutputFormat::Table => {
            let s = GraphSummary::of(d);
            let mut out = table::key_values(&[
                ("n", s.n.to_string()),
                ("arcs", s.arcs.to_string()),
                ("balanced", s.balanced.to_string()),
                ("strongly_connected", s.strongly_connected.to_string()),
                (
                    "kappa",
                    res.kappa.as_ref().map_or("-".into(), rat::to_exact_string),
                ),
                ("method", method.into()),
            ]);
            out.push('\n');
            let mut headers = vec!["i", "j", "L", "L+"];
            if !a.exact_only {
                headers.push("L+ (dec)");
            }
            headers.push("r");
            if !a.exact_only {
                headers.push("r (dec)");
            }
            headers.push("d");
            let mut rows = Vec::new();
            for i in 0..d.n() {
                for j in 0..d.n() {
                    let mut row = vec![
                        (i + 1).to_string(),
                        (j + 1).to_string(),
                        rat::to_exact_string(&res.lap[(i, j)]),
                        rat::to_exact_string(&res.lap_pinv[(i, j)]),
                    ];
                    if !a.exact_only {
                        row.push(rat::to_decimal(&res.lap_pinv[(i, j)], places));
                    }
                    row.push(rat::to_exact_string(&res.rmat[(i, j)]));
                    if !a.exact_only {
                        row.push(rat::to_decimal(&res.rmat[(i, j)], places));
                    }
                    row.push(dist.get(i + 1, j + 1).to_string());
                    rows.push(row);
                }
            }
            out.push_str(&table::render(&headers, &rows));
            out
        }
    };
    Ok(Outcome {
        body,
        dest: a.output.output.clone(),
        code: EXIT_OK,
    })
}

#[derive(Debug, Clone, Serialize)]
struct ViolationOut {
    i: usize,
    j: usize,
    r: String,
    r_decimal: String,
    d: usize,
}

fn violation_out(v: &verify::Violation, places: usize) -> ViolationOut {
    ViolationOut {
        i: v.i,
        j: v.j,
        r: rat::to_exact_string(&v.r),
        r_decimal: rat::to_decimal(&v.r, places),
        d: v.d,
    }
}

#[derive(Serialize)]
struct VerifyOut {
    tool: Tool,
    config: Value,
    graph: GraphSummary,
    /// Conjecture, identity suites and theorem consistency together.
    all_hold: bool,
    conjecture_holds: bool,
    arc_bound_holds: bool,
    violations: Vec<ViolationOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    identities: Option<BTreeMap<String, SuiteResult>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theorem: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<Timings>,
}

fn not_applicable(reason: &str) -> Value {
    json!({ "status": "not_applicable", "reason": reason })
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<Outcome> {
    let loaded = load(&a.input)?;
    let d = &loaded.graph;
    let places = a.output.precision as usize;
    let report = if a.identities {
        verify::check_all(d)?
    } else {
        verify::check_conjecture(d)?
    };
    let mut all_hold = report.conjecture_holds && report.identities.values().all(|s| !s.failed());
    let theorem = if !a.theorem {
        None
    } else if !d.is_balanced() {
        Some(not_applicable("not balanced"))
    } else {
        let t = verify::verify_theorem_main(d)?;
        all_hold &= t.consistent;
        Some(json!({
            "certificate": t.certificate,
            "whole_holds": t.whole.conjecture_holds,
            "consistent": t.consistent,
        }))
    };
    let config = merge(
        json!({
            "command": "verify",
            "input": loaded.source,
            "format": loaded.format,
            "identities": a.identities,
            "theorem": a.theorem,
            "timings": a.timings,
        }),
        output_config(&a.output),
    );
    let out = VerifyOut {
        tool: TOOL,
        config,
        graph: report.graph.clone(),
        all_hold,
        conjecture_holds: report.conjecture_holds,
        arc_bound_holds: report.arc_bound_holds,
        violations: report
            .violations
            .iter()
            .map(|v| violation_out(v, places))
            .collect(),
        identities: a.identities.then(|| report.identities.clone()),
        theorem,
        timings: a.timings.then(|| report.timings.clone()),
    };
    let body = match a.output.output_format {
        OutputFormat::Json => to_json(&out),
        OutputFormat::Table => verify_table(&out),
    };
    Ok(Outcome {
        body,
        dest: a.output.output.clone(),
        code: if all_hold { EXIT_OK } else { EXIT_VIOLATION },
    })
}

fn status_of(v: &Value) -> String {
    v.get("status")
        .and_then(Value::as_str)
        .unwrap_or("-")
        .to_string()
}

fn verify_table(v: &VerifyOut) -> String {
    let mut pairs = vec![
        ("n", v.graph.n.to_string()),
        ("arcs", v.graph.arcs.to_string()),
        ("balanced", v.graph.balanced.to_string()),
        ("conjecture_holds", v.conjecture_holds.to_string()),
        ("arc_bound_holds", v.arc_bound_holds.to_string()),
        ("all_hold", v.all_hold.to_string()),
    ];
    if let Some(t) = &v.theorem {
        let verdict = t.get("certificate").unwrap_or(t);
        pairs.push(("class_c", status_of(verdict)));
    }
    let mut out = table::key_values(&pairs);
    if !v.violations.is_empty() {
        out.push('\n');
        let rows: Vec<Vec<String>> = v
            .violations
            .iter()
            .map(|x| {
                vec![
                    x.i.to_string(),
                    x.j.to_string(),
                    x.r.clone(),
                    x.r_decimal.clone(),
                    x.d.to_string(),
                ]
            })
            .collect();
        out.push_str(&table::render(&["i", "j", "r", "r (dec)", "d"], &rows));
    }
    if let Some(ids) = &v.identities {
        out.push('\n');
        let rows: Vec<Vec<String>> = ids
            .iter()
            .map(|(name, s)| {
                let (status, detail) = match s {
                    SuiteResult::Pass { checked } => ("pass", checked.to_string()),
                    SuiteResult::Fail { checked, witness } => {
                        ("FAIL", format!("{checked}; {witness}"))
                    }
                    SuiteResult::Skipped { reason } => ("skipped", reason.clone()),
                };
                vec![name.clone(), status.into(), detail]
            })
            .collect();
        out.push_str(&table::render(&["suite", "status", "detail"], &rows));
    }
    out
}

#[derive(Serialize)]
struct BlockOut {
    index: usize,
    vertices: Vec<usize>,
    arcs: Vec<(usize, usize)>,
    directed_cycle: bool,
    balanced: bool,
    /// `None` when the block is not strongly connected on its own.
    conjecture_holds: Option<bool>,
}

#[derive(Serialize)]
struct DecomposeOut {
    tool: Tool,
    config: Value,
    graph: GraphSummary,
    cut_vertices: Vec<usize>,
    blocks: Vec<BlockOut>,
    block_cut_tree: Vec<(usize, usize)>,
    directed_cactus: bool,
    class_c: Value,
}

fn block_holds(piece: &Digraph) -> CliResult<Option<bool>> {
    if !piece.is_strongly_connected() {
        return Ok(None);
    }
    Ok(Some(verify::check_conjecture(piece)?.conjecture_holds))
}

fn cmd_decompose(a: &DecomposeArgs) -> CliResult<Outcome> {
    let loaded = load(&a.input)?;
    let d = &loaded.graph;
    let dec = blocks::blocks(d)?;
    let mut block_out = Vec::with_capacity(dec.blocks.len());
    for (index, b) in dec.blocks.iter().enumerate() {
        let (piece, _) = b.to_digraph(d)?;
        block_out.push(BlockOut {
            index,
            vertices: b.vertices.clone(),
            arcs: b.arcs.clone(),
            directed_cycle: b.is_directed_cycle(),
            balanced: piece.is_balanced(),
            conjecture_holds: block_holds(&piece)?,
        });
    }
    let class_c = if d.is_balanced() {
        let verdict: ClassCVerdict = blocks::class_c_certificate(d, |p| {
            verify::check_conjecture(p).is_ok_and(|r| r.conjecture_holds)
        })?;
        serde_json::to_value(verdict).expect("verdict serializes")
    } else {
        not_applicable("not balanced")
    };
    let out = DecomposeOut {
        tool: TOOL,
        config: merge(
            json!({
                "command": "decompose",
                "input": loaded.source,
                "format": loaded.format,
            }),
            output_config(&a.output),
        ),
        graph: GraphSummary::of(d),
        cut_vertices: dec.cut_vertices.iter().copied().collect(),
        blocks: block_out,
        block_cut_tree: dec.block_cut_tree.clone(),
        directed_cactus: blocks::is_directed_cactus(d),
        class_c,
    };
    let body = match a.output.output_format {
        OutputFormat::Json => to_json(&out),
        OutputFormat::Table => {
            let cuts: Vec<String> = out.cut_vertices.iter().map(usize::to_string).collect();
            let mut s = table::key_values(&[
                ("n", out.graph.n.to_string()),
                ("blocks", out.blocks.len().to_string()),
                ("cut_vertices", format!("[{}]", cuts.join(", "))),
                ("directed_cactus", out.directed_cactus.to_string()),
                ("class_c", status_of(&out.class_c)),
            ]);
            s.push('\n');
            let rows: Vec<Vec<String>> = out
                .blocks
                .iter()
                .map(|b| {
                    let vs: Vec<String> = b.vertices.iter().map(usize::to_string).collect();
                    vec![
                        b.index.to_string(),
                        vs.join(","),
                        b.arcs.len().to_string(),
                        b.directed_cycle.to_string(),
                        b.balanced.to_string(),
                        b.conjecture_holds.map_or("-".into(), |h| h.to_string()),
                    ]
                })
                .collect();
            s.push_str(&table::render(
                &["block", "vertices", "arcs", "cycle", "balanced", "r<=d"],
                &rows,
            ));
            s
        }
    };
    Ok(Outcome {
        body,
        dest: a.output.output.clone(),
        code: EXIT_OK,
    })
}

/// Arc budget for balanced random graphs: `--arcs`, else `2n`, clamped to
/// the feasible range `n..=n(n-1)`.
pub(crate) fn arc_budget(n: usize, arcs: Option<usize>) -> usize {
    let hi = n * n.saturating_sub(1);
    arcs.unwrap_or(2 * n).clamp(n.min(hi), hi.max(n))
}

pub(crate) fn piece_kind(s: &ShapeArgs) -> PieceKind {
    match s.piece {
        PieceArg::Cycle => PieceKind::Cycle {
            min_len: s.min_len,
            max_len: s.max_len,
        },
        PieceArg::BalancedRandom => PieceKind::BalancedRandom {
            min_n: s.min_n,
            max_n: s.max_n,
            arc_factor_pct: s.arc_factor_pct,
        },
    }
}

fn gen_spec(a: &GenArgs) -> CliResult<GenSpec> {
    if let Some(raw) = &a.spec {
        let text = match raw.strip_prefix('@') {
            Some(path) => std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.to_string(),
                source,
            })?,
            None => raw.clone(),
        };
        return serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid --spec: {e}")));
    }
    let s = &a.shape;
    let kind = match a.kind.expect("clap requires --kind without --spec") {
        GenKindArg::Cycle => GenKind::Cycle { n: s.n },
        GenKindArg::Digon => GenKind::Digon,
        GenKindArg::Cactus => GenKind::Cactus {
            blocks: s.blocks,
            min_len: s.min_len,
            max_len: s.max_len,
        },
        GenKindArg::BalancedRandom => GenKind::BalancedRandom {
            n: s.n,
            arcs: arc_budget(s.n, s.arcs),
        },
        GenKindArg::ClassCUnion => GenKind::ClassCUnion {
            blocks: s.blocks,
            piece: piece_kind(s),
        },
    };
    Ok(GenSpec { kind, seed: a.seed })
}

fn cmd_gen(a: &GenArgs) -> CliResult<Outcome> {
    let spec = gen_spec(a)?;
    let graph = spec.generate()?;
    Ok(Outcome {
        body: io::emit(&graph, a.format.into()),
        dest: a.output.clone(),
        code: EXIT_OK,
    })
}

#[derive(Serialize)]
struct FixtureOut {
    name: &'static str,
    n: usize,
    arcs: usize,
    balanced: bool,
    strongly_connected: bool,
    provenance: &'static str,
}

fn cmd_fixtures(a: &FixturesArgs) -> CliResult<Outcome> {
    if let Some(name) = &a.fixture {
        let f: Fixture = name.parse()?;
        return Ok(Outcome {
            body: io::emit(&f.graph(), GraphFormat::from(a.format)),
            dest: a.output.clone(),
            code: EXIT_OK,
        });
    }
    let list: Vec<FixtureOut> = Fixture::ALL
        .iter()
        .map(|&f| {
            let g = f.graph();
            FixtureOut {
                name: f.name(),
                n: g.n(),
                arcs: g.arc_count(),
                balanced: g.is_balanced(),
                strongly_connected: g.is_strongly_connected(),
                provenance: f.provenance(),
            }
        })
        .collect();
    let body = match a.output_format {
        OutputFormat::Json => to_json(&json!({ "tool": TOOL, "fixtures": list })),
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = list
                .iter()
                .map(|f| {
                    vec![
                        f.name.to_string(),
                        f.n.to_string(),
                        f.arcs.to_string(),
                        f.balanced.to_string(),
                    ]
                })
                .collect();
            let mut s = table::render(&["name", "n", "arcs", "balanced"], &rows);
            s.push('\n');
            for f in &list {
                s.push_str(&format!("{}: {}\n", f.name, f.provenance));
            }
            s
        }
    };
    Ok(Outcome {
        body,
        dest: a.output.clone(),
        code: EXIT_OK,
    })
}

/// Exact and `places`-decimal renderings.
pub(crate) fn rat_pair(r: &Rat, places: usize) -> (String, String) {
    (rat::to_exact_string(r), rat::to_decimal(r, places))
}
