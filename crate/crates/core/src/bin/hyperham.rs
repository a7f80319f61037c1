//! Command-line front end: generate extremal constructions, decide
//! Hamiltonicity, certify obstructions, measure closeness, hunt witnesses,
//! and run the reproduction suites.
//!
//! Exit codes: 0 success / suite pass, 1 suite assertion failure, 2 budget
//! or undecided, 3 input error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperham::error::Error;
use hyperham::extremal::{build_star, threshold_bruteforce, threshold_codegree, ExtremalSpec, Variant};
use hyperham::harness::{
    graph_digest, run_prop12_suite, run_threshold_scan, ExperimentReport, SuiteOptions,
    SuiteStatus, TOOL_VERSION,
};
use hyperham::hypergraph::{Bipartition, Hypergraph, Parity, VertexSet};
use hyperham::parity::{certify_non_hamiltonian, check_certificate, find_patterned_path};
use hyperham::solver::{
    find_hamilton_half_cycle, find_hamilton_l_cycle, find_half_path,
    find_perfect_matching, Outcome, Solve, SolveOptions,
};
use hyperham::structure::{
    bridge_degree_premise, closeness, find_bridge_pair, find_three_edges,
    forbidden_intersection_ok, max_forbidden_intersection_family, Alpha, ClosenessMode,
};
use hyperham::{khg, Result};

#[derive(Parser)]
#[command(name = "hyperham", version, about = "Exact toolkit for Hamilton (k/2)-cycles in k-uniform hypergraphs")]
struct Cli {
    /// Return the lexicographically least witness and reproducible node
    /// counts (single-threaded search).
    #[arg(long, global = true)]
    deterministic: bool,

    /// Wall-clock budget per search in milliseconds.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,

    /// Parallel workers for suites and fast-mode search (0 = all cores).
    #[arg(long, global = true, env = "HYPERHAM_JOBS", default_value_t = 1)]
    jobs: usize,

    /// Emit JSON (the default).
    #[arg(long, global = true)]
    json: bool,

    /// Emit a plain-text table where available.
    #[arg(long, global = true, conflicts_with = "json")]
    table: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenVariant {
    B,
    Bbar,
    Bprime,
    Star,
    BbarPrime4,
}

#[derive(Clone, Copy, ValueEnum)]
enum Structure {
    HalfCycle,
    LCycle,
    Pm,
    Path,
}

#[derive(Clone, Copy, ValueEnum)]
enum RefVariant {
    B,
    Bbar,
    Bprime,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosenessVariant {
    B,
    Bbar,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    /// Alias of exact: the exact enumeration is balanced-only by
    /// definition.
    BalancedOnly,
    LocalSearch,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    ThreeEdges,
    BridgePair,
    FfFamily,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Even,
    Odd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an extremal construction or a star and write it as .khg.
    Gen {
        #[arg(long, value_enum)]
        variant: GenVariant,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// |A| for the partition constructions.
        #[arg(long, default_value_t = 0)]
        a: usize,
        #[arg(long)]
        apex: Option<usize>,
        /// Skip the family-membership parity conditions.
        #[arg(long)]
        force: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Decide existence of a spanning structure by exhaustive search.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        structure: Structure,
        #[arg(long)]
        l: Option<usize>,
        /// Comma-separated vertex list (path search).
        #[arg(long)]
        start: Option<String>,
        #[arg(long)]
        end: Option<String>,
        #[arg(long)]
        allowed: Option<String>,
        /// Enable parity pruning against the prefix partition of this size.
        #[arg(long)]
        prune_a_size: Option<usize>,
    },
    /// Recognise a family member and emit its parity certificate.
    Certify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        a_size: usize,
    },
    /// Search for a (k/2)-path realising a parity pattern with good ends.
    Bridge {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        a_size: usize,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value = "1/100")]
        alpha: String,
        #[arg(long = "ref", value_enum)]
        reference: RefVariant,
    },
    /// Minimum edit distance to a parity variant over bipartitions.
    Closeness {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        variant: ClosenessVariant,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        /// Search all part sizes instead of balanced only (exact mode).
        #[arg(long)]
        all_sizes: bool,
    },
    /// Forbidden-intersection witness finders.
    Witness {
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        #[arg(long)]
        a_size: Option<usize>,
        /// Degree order for the bridge-pair premise report.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Node cap for the clique search.
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Degree thresholds: closed form and brute force over the family.
    Threshold {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        brute: bool,
    },
    /// Reproduction suites with golden-comparable reports.
    Suite {
        #[command(subcommand)]
        which: SuiteCmd,
    },
    /// Parse a .khg file and re-emit it canonically.
    Fmt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Certificates + exhaustive confirmation for every family member.
    Prop12 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Brute-force thresholds against the closed form.
    ThresholdScan {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        d: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn parse_vertex_list(s: &str) -> Result<VertexSet> {
    let indices: Vec<usize> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad vertex index {t:?}")))
        })
        .collect::<Result<_>>()?;
    VertexSet::from_indices(indices)
}

fn load_graph(path: &PathBuf) -> Result<Hypergraph> {
    let (h, warnings) = khg::read_file(path)?;
    for w in warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(h)
}

fn solve_options(cli: &Cli, pruning: Option<Bipartition>) -> SolveOptions {
    SolveOptions {
        deterministic: cli.deterministic,
        budget: cli.budget_ms.map(Duration::from_millis),
        jobs: cli.jobs,
        pruning,
    }
}

fn witness_json<W: serde::Serialize>(kind: &str, outcome: &Outcome<W>) -> Value {
    match outcome.witness() {
        Some(w) => {
            let mut v = serde_json::to_value(w).expect("serializable witness");
            if let Value::Object(map) = &mut v {
                map.insert("kind".into(), json!(kind));
            }
            v
        }
        None => Value::Null,
    }
}

fn solve_report<W: serde::Serialize>(
    cli: &Cli,
    input: &PathBuf,
    h: &Hypergraph,
    kind: &str,
    params: Value,
    solve: &Solve<W>,
) -> ExperimentReport {
    let _ = input;
    ExperimentReport {
        command: format!("solve --structure {kind}"),
        input_digest: Some(graph_digest(h)),
        parameters: params,
        results: json!({
            "decision": solve.outcome.decision(),
            "witness": witness_json(kind, &solve.outcome),
            "nodes_explored": solve.nodes_explored,
        }),
        version: TOOL_VERSION.to_string(),
        nodes_explored: solve.nodes_explored,
        wall_ms: solve.wall.as_millis(),
    }
    .tap_deterministic(cli.deterministic)
}

trait Tap {
    fn tap_deterministic(self, det: bool) -> Self;
}

impl Tap for ExperimentReport {
    fn tap_deterministic(mut self, det: bool) -> Self {
        if let Value::Object(map) = &mut self.parameters {
            map.insert("deterministic".into(), json!(det));
        }
        self
    }
}

fn emit(report: &ExperimentReport) {
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("report serializes")
    );
}

fn emit_value(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializes"));
}

fn run(cli: &Cli) -> Result<i32> {
    match &cli.cmd {
        Cmd::Gen {
            variant,
            n,
            k,
            a,
            apex,
            force,
            out,
        } => {
            let h = match variant {
                GenVariant::Star => build_star(*n, *k, apex.unwrap_or(0))?,
                other => {
                    let v = match other {
                        GenVariant::B => Variant::B,
                        GenVariant::Bbar => Variant::Bbar,
                        GenVariant::Bprime => Variant::Bprime,
                        GenVariant::BbarPrime4 => Variant::BbarPrime4,
                        GenVariant::Star => unreachable!(),
                    };
                    let mut spec = ExtremalSpec::new(v, *n, *k, *a);
                    spec.apex = *apex;
                    if *force {
                        spec.build_forced()?
                    } else {
                        spec.build()?
                    }
                }
            };
            let text = khg::serialize(&h);
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }

        Cmd::Solve {
            input,
            structure,
            l,
            start,
            end,
            allowed,
            prune_a_size,
        } => {
            let h = load_graph(input)?;
            let pruning = match prune_a_size {
                Some(a) => Some(Bipartition::prefix(*a, h.n())?),
                None => None,
            };
            let opts = solve_options(cli, pruning);
            let (report, code) = match structure {
                Structure::HalfCycle => {
                    let s = find_hamilton_half_cycle(&h, &opts)?;
                    let code = exit_for(&s.outcome);
                    (
                        solve_report(cli, input, &h, "half-cycle", json!({}), &s),
                        code,
                    )
                }
                Structure::LCycle => {
                    let ell = l.ok_or_else(|| {
                        Error::InvalidInput("l-cycle search needs --l".into())
                    })?;
                    let s = find_hamilton_l_cycle(&h, ell, &opts)?;
                    let code = exit_for(&s.outcome);
                    (
                        solve_report(cli, input, &h, "l-cycle", json!({"l": ell}), &s),
                        code,
                    )
                }
                Structure::Pm => {
                    let s = find_perfect_matching(&h, &opts)?;
                    let code = exit_for(&s.outcome);
                    (solve_report(cli, input, &h, "pm", json!({}), &s), code)
                }
                Structure::Path => {
                    let start = parse_vertex_list(start.as_deref().ok_or_else(|| {
                        Error::InvalidInput("path search needs --start".into())
                    })?)?;
                    let end = parse_vertex_list(end.as_deref().ok_or_else(|| {
                        Error::InvalidInput("path search needs --end".into())
                    })?)?;
                    let allowed = match allowed {
                        Some(s) => parse_vertex_list(s)?,
                        None => VertexSet::EMPTY.complement_within(h.n()),
                    };
                    let s = find_half_path(&h, start, end, allowed, &opts)?;
                    let code = exit_for(&s.outcome);
                    (
                        solve_report(
                            cli,
                            input,
                            &h,
                            "path",
                            json!({
                                "start": start,
                                "end": end,
                                "allowed": allowed,
                            }),
                            &s,
                        ),
                        code,
                    )
                }
            };
            emit(&report);
            Ok(code)
        }

        Cmd::Certify { input, a_size } => {
            let h = load_graph(input)?;
            let spec = recognise(&h, *a_size)?;
            let cert = certify_non_hamiltonian(&spec)?;
            let p = spec.partition()?;
            let checked = check_certificate(&cert, &h, &p);
            emit_value(&json!({
                "input_digest": graph_digest(&h),
                "matched": {
                    "variant": spec.variant.name(),
                    "n": spec.n,
                    "k": spec.k,
                    "a_size": spec.a_size,
                    "apex": spec.apex,
                },
                "certificate": serde_json::to_value(&cert).expect("serializable"),
                "certificate_checked": checked,
            }));
            Ok(if checked { 0 } else { 1 })
        }

        Cmd::Bridge {
            input,
            a_size,
            pattern,
            alpha,
            reference,
        } => {
            let h = load_graph(input)?;
            let p = Bipartition::prefix(*a_size, h.n())?;
            let alpha: Alpha = alpha.parse()?;
            let refv = match reference {
                RefVariant::B => Variant::B,
                RefVariant::Bbar => Variant::Bbar,
                RefVariant::Bprime => Variant::Bprime,
            };
            let mut refspec = ExtremalSpec::new(refv, h.n(), h.k(), *a_size);
            if refv == Variant::Bprime {
                refspec.apex = Some(0);
            }
            let reference = refspec.build_forced()?;
            let opts = solve_options(cli, None);
            let s = find_patterned_path(&h, &p, pattern, alpha, &reference, &opts)?;
            let code = exit_for(&s.outcome);
            emit(&ExperimentReport {
                command: format!("bridge --pattern {pattern}"),
                input_digest: Some(graph_digest(&h)),
                parameters: json!({
                    "pattern": pattern,
                    "alpha": alpha.to_string(),
                    "reference": refv.name(),
                    "a_size": a_size,
                }),
                results: json!({
                    "decision": s.outcome.decision(),
                    "witness": witness_json("path", &s.outcome),
                    "nodes_explored": s.nodes_explored,
                }),
                version: TOOL_VERSION.to_string(),
                nodes_explored: s.nodes_explored,
                wall_ms: s.wall.as_millis(),
            });
            Ok(code)
        }

        Cmd::Closeness {
            input,
            variant,
            mode,
            all_sizes,
        } => {
            let h = load_graph(input)?;
            let v = match variant {
                ClosenessVariant::B => Variant::B,
                ClosenessVariant::Bbar => Variant::Bbar,
            };
            let m = match mode {
                ModeArg::Exact | ModeArg::BalancedOnly => ClosenessMode::Exact,
                ModeArg::LocalSearch => ClosenessMode::LocalSearch,
            };
            let c = closeness(&h, v, m, *all_sizes)?;
            emit_value(&json!({
                "input_digest": graph_digest(&h),
                "closeness": serde_json::to_value(&c).expect("serializable"),
            }));
            Ok(0)
        }

        Cmd::Witness {
            kind,
            input,
            side,
            a_size,
            d,
            n,
            k,
            max_nodes,
        } => {
            match kind {
                WitnessKind::ThreeEdges => {
                    let h = load_graph(input.as_ref().ok_or_else(|| {
                        Error::InvalidInput("three-edges needs --in".into())
                    })?)?;
                    let found = find_three_edges(&h);
                    emit_value(&json!({
                        "kind": "three-edges",
                        "input_digest": graph_digest(&h),
                        "witness": found.map(|(a, b, c)| json!([a, b, c])),
                    }));
                    Ok(0)
                }
                WitnessKind::BridgePair => {
                    let h = load_graph(input.as_ref().ok_or_else(|| {
                        Error::InvalidInput("bridge-pair needs --in".into())
                    })?)?;
                    let a = a_size.ok_or_else(|| {
                        Error::InvalidInput("bridge-pair needs --a-size".into())
                    })?;
                    let p = Bipartition::prefix(a, h.n())?;
                    let side = match side.ok_or_else(|| {
                        Error::InvalidInput("bridge-pair needs --side".into())
                    })? {
                        SideArg::Even => Parity::Even,
                        SideArg::Odd => Parity::Odd,
                    };
                    let found = find_bridge_pair(&h, &p, side);
                    let premise = match d {
                        Some(d) => {
                            let (ours, theirs, holds) =
                                bridge_degree_premise(&h, &p, *d, side)?;
                            json!({"d": d, "min_degree": ours, "construction_min_degree": theirs, "holds": holds})
                        }
                        None => Value::Null,
                    };
                    emit_value(&json!({
                        "kind": "bridge-pair",
                        "input_digest": graph_digest(&h),
                        "side": match side { Parity::Even => "even", Parity::Odd => "odd" },
                        "witness": found.map(|(a, b)| json!([a, b])),
                        "degree_premise": premise,
                    }));
                    Ok(0)
                }
                WitnessKind::FfFamily => {
                    let n = n.ok_or_else(|| Error::InvalidInput("ff-family needs --n".into()))?;
                    let k = k.ok_or_else(|| Error::InvalidInput("ff-family needs --k".into()))?;
                    let (size, family) = max_forbidden_intersection_family(n, k, *max_nodes)?;
                    debug_assert!(forbidden_intersection_ok(&family, k));
                    emit_value(&json!({
                        "kind": "ff-family",
                        "n": n,
                        "k": k,
                        "size": size,
                        "family": family,
                    }));
                    Ok(0)
                }
            }
        }

        Cmd::Threshold { n, k, d, brute } => {
            let d = d.unwrap_or(k - 1);
            let formula = if d == k - 1 {
                Some(threshold_codegree(*n, *k)?)
            } else {
                None
            };
            let (brute_val, argmax) = if *brute {
                let (v, s) = threshold_bruteforce(*n, *k, d)?;
                (
                    Some(v),
                    Some(json!({
                        "variant": s.variant.name(),
                        "n": s.n,
                        "k": s.k,
                        "a_size": s.a_size,
                        "apex": s.apex,
                    })),
                )
            } else {
                (None, None)
            };
            if cli.table {
                println!("n = {n}, k = {k}, d = {d}");
                println!("  formula: {}", formula.map_or("-".into(), |v| v.to_string()));
                println!(
                    "  brute:   {}",
                    brute_val.map_or("-".into(), |v| v.to_string())
                );
            } else {
                emit_value(&json!({
                    "n": n,
                    "k": k,
                    "d": d,
                    "formula": formula,
                    "brute": brute_val,
                    "argmax": argmax,
                }));
            }
            Ok(0)
        }

        Cmd::Suite { which } => {
            let opts = SuiteOptions {
                jobs: cli.jobs,
                budget: cli.budget_ms.map(Duration::from_millis),
            };
            let (report, status, out) = match which {
                SuiteCmd::Prop12 { k, n_max, out } => {
                    let (r, s) = run_prop12_suite(*k, *n_max, &opts)?;
                    (r, s, out)
                }
                SuiteCmd::ThresholdScan { k, n_max, d, out } => {
                    let (r, s) = run_threshold_scan(*k, *n_max, *d, &opts)?;
                    (r, s, out)
                }
            };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            match out {
                Some(path) => std::fs::write(path, &text)?,
                None => {}
            }
            if cli.table {
                print_suite_table(&report, status);
            } else {
                println!("{text}");
            }
            Ok(status.exit_code())
        }

        Cmd::Fmt { input, out } => {
            let h = load_graph(input)?;
            let text = khg::serialize(&h);
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}

fn print_suite_table(report: &ExperimentReport, status: SuiteStatus) {
    println!("{}", report.command);
    if let Some(rows) = report.results.get("rows").and_then(|r| r.as_array()) {
        for row in rows {
            println!(
                "  n={:<3} formula={:<4} brute={:<4} identity={}",
                row["n"],
                row["formula"],
                row["brute"],
                row["identity"]
            );
        }
    }
    if let Some(rows) = report.results.get("members").and_then(|r| r.as_array()) {
        for row in rows {
            println!(
                "  {}(n={}, |A|={}): cert={} solver={}",
                row["spec"]["variant"].as_str().unwrap_or("?"),
                row["spec"]["n"],
                row["spec"]["a_size"],
                row["certificate_checked"],
                row["solver_unpruned"]["decision"]
            );
        }
    }
    println!("status: {}", status.as_str());
}

fn exit_for<W>(outcome: &Outcome<W>) -> i32 {
    match outcome {
        Outcome::OutOfBudget => 2,
        _ => 0,
    }
}

/// Matches the edge set against the candidate constructions on the prefix
/// partition of the given size.
fn recognise(h: &Hypergraph, a_size: usize) -> Result<ExtremalSpec> {
    for variant in [Variant::B, Variant::Bbar, Variant::Bprime] {
        let mut spec = ExtremalSpec::new(variant, h.n(), h.k(), a_size);
        if variant == Variant::Bprime {
            if a_size == 0 {
                continue;
            }
            spec.apex = Some(0);
        }
        let built = match spec.build_forced() {
            Ok(b) => b,
            Err(_) => continue,
        };
        if &built == h {
            return Ok(spec);
        }
    }
    Err(Error::NoCertificate(format!(
        "edge set does not match any construction with |A| = {a_size}"
    )))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Budget(_) => 2,
                _ => 3,
            };
            ExitCode::from(code as u8)
        }
    }
}
