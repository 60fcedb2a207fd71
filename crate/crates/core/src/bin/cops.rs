//! `cops`: generators, the exact solver, strategies, bound checks and the
//! invariant suite from the command line.
//!
//! Exit codes: 0 ok, 1 fault, 2 usage, 3 resource limit.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cops_core::bounds::{bound_params, check_induction_chain, trivial_region_boundary, DPoint};
use cops_core::engine::{
    play, validate_transcript, ChaseCops, CopStrategy, GameConfig, GreedyFarRobber, RandomRobber,
    RobberStrategy, StaticCops,
};
use cops_core::expander::{
    invisible_mode, select_family, ExpanderCops, StrategyParams, DEFAULT_RESAMPLE_LIMIT,
};
use cops_core::generators;
use cops_core::guard::{settle_bound, GuardCop};
use cops_core::interval::{Interval, DEFAULT_PREC};
use cops_core::meyniel::{run_meyniel, ExpanderSpec, MeynielConfig, NodeKind, RecursionTree};
use cops_core::rng::derive_seed;
use cops_core::solver::{solve, SolverConfig, SolverCops, DEFAULT_MAX_STATES};
use cops_core::verify::{run_all, to_json, VerifyOptions};
use cops_core::{Error, Graph};

/// `println!` that stops quietly when stdout is closed (e.g. piped into `head`).
macro_rules! out {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "cops", version, about = "Cops and robbers toolkit")]
struct Cli {
    /// Master seed; every component derives its own stream from it.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph in edge-list format.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Write here instead of standard output.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
        /// Emit DOT instead of an edge list.
        #[arg(long, global = true)]
        dot: bool,
    },
    /// Exact cop number by retrograde analysis.
    Solve {
        /// Edge-list file; standard input when absent or `-`.
        graph: Option<PathBuf>,
        /// Decide whether exactly this many cops win.
        #[arg(long, conflicts_with = "kmax")]
        k: Option<usize>,
        /// Smallest winning k up to this bound.
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: u64,
    },
    /// Play one game and emit the transcript.
    Play {
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = CopKind::Chase)]
        cops: CopKind,
        /// Number of cops (ignored by `oracle`, which uses --k).
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Comma-separated start vertices; default all at vertex 0.
        #[arg(long, value_delimiter = ',')]
        start: Vec<usize>,
        #[arg(long, value_enum, default_value_t = RobberKind::Greedy)]
        robber: RobberKind,
        #[arg(long, default_value_t = 100)]
        rounds: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: u64,
    },
    /// Run one of the constructive strategies.
    Strategy {
        #[command(subcommand)]
        which: StrategyCmd,
    },
    /// Bound parameters, the trivial-region boundary and the induction chain at `L = log2 n`.
    Bound {
        #[arg(long = "L", value_name = "L", default_value = "1024")]
        l: String,
        /// Path length: `zero`, `threshold`, or its log2 as a number.
        #[arg(long, default_value = "threshold")]
        d: String,
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec: u64,
    },
    /// Run the invariant suite.
    Verify {
        /// Directory of extra edge-list graphs.
        corpus: Option<PathBuf>,
        /// Largest exhaustive computation attempted per item; larger ones are skipped.
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Grid {
        w: usize,
        h: usize,
    },
    Hypercube {
        d: usize,
    },
    Petersen,
    Complete {
        n: usize,
    },
    Star {
        leaves: usize,
    },
    Gnp {
        n: usize,
        p: f64,
    },
    Tree {
        n: usize,
    },
    /// Random spanning tree plus independent extra edges.
    Connected {
        n: usize,
        extra: f64,
    },
    Girth5 {
        n: usize,
    },
    /// Point-line incidence graph of the projective plane over GF(q), q prime.
    Projective {
        q: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CopKind {
    Chase,
    Static,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum RobberKind {
    Greedy,
    Random,
}

#[derive(Args, Clone)]
struct ExpanderFlags {
    #[arg(long, default_value_t = 2.0)]
    lambda: f64,
    /// Sampling density of each cop set.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Number of cop sets; default `ceil(log2 diameter)`.
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_RESAMPLE_LIMIT)]
    resample_limit: usize,
}

#[derive(Subcommand)]
enum StrategyCmd {
    /// One cop guarding the geodesic between two vertices.
    Guard {
        graph: Option<PathBuf>,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long, value_enum, default_value_t = RobberKind::Greedy)]
        robber: RobberKind,
        /// Default: the settle bound plus the graph order.
        #[arg(long)]
        rounds: Option<usize>,
    },
    /// Expander team with a sampled cop-set family.
    Expander {
        graph: Option<PathBuf>,
        #[command(flatten)]
        ex: ExpanderFlags,
        #[arg(long, value_enum, default_value_t = RobberKind::Greedy)]
        robber: RobberKind,
        /// Hide the robber; the team guesses a start vertex per repeat.
        #[arg(long)]
        invisible: bool,
        /// Repeat limit in invisible mode; default 10 times the order.
        #[arg(long)]
        max_repeats: Option<usize>,
    },
    /// Recursive strategy: guard diametral geodesics, expander teams on small regions.
    Meyniel {
        graph: Option<PathBuf>,
        /// Regions of at most this diameter get an expander team.
        #[arg(long)]
        threshold: usize,
        #[command(flatten)]
        ex: ExpanderFlags,
        #[arg(long, value_enum, default_value_t = RobberKind::Greedy)]
        robber: RobberKind,
        #[arg(long)]
        rounds: Option<usize>,
    },
}

fn read_graph(path: Option<&Path>) -> Result<Graph, Error> {
    let text = match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Graph::parse_edge_list(&text)
}

fn robber(kind: RobberKind, seed: u64) -> Box<dyn RobberStrategy> {
    match kind {
        RobberKind::Greedy => Box::new(GreedyFarRobber::new()),
        RobberKind::Random => Box::new(RandomRobber::new(derive_seed(seed, "robber", 0))),
    }
}

fn expander_params(g: &Graph, ex: &ExpanderFlags) -> Result<StrategyParams, Error> {
    let mut p = StrategyParams::desk_default(g);
    p.lambda = ex.lambda;
    p.density = ex.p;
    if let Some(t) = ex.levels {
        p.levels = t;
    }
    p.resample_limit = ex.resample_limit;
    p.validate()?;
    Ok(p)
}

/// Key/value lines for the table format; nested values stay as JSON.
fn table(v: &Value) -> String {
    match v {
        Value::Object(m) => {
            let w = m.keys().map(String::len).max().unwrap_or(0);
            m.iter()
                .map(|(k, x)| {
                    let s = match x {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    format!("{k:<w$}  {s}\n")
                })
                .collect()
        }
        other => format!("{other}\n"),
    }
}

fn emit(format: Format, v: &Value) {
    match format {
        Format::Json => out!("{}", serde_json::to_string_pretty(v).unwrap()),
        Format::Table => out!("{}", table(v).trim_end()),
    }
}

fn check_transcript(g: &Graph, t: &cops_core::engine::Transcript) -> Result<(), Error> {
    validate_transcript(g, t).map_err(|e| Error::StrategyFault {
        agent: "transcript".into(),
        round: 0,
        msg: e,
    })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let seed = cli.seed;
    let fmt = cli.format;
    match cli.cmd {
        Cmd::Gen { kind, output, dot } => {
            use GenKind::*;
            let g = match kind {
                Path { n } => generators::path(n)?,
                Cycle { n } => generators::cycle(n)?,
                Grid { w, h } => generators::grid(w, h)?,
                Hypercube { d } => generators::hypercube(d)?,
                Petersen => generators::petersen(),
                Complete { n } => generators::complete(n)?,
                Star { leaves } => generators::star(leaves)?,
                Gnp { n, p } => generators::gnp(n, p, derive_seed(seed, "gen", 0))?,
                Tree { n } => generators::random_tree(n, derive_seed(seed, "gen", 0))?,
                Connected { n, extra } => {
                    generators::random_connected(n, extra, derive_seed(seed, "gen", 0))?
                }
                Girth5 { n } => generators::random_girth5(n, derive_seed(seed, "gen", 0))?,
                Projective { q } => generators::projective_incidence(q)?,
            };
            let text = if dot { g.to_dot() } else { g.to_edge_list() };
            match output {
                Some(p) => std::fs::write(&p, text)
                    .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
        }
        Cmd::Solve {
            graph,
            k,
            kmax,
            max_states,
        } => {
            let g = read_graph(graph.as_deref())?;
            let cfg = SolverConfig { max_states };
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (1..=kmax.min(g.vertex_count().max(1))).collect(),
            };
            let mut result = None;
            let mut last = None;
            for &k in &ks {
                let s = solve(&g, k, &cfg)?;
                if s.cops_win() {
                    result = Some(s);
                    break;
                }
                last = Some(s);
            }
            let s = result.as_ref().or(last.as_ref()).unwrap();
            let v = json!({
                "schema": "cops-solve/1",
                "graph": g.fingerprint(),
                "k": s.cops(),
                "cops_win": s.cops_win(),
                "cop_number": if k.is_none() { result.as_ref().map(|s| s.cops()) } else { None },
                "placement": s.placement,
                "capture_bound": s.capture_bound(),
                "states": s.state_count(),
                "sweeps": s.sweeps,
            });
            match (fmt, k) {
                (Format::Json, _) => emit(fmt, &v),
                (Format::Table, None) => match &result {
                    Some(s) => {
                        out!("{}", s.cops());
                        out!("placement {:?}", s.placement.as_ref().unwrap());
                    }
                    None => out!("> {kmax}"),
                },
                (Format::Table, Some(_)) => {
                    out!(
                        "{}",
                        if s.cops_win() {
                            "cops win"
                        } else {
                            "robber wins"
                        }
                    );
                    if let Some(p) = &s.placement {
                        out!("placement {p:?}");
                    }
                }
            }
        }
        Cmd::Play {
            graph,
            cops,
            k,
            start,
            robber: rk,
            rounds,
            max_states,
        } => {
            let g = read_graph(graph.as_deref())?;
            let mut cop: Box<dyn CopStrategy> = match cops {
                CopKind::Oracle => {
                    let s = solve(&g, k, &SolverConfig { max_states })?;
                    Box::new(SolverCops::new(Arc::new(s))?)
                }
                other => {
                    let pos = if start.is_empty() { vec![0; k] } else { start };
                    match other {
                        CopKind::Static => Box::new(StaticCops { positions: pos }),
                        _ => Box::new(ChaseCops { start: pos }),
                    }
                }
            };
            let mut cfg = GameConfig::new(k, rounds);
            cfg.seed = seed;
            let t = play(&g, cop.as_mut(), robber(rk, seed).as_mut(), &cfg)?;
            check_transcript(&g, &t)?;
            emit_transcript(fmt, &t, Value::Null);
        }
        Cmd::Strategy { which } => strategy(which, seed, fmt)?,
        Cmd::Bound { l, d, prec } => {
            let li = Interval::parse(&l, prec)?;
            let dp = match d.as_str() {
                "zero" | "0" => DPoint::Zero,
                "threshold" => DPoint::AtThreshold,
                x => DPoint::Log2(Interval::parse(x, prec)?),
            };
            let params = bound_params(&li)?;
            let chain = check_induction_chain(&li, &dp)?;
            let boundary = trivial_region_boundary(prec)?;
            let v = json!({
                "schema": "cops-bound/1",
                "params": params.report(),
                "trivial_region_boundary": boundary,
                "chain": chain,
            });
            match fmt {
                Format::Json => emit(fmt, &v),
                Format::Table => {
                    let num = |i: &Interval| {
                        if i.is_exact() {
                            format!("{i}")
                        } else {
                            format!("{i} (~{:.9e})", i.mid_f64())
                        }
                    };
                    out!("L          {}", num(&params.l));
                    out!("t          {}", num(&params.t));
                    out!("p          {}", num(&params.p));
                    out!("threshold  {}", num(&params.threshold));
                    out!("log2 p     {}", num(&params.p_log));
                    out!("log2 f     {}", num(&params.f_log));
                    out!("log2 mu    {}", num(&params.mu_log));
                    out!(
                        "L*         [{:.9}, {:.9}] certified={}",
                        boundary.lo,
                        boundary.hi,
                        boundary.certified
                    );
                    out!("in regime  {}  small D {}", chain.in_regime, chain.small_d);
                    for s in chain.steps.iter().chain([&chain.end_to_end]) {
                        let slack = s
                            .slack
                            .as_ref()
                            .map_or("-inf".to_string(), |n| format!("{:.6e}", n.lo));
                        out!(
                            "  {:<12} {:<5} slack>={slack}  {}",
                            s.name,
                            s.holds,
                            s.statement
                        );
                    }
                }
            }
            if !chain.end_to_end.holds {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Verify { corpus, budget } => {
            let mut extra = Vec::new();
            if let Some(dir) = corpus {
                let mut files: Vec<_> = std::fs::read_dir(&dir)
                    .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.is_file())
                    .collect();
                files.sort();
                for f in files {
                    let text = std::fs::read_to_string(&f)?;
                    let g = Graph::parse_edge_list(&text)
                        .map_err(|e| Error::Io(format!("{}: {e}", f.display())))?;
                    extra.push((f.file_name().unwrap().to_string_lossy().into_owned(), g));
                }
            }
            let opts = VerifyOptions {
                seed,
                budget,
                corpus: extra,
            };
            let reports = run_all(&opts)?;
            match fmt {
                Format::Json => out!("{}", to_json(&reports)),
                Format::Table => {
                    for r in &reports {
                        out!("{}", r.line());
                    }
                }
            }
            if reports.iter().any(|r| !r.failures.is_empty()) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_transcript(fmt: Format, t: &cops_core::engine::Transcript, extra: Value) {
    match fmt {
        Format::Json => {
            let mut v = serde_json::to_value(t).unwrap();
            if !extra.is_null() {
                v["strategy"] = extra;
            }
            out!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        Format::Table => {
            out!("cops    {}", t.cop_strategy);
            out!("robber  {}", t.robber_strategy);
            out!(
                "round 0  cops {:?}  robber {}",
                t.placements.cops,
                t.placements.robber
            );
            for r in &t.rounds {
                let rob = r.robber.map_or("-".to_string(), |v| v.to_string());
                out!("round {}  cops {:?}  robber {rob}", r.round, r.cops);
            }
            out!("outcome {}", serde_json::to_string(&t.outcome).unwrap());
            if let Value::Object(m) = &extra {
                for (k, v) in m {
                    out!("{k}  {v}");
                }
            }
        }
    }
}

fn strategy(which: StrategyCmd, seed: u64, fmt: Format) -> Result<(), Error> {
    match which {
        StrategyCmd::Guard {
            graph,
            from,
            to,
            start,
            robber: rk,
            rounds,
        } => {
            let g = read_graph(graph.as_deref())?;
            let path = g.shortest_path(from, to)?;
            let bound = settle_bound(&g, &path);
            let mut cop = GuardCop::new(&g, path.clone(), start)?;
            let mut cfg = GameConfig::new(1, rounds.unwrap_or(bound + g.vertex_count()));
            cfg.seed = seed;
            let t = play(&g, &mut cop, robber(rk, seed).as_mut(), &cfg)?;
            check_transcript(&g, &t)?;
            let extra = json!({"path": path, "settle_bound": bound, "phase": cop.phase()});
            emit_transcript(fmt, &t, extra);
        }
        StrategyCmd::Expander {
            graph,
            ex,
            robber: rk,
            invisible,
            max_repeats,
        } => {
            let g = read_graph(graph.as_deref())?;
            let params = expander_params(&g, &ex)?;
            let sel =
                select_family(&g, &params, derive_seed(seed, "family", 0))?.ok_or_else(|| {
                    Error::ResourceLimit(format!(
                        "no family with a plan for every start within {} resamples",
                        params.resample_limit
                    ))
                })?;
            let summary = plan_summary(&sel);
            if invisible {
                let limit = max_repeats.unwrap_or(10 * g.vertex_count());
                let mut r = robber(RobberKind::Random, seed);
                let rep = invisible_mode(&g, &sel.family, &params, seed, limit, Some(r.as_mut()))?;
                check_transcript(&g, &rep.transcript)?;
                let mut extra = summary;
                extra["repeats"] = json!(rep.repeats);
                emit_transcript(fmt, &rep.transcript, extra);
            } else {
                let mut cops = ExpanderCops::from_selected(&sel);
                let deadline = sel
                    .plans
                    .iter()
                    .map(|p| p.capture_deadline())
                    .max()
                    .unwrap_or(1);
                let mut cfg = GameConfig::new(sel.family.total_cops(), deadline);
                cfg.seed = seed;
                let t = play(&g, &mut cops, robber(rk, seed).as_mut(), &cfg)?;
                check_transcript(&g, &t)?;
                emit_transcript(fmt, &t, summary);
            }
        }
        StrategyCmd::Meyniel {
            graph,
            threshold,
            ex,
            robber: rk,
            rounds,
        } => {
            let g = read_graph(graph.as_deref())?;
            let cfg = MeynielConfig {
                threshold,
                expander: ExpanderSpec {
                    lambda: ex.lambda,
                    density: ex.p,
                    levels: ex.levels,
                    resample_limit: ex.resample_limit,
                },
                seed,
            };
            let run = run_meyniel(&g, &cfg, robber(rk, seed).as_mut(), rounds)?;
            check_transcript(&g, &run.transcript)?;
            let tree = RecursionTree::build(&g, &cfg)?;
            let regions: Vec<Value> = tree
                .nodes
                .iter()
                .map(|n| {
                    let kind = match &n.kind {
                        NodeKind::Split { path, children } => json!({"split": {"path": path, "children": children}}),
                        NodeKind::Leaf(l) => json!({"leaf": {"cops": l.family.total_cops(), "sets": l.family.sizes()}}),
                        NodeKind::FailedLeaf { reason } => json!({"failed": reason}),
                    };
                    json!({"size": n.region.len(), "depth": n.depth, "diameter": n.diameter, "kind": kind})
                })
                .collect();
            let extra = json!({
                "team": run.team,
                "guards": run.guards,
                "family_cops": run.family_cops,
                "cops_used": run.cops_used,
                "regime": run.regime,
                "round_bound": run.round_bound,
                "failure": run.failure,
                "events": run.events.iter().map(|e| json!({"round": e.round, "what": e.what})).collect::<Vec<_>>(),
                "regions": regions,
            });
            emit_transcript(fmt, &run.transcript, extra);
        }
    }
    Ok(())
}

/// `|C_j|` per set, then per start vertex `|A_i|`, `|D_i|`, `s` and deadlines.
fn plan_summary(sel: &cops_core::expander::SelectedFamily) -> Value {
    let plans: Vec<Value> = sel
        .plans
        .iter()
        .map(|p| {
            json!({
                "start": p.start,
                "immediate": p.immediate.is_some(),
                "s": p.terminal,
                "core_sizes": p.levels.iter().map(|l| l.core.len()).collect::<Vec<_>>(),
                "shell_sizes": p.levels.iter().map(|l| l.shell.len()).collect::<Vec<_>>(),
                "deadlines": p.levels.iter().map(|l| l.deadline).collect::<Vec<_>>(),
                "capture_deadline": p.capture_deadline(),
            })
        })
        .collect();
    json!({
        "set_sizes": sel.family.sizes(),
        "total_cops": sel.family.total_cops(),
        "resamples": sel.resamples,
        "plans": plans,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ResourceLimit(_) => 3,
                Error::InvalidArgument(_) => 2,
                _ => 1,
            })
        }
    }
}
