//! `pursuit` — command-line front door for the pursuit library.
//!
//! Every command emits a single self-describing JSON document with an
//! embedded run manifest (argv, seed, input digests, tool version). Re-running
//! a manifest (`pursuit rerun doc.json`) reproduces the document byte for
//! byte; wall-clock time is deliberately not part of the document. All
//! randomness comes from seeded ChaCha8 streams, so seeds are portable.
//!
//! Exit codes: 0 success, 2 parse error, 3 flag/validation error,
//! 4 resource (budget) error, 5 infeasible parameters.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use pursuit::controllers::{GreedyCop, Override, RandomCop, RandomRobber, StagedCop, StationaryRobber};
use pursuit::game::{play, CopController, GameConfig, RobberController, Speed};
use pursuit::graph::Graph;
use pursuit::lab::{self, FiniteEvader, InfiniteEvader, Mode};
use pursuit::params;
use pursuit::reduction;
use pursuit::solver::{self, OptimalCop, OptimalRobber};
use pursuit::trim;

const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_RESOURCE: u8 = 4;
const EXIT_INFEASIBLE: u8 = 5;

#[derive(Parser)]
#[command(name = "pursuit", version, about = "pursuit-evasion game analysis")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Clone)]
enum Cmd {
    /// Exact cop number of a graph file.
    Solve(SolveArgs),
    /// Trim low-degree / low-expansion vertices, emit a certificate.
    Trim(TrimArgs),
    /// Arena playout between named controllers.
    Play(PlayArgs),
    /// Condensation + covering reduction for a digraph.
    Reduce(ReduceArgs),
    /// Generate a graph family to a file.
    Generate(GenerateArgs),
    /// Run a random-graph property validator.
    Validate(ValidateArgs),
    /// Solve the asymptotic expansion parameters.
    Params(ParamsArgs),
    /// Re-execute the manifest embedded in a document.
    Rerun(RerunArgs),
}

#[derive(Args, Clone)]
struct OutputArg {
    /// Write the JSON document here (default: stdout).
    #[arg(short, long)]
    out: Option<String>,
}

#[derive(Args, Clone)]
struct SolveArgs {
    graph: String,
    /// Robber speed: positive integer or "inf".
    #[arg(long, default_value = "1")]
    speed: String,
    /// Require/assert a directed input.
    #[arg(long)]
    directed: bool,
    #[arg(long)]
    max_cops: Option<usize>,
    /// State budget (default from PURSUIT_BUDGET or built-in).
    #[arg(long)]
    budget: Option<usize>,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Args, Clone)]
struct TrimArgs {
    graph: String,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    witness_cap: Option<usize>,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Args, Clone)]
struct PlayArgs {
    graph: String,
    /// Cop controller: optimal | general | fast | digraph | deployment | greedy | random
    #[arg(long)]
    cops: String,
    /// Robber controller: optimal | infinite-evader | finite-evader | stationary | random
    #[arg(long)]
    robber: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    rounds: usize,
    #[arg(long, default_value = "1")]
    speed: String,
    /// Cop count for optimal/greedy/random cops.
    #[arg(long)]
    cop_count: Option<usize>,
    /// Staged-controller override parameters.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    l: Option<usize>,
    /// Comma-separated stage radii (length l+1).
    #[arg(long)]
    radii: Option<String>,
    #[arg(long, default_value_t = 3)]
    verify_cap: usize,
    /// Fast-controller robber speed R / digraph dispatch radius.
    #[arg(long, default_value_t = 2)]
    r: usize,
    /// finite-evader exponent parameter.
    #[arg(long)]
    c: Option<f64>,
    /// finite-evader expected average degree np.
    #[arg(long)]
    np: Option<f64>,
    /// finite-evader well-connectedness size s0.
    #[arg(long)]
    s0: Option<usize>,
    #[arg(long)]
    budget: Option<usize>,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Args, Clone)]
struct ReduceArgs {
    graph: String,
    #[arg(long)]
    budget: Option<usize>,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Args, Clone)]
struct GenerateArgs {
    /// subdivided-kn | gnp | random-digraph
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Args, Clone)]
struct ValidateArgs {
    graph: String,
    /// subset-avg-degree | cover | pair-connect | span-few | degree-spread | degree-range
    #[arg(long)]
    property: String,
    /// exhaustive | sampled
    #[arg(long, default_value = "sampled")]
    mode: String,
    #[arg(long, default_value_t = 3)]
    cap: usize,
    #[arg(long, default_value_t = 10000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Model average degree np (default: observed 2m/n).
    #[arg(long)]
    np: Option<f64>,
    #[arg(long)]
    s_max: Option<usize>,
    #[arg(long)]
    bound: Option<f64>,
    #[arg(long)]
    set_size: Option<usize>,
    #[arg(long)]
    s0: Option<usize>,
    #[arg(long)]
    per_vertex: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    lo: Option<f64>,
    #[arg(long)]
    hi: Option<f64>,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Args, Clone)]
struct ParamsArgs {
    /// general | digraph | fast
    #[arg(long)]
    regime: String,
    /// L = log n (natural log).
    #[arg(long)]
    logn: f64,
    /// Robber speed for the fast regime.
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Args, Clone)]
struct RerunArgs {
    /// A previously emitted document (or bare manifest).
    document: String,
    #[command(flatten)]
    output: OutputArg,
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn parse(msg: impl ToString) -> Self {
        Failure { code: EXIT_PARSE, msg: msg.to_string() }
    }
    fn validation(msg: impl ToString) -> Self {
        Failure { code: EXIT_VALIDATION, msg: msg.to_string() }
    }
    fn resource(msg: impl ToString) -> Self {
        Failure { code: EXIT_RESOURCE, msg: msg.to_string() }
    }
    fn infeasible(msg: impl ToString) -> Self {
        Failure { code: EXIT_INFEASIBLE, msg: msg.to_string() }
    }
}

#[derive(Serialize)]
struct Manifest {
    command: String,
    argv: Vec<String>,
    version: String,
    /// sha256 hex digests of every input file, keyed by path as given.
    input_digests: Vec<(String, String)>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    format!("{:x}", h.finalize())
}

fn load_graph(path: &str, manifest: &mut Manifest) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("{}: {}", path, e)))?;
    manifest.input_digests.push((path.to_string(), sha256_hex(text.as_bytes())));
    Graph::parse(&text).map_err(|e| Failure::parse(format!("{}: {}", path, e)))
}

fn parse_speed(s: &str) -> Result<Speed, Failure> {
    if s == "inf" {
        return Ok(Speed::Infinite);
    }
    s.parse::<usize>()
        .ok()
        .filter(|&r| r >= 1)
        .map(Speed::Finite)
        .ok_or_else(|| Failure::validation(format!("bad speed {:?} (positive integer or inf)", s)))
}

fn default_budget(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("PURSUIT_BUDGET").ok().and_then(|v| v.parse().ok())
    })
    .unwrap_or(solver::DEFAULT_BUDGET)
}

fn solve_failure(e: solver::SolveError) -> Failure {
    match e {
        solver::SolveError::Budget { .. } => Failure::resource(e.to_string()),
        _ => Failure::validation(e.to_string()),
    }
}

/// Executes argv (everything after the binary name) to a document + summary.
fn execute(argv: &[String]) -> Result<(Value, String), Failure> {
    let cli = Cli::try_parse_from(std::iter::once("pursuit".to_string()).chain(argv.iter().cloned()))
        .map_err(|e| Failure { code: EXIT_PARSE, msg: e.to_string() })?;
    let command = match &cli.cmd {
        Cmd::Solve(_) => "solve",
        Cmd::Trim(_) => "trim",
        Cmd::Play(_) => "play",
        Cmd::Reduce(_) => "reduce",
        Cmd::Generate(_) => "generate",
        Cmd::Validate(_) => "validate",
        Cmd::Params(_) => "params",
        Cmd::Rerun(_) => "rerun",
    };
    let mut manifest = Manifest {
        command: command.into(),
        argv: argv.to_vec(),
        version: env!("CARGO_PKG_VERSION").into(),
        input_digests: Vec::new(),
    };

    let (result, summary) = match cli.cmd {
        Cmd::Solve(a) => cmd_solve(a, &mut manifest)?,
        Cmd::Trim(a) => cmd_trim(a, &mut manifest)?,
        Cmd::Play(a) => cmd_play(a, &mut manifest)?,
        Cmd::Reduce(a) => cmd_reduce(a, &mut manifest)?,
        Cmd::Generate(a) => cmd_generate(a)?,
        Cmd::Validate(a) => cmd_validate(a, &mut manifest)?,
        Cmd::Params(a) => cmd_params(a)?,
        Cmd::Rerun(_) => unreachable!("rerun handled in main"),
    };
    let doc = json!({ "manifest": manifest, "result": result });
    Ok((doc, summary))
}

fn cmd_solve(a: SolveArgs, manifest: &mut Manifest) -> Result<(Value, String), Failure> {
    let g = load_graph(&a.graph, manifest)?;
    if a.directed != g.is_directed() {
        return Err(Failure::validation(format!(
            "--directed={} but file header says {}",
            a.directed,
            if g.is_directed() { "directed" } else { "undirected" }
        )));
    }
    let speed = parse_speed(&a.speed)?;
    let budget = default_budget(a.budget);
    let r = solver::cop_number(&g, speed, budget).map_err(solve_failure)?;
    if let Some(cap) = a.max_cops {
        if r.cop_number > cap {
            return Err(Failure::validation(format!(
                "cop number {} exceeds --max-cops {}",
                r.cop_number, cap
            )));
        }
    }
    let summary = format!(
        "copNumber {} placement {:?} captureBound {}",
        r.cop_number, r.placement, r.capture_bound
    );
    Ok((
        json!({
            "copNumber": r.cop_number,
            "placement": r.placement,
            "captureBound": r.capture_bound,
            "speed": a.speed,
        }),
        summary,
    ))
}

fn cmd_trim(a: TrimArgs, manifest: &mut Manifest) -> Result<(Value, String), Failure> {
    if !(a.p > 0.0 && a.p < 1.0) {
        return Err(Failure::validation("--p must lie strictly between 0 and 1"));
    }
    let g = load_graph(&a.graph, manifest)?;
    let cap = a.witness_cap.unwrap_or(g.n() / 2);
    let cert = trim::trim(&g, a.p, cap);
    trim::verify(&g, &cert)
        .map_err(|d| Failure::validation(format!("certificate failed self-check: {:?}", d)))?;
    let summary = format!(
        "totalCops {} residual {} steps {}",
        cert.total_cops,
        cert.residual.len(),
        cert.steps.len()
    );
    let v = serde_json::to_value(&cert).map_err(|e| Failure::validation(e.to_string()))?;
    Ok((v, summary))
}

fn parse_override(a: &PlayArgs) -> Result<Option<Override>, Failure> {
    match (a.p, a.k, a.l) {
        (Some(p), Some(k), Some(l)) => {
            let radii = match &a.radii {
                Some(s) => s
                    .split(',')
                    .map(|t| t.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| Failure::validation(format!("bad --radii: {}", e)))?,
                None => (0..=l).map(|i| 1usize << i).collect(),
            };
            if !(p > 0.0 && p < 1.0) {
                return Err(Failure::validation("--p must lie strictly between 0 and 1"));
            }
            Ok(Some(Override { p, k, l, radii, verify_cap: a.verify_cap }))
        }
        (None, None, None) => Ok(None),
        _ => Err(Failure::validation("--p, --k, --l must be given together")),
    }
}

fn cmd_play(a: PlayArgs, manifest: &mut Manifest) -> Result<(Value, String), Failure> {
    let g = load_graph(&a.graph, manifest)?;
    let speed = parse_speed(&a.speed)?;
    let budget = default_budget(a.budget);
    let ov = parse_override(&a)?;

    enum CopKind {
        Plain(Box<dyn CopController>),
        Staged(StagedCop),
    }

    let staged_err = |e: pursuit::controllers::ControllerError| match e {
        pursuit::controllers::ControllerError::InfeasibleParams(e) => Failure::infeasible(e.to_string()),
        pursuit::controllers::ControllerError::Sprinkle(e) => Failure::infeasible(e.to_string()),
        pursuit::controllers::ControllerError::Precondition(m) => Failure::validation(m),
    };

    let mut deployment_total = None;
    let cop = match a.cops.as_str() {
        "optimal" => {
            let c = a
                .cop_count
                .ok_or_else(|| Failure::validation("--cop-count required for optimal cops"))?;
            let solved = solver::cops_win(&g, c, speed, budget).map_err(solve_failure)?;
            CopKind::Plain(Box::new(OptimalCop::new(solved)))
        }
        "greedy" => {
            let c = a.cop_count.unwrap_or(1);
            CopKind::Plain(Box::new(GreedyCop::new(c, a.seed)))
        }
        "random" => {
            let c = a.cop_count.unwrap_or(1);
            CopKind::Plain(Box::new(RandomCop::new(c, a.seed)))
        }
        "general" => CopKind::Staged(StagedCop::general(&g, ov.clone(), a.seed).map_err(staged_err)?),
        "fast" => CopKind::Staged(StagedCop::fast(&g, a.r, ov.clone(), a.seed).map_err(staged_err)?),
        "digraph" => CopKind::Staged(StagedCop::digraph(&g, a.r, ov.clone(), a.seed).map_err(staged_err)?),
        "deployment" => {
            if !g.is_directed() {
                return Err(Failure::validation("deployment cops need a directed graph"));
            }
            let (d, total) = reduction::deployment_controller(&g, budget).map_err(solve_failure)?;
            deployment_total = Some(total.max(1));
            CopKind::Plain(Box::new(d))
        }
        other => return Err(Failure::validation(format!("unknown cop controller {:?}", other))),
    };

    let cop_count = match (&cop, a.cops.as_str()) {
        (CopKind::Staged(c), _) => c.budget.used.max(1),
        (_, "optimal") => a.cop_count.unwrap(),
        (_, "greedy") | (_, "random") => a.cop_count.unwrap_or(1),
        (_, "deployment") => deployment_total.expect("deployment sets its total"),
        _ => unreachable!(),
    };
    let cfg = GameConfig::new(cop_count, speed, g.is_directed());

    let mut robber: Box<dyn RobberController> = match a.robber.as_str() {
        "optimal" => Box::new(OptimalRobber::for_game(&g, &cfg, budget).map_err(solve_failure)?),
        "infinite-evader" => Box::new(InfiniteEvader),
        "finite-evader" => {
            let c = a.c.ok_or_else(|| Failure::validation("--c required for finite-evader"))?;
            let np = a.np.unwrap_or_else(|| 2.0 * g.edges().len() as f64 / g.n() as f64);
            let s0 = a.s0.unwrap_or_else(|| {
                let p = np / g.n() as f64;
                ((3.0 / p) * (g.n() as f64).ln()).ceil() as usize
            });
            Box::new(FiniteEvader::new(c, np, s0))
        }
        "stationary" => Box::new(StationaryRobber),
        "random" => Box::new(RandomRobber::new(a.seed ^ 0x9e3779b9)),
        other => return Err(Failure::validation(format!("unknown robber controller {:?}", other))),
    };

    let (trace, abort) = match cop {
        CopKind::Plain(mut c) => {
            (play(&g, &cfg, c.as_mut(), robber.as_mut(), a.rounds, a.seed), None)
        }
        CopKind::Staged(mut c) => {
            let out = pursuit::controllers::play_staged(&g, &cfg, &mut c, robber.as_mut(), a.rounds, a.seed);
            (out.trace, out.abort)
        }
    };
    let outcome = format!("{:?}", trace.outcome);
    let summary = match &abort {
        Some(reason) => format!("ABORT {} ({})", reason, outcome),
        None => outcome.clone(),
    };
    Ok((
        json!({
            "outcome": trace.outcome,
            "abort": abort,
            "trace": trace.to_lines(),
            "copCount": cop_count,
        }),
        summary,
    ))
}

fn cmd_reduce(a: ReduceArgs, manifest: &mut Manifest) -> Result<(Value, String), Failure> {
    let g = load_graph(&a.graph, manifest)?;
    if !g.is_directed() {
        return Err(Failure::validation("reduce requires a directed graph"));
    }
    let budget = default_budget(a.budget);
    let inst = reduction::build_instance(&g, budget).map_err(solve_failure)?;
    let sol = reduction::solve_covering(&inst);
    let summary = format!("totalCops {} assignment {:?}", sol.total_cops, sol.assignment);
    Ok((
        json!({
            "instance": inst.summary(),
            "solution": sol,
        }),
        summary,
    ))
}

fn cmd_generate(a: GenerateArgs) -> Result<(Value, String), Failure> {
    let g = match a.family.as_str() {
        "subdivided-kn" => {
            if a.n < 3 {
                return Err(Failure::validation("subdivided-kn needs --n >= 3"));
            }
            lab::subdivide_complete(a.n)
        }
        "gnp" => {
            let p = a.p.ok_or_else(|| Failure::validation("gnp needs --p"))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::validation("--p must lie in [0,1]"));
            }
            lab::gnp(a.n, p, a.seed)
        }
        "random-digraph" => {
            let p = a.p.ok_or_else(|| Failure::validation("random-digraph needs --p"))?;
            lab::random_digraph(a.n, p, a.seed)
        }
        other => return Err(Failure::validation(format!("unknown family {:?}", other))),
    };
    let text = g.to_text();
    let digest = sha256_hex(text.as_bytes());
    let summary = format!("n {} edges {} sha256 {}", g.n(), g.edges().len(), digest);
    Ok((json!({ "graph": text, "sha256": digest }), summary))
}

fn cmd_validate(a: ValidateArgs, manifest: &mut Manifest) -> Result<(Value, String), Failure> {
    let g = load_graph(&a.graph, manifest)?;
    let n = g.n() as f64;
    let np = a.np.unwrap_or(2.0 * g.edges().len() as f64 / n);
    let p = (np / n).max(f64::MIN_POSITIVE);
    let mode = match a.mode.as_str() {
        "exhaustive" => Mode::Exhaustive { cap: a.cap },
        "sampled" => Mode::Sampled { trials: a.trials, seed: a.seed },
        other => return Err(Failure::validation(format!("unknown mode {:?}", other))),
    };
    let report = match a.property.as_str() {
        "subset-avg-degree" => lab::validate_subset_avg_degree(
            &g,
            a.s_max.unwrap_or((0.6 * n) as usize),
            a.bound.unwrap_or(0.9 * np),
            mode,
        ),
        "cover" => {
            let size = a.set_size.ok_or_else(|| Failure::validation("cover needs --set-size"))?;
            lab::validate_cover(&g, size, a.bound.unwrap_or(4.0 * np * size as f64), mode)
        }
        "pair-connect" => lab::validate_pair_connect(
            &g,
            a.s0.unwrap_or(((3.0 / p) * n.ln()).ceil() as usize),
            mode,
        ),
        "span-few" => lab::validate_span_few(
            &g,
            a.s0.unwrap_or(((3.0 / p) * n.ln()).ceil() as usize),
            a.per_vertex.unwrap_or(6.0 * n.ln()),
            mode,
        ),
        "degree-spread" => lab::validate_degree_spread(
            &g,
            a.gamma.ok_or_else(|| Failure::validation("degree-spread needs --gamma"))?,
            np,
            mode,
        ),
        "degree-range" => lab::validate_degree_range(
            &g,
            a.lo.unwrap_or(0.9 * np),
            a.hi.unwrap_or(1.1 * np),
        ),
        other => return Err(Failure::validation(format!("unknown property {:?}", other))),
    };
    let summary = format!("{} {:?} worstRatio {:.4}", report.property, verdict_name(&report), report.worst_ratio);
    let v = serde_json::to_value(&report).map_err(|e| Failure::validation(e.to_string()))?;
    Ok((v, summary))
}

fn verdict_name(r: &lab::ValidatorReport) -> &'static str {
    match r.verdict {
        lab::Verdict::Holds => "HOLDS",
        lab::Verdict::HoldsUpToCap => "HOLDS-UP-TO-CAP",
        lab::Verdict::Violated { .. } => "VIOLATED",
    }
}

fn cmd_params(a: ParamsArgs) -> Result<(Value, String), Failure> {
    let solved = match a.regime.as_str() {
        "general" => params::solve_general(a.logn),
        "digraph" => params::solve_digraph(a.logn),
        "fast" => params::solve_fast(a.logn, a.r),
        other => return Err(Failure::validation(format!("unknown regime {:?}", other))),
    };
    let prm = solved.map_err(|e| Failure::infeasible(e.to_string()))?;
    let summary = format!(
        "regime {} margins [{:.4}, {:.4}] l {:?}",
        a.regime, prm.margins[0], prm.margins[1], prm.l
    );
    let v = serde_json::to_value(&prm).map_err(|e| Failure::validation(e.to_string()))?;
    Ok((v, summary))
}

fn emit(doc: &Value, summary: &str, out: Option<&str>) -> Result<(), Failure> {
    let bytes = serde_json::to_string_pretty(doc).expect("document serializes") + "\n";
    match out {
        Some(path) => {
            std::fs::write(path, bytes).map_err(|e| Failure::validation(format!("{}: {}", path, e)))?;
            println!("{}", summary);
        }
        None => {
            print!("{}", bytes);
            eprintln!("{}", summary);
        }
    }
    Ok(())
}

fn out_of(cmd: &Cmd) -> Option<String> {
    match cmd {
        Cmd::Solve(a) => a.output.out.clone(),
        Cmd::Trim(a) => a.output.out.clone(),
        Cmd::Play(a) => a.output.out.clone(),
        Cmd::Reduce(a) => a.output.out.clone(),
        Cmd::Generate(a) => a.output.out.clone(),
        Cmd::Validate(a) => a.output.out.clone(),
        Cmd::Params(a) => a.output.out.clone(),
        Cmd::Rerun(a) => a.output.out.clone(),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    // Peek the parse once for the output path and the rerun special case.
    let parsed = Cli::try_parse_from(std::iter::once("pursuit".to_string()).chain(argv.iter().cloned()));
    let cli = match parsed {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version with success exits
            if e.use_stderr() {
                eprintln!("{}", e);
                return ExitCode::from(EXIT_PARSE);
            }
            print!("{}", e);
            return ExitCode::SUCCESS;
        }
    };
    let out = out_of(&cli.cmd);

    let run = || -> Result<(Value, String), Failure> {
        if let Cmd::Rerun(a) = &cli.cmd {
            let text = std::fs::read_to_string(&a.document)
                .map_err(|e| Failure::parse(format!("{}: {}", a.document, e)))?;
            let doc: Value = serde_json::from_str(&text)
                .map_err(|e| Failure::parse(format!("{}: {}", a.document, e)))?;
            let embedded = doc
                .get("manifest")
                .and_then(|m| m.get("argv"))
                .and_then(|v| v.as_array())
                .ok_or_else(|| Failure::parse("document has no manifest.argv"))?;
            let argv: Vec<String> = embedded
                .iter()
                .map(|v| v.as_str().map(str::to_string))
                .collect::<Option<_>>()
                .ok_or_else(|| Failure::parse("manifest.argv must be strings"))?;
            if argv.first().map(String::as_str) == Some("rerun") {
                return Err(Failure::validation("refusing to rerun a rerun manifest"));
            }
            execute(&argv)
        } else {
            execute(&argv)
        }
    };

    match run() {
        Ok((doc, summary)) => match emit(&doc, &summary, out.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(f) => {
                eprintln!("error: {}", f.msg);
                ExitCode::from(f.code)
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.msg);
            let _ = std::io::stderr().flush();
            ExitCode::from(f.code)
        }
    }
}
