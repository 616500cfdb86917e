//! Batch command-line front end: generation, structure checking, detection,
//! pure-pair search, the construction pipeline, and the experiment runner.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation failure, 3 budget
//! exhausted. Diagnostics go to standard error.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use purepair::construct::pattern::{find_pattern, reduce_and_find, ReduceOutcome};
use purepair::construct::Mode;
use purepair::detect::{
    self, branch_length, card_threshold, coherence_violation, find_antihole_of_length,
    find_hole_of_length, is_eps_sparse, is_tau_expanding, Certificate, CoherenceParams,
    SearchOutcome, DEFAULT_EXACT_CAP,
};
use purepair::gen::{
    comparability_graph, engineered_levelling_pair, gnp, pattern_library, FixtureSpec,
};
use purepair::graph::{parse_edge_list, write_edge_list, Graph, VertexSet};
use purepair::oracle::{max_pure_pair, Budget, OracleError, PairKind, SearchMode, EXACT_PURE_PAIR_CAP};
use purepair::structio::{parse_structure, write_structure, Structure};
use purepair::structures::{realize_pattern, BatteryParams, CycleSpec, PathSpec, PatternGraph};

#[derive(Parser)]
#[command(name = "purepair", version, about = "pure-pair structure toolkit", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph and write it in edge-list format.
    Gen(GenArgs),
    /// Validate a structure file against a graph.
    CheckStructure(CheckArgs),
    /// Run a detector on a graph.
    Detect(DetectArgs),
    /// Search for a maximum balanced pure pair.
    FindPurePair(PurePairArgs),
    /// Run the construction pipeline against a target pattern.
    Pipeline(PipelineArgs),
    /// Batch pure-pair experiment with CSV output.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Gnp,
    Comparability,
    Fixture,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Edge probability (gnp).
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Number of linear orders (comparability).
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fixture spec file (key=value lines).
    #[arg(long)]
    spec: Option<String>,
    /// Output file for the graph (default standard output).
    #[arg(long)]
    out: Option<String>,
    /// Optional output files for the fixture's two levellings.
    #[arg(long)]
    lv1_out: Option<String>,
    #[arg(long)]
    lv2_out: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    graph: String,
    #[arg(long)]
    structure: String,
    /// Battery height parameter c (battery structures only).
    #[arg(long, default_value_t = 1.0)]
    battery_c: f64,
    /// Battery mass parameter x (battery structures only).
    #[arg(long, default_value_t = 0.0)]
    battery_x: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DetectMode {
    Exact,
    Heuristic,
}

impl From<DetectMode> for SearchMode {
    fn from(m: DetectMode) -> SearchMode {
        match m {
            DetectMode::Exact => SearchMode::Exact,
            DetectMode::Heuristic => SearchMode::Heuristic,
        }
    }
}

#[derive(Args)]
struct DetectArgs {
    #[arg(long)]
    graph: String,
    /// Search for a hole of exactly this length.
    #[arg(long)]
    hole: Option<usize>,
    /// Search for an antihole of exactly this length.
    #[arg(long)]
    antihole: Option<usize>,
    /// Report the branch-length.
    #[arg(long)]
    branch_length: bool,
    /// Check eps-sparsity.
    #[arg(long)]
    sparse: Option<f64>,
    /// Check (alpha, beta)-coherence; two values.
    #[arg(long, num_args = 2, value_names = ["ALPHA", "BETA"])]
    coherent: Option<Vec<f64>>,
    /// Check tau-expansion.
    #[arg(long)]
    expanding: Option<f64>,
    #[arg(long, value_enum, default_value_t = DetectMode::Exact)]
    mode: DetectMode,
    #[arg(long, default_value_t = 50_000_000)]
    budget: u64,
    /// Exact-search size cap for coherence/expansion.
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    cap: usize,
}

#[derive(Args)]
struct PurePairArgs {
    #[arg(long)]
    graph: String,
    #[arg(long, value_enum, default_value_t = DetectMode::Exact)]
    mode: DetectMode,
    #[arg(long, default_value_t = 50_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sparsity parameter for the reported thresholds.
    #[arg(long, default_value_t = 0.25)]
    eps: f64,
    /// Exponent parameter for the reported thresholds (1/c integral).
    #[arg(long, default_value_t = 0.5)]
    c: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RunMode {
    Strict,
    Permissive,
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long)]
    graph: String,
    /// Library pattern name or pattern file.
    #[arg(long)]
    pattern: String,
    /// Second pattern (complement target); switches to the reduction driver.
    #[arg(long)]
    pattern2: Option<String>,
    #[arg(long)]
    c: f64,
    #[arg(long)]
    eps: f64,
    #[arg(long, value_enum, default_value_t = RunMode::Permissive)]
    mode: RunMode,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Comma-separated graph sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    trials: u64,
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    #[arg(long, default_value_t = 0.25)]
    eps: f64,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200_000)]
    budget: u64,
    /// CSV output file (default standard output).
    #[arg(long)]
    out: Option<String>,
}

enum CliError {
    Usage(String),
    Validation(String),
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Validation(m) | CliError::Budget(m) => m,
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> CliError {
        match e {
            OracleError::BudgetExhausted(_) => CliError::Budget(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own help/version output on stdout with code 0.
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let result = match cli.cmd {
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::CheckStructure(a) => cmd_check_structure(a),
        Cmd::Detect(a) => cmd_detect(a),
        Cmd::FindPurePair(a) => cmd_find_pure_pair(a),
        Cmd::Pipeline(a) => cmd_pipeline(a),
        Cmd::Experiment(a) => cmd_experiment(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn read_file(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))
}

fn write_output(path: &Option<String>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| CliError::Usage(format!("cannot write {p}: {e}")))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &str) -> Result<Graph, CliError> {
    parse_edge_list(&read_file(path)?).map_err(|e| CliError::Validation(format!("{path}: {e}")))
}

fn cmd_gen(a: GenArgs) -> Result<(), CliError> {
    match a.family {
        Family::Gnp => {
            if !(0.0..=1.0).contains(&a.p) {
                return Err(CliError::Usage("--p must lie in [0,1]".into()));
            }
            write_output(&a.out, &write_edge_list(&gnp(a.n, a.p, a.seed)))
        }
        Family::Comparability => {
            if a.k < 1 {
                return Err(CliError::Usage("--k must be at least 1".into()));
            }
            write_output(&a.out, &write_edge_list(&comparability_graph(a.n, a.k, a.seed)))
        }
        Family::Fixture => {
            let spec_path = a
                .spec
                .as_ref()
                .ok_or_else(|| CliError::Usage("--family fixture needs --spec FILE".into()))?;
            let spec = FixtureSpec::parse(&read_file(spec_path)?)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let (g, lv1, lv2) = engineered_levelling_pair(&spec, a.seed)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            write_output(&a.out, &write_edge_list(&g))?;
            if let Some(p) = &a.lv1_out {
                write_output(&Some(p.clone()), &write_structure(&Structure::Levelling(lv1)))?;
            }
            if let Some(p) = &a.lv2_out {
                write_output(&Some(p.clone()), &write_structure(&Structure::Levelling(lv2)))?;
            }
            Ok(())
        }
    }
}

fn cmd_check_structure(a: CheckArgs) -> Result<(), CliError> {
    let g = load_graph(&a.graph)?;
    let s = parse_structure(&read_file(&a.structure)?, g.n())
        .map_err(|e| CliError::Validation(format!("{}: {e}", a.structure)))?;
    let params = BatteryParams {
        c: a.battery_c,
        x: a.battery_x,
    };
    match s.validate(&g, Some(params)) {
        Ok(()) => {
            println!("ok: {} valid against {} (n = {})", s.kind(), a.graph, g.n());
            Ok(())
        }
        Err(v) => Err(CliError::Validation(format!("{}: {v}", s.kind()))),
    }
}

fn show_set(s: &VertexSet) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn show_outcome(out: &SearchOutcome) -> String {
    match out {
        SearchOutcome::Verified => "verified".to_string(),
        SearchOutcome::Unknown(why) => format!("unknown ({why})"),
        SearchOutcome::WitnessFound(c) => match c {
            Certificate::Sequence(seq) => format!(
                "witness {}",
                seq.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            ),
            Certificate::Set(s) => format!("witness set {}", show_set(s)),
            Certificate::SetPair(a, b) => {
                format!("witness pair A = {{{}}} B = {{{}}}", show_set(a), show_set(b))
            }
            Certificate::Embedding(m) => format!(
                "witness embedding {}",
                m.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            ),
        },
    }
}

fn cmd_detect(a: DetectArgs) -> Result<(), CliError> {
    let g = load_graph(&a.graph)?;
    let mode: SearchMode = a.mode.into();
    let mut budget = Budget(a.budget);
    let picked = [
        a.hole.is_some(),
        a.antihole.is_some(),
        a.branch_length,
        a.sparse.is_some(),
        a.coherent.is_some(),
        a.expanding.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if picked != 1 {
        return Err(CliError::Usage(
            "pick exactly one of --hole, --antihole, --branch-length, --sparse, --coherent, --expanding".into(),
        ));
    }
    if let Some(ell) = a.hole {
        let out = find_hole_of_length(&g, ell, mode, &mut budget)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        println!("hole {ell}: {}", show_outcome(&out));
    } else if let Some(ell) = a.antihole {
        let out = find_antihole_of_length(&g, ell, mode, &mut budget)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        println!("antihole {ell}: {}", show_outcome(&out));
    } else if a.branch_length {
        match branch_length(&g) {
            detect::BranchLength::Finite(l) => println!("branch-length {l}"),
            detect::BranchLength::Infinite => println!("branch-length infinite"),
        }
    } else if let Some(eps) = a.sparse {
        if !(eps > 0.0) {
            return Err(CliError::Usage("--sparse needs eps > 0".into()));
        }
        let rep = is_eps_sparse(&g, eps);
        let bound = eps * g.n() as f64;
        let verdict = if rep.sparse { "yes" } else { "no" };
        println!("sparse: {verdict} (max degree {}, bound {bound:.3})", rep.max_degree);
    } else if let Some(ab) = &a.coherent {
        let p = CoherenceParams { alpha: ab[0], beta: ab[1] };
        let out = coherence_violation(&g, p, mode, &mut budget, a.cap)?;
        match &out {
            SearchOutcome::Verified => println!("coherent: yes (verified)"),
            SearchOutcome::WitnessFound(_) => println!("coherent: no; {}", show_outcome(&out)),
            SearchOutcome::Unknown(_) => println!("coherent: {}", show_outcome(&out)),
        }
    } else if let Some(tau) = a.expanding {
        if tau < 1.0 {
            return Err(CliError::Usage("--expanding needs tau >= 1".into()));
        }
        let out = is_tau_expanding(&g, tau, mode, &mut budget, a.cap)?;
        match &out {
            SearchOutcome::Verified => println!("expanding: yes (verified)"),
            SearchOutcome::WitnessFound(_) => println!("expanding: no; {}", show_outcome(&out)),
            SearchOutcome::Unknown(_) => println!("expanding: {}", show_outcome(&out)),
        }
    }
    Ok(())
}

fn fox_bound(n: usize) -> f64 {
    if n < 2 {
        0.0
    } else {
        n as f64 / (4.0 * (n as f64).log2())
    }
}

fn cmd_find_pure_pair(a: PurePairArgs) -> Result<(), CliError> {
    let g = load_graph(&a.graph)?;
    if !(a.eps > 0.0 && a.eps <= 1.0) {
        return Err(CliError::Usage("--eps must lie in (0,1]".into()));
    }
    if !(a.c > 0.0 && a.c <= 1.0) {
        return Err(CliError::Usage("--c must lie in (0,1]".into()));
    }
    let mode: SearchMode = a.mode.into();
    if mode == SearchMode::Exact && g.n() > EXACT_PURE_PAIR_CAP {
        return Err(CliError::Validation(format!(
            "exact mode capped at n = {EXACT_PURE_PAIR_CAP}; use --mode heuristic"
        )));
    }
    let mut budget = Budget(a.budget);
    let n = g.n() as f64;
    let pair = max_pure_pair(&g, mode, &mut budget, a.seed)?;
    println!("n {}", g.n());
    println!("threshold balanced n/(4 log2 n): {:.3}", fox_bound(g.n()));
    println!("threshold eps*n: {:.3}", a.eps * n);
    println!("threshold eps*n^(1-c): {:.3}", a.eps * n.powf(1.0 - a.c));
    match pair {
        None => println!("no pure pair (fewer than two vertices)"),
        Some(p) => {
            let kind = match p.kind {
                PairKind::Complete => "complete",
                PairKind::Anticomplete => "anticomplete",
            };
            if !p.validate(&g) {
                return Err(CliError::Validation("pair failed revalidation".into()));
            }
            println!("kind {kind}");
            println!("objective {}", p.objective);
            println!("A {}", show_set(&p.a));
            println!("B {}", show_set(&p.b));
        }
    }
    Ok(())
}

/// Pattern file format: `branch N` once, then `path FROM TO LEN` and
/// `cycle ANCHOR LEN` lines. '#' comments allowed.
fn parse_pattern_text(text: &str) -> Result<PatternGraph, String> {
    let mut p = PatternGraph {
        branch_count: 0,
        paths: Vec::new(),
        cycles: Vec::new(),
    };
    let mut saw_branch = false;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let num = |i: usize| -> Result<usize, String> {
            toks.get(i)
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| format!("line {}: bad or missing number", ln + 1))
        };
        match toks[0] {
            "branch" => {
                p.branch_count = num(1)?;
                saw_branch = true;
            }
            "path" => p.paths.push(PathSpec {
                from: num(1)?,
                to: num(2)?,
                len: num(3)?,
            }),
            "cycle" => p.cycles.push(CycleSpec {
                anchor: num(1)?,
                len: num(2)?,
            }),
            other => return Err(format!("line {}: unknown directive '{other}'", ln + 1)),
        }
    }
    if !saw_branch {
        return Err("missing 'branch N' line".into());
    }
    Ok(p)
}

fn load_pattern(name_or_file: &str) -> Result<PatternGraph, CliError> {
    if let Some((_, p)) = pattern_library().into_iter().find(|(n, _)| *n == name_or_file) {
        return Ok(p);
    }
    let text = fs::read_to_string(name_or_file).map_err(|e| {
        CliError::Usage(format!(
            "'{name_or_file}' is neither a library pattern nor a readable file: {e}"
        ))
    })?;
    parse_pattern_text(&text).map_err(|e| CliError::Usage(format!("{name_or_file}: {e}")))
}

fn failure_to_cli(stage: &str, detail: &str) -> CliError {
    let msg = format!("{stage}: {detail}");
    if detail.contains("budget exhausted") {
        CliError::Budget(msg)
    } else {
        CliError::Validation(msg)
    }
}

fn cmd_pipeline(a: PipelineArgs) -> Result<(), CliError> {
    let g = load_graph(&a.graph)?;
    let pattern = load_pattern(&a.pattern)?;
    let mode = match a.mode {
        RunMode::Strict => Mode::Strict,
        RunMode::Permissive => Mode::Permissive,
    };
    println!("graph n {} edges {}", g.n(), g.edge_count());
    match &a.pattern2 {
        None => {
            println!("driver find-pattern");
            let emb = find_pattern(&g, &pattern, a.c, a.eps, mode)
                .map_err(|e| failure_to_cli(e.stage, &e.detail))?;
            println!("stage {}", emb.stage);
            println!(
                "embedding {}",
                emb.map.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            );
        }
        Some(second) => {
            println!("driver reduce-and-find");
            let h1 = realize_pattern(&pattern)
                .map_err(|e| CliError::Usage(format!("{}: {e}", a.pattern)))?;
            let p2 = load_pattern(second)?;
            let h2 =
                realize_pattern(&p2).map_err(|e| CliError::Usage(format!("{second}: {e}")))?;
            let out = reduce_and_find(&g, &h1, &h2, a.c, a.eps)
                .map_err(|e| failure_to_cli(e.stage, &e.detail))?;
            match out {
                ReduceOutcome::EmbeddingH1 { image } => {
                    println!("outcome embedding-h1");
                    println!(
                        "image {}",
                        image.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                    );
                }
                ReduceOutcome::EmbeddingH2Complement { image } => {
                    println!("outcome embedding-h2-complement");
                    println!(
                        "image {}",
                        image.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                    );
                }
                ReduceOutcome::PurePair {
                    pair,
                    side,
                    side_size,
                    target_balanced,
                    target_small,
                } => {
                    let kind = match pair.kind {
                        PairKind::Complete => "complete",
                        PairKind::Anticomplete => "anticomplete",
                    };
                    println!("outcome pure-pair");
                    println!("side {:?} size {side_size}", side);
                    println!("kind {kind} objective {}", pair.objective);
                    println!("target eps*|X| {target_balanced}");
                    println!("target eps*|X|^(1-c) {target_small}");
                    println!("A {}", show_set(&pair.a));
                    println!("B {}", show_set(&pair.b));
                }
            }
        }
    }
    Ok(())
}

fn cmd_experiment(a: ExperimentArgs) -> Result<(), CliError> {
    if a.sizes.is_empty() {
        return Err(CliError::Usage("--sizes needs at least one entry".into()));
    }
    if a.family == Family::Fixture {
        return Err(CliError::Usage("experiment supports gnp and comparability".into()));
    }
    if !(a.c > 0.0 && a.c <= 1.0) || !(a.eps > 0.0 && a.eps <= 1.0) {
        return Err(CliError::Usage("--c and --eps must lie in (0,1]".into()));
    }
    let mut sizes = a.sizes.clone();
    sizes.sort_unstable();
    let mut csv = String::from("n,trial,seed,objective,fox_bound,asym_feasible,runtime_ms\n");
    for &n in &sizes {
        for trial in 0..a.trials {
            let row_seed = a
                .seed
                .wrapping_add((n as u64).wrapping_mul(1_000_003))
                .wrapping_add(trial);
            let g = match a.family {
                Family::Gnp => gnp(n, a.p, row_seed),
                Family::Comparability => comparability_graph(n, a.k, row_seed),
                Family::Fixture => unreachable!(),
            };
            let start = Instant::now();
            // Exact when the cap allows, else validated heuristic.
            let mode = if n <= EXACT_PURE_PAIR_CAP {
                SearchMode::Exact
            } else {
                SearchMode::Heuristic
            };
            let mut budget = Budget(a.budget);
            let pair = match max_pure_pair(&g, mode, &mut budget, row_seed) {
                Ok(p) => p,
                Err(OracleError::BudgetExhausted(_)) => {
                    // Exact search ran out of ticks; rerun heuristically.
                    let mut b2 = Budget(a.budget);
                    max_pure_pair(&g, SearchMode::Heuristic, &mut b2, row_seed)?
                }
                Err(e) => return Err(e.into()),
            };
            let ms = start.elapsed().as_millis();
            let objective = pair.as_ref().map_or(0, |p| p.objective);
            let nf = n as f64;
            let feasible = pair.as_ref().is_some_and(|p| {
                p.a.len().max(p.b.len()) >= card_threshold(a.eps * nf)
                    && p.objective >= card_threshold(a.eps * nf.powf(1.0 - a.c))
            });
            let bound = fox_bound(n);
            if (objective as f64) < bound {
                eprintln!(
                    "finding: n {n} trial {trial} seed {row_seed}: objective {objective} below {bound:.3}"
                );
            }
            writeln!(
                csv,
                "{n},{trial},{row_seed},{objective},{bound:.4},{},{ms}",
                feasible as u8
            )
            .unwrap();
        }
    }
    write_output(&a.out, &csv)
}
