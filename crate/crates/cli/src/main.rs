use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use factorq::edgelist::EdgeListOptions;
use factorq::harness::{records_to_csv, report_to_json};
use factorq::oracles::{
    build_alpha, build_edge_detector, build_edge_detector_naive, build_exact_marking_oracle, build_gamma,
    build_input_preparator,
};
use factorq::search::{build_dicke_prep, build_search_prep, optimal_iterations, Amplifier};
use factorq::sim::DEFAULT_MAX_QUBITS;
use factorq::verify::{run_suite, Suite, VerifyOptions};
use factorq::{
    augment_apex, one_factorization, partition_edges, run_benchmark, Circuit, EdgePartition, Error,
    ExperimentConfig, ExperimentReport, Graph, GraphSource, OracleChoice, SearchSpaceSpec,
};
use serde::{Deserialize, Serialize};

mod bench_config;

use bench_config::BenchFile;

#[derive(Parser, Debug)]
#[command(name = "factorq", version, about = "1-factorization clique oracles: build, verify, simulate, benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every random choice (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest statevector to allocate, in qubits [default: 26].
    #[arg(long, global = true, env = "FACTORQ_MAX_QUBITS")]
    max_qubits: Option<usize>,

    /// Repeat for more logging.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the round-robin 1-factorization of K_n, one factor per line.
    Factorize {
        #[arg(long)]
        n: usize,
    },
    /// Split a graph's edges into matchings, one per line.
    Partition(GraphArgs),
    /// Build a circuit and print its text dump (or depth summary with --format json).
    Build(BuildArgs),
    /// Run a named invariant suite, or `all`.
    Verify {
        suite: String,
        /// Largest node count for size-parameterized suites.
        #[arg(long, default_value_t = 24)]
        max_n: usize,
    },
    /// Amplitude amplification on one small graph.
    Simulate(SimulateArgs),
    /// The benchmark protocol on random induced subgraphs.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Edge-list path or `synthetic:<density>[:<nodes>]`.
    #[arg(long)]
    graph: String,
    /// Node ids in the file start at 1.
    #[arg(long)]
    one_based: bool,
    /// The first data line holds the node count.
    #[arg(long)]
    header: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CircuitKind {
    EdgeDetector,
    EdgeDetectorNaive,
    Alpha,
    InputPrep,
    Gamma,
    Exact,
    Dicke,
    SearchPrep,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(value_enum)]
    kind: CircuitKind,
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    one_based: bool,
    #[arg(long)]
    header: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    k: usize,
    /// Rounds to run; defaults to the optimal count for the true number of cliques.
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    shots: usize,
    /// Outcomes to list.
    #[arg(long, default_value_t = 10)]
    top: usize,
    #[arg(long, value_enum, default_value_t = OracleArg::Gamma)]
    oracle: OracleArg,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// TOML file with any of the flags below; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    one_based: bool,
    #[arg(long)]
    header: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    instances: Option<usize>,
    #[arg(long)]
    shots: Option<usize>,
    #[arg(long)]
    top_window: Option<usize>,
    #[arg(long, value_enum)]
    oracle: Option<OracleArg>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum OracleArg {
    Gamma,
    Exact,
}

impl From<OracleArg> for OracleChoice {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Gamma => OracleChoice::Gamma,
            OracleArg::Exact => OracleChoice::Exact,
        }
    }
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) => Failure::Usage(e.to_string()),
            other => Failure::Failed(other.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let result = match &cli.command {
        Command::Factorize { n } => factorize(&cli, *n),
        Command::Partition(g) => partition(&cli, g),
        Command::Build(args) => build(&cli, args),
        Command::Verify { suite, max_n } => verify(&cli, suite, *max_n),
        Command::Simulate(args) => simulate(&cli, args),
        Command::Bench(args) => bench(&cli, args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Failed(msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn seed(cli: &Cli) -> u64 {
    cli.seed.unwrap_or(0)
}

fn max_qubits(cli: &Cli) -> usize {
    cli.max_qubits.unwrap_or(DEFAULT_MAX_QUBITS)
}

fn emit(cli: &Cli, body: &str) -> CmdResult {
    match &cli.out {
        Some(path) => fs::write(path, body).map_err(|e| Failure::Failed(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|e| Failure::Failed(e.to_string()))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn no_csv(cli: &Cli, what: &str) -> CmdResult {
    if cli.format == Format::Csv {
        return Err(Failure::Usage(format!("{what} has no csv form; use text or json")));
    }
    Ok(())
}

fn load_graph(spec: &str, one_based: bool, header: bool, seed: u64) -> Result<Graph, Failure> {
    let source = GraphSource::parse(spec, EdgeListOptions { one_based, header }, seed)?;
    if let GraphSource::File { path, .. } = &source {
        if !path.exists() {
            return Err(Failure::Failed(format!("{}: no such file", path.display())));
        }
    }
    Ok(source.load()?)
}

fn render_partition(cli: &Cli, p: &EdgePartition) -> CmdResult {
    let classes: Vec<Vec<(usize, usize)>> =
        p.classes().iter().map(|c| c.edges().iter().map(|e| (e.lo(), e.hi())).collect()).collect();
    let body = match cli.format {
        Format::Json => to_json(&classes),
        Format::Csv => {
            let mut s = String::from("class,a,b\n");
            for (i, c) in classes.iter().enumerate() {
                for (a, b) in c {
                    s.push_str(&format!("{i},{a},{b}\n"));
                }
            }
            s
        }
        Format::Text => classes
            .iter()
            .map(|c| c.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(" ") + "\n")
            .collect(),
    };
    emit(cli, &body)
}

fn factorize(cli: &Cli, n: usize) -> CmdResult {
    if n == 0 || n % 2 == 1 {
        return Err(Failure::Usage(format!(
            "--n {n}: a 1-factorization of K_n exists only for even n >= 2 (odd n has no perfect matching)"
        )));
    }
    render_partition(cli, &one_factorization(n)?)
}

fn partition(cli: &Cli, g: &GraphArgs) -> CmdResult {
    let graph = load_graph(&g.graph, g.one_based, g.header, seed(cli))?;
    render_partition(cli, &partition_edges(&graph))
}

fn build(cli: &Cli, args: &BuildArgs) -> CmdResult {
    no_csv(cli, "build")?;
    let graph = || -> Result<Graph, Failure> {
        let spec = args.graph.as_deref().ok_or_else(|| Failure::Usage(format!("{:?} needs --graph", args.kind)))?;
        load_graph(spec, args.one_based, args.header, seed(cli))
    };
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Failure::Usage(format!("{:?} needs --{flag}", args.kind)));
    let circuit: Circuit = match args.kind {
        CircuitKind::EdgeDetector => build_edge_detector(&graph()?)?,
        CircuitKind::EdgeDetectorNaive => build_edge_detector_naive(&graph()?)?,
        CircuitKind::Alpha => build_alpha(&graph()?)?,
        CircuitKind::InputPrep => {
            let n = match args.n {
                Some(n) => n,
                None => graph()?.node_count(),
            };
            build_input_preparator(n)?
        }
        CircuitKind::Gamma => build_gamma(&augment_apex(&graph()?, need(args.k, "k")?)?)?,
        CircuitKind::Exact => build_exact_marking_oracle(&augment_apex(&graph()?, need(args.k, "k")?)?)?,
        CircuitKind::Dicke => build_dicke_prep(need(args.n, "n")?, need(args.k, "k")?)?,
        CircuitKind::SearchPrep => {
            let n = match args.n {
                Some(n) => n,
                None => graph()?.node_count(),
            };
            build_search_prep(&SearchSpaceSpec::new(n, need(args.k, "k")?)?)?
        }
    };
    let body = match cli.format {
        Format::Json => to_json(&serde_json::json!({
            "qubits": circuit.qubit_count(),
            "registers": circuit.registers(),
            "gates": circuit.gate_count(),
            "depth": circuit.depth()?,
        })),
        _ => circuit.to_text(),
    };
    emit(cli, &body)
}

fn verify(cli: &Cli, suite: &str, max_n: usize) -> CmdResult {
    no_csv(cli, "verify")?;
    let suites = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse::<Suite>().map_err(|_| {
            Failure::Usage(format!("unknown suite {suite:?}; choose one of: all, {}", Suite::names().join(", ")))
        })?]
    };
    let opts = VerifyOptions { max_n, seed: seed(cli) };
    let reports = suites.into_iter().map(|s| run_suite(s, &opts)).collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.passed());
    let body = match cli.format {
        Format::Json => to_json(&serde_json::json!({ "passed": passed, "suites": reports })),
        _ => {
            let mut s = String::new();
            for r in &reports {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                s.push_str(&format!("{verdict} {} ({} checks)\n", r.suite, r.checks.len()));
                for c in &r.checks {
                    let mark = if c.passed { "ok  " } else { "FAIL" };
                    let detail = if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) };
                    s.push_str(&format!("  {mark} {}{detail}\n", c.name));
                }
            }
            s
        }
    };
    emit(cli, &body)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Failed(String::new()))
    }
}

#[derive(Serialize)]
struct Outcome {
    bitstring: String,
    count: usize,
    nodes: Option<Vec<usize>>,
    clique: bool,
}

#[derive(Serialize)]
struct SimulationSummary {
    n: usize,
    k: usize,
    qubits: usize,
    cliques: usize,
    iterations: usize,
    shots: usize,
    success_probability: f64,
    top: Vec<Outcome>,
}

fn simulate(cli: &Cli, args: &SimulateArgs) -> CmdResult {
    no_csv(cli, "simulate")?;
    let g = load_graph(&args.graph.graph, args.graph.one_based, args.graph.header, seed(cli))?;
    let spec = SearchSpaceSpec::new(g.node_count(), args.k)?;
    let ag = augment_apex(&g, args.k)?;
    let cliques = g.count_k_cliques(args.k)?;
    let t = match args.t {
        Some(t) => t,
        None if cliques > 0 => optimal_iterations(spec.size(), cliques as u128)?,
        None => 1,
    };
    let oracle = match args.oracle {
        OracleArg::Gamma => build_gamma(&ag)?,
        OracleArg::Exact => build_exact_marking_oracle(&ag)?,
    };
    let mut amp = Amplifier::with_limit(&build_search_prep(&spec)?, &oracle, max_qubits(cli))?;
    for _ in 0..t {
        amp.step()?;
    }
    let decode = |v: u64| ag.decode_query(v).filter(|h| h.len() == args.k);
    let probs = amp.idx_probabilities()?;
    let success_probability = probs
        .iter()
        .enumerate()
        .filter(|&(v, _)| decode(v as u64).is_some_and(|h| g.is_clique(&h)))
        .map(|(_, p)| p)
        .sum();
    let hist = amp.sample(args.shots, seed(cli))?;
    let top = hist
        .top(args.top)
        .into_iter()
        .map(|(v, count)| {
            let nodes = decode(v);
            let clique = nodes.as_ref().is_some_and(|h| g.is_clique(h));
            Outcome { bitstring: hist.bitstring(v), count, nodes, clique }
        })
        .collect();
    let summary = SimulationSummary {
        n: g.node_count(),
        k: args.k,
        qubits: oracle.qubit_count(),
        cliques,
        iterations: t,
        shots: args.shots,
        success_probability,
        top,
    };
    let body = match cli.format {
        Format::Json => to_json(&summary),
        _ => {
            let mut s = format!(
                "n={} k={} qubits={} cliques={} t={} p(clique)={:.4}\n",
                summary.n, summary.k, summary.qubits, summary.cliques, t, summary.success_probability
            );
            for o in &summary.top {
                let nodes = o.nodes.as_ref().map_or("-".into(), |h| format!("{h:?}"));
                let tag = if o.clique { "clique" } else { "" };
                let line = format!("{} {:>6} {nodes} {tag}", o.bitstring, o.count);
                s.push_str(line.trim_end());
                s.push('\n');
            }
            s
        }
    };
    emit(cli, &body)
}

fn bench_config(cli: &Cli, args: &BenchArgs) -> Result<ExperimentConfig, Failure> {
    let file = match &args.config {
        Some(path) => BenchFile::load(path)?,
        None => BenchFile::default(),
    };
    let graph = args
        .graph
        .clone()
        .or(file.graph)
        .ok_or_else(|| Failure::Usage("bench needs --graph or a config with `graph`".into()))?;
    let n = args.n.or(file.n).ok_or_else(|| Failure::Usage("bench needs --n".into()))?;
    let k = args.k.or(file.k).ok_or_else(|| Failure::Usage("bench needs --k".into()))?;
    let seed = cli.seed.or(file.seed).unwrap_or(0);
    let options = EdgeListOptions {
        one_based: args.one_based || file.one_based.unwrap_or(false),
        header: args.header || file.header.unwrap_or(false),
    };
    let source = GraphSource::parse(&graph, options, seed)?;
    if let GraphSource::File { path, .. } = &source {
        if !path.exists() {
            return Err(Failure::Failed(format!("{}: no such file", path.display())));
        }
    }
    let mut cfg = ExperimentConfig::new(source, n, k);
    cfg.seed = seed;
    if let Some(v) = args.instances.or(file.instances) {
        cfg.instances = v;
    }
    if let Some(v) = args.shots.or(file.shots) {
        cfg.shots = v;
    }
    if let Some(v) = args.top_window.or(file.top_window) {
        cfg.top_window = v;
    }
    if let Some(o) = args.oracle.or(file.oracle) {
        cfg.oracle = o.into();
    }
    cfg.max_qubits = cli.max_qubits.or(file.max_qubits).unwrap_or(DEFAULT_MAX_QUBITS);
    cfg.validate()?;
    Ok(cfg)
}

fn summary_table(report: &ExperimentReport) -> String {
    let mut s = format!(
        "{:>3} {:>3} {:>6} {:>9} {:>9} {:>9} {:>8} {:>9}  graph\n",
        "n", "k", "qubits", "instances", "cliqueful", "successes", "rate", "geo-mean"
    );
    for r in &report.rows {
        let rate = r.success_rate.map_or("-".into(), |x| format!("{:.1}%", 100.0 * x));
        let gm = r.geometric_mean_ratio.map_or("-".into(), |x| format!("{x:.3}"));
        s.push_str(&format!(
            "{:>3} {:>3} {:>6} {:>9} {:>9} {:>9} {:>8} {:>9}  {}\n",
            r.n, r.k, r.qubits, r.generated, r.cliqueful, r.successes, rate, gm, r.graph
        ));
    }
    s
}

fn bench(cli: &Cli, args: &BenchArgs) -> CmdResult {
    let cfg = bench_config(cli, args)?;
    let report = run_benchmark(&cfg)?;
    let table = summary_table(&report);
    match (cli.format, &cli.out) {
        (Format::Text, None) => print!("{table}"),
        (Format::Json, None) => print!("{}", report_to_json(&report)),
        (Format::Csv, None) => print!("{}", records_to_csv(&report.records)),
        (format, Some(path)) => {
            let body = match format {
                Format::Csv => records_to_csv(&report.records),
                _ => report_to_json(&report),
            };
            fs::write(path, body).map_err(|e| Failure::Failed(format!("{}: {e}", path.display())))?;
            print!("{table}");
        }
    }
    Ok(())
}
