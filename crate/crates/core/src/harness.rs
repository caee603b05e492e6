//! Benchmark protocol: draw random induced subgraphs, keep the ones that
//! contain a `k`-clique, sweep amplitude amplification rounds `t = 1, 2, ...`
//! up to the cap and record the first `t` at which one of the most frequent
//! `idx` outcomes is a `k`-clique.

use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::edgelist::{generate_synthetic, load_edge_list, EdgeListOptions};
use crate::error::{Error, Result};
use crate::graph::{augment_apex, random_induced_subgraph, Graph, InducedSubgraph};
use crate::oracles::{build_exact_marking_oracle, build_gamma};
use crate::search::{build_search_prep, optimal_iterations, Amplifier, SearchSpaceSpec};
use crate::sim::{check_qubit_budget, DEFAULT_MAX_QUBITS};

/// Version tag written into every exported report.
pub const REPORT_SCHEMA: &str = "factorq.report.v1";

/// Node count used by `synthetic:<density>` when none is given.
pub const DEFAULT_SYNTHETIC_NODES: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphSource {
    File { path: PathBuf, one_based: bool, header: bool },
    Synthetic { nodes: usize, density: f64, seed: u64 },
}

impl GraphSource {
    /// Parses `synthetic:<density>[:<nodes>]` or a file path.
    pub fn parse(spec: &str, options: EdgeListOptions, seed: u64) -> Result<Self> {
        if let Some(rest) = spec.strip_prefix("synthetic:") {
            let mut parts = rest.split(':');
            let density: f64 = parts
                .next()
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::invalid(format!("bad density in {spec:?}")))?;
            let nodes = match parts.next() {
                Some(n) => n.parse().map_err(|_| Error::invalid(format!("bad node count in {spec:?}")))?,
                None => DEFAULT_SYNTHETIC_NODES,
            };
            return Ok(GraphSource::Synthetic { nodes, density, seed });
        }
        Ok(GraphSource::File {
            path: spec.into(),
            one_based: options.one_based,
            header: options.header,
        })
    }

    pub fn label(&self) -> String {
        match self {
            GraphSource::File { path, .. } => path.display().to_string(),
            GraphSource::Synthetic { nodes, density, .. } => format!("synthetic:{density}:{nodes}"),
        }
    }

    pub fn load(&self) -> Result<Graph> {
        match self {
            GraphSource::File { path, one_based, header } => {
                let opts = EdgeListOptions { one_based: *one_based, header: *header };
                Ok(load_edge_list(path, opts)?.0)
            }
            GraphSource::Synthetic { nodes, density, seed } => generate_synthetic(*nodes, *density, *seed),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleChoice {
    Gamma,
    /// Idealized phase oracle marking exactly the `k`-cliques.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub source: GraphSource,
    pub n: usize,
    pub k: usize,
    pub instances: usize,
    pub shots: usize,
    pub top_window: usize,
    pub seed: u64,
    pub oracle: OracleChoice,
    pub max_qubits: usize,
}

impl ExperimentConfig {
    pub fn new(source: GraphSource, n: usize, k: usize) -> Self {
        ExperimentConfig {
            source,
            n,
            k,
            instances: 100,
            shots: 1000,
            top_window: 10,
            seed: 0,
            oracle: OracleChoice::Gamma,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.top_window == 0 || self.shots < self.top_window {
            return Err(Error::invalid(format!(
                "need shots >= top_window >= 1 (shots {}, window {})",
                self.shots, self.top_window
            )));
        }
        if self.k == 0 || self.k > self.n {
            return Err(Error::invalid(format!("clique size {} outside 1..={}", self.k, self.n)));
        }
        Ok(())
    }

    /// Simulated width for the chosen oracle.
    pub fn simulated_qubits(&self) -> Result<usize> {
        let spec = SearchSpaceSpec::new(self.n, self.k)?;
        Ok(match self.oracle {
            OracleChoice::Gamma => spec.total_qubits(),
            OracleChoice::Exact => spec.n_qubits(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub n: usize,
    pub k: usize,
    pub instance: usize,
    pub node_ids: Vec<usize>,
    pub clique_count: usize,
    pub gamma_iterations: Option<usize>,
    pub baseline_iterations: usize,
    pub success: bool,
    pub ratio: Option<f64>,
}

/// One row of the per-`(n, k)` summary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub n: usize,
    pub k: usize,
    pub qubits: usize,
    pub graph: String,
    pub generated: usize,
    pub cliqueful: usize,
    pub successes: usize,
    pub success_rate: Option<f64>,
    pub geometric_mean_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema: String,
    pub configs: Vec<ExperimentConfig>,
    pub rows: Vec<AggregateRow>,
    pub records: Vec<ExperimentRecord>,
}

impl ExperimentReport {
    pub fn empty() -> Self {
        ExperimentReport { schema: REPORT_SCHEMA.into(), configs: vec![], rows: vec![], records: vec![] }
    }

    pub fn merge(mut self, other: ExperimentReport) -> Self {
        self.configs.extend(other.configs);
        self.rows.extend(other.rows);
        self.records.extend(other.records);
        self
    }
}

/// `2 (n + q) + 2`, the width of the Gamma amplification circuit.
pub fn gamma_qubits(n: usize, k: usize) -> Result<usize> {
    Ok(SearchSpaceSpec::new(n, k)?.total_qubits())
}

/// `exp(mean(ln x))`; `None` for an empty list.
pub fn geometric_mean(values: &[f64]) -> Result<Option<f64>> {
    if let Some(bad) = values.iter().find(|&&v| v.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) || !v.is_finite()) {
        return Err(Error::invalid(format!("geometric mean needs positive values, got {bad}")));
    }
    if values.is_empty() {
        return Ok(None);
    }
    let mut logs: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    logs.sort_by(f64::total_cmp);
    Ok(Some((logs.iter().sum::<f64>() / logs.len() as f64).exp()))
}

struct Instance {
    id: usize,
    sub: InducedSubgraph,
    clique_count: usize,
    seed: u64,
}

/// Outcome of sweeping one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepOutcome {
    /// First succeeding round count, if any within the cap.
    pub iterations: Option<usize>,
}

/// Sweeps `t = 1..=cap` on `graph` and returns the first `t` at which one of
/// the `top_window` most frequent outcomes decodes to a `k`-clique.
pub fn sweep_instance(
    graph: &Graph,
    cfg: &ExperimentConfig,
    seed: u64,
) -> Result<SweepOutcome> {
    let spec = SearchSpaceSpec::new(cfg.n, cfg.k)?;
    let ag = augment_apex(graph, cfg.k)?;
    let prep = build_search_prep(&spec)?;
    let oracle = match cfg.oracle {
        OracleChoice::Gamma => build_gamma(&ag)?,
        OracleChoice::Exact => build_exact_marking_oracle(&ag)?,
    };
    let mut amp = Amplifier::with_limit(&prep, &oracle, cfg.max_qubits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 1..=spec.iteration_cap() {
        amp.step()?;
        let hist = amp.sample(cfg.shots, rng.gen())?;
        let found = hist.top(cfg.top_window).into_iter().any(|(value, _)| {
            ag.decode_query(value)
                .is_some_and(|nodes| nodes.len() == cfg.k && graph.is_clique(&nodes))
        });
        if found {
            return Ok(SweepOutcome { iterations: Some(t) });
        }
    }
    Ok(SweepOutcome { iterations: None })
}

fn draw_instances(source: &Graph, cfg: &ExperimentConfig, count: usize) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut instances = Vec::new();
    for id in 0..count {
        let draw_seed: u64 = rng.gen();
        let sweep_seed: u64 = rng.gen();
        let sub = random_induced_subgraph(source, cfg.n, draw_seed)?;
        let clique_count = sub.graph.count_k_cliques(cfg.k)?;
        if clique_count > 0 {
            instances.push(Instance { id, sub, clique_count, seed: sweep_seed });
        }
    }
    Ok(instances)
}

/// Smallest `instances` setting for which `cfg` yields at least `target`
/// clique-containing draws, searching up to `limit` draws. Only classical
/// work is done.
pub fn instances_for_cliqueful(cfg: &ExperimentConfig, target: usize, limit: usize) -> Result<Option<usize>> {
    let source = cfg.source.load()?;
    if target == 0 {
        return Ok(Some(0));
    }
    let drawn = draw_instances(&source, cfg, limit)?;
    Ok(drawn.get(target - 1).map(|inst| inst.id + 1))
}

/// Runs the full protocol for one `(n, k)` cell.
pub fn run_benchmark(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let spec = SearchSpaceSpec::new(cfg.n, cfg.k)?;
    check_qubit_budget(cfg.simulated_qubits()?, cfg.max_qubits)?;

    let source = cfg.source.load()?;
    if cfg.n > source.node_count() {
        return Err(Error::invalid(format!(
            "cannot draw {}-node subgraphs from a {}-node graph",
            cfg.n,
            source.node_count()
        )));
    }

    let instances = draw_instances(&source, cfg, cfg.instances)?;
    log::info!(
        "n={} k={}: {} of {} instances contain a {}-clique",
        cfg.n,
        cfg.k,
        instances.len(),
        cfg.instances,
        cfg.k
    );

    let records = instances
        .par_iter()
        .map(|inst| {
            let outcome = sweep_instance(&inst.sub.graph, cfg, inst.seed)?;
            let baseline = optimal_iterations(spec.size(), inst.clique_count as u128)?;
            Ok(ExperimentRecord {
                n: cfg.n,
                k: cfg.k,
                instance: inst.id,
                node_ids: inst.sub.node_map.clone(),
                clique_count: inst.clique_count,
                gamma_iterations: outcome.iterations,
                baseline_iterations: baseline,
                success: outcome.iterations.is_some(),
                ratio: outcome.iterations.map(|t| t as f64 / baseline as f64),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let successes = records.iter().filter(|r| r.success).count();
    let ratios: Vec<f64> = records.iter().filter_map(|r| r.ratio).collect();
    let row = AggregateRow {
        n: cfg.n,
        k: cfg.k,
        qubits: spec.total_qubits(),
        graph: cfg.source.label(),
        generated: cfg.instances,
        cliqueful: records.len(),
        successes,
        success_rate: (!records.is_empty()).then(|| successes as f64 / records.len() as f64),
        geometric_mean_ratio: geometric_mean(&ratios)?,
    };
    Ok(ExperimentReport {
        schema: REPORT_SCHEMA.into(),
        configs: vec![cfg.clone()],
        rows: vec![row],
        records,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Flat CSV form of a record; `node_ids` is space separated and absent
/// values are empty cells.
#[derive(Debug, Serialize, Deserialize)]
struct CsvRecord {
    n: usize,
    k: usize,
    instance: usize,
    node_ids: String,
    clique_count: usize,
    gamma_iterations: Option<usize>,
    baseline_iterations: usize,
    success: bool,
    ratio: Option<f64>,
}

impl From<&ExperimentRecord> for CsvRecord {
    fn from(r: &ExperimentRecord) -> Self {
        CsvRecord {
            n: r.n,
            k: r.k,
            instance: r.instance,
            node_ids: r.node_ids.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
            clique_count: r.clique_count,
            gamma_iterations: r.gamma_iterations,
            baseline_iterations: r.baseline_iterations,
            success: r.success,
            ratio: r.ratio,
        }
    }
}

impl TryFrom<CsvRecord> for ExperimentRecord {
    type Error = String;

    fn try_from(r: CsvRecord) -> std::result::Result<Self, String> {
        let node_ids = r
            .node_ids
            .split_whitespace()
            .map(|s| s.parse().map_err(|_| format!("bad node id {s:?}")))
            .collect::<std::result::Result<_, _>>()?;
        Ok(ExperimentRecord {
            n: r.n,
            k: r.k,
            instance: r.instance,
            node_ids,
            clique_count: r.clique_count,
            gamma_iterations: r.gamma_iterations,
            baseline_iterations: r.baseline_iterations,
            success: r.success,
            ratio: r.ratio,
        })
    }
}

pub fn report_to_json(report: &ExperimentReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn records_to_csv(records: &[ExperimentRecord]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record([
        "n",
        "k",
        "instance",
        "node_ids",
        "clique_count",
        "gamma_iterations",
        "baseline_iterations",
        "success",
        "ratio",
    ])
    .expect("in-memory write");
    for r in records {
        w.serialize(CsvRecord::from(r)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

/// Writes `report` to `path`. JSON carries the whole document; CSV carries
/// one row per record.
pub fn export_report(report: &ExperimentReport, path: impl AsRef<Path>, format: ReportFormat) -> Result<()> {
    let path = path.as_ref();
    let body = match format {
        ReportFormat::Json => report_to_json(report),
        ReportFormat::Csv => records_to_csv(&report.records),
    };
    fs::write(path, body).map_err(|e| Error::io(path, e))
}

pub fn read_report_json(path: impl AsRef<Path>) -> Result<ExperimentReport> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Format { path: path.into(), message: e.to_string() })
}

pub fn read_records_csv(path: impl AsRef<Path>) -> Result<Vec<ExperimentRecord>> {
    let path = path.as_ref();
    let fail = |message: String| Error::Format { path: path.into(), message };
    let mut reader = csv::Reader::from_path(path).map_err(|e| fail(e.to_string()))?;
    reader
        .deserialize::<CsvRecord>()
        .map(|row| row.map_err(|e| fail(e.to_string()))?.try_into().map_err(fail))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_means() {
        assert!((geometric_mean(&[1.0, 1.0, 1.0]).unwrap().unwrap() - 1.0).abs() < 1e-15);
        assert!((geometric_mean(&[2.0, 0.5]).unwrap().unwrap() - 1.0).abs() < 1e-15);
        assert!((geometric_mean(&[1.0, 2.0, 4.0]).unwrap().unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(geometric_mean(&[]).unwrap(), None);
        assert!(geometric_mean(&[1.0, 0.0]).is_err());
        assert!(geometric_mean(&[-1.0]).is_err());
    }

    #[test]
    fn table3_qubit_counts() {
        let rows = [
            (6, 3, 22),
            (6, 4, 20),
            (7, 3, 24),
            (7, 4, 22),
            (7, 5, 20),
            (8, 3, 26),
            (8, 4, 24),
            (8, 5, 22),
            (8, 6, 20),
        ];
        for (n, k, q) in rows {
            assert_eq!(gamma_qubits(n, k).unwrap(), q, "n={n} k={k}");
        }
    }

    #[test]
    fn config_validation() {
        let src = GraphSource::Synthetic { nodes: 10, density: 0.5, seed: 0 };
        let mut cfg = ExperimentConfig::new(src, 6, 3);
        assert!(cfg.validate().is_ok());
        cfg.top_window = 0;
        assert!(cfg.validate().is_err());
        cfg.top_window = 10;
        cfg.shots = 5;
        assert!(cfg.validate().is_err());
        cfg.shots = 100;
        cfg.k = 7;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn resource_error_before_simulation() {
        let src = GraphSource::File { path: "/nonexistent".into(), one_based: false, header: false };
        let mut cfg = ExperimentConfig::new(src, 8, 3);
        cfg.max_qubits = 24;
        assert!(matches!(run_benchmark(&cfg), Err(Error::Resource { qubits: 26, .. })));
    }

    #[test]
    fn source_parsing() {
        let s = GraphSource::parse("synthetic:0.998", EdgeListOptions::default(), 3).unwrap();
        assert_eq!(s, GraphSource::Synthetic { nodes: DEFAULT_SYNTHETIC_NODES, density: 0.998, seed: 3 });
        let s = GraphSource::parse("synthetic:0.5:40", EdgeListOptions::default(), 3).unwrap();
        assert_eq!(s, GraphSource::Synthetic { nodes: 40, density: 0.5, seed: 3 });
        assert!(GraphSource::parse("synthetic:x", EdgeListOptions::default(), 0).is_err());
        assert!(matches!(
            GraphSource::parse("edges.txt", EdgeListOptions::default(), 0).unwrap(),
            GraphSource::File { .. }
        ));
    }

    #[test]
    fn complete_instance_succeeds_at_first_round() {
        let src = GraphSource::Synthetic { nodes: 6, density: 1.0, seed: 0 };
        let cfg = ExperimentConfig::new(src, 6, 3);
        let out = sweep_instance(&Graph::complete(6), &cfg, 1).unwrap();
        assert_eq!(out.iterations, Some(1));
    }

    #[test]
    fn csv_roundtrip_keeps_absent_values() {
        let records = vec![
            ExperimentRecord {
                n: 6,
                k: 3,
                instance: 4,
                node_ids: vec![1, 5, 9, 20, 33, 41],
                clique_count: 2,
                gamma_iterations: None,
                baseline_iterations: 2,
                success: false,
                ratio: None,
            },
            ExperimentRecord {
                n: 6,
                k: 3,
                instance: 7,
                node_ids: vec![0, 2, 3, 4, 7, 8],
                clique_count: 1,
                gamma_iterations: Some(2),
                baseline_iterations: 3,
                success: true,
                ratio: Some(2.0 / 3.0),
            },
        ];
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        let report = ExperimentReport { records: records.clone(), ..ExperimentReport::empty() };
        export_report(&report, &path, ReportFormat::Csv).unwrap();
        assert_eq!(read_records_csv(&path).unwrap(), records);
    }
}
