//! Named invariant suites, runnable from the command line.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::edgelist::generate_synthetic;
use crate::error::{Error, Result};
use crate::factorization::{one_factorization, partition_edges};
use crate::graph::{augment_apex, Graph};
use crate::harness::gamma_qubits;
use crate::oracles::{
    build_alpha, build_edge_detector, build_edge_detector_naive, build_gamma, build_gamma_for_graph,
    build_input_preparator, gamma_response, query_edge_detector, OracleLayout,
};
use crate::search::binomial;
use crate::sim::Statevector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Factorization,
    Partition,
    EdgeDetector,
    Depth,
    AlphaTriangle,
    Normalization,
    InputPrep,
    Gamma,
    QubitCounts,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Factorization,
        Suite::Partition,
        Suite::EdgeDetector,
        Suite::Depth,
        Suite::AlphaTriangle,
        Suite::Normalization,
        Suite::InputPrep,
        Suite::Gamma,
        Suite::QubitCounts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Factorization => "factorization",
            Suite::Partition => "partition",
            Suite::EdgeDetector => "edge-detector",
            Suite::Depth => "depth",
            Suite::AlphaTriangle => "alpha-triangle",
            Suite::Normalization => "normalization",
            Suite::InputPrep => "input-prep",
            Suite::Gamma => "gamma",
            Suite::QubitCounts => "qubit-counts",
        }
    }

    pub fn names() -> Vec<&'static str> {
        Suite::ALL.iter().map(|s| s.name()).collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            Error::invalid(format!("unknown suite {s:?}; known suites: {}", Suite::names().join(", ")))
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Upper bound on node counts for the size-parameterized suites.
    pub max_n: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_n: 24, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport { suite: suite.name().into(), checks: vec![] };
    match suite {
        Suite::Factorization => factorization(&mut report, opts)?,
        Suite::Partition => partition(&mut report, opts)?,
        Suite::EdgeDetector => edge_detector(&mut report, opts)?,
        Suite::Depth => depth(&mut report, opts)?,
        Suite::AlphaTriangle => alpha_triangle(&mut report, opts)?,
        Suite::Normalization => normalization(&mut report),
        Suite::InputPrep => input_prep(&mut report, opts)?,
        Suite::Gamma => gamma(&mut report, opts)?,
        Suite::QubitCounts => qubit_counts(&mut report)?,
    }
    Ok(report)
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u64..1 << pairs.len()).map(move |bits| {
        Graph::from_edges(
            n,
            pairs.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &p)| p),
        )
        .expect("pairs are in range")
    })
}

fn factorization(r: &mut SuiteReport, opts: &VerifyOptions) -> Result<()> {
    for n in (2..=opts.max_n).step_by(2) {
        let p = one_factorization(n)?;
        let perfect = p.classes().iter().all(|c| c.is_perfect(n));
        let covers = p.check_against(&Graph::complete(n)).is_ok();
        r.push(
            format!("K{n}"),
            p.len() == n - 1 && perfect && covers,
            format!("{} factors, {} edges", p.len(), p.edge_count()),
        );
    }
    Ok(())
}

fn partition(r: &mut SuiteReport, opts: &VerifyOptions) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for n in 0..=opts.max_n.min(16) {
        let g = generate_synthetic(n, rng.gen_range(0.0..=1.0), rng.gen())?;
        let p = partition_edges(&g);
        let ok = p.check_against(&g).is_ok() && p.len() <= n.max(1);
        r.push(format!("G({n})"), ok, format!("{} classes for {} edges", p.len(), g.edge_count()));
    }
    Ok(())
}

fn detectors_agree(g: &Graph) -> Result<(bool, f64)> {
    let naive = build_edge_detector_naive(g)?;
    let layered = build_edge_detector(g)?;
    let mut ok = true;
    let mut worst = 0.0f64;
    for a in 0..g.node_count() {
        for b in a + 1..g.node_count() {
            let x = query_edge_detector(&naive, a, b)?;
            let y = query_edge_detector(&layered, a, b)?;
            ok &= x.flipped() == g.has_edge(a, b) && y.flipped() == g.has_edge(a, b);
            worst = worst.max(y.anc_residual);
        }
    }
    Ok((ok && worst <= 1e-12, worst))
}

fn edge_detector(r: &mut SuiteReport, opts: &VerifyOptions) -> Result<()> {
    let mut all4 = true;
    let mut worst = 0.0f64;
    for g in all_graphs(4) {
        let (ok, res) = detectors_agree(&g)?;
        all4 &= ok;
        worst = worst.max(res);
    }
    r.push("all 64 graphs on 4 nodes", all4, format!("max anc residual {worst:.1e}"));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut all6 = true;
    for _ in 0..50 {
        let g = generate_synthetic(6, 0.5, rng.gen())?;
        all6 &= detectors_agree(&g)?.0;
    }
    r.push("50 random graphs on 6 nodes", all6, "");
    Ok(())
}

fn depth(r: &mut SuiteReport, opts: &VerifyOptions) -> Result<()> {
    let max_n = opts.max_n.clamp(4, 20);
    let mut rows = vec![];
    for n in 2..=max_n {
        let g = Graph::complete(n);
        let naive = build_edge_detector_naive(&g)?.depth()?;
        let layered = build_edge_detector(&g)?.depth()?;
        r.push(
            format!("naive K{n} depth = m"),
            naive.layer_count == g.edge_count(),
            format!("{} layers", naive.layer_count),
        );
        if n % 2 == 0 {
            let bound = 2 * (n - 1) + n / 2 + 2;
            r.push(
                format!("layered K{n} depth <= {bound}"),
                layered.weighted_depth <= bound,
                format!("weighted depth {}", layered.weighted_depth),
            );
            rows.push(layered.weighted_depth as i64);
        }
        let alpha = build_alpha(&g)?;
        r.push(
            format!("alpha K{n} layers <= n"),
            alpha.layer_count() <= n,
            format!("{} layers", alpha.layer_count()),
        );
    }
    let flat = rows.windows(3).all(|w| w[2] - 2 * w[1] + w[0] == 0);
    r.push("layered depth linear in even n", flat, format!("{rows:?}"));
    Ok(())
}

/// `(|011>|s0> + |101>|s1> + |110>|s2> + |111>|s3>) / 2` with the three
/// node qubits first and a 2-qubit ancilla holding the `s_j`.
fn triangle_input(rng: &mut ChaCha8Rng) -> Result<Statevector> {
    let mut amps = vec![Complex64::new(0.0, 0.0); 32];
    for x in [0b011usize, 0b101, 0b110, 0b111] {
        let s: Vec<Complex64> =
            (0..4).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let norm = s.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for (j, a) in s.iter().enumerate() {
            amps[x | j << 3] = a / norm / 2.0;
        }
    }
    Statevector::from_amplitudes(amps)
}

fn alpha_triangle(r: &mut SuiteReport, opts: &VerifyOptions) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for g in all_graphs(3) {
        let alpha = build_alpha(&g)?.widen(5, vec![])?;
        let input = triangle_input(&mut rng)?;
        let mut out = input.clone();
        out.run(&alpha)?;
        let overlap = input.inner_product(&out)?;
        let expected = match g.edge_count() {
            0 => 1.0,
            3 => -1.0,
            _ => 0.0,
        };
        let edges: Vec<String> = g.edges().map(|e| e.to_string()).collect();
        r.push(
            format!("edges [{}]", edges.join(" ")),
            (overlap - Complex64::new(expected, 0.0)).norm() <= 1e-10,
            format!("overlap {:+.6}{:+.6}i", overlap.re, overlap.im),
        );
    }
    Ok(())
}

fn normalization(r: &mut SuiteReport) {
    for k in [3u64, 7, 11] {
        let sum: u128 = (0..=k).filter(|j| j % 4 == 2 || j % 4 == 3).map(|j| binomial(k, j)).sum();
        r.push(format!("k={k}"), sum == 1 << (k - 1), format!("sum {sum}"));
    }
}

/// Amplitude predicted for basis index `i` after the input preparator
/// acts on the query `query` of `layout`.
pub fn expected_input_prep_amplitude(layout: OracleLayout, query: usize, i: usize) -> f64 {
    let n = layout.n;
    let k = query.count_ones();
    let idx = i & ((1 << n) - 1);
    let inp = (i >> n) & ((1 << n) - 1);
    let rem = i >> (2 * n);
    if idx != query || inp & !query != 0 {
        return 0.0;
    }
    let ok = match inp.count_ones() % 4 {
        2 => rem == 0b01 || rem == 0b10,
        3 => rem == 0b00 || rem == 0b11,
        _ => false,
    };
    if ok {
        2f64.powf(-(k as f64) / 2.0)
    } else {
        0.0
    }
}

fn input_prep(r: &mut SuiteReport, opts: &VerifyOptions) -> Result<()> {
    for n in 3..=opts.max_n.clamp(3, 7) {
        let layout = OracleLayout::new(n);
        let ip = build_input_preparator(n)?;
        let mut worst = 0.0f64;
        let mut queries = 0;
        for query in (0usize..1 << n).filter(|q| q.count_ones() % 4 == 3) {
            let mut s = Statevector::basis(layout.qubit_count(), query)?;
            s.run(&ip)?;
            for (i, a) in s.amplitudes().iter().enumerate() {
                let want = expected_input_prep_amplitude(layout, query, i);
                worst = worst.max((a - Complex64::new(want, 0.0)).norm());
            }
            queries += 1;
        }
        r.push(format!("n={n}"), worst <= 1e-10, format!("{queries} queries, max error {worst:.1e}"));
    }
    Ok(())
}

fn gamma(r: &mut SuiteReport, opts: &VerifyOptions) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for n in 3..=opts.max_n.clamp(3, 6) {
        let k = rng.gen_range(2..=n);
        let g = generate_synthetic(n, 0.8, rng.gen())?;
        let ag = augment_apex(&g, k)?;
        let gamma = build_gamma(&ag)?;
        let qubits_ok = gamma.qubit_count() == 2 * ag.n_qubits() + 2;
        let mut worst = 0.0f64;
        let mut cliques = 0;
        for c in g.k_cliques(k)? {
            let nodes = ag.decode_query(ag.query_mask(&c)).expect("apex bits set");
            let mut query = nodes.clone();
            query.extend(ag.apex_nodes());
            let resp = gamma_response(&gamma, &query)?;
            worst = worst.max((resp.diagonal + 1.0).norm());
            cliques += 1;
        }
        r.push(
            format!("n={n} k={k}"),
            qubits_ok && worst <= 1e-10,
            format!("{cliques} cliques, max |diag + 1| {worst:.1e}"),
        );
    }
    let empty = build_gamma_for_graph(&Graph::new(3))?;
    let resp = gamma_response(&empty, &[0, 1, 2])?;
    r.push("empty H", (resp.diagonal + 1.0).norm() <= 1e-10, format!("diag {:.3}", resp.diagonal.re));
    Ok(())
}

fn qubit_counts(r: &mut SuiteReport) -> Result<()> {
    let table = [
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
    for (n, k, want) in table {
        let got = gamma_qubits(n, k)?;
        r.push(format!("n={n} k={k}"), got == want, format!("{got} qubits"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_small_size() {
        let opts = VerifyOptions { max_n: 8, seed: 3 };
        for suite in Suite::ALL {
            let report = run_suite(suite, &opts).unwrap();
            assert!(report.passed(), "{suite}: {:#?}", report.checks);
            assert!(!report.checks.is_empty());
        }
    }

    #[test]
    fn suite_names_parse() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        let err = "unknown".parse::<Suite>().unwrap_err().to_string();
        assert!(err.contains("alpha-triangle"));
    }
}
