//! Acceptance criteria, one printed line each.
//!
//! Runs as a plain binary (`harness = false`) so the summary is always
//! visible: `cargo test -p factorq-core --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use factorq::edgelist::generate_synthetic;
use factorq::harness::{gamma_qubits, instances_for_cliqueful, run_benchmark};
use factorq::oracles::{
    alpha_overlap, build_alpha, build_edge_detector, build_edge_detector_naive, build_exact_marking_oracle,
    build_gamma, build_input_preparator, gamma_response, query_edge_detector, OracleLayout,
};
use factorq::search::{build_search_prep, optimal_iterations, run_aa};
use factorq::{augment_apex, one_factorization, ExperimentConfig, Graph, GraphSource, SearchSpaceSpec, Statevector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u64..1 << pairs.len())
        .map(|bits| {
            let chosen = pairs.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &p)| p);
            Graph::from_edges(n, chosen).unwrap()
        })
        .collect()
}

fn c01_factorization() -> Outcome {
    for n in (2..=24).step_by(2) {
        let p = one_factorization(n).map_err(|e| e.to_string())?;
        ensure(p.len() == n - 1, || format!("K{n}: {} factors", p.len()))?;
        let mut seen = vec![vec![false; n]; n];
        for class in p.classes() {
            let mut touched = vec![false; n];
            for e in class.edges() {
                for v in [e.lo(), e.hi()] {
                    ensure(!touched[v], || format!("K{n}: node {v} repeated in a factor"))?;
                    touched[v] = true;
                }
                ensure(!seen[e.lo()][e.hi()], || format!("K{n}: edge {e} in two factors"))?;
                seen[e.lo()][e.hi()] = true;
            }
            ensure(touched.iter().all(|&t| t), || format!("K{n}: factor is not perfect"))?;
        }
        let covered = seen.iter().flatten().filter(|&&s| s).count();
        ensure(covered == n * (n - 1) / 2, || format!("K{n}: {covered} edges covered"))?;
    }
    Ok("n = 2..24 even".into())
}

fn detectors_match(g: &Graph) -> Result<f64, String> {
    let naive = build_edge_detector_naive(g).map_err(|e| e.to_string())?;
    let layered = build_edge_detector(g).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for a in 0..g.node_count() {
        for b in a + 1..g.node_count() {
            let x = query_edge_detector(&naive, a, b).map_err(|e| e.to_string())?;
            let y = query_edge_detector(&layered, a, b).map_err(|e| e.to_string())?;
            let want = g.has_edge(a, b);
            ensure(x.flipped() == want && y.flipped() == want, || {
                format!("query ({a},{b}) wrong on {:?}", g.edges().collect::<Vec<_>>())
            })?;
            worst = worst.max(y.anc_residual).max(x.anc_residual);
        }
    }
    Ok(worst)
}

fn c02_edge_detectors() -> Outcome {
    let mut worst = 0.0f64;
    for g in all_graphs(4) {
        worst = worst.max(detectors_match(&g)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let g = generate_synthetic(6, 0.5, rng.gen()).unwrap();
        worst = worst.max(detectors_match(&g)?);
    }
    ensure(worst <= 1e-12, || format!("anc residual {worst:e}"))?;
    Ok(format!("64 + 50 graphs, max anc residual {worst:.1e}"))
}

fn second_differences_vanish(values: &[i64]) -> bool {
    values.windows(3).all(|w| w[2] - 2 * w[1] + w[0] == 0)
}

fn c03_depth() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 2..=12 {
        let g = generate_synthetic(n, rng.gen_range(0.0..1.0), rng.gen()).unwrap();
        let d = build_edge_detector_naive(&g).unwrap().depth().unwrap();
        ensure(d.layer_count == g.edge_count(), || format!("naive depth {} vs m {}", d.layer_count, g.edge_count()))?;
    }
    let (mut even, mut odd) = (vec![], vec![]);
    for n in 4..=20 {
        let g = Graph::complete(n);
        let naive = build_edge_detector_naive(&g).unwrap().depth().unwrap();
        ensure(naive.layer_count == g.edge_count(), || format!("naive K{n} depth {}", naive.layer_count))?;
        let w = build_edge_detector(&g).unwrap().depth().unwrap().weighted_depth as i64;
        if n % 2 == 0 { even.push(w) } else { odd.push(w) }
    }
    ensure(second_differences_vanish(&even), || format!("even n depths {even:?}"))?;
    ensure(second_differences_vanish(&odd), || format!("odd n depths {odd:?}"))?;
    // Both parities grow by 5 per step of 2, i.e. slope 2.5 in n.
    ensure(even[1] - even[0] == 5 && odd[1] - odd[0] == 5, || format!("slopes {even:?} {odd:?}"))?;
    Ok(format!("naive = m; layered K4..K20 even {even:?}, odd {odd:?}"))
}

fn c04_alpha_triangle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for g in all_graphs(3) {
        let want = match g.edge_count() {
            0 => 1.0,
            3 => -1.0,
            _ => 0.0,
        };
        // (|011>|s0> + |101>|s1> + |110>|s2> + |111>|s3>) / 2, ancillas on qubits 3 and 4
        let mut amps = vec![Complex64::new(0.0, 0.0); 32];
        for x in [0b011usize, 0b101, 0b110, 0b111] {
            let s: Vec<Complex64> =
                (0..4).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let norm: f64 = s.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            for (j, a) in s.iter().enumerate() {
                amps[x | j << 3] = a / (2.0 * norm);
            }
        }
        let input = Statevector::from_amplitudes(amps).unwrap();
        let alpha = build_alpha(&g).unwrap().widen(5, vec![]).unwrap();
        let mut out = input.clone();
        out.run(&alpha).unwrap();
        let overlap = input.inner_product(&out).unwrap();
        worst = worst.max((overlap - want).norm());

        let via_prep = alpha_overlap(&g, &[0, 1, 2]).unwrap();
        worst = worst.max((via_prep - want).abs());
    }
    ensure(worst <= 1e-10, || format!("max deviation {worst:e}"))?;
    Ok(format!("8 graphs, max deviation {worst:.1e}"))
}

fn c05_identity() -> Outcome {
    fn choose(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    for k in [3u64, 7, 11] {
        let sum: u64 = (0..=k).filter(|j| matches!(j % 4, 2 | 3)).map(|j| choose(k, j)).sum();
        ensure(sum == 1 << (k - 1), || format!("k={k}: {sum}"))?;
    }
    Ok("k = 3, 7, 11".into())
}

fn c06_input_preparator() -> Outcome {
    let mut worst = 0.0f64;
    let mut queries = 0;
    for n in 3..=7 {
        let layout = OracleLayout::new(n);
        let ip = build_input_preparator(n).unwrap();
        let mask = (1usize << n) - 1;
        for query in (0usize..1 << n).filter(|q| q.count_ones() % 4 == 3) {
            let k = query.count_ones() as i32;
            let mut s = Statevector::basis(layout.qubit_count(), query).unwrap();
            s.run(&ip).unwrap();
            for (i, a) in s.amplitudes().iter().enumerate() {
                let (idx, inp, rem) = (i & mask, i >> n & mask, i >> (2 * n));
                let tagged = match inp.count_ones() % 4 {
                    2 => rem == 1 || rem == 2,
                    3 => rem == 0 || rem == 3,
                    _ => false,
                };
                let want = if idx == query && inp & !query == 0 && tagged { 2f64.powi(-k).sqrt() } else { 0.0 };
                worst = worst.max((a - want).norm());
            }
            queries += 1;
        }
    }
    ensure(worst <= 1e-10, || format!("max deviation {worst:e}"))?;
    Ok(format!("{queries} queries for n = 3..7, max deviation {worst:.1e}"))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect()
}

fn c07_gamma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut marked, mut unmarked, mut worst) = (0, 0, 0.0f64);
    let mut closest_unmarked = f64::INFINITY;
    for n in 3..=6 {
        for k in 2..=n {
            let g = generate_synthetic(n, 0.75, rng.gen()).unwrap();
            let ag = augment_apex(&g, k).unwrap();
            let gamma = build_gamma(&ag).unwrap();
            let q = ag.apex_count;
            ensure(gamma.qubit_count() == 2 * (n + q) + 2, || format!("n={n} k={k}: {} qubits", gamma.qubit_count()))?;
            for h in subsets(n, k) {
                let mut query = h.clone();
                query.extend(n..n + q);
                let resp = gamma_response(&gamma, &query).unwrap();
                if g.is_clique(&h) {
                    worst = worst.max((resp.diagonal + 1.0).norm()).max(resp.ancilla_residual);
                    marked += 1;
                } else {
                    closest_unmarked = closest_unmarked.min((resp.diagonal + 1.0).norm());
                    unmarked += 1;
                }
            }
        }
    }
    ensure(worst <= 1e-10, || format!("clique queries deviate by {worst:e}"))?;
    ensure(closest_unmarked > 1e-6, || format!("a non-clique query is marked ({closest_unmarked:e})"))?;
    Ok(format!("{marked} clique queries within {worst:.1e}; {unmarked} non-clique queries unmarked"))
}

fn c08_qubit_counts() -> Outcome {
    let table = [(6, 3, 22), (6, 4, 20), (7, 3, 24), (7, 4, 22), (7, 5, 20), (8, 3, 26), (8, 4, 24), (8, 5, 22), (8, 6, 20)];
    for (n, k, want) in table {
        let got = gamma_qubits(n, k).unwrap();
        ensure(got == want, || format!("n={n} k={k}: {got} != {want}"))?;
    }
    Ok("9 table entries".into())
}

fn c09_grover_baseline() -> Outcome {
    let shots = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut cells = 0;
    let mut worst_z = 0.0f64;
    for n in 4..=7 {
        for k in 2..n {
            for density in [0.4, 0.7] {
                let g = generate_synthetic(n, density, rng.gen()).unwrap();
                let cliques = g.count_k_cliques(k).unwrap();
                if cliques == 0 {
                    continue;
                }
                let spec = SearchSpaceSpec::new(n, k).unwrap();
                let ag = augment_apex(&g, k).unwrap();
                let big_n = spec.size() as f64;
                let t = optimal_iterations(spec.size(), cliques as u128).unwrap();
                let p = ((2 * t + 1) as f64 * (cliques as f64 / big_n).sqrt().asin()).sin().powi(2);

                let prep = build_search_prep(&spec).unwrap();
                let oracle = build_exact_marking_oracle(&ag).unwrap();
                let hist = run_aa(&prep, &oracle, t, shots, rng.gen()).unwrap();
                let hits: usize = hist
                    .counts
                    .iter()
                    .filter(|(&v, _)| ag.decode_query(v).is_some_and(|h| h.len() == k && g.is_clique(&h)))
                    .map(|(_, &c)| c)
                    .sum();
                let freq = hits as f64 / shots as f64;
                // 3 sigma plus a half-count continuity correction
                let sigma = (p * (1.0 - p) / shots as f64).sqrt();
                let gap = ((freq - p).abs() - 0.5 / shots as f64).max(0.0);
                let z = if sigma > 0.0 { gap / sigma } else if gap > 0.0 { f64::INFINITY } else { 0.0 };
                ensure(z <= 3.0, || format!("n={n} k={k} M={cliques} t={t}: freq {freq} vs {p:.6}"))?;
                worst_z = worst_z.max(z);
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} instances at 10^4 shots, worst deviation {worst_z:.2} sigma"))
}

fn c10_desk_replication() -> Outcome {
    let mut lines = vec![];
    let mut failed = vec![];
    for k in [3, 4] {
        for density in [0.5, 0.9] {
            let source = GraphSource::Synthetic { nodes: 100, density, seed: 10 };
            let mut cfg = ExperimentConfig::new(source, 6, k);
            cfg.seed = 10;
            cfg.instances = instances_for_cliqueful(&cfg, 30, 10_000)
                .unwrap()
                .ok_or_else(|| format!("k={k} density {density}: too few clique-containing draws"))?;
            let report = run_benchmark(&cfg).map_err(|e| e.to_string())?;
            let row = &report.rows[0];
            let cap = SearchSpaceSpec::new(6, k).unwrap().iteration_cap();
            ensure(report.records.iter().all(|r| r.gamma_iterations.is_none_or(|t| t <= cap)), || {
                "iteration beyond cap".into()
            })?;
            let rate = row.success_rate.unwrap_or(0.0);
            let gm = row.geometric_mean_ratio.map_or("n/a".into(), |g| format!("{g:.3}"));
            lines.push(format!(
                "k={k} d={density}: {}/{} ({:.0}%), {} qubits, geo-mean ratio {gm}",
                row.successes,
                row.cliqueful,
                100.0 * rate,
                row.qubits
            ));
            if row.cliqueful < 30 || rate < 0.8 {
                failed.push(format!("k={k} d={density}"));
            }
        }
    }
    let summary = lines.join("; ");
    if failed.is_empty() {
        Ok(summary)
    } else {
        Err(format!("cells below threshold: {} [{summary}]", failed.join(", ")))
    }
}

fn c11_excluded() -> Outcome {
    let widest = (3..=6).map(|k| gamma_qubits(8, k).unwrap()).max().unwrap();
    Ok(format!(
        "excluded: n = 8 rows need up to {widest} qubits; asymptotic claims covered only by criterion 3"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("factorization", c01_factorization),
        ("edge detector equivalence", c02_edge_detectors),
        ("depth", c03_depth),
        ("alpha triangle table", c04_alpha_triangle),
        ("weight identity", c05_identity),
        ("input preparator", c06_input_preparator),
        ("gamma marking", c07_gamma),
        ("qubit counts", c08_qubit_counts),
        ("grover baseline", c09_grover_baseline),
        ("desk-scale replication", c10_desk_replication),
        ("large-n and asymptotic rows", c11_excluded),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failures += 1;
                println!("criterion {id:>2} FAIL {name} ({secs:.1}s): {detail}");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
