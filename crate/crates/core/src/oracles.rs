//! Circuit builders for the edge detectors, Alpha, the input preparator,
//! Gamma and the exact marking baseline.
//!
//! Register layout for everything that works on subgraph queries
//! ([`OracleLayout`]): `idx` on qubits `0..N`, `inp` on `N..2N`, and `rem` on
//! `2N, 2N+1` with `rem_1` (qubit `2N+1`) the most significant bit.

use num_complex::Complex64;

use crate::circuit::{Circuit, CircuitBuilder, Control, Gate, Register};
use crate::error::{Error, Result};
use crate::factorization::partition_edges;
use crate::graph::{AugmentedGraph, Graph};
use crate::sim::Statevector;

/// One CCX per edge, each in its own layer since all of them target `out`.
pub fn build_edge_detector_naive(g: &Graph) -> Result<Circuit> {
    let n = g.node_count();
    let mut b = CircuitBuilder::with_registers(&[("idx", n), ("out", 1)]);
    let out = b.register("out").qubit(0);
    for e in g.edges() {
        b.push_layer(vec![Gate::ccx(e.lo(), e.hi(), out)]);
    }
    b.build()
}

/// Layered edge detector: one CCX layer per partition class writing into
/// `anc`, an OR of `anc` onto `out`, then the CCX layers undone.
pub fn build_edge_detector(g: &Graph) -> Result<Circuit> {
    let n = g.node_count();
    let mut b = CircuitBuilder::with_registers(&[("idx", n), ("anc", n / 2), ("out", 1)]);
    let anc = b.register("anc").clone();
    let out = b.register("out").qubit(0);

    let layers: Vec<Vec<Gate>> = partition_edges(g)
        .classes()
        .iter()
        .map(|class| {
            class
                .edges()
                .iter()
                .enumerate()
                .map(|(j, e)| Gate::ccx(e.lo(), e.hi(), anc.qubit(j)))
                .collect()
        })
        .collect();
    for layer in &layers {
        b.push_layer(layer.clone());
    }
    if anc.len > 0 {
        let controls = anc.qubits().map(Control::off).collect();
        b.push_layer(vec![Gate::mcx(controls, out)]);
        b.push_layer(vec![Gate::x(out)]);
    }
    for layer in layers.into_iter().rev() {
        b.push_layer(layer);
    }
    b.build()
}

/// Outcome of one edge query against a detector circuit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeAnswer {
    /// Probability of reading `out = 1`.
    pub out_probability: f64,
    /// Mass left on `anc != 0`; zero for detectors without `anc`.
    pub anc_residual: f64,
}

impl EdgeAnswer {
    pub fn flipped(&self) -> bool {
        self.out_probability > 0.5
    }
}

/// Runs a detector on the query `|idx = e_a + e_b>`.
pub fn query_edge_detector(c: &Circuit, a: usize, b: usize) -> Result<EdgeAnswer> {
    let idx = c.require_register("idx")?;
    if a == b || a >= idx.len || b >= idx.len {
        return Err(Error::invalid(format!("bad edge query {a}-{b} for {} nodes", idx.len)));
    }
    let out = c.require_register("out")?;
    let mut s = Statevector::basis(c.qubit_count(), 1 << idx.qubit(a) | 1 << idx.qubit(b))?;
    s.run(c)?;
    let anc_residual = match c.register("anc") {
        Some(anc) if anc.len > 0 => s.residual_mass(anc, 0)?,
        _ => 0.0,
    };
    Ok(EdgeAnswer { out_probability: s.residual_mass(out, 0)?, anc_residual })
}

/// CZ layers for the edges of `g` acting on `reg`, one layer per partition
/// class.
fn alpha_layers(g: &Graph, reg: &Register) -> Result<Vec<Vec<Gate>>> {
    if g.node_count() > reg.len {
        return Err(Error::invalid(format!(
            "{}-node graph does not fit register {} of {} qubits",
            g.node_count(),
            reg.name,
            reg.len
        )));
    }
    Ok(partition_edges(g)
        .classes()
        .iter()
        .map(|class| {
            class.edges().iter().map(|e| Gate::cz(reg.qubit(e.lo()), reg.qubit(e.hi()))).collect()
        })
        .collect())
}

/// Alpha on its own `n`-qubit register `inp`: one CZ per edge.
pub fn build_alpha(g: &Graph) -> Result<Circuit> {
    let mut b = CircuitBuilder::with_registers(&[("inp", g.node_count())]);
    let inp = b.register("inp").clone();
    for layer in alpha_layers(g, &inp)? {
        b.push_layer(layer);
    }
    b.build()
}

/// Qubit layout shared by the input preparator and Gamma.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLayout {
    pub n: usize,
}

impl OracleLayout {
    pub fn new(n: usize) -> Self {
        OracleLayout { n }
    }

    pub fn qubit_count(&self) -> usize {
        2 * self.n + 2
    }

    pub fn idx(&self) -> Register {
        Register::new("idx", 0, self.n)
    }

    pub fn inp(&self) -> Register {
        Register::new("inp", self.n, self.n)
    }

    pub fn rem(&self) -> Register {
        Register::new("rem", 2 * self.n, 2)
    }

    /// `inp` and `rem` viewed as one contiguous register.
    pub fn workspace(&self) -> Register {
        Register::new("work", self.n, self.n + 2)
    }

    pub fn registers(&self) -> Vec<Register> {
        vec![self.idx(), self.inp(), self.rem()]
    }

    fn builder(&self) -> CircuitBuilder {
        CircuitBuilder::with_registers(&[("idx", self.n), ("inp", self.n), ("rem", 2)])
    }
}

/// Prepares, for a `k`-node query on `idx` with `k = 3 (mod 4)`, the uniform
/// superposition over `k`-bit strings of Hamming weight 2 or 3 mod 4 on the
/// query's `inp` qubits, with `rem` carrying the weight-dependent tag.
///
/// 1. controlled-H from each `idx_j` onto `inp_j`;
/// 2. a mod-4 popcount of `inp` into `rem`;
/// 3. complement `inp_j` on the query wherever `rem_1 = 0`.
pub fn build_input_preparator(n: usize) -> Result<Circuit> {
    if n == 0 {
        return Err(Error::invalid("input preparator needs n >= 1"));
    }
    let layout = OracleLayout::new(n);
    let mut b = layout.builder();
    let (idx, inp, rem) = (layout.idx(), layout.inp(), layout.rem());
    let (rem0, rem1) = (rem.qubit(0), rem.qubit(1));
    for j in 0..n {
        b.push(Gate::ch(idx.qubit(j), inp.qubit(j)));
    }
    for j in 0..n {
        b.push(Gate::ccx(inp.qubit(j), rem0, rem1));
        b.push(Gate::cx(inp.qubit(j), rem0));
    }
    for j in 0..n {
        b.push(Gate::ccx_with(Control::on(idx.qubit(j)), Control::off(rem1), inp.qubit(j)));
    }
    b.build()
}

/// Alpha for `g` placed on the `inp` register of `layout`.
pub fn build_alpha_in(g: &Graph, layout: OracleLayout) -> Result<Circuit> {
    let mut b = layout.builder();
    for layer in alpha_layers(g, &layout.inp())? {
        b.push_layer(layer);
    }
    b.build()
}

/// Phase `-1` on `inp = 0, rem = 0`: a multi-controlled Z with inverted
/// controls, realized as `X(rem_1) MCZ X(rem_1)`.
pub fn build_workspace_reflection(layout: OracleLayout) -> Result<Circuit> {
    let mut b = layout.builder();
    let work = layout.workspace();
    let target = work.qubit(work.len - 1);
    let controls = work.qubits().filter(|&q| q != target).map(Control::off).collect();
    b.push(Gate::x(target));
    b.push(Gate::mcz(controls, target));
    b.push(Gate::x(target));
    b.build()
}

/// `IP; Alpha; IP^dagger; S_0(inp, rem); IP; Alpha; IP^dagger` on a
/// `2 * n_qubits + 2` qubit layout.
pub fn build_gamma(ag: &AugmentedGraph) -> Result<Circuit> {
    build_gamma_for_graph(&ag.graph)
}

/// Gamma over an arbitrary graph, without apex augmentation.
pub fn build_gamma_for_graph(g: &Graph) -> Result<Circuit> {
    let layout = OracleLayout::new(g.node_count());
    let ip = build_input_preparator(layout.n)?;
    let ip_dag = ip.adjoint();
    let alpha = build_alpha_in(g, layout)?;
    let s0 = build_workspace_reflection(layout)?;

    let mut b = layout.builder();
    for part in [&ip, &alpha, &ip_dag, &s0, &ip, &alpha, &ip_dag] {
        b.append(part, 0);
    }
    b.build()
}

/// Non-physical baseline: phase flip on exactly the `idx` strings made of a
/// `k`-clique of the original graph plus every apex node.
pub fn build_exact_marking_oracle(ag: &AugmentedGraph) -> Result<Circuit> {
    let n_qubits = ag.n_qubits();
    let original: Vec<usize> = (0..ag.original_n).collect();
    let cliques = ag.graph.induced(&original)?.k_cliques(ag.k)?;
    let marked: Vec<u64> = cliques.iter().map(|c| ag.query_mask(c)).collect();
    let mut b = CircuitBuilder::with_registers(&[("idx", n_qubits)]);
    b.push(Gate::mark(format!("{}-clique", ag.k), (0..n_qubits).collect(), marked));
    b.build()
}

fn query_bits(nodes: &[usize], n: usize) -> Result<usize> {
    let mut mask = 0usize;
    for &v in nodes {
        if v >= n || mask >> v & 1 == 1 {
            return Err(Error::invalid(format!("bad query node {v} for {n} nodes")));
        }
        mask |= 1 << v;
    }
    Ok(mask)
}

/// `<psi| Alpha |psi>` where `psi` is the input preparator's output for the
/// query `h`. Requires `|h| = 3 (mod 4)`.
pub fn alpha_overlap(g: &Graph, h: &[usize]) -> Result<f64> {
    if h.len() % 4 != 3 {
        return Err(Error::invalid(format!("query size {} is not 3 mod 4", h.len())));
    }
    let layout = OracleLayout::new(g.node_count());
    let mask = query_bits(h, layout.n)?;
    let mut prepared = Statevector::basis(layout.qubit_count(), mask)?;
    prepared.run(&build_input_preparator(layout.n)?)?;
    let mut flipped = prepared.clone();
    flipped.run(&build_alpha_in(g, layout)?)?;
    Ok(prepared.inner_product(&flipped)?.re)
}

/// Action of a Gamma circuit on one query with clean ancillas.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaResponse {
    /// `<idx, 0| Gamma |idx, 0>`.
    pub diagonal: Complex64,
    /// Mass left on `inp, rem != 0`.
    pub ancilla_residual: f64,
}

/// Runs `gamma` (built by [`build_gamma`]) on `|idx = nodes, 0>`.
pub fn gamma_response(gamma: &Circuit, nodes: &[usize]) -> Result<GammaResponse> {
    let idx = gamma.require_register("idx")?;
    let layout = OracleLayout::new(idx.len);
    if gamma.qubit_count() != layout.qubit_count() {
        return Err(Error::invalid("circuit does not have the Gamma layout"));
    }
    let mask = query_bits(nodes, layout.n)?;
    let mut s = Statevector::basis(gamma.qubit_count(), mask)?;
    s.run(gamma)?;
    Ok(GammaResponse {
        diagonal: s.amplitude(mask),
        ancilla_residual: s.residual_mass(&layout.workspace(), 0)?,
    })
}
