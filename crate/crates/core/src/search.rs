//! Search-space preparation (Dicke state plus apex ones), the `S_0`
//! reflection and the amplitude amplification driver.

use std::f64::consts::FRAC_PI_4;

use crate::circuit::{Circuit, CircuitBuilder, Control, Gate, Register};
use crate::error::{Error, Result};
use crate::graph::apex_count;
use crate::sim::{check_qubit_budget, MeasurementHistogram, Statevector, DEFAULT_MAX_QUBITS};

/// `C(n, k)` in exact integer arithmetic.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Dimensions of a Gamma search: `n` graph nodes, clique size `k`, `q` apex
/// nodes with `k + q = 3 (mod 4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchSpaceSpec {
    pub n: usize,
    pub k: usize,
    pub q: usize,
}

impl SearchSpaceSpec {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::invalid(format!("clique size {k} outside 1..={n}")));
        }
        Ok(SearchSpaceSpec { n, k, q: apex_count(k) })
    }

    pub fn n_qubits(&self) -> usize {
        self.n + self.q
    }

    /// Width of the full Gamma amplification circuit, `2 (n + q) + 2`.
    pub fn total_qubits(&self) -> usize {
        2 * self.n_qubits() + 2
    }

    /// `C(n, k)`.
    pub fn size(&self) -> u128 {
        binomial(self.n as u64, self.k as u64)
    }

    /// Largest iteration count accepted as a success,
    /// `ceil(2 * pi/4 * sqrt(C(n, k)))`.
    pub fn iteration_cap(&self) -> usize {
        iteration_cap(self.size())
    }
}

pub fn iteration_cap(search_size: u128) -> usize {
    (2.0 * FRAC_PI_4 * (search_size as f64).sqrt()).ceil() as usize
}

/// `floor(pi/4 * sqrt(N / M))`, at least 1.
pub fn optimal_iterations(search_size: u128, solutions: u128) -> Result<usize> {
    if solutions == 0 {
        return Err(Error::invalid("no solutions to amplify"));
    }
    if solutions > search_size {
        return Err(Error::invalid(format!(
            "{solutions} solutions in a search space of {search_size}"
        )));
    }
    let t = (FRAC_PI_4 * (search_size as f64 / solutions as f64).sqrt()).floor() as usize;
    Ok(t.max(1))
}

/// `sin^2((2t + 1) asin(sqrt(M / N)))`.
pub fn grover_success_probability(search_size: u128, solutions: u128, t: usize) -> f64 {
    let theta = (solutions as f64 / search_size as f64).sqrt().asin();
    ((2 * t + 1) as f64 * theta).sin().powi(2)
}

/// Split-and-cyclic-shift block `SCS_{m,l}` over 1-based qubit labels.
fn push_scs(b: &mut CircuitBuilder, idx: &Register, m: usize, l: usize) {
    let q = |label: usize| idx.qubit(label - 1);
    let angle = |i: usize| 2.0 * (i as f64 / m as f64).sqrt().acos();
    b.push(Gate::cx(q(m - 1), q(m)));
    b.push(Gate::ry(angle(1), vec![Control::on(q(m))], q(m - 1)));
    b.push(Gate::cx(q(m - 1), q(m)));
    for i in 2..=l {
        b.push(Gate::cx(q(m - i), q(m)));
        b.push(Gate::ry(angle(i), vec![Control::on(q(m)), Control::on(q(m - i + 1))], q(m - i)));
        b.push(Gate::cx(q(m - i), q(m)));
    }
}

fn push_dicke(b: &mut CircuitBuilder, idx: &Register, n: usize, k: usize) {
    for label in n - k + 1..=n {
        b.push(Gate::x(idx.qubit(label - 1)));
    }
    for m in (k + 1..=n).rev() {
        push_scs(b, idx, m, k);
    }
    for m in (2..=k).rev() {
        push_scs(b, idx, m, m - 1);
    }
}

/// Maps `|0^n>` to the uniform superposition of all weight-`k` strings.
pub fn build_dicke_prep(n: usize, k: usize) -> Result<Circuit> {
    if k == 0 || k > n {
        return Err(Error::invalid(format!("Dicke weight {k} outside 1..={n}")));
    }
    let mut b = CircuitBuilder::with_registers(&[("idx", n)]);
    let idx = b.register("idx").clone();
    push_dicke(&mut b, &idx, n, k);
    b.build()
}

/// Dicke state on the first `n` qubits of `idx`, `|1>` on the `q` apex qubits.
pub fn build_search_prep(spec: &SearchSpaceSpec) -> Result<Circuit> {
    if spec.k == 0 || spec.k > spec.n {
        return Err(Error::invalid(format!("clique size {} outside 1..={}", spec.k, spec.n)));
    }
    let mut b = CircuitBuilder::with_registers(&[("idx", spec.n_qubits())]);
    let idx = b.register("idx").clone();
    push_dicke(&mut b, &idx, spec.n, spec.k);
    for apex in spec.n..spec.n_qubits() {
        b.push(Gate::x(idx.qubit(apex)));
    }
    b.build()
}

/// Phase `-1` on the all-zero state of `reg`, as `X MCZ X` on its last qubit.
pub fn build_s0(qubit_count: usize, reg: &Register) -> Result<Circuit> {
    if reg.len < 2 {
        return Err(Error::invalid("S_0 needs a register of at least two qubits"));
    }
    let mut b = CircuitBuilder::new(qubit_count);
    let target = reg.qubit(reg.len - 1);
    b.push(Gate::x(target));
    b.push(Gate::mcz(reg.qubits().filter(|&q| q != target).map(Control::off).collect(), target));
    b.push(Gate::x(target));
    let c = b.build()?;
    Circuit::from_layers(qubit_count, vec![reg.clone()], c.layers().to_vec())
}

/// Incremental amplitude amplification on `idx`.
///
/// Starts from `prep |0>` and applies one `[oracle; prep^dagger; S_0; prep]`
/// round per [`step`](Self::step).
#[derive(Clone, Debug)]
pub struct Amplifier {
    round: Circuit,
    idx: Register,
    state: Statevector,
    iterations: usize,
}

impl Amplifier {
    pub fn new(prep: &Circuit, oracle: &Circuit) -> Result<Self> {
        Self::with_limit(prep, oracle, DEFAULT_MAX_QUBITS)
    }

    /// `prep` may be narrower than `oracle`; both need an identical `idx`.
    pub fn with_limit(prep: &Circuit, oracle: &Circuit, max_qubits: usize) -> Result<Self> {
        let width = oracle.qubit_count();
        check_qubit_budget(width, max_qubits)?;
        let idx = oracle.require_register("idx")?.clone();
        if prep.require_register("idx")? != &idx {
            return Err(Error::invalid("prep and oracle disagree on the idx register"));
        }
        let prep = if prep.qubit_count() == width {
            prep.clone()
        } else {
            let extra = oracle
                .registers()
                .iter()
                .filter(|r| prep.register(&r.name).is_none())
                .cloned()
                .collect();
            prep.widen(width, extra)?
        };
        let s0 = build_s0(width, &idx)?;
        let round = oracle.compose(&prep.adjoint())?.compose(&s0)?.compose(&prep)?;
        let mut state = Statevector::zero_with_limit(width, max_qubits)?;
        state.run(&prep)?;
        Ok(Amplifier { round, idx, state, iterations: 0 })
    }

    pub fn step(&mut self) -> Result<()> {
        self.state.run(&self.round)?;
        self.iterations += 1;
        Ok(())
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn state(&self) -> &Statevector {
        &self.state
    }

    pub fn idx(&self) -> &Register {
        &self.idx
    }

    pub fn idx_probabilities(&self) -> Result<Vec<f64>> {
        self.state.register_probabilities(&self.idx)
    }

    pub fn sample(&self, shots: usize, seed: u64) -> Result<MeasurementHistogram> {
        self.state.sample_register(&self.idx, shots, seed)
    }
}

/// `t` amplification rounds followed by `shots` samples of `idx`.
pub fn run_aa(
    prep: &Circuit,
    oracle: &Circuit,
    t: usize,
    shots: usize,
    seed: u64,
) -> Result<MeasurementHistogram> {
    let mut amp = Amplifier::new(prep, oracle)?;
    for _ in 0..t {
        amp.step()?;
    }
    amp.sample(shots, seed)
}
