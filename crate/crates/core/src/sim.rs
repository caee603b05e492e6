//! Dense statevector simulation.
//!
//! Every gate kernel enumerates only the amplitude pairs (or single
//! amplitudes, for phase gates) whose control bits match, so a gate with `c`
//! controls on `Q` qubits touches `2^(Q-c)` amplitudes once.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind, Register};
use crate::error::{Error, Result};

/// Default qubit budget: `2^26` double-precision amplitudes, 1 GiB.
pub const DEFAULT_MAX_QUBITS: usize = 26;

const AMPLITUDE_BYTES: u128 = std::mem::size_of::<Complex64>() as u128;

/// Bytes needed to hold a `qubits`-wide statevector.
pub fn required_bytes(qubits: usize) -> u128 {
    AMPLITUDE_BYTES << qubits.min(120)
}

/// Rejects widths above `limit` before anything is allocated.
pub fn check_qubit_budget(qubits: usize, limit: usize) -> Result<()> {
    if qubits > limit {
        return Err(Error::Resource { qubits, limit, bytes: required_bytes(qubits) });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    qubit_count: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|0...0>` on `qubits` qubits, subject to [`DEFAULT_MAX_QUBITS`].
    pub fn zero(qubits: usize) -> Result<Self> {
        Self::zero_with_limit(qubits, DEFAULT_MAX_QUBITS)
    }

    pub fn zero_with_limit(qubits: usize, limit: usize) -> Result<Self> {
        Self::basis_with_limit(qubits, 0, limit)
    }

    pub fn basis(qubits: usize, index: usize) -> Result<Self> {
        Self::basis_with_limit(qubits, index, DEFAULT_MAX_QUBITS)
    }

    pub fn basis_with_limit(qubits: usize, index: usize, limit: usize) -> Result<Self> {
        if qubits == 0 {
            return Err(Error::invalid("a statevector needs at least one qubit"));
        }
        check_qubit_budget(qubits, limit)?;
        if index >> qubits != 0 {
            return Err(Error::invalid(format!("basis index {index} exceeds {qubits} qubits")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Statevector { qubit_count: qubits, amps })
    }

    /// Wraps raw amplitudes; the length must be a power of two. No
    /// normalization is applied.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() < 2 || !amps.len().is_power_of_two() {
            return Err(Error::invalid(format!(
                "amplitude count {} is not a power of two >= 2",
                amps.len()
            )));
        }
        Ok(Statevector { qubit_count: amps.len().trailing_zeros() as usize, amps })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner_product(&self, other: &Statevector) -> Result<Complex64> {
        if self.qubit_count != other.qubit_count {
            return Err(Error::invalid(format!(
                "inner product of {}-qubit and {}-qubit states",
                self.qubit_count, other.qubit_count
            )));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        if let Some(q) = gate.qubits().find(|&q| q >= self.qubit_count) {
            return Err(Error::invalid(format!(
                "{} touches qubit {q} of a {}-qubit state",
                gate.kind(),
                self.qubit_count
            )));
        }
        let (mut cmask, mut cval) = (0usize, 0usize);
        for c in gate.controls() {
            cmask |= 1 << c.qubit;
            if c.fires_on() {
                cval |= 1 << c.qubit;
            }
        }
        match gate.kind() {
            GateKind::X | GateKind::CX | GateKind::CCX | GateKind::MCX => {
                self.for_each_pair(cmask, cval, gate.target(), std::mem::swap);
            }
            GateKind::H | GateKind::CH => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                self.for_each_pair(cmask, cval, gate.target(), |a, b| {
                    let (x, y) = (*a, *b);
                    *a = (x + y) * s;
                    *b = (x - y) * s;
                });
            }
            GateKind::RY => {
                let (sin, cos) = (gate.angle() / 2.0).sin_cos();
                self.for_each_pair(cmask, cval, gate.target(), |a, b| {
                    let (x, y) = (*a, *b);
                    *a = x * cos - y * sin;
                    *b = x * sin + y * cos;
                });
            }
            GateKind::CZ | GateKind::MCZ => {
                let t = 1 << gate.target();
                self.for_each_match(cmask | t, cval | t, |a| *a = -*a);
            }
            GateKind::MARK => self.apply_mark(gate),
        }
        Ok(())
    }

    /// Calls `f(a0, a1)` for every pair differing in `target` whose control
    /// bits equal `cval`.
    fn for_each_pair(
        &mut self,
        cmask: usize,
        cval: usize,
        target: usize,
        mut f: impl FnMut(&mut Complex64, &mut Complex64),
    ) {
        let tbit = 1usize << target;
        let full = self.amps.len() - 1;
        let free = full & !(cmask | tbit);
        let mut sub = 0usize;
        loop {
            let i0 = sub | cval;
            let (lo, hi) = self.amps.split_at_mut(i0 | tbit);
            f(&mut lo[i0], &mut hi[0]);
            if sub == free {
                break;
            }
            sub = sub.wrapping_sub(free) & free;
        }
    }

    fn for_each_match(&mut self, mask: usize, val: usize, mut f: impl FnMut(&mut Complex64)) {
        let full = self.amps.len() - 1;
        let free = full & !mask;
        let mut sub = 0usize;
        loop {
            f(&mut self.amps[sub | val]);
            if sub == free {
                break;
            }
            sub = sub.wrapping_sub(free) & free;
        }
    }

    fn apply_mark(&mut self, gate: &Gate) {
        let Some(mark) = gate.phase_mark() else { return };
        let targets = gate.targets();
        let contiguous = targets.windows(2).all(|w| w[1] == w[0] + 1);
        let gather = |i: usize| -> u64 {
            if contiguous {
                ((i >> targets[0]) as u64) & ((1u64 << targets.len()) - 1)
            } else {
                targets
                    .iter()
                    .enumerate()
                    .fold(0, |v, (j, &q)| v | (((i >> q) & 1) as u64) << j)
            }
        };
        for (i, a) in self.amps.iter_mut().enumerate() {
            if mark.values.binary_search(&gather(i)).is_ok() {
                *a = -*a;
            }
        }
    }

    /// Applies every layer of `c` in order. Widths must match exactly.
    pub fn run(&mut self, c: &Circuit) -> Result<()> {
        if c.qubit_count() != self.qubit_count {
            return Err(Error::invalid(format!(
                "running a {}-qubit circuit on a {}-qubit state",
                c.qubit_count(),
                self.qubit_count
            )));
        }
        for gate in c.gates() {
            self.apply_gate(gate)?;
        }
        Ok(())
    }

    fn check_register(&self, reg: &Register) -> Result<()> {
        if reg.end() > self.qubit_count || reg.len == 0 || reg.len >= 63 {
            return Err(Error::invalid(format!(
                "register {} [{}, {}) does not fit a {}-qubit state",
                reg.name,
                reg.start,
                reg.end(),
                self.qubit_count
            )));
        }
        Ok(())
    }

    /// Exact marginal distribution of `reg`, indexed by register value.
    pub fn register_probabilities(&self, reg: &Register) -> Result<Vec<f64>> {
        self.check_register(reg)?;
        let mask = (1usize << reg.len) - 1;
        let mut probs = vec![0.0; 1 << reg.len];
        for (i, a) in self.amps.iter().enumerate() {
            probs[(i >> reg.start) & mask] += a.norm_sqr();
        }
        Ok(probs)
    }

    /// Draws `shots` i.i.d. outcomes of `reg` from its exact marginal.
    pub fn sample_register(
        &self,
        reg: &Register,
        shots: usize,
        seed: u64,
    ) -> Result<MeasurementHistogram> {
        let probs = self.register_probabilities(reg)?;
        let dist = WeightedIndex::new(&probs)
            .map_err(|e| Error::invalid(format!("cannot sample register {}: {e}", reg.name)))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = BTreeMap::new();
        for _ in 0..shots {
            *counts.entry(dist.sample(&mut rng) as u64).or_insert(0) += 1;
        }
        Ok(MeasurementHistogram { register: reg.name.clone(), width: reg.len, shots, counts })
    }

    /// Probability mass on basis states where `reg` differs from `value`.
    pub fn residual_mass(&self, reg: &Register, value: u64) -> Result<f64> {
        self.check_register(reg)?;
        let mask = (1usize << reg.len) - 1;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| ((i >> reg.start) & mask) as u64 != value)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }
}

/// `|0...0>` of width `qubits`.
pub fn zero_state(qubits: usize) -> Result<Statevector> {
    Statevector::zero(qubits)
}

/// Runs `c` on a copy of `s`.
pub fn run(c: &Circuit, s: &Statevector) -> Result<Statevector> {
    let mut out = s.clone();
    out.run(c)?;
    Ok(out)
}

/// Outcome counts of one register. Keys are register values with bit `j`
/// holding register qubit `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementHistogram {
    pub register: String,
    pub width: usize,
    pub shots: usize,
    pub counts: BTreeMap<u64, usize>,
}

impl MeasurementHistogram {
    pub fn count(&self, value: u64) -> usize {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    pub fn frequency(&self, value: u64) -> f64 {
        if self.shots == 0 {
            0.0
        } else {
            self.count(value) as f64 / self.shots as f64
        }
    }

    /// The `n` most frequent distinct outcomes; ties go to the smaller value.
    pub fn top(&self, n: usize) -> Vec<(u64, usize)> {
        let mut all: Vec<(u64, usize)> = self.counts.iter().map(|(&v, &c)| (v, c)).collect();
        all.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        all.truncate(n);
        all
    }

    /// Register value as a bitstring, highest qubit first.
    pub fn bitstring(&self, value: u64) -> String {
        (0..self.width).rev().map(|j| if value >> j & 1 == 1 { '1' } else { '0' }).collect()
    }
}
