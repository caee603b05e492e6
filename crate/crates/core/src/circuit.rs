//! Gate-level circuit IR: named registers, explicit layers, adjoint,
//! composition and a depth cost model.
//!
//! Qubit 0 is the least significant bit of a basis-state index everywhere in
//! this crate.
//!
//! Depth cost model: every gate costs 1 except multi-controlled X/Z, which
//! cost `max(1, controls)` to stand in for a linear V-chain decomposition.
//! A layer costs the maximum over its gates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    /// Fires on `|1>`.
    Positive,
    /// Fires on `|0>`.
    Inverted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn on(qubit: usize) -> Self {
        Control { qubit, polarity: Polarity::Positive }
    }

    pub fn off(qubit: usize) -> Self {
        Control { qubit, polarity: Polarity::Inverted }
    }

    pub fn fires_on(&self) -> bool {
        self.polarity == Polarity::Positive
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    X,
    H,
    CH,
    CX,
    CZ,
    CCX,
    MCX,
    MCZ,
    /// Y rotation with any number of controls; used by Dicke preparation.
    RY,
    /// Non-physical phase flip on a listed set of register values.
    MARK,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::H => "H",
            GateKind::CH => "CH",
            GateKind::CX => "CX",
            GateKind::CZ => "CZ",
            GateKind::CCX => "CCX",
            GateKind::MCX => "MCX",
            GateKind::MCZ => "MCZ",
            GateKind::RY => "RY",
            GateKind::MARK => "MARK",
        }
    }

    fn arity_ok(self, targets: usize, controls: usize) -> bool {
        match self {
            GateKind::X | GateKind::H => targets == 1 && controls == 0,
            GateKind::CH | GateKind::CX | GateKind::CZ => targets == 1 && controls == 1,
            GateKind::CCX => targets == 1 && controls == 2,
            GateKind::MCX | GateKind::MCZ => targets == 1 && controls >= 1,
            GateKind::RY => targets == 1,
            GateKind::MARK => targets >= 1 && controls == 0,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "X" => GateKind::X,
            "H" => GateKind::H,
            "CH" => GateKind::CH,
            "CX" => GateKind::CX,
            "CZ" => GateKind::CZ,
            "CCX" => GateKind::CCX,
            "MCX" => GateKind::MCX,
            "MCZ" => GateKind::MCZ,
            "RY" => GateKind::RY,
            "MARK" => GateKind::MARK,
            other => return Err(Error::invalid(format!("unknown gate kind {other:?}"))),
        })
    }
}

/// Predicate for a `MARK` gate: the register values (bit `j` = `j`-th target)
/// whose phase is flipped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseMark {
    pub label: String,
    pub values: Arc<[u64]>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    kind: GateKind,
    targets: Vec<usize>,
    controls: Vec<Control>,
    angle: f64,
    mark: Option<PhaseMark>,
}

impl Gate {
    fn simple(kind: GateKind, controls: Vec<Control>, target: usize) -> Self {
        Gate { kind, targets: vec![target], controls, angle: 0.0, mark: None }
    }

    pub fn x(target: usize) -> Self {
        Self::simple(GateKind::X, vec![], target)
    }

    pub fn h(target: usize) -> Self {
        Self::simple(GateKind::H, vec![], target)
    }

    pub fn ch(control: usize, target: usize) -> Self {
        Self::simple(GateKind::CH, vec![Control::on(control)], target)
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Self::simple(GateKind::CX, vec![Control::on(control)], target)
    }

    pub fn cz(a: usize, b: usize) -> Self {
        Self::simple(GateKind::CZ, vec![Control::on(a)], b)
    }

    pub fn ccx(c0: usize, c1: usize, target: usize) -> Self {
        Self::ccx_with(Control::on(c0), Control::on(c1), target)
    }

    pub fn ccx_with(c0: Control, c1: Control, target: usize) -> Self {
        Self::simple(GateKind::CCX, vec![c0, c1], target)
    }

    pub fn mcx(controls: Vec<Control>, target: usize) -> Self {
        Self::simple(GateKind::MCX, controls, target)
    }

    /// Phase `-1` when all controls fire and `target` is `|1>`.
    pub fn mcz(controls: Vec<Control>, target: usize) -> Self {
        Self::simple(GateKind::MCZ, controls, target)
    }

    /// `RY(angle) = [[cos a/2, -sin a/2], [sin a/2, cos a/2]]`, optionally controlled.
    pub fn ry(angle: f64, controls: Vec<Control>, target: usize) -> Self {
        Gate { angle, ..Self::simple(GateKind::RY, controls, target) }
    }

    /// Flips the phase of every basis state whose value on `targets`
    /// (little-endian over the list) is one of `values`.
    pub fn mark(label: impl Into<String>, targets: Vec<usize>, values: impl IntoIterator<Item = u64>) -> Self {
        let values: BTreeSet<u64> = values.into_iter().collect();
        Gate {
            kind: GateKind::MARK,
            targets,
            controls: vec![],
            angle: 0.0,
            mark: Some(PhaseMark { label: label.into(), values: values.into_iter().collect() }),
        }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn target(&self) -> usize {
        self.targets[0]
    }

    pub fn controls(&self) -> &[Control] {
        &self.controls
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn phase_mark(&self) -> Option<&PhaseMark> {
        self.mark.as_ref()
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls.iter().map(|c| c.qubit).chain(self.targets.iter().copied())
    }

    pub fn is_physical(&self) -> bool {
        self.kind != GateKind::MARK
    }

    /// Depth charged to this gate by the cost model.
    pub fn cost(&self) -> usize {
        match self.kind {
            GateKind::MCX | GateKind::MCZ => self.controls.len().max(1),
            _ => 1,
        }
    }

    pub fn adjoint(&self) -> Gate {
        match self.kind {
            GateKind::RY => Gate { angle: -self.angle, ..self.clone() },
            _ => self.clone(),
        }
    }

    fn shifted(&self, offset: usize) -> Gate {
        let mut g = self.clone();
        g.targets.iter_mut().for_each(|t| *t += offset);
        g.controls.iter_mut().for_each(|c| c.qubit += offset);
        g
    }

    fn check(&self, qubit_count: usize) -> std::result::Result<(), String> {
        if !self.kind.arity_ok(self.targets.len(), self.controls.len()) {
            return Err(format!(
                "{} with {} target(s) and {} control(s)",
                self.kind,
                self.targets.len(),
                self.controls.len()
            ));
        }
        let mut seen = BTreeSet::new();
        for q in self.qubits() {
            if q >= qubit_count {
                return Err(format!("{} touches qubit {q} of {qubit_count}", self.kind));
            }
            if !seen.insert(q) {
                return Err(format!("{} uses qubit {q} twice", self.kind));
            }
        }
        if let Some(mark) = &self.mark {
            let width = self.targets.len();
            if width < 64 && mark.values.iter().any(|&v| v >> width != 0) {
                return Err(format!("MARK value exceeds {width}-qubit register"));
            }
        }
        Ok(())
    }
}

/// A named, contiguous qubit range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    pub name: String,
    pub start: usize,
    pub len: usize,
}

impl Register {
    pub fn new(name: impl Into<String>, start: usize, len: usize) -> Self {
        Register { name: name.into(), start, len }
    }

    /// Qubit index of the `i`-th register bit.
    pub fn qubit(&self, i: usize) -> usize {
        assert!(i < self.len, "{}[{i}] out of range", self.name);
        self.start + i
    }

    pub fn qubits(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }

    pub fn end(&self) -> usize {
        self.start + self.len
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    qubit_count: usize,
    registers: Vec<Register>,
    layers: Vec<Vec<Gate>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthReport {
    pub layer_count: usize,
    pub weighted_depth: usize,
    pub gate_counts: BTreeMap<GateKind, usize>,
    /// Set when a `MARK` gate is present; such circuits are excluded from
    /// depth comparisons.
    pub non_physical: bool,
}

impl DepthReport {
    pub fn gate_count(&self) -> usize {
        self.gate_counts.values().sum()
    }
}

impl Circuit {
    /// An empty circuit with the given registers.
    pub fn empty(qubit_count: usize, registers: Vec<Register>) -> Self {
        Circuit { qubit_count, registers, layers: vec![] }
    }

    /// Builds and validates a circuit from explicit layers.
    pub fn from_layers(
        qubit_count: usize,
        registers: Vec<Register>,
        layers: Vec<Vec<Gate>>,
    ) -> Result<Self> {
        let c = Circuit { qubit_count, registers, layers };
        c.validate()?;
        Ok(c)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn require_register(&self, name: &str) -> Result<&Register> {
        self.register(name)
            .ok_or_else(|| Error::invalid(format!("circuit has no register {name:?}")))
    }

    pub fn layers(&self) -> &[Vec<Gate>] {
        &self.layers
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.layers.iter().flatten()
    }

    pub fn gate_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn validate(&self) -> Result<()> {
        let mut names = BTreeSet::new();
        let mut used = vec![false; self.qubit_count];
        for r in &self.registers {
            if !names.insert(r.name.as_str()) {
                return Err(Error::InvalidCircuit(format!("duplicate register {:?}", r.name)));
            }
            if r.end() > self.qubit_count {
                return Err(Error::InvalidCircuit(format!(
                    "register {} [{}, {}) exceeds {} qubits",
                    r.name,
                    r.start,
                    r.end(),
                    self.qubit_count
                )));
            }
            for q in r.qubits() {
                if std::mem::replace(&mut used[q], true) {
                    return Err(Error::InvalidCircuit(format!(
                        "register {} overlaps another register at qubit {q}",
                        r.name
                    )));
                }
            }
        }
        for (l, layer) in self.layers.iter().enumerate() {
            if layer.is_empty() {
                return Err(Error::InvalidCircuit(format!("layer {l} is empty")));
            }
            let mut busy = BTreeSet::new();
            for (g, gate) in layer.iter().enumerate() {
                gate.check(self.qubit_count)
                    .map_err(|m| Error::InvalidCircuit(format!("layer {l} gate {g}: {m}")))?;
                for q in gate.qubits() {
                    if !busy.insert(q) {
                        return Err(Error::InvalidCircuit(format!(
                            "layer {l} gate {g}: qubit {q} already used in this layer"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn depth(&self) -> Result<DepthReport> {
        self.validate()?;
        let mut gate_counts = BTreeMap::new();
        let mut weighted_depth = 0;
        let mut non_physical = false;
        for layer in &self.layers {
            let mut cost = 0;
            for g in layer {
                *gate_counts.entry(g.kind()).or_insert(0) += 1;
                non_physical |= !g.is_physical();
                cost = cost.max(g.cost());
            }
            weighted_depth += cost;
        }
        Ok(DepthReport {
            layer_count: self.layers.len(),
            weighted_depth,
            gate_counts,
            non_physical,
        })
    }

    /// Reversed layer order with each gate inverted.
    pub fn adjoint(&self) -> Circuit {
        Circuit {
            qubit_count: self.qubit_count,
            registers: self.registers.clone(),
            layers: self
                .layers
                .iter()
                .rev()
                .map(|l| l.iter().map(Gate::adjoint).collect())
                .collect(),
        }
    }

    /// `self` followed by `other`. Registers sharing a name must agree;
    /// layers are concatenated without re-packing.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if self.qubit_count != other.qubit_count {
            return Err(Error::invalid(format!(
                "cannot compose {}-qubit and {}-qubit circuits",
                self.qubit_count, other.qubit_count
            )));
        }
        let mut registers = self.registers.clone();
        for r in &other.registers {
            match self.register(&r.name) {
                Some(mine) if mine != r => {
                    return Err(Error::invalid(format!(
                        "register {} differs between composed circuits",
                        r.name
                    )))
                }
                Some(_) => {}
                None => registers.push(r.clone()),
            }
        }
        let mut layers = self.layers.clone();
        layers.extend(other.layers.iter().cloned());
        let c = Circuit { qubit_count: self.qubit_count, registers, layers };
        c.validate()?;
        Ok(c)
    }

    /// The same gates on a wider qubit array, with optional extra registers.
    pub fn widen(&self, qubit_count: usize, extra: Vec<Register>) -> Result<Circuit> {
        if qubit_count < self.qubit_count {
            return Err(Error::invalid(format!(
                "cannot narrow a {}-qubit circuit to {qubit_count}",
                self.qubit_count
            )));
        }
        let mut registers = self.registers.clone();
        registers.extend(extra);
        Circuit::from_layers(qubit_count, registers, self.layers.clone())
    }

    /// Textual dump, one gate per line. See [`Circuit::from_text`].
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "# factorq circuit v1");
        let _ = writeln!(out, "qubits {}", self.qubit_count);
        for r in &self.registers {
            let _ = writeln!(out, "register {} {} {}", r.name, r.start, r.len);
        }
        for (l, layer) in self.layers.iter().enumerate() {
            for g in layer {
                let _ = write!(out, "{l} {}", g.kind);
                if !g.controls.is_empty() {
                    let cs: Vec<String> = g
                        .controls
                        .iter()
                        .map(|c| format!("{}{}", if c.fires_on() { '+' } else { '-' }, c.qubit))
                        .collect();
                    let _ = write!(out, " c={}", cs.join(","));
                }
                let ts: Vec<String> = g.targets.iter().map(usize::to_string).collect();
                let _ = write!(out, " t={}", ts.join(","));
                if g.kind == GateKind::RY {
                    let _ = write!(out, " angle={:?}", g.angle);
                }
                if let Some(m) = &g.mark {
                    let vs: Vec<String> = m.values.iter().map(u64::to_string).collect();
                    let _ = write!(out, " label={} values={}", m.label, vs.join(","));
                }
                out.push('\n');
            }
        }
        out
    }

    /// Parses the format written by [`Circuit::to_text`].
    pub fn from_text(text: &str) -> Result<Circuit> {
        let bad = |line: usize, msg: String| Error::Parse {
            path: "<circuit>".into(),
            line: line + 1,
            message: msg,
        };
        let mut qubit_count = None;
        let mut registers = vec![];
        let mut layers: Vec<Vec<Gate>> = vec![];
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let head = parts.next().unwrap_or_default();
            match head {
                "qubits" => {
                    let n = parts.next().and_then(|s| s.parse().ok());
                    qubit_count = Some(n.ok_or_else(|| bad(ln, "bad qubit count".into()))?);
                }
                "register" => {
                    let fields: Vec<&str> = parts.collect();
                    let [name, start, len] = fields[..] else {
                        return Err(bad(ln, "register needs name, start, len".into()));
                    };
                    let parse = |s: &str| s.parse::<usize>().map_err(|e| bad(ln, e.to_string()));
                    registers.push(Register::new(name, parse(start)?, parse(len)?));
                }
                layer => {
                    let layer: usize = layer.parse().map_err(|_| bad(ln, format!("bad layer {layer:?}")))?;
                    let kind: GateKind = parts
                        .next()
                        .ok_or_else(|| bad(ln, "missing gate kind".into()))?
                        .parse()
                        .map_err(|e: Error| bad(ln, e.to_string()))?;
                    let mut gate = Gate { kind, targets: vec![], controls: vec![], angle: 0.0, mark: None };
                    let mut label = None;
                    let mut values = None;
                    for field in parts {
                        let (key, val) = field
                            .split_once('=')
                            .ok_or_else(|| bad(ln, format!("bad field {field:?}")))?;
                        let list = |v: &str| -> Result<Vec<u64>> {
                            v.split(',')
                                .filter(|s| !s.is_empty())
                                .map(|s| s.parse::<u64>().map_err(|e| bad(ln, e.to_string())))
                                .collect()
                        };
                        match key {
                            "c" => {
                                for c in val.split(',') {
                                    let (pol, q) = c.split_at(1);
                                    let qubit = q.parse().map_err(|_| bad(ln, format!("bad control {c:?}")))?;
                                    gate.controls.push(match pol {
                                        "+" => Control::on(qubit),
                                        "-" => Control::off(qubit),
                                        _ => return Err(bad(ln, format!("bad control {c:?}"))),
                                    });
                                }
                            }
                            "t" => gate.targets = list(val)?.into_iter().map(|q| q as usize).collect(),
                            "angle" => {
                                gate.angle = val.parse().map_err(|_| bad(ln, format!("bad angle {val:?}")))?
                            }
                            "label" => label = Some(val.to_string()),
                            "values" => values = Some(list(val)?),
                            _ => return Err(bad(ln, format!("unknown field {key:?}"))),
                        }
                    }
                    if kind == GateKind::MARK {
                        gate.mark = Some(PhaseMark {
                            label: label.unwrap_or_default(),
                            values: values.unwrap_or_default().into(),
                        });
                    }
                    if layer >= layers.len() {
                        layers.resize_with(layer + 1, Vec::new);
                    }
                    layers[layer].push(gate);
                }
            }
        }
        let qubit_count = qubit_count.ok_or_else(|| bad(0, "missing qubits line".into()))?;
        Circuit::from_layers(qubit_count, registers, layers)
    }
}

/// Incremental circuit construction.
///
/// [`push`](Self::push) places a gate in the earliest layer after every
/// layer that touches one of its qubits, but never before the last
/// [`barrier`](Self::barrier). [`push_layer`](Self::push_layer) appends an
/// explicit layer after a barrier.
#[derive(Clone, Debug)]
pub struct CircuitBuilder {
    qubit_count: usize,
    registers: Vec<Register>,
    layers: Vec<Vec<Gate>>,
    frontier: Vec<usize>,
    floor: usize,
}

impl CircuitBuilder {
    pub fn new(qubit_count: usize) -> Self {
        CircuitBuilder {
            qubit_count,
            registers: vec![],
            layers: vec![],
            frontier: vec![0; qubit_count],
            floor: 0,
        }
    }

    /// Allocates registers back to back starting at qubit 0.
    pub fn with_registers(specs: &[(&str, usize)]) -> Self {
        let total = specs.iter().map(|(_, len)| len).sum();
        let mut b = CircuitBuilder::new(total);
        let mut start = 0;
        for &(name, len) in specs {
            b.registers.push(Register::new(name, start, len));
            start += len;
        }
        b
    }

    pub fn register(&self, name: &str) -> &Register {
        self.registers
            .iter()
            .find(|r| r.name == name)
            .unwrap_or_else(|| panic!("no register {name:?}"))
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        let layer = gate
            .qubits()
            .map(|q| self.frontier[q])
            .max()
            .unwrap_or(0)
            .max(self.floor);
        if layer == self.layers.len() {
            self.layers.push(vec![]);
        }
        for q in gate.qubits() {
            self.frontier[q] = layer + 1;
        }
        self.layers[layer].push(gate);
        self
    }

    pub fn barrier(&mut self) -> &mut Self {
        self.floor = self.layers.len();
        self.frontier.iter_mut().for_each(|f| *f = self.floor);
        self
    }

    /// Appends `gates` as one new layer. Empty input is ignored.
    pub fn push_layer(&mut self, gates: Vec<Gate>) -> &mut Self {
        if gates.is_empty() {
            return self;
        }
        self.barrier();
        self.layers.push(gates);
        self.barrier()
    }

    /// Appends the layers of `c` unchanged (qubits shifted by `offset`).
    pub fn append(&mut self, c: &Circuit, offset: usize) -> &mut Self {
        self.barrier();
        for layer in c.layers() {
            self.layers.push(layer.iter().map(|g| g.shifted(offset)).collect());
        }
        self.barrier()
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn build(self) -> Result<Circuit> {
        Circuit::from_layers(self.qubit_count, self.registers, self.layers)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(Circuit::empty(0, vec![]).validate().is_ok());
        let clash = Circuit::from_layers(2, vec![], vec![vec![Gate::cx(0, 1), Gate::h(1)]]);
        let msg = clash.unwrap_err().to_string();
        assert!(msg.contains("layer 0 gate 1"), "{msg}");
        assert!(Circuit::from_layers(2, vec![], vec![vec![Gate::x(2)]]).is_err());
        assert!(Circuit::from_layers(3, vec![], vec![vec![Gate::ccx(0, 0, 1)]]).is_err());
        assert!(Circuit::from_layers(
            3,
            vec![Register::new("a", 0, 2), Register::new("b", 1, 2)],
            vec![]
        )
        .is_err());
        assert!(Circuit::from_layers(2, vec![], vec![vec![Gate::mcx(vec![], 0)]]).is_err());
    }

    #[test]
    fn builder_packs_asap() {
        let mut b = CircuitBuilder::new(4);
        b.push(Gate::h(0)).push(Gate::h(1)).push(Gate::cx(0, 1)).push(Gate::x(3));
        let c = b.build().unwrap();
        assert_eq!(c.layer_count(), 2);
        assert_eq!(c.layers()[0].len(), 3);
    }

    #[test]
    fn barrier_blocks_packing() {
        let mut b = CircuitBuilder::new(2);
        b.push(Gate::h(0)).barrier().push(Gate::h(1));
        assert_eq!(b.build().unwrap().layer_count(), 2);
    }

    #[test]
    fn depth_cost_model() {
        let c = Circuit::from_layers(
            5,
            vec![],
            vec![
                vec![Gate::ccx(0, 1, 2)],
                vec![Gate::mcx(vec![Control::off(0), Control::off(1), Control::off(2)], 3)],
                vec![Gate::x(3), Gate::h(4)],
            ],
        )
        .unwrap();
        let d = c.depth().unwrap();
        assert_eq!(d.layer_count, 3);
        assert_eq!(d.weighted_depth, 1 + 3 + 1);
        assert_eq!(d.gate_counts[&GateKind::X], 1);
        assert!(!d.non_physical);
        assert_eq!(Circuit::empty(3, vec![]).depth().unwrap().weighted_depth, 0);

        let m = Circuit::from_layers(2, vec![], vec![vec![Gate::mark("m", vec![0, 1], [3])]]).unwrap();
        assert!(m.depth().unwrap().non_physical);
    }

    #[test]
    fn adjoint_reverses_and_inverts() {
        let c = Circuit::from_layers(
            2,
            vec![],
            vec![vec![Gate::h(0)], vec![Gate::ry(0.3, vec![Control::on(0)], 1)]],
        )
        .unwrap();
        let a = c.adjoint();
        assert_eq!(a.layers()[0][0].angle(), -0.3);
        assert_eq!(a.layers()[1][0], Gate::h(0));
        assert_eq!(a.adjoint(), c);

        let single = Circuit::from_layers(2, vec![], vec![vec![Gate::cx(0, 1)]]).unwrap();
        assert_eq!(single.adjoint(), single);
        assert_eq!(a.depth().unwrap().gate_counts, c.depth().unwrap().gate_counts);
    }

    #[test]
    fn compose_rules() {
        let r = vec![Register::new("a", 0, 2)];
        let c = Circuit::from_layers(2, r.clone(), vec![vec![Gate::h(0)]]).unwrap();
        let e = Circuit::empty(2, r);
        assert_eq!(c.compose(&e).unwrap(), c);
        assert_eq!(c.compose(&c).unwrap().layer_count(), 2);
        assert!(c.compose(&Circuit::empty(3, vec![])).is_err());
        let other = Circuit::empty(2, vec![Register::new("a", 1, 1)]);
        assert!(c.compose(&other).is_err());
    }

    #[test]
    fn text_dump_shape() {
        let c = Circuit::from_layers(
            3,
            vec![Register::new("q", 0, 3)],
            vec![vec![Gate::ccx_with(Control::on(0), Control::off(1), 2)]],
        )
        .unwrap();
        let text = c.to_text();
        assert!(text.contains("0 CCX c=+0,-1 t=2"), "{text}");
        assert_eq!(Circuit::from_text(&text).unwrap(), c);
    }
}
