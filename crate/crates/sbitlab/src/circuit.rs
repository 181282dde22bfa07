//! Netlist IR for ternary circuits: single-driver, single-use wires with
//! explicit FANOUT, gate-local evaluation, circuit-level weak-additivity
//! checking, and truth-table synthesis.
//!
//! Gate-local semantics propagate ternary values through each node's
//! full-domain table in topological order. A circuit is weakly additive when
//! that agrees, on every ternary input, with the extension of the circuit's
//! own basis table; `check` decides this exhaustively.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gates::{self, BasisTable, GateKind};
use crate::sbit::{Sbit, SbitWord};
use crate::sweep;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WireId(pub u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub kind: GateKind,
    pub ins: Vec<WireId>,
    pub outs: Vec<WireId>,
}

/// A validated netlist: every wire has exactly one driver (a circuit input
/// or one gate output) and exactly one consumer (a gate input or one circuit
/// output); nodes are stored in topological order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Netlist {
    wire_names: Vec<String>,
    inputs: Vec<WireId>,
    nodes: Vec<Node>,
    outputs: Vec<WireId>,
}

impl Netlist {
    pub fn n_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn n_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn inputs(&self) -> &[WireId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[WireId] {
        &self.outputs
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn n_wires(&self) -> usize {
        self.wire_names.len()
    }

    pub fn wire_name(&self, w: WireId) -> &str {
        &self.wire_names[w.0 as usize]
    }

    /// Gate nodes in the netlist, FANOUTs included.
    pub fn gate_count(&self) -> usize {
        self.nodes.len()
    }

    /// Propagates one value per wire through the nodes with `apply`,
    /// returning the value of every wire.
    fn eval_wires<V: Copy>(
        &self,
        inputs: &[V],
        mut apply: impl FnMut(GateKind, &[V]) -> Vec<V>,
    ) -> Vec<V> {
        debug_assert_eq!(inputs.len(), self.inputs.len());
        let mut values: Vec<Option<V>> = vec![None; self.wire_names.len()];
        for (wire, value) in self.inputs.iter().zip(inputs) {
            values[wire.0 as usize] = Some(*value);
        }
        let mut buf: Vec<V> = Vec::with_capacity(3);
        for node in &self.nodes {
            buf.clear();
            buf.extend(
                node.ins
                    .iter()
                    .map(|w| values[w.0 as usize].expect("topological order")),
            );
            let outs = apply(node.kind, &buf);
            for (wire, value) in node.outs.iter().zip(outs) {
                values[wire.0 as usize] = Some(value);
            }
        }
        values
            .into_iter()
            .map(|v| v.expect("validated netlists drive every wire"))
            .collect()
    }

    fn read_outputs<V: Copy>(&self, values: &[V]) -> Vec<V> {
        self.outputs.iter().map(|w| values[w.0 as usize]).collect()
    }

    /// Projects a per-wire Boolean valuation onto the output wires.
    pub fn read_outputs_bool(&self, values: &[bool]) -> Vec<bool> {
        self.read_outputs(values)
    }

    /// Gate-local ternary evaluation.
    pub fn eval_ternary(&self, input: &SbitWord) -> Result<SbitWord> {
        if input.len() != self.inputs.len() {
            return Err(Error::LengthMismatch {
                left: input.len(),
                right: self.inputs.len(),
            });
        }
        let symbols: Vec<Sbit> = input.iter().collect();
        let values = self.eval_wires(&symbols, |kind, ins| {
            gates::gate_apply(kind, &SbitWord::new(ins.to_vec()))
                .expect("node arity validated at construction")
                .iter()
                .collect()
        });
        Ok(SbitWord::new(self.read_outputs(&values)))
    }

    /// Boolean evaluation for netlists over the classical gates.
    pub fn eval_bool(&self, input: &[bool]) -> Result<Vec<bool>> {
        Ok(self.read_outputs(&self.eval_bool_wires(input)?))
    }

    /// Boolean evaluation returning the value of every wire, indexed by
    /// wire id.
    pub fn eval_bool_wires(&self, input: &[bool]) -> Result<Vec<bool>> {
        if input.len() != self.inputs.len() {
            return Err(Error::LengthMismatch {
                left: input.len(),
                right: self.inputs.len(),
            });
        }
        Ok(self.eval_wires(input, |kind, ins| {
            gates::bool_apply(kind, ins).expect("gate set validated at construction")
        }))
    }

    /// Serializes to the netlist text format.
    pub fn to_text(&self) -> String {
        let mut out = String::from("inputs");
        for w in &self.inputs {
            out.push(' ');
            out.push_str(self.wire_name(*w));
        }
        out.push('\n');
        for node in &self.nodes {
            let outs: Vec<&str> = node.outs.iter().map(|w| self.wire_name(*w)).collect();
            out.push_str(&outs.join(","));
            out.push_str(" = ");
            out.push_str(node.kind.name());
            for w in &node.ins {
                out.push(' ');
                out.push_str(self.wire_name(*w));
            }
            out.push('\n');
        }
        out.push_str("outputs");
        for w in &self.outputs {
            out.push(' ');
            out.push_str(self.wire_name(*w));
        }
        out.push('\n');
        out
    }
}

/// Incremental netlist construction. Wires can only be referenced after
/// they are created, so node order is topological by construction.
#[derive(Debug, Default)]
pub struct NetlistBuilder {
    wire_names: Vec<String>,
    by_name: HashMap<String, WireId>,
    inputs: Vec<WireId>,
    nodes: Vec<Node>,
}

impl NetlistBuilder {
    pub fn new() -> NetlistBuilder {
        NetlistBuilder::default()
    }

    fn add_wire(&mut self, name: String) -> Result<WireId> {
        if self.by_name.contains_key(&name) {
            return Err(Error::Structure {
                node: None,
                reason: format!("wire {name} has two drivers"),
            });
        }
        let id = WireId(self.wire_names.len() as u32);
        self.by_name.insert(name.clone(), id);
        self.wire_names.push(name);
        Ok(id)
    }

    /// Fresh wire with a generated, collision-free name.
    fn fresh_wire(&mut self, stem: &str) -> WireId {
        let mut name = stem.to_string();
        let mut salt = 0usize;
        while self.by_name.contains_key(&name) {
            salt += 1;
            name = format!("{stem}_{salt}");
        }
        self.add_wire(name).expect("name is fresh")
    }

    pub fn input(&mut self, name: impl Into<String>) -> Result<WireId> {
        let id = self.add_wire(name.into())?;
        self.inputs.push(id);
        Ok(id)
    }

    /// Convenience: inputs named `x1..xn`.
    pub fn inputs_auto(&mut self, n: usize) -> Vec<WireId> {
        (1..=n)
            .map(|i| self.fresh_input(&format!("x{i}")))
            .collect()
    }

    fn fresh_input(&mut self, stem: &str) -> WireId {
        let id = self.fresh_wire(stem);
        self.inputs.push(id);
        id
    }

    /// Appends a gate with auto-named output wires.
    pub fn gate(&mut self, kind: GateKind, ins: &[WireId]) -> Result<Vec<WireId>> {
        let names: Vec<String> = vec![String::new(); kind.arity_out()];
        self.gate_named(kind, ins, &names)
    }

    /// Appends a gate with explicitly named output wires.
    pub fn gate_named(
        &mut self,
        kind: GateKind,
        ins: &[WireId],
        out_names: &[impl AsRef<str>],
    ) -> Result<Vec<WireId>> {
        let node_id = self.nodes.len();
        if ins.len() != kind.arity_in() || out_names.len() != kind.arity_out() {
            return Err(Error::Structure {
                node: Some(node_id),
                reason: format!(
                    "{kind} takes {} input(s) and drives {} output(s), got {} and {}",
                    kind.arity_in(),
                    kind.arity_out(),
                    ins.len(),
                    out_names.len()
                ),
            });
        }
        for w in ins {
            if w.0 as usize >= self.wire_names.len() {
                return Err(Error::Structure {
                    node: Some(node_id),
                    reason: "node consumes an unknown wire".into(),
                });
            }
        }
        let mut outs = Vec::with_capacity(out_names.len());
        for n in out_names {
            let name = n.as_ref();
            if name.is_empty() {
                outs.push(self.fresh_wire(&format!("w{}", self.wire_names.len())));
            } else {
                outs.push(self.add_wire(name.to_string())?);
            }
        }
        self.nodes.push(Node {
            kind,
            ins: ins.to_vec(),
            outs: outs.clone(),
        });
        Ok(outs)
    }

    /// One-output shorthand.
    pub fn gate1(&mut self, kind: GateKind, ins: &[WireId]) -> Result<WireId> {
        Ok(self.gate(kind, ins)?[0])
    }

    /// FANOUT shorthand returning the two branch wires.
    pub fn fanout(&mut self, input: WireId) -> Result<(WireId, WireId)> {
        let outs = self.gate(GateKind::Fanout, &[input])?;
        Ok((outs[0], outs[1]))
    }

    /// Validates the single-use discipline and seals the netlist.
    pub fn finish(self, outputs: Vec<WireId>) -> Result<Netlist> {
        if self.inputs.is_empty() {
            return Err(Error::Structure {
                node: None,
                reason: "netlist has no inputs".into(),
            });
        }
        if outputs.is_empty() {
            return Err(Error::Structure {
                node: None,
                reason: "netlist has no outputs".into(),
            });
        }
        let mut uses = vec![0usize; self.wire_names.len()];
        for w in &outputs {
            if w.0 as usize >= self.wire_names.len() {
                return Err(Error::Structure {
                    node: None,
                    reason: "output references an unknown wire".into(),
                });
            }
            uses[w.0 as usize] += 1;
        }
        for (id, node) in self.nodes.iter().enumerate() {
            for w in &node.ins {
                uses[w.0 as usize] += 1;
                if uses[w.0 as usize] > 1 {
                    return Err(Error::Structure {
                        node: Some(id),
                        reason: format!(
                            "wire {} is used more than once; copy it with FANOUT",
                            self.wire_names[w.0 as usize]
                        ),
                    });
                }
            }
        }
        if let Some(unused) = uses.iter().position(|&u| u == 0) {
            return Err(Error::Structure {
                node: None,
                reason: format!("wire {} is never used", self.wire_names[unused]),
            });
        }
        if let Some(over) = uses.iter().position(|&u| u > 1) {
            return Err(Error::Structure {
                node: None,
                reason: format!(
                    "wire {} is used more than once; copy it with FANOUT",
                    self.wire_names[over]
                ),
            });
        }
        Ok(Netlist {
            wire_names: self.wire_names,
            inputs: self.inputs,
            nodes: self.nodes,
            outputs,
        })
    }
}

/// Result of a circuit-level weak-additivity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub result: gates::WAdditivity,
    pub gate_count: usize,
    /// Circuit evaluations spent producing this verdict.
    pub query_count: usize,
}

impl Verdict {
    pub fn is_wadditive(&self) -> bool {
        self.result.is_wadditive()
    }

    pub fn witness(&self) -> Option<&SbitWord> {
        match &self.result {
            gates::WAdditivity::WAdditive => None,
            gates::WAdditivity::Violation(w) => Some(w),
        }
    }
}

/// A netlist over the full ternary gate set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryCircuit {
    net: Netlist,
}

impl From<Netlist> for TernaryCircuit {
    fn from(net: Netlist) -> TernaryCircuit {
        TernaryCircuit { net }
    }
}

impl TernaryCircuit {
    pub fn net(&self) -> &Netlist {
        &self.net
    }

    pub fn n_inputs(&self) -> usize {
        self.net.n_inputs()
    }

    pub fn n_outputs(&self) -> usize {
        self.net.n_outputs()
    }

    pub fn gate_count(&self) -> usize {
        self.net.gate_count()
    }

    pub fn to_text(&self) -> String {
        self.net.to_text()
    }

    /// Gate-local evaluation.
    pub fn eval(&self, input: &SbitWord) -> Result<SbitWord> {
        self.net.eval_ternary(input)
    }

    /// Evaluates the circuit on all 2^n basis words.
    pub fn basis_table(&self, cap: usize) -> Result<BasisTable> {
        let n = self.n_inputs();
        gates::ensure_cap("basis-table sweep", 2, n, cap)?;
        let rows = SbitWord::enumerate_basis(n)
            .map(|x| self.eval(&x))
            .collect::<Result<Vec<_>>>()?;
        BasisTable::new(n, self.n_outputs(), rows)
    }

    /// Compares gate-local evaluation against the extension of the circuit's
    /// basis table on all 3^n inputs; the witness, when present, is the
    /// lexicographically least disagreeing input.
    pub fn check(&self, cap: usize) -> Result<Verdict> {
        let n = self.n_inputs();
        gates::ensure_cap("circuit weak-additivity check", 3, n, cap)?;
        let table = self.basis_table(cap)?;
        let total = 3u64.pow(n as u32);
        let hit = sweep::first_hit(total, |i| {
            let w = SbitWord::from_ternary_index(n, i);
            let local = self.eval(&w).expect("width matches");
            let extended = table.extend(&w).expect("width matches");
            if local != extended {
                Some(w)
            } else {
                None
            }
        });
        Ok(Verdict {
            result: match hit {
                Some(w) => gates::WAdditivity::Violation(w),
                None => gates::WAdditivity::WAdditive,
            },
            gate_count: self.gate_count(),
            query_count: (total + (1u64 << n)) as usize,
        })
    }
}

/// Which gate vocabulary the synthesizer may emit for one-sbit base cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SynthGateSet {
    /// The nine named one-sbit gates.
    #[default]
    Named,
    /// The universal set {NOT, S0, FANOUT, AND, OR, T}: one-sbit cases lower
    /// to chains over {NOT, S0} wherever possible. The two constant tables
    /// stay C0/C1: every gate in the universal set maps the all-s word to s,
    /// so no circuit over it can realize a constant extension.
    Primitive,
}

/// Builds a circuit computing the weak-additive extension of `table`
/// (one output sbit). Recursion on the first input: both restrictions are
/// synthesized, the remaining inputs are FANOUTed to each, and a T gate
/// selects by the first input.
pub fn synthesize(table: &BasisTable, set: SynthGateSet) -> Result<TernaryCircuit> {
    if table.n_out() != 1 {
        return Err(Error::BadTable {
            reason: format!(
                "synthesis targets one output sbit, table has {}",
                table.n_out()
            ),
        });
    }
    let mut b = NetlistBuilder::new();
    let ins = b.inputs_auto(table.n_in());
    let out = emit(table, &ins, &mut b, set)?;
    Ok(b.finish(vec![out])?.into())
}

/// Multi-output synthesis: each output column is synthesized independently
/// on its own FANOUT copies of the inputs; nothing is shared.
pub fn synthesize_multi(table: &BasisTable, set: SynthGateSet) -> Result<TernaryCircuit> {
    let m = table.n_out();
    if m == 1 {
        return synthesize(table, set);
    }
    let mut b = NetlistBuilder::new();
    let ins = b.inputs_auto(table.n_in());
    let mut copies: Vec<Vec<WireId>> = vec![Vec::with_capacity(table.n_in()); m];
    for &wire in &ins {
        let mut tail = wire;
        for (j, bucket) in copies.iter_mut().enumerate() {
            if j + 1 < m {
                let (head, rest) = b.fanout(tail)?;
                bucket.push(head);
                tail = rest;
            } else {
                bucket.push(tail);
            }
        }
    }
    let mut outs = Vec::with_capacity(m);
    for (j, bucket) in copies.iter().enumerate() {
        let column = table.project(j)?;
        outs.push(emit(&column, bucket, &mut b, set)?);
    }
    Ok(b.finish(outs)?.into())
}

fn emit(
    table: &BasisTable,
    ins: &[WireId],
    b: &mut NetlistBuilder,
    set: SynthGateSet,
) -> Result<WireId> {
    if table.n_in() == 1 {
        return emit_base(table, ins[0], b, set);
    }
    let t0 = table.fix_first(Sbit::Zero)?;
    let t1 = table.fix_first(Sbit::One)?;
    let mut rest0 = Vec::with_capacity(ins.len() - 1);
    let mut rest1 = Vec::with_capacity(ins.len() - 1);
    for &w in &ins[1..] {
        let (a, c) = b.fanout(w)?;
        rest0.push(a);
        rest1.push(c);
    }
    let low = emit(&t0, &rest0, b, set)?;
    let high = emit(&t1, &rest1, b, set)?;
    b.gate1(GateKind::T, &[ins[0], low, high])
}

fn emit_base(
    table: &BasisTable,
    input: WireId,
    b: &mut NetlistBuilder,
    set: SynthGateSet,
) -> Result<WireId> {
    let kind = *GateKind::ONE_SBIT
        .iter()
        .find(|k| k.basis_table() == table)
        .expect("every one-sbit table is one of the nine gates");
    let chain: &[GateKind] = match set {
        SynthGateSet::Named => &[kind],
        SynthGateSet::Primitive => match kind {
            GateKind::I => &[],
            GateKind::Not => &[GateKind::Not],
            GateKind::S0 => &[GateKind::S0],
            GateKind::S0Bar => &[GateKind::Not, GateKind::S0],
            GateKind::S1 => &[GateKind::S0, GateKind::Not],
            GateKind::S1Bar => &[GateKind::Not, GateKind::S0, GateKind::Not],
            GateKind::H => &[GateKind::S0, GateKind::S0],
            // constants are not expressible over the universal set
            GateKind::C0 => &[GateKind::C0],
            GateKind::C1 => &[GateKind::C1],
            _ => unreachable!("one-sbit gates only"),
        },
    };
    let mut wire = input;
    for &k in chain {
        wire = b.gate1(k, &[wire])?;
    }
    Ok(wire)
}
