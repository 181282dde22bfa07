//! Lowering from classical Boolean netlists to weakly-additive netlists.
//!
//! The pass is a single linear sweep: the two FANOUT reconvergence patterns
//! (copy, negate one branch, rejoin in AND resp. OR) collapse to the constant
//! gates C0 resp. C1, and every remaining AND/OR/NOT/XOR node is substituted
//! one-for-one by its ternary counterpart. A FANOUT that survives both
//! phases makes the circuit not convertible by rules; an optional fallback
//! takes the full 2^n truth table and synthesizes a circuit from it instead.

use std::collections::HashMap;

use crate::circuit::{
    synthesize_multi, Netlist, NetlistBuilder, SynthGateSet, TernaryCircuit, WireId,
};
use crate::error::{Error, Result};
use crate::gates::{self, BasisTable, GateKind};
use crate::netlist;
use crate::sbit::{Sbit, SbitWord};

/// Gate vocabulary of classical netlists.
pub const CLASSICAL_GATES: [GateKind; 5] = [
    GateKind::And,
    GateKind::Or,
    GateKind::Not,
    GateKind::Xor,
    GateKind::Fanout,
];

/// A netlist restricted to {AND, OR, NOT, XOR, FANOUT}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalCircuit {
    net: Netlist,
}

impl ClassicalCircuit {
    pub fn new(net: Netlist) -> Result<ClassicalCircuit> {
        if let Some(bad) = net
            .nodes()
            .iter()
            .position(|n| !CLASSICAL_GATES.contains(&n.kind))
        {
            return Err(Error::Structure {
                node: Some(bad),
                reason: format!("gate {} is not classical", net.nodes()[bad].kind),
            });
        }
        Ok(ClassicalCircuit { net })
    }

    pub fn parse(src: &str) -> Result<ClassicalCircuit> {
        Ok(ClassicalCircuit {
            net: netlist::parse_with_gates(src, &CLASSICAL_GATES)?,
        })
    }

    pub fn net(&self) -> &Netlist {
        &self.net
    }

    pub fn n_inputs(&self) -> usize {
        self.net.n_inputs()
    }

    pub fn gate_count(&self) -> usize {
        self.net.gate_count()
    }

    pub fn to_text(&self) -> String {
        self.net.to_text()
    }

    /// Boolean evaluation with native operators; this is the reference
    /// semantics conversions are checked against.
    pub fn eval_bits(&self, bits: &[bool]) -> Result<Vec<bool>> {
        self.net.eval_bool(bits)
    }

    /// The full 2^n truth table, outputs encoded as basis words.
    pub fn truth_table(&self, cap: usize) -> Result<BasisTable> {
        let n = self.n_inputs();
        gates::ensure_cap("truth-table sweep", 2, n, cap)?;
        let rows = (0..1u64 << n)
            .map(|i| {
                let bits: Vec<bool> = (0..n).map(|j| (i >> (n - 1 - j)) & 1 == 1).collect();
                let out = self.eval_bits(&bits)?;
                Ok(SbitWord::new(
                    out.iter()
                        .map(|&b| if b { Sbit::One } else { Sbit::Zero })
                        .collect(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        BasisTable::new(n, self.net.n_outputs(), rows)
    }
}

/// The two FANOUT reconvergence patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewritePattern {
    /// copy, negate one branch, rejoin in AND; collapses to C0
    FanoutNotAnd,
    /// copy, negate one branch, rejoin in OR; collapses to C1
    FanoutNotOr,
}

impl RewritePattern {
    /// Token used in the conversion log.
    pub fn log_name(self) -> &'static str {
        match self {
            RewritePattern::FanoutNotAnd => "fig3",
            RewritePattern::FanoutNotOr => "fig4",
        }
    }

    pub fn replacement(self) -> GateKind {
        match self {
            RewritePattern::FanoutNotAnd => GateKind::C0,
            RewritePattern::FanoutNotOr => GateKind::C1,
        }
    }
}

/// One collapsed pattern instance: the FANOUT, NOT and join node ids of the
/// source netlist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteEvent {
    pub pattern: RewritePattern,
    pub nodes: [usize; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvertStatus {
    Converted,
    NotConvertibleByRules,
}

#[derive(Debug)]
pub struct ConvertReport {
    pub status: ConvertStatus,
    /// Present iff status is Converted or the fallback ran.
    pub circuit: Option<TernaryCircuit>,
    pub rewrites: Vec<RewriteEvent>,
    /// One-for-one gate substitutions performed.
    pub substitutions: usize,
    pub fallback_used: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Consumer {
    Node { node: usize, port: usize },
    Output,
}

fn consumer_map(net: &Netlist) -> Vec<Option<Consumer>> {
    let mut map = vec![None; net.n_wires()];
    for (idx, node) in net.nodes().iter().enumerate() {
        for (port, w) in node.ins.iter().enumerate() {
            map[w.0 as usize] = Some(Consumer::Node { node: idx, port });
        }
    }
    for w in net.outputs() {
        map[w.0 as usize] = Some(Consumer::Output);
    }
    map
}

/// Finds every FANOUT whose branches reconverge, one direct and one through
/// exactly one NOT, into a single AND or OR.
fn match_patterns(net: &Netlist) -> Result<Vec<RewriteEvent>> {
    let consumers = consumer_map(net);
    let consumer = |w: WireId| consumers[w.0 as usize].expect("validated netlists are total");
    let mut events = Vec::new();
    for (f_idx, f) in net.nodes().iter().enumerate() {
        if f.kind != GateKind::Fanout {
            continue;
        }
        let mut matched: Option<RewriteEvent> = None;
        for (direct, notted) in [(f.outs[0], f.outs[1]), (f.outs[1], f.outs[0])] {
            let Consumer::Node { node: m_idx, .. } = consumer(notted) else {
                continue;
            };
            let m = &net.nodes()[m_idx];
            if m.kind != GateKind::Not {
                continue;
            }
            let Consumer::Node { node: g_idx, .. } = consumer(m.outs[0]) else {
                continue;
            };
            let Consumer::Node { node: g_direct, .. } = consumer(direct) else {
                continue;
            };
            if g_idx != g_direct {
                continue;
            }
            let pattern = match net.nodes()[g_idx].kind {
                GateKind::And => RewritePattern::FanoutNotAnd,
                GateKind::Or => RewritePattern::FanoutNotOr,
                _ => continue,
            };
            let event = RewriteEvent {
                pattern,
                nodes: [f_idx, m_idx, g_idx],
            };
            if let Some(first) = &matched {
                // unreachable with single-use wires, but fail loud over a
                // silent choice if it ever fires
                if *first != event {
                    return Err(Error::Structure {
                        node: Some(f_idx),
                        reason: "ambiguous reconvergence pattern".into(),
                    });
                }
            } else {
                matched = Some(event);
            }
        }
        if let Some(event) = matched {
            events.push(event);
        }
    }
    Ok(events)
}

/// Dry run of the pattern phase: whether rules alone suffice, plus the
/// FANOUT nodes no pattern covers.
pub fn is_convertible_by_rules(c: &ClassicalCircuit) -> Result<(bool, Vec<usize>)> {
    let events = match_patterns(c.net())?;
    let covered: Vec<usize> = events.iter().map(|e| e.nodes[0]).collect();
    let unmatched: Vec<usize> = c
        .net()
        .nodes()
        .iter()
        .enumerate()
        .filter(|(idx, n)| n.kind == GateKind::Fanout && !covered.contains(idx))
        .map(|(idx, _)| idx)
        .collect();
    Ok((unmatched.is_empty(), unmatched))
}

/// Runs the lowering pass. With `allow_fallback`, a circuit that the rules
/// cannot cover is rebuilt from its full 2^n truth table through synthesis
/// (exponential; gated by `cap`).
pub fn convert(c: &ClassicalCircuit, allow_fallback: bool, cap: usize) -> Result<ConvertReport> {
    let net = c.net();
    let events = match_patterns(net)?;
    let mut removed: HashMap<usize, Option<&RewriteEvent>> = HashMap::new();
    for e in &events {
        let [f, m, g] = e.nodes;
        removed.insert(f, Some(e));
        removed.insert(m, None);
        removed.insert(g, None);
    }
    let leftover_fanout = net
        .nodes()
        .iter()
        .enumerate()
        .any(|(idx, n)| n.kind == GateKind::Fanout && !removed.contains_key(&idx));

    if leftover_fanout {
        let circuit = if allow_fallback {
            let table = c.truth_table(cap)?;
            Some(synthesize_multi(&table, SynthGateSet::Named)?)
        } else {
            None
        };
        return Ok(ConvertReport {
            status: ConvertStatus::NotConvertibleByRules,
            circuit,
            // nothing was rewritten; the matches found are only a dry run
            rewrites: Vec::new(),
            substitutions: 0,
            fallback_used: allow_fallback,
        });
    }

    // rebuild: skip removed nodes, splice in the constant gate at the
    // FANOUT's position, keep every other node one-for-one
    let mut b = NetlistBuilder::new();
    let mut wires: HashMap<WireId, WireId> = HashMap::new();
    for &w in net.inputs() {
        wires.insert(w, b.input(net.wire_name(w).to_string())?);
    }
    let mut substitutions = 0usize;
    for (idx, node) in net.nodes().iter().enumerate() {
        match removed.get(&idx) {
            Some(Some(event)) => {
                // FANOUT head of a matched pattern: one constant gate from
                // the copied wire to the join's output
                let join = &net.nodes()[event.nodes[2]];
                let source = wires[&node.ins[0]];
                let out_name = net.wire_name(join.outs[0]).to_string();
                let outs = b.gate_named(event.pattern.replacement(), &[source], &[out_name])?;
                wires.insert(join.outs[0], outs[0]);
            }
            Some(None) => {} // NOT or join of a matched pattern
            None => {
                let ins: Vec<WireId> = node.ins.iter().map(|w| wires[w]).collect();
                let names: Vec<String> = node
                    .outs
                    .iter()
                    .map(|w| net.wire_name(*w).to_string())
                    .collect();
                let outs = b.gate_named(node.kind, &ins, &names)?;
                for (old, new) in node.outs.iter().zip(outs) {
                    wires.insert(*old, new);
                }
                substitutions += 1;
            }
        }
    }
    let outputs = net.outputs().iter().map(|w| wires[w]).collect();
    let circuit: TernaryCircuit = b.finish(outputs)?.into();
    Ok(ConvertReport {
        status: ConvertStatus::Converted,
        circuit: Some(circuit),
        rewrites: events,
        substitutions,
        fallback_used: false,
    })
}
