//! Text format for netlists.
//!
//! ```text
//! inputs w1 w2 ... wn
//! out1[,out2] = GATE in1 [in2 [in3]]
//! ...
//! outputs o1 ... om
//! ```
//!
//! `#` begins a comment; wire names match `[A-Za-z_][A-Za-z0-9_]*`. Node
//! lines may appear in any order; parsing topologically sorts them (stably,
//! so an already-sorted file round-trips byte-for-byte) and rejects cycles.

use std::collections::HashMap;

use crate::circuit::{Netlist, NetlistBuilder, WireId};
use crate::error::{Error, Result};
use crate::gates::GateKind;

fn valid_wire_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct RawNode {
    line: usize,
    outs: Vec<String>,
    kind: GateKind,
    ins: Vec<String>,
}

/// Parses a netlist whose gates must all come from `allowed`.
pub fn parse_with_gates(src: &str, allowed: &[GateKind]) -> Result<Netlist> {
    let mut inputs: Option<(usize, Vec<String>)> = None;
    let mut outputs: Option<(usize, Vec<String>)> = None;
    let mut raw_nodes: Vec<RawNode> = Vec::new();

    for (i, raw_line) in src.lines().enumerate() {
        let line = i + 1;
        let body = raw_line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |reason: String| Error::Parse { line, reason };
        let keyword_rest = |kw: &str| -> Option<&str> {
            let rest = body.strip_prefix(kw)?;
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                Some(rest)
            } else {
                None
            }
        };
        if let Some(rest) = keyword_rest("inputs") {
            if inputs.is_some() {
                return Err(err("duplicate inputs line".into()));
            }
            if outputs.is_some() || !raw_nodes.is_empty() {
                return Err(err("inputs must be the first line".into()));
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            inputs = Some((line, names));
        } else if let Some(rest) = keyword_rest("outputs") {
            if outputs.is_some() {
                return Err(err("duplicate outputs line".into()));
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            outputs = Some((line, names));
        } else {
            if inputs.is_none() {
                return Err(err("expected an inputs line first".into()));
            }
            if outputs.is_some() {
                return Err(err("node line after the outputs line".into()));
            }
            let (lhs, rhs) = body
                .split_once('=')
                .ok_or_else(|| err("expected `out[,out2] = GATE in...`".into()))?;
            let outs: Vec<String> = lhs.split(',').map(|s| s.trim().to_string()).collect();
            let mut toks = rhs.split_whitespace();
            let gate_name = toks.next().ok_or_else(|| err("missing gate name".into()))?;
            let kind = GateKind::from_name(gate_name)
                .ok_or_else(|| err(format!("unknown gate {gate_name}")))?;
            if !allowed.contains(&kind) {
                return Err(err(format!(
                    "gate {gate_name} is not in this netlist's gate set"
                )));
            }
            let ins: Vec<String> = toks.map(str::to_string).collect();
            if outs.len() != kind.arity_out() || ins.len() != kind.arity_in() {
                return Err(err(format!(
                    "{gate_name} takes {} input(s) and drives {} output(s)",
                    kind.arity_in(),
                    kind.arity_out()
                )));
            }
            for name in outs.iter().chain(ins.iter()) {
                if !valid_wire_name(name) {
                    return Err(err(format!("bad wire name {name:?}")));
                }
            }
            raw_nodes.push(RawNode {
                line,
                outs,
                kind,
                ins,
            });
        }
    }

    let (in_line, input_names) = inputs.ok_or(Error::Parse {
        line: 1,
        reason: "missing inputs line".into(),
    })?;
    let (out_line, output_names) = outputs.ok_or(Error::Parse {
        line: src.lines().count().max(1),
        reason: "missing outputs line".into(),
    })?;
    for name in &input_names {
        if !valid_wire_name(name) {
            return Err(Error::Parse {
                line: in_line,
                reason: format!("bad wire name {name:?}"),
            });
        }
    }

    // stable topological order over the node lines
    let mut driver: HashMap<&str, usize> = HashMap::new(); // wire -> raw node index
    let mut defined: HashMap<&str, bool> = HashMap::new();
    for name in &input_names {
        if defined.insert(name, true).is_some() {
            return Err(Error::Parse {
                line: in_line,
                reason: format!("duplicate input {name}"),
            });
        }
    }
    for (idx, node) in raw_nodes.iter().enumerate() {
        for out in &node.outs {
            if defined.insert(out, false).is_some() {
                return Err(Error::Parse {
                    line: node.line,
                    reason: format!("wire {out} has two drivers"),
                });
            }
            driver.insert(out, idx);
        }
    }
    for node in &raw_nodes {
        for input in &node.ins {
            if !defined.contains_key(input.as_str()) {
                return Err(Error::Parse {
                    line: node.line,
                    reason: format!("wire {input} is never driven"),
                });
            }
        }
    }
    for name in &output_names {
        if !defined.contains_key(name.as_str()) {
            return Err(Error::Parse {
                line: out_line,
                reason: format!("wire {name} is never driven"),
            });
        }
    }

    let n = raw_nodes.len();
    let mut missing: Vec<usize> = raw_nodes
        .iter()
        .map(|node| {
            node.ins
                .iter()
                .filter(|i| driver.contains_key(i.as_str()))
                .count()
        })
        .collect();
    let mut consumers: HashMap<&str, Vec<usize>> = HashMap::new();
    for (idx, node) in raw_nodes.iter().enumerate() {
        for input in &node.ins {
            consumers.entry(input).or_default().push(idx);
        }
    }
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut ready: std::collections::BTreeSet<usize> =
        (0..n).filter(|&i| missing[i] == 0).collect();
    while let Some(&idx) = ready.iter().next() {
        ready.remove(&idx);
        order.push(idx);
        for out in &raw_nodes[idx].outs {
            for &consumer in consumers.get(out.as_str()).map(|v| &v[..]).unwrap_or(&[]) {
                missing[consumer] -= 1;
                if missing[consumer] == 0 {
                    ready.insert(consumer);
                }
            }
        }
    }
    if order.len() != n {
        let stuck = (0..n).find(|i| !order.contains(i)).unwrap();
        return Err(Error::Parse {
            line: raw_nodes[stuck].line,
            reason: "cycle through this node".into(),
        });
    }

    let mut b = NetlistBuilder::new();
    let mut ids: HashMap<&str, WireId> = HashMap::new();
    for name in &input_names {
        ids.insert(name, b.input(name.clone())?);
    }
    for &idx in &order {
        let node = &raw_nodes[idx];
        let ins: Vec<WireId> = node.ins.iter().map(|name| ids[name.as_str()]).collect();
        let outs = b
            .gate_named(node.kind, &ins, &node.outs)
            .map_err(|e| Error::Parse {
                line: node.line,
                reason: e.to_string(),
            })?;
        for (name, id) in node.outs.iter().zip(outs) {
            ids.insert(name, id);
        }
    }
    let output_ids = output_names.iter().map(|name| ids[name.as_str()]).collect();
    b.finish(output_ids)
}

/// Parses a netlist over the full ternary gate set.
pub fn parse_ternary(src: &str) -> Result<crate::circuit::TernaryCircuit> {
    Ok(parse_with_gates(src, &GateKind::ALL)?.into())
}
