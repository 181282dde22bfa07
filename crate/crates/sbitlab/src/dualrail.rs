//! Dual-rail compilation: every ternary wire becomes two Boolean rails with
//! 0 -> 10, 1 -> 01, s -> 11; the pair 00 is invalid and never arises from
//! valid inputs.
//!
//! Each ternary gate lowers through a fixed template over {AND, OR, NOT,
//! FANOUT}. The sbit sum is rail-wise OR under this encoding, which is how
//! the non-obvious templates were derived; all of them are frozen as data
//! below and every one is checked exhaustively against its gate table
//! before the first compilation runs.

use std::sync::LazyLock;

use crate::circuit::{Netlist, NetlistBuilder, TernaryCircuit, WireId};
use crate::error::{Error, Result};
use crate::gates::{self, GateKind};
use crate::netlist;
use crate::sbit::{Sbit, SbitWord};
use crate::sweep;

/// Gate vocabulary of compiled dual-rail netlists.
pub const BOOL_GATES: [GateKind; 4] =
    [GateKind::And, GateKind::Or, GateKind::Not, GateKind::Fanout];

/// Boolean value of one encoded sbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RailPair {
    pub zero_rail: bool,
    pub one_rail: bool,
}

impl RailPair {
    pub fn from_sbit(s: Sbit) -> RailPair {
        match s {
            Sbit::Zero => RailPair {
                zero_rail: true,
                one_rail: false,
            },
            Sbit::One => RailPair {
                zero_rail: false,
                one_rail: true,
            },
            Sbit::S => RailPair {
                zero_rail: true,
                one_rail: true,
            },
        }
    }

    pub fn to_sbit(self) -> Option<Sbit> {
        match (self.zero_rail, self.one_rail) {
            (true, false) => Some(Sbit::Zero),
            (false, true) => Some(Sbit::One),
            (true, true) => Some(Sbit::S),
            (false, false) => None,
        }
    }
}

/// Rail vector of a word: two rails per sbit, in word order.
pub fn encode(word: &SbitWord) -> Vec<bool> {
    word.iter()
        .flat_map(|s| {
            let p = RailPair::from_sbit(s);
            [p.zero_rail, p.one_rail]
        })
        .collect()
}

/// Inverse of `encode`; rejects odd lengths and any 00 pair, naming the
/// offending pair index (1-based).
pub fn decode(rails: &[bool]) -> Result<SbitWord> {
    if !rails.len().is_multiple_of(2) || rails.is_empty() {
        return Err(Error::RailLength { len: rails.len() });
    }
    let symbols = rails
        .chunks(2)
        .enumerate()
        .map(|(i, pair)| {
            RailPair {
                zero_rail: pair[0],
                one_rail: pair[1],
            }
            .to_sbit()
            .ok_or(Error::InvalidRailPair { pair: i + 1 })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SbitWord::new(symbols))
}

/// One micro-op of a gate template. Operands index template slots: the
/// input rails occupy slots 0..2k, every op appends its results.
#[derive(Debug, Clone, Copy)]
pub enum TOp {
    And(u8, u8),
    Or(u8, u8),
    Not(u8),
    Fanout(u8),
}

/// Boolean lowering of one ternary gate. `outs` lists the slots carrying the
/// output rails, two per output sbit; a slot may be an input slot, in which
/// case the template is pure wiring there.
#[derive(Debug, Clone, Copy)]
pub struct GateTemplate {
    pub ops: &'static [TOp],
    pub outs: &'static [u8],
}

impl GateTemplate {
    /// Boolean gates this template spends per ternary gate.
    pub fn cost(&self) -> usize {
        self.ops.len()
    }
}

/// Template data. Derivation, writing (p, q) for an input pair: the output
/// zero-rail must light exactly when some selected basis row outputs 0, and
/// likewise for the one-rail; on valid pairs p|q is always 1, which is how
/// the constant gates make their rails.
pub fn template(kind: GateKind) -> &'static GateTemplate {
    use TOp::*;
    match kind {
        // plain wiring
        GateKind::I => &GateTemplate {
            ops: &[],
            outs: &[0, 1],
        },
        // crossed wiring
        GateKind::Not => &GateTemplate {
            ops: &[],
            outs: &[1, 0],
        },
        // (1, 1)
        GateKind::H => &GateTemplate {
            ops: &[Or(0, 1), Fanout(2)],
            outs: &[3, 4],
        },
        // (1, 0)
        GateKind::C0 => &GateTemplate {
            ops: &[Or(0, 1), Fanout(2), Not(4)],
            outs: &[3, 5],
        },
        // (0, 1)
        GateKind::C1 => &GateTemplate {
            ops: &[Or(0, 1), Fanout(2), Not(3)],
            outs: &[5, 4],
        },
        // (1, p)
        GateKind::S0 => &GateTemplate {
            ops: &[Fanout(0), Or(2, 1)],
            outs: &[4, 3],
        },
        // (1, q)
        GateKind::S0Bar => &GateTemplate {
            ops: &[Fanout(1), Or(0, 2)],
            outs: &[4, 3],
        },
        // (p, 1)
        GateKind::S1 => &GateTemplate {
            ops: &[Fanout(0), Or(2, 1)],
            outs: &[3, 4],
        },
        // (q, 1)
        GateKind::S1Bar => &GateTemplate {
            ops: &[Fanout(1), Or(0, 2)],
            outs: &[3, 4],
        },
        // duplicate both rails
        GateKind::Fanout => &GateTemplate {
            ops: &[Fanout(0), Fanout(1)],
            outs: &[2, 4, 3, 5],
        },
        // (a1|b1, a2&b2)
        GateKind::And => &GateTemplate {
            ops: &[Or(0, 2), And(1, 3)],
            outs: &[4, 5],
        },
        // (a1&b1, a2|b2)
        GateKind::Or => &GateTemplate {
            ops: &[And(0, 2), Or(1, 3)],
            outs: &[4, 5],
        },
        // ((a1&b1)|(a2&b2), (a2&b1)|(a1&b2))
        GateKind::Xor => &GateTemplate {
            ops: &[
                Fanout(0),
                Fanout(1),
                Fanout(2),
                Fanout(3),
                And(4, 8),
                And(6, 10),
                Or(12, 13),
                And(7, 9),
                And(5, 11),
                Or(15, 16),
            ],
            outs: &[14, 17],
        },
        // ((c1&a1)|(c2&b1), (c1&a2)|(c2&b2)) for control pair (c1, c2)
        GateKind::T => &GateTemplate {
            ops: &[
                Fanout(0),
                Fanout(1),
                And(6, 2),
                And(8, 4),
                Or(10, 11),
                And(7, 3),
                And(9, 5),
                Or(13, 14),
            ],
            outs: &[12, 15],
        },
    }
}

/// The per-gate expansion bound: no template spends more Boolean gates than
/// this per ternary gate.
pub fn max_template_cost() -> usize {
    GateKind::ALL
        .iter()
        .map(|&k| template(k).cost())
        .max()
        .unwrap()
}

/// Direct slot-machine simulation of one template.
fn simulate_template(kind: GateKind, input_rails: &[bool]) -> Vec<bool> {
    let t = template(kind);
    let mut slots: Vec<bool> = input_rails.to_vec();
    for op in t.ops {
        match *op {
            TOp::And(a, b) => slots.push(slots[a as usize] && slots[b as usize]),
            TOp::Or(a, b) => slots.push(slots[a as usize] || slots[b as usize]),
            TOp::Not(a) => slots.push(!slots[a as usize]),
            TOp::Fanout(a) => {
                let v = slots[a as usize];
                slots.push(v);
                slots.push(v);
            }
        }
    }
    t.outs.iter().map(|&s| slots[s as usize]).collect()
}

/// Exhaustive per-gate equivalence proof: on every valid rail encoding the
/// template reproduces the gate table and never emits an invalid pair.
/// Forced before the first compilation; a failure here aborts.
static TEMPLATES_VERIFIED: LazyLock<()> = LazyLock::new(|| {
    for kind in GateKind::ALL {
        for input in SbitWord::enumerate_all(kind.arity_in()) {
            let rails = simulate_template(kind, &encode(&input));
            let decoded = decode(&rails).unwrap_or_else(|e| {
                panic!("template {kind} emits an invalid pair at {input}: {e}")
            });
            let expected = gates::gate_apply(kind, &input).unwrap();
            assert_eq!(
                decoded, expected,
                "template {kind} disagrees with its gate table at {input}"
            );
        }
    }
});

/// A netlist over {AND, OR, NOT, FANOUT}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolCircuit {
    net: Netlist,
}

impl BoolCircuit {
    pub fn new(net: Netlist) -> Result<BoolCircuit> {
        if let Some(bad) = net
            .nodes()
            .iter()
            .position(|n| !BOOL_GATES.contains(&n.kind))
        {
            return Err(Error::Structure {
                node: Some(bad),
                reason: format!("gate {} is not Boolean", net.nodes()[bad].kind),
            });
        }
        Ok(BoolCircuit { net })
    }

    pub fn parse(src: &str) -> Result<BoolCircuit> {
        Ok(BoolCircuit {
            net: netlist::parse_with_gates(src, &BOOL_GATES)?,
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

    pub fn eval(&self, bits: &[bool]) -> Result<Vec<bool>> {
        self.net.eval_bool(bits)
    }
}

/// Where a rail binding sits in the source circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RailRole {
    Input,
    Internal,
    Output,
}

/// The two Boolean wires carrying one ternary wire.
#[derive(Debug, Clone)]
pub struct RailBinding {
    pub label: String,
    pub role: RailRole,
    pub zero_rail: WireId,
    pub one_rail: WireId,
}

/// A compiled circuit: the Boolean netlist plus the pairing of its rails
/// back to the source circuit's wires (used for validity instrumentation
/// and the pair metadata in the serialized form).
#[derive(Debug, Clone)]
pub struct DualRailCircuit {
    circuit: BoolCircuit,
    bindings: Vec<RailBinding>,
}

impl DualRailCircuit {
    pub fn circuit(&self) -> &BoolCircuit {
        &self.circuit
    }

    pub fn bindings(&self) -> &[RailBinding] {
        &self.bindings
    }

    pub fn gate_count(&self) -> usize {
        self.circuit.gate_count()
    }

    pub fn n_input_rails(&self) -> usize {
        self.circuit.n_inputs()
    }

    fn check_input(&self, rails: &[bool]) -> Result<()> {
        if rails.len() != self.circuit.n_inputs() {
            return Err(Error::LengthMismatch {
                left: rails.len(),
                right: self.circuit.n_inputs(),
            });
        }
        decode(rails)?; // validates pair shape
        Ok(())
    }

    /// Pure Boolean simulation in topological order; inputs must be a valid
    /// encoding.
    pub fn eval(&self, rails: &[bool]) -> Result<Vec<bool>> {
        self.check_input(rails)?;
        self.circuit.eval(rails)
    }

    /// Like `eval`, but also proves that no bound rail pair ever takes the
    /// invalid 00 value during this evaluation.
    pub fn eval_checked(&self, rails: &[bool]) -> Result<Vec<bool>> {
        self.check_input(rails)?;
        let values = self.circuit.net().eval_bool_wires(rails)?;
        for (i, binding) in self.bindings.iter().enumerate() {
            let z = values[binding.zero_rail.0 as usize];
            let o = values[binding.one_rail.0 as usize];
            if !z && !o {
                return Err(Error::InvalidRailPair { pair: i + 1 });
            }
        }
        Ok(self.circuit.net().read_outputs_bool(&values))
    }

    /// Serializes as a Boolean netlist preceded by `# pair <i> = <z> <o>`
    /// metadata lines for the input and output sbits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut index = 0usize;
        for binding in &self.bindings {
            if binding.role == RailRole::Internal {
                continue;
            }
            index += 1;
            out.push_str(&format!(
                "# pair {index} = {} {}\n",
                self.circuit.net().wire_name(binding.zero_rail),
                self.circuit.net().wire_name(binding.one_rail),
            ));
        }
        out.push_str(&self.circuit.to_text());
        out
    }
}

/// Compiles a ternary circuit to its dual-rail Boolean form, gate by gate.
pub fn compile_dualrail(c: &TernaryCircuit) -> Result<DualRailCircuit> {
    LazyLock::force(&TEMPLATES_VERIFIED);
    let net = c.net();
    let mut b = NetlistBuilder::new();
    let mut rails: Vec<Option<(WireId, WireId)>> = vec![None; net.n_wires()];
    for &w in net.inputs() {
        let name = net.wire_name(w);
        let z = b.input(format!("{name}_0"))?;
        let o = b.input(format!("{name}_1"))?;
        rails[w.0 as usize] = Some((z, o));
    }
    for node in net.nodes() {
        let mut slots: Vec<WireId> = Vec::new();
        for &w in &node.ins {
            let (z, o) = rails[w.0 as usize].expect("topological order");
            slots.push(z);
            slots.push(o);
        }
        let t = template(node.kind);
        for op in t.ops {
            match *op {
                TOp::And(x, y) => {
                    let out = b.gate1(GateKind::And, &[slots[x as usize], slots[y as usize]])?;
                    slots.push(out);
                }
                TOp::Or(x, y) => {
                    let out = b.gate1(GateKind::Or, &[slots[x as usize], slots[y as usize]])?;
                    slots.push(out);
                }
                TOp::Not(x) => {
                    let out = b.gate1(GateKind::Not, &[slots[x as usize]])?;
                    slots.push(out);
                }
                TOp::Fanout(x) => {
                    let (u, v) = b.fanout(slots[x as usize])?;
                    slots.push(u);
                    slots.push(v);
                }
            }
        }
        for (k, &w) in node.outs.iter().enumerate() {
            let z = slots[t.outs[2 * k] as usize];
            let o = slots[t.outs[2 * k + 1] as usize];
            rails[w.0 as usize] = Some((z, o));
        }
    }
    let mut outputs = Vec::with_capacity(2 * net.n_outputs());
    for &w in net.outputs() {
        let (z, o) = rails[w.0 as usize].expect("outputs are driven");
        outputs.push(z);
        outputs.push(o);
    }
    let bool_net = b.finish(outputs)?;

    let is_output = |w: WireId| net.outputs().contains(&w);
    let is_input = |w: WireId| net.inputs().contains(&w);
    let bindings = (0..net.n_wires())
        .map(|i| {
            let w = WireId(i as u32);
            let (z, o) = rails[i].expect("every wire is driven");
            RailBinding {
                label: net.wire_name(w).to_string(),
                role: if is_input(w) {
                    RailRole::Input
                } else if is_output(w) {
                    RailRole::Output
                } else {
                    RailRole::Internal
                },
                zero_rail: z,
                one_rail: o,
            }
        })
        .collect();
    Ok(DualRailCircuit {
        circuit: BoolCircuit::new(bool_net)?,
        bindings,
    })
}

/// Exhaustive co-simulation: on every ternary input,
/// decode(eval_dualrail(encode(w))) must equal the gate-local evaluation,
/// with no invalid pair anywhere in between.
pub fn verify_compiled(c: &TernaryCircuit, d: &DualRailCircuit, cap: usize) -> Result<()> {
    let n = c.n_inputs();
    gates::ensure_cap("dual-rail co-simulation", 3, n, cap)?;
    let total = 3u64.pow(n as u32);
    let mismatch = sweep::first_hit(total, |i| {
        let input = SbitWord::from_ternary_index(n, i);
        let ternary = c.eval(&input).expect("width matches");
        let rails = match d.eval_checked(&encode(&input)) {
            Ok(r) => r,
            Err(e) => return Some(format!("at {input}: {e}")),
        };
        match decode(&rails) {
            Ok(word) if word == ternary => None,
            Ok(word) => Some(format!(
                "at {input}: rails decode to {word}, gates give {ternary}"
            )),
            Err(e) => Some(format!("at {input}: {e}")),
        }
    });
    match mismatch {
        None => Ok(()),
        Some(reason) => Err(Error::Structure { node: None, reason }),
    }
}
