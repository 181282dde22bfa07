//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured facts. Run with
//!
//! ```text
//! cargo test --test acceptance -- --nocapture
//! ```

use std::collections::HashMap;
use std::process::Command;

use sbitlab::algorithms::{
    constant_circuit, deutsch_classify, oracle_circuit, projection_circuit, search, DJClass,
    VerifyOpts,
};
use sbitlab::circuit::{synthesize, NetlistBuilder, SynthGateSet, TernaryCircuit, WireId};
use sbitlab::convert::{convert, ClassicalCircuit, ConvertStatus};
use sbitlab::dualrail::{compile_dualrail, decode, encode, max_template_cost};
use sbitlab::gates::{check_weak_additivity, gate_apply, BasisTable, GateKind, WAdditivity};
use sbitlab::netlist::parse_ternary;
use sbitlab::sbit::{Sbit, SbitWord};

fn w(text: &str) -> SbitWord {
    text.parse().unwrap()
}

fn pass(criterion: usize, detail: &str) {
    println!("ACCEPTANCE {criterion:02}: PASS - {detail}");
}

/// The classical source of the worked conversion example:
/// (x1 OR NOT x2) AND (x3 AND NOT x3).
const WORKED_CLASSICAL: &str = "\
inputs x1 x2 x3
n2 = NOT x2
t1 = OR x1 n2
b1,b2 = FANOUT x3
nb = NOT b2
t2 = AND b1 nb
y = AND t1 t2
outputs y
";

fn lowered_example() -> TernaryCircuit {
    let report = convert(
        &ClassicalCircuit::parse(WORKED_CLASSICAL).unwrap(),
        false,
        12,
    )
    .unwrap();
    report
        .circuit
        .expect("the worked example converts by rules")
}

/// Expected full-domain tables, transcribed independently of the library's
/// own constants; inputs in lexicographic order over 0 < 1 < s.
fn expected_full_tables() -> Vec<(&'static str, Vec<(&'static str, &'static str)>)> {
    fn rows(
        inputs: &'static [&'static str],
        outputs: &'static [&'static str],
    ) -> Vec<(&'static str, &'static str)> {
        assert_eq!(inputs.len(), outputs.len());
        inputs
            .iter()
            .copied()
            .zip(outputs.iter().copied())
            .collect()
    }
    const IN1: &[&str] = &["0", "1", "s"];
    const IN2: &[&str] = &["00", "01", "0s", "10", "11", "1s", "s0", "s1", "ss"];
    const IN3: &[&str] = &[
        "000", "001", "00s", "010", "011", "01s", "0s0", "0s1", "0ss", "100", "101", "10s", "110",
        "111", "11s", "1s0", "1s1", "1ss", "s00", "s01", "s0s", "s10", "s11", "s1s", "ss0", "ss1",
        "sss",
    ];
    vec![
        ("I", rows(IN1, &["0", "1", "s"])),
        ("NOT", rows(IN1, &["1", "0", "s"])),
        ("H", rows(IN1, &["s", "s", "s"])),
        ("C0", rows(IN1, &["0", "0", "0"])),
        ("C1", rows(IN1, &["1", "1", "1"])),
        ("S0", rows(IN1, &["s", "0", "s"])),
        ("S0bar", rows(IN1, &["0", "s", "s"])),
        ("S1", rows(IN1, &["s", "1", "s"])),
        ("S1bar", rows(IN1, &["1", "s", "s"])),
        ("FANOUT", rows(IN1, &["00", "11", "ss"])),
        (
            "AND",
            rows(IN2, &["0", "0", "0", "0", "1", "s", "0", "s", "s"]),
        ),
        (
            "OR",
            rows(IN2, &["0", "1", "s", "1", "1", "1", "s", "1", "s"]),
        ),
        (
            "XOR",
            rows(IN2, &["0", "1", "s", "1", "0", "s", "s", "s", "s"]),
        ),
        (
            "T",
            rows(
                IN3,
                &[
                    "0", "0", "0", "1", "1", "1", "s", "s", "s", "0", "1", "s", "0", "1", "s", "0",
                    "1", "s", "0", "s", "s", "s", "1", "s", "s", "s", "s",
                ],
            ),
        ),
    ]
}

/// Criterion 1: `table --full` matches the reference tables row for row,
/// for every named gate.
#[test]
fn criterion_01_gate_table_conformance() {
    let exe = env!("CARGO_BIN_EXE_sbitlab");
    for (gate, expected) in expected_full_tables() {
        let output = Command::new(exe)
            .args(["table", gate, "--full"])
            .output()
            .expect("binary runs");
        assert!(output.status.success(), "table {gate} failed");
        let text = String::from_utf8(output.stdout).unwrap();
        let mut lines = text.lines();
        let header = lines.next().unwrap();
        assert!(
            header.starts_with("full "),
            "missing header for {gate}: {header}"
        );
        let rows: Vec<(&str, &str)> = lines
            .map(|l| {
                let mut t = l.split_whitespace();
                (t.next().unwrap(), t.next().unwrap())
            })
            .collect();
        assert_eq!(rows.len(), expected.len(), "row count for {gate}");
        for ((got_in, got_out), (want_in, want_out)) in rows.iter().zip(&expected) {
            assert_eq!(got_in, want_in, "row order for {gate}");
            assert_eq!(got_out, want_out, "{gate} at {want_in}");
        }
    }
    pass(1, "all 14 gate tables match the reference, row for row");
}

/// Criterion 2: sum laws exhaustively, and the expand/sum round trip for
/// every word up to width 8.
#[test]
fn criterion_02_algebra_laws() {
    let mut cases = 0usize;
    for a in Sbit::ALL {
        assert_eq!(a.add(a), a);
        cases += 1;
        for b in Sbit::ALL {
            assert_eq!(a.add(b), b.add(a));
            cases += 1;
            for c in Sbit::ALL {
                assert_eq!(a.add(b).add(c), a.add(b.add(c)));
                cases += 1;
            }
        }
    }
    let mut words = 0usize;
    for n in 1..=8 {
        for word in SbitWord::enumerate_all(n) {
            assert_eq!(word.expand().sum(), word, "round trip at {word}");
            words += 1;
        }
    }
    pass(
        2,
        &format!("{cases} law cases and {words} round-trip words, all exact"),
    );
}

/// Criterion 3: the additivity counterexample. The extension of the table
/// {00->0, 01->1, 10->0, 11->0} maps ss to s, the partial sum over {00, 11}
/// gives 0, and the completion that forces ss->0 is flagged with witness ss.
#[test]
fn criterion_03_counterexample_reproduction() {
    let t = BasisTable::new(2, 1, vec![w("0"), w("1"), w("0"), w("0")]).unwrap();
    let extended = t.extend(&w("ss")).unwrap();
    assert_eq!(extended, w("s"));
    let partial = t
        .row(&w("00"))
        .unwrap()
        .add(t.row(&w("11")).unwrap())
        .unwrap();
    assert_eq!(partial, w("0"));
    assert_ne!(extended, partial);

    let contradictory = |input: &SbitWord| {
        if input == &w("ss") {
            w("0")
        } else {
            t.extend(input).unwrap()
        }
    };
    let verdict = check_weak_additivity(2, contradictory, 12).unwrap();
    assert_eq!(verdict, WAdditivity::Violation(w("ss")));
    pass(3, "extension gives s, partial sum gives 0, witness is ss");
}

/// Criterion 4: the four width-1 circuits classify as constant-0,
/// constant-1, non-constant, non-constant, one query each.
#[test]
fn criterion_04_width1_classification() {
    let opts = VerifyOpts::default();
    let mut wire = NetlistBuilder::new();
    let x = wire.input("x").unwrap();
    let bare: TernaryCircuit = wire.finish(vec![x]).unwrap().into();
    let single = |kind: GateKind| -> TernaryCircuit {
        let mut b = NetlistBuilder::new();
        let x = b.input("x").unwrap();
        let y = b.gate1(kind, &[x]).unwrap();
        b.finish(vec![y]).unwrap().into()
    };
    let cases = [
        (single(GateKind::C0), DJClass::Constant0),
        (single(GateKind::C1), DJClass::Constant1),
        (bare, DJClass::NonConstant),
        (single(GateKind::Not), DJClass::NonConstant),
    ];
    for (oracle, expected) in cases {
        let result = deutsch_classify(&oracle, &opts).unwrap();
        assert_eq!(result.classification, expected);
        assert_eq!(result.queries, 1);
    }
    pass(4, "C0/C1/wire/NOT classify as expected with one query each");
}

/// Criterion 5: the constant and projection families classify correctly for
/// n = 2..10 with one query, and both gate counts grow by a fixed step.
#[test]
fn criterion_05_classification_scaling() {
    let opts = VerifyOpts {
        verify: false,
        cap: 12,
    };
    let mut constant_counts = Vec::new();
    let mut projection_counts = Vec::new();
    for n in 1..=10 {
        let zero = constant_circuit(n, Sbit::Zero).unwrap();
        let one = constant_circuit(n, Sbit::One).unwrap();
        let proj = projection_circuit(n, 1).unwrap();
        if n >= 2 {
            assert_eq!(
                deutsch_classify(&zero, &opts).unwrap().classification,
                DJClass::Constant0
            );
            assert_eq!(
                deutsch_classify(&one, &opts).unwrap().classification,
                DJClass::Constant1
            );
            assert_eq!(
                deutsch_classify(&proj, &opts).unwrap().classification,
                DJClass::NonConstant
            );
            assert_eq!(deutsch_classify(&zero, &opts).unwrap().queries, 1);
        }
        constant_counts.push(zero.gate_count());
        assert_eq!(one.gate_count(), zero.gate_count());
        projection_counts.push(proj.gate_count());
    }
    let diffs =
        |counts: &[usize]| -> Vec<usize> { counts.windows(2).map(|p| p[1] - p[0]).collect() };
    let cd = diffs(&constant_counts);
    let pd = diffs(&projection_counts);
    assert!(
        cd.iter().all(|&d| d == cd[0]),
        "constant family steps {cd:?}"
    );
    assert!(
        pd.iter().all(|&d| d == pd[0]),
        "projection family steps {pd:?}"
    );
    pass(
        5,
        &format!(
            "families classify correctly; gate counts step by {} and {}",
            cd[0], pd[0]
        ),
    );
}

/// Criterion 6: the search returns every marked element with exactly n
/// queries; exhaustive to n = 7, 100 sampled marked words for n = 8..10.
#[test]
fn criterion_06_search_completeness() {
    let opts = VerifyOpts {
        verify: false,
        cap: 12,
    };
    let mut runs = 0usize;
    for n in 1..=7usize {
        for a in SbitWord::enumerate_basis(n) {
            let result = search(&oracle_circuit(&a).unwrap(), &opts).unwrap();
            assert_eq!(result.found, a, "n={n}");
            assert_eq!(result.queries, n);
            runs += 1;
        }
    }
    // fixed multiplicative sampler: reproducible without an RNG
    for n in 8..=10usize {
        let mask = (1u64 << n) - 1;
        for k in 0..100u64 {
            let index = (k.wrapping_mul(2654435761).wrapping_add(12345)) & mask;
            let a = SbitWord::from_basis_index(n, index);
            let result = search(&oracle_circuit(&a).unwrap(), &opts).unwrap();
            assert_eq!(result.found, a, "n={n} k={k}");
            assert_eq!(result.queries, n);
            runs += 1;
        }
    }
    pass(
        6,
        &format!("{runs} searches all decoded their marked element"),
    );
}

/// Criterion 7: oracle circuits have exactly 2n-1 gates for n = 1..16.
#[test]
fn criterion_07_oracle_size() {
    for n in 1..=16usize {
        let a = SbitWord::from_basis_index(n, (0x5a5a5a5a5a5au64) & ((1 << n) - 1));
        assert_eq!(oracle_circuit(&a).unwrap().gate_count(), 2 * n - 1, "n={n}");
    }
    pass(7, "gate count is 2n-1 for every n in 1..16");
}

/// Criterion 8: the worked classical example converts by rules alone, keeps
/// its truth table on all 8 basis inputs, and the result is weakly additive
/// on all 27 ternary inputs.
#[test]
fn criterion_08_conversion_fidelity() {
    let source = ClassicalCircuit::parse(WORKED_CLASSICAL).unwrap();
    let report = convert(&source, false, 12).unwrap();
    assert_eq!(report.status, ConvertStatus::Converted);
    assert!(!report.fallback_used);
    let lowered = report.circuit.unwrap();
    assert_eq!(
        lowered.basis_table(12).unwrap(),
        source.truth_table(12).unwrap()
    );
    let verdict = lowered.check(12).unwrap();
    assert!(verdict.is_wadditive());
    pass(
        8,
        &format!(
            "converted by rules ({} rewrite, {} substitutions), table preserved, weakly additive",
            report.rewrites.len(),
            report.substitutions
        ),
    );
}

/// Splices a one-output netlist into a builder on the given input wires.
fn splice(b: &mut NetlistBuilder, sub: &TernaryCircuit, onto: &[WireId]) -> WireId {
    let net = sub.net();
    assert_eq!(net.n_outputs(), 1);
    let mut map: HashMap<WireId, WireId> = net
        .inputs()
        .iter()
        .copied()
        .zip(onto.iter().copied())
        .collect();
    for node in net.nodes() {
        let ins: Vec<WireId> = node.ins.iter().map(|w| map[w]).collect();
        let outs = b.gate(node.kind, &ins).unwrap();
        for (old, new) in node.outs.iter().zip(outs) {
            map.insert(*old, new);
        }
    }
    map[&net.outputs()[0]]
}

/// Criterion 9: 100 AND-joins of weakly-additive operators on disjoint
/// inputs and 100 NOT-wraps all stay weakly additive.
#[test]
fn criterion_09_composition_closure() {
    let mut joins = 0usize;
    let mut wraps = 0usize;
    for seed in 0..100u64 {
        let n = 1 + (seed as usize % 3);
        let m = 1 + ((seed / 7) as usize % 3);
        let g1 = synthesize(
            &BasisTable::random(n, 1, 20_000 + seed),
            SynthGateSet::Named,
        )
        .unwrap();
        let g2 = synthesize(
            &BasisTable::random(m, 1, 30_000 + seed),
            SynthGateSet::Named,
        )
        .unwrap();

        let mut b = NetlistBuilder::new();
        let ins = b.inputs_auto(n + m);
        let lhs = splice(&mut b, &g1, &ins[..n]);
        let rhs = splice(&mut b, &g2, &ins[n..]);
        let y = b.gate1(GateKind::And, &[lhs, rhs]).unwrap();
        let joined: TernaryCircuit = b.finish(vec![y]).unwrap().into();
        assert!(joined.check(12).unwrap().is_wadditive(), "join seed {seed}");
        joins += 1;

        let mut b = NetlistBuilder::new();
        let ins = b.inputs_auto(n);
        let inner = splice(&mut b, &g1, &ins);
        let y = b.gate1(GateKind::Not, &[inner]).unwrap();
        let wrapped: TernaryCircuit = b.finish(vec![y]).unwrap().into();
        assert!(
            wrapped.check(12).unwrap().is_wadditive(),
            "wrap seed {seed}"
        );
        wraps += 1;
    }
    pass(
        9,
        &format!("{joins} AND-joins and {wraps} NOT-wraps all weakly additive"),
    );
}

/// Criterion 10: synthesis from 50 random tables matches the extension on
/// every ternary input and passes the circuit check; the width-1 base case
/// reproduces the nine-gate catalogue and the composition identities.
#[test]
fn criterion_10_synthesis() {
    let mut synthesized = 0usize;
    for seed in 0..50u64 {
        let n = 1 + (seed as usize % 4);
        let t = BasisTable::random(n, 1, 40_000 + seed);
        for set in [SynthGateSet::Named, SynthGateSet::Primitive] {
            let c = synthesize(&t, set).unwrap();
            for input in SbitWord::enumerate_all(n) {
                assert_eq!(
                    c.eval(&input).unwrap(),
                    t.extend(&input).unwrap(),
                    "seed {seed} at {input}"
                );
            }
            assert!(c.check(12).unwrap().is_wadditive(), "seed {seed}");
        }
        synthesized += 1;
    }

    // nine-gate catalogue: each one-sbit table synthesizes to its own gate
    for kind in GateKind::ONE_SBIT {
        let c = synthesize(kind.basis_table(), SynthGateSet::Named).unwrap();
        assert_eq!(c.gate_count(), 1);
        assert_eq!(c.net().nodes()[0].kind, kind);
    }

    // the six composition identities, each on all three inputs
    let apply = |k: GateKind, x: Sbit| gate_apply(k, &SbitWord::new(vec![x])).unwrap().get(0);
    for x in Sbit::ALL {
        assert_eq!(
            apply(GateKind::C0, x),
            gate_apply(GateKind::And, &SbitWord::new(vec![x, Sbit::Zero]))
                .unwrap()
                .get(0)
        );
        assert_eq!(
            apply(GateKind::C1, x),
            gate_apply(GateKind::Or, &SbitWord::new(vec![x, Sbit::One]))
                .unwrap()
                .get(0)
        );
        assert_eq!(
            apply(GateKind::S0Bar, x),
            apply(GateKind::S0, apply(GateKind::Not, x))
        );
        assert_eq!(
            apply(GateKind::S1, x),
            apply(GateKind::Not, apply(GateKind::S0, x))
        );
        assert_eq!(
            apply(GateKind::S1Bar, x),
            apply(GateKind::S1, apply(GateKind::Not, x))
        );
        assert_eq!(
            apply(GateKind::H, x),
            apply(GateKind::S1Bar, apply(GateKind::S1, x))
        );
    }
    pass(
        10,
        &format!(
            "{synthesized} tables synthesized in both gate sets; catalogue and identities hold"
        ),
    );
}

/// Criterion 11: dual-rail compilation is exact over the whole corpus, no
/// rail pair ever goes invalid, and the Boolean size stays within one
/// reported constant times the ternary size.
#[test]
fn criterion_11_dualrail_equivalence() {
    let mut corpus: Vec<TernaryCircuit> = Vec::new();
    // every single-gate circuit
    for kind in GateKind::ALL {
        let mut b = NetlistBuilder::new();
        let ins = b.inputs_auto(kind.arity_in());
        let outs = b.gate(kind, &ins).unwrap();
        corpus.push(b.finish(outs).unwrap().into());
    }
    // the lowered worked example
    corpus.push(lowered_example());
    // every oracle up to width 5
    for n in 1..=5usize {
        for a in SbitWord::enumerate_basis(n) {
            corpus.push(oracle_circuit(&a).unwrap());
        }
    }
    // 20 random synthesized circuits up to width 4
    for seed in 0..20u64 {
        let n = 1 + (seed as usize % 4);
        corpus.push(
            synthesize(
                &BasisTable::random(n, 1, 50_000 + seed),
                SynthGateSet::Named,
            )
            .unwrap(),
        );
    }

    let k = max_template_cost();
    let mut checked = 0usize;
    for c in &corpus {
        let d = compile_dualrail(c).unwrap();
        assert!(
            d.gate_count() <= k * c.gate_count(),
            "expansion {} > {k} x {}",
            d.gate_count(),
            c.gate_count()
        );
        for input in SbitWord::enumerate_all(c.n_inputs()) {
            // eval_checked also proves no bound pair is ever 00
            let rails = d.eval_checked(&encode(&input)).unwrap();
            assert_eq!(
                decode(&rails).unwrap(),
                c.eval(&input).unwrap(),
                "mismatch at {input}"
            );
            checked += 1;
        }
    }
    pass(
        11,
        &format!(
            "{} circuits, {checked} co-simulated inputs, expansion constant k = {k}",
            corpus.len()
        ),
    );
}

/// The lowered worked example parses from its own serialized text and stays
/// checkable end to end (exercises the text interfaces the other criteria
/// rely on).
#[test]
fn worked_example_round_trips_through_text() {
    let lowered = lowered_example();
    let parsed = parse_ternary(&lowered.to_text()).unwrap();
    assert_eq!(parsed.to_text(), lowered.to_text());
    assert!(parsed.check(12).unwrap().is_wadditive());
}
