//! Query algorithms over weakly-additive oracles, and the circuit families
//! they are demonstrated on.
//!
//! Both drivers exploit the same trick: feeding `s` into a weakly-additive
//! circuit evaluates the whole subcube in one pass. The classifier probes the
//! all-s word once; the search probes n words, each pinning one position to
//! 0, and reads the marked element off the three-valued answers.

use crate::circuit::{NetlistBuilder, TernaryCircuit, Verdict};
use crate::error::{Error, Result};
use crate::gates::GateKind;
use crate::sbit::{Sbit, SbitWord};

/// How much checking a driver performs before trusting its oracle.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOpts {
    /// Verify preconditions (weak additivity; point-function shape for the
    /// search) before running. Costs an exhaustive sweep.
    pub verify: bool,
    /// Width cap for those sweeps.
    pub cap: usize,
}

impl Default for VerifyOpts {
    fn default() -> VerifyOpts {
        VerifyOpts {
            verify: true,
            cap: crate::gates::DEFAULT_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DJClass {
    Constant0,
    Constant1,
    NonConstant,
}

impl DJClass {
    pub fn token(self) -> &'static str {
        match self {
            DJClass::Constant0 => "CONSTANT0",
            DJClass::Constant1 => "CONSTANT1",
            DJClass::NonConstant => "NONCONSTANT",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DJResult {
    pub classification: DJClass,
    /// Always exactly one oracle evaluation.
    pub queries: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    /// The decoded marked element.
    pub found: SbitWord,
    /// Always exactly the word length.
    pub queries: usize,
    /// Oracle outputs in probe order (position n first, then n-1, ...).
    pub per_bit_outputs: Vec<Sbit>,
}

fn ensure_single_output(oracle: &TernaryCircuit) -> Result<()> {
    if oracle.n_outputs() != 1 {
        return Err(Error::MultiOutputOracle {
            outputs: oracle.n_outputs(),
        });
    }
    Ok(())
}

fn verify_wadditive(oracle: &TernaryCircuit, cap: usize) -> Result<Verdict> {
    let verdict = oracle.check(cap)?;
    if let Some(witness) = verdict.witness() {
        return Err(Error::NotWAdditive {
            witness: witness.to_string(),
        });
    }
    Ok(verdict)
}

/// Decides whether the Boolean function behind `oracle` is constant-0,
/// constant-1 or neither, with a single evaluation: the all-s input stands
/// for every basis word at once, so the answer is 0 or 1 exactly when all
/// rows agree.
pub fn deutsch_classify(oracle: &TernaryCircuit, opts: &VerifyOpts) -> Result<DJResult> {
    ensure_single_output(oracle)?;
    if opts.verify {
        verify_wadditive(oracle, opts.cap)?;
    }
    let probe = SbitWord::all_s(oracle.n_inputs());
    let out = oracle.eval(&probe)?.get(0);
    let classification = match out {
        Sbit::Zero => DJClass::Constant0,
        Sbit::One => DJClass::Constant1,
        Sbit::S => DJClass::NonConstant,
    };
    Ok(DJResult {
        classification,
        queries: 1,
    })
}

/// Locates the unique marked element of a point-function oracle with exactly
/// n evaluations. Probe j pins position j to 0 and leaves every other
/// position at s; the answer decodes as
///
/// * `s`: the probed half contains the marked element, so bit j is 0;
/// * `0`: it does not, so bit j is 1;
/// * `1`: the probe hit the marked element exactly (only possible when the
///   probe has no s position, i.e. n = 1), so bit j is 0.
pub fn search(oracle: &TernaryCircuit, opts: &VerifyOpts) -> Result<SearchResult> {
    ensure_single_output(oracle)?;
    let n = oracle.n_inputs();
    if opts.verify {
        verify_wadditive(oracle, opts.cap)?;
        let table = oracle.basis_table(opts.cap)?;
        let ones = table
            .rows()
            .filter(|(_, out)| out.get(0) == Sbit::One)
            .count();
        let clean = table.rows().all(|(_, out)| out.get(0) != Sbit::S);
        if ones != 1 || !clean {
            return Err(Error::NotPointFunction {
                reason: format!("expected exactly one marked basis word, table has {ones}"),
            });
        }
    }
    let mut bits = vec![Sbit::Zero; n];
    let mut per_bit_outputs = Vec::with_capacity(n);
    for j in (0..n).rev() {
        let mut probe = vec![Sbit::S; n];
        probe[j] = Sbit::Zero;
        let out = oracle.eval(&SbitWord::new(probe))?.get(0);
        per_bit_outputs.push(out);
        bits[j] = match out {
            Sbit::S | Sbit::One => Sbit::Zero,
            Sbit::Zero => Sbit::One,
        };
    }
    let found = SbitWord::new(bits);
    // sanity: the oracle must mark the decoded word
    if oracle.eval(&found)?.get(0) != Sbit::One {
        return Err(Error::OracleInconsistent {
            decoded: found.to_string(),
        });
    }
    Ok(SearchResult {
        found,
        queries: n,
        per_bit_outputs,
    })
}

/// The point-function oracle: a unary gate per input (identity where the
/// marked bit is 1, NOT where it is 0) feeding a left-to-right AND chain;
/// 2n-1 gates in total.
pub fn oracle_circuit(marked: &SbitWord) -> Result<TernaryCircuit> {
    if !marked.is_basis() {
        return Err(Error::NonBasisWord {
            word: marked.to_string(),
        });
    }
    let n = marked.len();
    let mut b = NetlistBuilder::new();
    let ins = b.inputs_auto(n);
    let mut stages = Vec::with_capacity(n);
    for (i, wire) in ins.iter().enumerate() {
        let kind = if marked.get(i) == Sbit::One {
            GateKind::I
        } else {
            GateKind::Not
        };
        stages.push(b.gate1(kind, &[*wire])?);
    }
    let mut acc = stages[0];
    for &stage in &stages[1..] {
        acc = b.gate1(GateKind::And, &[acc, stage])?;
    }
    Ok(b.finish(vec![acc])?.into())
}

/// Constant function of the given width: a constant gate per input joined by
/// an AND chain; 2n-1 gates.
pub fn constant_circuit(n: usize, value: Sbit) -> Result<TernaryCircuit> {
    let kind = match value {
        Sbit::Zero => GateKind::C0,
        Sbit::One => GateKind::C1,
        Sbit::S => {
            return Err(Error::WordParse {
                text: "s".into(),
                reason: "constant circuits take a basis value",
            })
        }
    };
    assert!(n >= 1);
    let mut b = NetlistBuilder::new();
    let ins = b.inputs_auto(n);
    let mut acc = b.gate1(kind, &[ins[0]])?;
    for &wire in &ins[1..] {
        let stage = b.gate1(kind, &[wire])?;
        acc = b.gate1(GateKind::And, &[acc, stage])?;
    }
    Ok(b.finish(vec![acc])?.into())
}

/// Projection onto input j (1-based): the j-th input ORed with an AND chain
/// of constant-0 gates over every other input; 2n-2 gates, a bare wire when
/// n = 1.
pub fn projection_circuit(n: usize, j: usize) -> Result<TernaryCircuit> {
    if j == 0 || j > n {
        return Err(Error::Structure {
            node: None,
            reason: format!("projection index {j} out of range 1..={n}"),
        });
    }
    let mut b = NetlistBuilder::new();
    let ins = b.inputs_auto(n);
    let picked = ins[j - 1];
    if n == 1 {
        return Ok(b.finish(vec![picked])?.into());
    }
    let mut rest = ins
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != j - 1)
        .map(|(_, w)| *w);
    let first = rest.next().expect("n >= 2");
    let mut acc = b.gate1(GateKind::C0, &[first])?;
    for wire in rest {
        let stage = b.gate1(GateKind::C0, &[wire])?;
        acc = b.gate1(GateKind::And, &[acc, stage])?;
    }
    let out = b.gate1(GateKind::Or, &[picked, acc])?;
    Ok(b.finish(vec![out])?.into())
}
