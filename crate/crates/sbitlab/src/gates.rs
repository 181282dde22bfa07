//! The named gate catalogue and the weak-additive extension operator.
//!
//! Gates are defined by their rows on basis inputs; the extension rule
//!
//! ```text
//! Ext(t)(w) = sum over x in expand(w) of t(x)
//! ```
//!
//! turns any basis table into a total function on ternary words. Each named
//! gate's full-domain table is generated from its basis rows through `extend`
//! and cross-checked, on first use, against an independently hard-coded copy
//! of the full table; any discrepancy aborts immediately.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sbit::{Sbit, SbitWord};
use crate::sweep;

/// Default width cap for exhaustive sweeps: 3^12 is roughly half a million
/// probes, still comfortable on one machine.
pub const DEFAULT_CAP: usize = 12;

/// The named weakly-additive gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    I,
    Not,
    H,
    C0,
    C1,
    S0,
    S0Bar,
    S1,
    S1Bar,
    And,
    Or,
    Xor,
    Fanout,
    T,
}

impl GateKind {
    pub const ALL: [GateKind; 14] = [
        GateKind::I,
        GateKind::Not,
        GateKind::H,
        GateKind::C0,
        GateKind::C1,
        GateKind::S0,
        GateKind::S0Bar,
        GateKind::S1,
        GateKind::S1Bar,
        GateKind::And,
        GateKind::Or,
        GateKind::Xor,
        GateKind::Fanout,
        GateKind::T,
    ];

    /// The nine one-sbit gates, i.e. every basis table from one sbit to one.
    pub const ONE_SBIT: [GateKind; 9] = [
        GateKind::I,
        GateKind::Not,
        GateKind::H,
        GateKind::C0,
        GateKind::C1,
        GateKind::S0,
        GateKind::S0Bar,
        GateKind::S1,
        GateKind::S1Bar,
    ];

    pub fn arity_in(self) -> usize {
        match self {
            GateKind::And | GateKind::Or | GateKind::Xor => 2,
            GateKind::T => 3,
            _ => 1,
        }
    }

    pub fn arity_out(self) -> usize {
        match self {
            GateKind::Fanout => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::I => "I",
            GateKind::Not => "NOT",
            GateKind::H => "H",
            GateKind::C0 => "C0",
            GateKind::C1 => "C1",
            GateKind::S0 => "S0",
            GateKind::S0Bar => "S0bar",
            GateKind::S1 => "S1",
            GateKind::S1Bar => "S1bar",
            GateKind::And => "AND",
            GateKind::Or => "OR",
            GateKind::Xor => "XOR",
            GateKind::Fanout => "FANOUT",
            GateKind::T => "T",
        }
    }

    pub fn from_name(name: &str) -> Option<GateKind> {
        GateKind::ALL.into_iter().find(|g| g.name() == name)
    }

    /// Basis-row definition of this gate.
    pub fn basis_table(self) -> &'static BasisTable {
        &tables()[gate_slot(self)].basis
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Total map from the 2^n_in basis words to output words; outputs may
/// contain `s`. Keys are implicit: row i belongs to the i-th basis word in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisTable {
    n_in: usize,
    n_out: usize,
    rows: Vec<SbitWord>,
}

impl BasisTable {
    /// Builds a table from rows listed in lexicographic key order.
    pub fn new(n_in: usize, n_out: usize, rows: Vec<SbitWord>) -> Result<BasisTable> {
        if n_in == 0 || n_out == 0 {
            return Err(Error::BadTable {
                reason: "widths must be at least 1".into(),
            });
        }
        if rows.len() != 1 << n_in {
            return Err(Error::BadTable {
                reason: format!("expected {} rows, got {}", 1u64 << n_in, rows.len()),
            });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n_out) {
            return Err(Error::BadTable {
                reason: format!("row value {bad} does not have width {n_out}"),
            });
        }
        Ok(BasisTable { n_in, n_out, rows })
    }

    /// Builds a table from `(key, value)` pairs in any order; keys must be
    /// exactly the basis words of width `n_in`.
    pub fn from_pairs(
        n_in: usize,
        n_out: usize,
        pairs: impl IntoIterator<Item = (SbitWord, SbitWord)>,
    ) -> Result<BasisTable> {
        let mut rows: Vec<Option<SbitWord>> = vec![None; 1usize << n_in];
        for (key, value) in pairs {
            if key.len() != n_in {
                return Err(Error::BadTable {
                    reason: format!("key {key} does not have width {n_in}"),
                });
            }
            let idx = key.basis_index().ok_or(Error::NonBasisWord {
                word: key.to_string(),
            })? as usize;
            if rows[idx].replace(value).is_some() {
                return Err(Error::BadTable {
                    reason: format!("duplicate row for {key}"),
                });
            }
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                r.ok_or_else(|| Error::BadTable {
                    reason: format!(
                        "missing row for {}",
                        SbitWord::from_basis_index(n_in, i as u64)
                    ),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        BasisTable::new(n_in, n_out, rows)
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    /// Output for a basis input.
    pub fn row(&self, key: &SbitWord) -> Result<&SbitWord> {
        if key.len() != self.n_in {
            return Err(Error::LengthMismatch {
                left: key.len(),
                right: self.n_in,
            });
        }
        let idx = key.basis_index().ok_or(Error::NonBasisWord {
            word: key.to_string(),
        })?;
        Ok(&self.rows[idx as usize])
    }

    pub fn rows(&self) -> impl Iterator<Item = (SbitWord, &SbitWord)> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, out)| (SbitWord::from_basis_index(self.n_in, i as u64), out))
    }

    /// True when every output is a basis word.
    pub fn is_boolean(&self) -> bool {
        self.rows.iter().all(|r| r.is_basis())
    }

    /// The weak-additive extension: folds the row values over the maximal
    /// set of the input. On basis inputs this is exactly the table row.
    pub fn extend(&self, input: &SbitWord) -> Result<SbitWord> {
        if input.len() != self.n_in {
            return Err(Error::LengthMismatch {
                left: input.len(),
                right: self.n_in,
            });
        }
        let mut acc: Option<SbitWord> = None;
        for x in input.expand_iter() {
            let row = &self.rows[x.basis_index().expect("expansion is basis") as usize];
            acc = Some(match acc {
                None => row.clone(),
                Some(a) => a.add(row).expect("rows share one width"),
            });
            if let Some(a) = &acc {
                if a.iter().all(|s| s == Sbit::S) {
                    break; // all-s is absorbing, the rest of the fold is fixed
                }
            }
        }
        Ok(acc.expect("maximal sets are nonempty"))
    }

    /// Single-output table carrying column `j` (0-based) of every row.
    pub fn project(&self, j: usize) -> Result<BasisTable> {
        if j >= self.n_out {
            return Err(Error::BadTable {
                reason: format!("no output column {j} in a width-{} table", self.n_out),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| SbitWord::new(vec![r.get(j)]))
            .collect();
        BasisTable::new(self.n_in, 1, rows)
    }

    /// Fixes the first input symbol to `bit`, halving the domain. This is the
    /// restriction used by the synthesis recursion.
    pub fn fix_first(&self, bit: Sbit) -> Result<BasisTable> {
        assert!(bit.is_basis(), "only basis restrictions exist");
        if self.n_in < 2 {
            return Err(Error::BadTable {
                reason: "cannot restrict a one-sbit table".into(),
            });
        }
        let half = self.rows.len() / 2;
        let rows = match bit {
            Sbit::Zero => self.rows[..half].to_vec(),
            _ => self.rows[half..].to_vec(),
        };
        BasisTable::new(self.n_in - 1, self.n_out, rows)
    }

    /// Deterministic pseudo-random table; every row value is drawn uniformly
    /// from the 3^n_out words.
    pub fn random(n_in: usize, n_out: usize, seed: u64) -> BasisTable {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = (0..1u64 << n_in)
            .map(|_| {
                SbitWord::new(
                    (0..n_out)
                        .map(|_| match rng.random_range(0..3u8) {
                            0 => Sbit::Zero,
                            1 => Sbit::One,
                            _ => Sbit::S,
                        })
                        .collect(),
                )
            })
            .collect();
        BasisTable::new(n_in, n_out, rows).expect("generated rows are well formed")
    }

    /// Serializes to the table file format: a `basis n_in n_out` header, then
    /// one `<key> <value>` line per row in lexicographic key order.
    pub fn to_text(&self) -> String {
        let mut out = format!("basis {} {}\n", self.n_in, self.n_out);
        for (key, value) in self.rows() {
            out.push_str(&format!("{key} {value}\n"));
        }
        out
    }
}

impl FromStr for BasisTable {
    type Err = Error;

    fn from_str(text: &str) -> Result<BasisTable> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line_no, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            reason: "empty table file".into(),
        })?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("basis") {
            return Err(Error::Parse {
                line: line_no,
                reason: "expected header `basis <n_in> <n_out>`".into(),
            });
        }
        let parse_width = |tok: Option<&str>| -> Result<usize> {
            tok.and_then(|t| t.parse().ok()).ok_or(Error::Parse {
                line: line_no,
                reason: "expected header `basis <n_in> <n_out>`".into(),
            })
        };
        let n_in = parse_width(parts.next())?;
        let n_out = parse_width(parts.next())?;
        let mut pairs = Vec::new();
        for (line, body) in lines {
            let mut toks = body.split_whitespace();
            let key: SbitWord = toks
                .next()
                .ok_or(Error::Parse {
                    line,
                    reason: "expected `<key> <value>`".into(),
                })?
                .parse()
                .map_err(|e: Error| Error::Parse {
                    line,
                    reason: e.to_string(),
                })?;
            let value: SbitWord = toks
                .next()
                .ok_or(Error::Parse {
                    line,
                    reason: "expected `<key> <value>`".into(),
                })?
                .parse()
                .map_err(|e: Error| Error::Parse {
                    line,
                    reason: e.to_string(),
                })?;
            if toks.next().is_some() {
                return Err(Error::Parse {
                    line,
                    reason: "trailing tokens after row".into(),
                });
            }
            pairs.push((key, value));
        }
        BasisTable::from_pairs(n_in, n_out, pairs)
    }
}

/// Full-domain table of a named gate, indexed by ternary word index.
#[derive(Debug, Clone)]
pub struct FullTable {
    n_in: usize,
    rows: Vec<SbitWord>,
}

impl FullTable {
    pub fn lookup(&self, input: &SbitWord) -> &SbitWord {
        &self.rows[input.ternary_index() as usize]
    }

    pub fn rows(&self) -> impl Iterator<Item = (SbitWord, &SbitWord)> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, out)| (SbitWord::from_ternary_index(self.n_in, i as u64), out))
    }
}

struct GateData {
    basis: BasisTable,
    full: FullTable,
}

fn gate_slot(kind: GateKind) -> usize {
    GateKind::ALL.iter().position(|g| *g == kind).unwrap()
}

/// Basis rows for every named gate, in lexicographic key order.
const BASIS_ROWS: [(&str, &[&str]); 14] = [
    ("I", &["0", "1"]),
    ("NOT", &["1", "0"]),
    ("H", &["s", "s"]),
    ("C0", &["0", "0"]),
    ("C1", &["1", "1"]),
    ("S0", &["s", "0"]),
    ("S0bar", &["0", "s"]),
    ("S1", &["s", "1"]),
    ("S1bar", &["1", "s"]),
    ("AND", &["0", "0", "0", "1"]),
    ("OR", &["0", "1", "1", "1"]),
    ("XOR", &["0", "1", "1", "0"]),
    ("FANOUT", &["00", "11"]),
    ("T", &["0", "0", "1", "1", "0", "1", "0", "1"]),
];

/// Independently hard-coded full-domain rows (all 3^n inputs in
/// lexicographic order). The generated tables must match these exactly.
const FULL_ROWS: [(&str, &[&str]); 14] = [
    ("I", &["0", "1", "s"]),
    ("NOT", &["1", "0", "s"]),
    ("H", &["s", "s", "s"]),
    ("C0", &["0", "0", "0"]),
    ("C1", &["1", "1", "1"]),
    ("S0", &["s", "0", "s"]),
    ("S0bar", &["0", "s", "s"]),
    ("S1", &["s", "1", "s"]),
    ("S1bar", &["1", "s", "s"]),
    ("AND", &["0", "0", "0", "0", "1", "s", "0", "s", "s"]),
    ("OR", &["0", "1", "s", "1", "1", "1", "s", "1", "s"]),
    ("XOR", &["0", "1", "s", "1", "0", "s", "s", "s", "s"]),
    ("FANOUT", &["00", "11", "ss"]),
    (
        "T",
        &[
            "0", "0", "0", "1", "1", "1", "s", "s", "s", // control 0: first target
            "0", "1", "s", "0", "1", "s", "0", "1", "s", // control 1: second target
            "0", "s", "s", "s", "1", "s", "s", "s", "s", // control s: sum of targets
        ],
    ),
];

static TABLES: LazyLock<Vec<GateData>> = LazyLock::new(|| {
    GateKind::ALL
        .iter()
        .map(|&kind| {
            let rows = BASIS_ROWS[gate_slot(kind)].1;
            debug_assert_eq!(BASIS_ROWS[gate_slot(kind)].0, kind.name());
            let basis = BasisTable::new(
                kind.arity_in(),
                kind.arity_out(),
                rows.iter().map(|r| r.parse().unwrap()).collect(),
            )
            .expect("built-in basis rows are well formed");
            let full_rows: Vec<SbitWord> = SbitWord::enumerate_all(kind.arity_in())
                .map(|w| basis.extend(&w).unwrap())
                .collect();
            let (check_name, check_rows) = FULL_ROWS[gate_slot(kind)];
            assert_eq!(check_name, kind.name());
            for (i, expected) in check_rows.iter().enumerate() {
                let expected: SbitWord = expected.parse().unwrap();
                assert_eq!(
                    full_rows[i],
                    expected,
                    "{} disagrees with its reference table at {}",
                    kind,
                    SbitWord::from_ternary_index(kind.arity_in(), i as u64)
                );
            }
            GateData {
                basis,
                full: FullTable {
                    n_in: kind.arity_in(),
                    rows: full_rows,
                },
            }
        })
        .collect()
});

fn tables() -> &'static [GateData] {
    &TABLES
}

/// Full-domain table of a named gate.
pub fn gate_table(kind: GateKind) -> &'static FullTable {
    &tables()[gate_slot(kind)].full
}

/// Applies a named gate to a ternary input word.
pub fn gate_apply(kind: GateKind, input: &SbitWord) -> Result<SbitWord> {
    if input.len() != kind.arity_in() {
        return Err(Error::ArityMismatch {
            gate: kind,
            expected: kind.arity_in(),
            got: input.len(),
        });
    }
    Ok(gate_table(kind).lookup(input).clone())
}

/// Boolean reading of the classical gates, computed with native boolean
/// operators. Deliberately independent of the ternary tables so it can serve
/// as the second route in equivalence checks.
pub fn bool_apply(kind: GateKind, ins: &[bool]) -> Option<Vec<bool>> {
    Some(match (kind, ins) {
        (GateKind::And, [a, b]) => vec![*a && *b],
        (GateKind::Or, [a, b]) => vec![*a || *b],
        (GateKind::Xor, [a, b]) => vec![*a ^ *b],
        (GateKind::Not, [a]) => vec![!*a],
        (GateKind::Fanout, [a]) => vec![*a, *a],
        _ => return None,
    })
}

/// Outcome of a weak-additivity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WAdditivity {
    WAdditive,
    /// Lexicographically least input on which the function disagrees with
    /// the extension of its own basis restriction.
    Violation(SbitWord),
}

impl WAdditivity {
    pub fn is_wadditive(&self) -> bool {
        matches!(self, WAdditivity::WAdditive)
    }
}

/// Checks `f` (total on the 3^n_in words) against the weak-additive
/// extension of its basis restriction. Output width is inferred from the
/// all-zero row; every output position must agree for every input.
pub fn check_weak_additivity<F>(n_in: usize, f: F, cap: usize) -> Result<WAdditivity>
where
    F: Fn(&SbitWord) -> SbitWord + Sync,
{
    ensure_cap("weak-additivity check", 3, n_in, cap)?;
    let n_out = f(&SbitWord::all_zero(n_in)).len();
    let rows = SbitWord::enumerate_basis(n_in)
        .map(|x| {
            let out = f(&x);
            if out.len() != n_out {
                return Err(Error::BadTable {
                    reason: format!(
                        "function returns width {} at {x} but width {n_out} elsewhere",
                        out.len()
                    ),
                });
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let restriction = BasisTable::new(n_in, n_out, rows)?;
    let total = 3u64.pow(n_in as u32);
    let hit = sweep::first_hit(total, |i| {
        let w = SbitWord::from_ternary_index(n_in, i);
        let expected = restriction.extend(&w).expect("width checked above");
        if f(&w) != expected {
            Some(w)
        } else {
            None
        }
    });
    Ok(match hit {
        Some(w) => WAdditivity::Violation(w),
        None => WAdditivity::WAdditive,
    })
}

/// Errors out when an exhaustive sweep of `base^width` probes would exceed
/// the cap on `width`.
pub fn ensure_cap(what: &'static str, base: u32, width: usize, cap: usize) -> Result<()> {
    if width > cap {
        return Err(Error::CapExceeded {
            what,
            base,
            width,
            evals: (base as u128).pow(width as u32),
            cap,
        });
    }
    Ok(())
}
