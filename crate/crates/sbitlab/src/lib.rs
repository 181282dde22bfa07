//! A laboratory for circuits over the three-valued alphabet {0, 1, s},
//! where `s` stands for the formal superposition of 0 and 1.
//!
//! Gates are defined by their rows on Boolean inputs and extended to the
//! full ternary domain by weak additivity: the value at a word is the sum of
//! the values over every Boolean word the input stands for. The crate
//! provides:
//!
//! * the value algebra and the extension operator ([`sbit`], [`gates`]);
//! * a netlist IR with gate-local evaluation, exhaustive weak-additivity
//!   checking and truth-table synthesis ([`circuit`], [`netlist`]);
//! * the classical-to-ternary lowering pass ([`mod@convert`]);
//! * single-query constant-vs-nonconstant classification and n-query marked
//!   point search ([`algorithms`]);
//! * dual-rail compilation down to pure Boolean netlists ([`dualrail`]).
//!
//! The exhaustive 3^n sweeps run on a rayon pool by default; build with
//! `--no-default-features` for a fully sequential crate.

pub mod algorithms;
pub mod circuit;
pub mod convert;
pub mod dualrail;
pub mod error;
pub mod gates;
pub mod netlist;
pub mod sbit;
pub mod sweep;

pub use circuit::{
    synthesize, synthesize_multi, NetlistBuilder, SynthGateSet, TernaryCircuit, Verdict,
};
pub use convert::{convert, is_convertible_by_rules, ClassicalCircuit, ConvertStatus};
pub use error::{Error, Result};
pub use gates::{check_weak_additivity, gate_apply, BasisTable, GateKind, WAdditivity};
pub use sbit::{BasisWordSet, Sbit, SbitWord};
