//! Command-line front end: evaluation, table dumps, weak-additivity checks,
//! lowering, synthesis, the query algorithm drivers, circuit generators and
//! dual-rail compilation.
//!
//! Results go to stdout, diagnostics and the conversion log to stderr.
//! Exit codes: 0 success, 1 domain verdict failures (violations, not
//! convertible, inconsistent oracles), 2 usage or structural errors, 3
//! resource caps.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sbitlab::algorithms::{self, VerifyOpts};
use sbitlab::circuit::{synthesize_multi, SynthGateSet, TernaryCircuit};
use sbitlab::convert::{convert, is_convertible_by_rules, ClassicalCircuit, ConvertStatus};
use sbitlab::dualrail::{self, BoolCircuit};
use sbitlab::error::Error;
use sbitlab::gates::{self, BasisTable, GateKind};
use sbitlab::netlist;
use sbitlab::sbit::{Sbit, SbitWord};

#[derive(Parser)]
#[command(name = "sbitlab", version, about = "Three-valued circuit laboratory")]
struct Cli {
    /// Maximum input width for exhaustive sweeps (3^n or 2^n loops)
    #[arg(long, global = true, default_value_t = gates::DEFAULT_CAP, env = "SBITLAB_CAP")]
    cap: usize,

    /// Seed for the deterministic generators
    #[arg(long, global = true, default_value_t = 0, env = "SBITLAB_SEED")]
    seed: u64,

    /// Let convert fall back to exponential truth-table synthesis
    #[arg(long, global = true, env = "SBITLAB_ALLOW_FALLBACK")]
    allow_fallback: bool,

    /// Skip post-hoc verification sweeps
    #[arg(long, global = true, env = "SBITLAB_SKIP_VERIFY")]
    skip_verify: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    /// Rows on the 2^n basis words
    Basis,
    /// Rows on all 3^n words
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a ternary netlist on a word
    Eval {
        netlist: PathBuf,
        /// Input word over [01s]
        word: String,
    },
    /// Print the table of a named gate or of a netlist
    Table {
        /// A gate name (I, NOT, H, C0, C1, S0, S0bar, S1, S1bar, AND, OR,
        /// XOR, FANOUT, T) or a netlist path
        target: String,
        #[arg(long, value_enum, env = "SBITLAB_FORMAT")]
        format: Option<TableFormat>,
        /// Shorthand for --format full
        #[arg(long)]
        full: bool,
    },
    /// Check a ternary netlist for weak additivity
    CheckWadd { netlist: PathBuf },
    /// Lower a classical netlist to a ternary netlist
    Convert { netlist: PathBuf },
    /// Synthesize a circuit from a basis table file
    Synth {
        table: PathBuf,
        /// Restrict one-sbit cases to the universal set {NOT, S0, FANOUT,
        /// AND, OR, T} (constants stay C0/C1)
        #[arg(long)]
        primitive_set: bool,
    },
    /// Classify the oracle as constant or non-constant with one query
    Dj { netlist: PathBuf },
    /// Locate the marked element of a point-function oracle with n queries
    Search {
        netlist: PathBuf,
        /// Expected width; must match the netlist input count
        #[arg(long)]
        n: Option<usize>,
    },
    /// Write the oracle netlist marking a basis word
    OracleGen {
        /// The marked word, over [01]
        word: String,
    },
    /// Generate circuit families
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Compile a ternary netlist to a dual-rail Boolean netlist
    Dualrail { netlist: PathBuf },
    /// Simulate a dual-rail netlist on a rail bitstring
    EvalDualrail {
        netlist: PathBuf,
        /// One bit per rail, two rails per sbit, e.g. 0111 for word 1s
        bits: String,
    },
    /// Emit a pseudo-random basis table (seeded, reproducible)
    RandomWadd {
        #[arg(long)]
        n_in: usize,
        #[arg(long, default_value_t = 1)]
        n_out: usize,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// Constant function: a C0/C1 per input joined by an AND chain
    Constant {
        #[arg(long)]
        n: usize,
        /// 0 or 1
        #[arg(long)]
        value: String,
    },
    /// Projection onto input j
    Projection {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Structure {
        node: None,
        reason: format!("cannot read {}: {e}", path.display()),
    })
}

fn parse_word(text: &str) -> Result<SbitWord, Error> {
    text.parse()
}

/// Runs a verification sweep unless it was skipped; a cap overflow only
/// downgrades to a diagnostic, the artifact is still written.
fn verify_or_note(what: &str, result: Result<(), Error>) -> Result<(), Error> {
    match result {
        Ok(()) => Ok(()),
        Err(Error::CapExceeded { .. }) => {
            eprintln!("VERIFY skipped: {what} exceeds the cap; raise --cap to force it");
            Ok(())
        }
        Err(e) => Err(e),
    }
}

fn check_to_result(c: &TernaryCircuit, cap: usize) -> Result<(), Error> {
    let verdict = c.check(cap)?;
    match verdict.witness() {
        None => Ok(()),
        Some(w) => Err(Error::NotWAdditive {
            witness: w.to_string(),
        }),
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    if cli.cap == 0 {
        return Err(Error::Structure {
            node: None,
            reason: "--cap must be at least 1".into(),
        });
    }
    let cap = cli.cap;
    let opts = VerifyOpts {
        verify: !cli.skip_verify,
        cap,
    };
    match cli.command {
        Command::Eval {
            netlist: path,
            word,
        } => {
            let c = netlist::parse_ternary(&read(&path)?)?;
            let out = c.eval(&parse_word(&word)?)?;
            println!("{out}");
            Ok(0)
        }
        Command::Table {
            target,
            format,
            full,
        } => {
            let format = if full {
                TableFormat::Full
            } else {
                format.unwrap_or(TableFormat::Basis)
            };
            print!("{}", render_table(&target, format, cap)?);
            Ok(0)
        }
        Command::CheckWadd { netlist: path } => {
            let c = netlist::parse_ternary(&read(&path)?)?;
            let verdict = c.check(cap)?;
            match verdict.witness() {
                None => {
                    println!("WADDITIVE gates={}", verdict.gate_count);
                    Ok(0)
                }
                Some(w) => {
                    println!("VIOLATION witness={w} gates={}", verdict.gate_count);
                    Ok(1)
                }
            }
        }
        Command::Convert { netlist: path } => {
            let c = ClassicalCircuit::parse(&read(&path)?)?;
            if cli.allow_fallback {
                let (by_rules, _) = is_convertible_by_rules(&c)?;
                if !by_rules {
                    // announce the exponential cost before paying it
                    let n = c.n_inputs();
                    eprintln!(
                        "FALLBACK cost=2^{n} ({} truth-table evaluations)",
                        1u128 << n.min(127)
                    );
                }
            }
            let report = convert(&c, cli.allow_fallback, cap)?;
            for event in &report.rewrites {
                let nodes: Vec<String> = event.nodes.iter().map(|n| n.to_string()).collect();
                eprintln!(
                    "REWRITE {} nodes={}",
                    event.pattern.log_name(),
                    nodes.join(",")
                );
            }
            eprintln!(
                "STATUS {}",
                match report.status {
                    ConvertStatus::Converted => "converted",
                    ConvertStatus::NotConvertibleByRules => "not-convertible",
                }
            );
            eprintln!(
                "FALLBACK {}",
                if report.fallback_used {
                    "used"
                } else {
                    "unused"
                }
            );
            match report.circuit {
                Some(out) => {
                    if !cli.skip_verify {
                        verify_or_note("conversion check", check_to_result(&out, cap))?;
                        verify_or_note(
                            "truth-table comparison",
                            match (out.basis_table(cap), c.truth_table(cap)) {
                                (Ok(a), Ok(b)) if a == b => Ok(()),
                                (Ok(_), Ok(_)) => Err(Error::Structure {
                                    node: None,
                                    reason: "converted circuit changes the truth table".into(),
                                }),
                                (Err(e), _) | (_, Err(e)) => Err(e),
                            },
                        )?;
                    }
                    print!("{}", out.to_text());
                    Ok(0)
                }
                None => Ok(1),
            }
        }
        Command::Synth {
            table: path,
            primitive_set,
        } => {
            let table: BasisTable = read(&path)?.parse()?;
            let set = if primitive_set {
                SynthGateSet::Primitive
            } else {
                SynthGateSet::Named
            };
            let c = synthesize_multi(&table, set)?;
            if !cli.skip_verify {
                verify_or_note("synthesis check", check_to_result(&c, cap))?;
            }
            print!("{}", c.to_text());
            Ok(0)
        }
        Command::Dj { netlist: path } => {
            let c = netlist::parse_ternary(&read(&path)?)?;
            let result = algorithms::deutsch_classify(&c, &opts)?;
            println!(
                "{} queries={}",
                result.classification.token(),
                result.queries
            );
            Ok(0)
        }
        Command::Search { netlist: path, n } => {
            let c = netlist::parse_ternary(&read(&path)?)?;
            if let Some(n) = n {
                if n != c.n_inputs() {
                    return Err(Error::Structure {
                        node: None,
                        reason: format!("--n {n} does not match the {}-input oracle", c.n_inputs()),
                    });
                }
            }
            let result = algorithms::search(&c, &opts)?;
            println!("FOUND {} queries={}", result.found, result.queries);
            Ok(0)
        }
        Command::OracleGen { word } => {
            let marked = parse_word(&word)?;
            let c = algorithms::oracle_circuit(&marked)?;
            print!("{}", c.to_text());
            Ok(0)
        }
        Command::Gen { family } => {
            let c = match family {
                GenFamily::Constant { n, value } => {
                    let value = match value.as_str() {
                        "0" => Sbit::Zero,
                        "1" => Sbit::One,
                        other => {
                            return Err(Error::WordParse {
                                text: other.to_string(),
                                reason: "expected 0 or 1",
                            })
                        }
                    };
                    if n == 0 {
                        return Err(Error::Structure {
                            node: None,
                            reason: "--n must be at least 1".into(),
                        });
                    }
                    algorithms::constant_circuit(n, value)?
                }
                GenFamily::Projection { n, j } => algorithms::projection_circuit(n, j)?,
            };
            print!("{}", c.to_text());
            Ok(0)
        }
        Command::Dualrail { netlist: path } => {
            let c = netlist::parse_ternary(&read(&path)?)?;
            let d = dualrail::compile_dualrail(&c)?;
            if !cli.skip_verify {
                verify_or_note(
                    "dual-rail co-simulation",
                    dualrail::verify_compiled(&c, &d, cap),
                )?;
            }
            print!("{}", d.to_text());
            Ok(0)
        }
        Command::EvalDualrail {
            netlist: path,
            bits,
        } => {
            let c = BoolCircuit::parse(&read(&path)?)?;
            let rails = bits
                .chars()
                .map(|ch| match ch {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::WordParse {
                        text: bits.clone(),
                        reason: "expected only 0 or 1",
                    }),
                })
                .collect::<Result<Vec<bool>, Error>>()?;
            if rails.len() != c.n_inputs() {
                return Err(Error::LengthMismatch {
                    left: rails.len(),
                    right: c.n_inputs(),
                });
            }
            dualrail::decode(&rails)?; // inputs must be a valid encoding
            let out = c.eval(&rails)?;
            let text: String = out.iter().map(|&b| if b { '1' } else { '0' }).collect();
            println!("{text}");
            Ok(0)
        }
        Command::RandomWadd { n_in, n_out } => {
            if n_in == 0 || n_out == 0 {
                return Err(Error::Structure {
                    node: None,
                    reason: "--n-in and --n-out must be at least 1".into(),
                });
            }
            gates::ensure_cap("table generation", 2, n_in, cap)?;
            print!("{}", BasisTable::random(n_in, n_out, cli.seed).to_text());
            Ok(0)
        }
    }
}

fn render_table(target: &str, format: TableFormat, cap: usize) -> Result<String, Error> {
    if let Some(kind) = GateKind::from_name(target) {
        return Ok(match format {
            TableFormat::Basis => kind.basis_table().to_text(),
            TableFormat::Full => {
                let mut out = format!("full {} {}\n", kind.arity_in(), kind.arity_out());
                for (key, value) in gates::gate_table(kind).rows() {
                    out.push_str(&format!("{key} {value}\n"));
                }
                out
            }
        });
    }
    let path = Path::new(target);
    if !path.exists() {
        return Err(Error::Structure {
            node: None,
            reason: format!("{target} is neither a gate name nor a netlist file"),
        });
    }
    let c = netlist::parse_ternary(&read(path)?)?;
    match format {
        TableFormat::Basis => Ok(c.basis_table(cap)?.to_text()),
        TableFormat::Full => {
            let n = c.n_inputs();
            gates::ensure_cap("full-table dump", 3, n, cap)?;
            let mut out = format!("full {} {}\n", n, c.n_outputs());
            for input in SbitWord::enumerate_all(n) {
                let value = c.eval(&input)?;
                out.push_str(&format!("{input} {value}\n"));
            }
            Ok(out)
        }
    }
}
