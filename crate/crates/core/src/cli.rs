//! The `et` command line.

use std::error::Error;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::encoding::{Nat, TermTree};
use crate::exactnum::{check_field_axioms, enumerate_rational_indices, field_by_name, parse_field_file, FieldRef};
use crate::indexing::registry::{field_indexing, nat_identity, nat_s, rationals, reversed_labels};
use crate::indexing::{
    build_translator, check_admissible, numeral_sub_translator, MapFn, SearchBudget, TermIndexing, Value, ValueMap,
};
use crate::qsim::{gate_library, probabilities, run_circuit, Circuit};
use crate::tensor::{
    extract_permutation, permutation_translator, permuted_indexing, Alphabet, BasisWord, PermutationOracle,
    TensorSpace, TENSOR_SORT,
};

pub type CliResult = Result<(), Box<dyn Error>>;

#[derive(Parser, Debug)]
#[command(name = "et", version, about = "Exact indexings, number fields, tensor spaces and circuit simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Simulate a circuit file exactly.
    Simulate {
        file: PathBuf,
        /// Initial basis word (defaults to all zeros).
        #[arg(long)]
        initial: Option<String>,
        /// Print the measurement probabilities.
        #[arg(long)]
        probs: bool,
    },
    /// Encode, decode, translate or audit term indexings.
    #[command(subcommand)]
    Index(IndexCommand),
    /// Recover a planted basis permutation through a translator.
    StabilityDemo {
        #[arg(long, default_value = "tensor-2qubit")]
        structure: String,
        /// identity, swap-adjacent, or reverse<n> (e.g. reverse16).
        #[arg(long, default_value = "swap-adjacent")]
        permutation: String,
        #[arg(long, default_value_t = 32)]
        range: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// List indices of rationals inside a number field, found by search.
    EnumerateQ {
        /// Field file, or one of q, q-sqrt2, q-i, q-zeta8.
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 20)]
        count: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check the field axioms on random elements.
    FieldCheck {
        /// Field file, or one of q, q-sqrt2, q-i, q-zeta8.
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct StructureArg {
    /// nat-s, nat-plus, rationals, q-sqrt2, q-i, q-zeta8 or tensor-2qubit.
    #[arg(long)]
    pub structure: String,
}

#[derive(Subcommand, Debug)]
pub enum IndexCommand {
    /// Print the index of a term.
    Encode {
        #[command(flatten)]
        structure: StructureArg,
        term: String,
    },
    /// Print the term and value of an index.
    Decode {
        #[command(flatten)]
        structure: StructureArg,
        index: String,
    },
    /// Translate into a variant with a reversed label table (or reversed
    /// generator order) and check the translator law.
    Translate {
        #[command(flatten)]
        structure: StructureArg,
        #[arg(long, default_value_t = 500)]
        samples: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check admissibility of every operation on enumerated tuples.
    Audit {
        #[command(flatten)]
        structure: StructureArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

fn budget(flag: Option<u64>) -> Result<SearchBudget, Box<dyn Error>> {
    match flag {
        Some(n) => Ok(SearchBudget::new(n)?),
        None => Ok(SearchBudget::from_env()),
    }
}

fn load_field(spec: &str) -> Result<FieldRef, Box<dyn Error>> {
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok(parse_field_file(&text).map_err(|e| format!("{}: {e}", path.display()))?);
    }
    field_by_name(spec).ok_or_else(|| format!("no field file or built-in field named `{spec}`").into())
}

fn two_qubit_space() -> Result<TensorSpace, Box<dyn Error>> {
    Ok(TensorSpace::over_field(&Alphabet::qubit(), &crate::exactnum::zeta8())?)
}

/// A registered term indexing and the sort its elements live in.
fn structure(name: &str) -> Result<(TermIndexing, usize), Box<dyn Error>> {
    if name == "tensor-2qubit" {
        return Ok((two_qubit_space()?.indexing().clone(), TENSOR_SORT));
    }
    crate::indexing::registry::structure_by_name(name).ok_or_else(|| format!("unknown structure `{name}`").into())
}

fn variant(name: &str, source: &TermIndexing) -> Result<TermIndexing, Box<dyn Error>> {
    if name == "tensor-2qubit" {
        return Ok(two_qubit_space()?.reversed()?.indexing().clone());
    }
    Ok(reversed_labels(source)?)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Simulate { file, initial, probs } => simulate(&file, initial.as_deref(), probs, out),
        Command::Index(cmd) => index(cmd, out),
        Command::StabilityDemo { structure, permutation, range, budget: b } => {
            stability_demo(&structure, &permutation, range, budget(b)?, out)
        }
        Command::EnumerateQ { field, count, budget: b } => enumerate_q(&field, count, budget(b)?, out),
        Command::FieldCheck { field, samples, seed } => {
            let f = load_field(&field)?;
            let report = check_field_axioms(&f, samples, seed);
            writeln!(out, "{report}")?;
            if report.ok() {
                Ok(())
            } else {
                Err("field axioms failed".into())
            }
        }
    }
}

fn simulate(file: &Path, initial: Option<&str>, probs: bool, out: &mut dyn Write) -> CliResult {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let lib = gate_library();
    let circuit = Circuit::parse(&text, &lib).map_err(|e| format!("{}: {e}", file.display()))?;
    let word = match initial {
        Some(w) => BasisWord::new(w)?,
        None => BasisWord::new(&"0".repeat(circuit.qubits))?,
    };
    let state = run_circuit(&circuit, &word, &lib)?;
    writeln!(out, "{state}")?;
    if probs {
        writeln!(out, "{}", probabilities(&state)?)?;
    }
    Ok(())
}

fn index(cmd: IndexCommand, out: &mut dyn Write) -> CliResult {
    match cmd {
        IndexCommand::Encode { structure: s, term } => {
            let (ti, _) = structure(&s.structure)?;
            let t: TermTree = term.parse()?;
            writeln!(out, "{}", ti.encode(&t)?)?;
        }
        IndexCommand::Decode { structure: s, index } => {
            let (ti, k) = structure(&s.structure)?;
            let x: Nat = index.parse()?;
            let t = ti.decode_term(&x)?;
            writeln!(out, "term:  {t}")?;
            writeln!(out, "value: {}", ti.sort(k).decode(&x)?)?;
        }
        IndexCommand::Translate { structure: s, samples, budget: b } => {
            let (source, k) = structure(&s.structure)?;
            let target = variant(&s.structure, &source)?;
            let scalar: Vec<MapFn> =
                (0..source.scalar_sorts()).map(|_| numeral_sub_translator(&target, None)).collect();
            let tr = build_translator(&source, &target.structure(), scalar, budget(b)?)?;
            let report = tr.for_sort(k).check_law(samples);
            writeln!(out, "source: {}", source.name())?;
            writeln!(out, "target: {} (reordered)", target.name())?;
            for (z, msg) in &report.violations {
                writeln!(out, "violation at {z}: {msg}")?;
            }
            let verdict = if report.ok() { "pass" } else { "FAIL" };
            writeln!(
                out,
                "translator law on {} indices: {verdict} ({} violations)",
                report.checked,
                report.violations.len()
            )?;
            if !report.ok() {
                return Err("translator law violated".into());
            }
        }
        IndexCommand::Audit { structure: s, samples } => {
            let (ti, _) = structure(&s.structure)?;
            let report = check_admissible(&ti.structure(), samples);
            writeln!(out, "{report}")?;
            if !report.ok() {
                return Err("admissibility audit failed".into());
            }
        }
    }
    Ok(())
}

fn stability_demo(name: &str, perm: &str, range: u64, budget: SearchBudget, out: &mut dyn Write) -> CliResult {
    let oracle = PermutationOracle::by_name(perm).ok_or_else(|| format!("unknown permutation `{perm}`"))?;
    writeln!(out, "structure: {name}")?;
    writeln!(out, "permutation: {}", oracle.name)?;
    let table = match name {
        "tensor-2qubit" => {
            let space = two_qubit_space()?;
            let j = permuted_indexing(&space, &oracle);
            let g = permutation_translator(&space, &j, budget)?.for_sort(TENSOR_SORT);
            law_line(out, &g.check_law(range))?;
            extract_permutation(&g, &space, range)?
        }
        "nat-s" => {
            // ⟨ℕ⟩ twisted by the permutation, translated to the identity
            // indexing of ℕ; S is opaque in the twisted indexing.
            let f = oracle.forward.clone();
            let inv = oracle.inverse.clone();
            let nat_map = |g: std::sync::Arc<dyn Fn(u64) -> u64 + Send + Sync>| {
                std::sync::Arc::new(move |_: usize, v: &Value| {
                    let n = v.as_natural()?;
                    let n: u64 = n
                        .try_into()
                        .map_err(|_| crate::indexing::IndexError::Unsupported("natural too large".into()))?;
                    Ok(Value::Natural(g(n).into()))
                })
            };
            let j = nat_s().with_value_map(
                &format!("nat-s permuted by {}", oracle.name),
                ValueMap { forward: nat_map(f), inverse: nat_map(inv) },
                &["S"],
            );
            let target = nat_identity();
            let g = build_translator(&j, &target, Vec::new(), budget)?.for_sort(0);
            law_line(out, &g.check_law(range))?;
            let b = nat_s();
            (0..range)
                .map(|p| -> Result<u64, Box<dyn Error>> {
                    let x = g.apply(&b.encode(&TermIndexing::numeral_term(&Nat::from(p)))?)?;
                    let v = target.sorts[0].decode(&x)?;
                    Ok(u64::try_from(v.as_natural()?).map_err(|_| "natural too large")?)
                })
                .collect::<Result<Vec<_>, _>>()?
        }
        _ => return Err(format!("stability-demo supports tensor-2qubit and nat-s, not `{name}`").into()),
    };
    writeln!(out, "p\th(p)\tplanted")?;
    let planted = oracle.table(range);
    for (p, (h, f)) in table.iter().zip(&planted).enumerate() {
        writeln!(out, "{p}\t{h}\t{f}")?;
    }
    if table == planted {
        writeln!(out, "recovered permutation = planted")?;
        Ok(())
    } else {
        writeln!(out, "recovered permutation != planted")?;
        Err("recovered permutation differs from the planted one".into())
    }
}

fn law_line(out: &mut dyn Write, report: &crate::indexing::LawReport) -> CliResult {
    for (z, msg) in &report.violations {
        writeln!(out, "violation at {z}: {msg}")?;
    }
    let verdict = if report.ok() { "pass" } else { "FAIL" };
    writeln!(out, "translator law on {} indices: {verdict}", report.checked)?;
    if report.ok() {
        Ok(())
    } else {
        Err("translator law violated".into())
    }
}

fn enumerate_q(field: &str, count: u64, budget: SearchBudget, out: &mut dyn Write) -> CliResult {
    let f = load_field(field)?;
    let ti = field_indexing(&f, &rationals());
    let items = enumerate_rational_indices(&ti.structure(), 1, budget)?;
    writeln!(out, "p\tq\tr\tvalue\tindex")?;
    for item in items.take(count as usize) {
        let (p, q, r) = item.triple;
        match item.outcome {
            Ok((x, v)) => writeln!(out, "{p}\t{q}\t{r}\t{v}\t{x}")?,
            Err(e) => writeln!(out, "{p}\t{q}\t{r}\tskipped\t{e}")?,
        }
    }
    Ok(())
}
