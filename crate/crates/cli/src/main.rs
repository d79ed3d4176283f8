mod eval;
mod parse;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use klr_core::cellular::{
    cellular_basis_in, verify_affine_cellularity_in, verify_cell_chain_in, verify_cellular_basis_in,
    verify_quotient_structure_in, CellularStructure,
};
use klr_core::dimension::dim_check;
use klr_core::engine::{pbw_basis_at_degree, Element, Engine};
use klr_core::lie::{positive_roots_below, root_partitions, RootVector};
use klr_core::nilhecke::verify_nil_hecke_at;
use klr_core::relations::verify_relations;
use klr_core::report::Report;
use klr_core::{Int, KlrError};

#[derive(Parser)]
#[command(name = "klr", version, about = "Normal forms and cellular structure of KLR algebras of type A")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the verification suites.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Entries kept in the normal-form cache.
    #[arg(long, global = true, default_value_t = 200_000)]
    cache_limit: usize,
    /// Also write the output to this file.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlphaArg {
    /// Root vector as vertex:multiplicity pairs, e.g. 1:2,2:1.
    #[arg(long, value_parser = parse_alpha)]
    alpha: RootVector,
}

fn parse_alpha(s: &str) -> Result<RootVector, String> {
    let a = RootVector::parse(s).map_err(|e| e.to_string())?;
    if a.height() == 0 {
        return Err("alpha must be nonzero".into());
    }
    if a.height() > klr_core::MAX_STRANDS {
        return Err(KlrError::TooManyStrands(a.height()).to_string());
    }
    Ok(a)
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Relations,
    Nilhecke,
    Cells,
    Quotients,
    Cellularity,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Positive roots below alpha, largest first.
    Roots(AlphaArg),
    /// Root partitions of alpha, largest first.
    Partitions(AlphaArg),
    /// Graded dimension three ways.
    Dim {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, default_value_t = 6)]
        cutoff: i64,
    },
    /// Evaluate an expression in normal form.
    Eval {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Run verification suites up to a degree cutoff.
    Verify {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, default_value_t = 6)]
        cutoff: i64,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Dump the PBW or cellular basis in one degree.
    Basis {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long, conflicts_with = "pbw")]
        cellular: bool,
        #[arg(long)]
        pbw: bool,
    },
}

enum Failure {
    Usage(String),
    Verification,
    /// A construction whose built-in checks did not hold.
    Broken(String),
}

impl From<KlrError> for Failure {
    fn from(e: KlrError) -> Self {
        match e {
            KlrError::ConstructionFailed(_) => Failure::Broken(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Output {
    json: bool,
    text: String,
}

impl Output {
    fn value(&mut self, v: Value) {
        self.text = serde_json::to_string_pretty(&v).expect("json renders");
        self.text.push('\n');
    }
}

fn run(cli: &Cli, out: &mut Output) -> Result<(), Failure> {
    let engine = Engine::new(cli.cache_limit);
    match &cli.command {
        Command::Roots(AlphaArg { alpha }) => {
            let roots = positive_roots_below(alpha);
            if out.json {
                out.value(json!(roots
                    .iter()
                    .map(|b| json!({"root": b.to_string(), "word": b.word().letters()}))
                    .collect::<Vec<_>>()));
            } else {
                for b in roots {
                    writeln!(out.text, "{b}").unwrap();
                }
            }
        }
        Command::Partitions(AlphaArg { alpha }) => {
            let pis = root_partitions(alpha)?;
            if out.json {
                out.value(json!(pis
                    .iter()
                    .map(|p| json!({"pi": p.to_string(), "i_pi": p.word().letters(), "sh": p.sh()}))
                    .collect::<Vec<_>>()));
            } else {
                for p in pis {
                    writeln!(out.text, "{p}").unwrap();
                }
            }
        }
        Command::Dim { alpha, cutoff } => {
            let r = dim_check(&alpha.alpha, *cutoff)?;
            if out.json {
                out.value(r.to_json());
            } else {
                writeln!(out.text, "{r}").unwrap();
            }
            if !r.agrees {
                return Err(Failure::Verification);
            }
        }
        Command::Eval { alpha, expr } => {
            let ast = parse::parse(expr).map_err(|e| Failure::Usage(e.to_string()))?;
            let x = eval::eval(&engine, &alpha.alpha, &ast)?;
            if out.json {
                out.value(x.to_json());
            } else {
                writeln!(out.text, "{x}").unwrap();
            }
        }
        Command::Verify { alpha, cutoff, suite } => {
            let report = verify(&engine, &alpha.alpha, *cutoff, *suite)?;
            if out.json {
                out.value(json!({"records": report.to_json(), "notes": report.notes, "passed": report.passed()}));
            } else {
                writeln!(out.text, "{report}").unwrap();
            }
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::Basis { alpha, degree, cellular, pbw: _ } => {
            let alpha = &alpha.alpha;
            if *cellular {
                let s = CellularStructure::new(&engine, alpha)?;
                let b = cellular_basis_in(&s, *degree)?;
                if out.json {
                    let elements: Vec<Value> = b
                        .elements
                        .iter()
                        .map(|(pi, label, x)| json!({"pi": pi.to_string(), "label": label, "element": x.to_json()}))
                        .collect();
                    out.value(json!({"degree": degree, "elements": elements, "unimodular": b.is_unimodular()}));
                } else {
                    for (pi, label, x) in &b.elements {
                        writeln!(out.text, "pi={pi} {label}: {x}").unwrap();
                    }
                    writeln!(out.text, "{} elements, unimodular: {}", b.elements.len(), b.is_unimodular()).unwrap();
                }
                if !b.is_unimodular() {
                    return Err(Failure::Verification);
                }
            } else {
                let monos = pbw_basis_at_degree(alpha, *degree)?;
                let elements: Vec<Element> = monos.iter().map(|t| Element::monomial(t, Int::from(1))).collect();
                if out.json {
                    out.value(json!({"degree": degree, "elements": elements.iter().map(Element::to_json).collect::<Vec<_>>()}));
                } else {
                    for x in &elements {
                        writeln!(out.text, "{x}").unwrap();
                    }
                    writeln!(out.text, "{} elements", elements.len()).unwrap();
                }
            }
        }
    }
    Ok(())
}

/// `α = a α_i` for a single vertex `i`.
fn single_vertex(alpha: &RootVector) -> Option<(i32, usize)> {
    let entries: Vec<(i32, u32)> = alpha.entries().collect();
    match entries.as_slice() {
        [(i, a)] => Some((*i, *a as usize)),
        _ => None,
    }
}

fn verify(engine: &Engine, alpha: &RootVector, cutoff: i64, suite: Suite) -> Result<Report, Failure> {
    let wants = |s: Suite| suite == s || suite == Suite::All;
    let mut report = Report::new();
    if wants(Suite::Relations) {
        report.extend(verify_relations(engine, alpha)?);
    }
    if wants(Suite::Nilhecke) {
        match single_vertex(alpha) {
            Some((i, a)) => report.extend(verify_nil_hecke_at(engine, i, a, cutoff)?),
            None if suite == Suite::Nilhecke => {
                return Err(Failure::Usage(format!("the nilhecke suite needs alpha = a*alpha_i, got {alpha}")));
            }
            None => report.notes.push(format!("nilhecke suite skipped: {alpha} is not a multiple of a simple root")),
        }
    }
    let s = CellularStructure::new(engine, alpha)?;
    if wants(Suite::Cells) {
        report.extend(verify_cell_chain_in(&s, cutoff)?);
    }
    if wants(Suite::Quotients) {
        for idx in 0..s.len() {
            report.extend(verify_quotient_structure_in(&s, idx, cutoff)?);
        }
    }
    if wants(Suite::Cellularity) {
        report.extend(verify_cellular_basis_in(&s, cutoff)?);
        report.extend(verify_affine_cellularity_in(&s, cutoff)?);
    }
    report.sort();
    Ok(report)
}

/// 0 success, 1 failed verification, 2 bad usage or input.
fn exit_code(result: &Result<(), Failure>) -> u8 {
    match result {
        Ok(()) => 0,
        Err(Failure::Verification | Failure::Broken(_)) => 1,
        Err(Failure::Usage(_)) => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = Output { json: cli.json, text: String::new() };
    let result = run(&cli, &mut out);
    print!("{}", out.text);
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &out.text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if let Err(Failure::Usage(msg) | Failure::Broken(msg)) = &result {
        eprintln!("error: {msg}");
    }
    ExitCode::from(exit_code(&result))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(s: &str) -> RootVector {
        RootVector::parse(s).unwrap()
    }

    #[test]
    fn failures_map_to_exit_codes() {
        assert_eq!(exit_code(&Ok(())), 0);
        assert_eq!(exit_code(&Err(Failure::Verification)), 1);
        assert_eq!(exit_code(&Err(KlrError::ConstructionFailed("x".into()).into())), 1);
        assert_eq!(exit_code(&Err(Failure::Usage("x".into()))), 2);
    }

    #[test]
    fn single_vertex_alphas() {
        assert_eq!(single_vertex(&alpha("2:3")), Some((2, 3)));
        assert_eq!(single_vertex(&alpha("1:1,2:1")), None);
    }
}
