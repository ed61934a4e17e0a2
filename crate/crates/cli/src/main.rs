//! `flc` — batch checker for finite modal FL-algebras, cover systems, and
//! the satisfaction semantics over them.
//!
//! Exit codes: 0 all checks pass, 1 axiom/semantic failure, 2 format or
//! parse error. Reports go to stdout one line per check
//! (`CHECK <id> PASS|FAIL [witness=<tuple>]`), deterministically ordered;
//! wall time goes to stderr. `FLC_SEED` fixes the randomized spot-check
//! seed.

use clap::{Parser, Subcommand, ValueEnum};
use flc_core::algebra::Algebra;
use flc_core::cover::CoverSystem;
use flc_core::format;
use flc_core::logic::{parse_formula, point_names, LogicError, Model};
use flc_core::report::AxiomReport;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const EXIT_FAIL: u8 = 1;
const EXIT_FORMAT: u8 = 2;

#[derive(Parser)]
#[command(name = "flc", version, about = "finite-model checker for modal FL structures")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Algebra,
    Cover,
    Model,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full checker stack for one input file
    Check { kind: Kind, file: PathBuf },
    /// Compute the proposition algebra of a cover system
    Prop {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the canonical cover system of an algebra
    Represent {
        file: PathBuf,
        /// also verify the representation theorem clauses
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a formula in a model
    Eval {
        file: PathBuf,
        #[arg(short = 'f', long = "formula")]
        formula: String,
        /// report the boolean at one point instead of the truth set
        #[arg(long)]
        at: Option<String>,
        /// treat open formulas as the conjunction of their closed instances
        #[arg(long)]
        closed_instances: bool,
    },
    /// Decide whether a cover system is classical
    Classical { file: PathBuf },
    /// Enumerate algebras of a given size matching an axiom predicate
    Search {
        #[arg(long)]
        size: usize,
        /// e.g. `modal-fl`, `storage`, `s1..s4&!s5`
        #[arg(long)]
        predicate: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = run(cli.cmd);
    eprintln!("wall time: {:.3}s", start.elapsed().as_secs_f64());
    ExitCode::from(code)
}

fn seed() -> u64 {
    std::env::var("FLC_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0xF1C)
}

fn fail(msg: impl std::fmt::Display, code: u8) -> u8 {
    eprintln!("error: {msg}");
    code
}

fn read(path: &Path) -> Result<String, u8> {
    std::fs::read_to_string(path)
        .map_err(|e| fail(format!("cannot read {}: {e}", path.display()), EXIT_FORMAT))
}

fn run(cmd: Cmd) -> u8 {
    match cmd {
        Cmd::Check { kind, file } => cmd_check(kind, &file),
        Cmd::Prop { file, out } => cmd_prop(&file, &out),
        Cmd::Represent { file, verify, out } => cmd_represent(&file, verify, &out),
        Cmd::Eval { file, formula, at, closed_instances } => {
            cmd_eval(&file, &formula, at.as_deref(), closed_instances)
        }
        Cmd::Classical { file } => cmd_classical(&file),
        Cmd::Search { size, predicate } => cmd_search(size, &predicate),
    }
}

/// The checker stack of an algebra file: residuated-lattice axioms always,
/// storage axioms and Lemma 1 when `!` is present, consumption axioms and
/// Lemma 2 when `?` and `0` are present too.
fn algebra_report(a: &Algebra) -> Result<AxiomReport, u8> {
    let mut report = a.check_residuated_lattice();
    let map = |e| fail(e, EXIT_FORMAT);
    if a.bang.is_some() {
        report.merge(a.check_storage().map_err(map)?);
        report.merge(a.check_lemma1().map_err(map)?);
    }
    if a.bang.is_some() && a.quest.is_some() && a.zero.is_some() {
        report.merge(a.check_modal_fl().map_err(map)?);
        report.merge(a.check_lemma2().map_err(map)?);
    }
    Ok(report)
}

/// The checker stack of a cover file: the three cover axioms always, the
/// residuated bundle when fusion and ε are present, the Def.-3 bundle when
/// the modal parts are present.
fn cover_report(s: &CoverSystem) -> Result<AxiomReport, u8> {
    let map = |e| fail(e, EXIT_FORMAT);
    let mut report = s.check_cover_axioms().map_err(map)?;
    if s.dot.is_some() && s.epsilon.is_some() {
        report.merge(s.check_residuated_cover().map_err(map)?);
        if s.zero.is_some() && s.i_set.is_some() && s.r.is_some() {
            report.merge(s.check_modal_fl_cover().map_err(map)?);
        }
    }
    Ok(report)
}

fn finish(report: AxiomReport) -> u8 {
    print!("{report}");
    if report.passed() {
        0
    } else {
        EXIT_FAIL
    }
}

fn load_cover(text: &str) -> Result<CoverSystem, u8> {
    format::parse_cover(text).map_err(|e| fail(e, EXIT_FORMAT))
}

fn load_model(path: &Path) -> Result<Model, u8> {
    let doc = format::parse_model(&read(path)?).map_err(|e| fail(e, EXIT_FORMAT))?;
    let cover_path = path.parent().unwrap_or(Path::new(".")).join(&doc.cover_path);
    let system = load_cover(&read(&cover_path)?)?;
    format::resolve_model(&doc, system).map_err(|e| fail(e, EXIT_FORMAT))
}

fn cmd_check(kind: Kind, file: &Path) -> u8 {
    match kind {
        Kind::Algebra => {
            let a = match format::parse_algebra(&match read(file) {
                Ok(t) => t,
                Err(c) => return c,
            }) {
                Ok(a) => a,
                Err(e) => return fail(e, EXIT_FORMAT),
            };
            match algebra_report(&a) {
                Ok(r) => finish(r),
                Err(c) => c,
            }
        }
        Kind::Cover => {
            let text = match read(file) {
                Ok(t) => t,
                Err(c) => return c,
            };
            let s = match load_cover(&text) {
                Ok(s) => s,
                Err(c) => return c,
            };
            match cover_report(&s) {
                Ok(r) => finish(r),
                Err(c) => c,
            }
        }
        Kind::Model => {
            let m = match load_model(file) {
                Ok(m) => m,
                Err(c) => return c,
            };
            match m.check_semantic_agreement(seed()) {
                Ok(r) => finish(r),
                Err(e) => fail(e, EXIT_FORMAT),
            }
        }
    }
}

fn cmd_prop(file: &Path, out: &Path) -> u8 {
    let text = match read(file) {
        Ok(t) => t,
        Err(c) => return c,
    };
    let s = match load_cover(&text) {
        Ok(s) => s,
        Err(c) => return c,
    };
    let report = match cover_report(&s) {
        Ok(r) => r,
        Err(c) => return c,
    };
    if !report.passed() {
        return finish(report);
    }
    let p = match s.prop_algebra() {
        Ok(p) => p,
        Err(e) => return fail(e, EXIT_FORMAT),
    };
    if let Err(e) = std::fs::write(out, format::print_algebra(&p.algebra)) {
        return fail(format!("cannot write {}: {e}", out.display()), EXIT_FORMAT);
    }
    finish(report)
}

fn cmd_represent(file: &Path, verify: bool, out: &Path) -> u8 {
    let a = match read(file).and_then(|t| format::parse_algebra(&t).map_err(|e| fail(e, EXIT_FORMAT)))
    {
        Ok(a) => a,
        Err(c) => return c,
    };
    let mut report = match algebra_report(&a) {
        Ok(r) => r,
        Err(c) => return c,
    };
    if !report.passed() {
        return finish(report);
    }
    let s = flc_core::representation::canonical_cover_system(&a);
    if let Err(e) = std::fs::write(out, format::print_cover(&s)) {
        return fail(format!("cannot write {}: {e}", out.display()), EXIT_FORMAT);
    }
    if verify {
        match flc_core::representation::verify_representation(&a) {
            Ok(r) => report.merge(r),
            Err(e) => return fail(e, EXIT_FORMAT),
        }
        match flc_core::representation::verify_strong(&a) {
            Ok(strong) => {
                report.record("repr.strong", if strong { vec![] } else { vec!["(not strong)".into()] })
            }
            Err(e) => return fail(e, EXIT_FORMAT),
        }
    }
    finish(report)
}

fn cmd_eval(file: &Path, formula: &str, at: Option<&str>, closed_instances: bool) -> u8 {
    let m = match load_model(file) {
        Ok(m) => m,
        Err(c) => return c,
    };
    let phi = match parse_formula(formula, &m.sig) {
        Ok(f) => f,
        Err(e @ LogicError::Parse { .. }) => return fail(e, EXIT_FORMAT),
        Err(e) => return fail(e, EXIT_FAIL),
    };
    if closed_instances {
        return match m.is_true(&phi) {
            Ok(b) => {
                println!("{b}");
                0
            }
            Err(e) => fail(e, EXIT_FAIL),
        };
    }
    if let Some(v) = phi.free_vars().first() {
        return fail(LogicError::FreeVariable(v.clone()), EXIT_FAIL);
    }
    match at {
        Some(point) => {
            let x = match (0..m.system.len()).find(|&x| m.system.name_of(x) == point) {
                Some(x) => x,
                None => return fail(format!("unknown point `{point}`"), EXIT_FORMAT),
            };
            match m.satisfies(x, &phi) {
                Ok(b) => {
                    println!("{b}");
                    0
                }
                Err(e) => fail(e, EXIT_FAIL),
            }
        }
        None => match m.truth_set(&phi) {
            Ok(mask) => {
                println!("{{{}}}", point_names(&m.system, mask).join(","));
                0
            }
            Err(e) => fail(e, EXIT_FAIL),
        },
    }
}

fn cmd_classical(file: &Path) -> u8 {
    let s = match read(file).and_then(|t| load_cover(&t)) {
        Ok(s) => s,
        Err(c) => return c,
    };
    match flc_core::negation::check_classical(&s, seed()) {
        Ok(classical) => {
            println!("CHECK classical {}", if classical { "PASS" } else { "FAIL" });
            if classical {
                0
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => fail(e, EXIT_FORMAT),
    }
}

fn cmd_search(size: usize, predicate: &str) -> u8 {
    let constraints = match flc_core::enumerate::Constraints::parse(predicate) {
        Ok(c) => c,
        Err(e) => return fail(e, EXIT_FORMAT),
    };
    match flc_core::enumerate::enumerate_algebras(size, &constraints) {
        Ok(found) => {
            for a in &found {
                print!("{}", format::print_algebra(a));
            }
            println!("count = {}", found.len());
            0
        }
        Err(e) => fail(e, EXIT_FORMAT),
    }
}
