//! Command-line front end: problem-file parsing, command dispatch, reports
//! and exit codes.
//!
//! Exit codes: 0 success, 1 negative math verdict, 2 input/schema error,
//! 3 math-precondition failure (non-isolated singularities, constant phi),
//! 4 internal consistency failure.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::extension::{
    biderivation_from_bracket, casimir_check, check_hamiltonian, check_jacobi_mod, decompose,
    extend_dim3, extend_from_bracket_dim3, obstruction_dim4, obstruction_general, ExtensionError,
    HamiltonianCheck, HamiltonianWitness, JacobiCheck, JacobiWitness,
};
use crate::groebner::milnor;

pub mod corpus;
pub mod problem;
pub mod suites;

use problem::{mv_to_literal, ProblemFile, Report, SchemaError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Schema(String),
    Precondition(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => EXIT_SCHEMA,
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Schema(m) | CliError::Precondition(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<SchemaError> for CliError {
    fn from(e: SchemaError) -> Self {
        CliError::Schema(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "pext", version, about = "Poisson bracket extensions on singular hypersurfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit the report as JSON (default).
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Emit a human-readable report instead of JSON.
    #[arg(long, global = true)]
    pub text: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check bracket data against the hamiltonian and Jacobi-mod conditions.
    Check {
        #[arg(long)]
        file: PathBuf,
    },
    /// Extend bracket data (or a top-multivector coefficient f) on a surface
    /// in 3-space to an exact Poisson bracket.
    Extend {
        #[arg(long)]
        file: PathBuf,
    },
    /// Split a hamiltonian bi-derivation as beta = d_phi(X3) + phi*X2.
    Decompose {
        #[arg(long)]
        file: PathBuf,
    },
    /// Evaluate the dimension-4 obstruction for a given X3.
    Obstruction {
        #[arg(long)]
        file: PathBuf,
    },
    /// Milnor number and standard monomials of the Jacobian ideal.
    Milnor {
        #[arg(long)]
        file: PathBuf,
    },
    /// Run a seeded randomized identity suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// List or run the embedded singularity corpus.
    Corpus {
        #[arg(value_enum)]
        action: CorpusAction,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CorpusAction {
    List,
    Run,
}

/// Entry point used by the binary: parse arguments from the environment,
/// run, print, and return the exit code.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    run(cli)
}

pub fn run(cli: Cli) -> i32 {
    let started = Instant::now();
    match dispatch(&cli.command) {
        Ok((mut report, exit)) => {
            // Verify reports keep elapsed_ms = 0 so equal seeds give
            // bit-identical output.
            if !matches!(cli.command, Command::Verify { .. }) {
                report.elapsed_ms = started.elapsed().as_millis() as u64;
            }
            if cli.text {
                print!("{}", report.to_text());
            } else {
                println!("{}", report.to_json());
            }
            exit
        }
        Err(e) => {
            eprintln!("pext: {}", e.message());
            let doc = json!({"error": e.message(), "exit": e.exit_code()});
            if cli.text {
                println!("error: {}", e.message());
            } else {
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            }
            e.exit_code()
        }
    }
}

fn dispatch(command: &Command) -> Result<(Report, i32), CliError> {
    match command {
        Command::Check { file } => cmd_check(&load(file)?),
        Command::Extend { file } => cmd_extend(&load(file)?),
        Command::Decompose { file } => cmd_decompose(&load(file)?),
        Command::Obstruction { file } => cmd_obstruction(&load(file)?),
        Command::Milnor { file } => cmd_milnor(&load(file)?),
        Command::Verify { suite, seed, count } => cmd_verify(suite, *seed, *count),
        Command::Corpus { action } => cmd_corpus(*action),
    }
}

fn load(path: &Path) -> Result<ProblemFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))?;
    Ok(ProblemFile::from_json(&text)?)
}

fn map_extension_error(e: ExtensionError) -> CliError {
    match e {
        ExtensionError::WrongDimension { .. } | ExtensionError::BadIndex { .. } => {
            CliError::Schema(e.to_string())
        }
        ExtensionError::ConstantPhi | ExtensionError::NonIsolated => {
            CliError::Precondition(e.to_string())
        }
        other => CliError::Internal(other.to_string()),
    }
}

fn hamiltonian_witness_json(w: &HamiltonianWitness) -> serde_json::Value {
    json!({
        "component": w.component + 1,
        "coefficient": w.coefficient.to_string(),
        "remainder": w.remainder.to_string(),
    })
}

fn jacobi_witness_json(w: &JacobiWitness) -> serde_json::Value {
    json!({
        "triple": [w.triple.0 + 1, w.triple.1 + 1, w.triple.2 + 1],
        "coefficient": w.coefficient.to_string(),
        "remainder": w.remainder.to_string(),
    })
}

fn inputs_echo(file: &ProblemFile) -> serde_json::Value {
    serde_json::to_value(file).expect("problem file serializes")
}

pub fn cmd_check(file: &ProblemFile) -> Result<(Report, i32), CliError> {
    let data = file
        .parse_bracket()?
        .ok_or_else(|| CliError::Schema("check requires a \"bracket\" field".into()))?;
    let beta = biderivation_from_bracket(&data);
    let mut report = Report::new("check", inputs_echo(file));
    report.witness("beta", mv_to_literal(&beta));

    let ham = check_hamiltonian(&beta, data.phi());
    match &ham {
        HamiltonianCheck::Ok => report.verdict("hamiltonian", "ok"),
        HamiltonianCheck::Fail(w) => {
            report.verdict("hamiltonian", "fail");
            report.witness("hamiltonian_failure", hamiltonian_witness_json(w));
        }
    }
    let jac = check_jacobi_mod(&beta, data.phi());
    match &jac {
        JacobiCheck::Ok => report.verdict("jacobi_mod", "ok"),
        JacobiCheck::Fail(w) => {
            report.verdict("jacobi_mod", "fail");
            report.witness("jacobi_failure", jacobi_witness_json(w));
        }
    }
    let exit = if ham.is_ok() && jac.is_ok() {
        EXIT_OK
    } else {
        EXIT_VERDICT
    };
    Ok((report, exit))
}

pub fn cmd_extend(file: &ProblemFile) -> Result<(Report, i32), CliError> {
    if file.n != 3 {
        return Err(CliError::Schema(format!(
            "extend requires n = 3, found n = {}",
            file.n
        )));
    }
    let phi = file.parse_phi()?;
    let mut report = Report::new("extend", inputs_echo(file));

    let result = if let Some(data) = file.parse_bracket()? {
        match extend_from_bracket_dim3(&data) {
            Ok(r) => r,
            Err(ExtensionError::NotHamiltonian(w)) => {
                report.verdict("valid_bracket_data", false);
                report.witness("hamiltonian_failure", hamiltonian_witness_json(&w));
                return Ok((report, EXIT_VERDICT));
            }
            Err(ExtensionError::NotJacobiMod(w)) => {
                report.verdict("valid_bracket_data", false);
                report.witness("jacobi_failure", jacobi_witness_json(&w));
                return Ok((report, EXIT_VERDICT));
            }
            Err(e) => return Err(map_extension_error(e)),
        }
    } else if let Some(f) = file.parse_f()? {
        extend_dim3(&phi, &f).map_err(map_extension_error)?
    } else {
        return Err(CliError::Schema(
            "extend requires a \"bracket\" or an \"f\" field".into(),
        ));
    };

    let decomp = decompose(&result.beta, &phi).map_err(map_extension_error)?;
    report.verdict("is_poisson", result.is_poisson);
    report.verdict("casimir", casimir_check(&result.beta, &phi));
    report.witness("beta", mv_to_literal(&result.beta));
    report.witness("beta_text", result.beta.to_string());
    report.witness("jacobi_witness", mv_to_literal(&result.jacobi_witness));
    report.witness("X3", mv_to_literal(&decomp.x3));
    report.witness("X2", mv_to_literal(&decomp.x2));
    let exit = if result.is_poisson { EXIT_OK } else { EXIT_VERDICT };
    Ok((report, exit))
}

pub fn cmd_decompose(file: &ProblemFile) -> Result<(Report, i32), CliError> {
    let data = file
        .parse_bracket()?
        .ok_or_else(|| CliError::Schema("decompose requires a \"bracket\" field".into()))?;
    let beta = biderivation_from_bracket(&data);
    let mut report = Report::new("decompose", inputs_echo(file));
    report.witness("beta", mv_to_literal(&beta));
    match decompose(&beta, data.phi()) {
        Ok(d) => {
            report.verdict("hamiltonian", "ok");
            report.verdict("residual_check", d.residual_check);
            report.witness("X1", mv_to_literal(&d.x1));
            report.witness("X2", mv_to_literal(&d.x2));
            report.witness("X3", mv_to_literal(&d.x3));
            Ok((report, EXIT_OK))
        }
        Err(ExtensionError::NotHamiltonian(w)) => {
            report.verdict("hamiltonian", "fail");
            report.witness("hamiltonian_failure", hamiltonian_witness_json(&w));
            Ok((report, EXIT_VERDICT))
        }
        Err(e) => Err(map_extension_error(e)),
    }
}

pub fn cmd_obstruction(file: &ProblemFile) -> Result<(Report, i32), CliError> {
    if file.n != 4 {
        return Err(CliError::Schema(format!(
            "obstruction requires n = 4, found n = {}",
            file.n
        )));
    }
    let phi = file.parse_phi()?;
    let x3 = file
        .parse_x3()?
        .ok_or_else(|| CliError::Schema("obstruction requires an \"X3\" field".into()))?;

    let dim4 = obstruction_dim4(&x3, &phi).map_err(map_extension_error)?;
    let general = obstruction_general(&x3, &phi).map_err(map_extension_error)?;
    if dim4.satisfied != general.satisfied {
        return Err(CliError::Internal(format!(
            "obstruction paths disagree: dim4 {} vs general {}",
            dim4.satisfied, general.satisfied
        )));
    }

    let mut report = Report::new("obstruction", inputs_echo(file));
    report.verdict("satisfied_dim4", dim4.satisfied);
    report.verdict("satisfied_general", general.satisfied);
    report.witness("bracket_term", mv_to_literal(&dim4.bracket_term));
    if let Some(w) = &general.witness {
        report.witness("Y4", mv_to_literal(&w.y4));
        report.witness("Y5", mv_to_literal(&w.y5));
    }
    if let Some(res) = &general.residue {
        report.witness("residue", mv_to_literal(res));
    }
    let exit = if dim4.satisfied { EXIT_OK } else { EXIT_VERDICT };
    Ok((report, exit))
}

pub fn cmd_milnor(file: &ProblemFile) -> Result<(Report, i32), CliError> {
    let phi = file.parse_phi()?;
    let data = milnor(&phi)
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    let mut report = Report::new("milnor", inputs_echo(file));
    report.verdict("is_isolated", data.is_isolated);
    report.verdict("milnor_number", data.milnor_number);
    report.witness(
        "standard_monomials",
        data.standard_monomials
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>(),
    );
    Ok((report, EXIT_OK))
}

pub fn cmd_verify(suite: &str, seed: u64, count: usize) -> Result<(Report, i32), CliError> {
    let outcome = suites::run_suite(suite, seed, count).ok_or_else(|| {
        CliError::Schema(format!(
            "unknown suite '{suite}'; known suites: {}",
            suites::suite_names().join(", ")
        ))
    })?;
    let mut report = Report::new(
        "verify",
        json!({"suite": suite, "seed": seed, "count": count}),
    );
    report.seed = Some(seed);
    report.verdict("cases", outcome.cases);
    report.verdict("passes", outcome.passes);
    report.verdict("all_passed", outcome.all_passed());
    if !outcome.failures.is_empty() {
        report.witness("failures", &outcome.failures);
    }
    let exit = if outcome.all_passed() {
        EXIT_OK
    } else {
        EXIT_VERDICT
    };
    Ok((report, exit))
}

pub fn cmd_corpus(action: CorpusAction) -> Result<(Report, i32), CliError> {
    match action {
        CorpusAction::List => {
            let mut report = Report::new("corpus", json!({"action": "list"}));
            let entries: Vec<_> = corpus::CORPUS
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "n": e.n,
                        "phi": e.phi,
                        "weights": e.weights,
                        "expected_milnor": e.expected_milnor,
                    })
                })
                .collect();
            report.verdict("entries", entries.len());
            report.witness("corpus", entries);
            Ok((report, EXIT_OK))
        }
        CorpusAction::Run => {
            let mut report = Report::new("corpus", json!({"action": "run"}));
            let mut all_ok = true;
            for e in corpus::CORPUS {
                let (entry_report, entry_ok) = corpus_entry_verdict(e)?;
                all_ok &= entry_ok;
                report.verdict(e.name, entry_report);
            }
            report.verdict("all_ok", all_ok);
            let exit = if all_ok { EXIT_OK } else { EXIT_VERDICT };
            Ok((report, exit))
        }
    }
}

/// Milnor verdict plus (for isolated surface entries) the extension and
/// Casimir verdicts for one corpus entry. Non-isolated entries are flagged,
/// not errored, so injected equations surface in the report.
fn corpus_entry_verdict(
    e: &corpus::CorpusEntry,
) -> Result<(serde_json::Value, bool), CliError> {
    let phi = e.phi_poly();
    let data = milnor(&phi).map_err(|err| CliError::Internal(err.to_string()))?;
    let milnor_ok = data.milnor_number == Some(e.expected_milnor);
    let mut entry_report = json!({
        "milnor": data.milnor_number,
        "milnor_ok": milnor_ok,
        "is_isolated": data.is_isolated,
    });
    let mut entry_ok = milnor_ok && data.is_isolated;
    if e.n == 3 && data.is_isolated {
        let r = extend_dim3(&phi, &crate::polyring::Poly::one(3))
            .map_err(map_extension_error)?;
        let casimir = casimir_check(&r.beta, &phi);
        entry_report["is_poisson"] = json!(r.is_poisson);
        entry_report["casimir"] = json!(casimir);
        entry_report["beta"] = json!(r.beta.to_string());
        entry_ok &= r.is_poisson && casimir;
    }
    Ok((entry_report, entry_ok))
}
