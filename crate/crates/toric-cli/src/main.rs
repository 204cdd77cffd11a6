//! Batch command-line interface: JSON instance files in, JSON out.
//!
//! Exit codes: 0 success, 1 I/O or parse failure, 2 domain precondition
//! failure, 3 internal cross-check disagreement. All results go to
//! standard output as JSON; diagnostics go to standard error.

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use toric::degree::{cdeg, pl_degree_oracle};
use toric::error::Error;
use toric::io::{ColoringDoc, DivisorDoc, FanDoc, IdealDoc, ReductionDoc, TupleDoc};
use toric::residue::{ideal_member_semiample, residue_monomials, search_degree_one, SearchOutcome};
use toric::semiample::semiample_fan;
use toric::suite;

#[derive(Parser)]
#[command(name = "toric", about = "Exact toric residues and combinatorial degrees", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a fan file: completeness, simpliciality, projectivity.
    Validate { fan: PathBuf },
    /// Combinatorial degree of a coloring of a fan.
    Cdeg {
        fan: PathBuf,
        coloring: PathBuf,
        /// Also run the piecewise-linear topological oracle and fail on
        /// disagreement.
        #[arg(long)]
        oracle: bool,
        /// Seed for the oracle's generic-point sampler.
        #[arg(long, default_value_t = toric::DEFAULT_ORACLE_SEED)]
        seed: u64,
    },
    /// Toric residue of a monomial tuple.
    Residue { fan: PathBuf, tuple: PathBuf },
    /// Semiample reduction of a divisor: quotient, reduced fan, cone table.
    Semiample { fan: PathBuf, divisor: PathBuf },
    /// Ideal membership of a semiample degree, with certificates.
    IdealMember {
        fan: PathBuf,
        ideal: PathBuf,
        divisor: PathBuf,
    },
    /// Search for a compatible degree-one coloring for n+1 semiample degrees.
    Search {
        fan: PathBuf,
        divisors: Vec<PathBuf>,
    },
    /// Run the randomized property suites.
    Selftest {
        /// Instances per suite.
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Seed for instance generation.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Restrict random instances to one ambient dimension.
        #[arg(long)]
        n: Option<usize>,
        /// Worker threads; the report is identical for any value.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Force a failure report, for harness testing.
        #[arg(long, hide = true)]
        force_fail: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InternalInconsistency(_) => 3,
        _ => 2,
    }
}

#[derive(Debug)]
enum CliError {
    Io(String),
    Domain(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable output")
    );
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match dispatch(command) {
        Ok(code) => Ok(code),
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            Ok(ExitCode::from(1))
        }
        Err(CliError::Domain(e)) => Err(e),
    }
}

fn dispatch(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Validate { fan } => {
            let doc: FanDoc = read_json(&fan)?;
            let fan = doc.to_fan().map_err(CliError::Domain)?;
            let flags = fan.validate().map_err(CliError::Domain)?;
            emit(&json!({
                "rational": flags.rational,
                "complete": flags.complete,
                "simplicial": flags.simplicial,
                "projective": flags.projective,
            }));
            if flags.complete && flags.projective {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
        Command::Cdeg {
            fan,
            coloring,
            oracle,
            seed,
        } => {
            let fan_doc: FanDoc = read_json(&fan)?;
            let coloring_doc: ColoringDoc = read_json(&coloring)?;
            let fan = fan_doc.to_fan().map_err(CliError::Domain)?;
            let coloring = coloring_doc
                .to_coloring(fan.dim())
                .map_err(CliError::Domain)?;
            let value = cdeg(&fan, &coloring).map_err(CliError::Domain)?;
            if oracle {
                let by_oracle =
                    oracle_degree(&fan, &coloring, seed).map_err(CliError::Domain)?;
                if by_oracle != value {
                    return Err(CliError::Domain(Error::InternalInconsistency(format!(
                        "cone count {value} disagrees with oracle degree {by_oracle}"
                    ))));
                }
            }
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Residue { fan, tuple } => {
            let fan_doc: FanDoc = read_json(&fan)?;
            let tuple_doc: TupleDoc = read_json(&tuple)?;
            let fan = fan_doc.to_fan().map_err(CliError::Domain)?;
            let value =
                residue_monomials(&fan, &tuple_doc.to_tuple()).map_err(CliError::Domain)?;
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Semiample { fan, divisor } => {
            let fan_doc: FanDoc = read_json(&fan)?;
            let divisor_doc: DivisorDoc = read_json(&divisor)?;
            let fan = fan_doc.to_fan().map_err(CliError::Domain)?;
            let red =
                semiample_fan(&fan, &divisor_doc.to_divisor()).map_err(CliError::Domain)?;
            let doc = ReductionDoc::from_reduction(&red).map_err(CliError::Domain)?;
            emit(&doc);
            Ok(ExitCode::SUCCESS)
        }
        Command::IdealMember {
            fan,
            ideal,
            divisor,
        } => {
            let fan_doc: FanDoc = read_json(&fan)?;
            let ideal_doc: IdealDoc = read_json(&ideal)?;
            let divisor_doc: DivisorDoc = read_json(&divisor)?;
            let fan = fan_doc.to_fan().map_err(CliError::Domain)?;
            let ideal = ideal_doc.to_ideal().map_err(CliError::Domain)?;
            let report = ideal_member_semiample(&fan, &ideal, &divisor_doc.to_divisor())
                .map_err(CliError::Domain)?;
            // Diagnostic witness references are 1-based variable indices.
            let witness = report.certificates.witness.as_ref().map(|(cone, rays)| {
                json!({
                    "cone_vars": cone.iter().map(|j| j + 1).collect::<Vec<_>>(),
                    "generator_rays_vars": rays
                        .iter()
                        .map(|(gen, ray)| json!({"generator": gen, "var": ray + 1}))
                        .collect::<Vec<_>>(),
                })
            });
            emit(&json!({
                "member": report.member,
                "conditions": {
                    "sections": report.condition_sections,
                    "b_alpha": report.condition_b_alpha,
                    "cones": report.condition_cones,
                    "orbits": report.condition_orbits,
                },
                "vertex_sections": report
                    .certificates
                    .vertex_sections
                    .iter()
                    .map(|(point, mono, gen)| json!({
                        "vertex": point.0.iter().map(|c| i64::try_from(c).unwrap_or(0)).collect::<Vec<_>>(),
                        "monomial": mono.to_string(),
                        "dividing_generator": gen,
                    }))
                    .collect::<Vec<_>>(),
                "b_alpha": report
                    .certificates
                    .b_alpha
                    .iter()
                    .map(|(mono, gen)| json!({
                        "monomial": mono.to_string(),
                        "dividing_generator": gen,
                    }))
                    .collect::<Vec<_>>(),
                "witness": witness,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Search { fan, divisors } => {
            let fan_doc: FanDoc = read_json(&fan)?;
            let fan = fan_doc.to_fan().map_err(CliError::Domain)?;
            let ds = divisors
                .iter()
                .map(|p| read_json::<DivisorDoc>(p).map(|d| d.to_divisor()))
                .collect::<Result<Vec<_>, _>>()?;
            match search_degree_one(&fan, &ds).map_err(CliError::Domain)? {
                SearchOutcome::Found(coloring) => {
                    emit(&json!({
                        "found": true,
                        "coloring": ColoringDoc::from_coloring(&coloring),
                    }));
                }
                SearchOutcome::Exhausted(stats) => {
                    emit(&json!({
                        "found": false,
                        "candidates_examined": stats.candidates_examined,
                        "nodes_pruned": stats.nodes_pruned,
                        "leaves_checked": stats.leaves_checked,
                    }));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest {
            count,
            seed,
            n,
            jobs,
            force_fail,
        } => {
            let mut reports = suite::run_all(seed, count, n, jobs);
            if force_fail {
                reports.push(suite::SuiteReport {
                    name: "forced_failure".into(),
                    instances: 1,
                    failures: vec!["forced by --force-fail".into()],
                });
            }
            let all_passed = reports.iter().all(|r| r.passed());
            emit(&json!({
                "passed": all_passed,
                "seed": seed,
                "count": count,
                "suites": reports,
            }));
            if all_passed {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
    }
}

/// Degree of a fan coloring through the polytope-side oracle, using the
/// projectivity witness.
fn oracle_degree(
    fan: &toric::Fan,
    coloring: &toric::Coloring,
    seed: u64,
) -> Result<i32, Error> {
    let witness = fan
        .witness_polytope()?
        .ok_or(Error::NotProjective)?
        .clone();
    let facets = witness.facets()?;
    let mut facet_colors = Vec::with_capacity(facets.len());
    for f in facets {
        let ray = fan
            .rays()
            .iter()
            .position(|v| *v == f.normal)
            .ok_or_else(|| {
                Error::InternalInconsistency("witness facet normal is not a ray".into())
            })?;
        facet_colors.push(coloring.colors()[ray].clone());
    }
    pl_degree_oracle(
        &witness,
        &toric::Orientation::standard(fan.dim()),
        &facet_colors,
        seed,
    )
}
