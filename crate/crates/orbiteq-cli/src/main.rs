//! Batch front-end: load JSON documents, run verifications and conversions,
//! emit machine-readable reports and human-readable summaries.
//!
//! Exit codes: 0 verified, 1 refuted, 2 invalid input, 3 undetermined at the
//! requested depth.

mod run;
mod workspace;

use clap::{Parser, Subcommand, ValueEnum};
use orbiteq::report::CheckStatus;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "orbiteq", version, about = "orbit equivalence checker for shifts of finite type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyKind {
    Action,
    Csoe,
    Coe,
    ShiftCoe,
    Freeness,
    GroupoidAxioms,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConvertKind {
    CsoeToCoe,
    ShiftToSemigroup,
    SemigroupToShift,
    CoeToGroupoidIso,
    GroupoidIsoToCoe,
    SemigroupToGroup,
    GroupToSemigroup,
}

#[derive(Subcommand)]
enum Command {
    /// Verify certificates or action axioms; writes a report and prints one
    /// line per check.
    Verify {
        kind: VerifyKind,
        /// Document files (spaces, maps, actions, certificates).
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        degree_bound: u32,
        #[arg(long, default_value_t = 4)]
        period_bound: usize,
        /// Report output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert between certificate forms; verifies the source first and
    /// embeds a verification of the target in the output document.
    Convert {
        kind: ConvertKind,
        files: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the verification of the source document.
        #[arg(long)]
        no_preverify: bool,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        degree_bound: u32,
        #[arg(long, default_value_t = 4)]
        period_bound: usize,
    },
    /// Pretty-print any document.
    Inspect { file: PathBuf },
}

#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub depth: usize,
    pub degree_bound: u32,
    pub period_bound: usize,
}

impl RunConfig {
    fn validated(self) -> Result<Self, String> {
        if self.depth < 1 || self.degree_bound < 1 || self.period_bound < 1 {
            return Err("depth and bounds must be at least 1".into());
        }
        Ok(self)
    }
}

fn configure_threads() {
    if let Ok(v) = std::env::var("ORBITEQ_THREADS") {
        if v != "auto" {
            if let Ok(n) = v.parse::<usize>() {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build_global();
            }
        }
    }
}

fn exit_code_for_status(status: CheckStatus) -> ExitCode {
    match status {
        CheckStatus::Verified => ExitCode::from(0),
        CheckStatus::Refuted => ExitCode::from(1),
        CheckStatus::Undetermined => ExitCode::from(3),
    }
}

fn exit_code_for_error(err: &orbiteq::Error) -> ExitCode {
    use orbiteq::Error::*;
    match err {
        Undetermined { .. } | DepthUnsupported { .. } => ExitCode::from(3),
        VerificationFailed(_) | WellDefinednessFailed(_) | CocycleLawFailed(_)
        | InversionFailed(_) | RoundtripFailed(_) | NotRelated(_) | NotComposable(_)
        | CoverIncomplete(_) | UnitsNotPreserved(_) => ExitCode::from(1),
        _ => ExitCode::from(2),
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            kind,
            files,
            depth,
            degree_bound,
            period_bound,
            out,
        } => {
            let config = match (RunConfig {
                depth,
                degree_bound,
                period_bound,
            })
            .validated()
            {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match run::cmd_verify(kind, &files, config, out.as_deref()) {
                Ok(status) => exit_code_for_status(status),
                Err(e) => {
                    eprintln!("error: {e}");
                    exit_code_for_error(&e)
                }
            }
        }
        Command::Convert {
            kind,
            files,
            out,
            no_preverify,
            depth,
            degree_bound,
            period_bound,
        } => {
            let config = match (RunConfig {
                depth,
                degree_bound,
                period_bound,
            })
            .validated()
            {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match run::cmd_convert(kind, &files, config, out.as_deref(), no_preverify) {
                Ok(status) => exit_code_for_status(status),
                Err(e) => {
                    eprintln!("error: {e}");
                    exit_code_for_error(&e)
                }
            }
        }
        Command::Inspect { file } => match run::cmd_inspect(&file) {
            Ok(()) => ExitCode::from(0),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
