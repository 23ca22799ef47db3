use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bbcrystal_cli::commands::{
    cmd_count, cmd_graph, cmd_verify, CliError, Format, Output, Suite, Target, EXIT_CONFIG,
};
use bbcrystal_cli::config::{ConfigError, JobConfig};

#[derive(Parser)]
#[command(
    name = "bbcrystal",
    version,
    about = "Crystals for quantum Borcherds-Bozec algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Job configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Write the document here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Explore a crystal and print its graph.
    Graph {
        #[command(flatten)]
        common: Common,
        /// binfty, blambda, elementary:<id>, t, c or tensor:<f1>,<f2>,...
        #[arg(long, default_value = "binfty")]
        target: String,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Count explored nodes per weight.
    Count {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "binfty")]
        target: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Perturb the checked structure so that the suite must fail.
        #[arg(long)]
        inject_fault: bool,
    },
}

fn run(cli: Cli) -> Result<(Output, Option<PathBuf>), CliError> {
    let (common, out) = match &cli.command {
        Command::Graph { common, .. }
        | Command::Count { common, .. }
        | Command::Verify { common, .. } => (common, common.out.clone()),
    };
    let job = JobConfig::load(&common.config)?.validate()?;
    let output = match &cli.command {
        Command::Graph { target, format, .. } => {
            cmd_graph(&job, &target.parse::<Target>()?, *format)?
        }
        Command::Count { target, format, .. } => {
            cmd_count(&job, &target.parse::<Target>()?, *format)?
        }
        Command::Verify {
            suite,
            inject_fault,
            ..
        } => cmd_verify(&job, *suite, *inject_fault)?,
    };
    Ok((output, out))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((output, path)) => {
            let written = match &path {
                Some(p) => std::fs::write(p, &output.text)
                    .map_err(|e| ConfigError::new("--out", format!("{}: {e}", p.display()))),
                None => {
                    print!("{}", output.text);
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(output.status as u8),
                Err(e) => {
                    eprintln!("config error: {e}");
                    ExitCode::from(EXIT_CONFIG as u8)
                }
            }
        }
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Config(_) => ExitCode::from(EXIT_CONFIG as u8),
                CliError::Crystal(_) => ExitCode::FAILURE,
            }
        }
    }
}
