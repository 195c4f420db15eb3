use biphoton::cli;
use biphoton::twofold::PatternKind;
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "biphoton", version, about = "Two-photon interference simulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario config and write the data file plus manifest.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Directory to place the output files in (overrides the directory
        /// part of output.path).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Statically validate a scenario config, listing every violation.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Recover a spectral marginal from a simulated or measured pattern CSV
    /// (baseline removal plus the inverse quantum Wiener-Khinchin transform).
    Qwkt {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, value_enum)]
        kind: QwktKind,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum QwktKind {
    /// Difference-frequency marginal from a HOM pattern.
    Hom,
    /// Sum-frequency marginal from a N00N pattern.
    Noon,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Simulate { config, out } => match cli::run(&config, out.as_deref()) {
            Ok(output) => {
                println!("wrote {}", output.data_path.display());
                println!("wrote {}", output.manifest_path.display());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code() as u8)
            }
        },
        Command::Validate { config } => {
            let violations = cli::validate_file(&config);
            if violations.is_empty() {
                println!("ok");
                ExitCode::SUCCESS
            } else {
                for v in &violations {
                    eprintln!("{v}");
                }
                ExitCode::from(1)
            }
        }
        Command::Qwkt { pattern, kind, out } => {
            let kind = match kind {
                QwktKind::Hom => PatternKind::Hom,
                QwktKind::Noon => PatternKind::Noon,
            };
            match cli::invert_pattern(&pattern, kind, &out) {
                Ok(()) => {
                    println!("wrote {}", out.display());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
    }
}
