use std::path::PathBuf;
use std::process::ExitCode;

use bbdescent_cli::{error_report, parse_problem, run_text, serialize, CliError, RunOptions, EXIT_INPUT_ERROR};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bbdescent", version, about = "Fields of definition of building blocks up to isogeny")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the command stated in a problem file.
    Run {
        file: PathBuf,
        /// Machine-readable report on stdout.
        #[arg(long)]
        json: bool,
        /// Per-shape search trace, certificate logs and notes.
        #[arg(long)]
        trace: bool,
        /// Recheck a witness from explicit quaternion lifts.
        #[arg(long)]
        verify_witness: bool,
        /// Run as if the file had no certificate sections.
        #[arg(long)]
        ignore_certificates: bool,
    },
    /// Print the canonical form of a problem file.
    Fmt {
        file: PathBuf,
        /// Exit 1 if the file is not already canonical.
        #[arg(long)]
        check: bool,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn code(n: i32) -> ExitCode {
    ExitCode::from(n as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Cmd::Run {
            file,
            json,
            trace,
            verify_witness,
            ignore_certificates,
        } => {
            let opts = RunOptions {
                verify_witness,
                ignore_certificates,
            };
            match read(&file).and_then(|t| run_text(&t, opts)) {
                Ok(report) => {
                    if json {
                        println!("{}", report.to_json());
                    } else {
                        print!("{}", report.to_text(trace));
                    }
                    code(report.exit_code)
                }
                Err(e) => {
                    if json {
                        println!("{}", serde_json::to_string_pretty(&error_report(&e)).expect("serializes"));
                    }
                    eprintln!("error: {e}");
                    code(EXIT_INPUT_ERROR)
                }
            }
        }
        Cmd::Fmt { file, check } => {
            let parsed = read(&file).and_then(|t| Ok((parse_problem(&t)?, t)));
            match parsed {
                Ok((p, text)) => {
                    let canon = serialize(&p);
                    if check {
                        if canon == text {
                            return ExitCode::SUCCESS;
                        }
                        eprintln!("{}: not in canonical form", file.display());
                        return ExitCode::from(1);
                    }
                    print!("{canon}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    code(EXIT_INPUT_ERROR)
                }
            }
        }
    }
}
