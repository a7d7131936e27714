use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use aqcalc::corpus::{corpus_run, load, run_document};
use aqcalc::jobs::Settings;
use aqcalc::report::{emit, envelope, write_certificates, CertificateFile, Format};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNSETTLED: u8 = 3;

#[derive(Parser)]
#[command(name = "aqcalc", version, about = "Homological invariants of graded rings and DG algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Homological cap.
    #[arg(long, global = true, default_value_t = 12)]
    cap: usize,
    /// Internal degree cap.
    #[arg(long = "internal-cap", global = true, default_value_t = 24)]
    internal_cap: i32,
    /// Ext window as LOW,HIGH. Defaults to [-2*cap, 0].
    #[arg(long, global = true, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,
    /// Iterations for the derivation probe.
    #[arg(long, global = true, default_value_t = 16)]
    iterations: usize,
    /// Reinterpret every field as GF(p), or QQ for 0.
    #[arg(long = "char", global = true)]
    characteristic: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Worker threads for corpus runs.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Treat unsettled results as failures.
    #[arg(long, global = true)]
    strict: bool,
    /// Write the report here; certificates go next to it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the jobs of one input file.
    Run { file: PathBuf },
    /// Parse and check a file, then print it back in normal form.
    Check { file: PathBuf },
    /// Run every .aq file in a directory.
    Corpus { dir: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    let (a, b) = s.split_once(',').ok_or("expected LOW,HIGH")?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err("LOW must not exceed HIGH".into());
    }
    Ok((a, b))
}

fn read(path: &Path) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(EXIT_INPUT)
    })
}

fn output(cli: &Cli, text: &str, certs: &[CertificateFile]) -> Result<(), ExitCode> {
    let fail = |e: std::io::Error| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_INPUT)
    };
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text).map_err(fail)?;
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            write_certificates(dir, certs).map_err(fail)
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn status(violations: usize, unsettled: usize, input_errors: usize, strict: bool) -> ExitCode {
    if violations > 0 {
        ExitCode::from(EXIT_VIOLATION)
    } else if input_errors > 0 {
        ExitCode::from(EXIT_INPUT)
    } else if strict && unsettled > 0 {
        ExitCode::from(EXIT_UNSETTLED)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) | Err(code) => code,
    }
}

fn run(cli: &Cli) -> Result<ExitCode, ExitCode> {
    let settings = Settings {
        homological: cli.cap,
        internal: cli.internal_cap,
        window: cli.window,
        iterations: cli.iterations,
    };
    let format = match cli.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Text => Format::Text,
    };
    match &cli.command {
        Command::Check { file } => {
            let src = read(file)?;
            match load(&src, cli.characteristic) {
                Ok((doc, _)) => {
                    output(cli, &doc.to_string(), &[])?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(d) => {
                    eprintln!("{}: {d}", file.display());
                    Ok(ExitCode::from(EXIT_INPUT))
                }
            }
        }
        Command::Run { file } => {
            let src = read(file)?;
            let results = run_document(&src, &settings, cli.characteristic).map_err(|d| {
                eprintln!("{}: {d}", file.display());
                ExitCode::from(EXIT_INPUT)
            })?;
            let (mut text, mut certs) = (String::new(), Vec::new());
            let (mut violations, mut unsettled, mut errors) = (0, 0, 0);
            for r in &results {
                match r {
                    Ok(o) => {
                        violations += o.violations.len();
                        unsettled += o.unsettled.len();
                        let (v, files) = envelope(o);
                        if format == Format::Text && !text.is_empty() {
                            text.push('\n');
                        }
                        text.push_str(&emit(&v, format));
                        certs.extend(files);
                    }
                    Err(d) => {
                        errors += 1;
                        eprintln!("{}: {d}", file.display());
                    }
                }
            }
            output(cli, &text, &certs)?;
            Ok(status(violations, unsettled, errors, cli.strict))
        }
        Command::Corpus { dir } => {
            let report = corpus_run(dir, &settings, cli.characteristic, cli.jobs).map_err(|e| {
                eprintln!("error: cannot read corpus {}: {e}", dir.display());
                ExitCode::from(EXIT_INPUT)
            })?;
            output(cli, &emit(&report.aggregate, format), &report.certificates)?;
            let t = &report.tally;
            eprintln!(
                "{} jobs, {} violations, {} unsettled, {} parse failures, {} job errors",
                t.jobs, t.violations, t.unsettled, t.parse_failures, t.job_errors
            );
            Ok(status(t.violations, t.unsettled, t.parse_failures + t.job_errors, cli.strict))
        }
    }
}
