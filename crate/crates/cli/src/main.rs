use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use stabmod_cli::{acceptance, commands, CliError, CliResult, Options, Report};

#[derive(Parser)]
#[command(name = "stabmod", version, about = "Module computations for translation-invariant stabilizer codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Isotropy, Lagrangian certificate and finite-torus counts.
    Check(Flags),
    /// Presentation and invariants of the charge module.
    Charges(Flags),
    /// Boundary operator module of a half-space.
    Boundary(Flags),
    /// Witt reduction and metabolicity of a univariate form or a boundary module.
    Witt(Flags),
    /// Prints a zoo code in the file format.
    Export { name: String },
    /// Runs every acceptance criterion.
    Acceptance {
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Flags {
    /// Code or form file, or `zoo:NAME`.
    #[arg(long)]
    code: String,
    /// Normal vector of the half-space, e.g. `0,1`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    normal: Option<Vec<i64>>,
    /// Coarse-graining factors.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    coarse: Vec<i64>,
    /// Largest slab height tried for boundary representatives.
    #[arg(long, default_value_t = 12)]
    max_width: i32,
    /// Degree budget of the mobility search.
    #[arg(long, default_value_t = 3)]
    degree: u32,
    /// Largest torus side in `check`.
    #[arg(long, default_value_t = 3)]
    torus_max: u32,
    /// Use only the primary part of the boundary module in `witt`.
    #[arg(long)]
    primary: bool,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    json: Option<PathBuf>,
}

impl Flags {
    fn options(&self) -> Options {
        Options {
            normal: self.normal.clone(),
            coarse: self.coarse.clone(),
            max_width: self.max_width,
            degree: self.degree,
            torus_max: self.torus_max,
            primary: self.primary,
        }
    }
}

fn emit(report: &Report, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, report.to_json() + "\n")
            .map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => {
            println!("{}", report.to_json());
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<i32> {
    let (report, out) = match &cli.command {
        Command::Check(f) => (commands::check(&f.code, &f.options())?, f.json.as_ref()),
        Command::Charges(f) => (commands::charges(&f.code, &f.options())?, f.json.as_ref()),
        Command::Boundary(f) => (commands::boundary(&f.code, &f.options())?, f.json.as_ref()),
        Command::Witt(f) => (commands::witt(&f.code, &f.options())?, f.json.as_ref()),
        Command::Export { name } => {
            let (file, _) = stabmod_cli::load_code(&format!("zoo:{name}"))?;
            println!("{}", serde_json::to_string_pretty(&file).expect("code files serialize"));
            return Ok(0);
        }
        Command::Acceptance { json } => {
            let outcomes = acceptance::run_all();
            for o in &outcomes {
                eprintln!("{}", o.line());
            }
            let all = outcomes.iter().all(|o| o.passed);
            let report = Report::new(
                "acceptance",
                None,
                serde_json::json!({ "all_passed": all, "criteria": outcomes }),
                Vec::new(),
                std::time::Instant::now(),
            )?;
            emit(&report, json.as_ref())?;
            return Ok(if all { 0 } else { 1 });
        }
    };
    emit(&report, out)?;
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
