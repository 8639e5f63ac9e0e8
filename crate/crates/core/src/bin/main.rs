use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use cubic_surface::commands::{run, Command};
use cubic_surface::error::Error;
use cubic_surface::io::points_from_json;
use cubic_surface::verify::VerifyOptions;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Sub {
    Construct,
    Configurations,
    CayleySalmon,
    Hexahedral,
    Determinantal,
    CuboCubic,
    Desmic,
    Hexagram,
    Species,
    Group,
    VerifyAll,
}

/// Exact computations on the cubic surface obtained by blowing up six points.
#[derive(Debug, Parser)]
#[command(name = "cubic-surface", version)]
struct Cli {
    /// What to compute.
    #[arg(value_enum)]
    command: Sub,
    /// Points file (JSON, schema 1). Defaults to the built-in rational fixture.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Seed for every sampled choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Exhaustive variants where a command samples by default.
    #[arg(long)]
    full: bool,
    /// Adjoin the roots of irreducible cubics instead of skipping them.
    #[arg(long)]
    split: bool,
    /// Run the desmic checks on all 45 tritangent planes.
    #[arg(long)]
    census: bool,
    /// Worker threads (defaults to rayon's choice).
    #[arg(long)]
    threads: Option<usize>,
}

impl Sub {
    fn command(self) -> Command {
        let name = self.to_possible_value().expect("no skipped variants");
        Command::from_name(name.get_name()).expect("subcommands mirror Command")
    }
}

fn io_fail(msg: String) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return io_fail(format!("thread pool: {e}"));
        }
    }
    let points = match &cli.input {
        None => None,
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return io_fail(format!("{}: {e}", path.display())),
            };
            match points_from_json(&text) {
                Ok(p) => Some(p),
                Err(e @ Error::InvalidInput(_)) => return io_fail(format!("{}: {e}", e.name())),
                Err(e) => {
                    eprintln!("error: {}: {e}", e.name());
                    return ExitCode::from(1);
                }
            }
        }
    };
    let opts = VerifyOptions { seed: cli.seed, full: cli.full, census: cli.census, split: cli.split };
    let out = match run(cli.command.command(), points, &opts) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            return ExitCode::from(1);
        }
    };
    let mut body = match cli.format {
        Format::Text => out.text,
        Format::Json => serde_json::to_string_pretty(&out.json).expect("json values serialize"),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.output {
        None => print!("{body}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                return io_fail(format!("{}: {e}", path.display()));
            }
        }
    }
    if cli.command.command() == Command::VerifyAll && !out.ok {
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
