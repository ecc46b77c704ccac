use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use zptower_cli::commands::{Command, Sources};
use zptower_cli::report::{Config, ErrorBody};
use zptower_cli::{error_json, execute};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Parser, Debug)]
#[command(name = "zptower", version, about = "Exact arithmetic for Z_p-towers of function fields")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Tower, profile, Witt vector or Frobenius input file.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Local normal form file.
    #[arg(long, global = true)]
    form: Option<PathBuf>,
    /// Local unit file.
    #[arg(long, global = true)]
    unit: Option<PathBuf>,
    /// Level (symbol, frobenius) or character exponent (ldegree).
    #[arg(long, global = true)]
    n: Option<u32>,
    #[arg(long, global = true)]
    nmax: Option<u32>,
    #[arg(long, global = true)]
    rmax: Option<u64>,
    /// Working p-adic precision; must be at least the requested level.
    #[arg(long, global = true, env = "ZPTOWER_PRECISION")]
    precision: Option<u32>,
    /// Witness budget for local reduction.
    #[arg(long, global = true)]
    series_precision: Option<i64>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Normal form of a local or global Witt vector.
    Reduce,
    /// Schmid-Witt symbol of a form and a unit.
    Symbol,
    /// Conductor exponents, by formula and by symbol search.
    Conductor,
    /// Upper ramification breaks.
    Breaks,
    /// Genus sequence with bounds and stability.
    Genus,
    /// Stability classification.
    Stability,
    /// Degree of L(chi, s) for a character of order p^n.
    Ldegree,
    /// Frobenius element at an unramified point.
    Frobenius,
    /// Seeded self-checks.
    Oracle,
}

fn read(path: &Option<PathBuf>, flag: &str, command: &str) -> Result<Option<String>, String> {
    match path {
        None => Ok(None),
        Some(p) => std::fs::read_to_string(p).map(Some).map_err(|e| {
            error_json(
                command,
                ErrorBody {
                    kind: "malformed_input".into(),
                    pointer: Some(flag.into()),
                    message: format!("cannot read {}: {e}", p.display()),
                },
            )
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Reduce => Command::Reduce,
        Cmd::Symbol => Command::Symbol,
        Cmd::Conductor => Command::Conductor,
        Cmd::Breaks => Command::Breaks,
        Cmd::Genus => Command::Genus,
        Cmd::Stability => Command::Stability,
        Cmd::Ldegree => Command::Ldegree,
        Cmd::Frobenius => Command::Frobenius,
        Cmd::Oracle => Command::Oracle,
    };
    let name = command.name();
    let src = (|| {
        Ok::<_, String>(Sources {
            input: read(&cli.input, "--input", name)?,
            form: read(&cli.form, "--form", name)?,
            unit: read(&cli.unit, "--unit", name)?,
        })
    })();
    let src = match src {
        Ok(s) => s,
        Err(msg) => {
            eprint!("{msg}");
            return ExitCode::from(2);
        }
    };
    let show = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
    let cfg = Config {
        input: show(&cli.input),
        form: show(&cli.form),
        unit: show(&cli.unit),
        n: cli.n,
        n_max: cli.nmax,
        r_max: cli.rmax,
        precision: cli.precision,
        series_precision: cli.series_precision,
        format: format!("{:?}", cli.format).to_lowercase(),
        seed: cli.seed,
    };
    let out = execute(command, cfg, &src);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
