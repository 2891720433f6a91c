use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use multigamma_cli::{run, Command, DimSpec, Fault, Format, GridSpec, RunConfig, PRECISION_ENV};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    /// log of Barnes' multiple gamma, rows over --n and --z
    Barnes,
    /// det D² on S^n; with --nu, boundary and bulk log-determinants
    Det,
    /// integrated anomaly over --nu; without --nu, the type-A coefficient
    Anomaly,
    /// F-coefficient for odd n
    Fcoef,
    /// residue and finite part of the continued mode sum
    Dimreg,
    /// det D²(S^n) for n = 1..=n-max, with a tail report on stderr
    Scan,
    /// invariant suite; exit 1 on the first failure
    Selftest,
}

#[derive(Debug, Parser)]
#[command(name = "multigamma", version, about = "Barnes multiple gamma and sphere determinants")]
struct Args {
    command: Cmd,

    /// Dimension `N` or inclusive range `A..B`
    #[arg(long, visible_alias = "n-max")]
    n: Option<String>,

    /// Mass parameter (or `z` for barnes): value or `start:stop:count`
    #[arg(long, visible_alias = "z")]
    nu: Option<String>,

    /// Target relative error
    #[arg(long, env = PRECISION_ENV)]
    precision: Option<f64>,

    #[arg(long, default_value = "csv", value_parser = ["csv", "jsonl", "json-lines", "pretty"])]
    format: String,

    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

fn parse(args: Args) -> Result<RunConfig, multigamma_cli::CliError> {
    use multigamma_cli::CliError::Usage;
    let command = match args.command {
        Cmd::Barnes => Command::Barnes,
        Cmd::Det => Command::Det,
        Cmd::Anomaly => Command::Anomaly,
        Cmd::Fcoef => Command::Fcoef,
        Cmd::Dimreg => Command::Dimreg,
        Cmd::Scan => Command::Scan,
        Cmd::Selftest => Command::Selftest,
    };
    let n = args.n.as_deref().map(str::parse::<DimSpec>).transpose().map_err(Usage)?;
    let nu = args.nu.as_deref().map(str::parse::<GridSpec>).transpose().map_err(Usage)?;
    let format = args.format.parse::<Format>().map_err(Usage)?;
    let fault = args.inject_fault.as_deref().map(str::parse::<Fault>).transpose().map_err(Usage)?;
    RunConfig::new(command, n, nu, args.precision, format, fault)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let result = parse(args).and_then(|cfg| {
        let mut out = io::BufWriter::new(stdout.lock());
        let r = run(&cfg, &mut out, &mut stderr.lock());
        out.flush().map_err(multigamma_cli::CliError::Io).and(r)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(stderr.lock(), "multigamma: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
