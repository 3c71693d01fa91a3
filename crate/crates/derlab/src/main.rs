use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use derlab::report::{run_command, CliError, CommandSpec, Format};
use derlab::session::Session;

/// Exact differential-simplicity toolkit for polynomial and truncated
/// power-series rings.
#[derive(Parser)]
#[command(name = "derlab", version, disable_help_subcommand = true)]
struct Cli {
    /// What to compute: parse, bracket, commutes, divergence, classify,
    /// simple, upgrade, slice, nilpotent, or basis.
    command: CommandName,
    /// Session file declaring the ring, derivations, and families.
    file: PathBuf,
    /// Family name (classify, simple, upgrade, basis, nilpotent).
    #[arg(long)]
    family: Option<String>,
    /// Derivation name(s): one for divergence/slice/nilpotent, two for
    /// bracket/commutes.
    #[arg(long, num_args = 1..=2)]
    der: Vec<String>,
    /// Iteration budget for nilpotency checks (defaults to
    /// 2 + n * (1 + max coefficient degree)).
    #[arg(long)]
    budget: Option<u32>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum CommandName {
    Parse,
    Bracket,
    Commutes,
    Divergence,
    Classify,
    Simple,
    Upgrade,
    Slice,
    Nilpotent,
    Basis,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

fn build_spec(cli: &Cli) -> Result<CommandSpec, CliError> {
    let one_der = |what: &str| -> Result<String, CliError> {
        match cli.der.as_slice() {
            [d] => Ok(d.clone()),
            _ => Err(CliError::Usage(format!("{what} needs exactly one --der NAME"))),
        }
    };
    let two_ders = |what: &str| -> Result<(String, String), CliError> {
        match cli.der.as_slice() {
            [a, b] => Ok((a.clone(), b.clone())),
            _ => Err(CliError::Usage(format!("{what} needs --der NAME NAME"))),
        }
    };
    let family = |what: &str| -> Result<String, CliError> {
        cli.family
            .clone()
            .ok_or_else(|| CliError::Usage(format!("{what} needs --family NAME")))
    };
    Ok(match cli.command {
        CommandName::Parse => CommandSpec::Parse,
        CommandName::Bracket => {
            let (a, b) = two_ders("bracket")?;
            CommandSpec::Bracket { a, b }
        }
        CommandName::Commutes => {
            let (a, b) = two_ders("commutes")?;
            CommandSpec::Commutes { a, b }
        }
        CommandName::Divergence => CommandSpec::Divergence {
            der: one_der("divergence")?,
        },
        CommandName::Classify => CommandSpec::Classify {
            family: family("classify")?,
        },
        CommandName::Simple => CommandSpec::Simple {
            family: family("simple")?,
        },
        CommandName::Upgrade => CommandSpec::Upgrade {
            family: family("upgrade")?,
        },
        CommandName::Slice => CommandSpec::Slice {
            der: one_der("slice")?,
        },
        CommandName::Nilpotent => match (&cli.family, cli.der.as_slice()) {
            (Some(f), []) => CommandSpec::NilpotentFamily {
                family: f.clone(),
                budget: cli.budget,
            },
            (None, [d]) => CommandSpec::NilpotentDer {
                der: d.clone(),
                budget: cli.budget,
            },
            _ => {
                return Err(CliError::Usage(
                    "nilpotent needs either --der NAME or --family NAME".into(),
                ))
            }
        },
        CommandName::Basis => CommandSpec::Basis {
            family: family("basis")?,
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let session = match Session::load(&cli.file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let spec = match build_spec(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run_command(&session, &spec) {
        Ok(report) => {
            let format = match cli.format {
                OutputFormat::Text => Format::Text,
                OutputFormat::Json => Format::Json,
            };
            print!("{}", report.render(format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
