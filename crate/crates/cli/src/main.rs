mod report;
mod table;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use semireg::bounds::AiryConstant;
use semireg::interval::parse_rational;
use semireg::roots::DEFAULT_CEILING;
use semireg::SystemShape;

/// Degree of regularity of quadratic semi-regular systems, its exact value
/// and closed-form bounds.
#[derive(Debug, Parser)]
#[command(name = "semireg", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Md, global = true)]
    format: Format,
    /// Width of root and eigenvalue enclosures, as a rational or decimal.
    #[arg(long, default_value = "1e-6", global = true)]
    precision: String,
    /// First real zero of the Airy-type function used by the LS lower bound.
    #[arg(long = "airy-i1", default_value = "3.37213", global = true)]
    airy_i1: String,
    /// Largest family size 2m - n accepted by the verification suites.
    #[arg(long, default_value_t = DEFAULT_CEILING, global = true)]
    ceiling: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact degree of regularity of m equations in n variables.
    Exact {
        m: u64,
        n: u64,
        /// Also print the positive prefix of the Hilbert series.
        #[arg(long)]
        coefficients: bool,
    },
    /// The four closed-form bounds next to the exact value.
    Bounds {
        m: u64,
        n: u64,
        /// Print the root bounds as functions of k instead.
        #[arg(long)]
        curve: bool,
    },
    /// Sweep a family of shapes.
    Table(table::TableArgs),
    /// Run the property and cross-validation suites up to a family size.
    Verify { max_family_size: u64 },
}

/// Settings shared by the subcommands after validation.
pub struct Settings {
    pub format: Format,
    pub width: BigRational,
    pub airy: AiryConstant,
    pub ceiling: u64,
}

/// Failure modes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Bad input or violated precondition: exit 2.
    Usage(String),
    /// A checked property does not hold: exit 1.
    Verification(String),
}

impl From<semireg::Error> for Failure {
    fn from(e: semireg::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn settings(opts: &GlobalOpts) -> Result<Settings, Failure> {
    let width = parse_rational(&opts.precision)?;
    if width <= BigRational::from_integer(0.into()) {
        return Err(Failure::Usage(format!("--precision must be positive, got {}", opts.precision)));
    }
    Ok(Settings {
        format: opts.format,
        width,
        airy: AiryConstant::from_decimal(&opts.airy_i1)?,
        ceiling: opts.ceiling,
    })
}

pub fn shape(m: u64, n: u64) -> Result<SystemShape, Failure> {
    Ok(SystemShape::new(m, n)?)
}

fn run(cli: Cli) -> Result<String, Failure> {
    let settings = settings(&cli.global)?;
    match cli.command {
        Command::Exact { m, n, coefficients } => report::exact(&settings, shape(m, n)?, coefficients),
        Command::Bounds { m, n, curve: false } => report::bounds(&settings, shape(m, n)?),
        Command::Bounds { m, n, curve: true } => report::curve(&settings, shape(m, n)?),
        Command::Table(args) => table::run(&settings, &args),
        Command::Verify { max_family_size } => verify::run(&settings, max_family_size),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
