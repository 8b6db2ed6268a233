use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperlat::group::{DEFAULT_EXPONENT_BOUND, DEFAULT_PIGEONHOLE_BOUND, DEFAULT_WORD_BOUND};
use hyperlat::io::{load_group, load_isometry, load_path};
use hyperlat::report::{classify_report, equal_powers_report, group_report, validate_report};
use hyperlat::{
    BigInt, BigRational, Error, GroupBounds, GroupCommand, LoadError, LoadErrorKind, ReportDocument,
};

const EXIT_INVALID: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;
const EXIT_MALFORMED: u8 = 4;

/// Exact dynamics of isometries of hyperbolic lattices.
#[derive(Parser, Debug)]
#[command(name = "hyperlat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify an isometry and certify its spectral radius and entropy.
    Classify {
        file: PathBuf,
        /// Also report the Perron eigenray of a loxodromic isometry.
        #[arg(long)]
        perron: bool,
        /// Width of reported intervals, e.g. 1e-12 or 1/1000.
        #[arg(long, env = "HYPERLAT_PRECISION", value_parser = parse_precision)]
        precision: Option<BigRational>,
    },
    /// Run a group-level computation on a group file.
    Group {
        file: PathBuf,
        #[arg(value_enum)]
        subcommand: GroupSub,
        #[arg(long, default_value_t = DEFAULT_WORD_BOUND, value_parser = positive_usize)]
        word_bound: usize,
        #[arg(long, default_value_t = DEFAULT_EXPONENT_BOUND, value_parser = clap::value_parser!(u32).range(1..))]
        exponent_bound: u32,
        #[arg(long, env = "HYPERLAT_PRECISION", value_parser = parse_precision)]
        precision: Option<BigRational>,
    },
    /// Search for nonzero t1, t2 with A^t1 = B^t2.
    EqualPowers {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EXPONENT_BOUND, value_parser = clap::value_parser!(u32).range(1..))]
        exponent_bound: u32,
        #[arg(long, default_value_t = DEFAULT_PIGEONHOLE_BOUND, value_parser = positive_usize)]
        pigeonhole_bound: usize,
    },
    /// Check a lattice, isometry or group file against every constructor invariant.
    Validate { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupSub {
    NullEntropy,
    InvariantRay,
    FibrationClass,
    NullSubset,
    Phi,
}

impl From<GroupSub> for GroupCommand {
    fn from(s: GroupSub) -> Self {
        match s {
            GroupSub::NullEntropy => GroupCommand::NullEntropy,
            GroupSub::InvariantRay => GroupCommand::InvariantRay,
            GroupSub::FibrationClass => GroupCommand::FibrationClass,
            GroupSub::NullSubset => GroupCommand::NullSubset,
            GroupSub::Phi => GroupCommand::Phi,
        }
    }
}

/// Accepts `p/q`, a decimal such as `0.001`, or scientific notation such as `1e-12`.
fn parse_precision(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let value = if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {s:?}"))?;
        if d == BigInt::from(0) {
            return Err("denominator is zero".into());
        }
        BigRational::new(n, d)
    } else {
        let (mantissa, exp) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (
                m,
                e.parse::<i32>()
                    .map_err(|_| format!("bad exponent in {s:?}"))?,
            ),
            None => (s, 0),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        let digits: BigInt = format!("{int_part}{frac_part}")
            .parse()
            .map_err(|_| format!("cannot read {s:?} as a number"))?;
        let scale = exp - frac_part.len() as i32;
        let ten = BigInt::from(10);
        if scale >= 0 {
            BigRational::from_integer(digits * ten.pow(scale as u32))
        } else {
            BigRational::new(digits, ten.pow(scale.unsigned_abs()))
        }
    };
    if value <= BigRational::from_integer(0.into()) {
        return Err("precision must be positive".into());
    }
    Ok(value)
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn default_precision() -> BigRational {
    BigRational::new(1.into(), BigInt::from(10).pow(12))
}

enum Failure {
    Load(LoadError),
    Core(Error),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure::Load(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Load(LoadError {
                kind: LoadErrorKind::Invalid(Error::Malformed(_)),
                ..
            })
            | Failure::Core(Error::Malformed(_)) => EXIT_MALFORMED,
            _ => EXIT_INVALID,
        }
    }
}

fn echo(path: &Path) -> Value {
    json!({ "file": path.display().to_string() })
}

fn run(cli: Cli) -> Result<ReportDocument, Failure> {
    match cli.command {
        Command::Classify {
            file,
            perron,
            precision,
        } => {
            let g = load_isometry(&file).map_err(|e| in_file(&file, e))?;
            let width = precision.unwrap_or_else(default_precision);
            Ok(classify_report(&g, echo(&file), perron, &width)?)
        }
        Command::Group {
            file,
            subcommand,
            word_bound,
            exponent_bound,
            precision,
        } => {
            let g = load_group(&file).map_err(|e| in_file(&file, e))?;
            let width = precision.unwrap_or_else(default_precision);
            let bounds = GroupBounds {
                word_bound,
                exponent_bound,
            };
            Ok(group_report(
                &g,
                subcommand.into(),
                bounds,
                echo(&file),
                &width,
            )?)
        }
        Command::EqualPowers {
            a,
            b,
            exponent_bound,
            pigeonhole_bound,
        } => {
            let g1 = load_isometry(&a).map_err(|e| in_file(&a, e))?;
            let g2 = load_isometry(&b).map_err(|e| in_file(&b, e))?;
            let input = json!({ "a": a.display().to_string(), "b": b.display().to_string() });
            Ok(equal_powers_report(
                &g1,
                &g2,
                exponent_bound,
                pigeonhole_bound,
                input,
            )?)
        }
        Command::Validate { file } => {
            let (doc, loaded) = load_path(&file).map_err(|e| in_file(&file, e))?;
            Ok(validate_report(&doc, &loaded, echo(&file))?)
        }
    }
}

fn in_file(path: &Path, mut e: LoadError) -> LoadError {
    e.field = if e.field.is_empty() {
        path.display().to_string()
    } else {
        format!("{}: {}", path.display(), e.field)
    };
    e
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{}", report.to_canonical_string());
            if report.undecided {
                ExitCode::from(EXIT_UNDECIDED)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            match &f {
                Failure::Load(e) => eprintln!("error: {e}"),
                Failure::Core(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
