//! The `mmpr` command line.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 input error, 3 parameter
//! error, 4 corrupt payload.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds;
use crate::codec;
use crate::coders::{
    dth_exp_code, exp_huffman, first_order_shannon, huffman_average, minimax_huffman,
    shannon_code, CoderResult,
};
use crate::error::{Error, Result};
use crate::extremal::{self, ExtremalSpec, L1Side};
use crate::io::{self, CodebookJson};
use crate::model::{canonical_assign, LengthVector, WeightVector};
use crate::verify::{self, Harness};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PARAMETER: i32 = 3;
pub const EXIT_CORRUPT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "mmpr", version, about = "Minimax-redundancy prefix codes, bounds and verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Avg,
    Minimax,
    Shannon,
    Shannon1,
    Exp,
    Dexp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Upper,
    Lower,
    L1Upper,
    L1Lower,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a codebook for a distribution file.
    Code {
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        /// Base `a` of the exponential average (with `--objective exp`).
        #[arg(long)]
        base: Option<f64>,
        /// Exponent `d` (with `--objective dexp`).
        #[arg(long)]
        d: Option<f64>,
        #[arg(long)]
        input: PathBuf,
        /// Defaults to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Bounds on the optimal maximum pointwise redundancy given p(1).
    Bounds {
        #[arg(long, conflicts_with = "sweep", required_unless_present = "sweep")]
        p1: Option<f64>,
        /// Grid `start:stop:step`, written as CSV.
        #[arg(long)]
        sweep: Option<String>,
        /// Report the first-codeword-length bounds instead.
        #[arg(long, requires = "p1")]
        l1: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized check of coders and bounds against the exhaustive oracle.
    Verify {
        #[arg(long, default_value_t = 2)]
        nmin: usize,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated exponents for the d-th exponential checks.
        #[arg(long, default_value = "1", value_delimiter = ',')]
        d_list: Vec<f64>,
    },
    /// Print an extremal distribution and what it witnesses.
    Extremal {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        p1: f64,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Encode whitespace-separated 1-based symbols with a codebook.
    Encode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Decode a payload back to symbols.
    Decode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::CorruptPayload(_) => EXIT_CORRUPT,
        Error::InvalidBase(_)
        | Error::InvalidParameter(_)
        | Error::InvalidEpsilon { .. }
        | Error::TooLarge { .. } => EXIT_PARAMETER,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run_command(&cli.command, &Harness::default()),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_PARAMETER
            } else {
                EXIT_OK
            }
        }
    }
}

/// Runs a parsed command; `harness` is used by `verify`.
pub fn run_command(command: &Command, harness: &Harness) -> i32 {
    match dispatch(command, harness) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("mmpr: {e}");
            exit_code(&e)
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn dispatch(command: &Command, harness: &Harness) -> Result<i32> {
    match command {
        Command::Code {
            objective,
            base,
            d,
            input,
            output,
        } => {
            let json = cmd_code(*objective, *base, *d, input)?;
            write_or_print(output.as_deref(), &(io::codebook_to_json(&json) + "\n"))?;
        }
        Command::Bounds { p1, sweep, l1, out } => {
            let text = cmd_bounds(*p1, sweep.as_deref(), *l1)?;
            write_or_print(out.as_deref(), &text)?;
        }
        Command::Verify {
            nmin,
            nmax,
            trials,
            seed,
            d_list,
        } => {
            let report = harness.run(*nmin, *nmax, *trials, *seed, d_list)?;
            println!("{}", report.to_json());
            if !report.passed() {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Extremal {
            family,
            p1,
            epsilon,
        } => print!("{}", cmd_extremal(*family, *p1, *epsilon)?),
        Command::Encode {
            code,
            input,
            output,
        } => {
            let book = io::codebook_from_json(&read_text(code)?)?;
            let symbols = io::parse_symbols(&read_text(input)?, book.len())?;
            fs::write(output, codec::encode(&book, &symbols)?)?;
        }
        Command::Decode {
            code,
            input,
            output,
        } => {
            let book = io::codebook_from_json(&read_text(code)?)?;
            let payload = fs::read(input)?;
            let symbols = codec::decode(&book, &payload)?;
            fs::write(output, io::format_symbols(&symbols))?;
        }
    }
    Ok(EXIT_OK)
}

fn require(value: Option<f64>, flag: &str, objective: &str) -> Result<f64> {
    value.ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required with --objective {objective}")))
}

fn reject(value: Option<f64>, flag: &str) -> Result<()> {
    match value {
        Some(_) => Err(Error::InvalidParameter(format!("--{flag} does not apply to this objective"))),
        None => Ok(()),
    }
}

/// Builds the caller-order codebook for a distribution file.
pub fn cmd_code(objective: ObjectiveArg, base: Option<f64>, d: Option<f64>, input: &Path) -> Result<CodebookJson> {
    let (base, d) = match objective {
        ObjectiveArg::Exp => {
            reject(d, "d")?;
            (Some(require(base, "base", "exp")?), None)
        }
        ObjectiveArg::Dexp => {
            reject(base, "base")?;
            (None, Some(require(d, "d", "dexp")?))
        }
        _ => {
            reject(base, "base")?;
            reject(d, "d")?;
            (None, None)
        }
    };
    // parameters are checked before the file so a bad flag is reported as such
    if let Some(a) = base {
        crate::objectives::check_base(a)?;
    }
    if let Some(d) = d {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::InvalidParameter(format!("d must be positive, got {d}")));
        }
    }
    let p = io::parse_distribution(&read_text(input)?)?;
    let (name, result): (&str, CoderResult<f64>) = match objective {
        ObjectiveArg::Avg => ("avg", huffman_average(&p)),
        ObjectiveArg::Minimax => ("minimax", minimax_huffman(&p)),
        ObjectiveArg::Shannon => ("shannon", shannon_code(&p)),
        ObjectiveArg::Shannon1 => ("shannon1", first_order_shannon(&p)?),
        ObjectiveArg::Exp => ("exp", exp_huffman(&WeightVector::from_distribution(&p), base.unwrap())?),
        ObjectiveArg::Dexp => ("dexp", dth_exp_code(&p, d.unwrap())?),
    };
    let caller_lengths = LengthVector::new(p.to_caller_order(result.lengths.as_slice()));
    let book = canonical_assign(&caller_lengths)?.with_objective(name, result.objective_value);
    Ok(CodebookJson::from_codebook(&book, base.or(d), Some(p.caller_probs())))
}

fn parse_sweep(spec: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::InvalidParameter(format!("--sweep expects start:stop:step, got {spec:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    Ok((num(parts[0])?, num(parts[1])?, num(parts[2])?))
}

/// Text printed by `bounds`: interval JSON, first-length JSON, or sweep CSV.
pub fn cmd_bounds(p1: Option<f64>, sweep: Option<&str>, l1: bool) -> Result<String> {
    if let Some(spec) = sweep {
        let (start, stop, step) = parse_sweep(spec)?;
        let rows = verify::sweep_bounds(start, stop, step)?;
        return Ok(bounds::sweep_csv(&rows));
    }
    let p1 = p1.ok_or_else(|| Error::InvalidParameter("--p1 or --sweep is required".into()))?;
    if l1 {
        Ok(to_json(&bounds::l1_bounds(p1)?))
    } else {
        Ok(to_json(&bounds::minimax_bounds(p1)?))
    }
}

#[derive(Serialize)]
struct ExtremalOutput {
    probabilities: Vec<f64>,
    spec: ExtremalSpec<f64>,
}

/// JSON printed by `extremal`.
pub fn cmd_extremal(family: FamilyArg, p1: f64, epsilon: Option<f64>) -> Result<String> {
    if epsilon.is_some() && family != FamilyArg::Upper {
        return Err(Error::InvalidParameter("--epsilon only applies to --family upper".into()));
    }
    let (p, spec) = match family {
        FamilyArg::Upper => extremal::gen_upper_family(p1, epsilon)?,
        FamilyArg::Lower => extremal::gen_lower_family(p1)?,
        FamilyArg::L1Upper => extremal::gen_l1_family(p1, L1Side::Upper)?,
        FamilyArg::L1Lower => extremal::gen_l1_family(p1, L1Side::Lower)?,
    };
    Ok(to_json(&ExtremalOutput {
        probabilities: p.probs().to_vec(),
        spec,
    }))
}
