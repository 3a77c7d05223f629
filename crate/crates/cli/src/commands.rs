use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hodge_volumes::oracles::{verify_table, CorrelatorKey, PsiOracle};
use hodge_volumes::rational::format_fraction;
use hodge_volumes::volumes::{asymptotic_ratio, conjectural_value, evaluate_stable};
use hodge_volumes::{to_big_real, volume_exact, BigReal, Error, DEFAULT_PRECISION_BITS};
use num_traits::Zero;

use crate::cache::{TableCache, CACHE_ENV};
use crate::document::{render_csv, TableDocument};

pub const EXIT_OK: i32 = 0;
/// Runtime failure, or a table/oracle mismatch under `verify`.
pub const EXIT_FAILURE: i32 = 1;
/// `verify` only: the DVV oracle failed its normalization anchors.
pub const EXIT_ORACLE_MISCALIBRATED: i32 = 2;
/// Bad arguments or inputs outside a command's domain.
pub const EXIT_USAGE: i32 = 64;

const VOLUME_DIGITS: usize = 12;
const RATIO_DIGITS: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "hodgevol", version, about = "Linear Hodge integrals and Masur-Veech volumes")]
pub struct Cli {
    /// Table cache file; the largest table ever built is kept there.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the table of c[g][k] for g <= gmax.
    Table(TableArgs),
    /// Print the volume V(g, n).
    Volume(VolumeArgs),
    /// Compare V(g, 0) with (4/pi)(8/3)^(4g-4) for 2 <= g <= gmax.
    Asymptotics(AsymptoticsArgs),
    /// Check the table against the DVV and lambda_g oracles.
    Verify(VerifyArgs),
    /// Print the psi-class intersection number <tau_d1 ... tau_dn>_g.
    Psi(PsiArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub gmax: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VolumeArgs {
    #[arg(long)]
    pub g: u32,
    #[arg(long)]
    pub n: u32,
    /// Print the exact value `<num>/<den> * pi^<e>` (the default).
    #[arg(long, conflicts_with = "digits")]
    pub exact: bool,
    /// Print this many digit-stable significant digits instead.
    #[arg(long)]
    pub digits: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AsymptoticsArgs {
    #[arg(long)]
    pub gmax: u32,
    /// Starting precision in bits; escalated until digits are stable.
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
    pub precision: u32,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 8)]
    pub gmax: u32,
    #[arg(long, default_value_t = 3)]
    pub dvv_gmax: u32,
    #[arg(long, default_value_t = 8)]
    pub diag_gmax: u32,
    /// Emit the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct PsiArgs {
    #[arg(long)]
    pub g: u32,
    /// Comma-separated psi exponents, e.g. `2,2,2`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub indices: Vec<u32>,
}

/// Runs one command, writing results to `out` and diagnostics to `err`.
/// Returns the process exit status.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cache = TableCache::new(cli.cache);
    let result = match cli.command {
        Command::Table(args) => cmd_table(&cache, &args, out, err),
        Command::Volume(args) => cmd_volume(&cache, &args, out, err),
        Command::Asymptotics(args) => cmd_asymptotics(&cache, &args, out, err),
        Command::Verify(args) => cmd_verify(&cache, &args, out, err),
        Command::Psi(args) => cmd_psi(&args, out, err),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::AnchorValidation { .. } => EXIT_ORACLE_MISCALIBRATED,
            Error::InvalidGmax(_)
            | Error::UnstableStratum { .. }
            | Error::InvalidArgument(_)
            | Error::PrecisionTooLow(_)
            | Error::TooManyInsertions { .. }
            | Error::UnstableCorrelator { .. }
            | Error::NegativeDoubleFactorial(_) => EXIT_USAGE,
            Error::GenusBeyondTable { .. } | Error::PrecisionExhausted { .. } => EXIT_FAILURE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::runtime(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

fn cmd_table(cache: &TableCache, args: &TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if args.gmax < 1 {
        return Err(Failure::usage("--gmax must be at least 1"));
    }
    let table = cache.obtain(args.gmax, err)?;
    let text = match args.format {
        Format::Json => TableDocument::from_table(&table).to_json() + "\n",
        Format::Csv => render_csv(&table),
    };
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::runtime(format!("cannot write {}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_volume(cache: &TableCache, args: &VolumeArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    // the table is only consulted from genus two on
    let table = cache.obtain(args.g.max(1), err)?;
    let volume = volume_exact(&table, args.g, args.n)?;
    match args.digits {
        None => writeln!(out, "{volume}")?,
        Some(0) => return Err(Failure::usage("--digits must be positive")),
        Some(digits) => {
            let value = evaluate_stable(digits, DEFAULT_PRECISION_BITS, |bits| to_big_real(&volume, bits))?;
            writeln!(
                out,
                "{}  # {digits} significant digits, stable at {} bits",
                value.to_scientific(digits),
                value.precision_bits()
            )?;
        }
    }
    Ok(EXIT_OK)
}

/// Positional decimal with `sig` significant digits (for values near 1).
fn plain_significant(x: &BigReal, sig: usize) -> String {
    let sci = x.to_scientific(sig);
    let exp10: i64 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    let decimals = (sig as i64 - 1 - exp10).max(0) as usize;
    x.to_fixed(decimals)
}

fn cmd_asymptotics(cache: &TableCache, args: &AsymptoticsArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if args.gmax < 2 {
        return Err(Failure::usage("--gmax must be at least 2"));
    }
    let table = cache
        .obtain(args.gmax, err)
        .map_err(|e| Failure::runtime(format!("table build failed: {e}")))?;
    writeln!(
        out,
        "# V(g,0) against (4/pi)(8/3)^(4g-4); volume and conjectural to {VOLUME_DIGITS} significant digits, \
         ratio to {RATIO_DIGITS}; every value digit-stable, starting from {} bits",
        args.precision
    )?;
    writeln!(out, "g,volume,conjectural,ratio")?;
    for g in 2..=args.gmax {
        let volume = volume_exact(&table, g, 0)?;
        let v = evaluate_stable(VOLUME_DIGITS, args.precision, |bits| to_big_real(&volume, bits))?;
        let c = evaluate_stable(VOLUME_DIGITS, args.precision, |bits| conjectural_value(g, bits))?;
        let r = asymptotic_ratio(&table, g, args.precision)?;
        writeln!(
            out,
            "{g},{},{},{}",
            v.to_scientific(VOLUME_DIGITS),
            c.to_scientific(VOLUME_DIGITS),
            plain_significant(&r, RATIO_DIGITS)
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(cache: &TableCache, args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if args.dvv_gmax > args.gmax || args.diag_gmax > args.gmax {
        return Err(Failure::usage(format!(
            "--gmax {} must be at least --dvv-gmax {} and --diag-gmax {}",
            args.gmax, args.dvv_gmax, args.diag_gmax
        )));
    }
    let table = cache.obtain(args.gmax.max(1), err)?;
    let report = verify_table(&table, args.dvv_gmax, args.diag_gmax)?;
    if args.json {
        let json = serde_json::to_string_pretty(&report).map_err(|e| Failure::runtime(e.to_string()))?;
        writeln!(out, "{json}")?;
    } else {
        out.write_all(report.render_text().as_bytes())?;
    }
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_psi(args: &PsiArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let key = CorrelatorKey::new(args.g, args.indices.clone())?;
    let value = PsiOracle::new().psi_intersection(&key)?;
    if !key.satisfies_dimension() {
        writeln!(
            err,
            "note: indices sum to {}, not 3g-3+n = {}; the correlator vanishes",
            key.indices().iter().map(|&d| u64::from(d)).sum::<u64>(),
            3 * i64::from(args.g) - 3 + key.n() as i64
        )?;
    }
    if value.is_zero() {
        writeln!(out, "0")?;
    } else if value.denom() == &1.into() {
        writeln!(out, "{}", value.numer())?;
    } else {
        writeln!(out, "{}", format_fraction(&value))?;
    }
    Ok(EXIT_OK)
}
