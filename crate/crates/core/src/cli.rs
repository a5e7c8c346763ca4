//! The `rl` command-line front end.
//!
//! All data goes to the output stream as JSON (or CSV for grids), all
//! diagnostics to the error stream. Exit codes: 0 success, 1 analysis
//! error, 2 usage or filter-specification error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::biortho::{biorthogonality_verdict, orthogonality_verdict};
use crate::cascade::{cascade_time, h_cross_approx, GridSpec};
use crate::config::{self, Defaults};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::stretched_haar::{continuous_eigenbasis, doubling_cycles, stretched_haar_filter};
use crate::transfer::{elemprop_suite, fixed_space, lawton_matrix, spectrum, Filter};

/// Where a filter comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum FilterSource {
    /// Real coefficients starting at exponent `min_deg`.
    Inline {
        min_deg: i64,
        coeffs: Vec<f64>,
    },
    /// LaurentPoly JSON with an extra `"N"` field.
    File(PathBuf),
    Haar,
    Stretched(i64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FilterSpec {
    pub source: FilterSource,
    /// Scale for inline filters; presets and files carry their own.
    pub scale: i64,
}

impl FilterSpec {
    /// Parses `haar`, `stretched:<p>`, a comma-separated coefficient list,
    /// or a path to a JSON file.
    pub fn parse(text: &str, scale: i64, min_deg: i64) -> Result<Self> {
        let text = text.trim();
        let source = if text == "haar" {
            FilterSource::Haar
        } else if let Some(p) = text.strip_prefix("stretched:") {
            let p: i64 = p
                .parse()
                .map_err(|_| Error::FilterSpec(format!("bad stretch parameter {p:?}")))?;
            if p < 1 || p % 2 == 0 {
                return Err(Error::FilterSpec(format!(
                    "stretch parameter must be odd and positive, got {p}"
                )));
            }
            FilterSource::Stretched(p)
        } else if text.contains(',') || text.parse::<f64>().is_ok() {
            let coeffs = text
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::FilterSpec(format!("bad coefficient {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            FilterSource::Inline { min_deg, coeffs }
        } else {
            FilterSource::File(PathBuf::from(text))
        };
        Ok(FilterSpec { source, scale })
    }
}

#[derive(Deserialize)]
struct FilterFile {
    min_deg: i64,
    coeffs: Vec<Complex64>,
    #[serde(rename = "N")]
    scale: i64,
}

/// Builds the filter described by `spec`.
pub fn parse_filter(spec: &FilterSpec) -> Result<Filter> {
    let spec_err = |e: Error| match e {
        Error::InvalidScale(n) => Error::FilterSpec(format!("N must be at least 2, got {n}")),
        Error::ZeroFilter => Error::FilterSpec("filter is identically zero".into()),
        Error::InvalidStretch(p) => Error::FilterSpec(format!(
            "stretch parameter must be odd and positive, got {p}"
        )),
        other => other,
    };
    match &spec.source {
        FilterSource::Haar => Ok(Filter::haar()),
        FilterSource::Stretched(p) => stretched_haar_filter(*p).map_err(spec_err),
        FilterSource::Inline { min_deg, coeffs } => {
            Filter::new(LaurentPoly::from_real(*min_deg, coeffs), spec.scale).map_err(spec_err)
        }
        FilterSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::FilterSpec(format!("{}: {e}", path.display())))?;
            let file: FilterFile = serde_json::from_str(&text)
                .map_err(|e| Error::FilterSpec(format!("{}: {e}", path.display())))?;
            Filter::new(LaurentPoly::new(file.min_deg, file.coeffs), file.scale).map_err(spec_err)
        }
    }
}

#[derive(Parser)]
#[command(
    name = "rl",
    version,
    about = "Transfer operators, fixed spaces and orthogonality criteria for wavelet filters",
    after_help = "FILTER is `haar`, `stretched:<p>` (p odd), a comma list of real coefficients \
                  (with --scale and --min-deg), or a JSON file as written by `rl export`."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FilterArgs {
    /// Filter m0.
    #[arg(long, value_name = "FILTER")]
    filter: String,
    /// Dual filter m0'; defaults to m0.
    #[arg(long, value_name = "FILTER")]
    filter2: Option<String>,
    /// Scale N for inline coefficient lists.
    #[arg(long, default_value_t = 2)]
    scale: i64,
    /// Exponent of the first inline coefficient.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    min_deg: i64,
}

#[derive(Args)]
struct TolArg {
    /// Relative tolerance.
    #[arg(long, env = config::TOL_ENV, default_value_t = config::DEFAULT_TOL)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Orthogonality (one filter) or biorthogonality (with --filter2) report.
    Verdict {
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        tol: TolArg,
    },
    /// Eigenvalues of the operator on the invariant window.
    Spectrum {
        #[command(flatten)]
        filter: FilterArgs,
    },
    /// Eigenspace of the operator for one eigenvalue.
    Fixedspace {
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        tol: TolArg,
        /// Real part of the eigenvalue.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        eigenvalue: f64,
        /// Imaginary part of the eigenvalue.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        eigenvalue_im: f64,
    },
    /// Matrix of the operator on the invariant window.
    Matrix {
        #[command(flatten)]
        filter: FilterArgs,
    },
    /// Orbits of k -> 2k mod p.
    Cycles {
        /// Odd stretch parameter.
        #[arg(long)]
        p: i64,
    },
    /// Continuous eigenfunctions of the stretched Haar operator, one per orbit.
    Eigenbasis {
        /// Odd stretch parameter.
        #[arg(long)]
        p: i64,
    },
    /// Periodized cascade product on [0, 2π), or the time-domain cascade with --time.
    Cascade {
        #[command(flatten)]
        filter: FilterArgs,
        /// Factors in the partial product.
        #[arg(long, default_value_t = config::DEFAULT_PRODUCT_TERMS)]
        n: i64,
        /// Periodization terms |k| <= K.
        #[arg(long = "K", default_value_t = config::DEFAULT_PERIODIZATION_TERMS)]
        k: i64,
        /// Grid points on [0, 2π).
        #[arg(long, default_value_t = config::DEFAULT_GRID)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Iterate the refinement operator from the unit box instead.
        #[arg(long)]
        time: bool,
        /// Time-domain iterations.
        #[arg(long, default_value_t = config::DEFAULT_CASCADE_ITERS)]
        iters: usize,
        /// Time-domain samples per unit length (a power of N).
        #[arg(long, default_value_t = config::DEFAULT_RESOLUTION)]
        resolution: usize,
    },
    /// Randomized check of the four operator identities.
    Elemprop {
        #[arg(long, default_value_t = config::DEFAULT_SEED)]
        seed: u64,
        /// Number of random instances.
        #[arg(long, default_value_t = config::DEFAULT_ELEMPROP_CASES)]
        count: usize,
    },
    /// Write a filter as JSON.
    Export {
        #[command(flatten)]
        filter: FilterArgs,
    },
    /// Print the numeric defaults.
    Config,
}

enum Failure {
    Usage(String),
    Analysis(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::FilterSpec(_) | Error::InvalidStretch(_) | Error::InvalidTolerance(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Analysis(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<String, Failure>;

fn load_pair(args: &FilterArgs) -> std::result::Result<(Filter, Option<Filter>), Failure> {
    let m0 = parse_filter(&FilterSpec::parse(&args.filter, args.scale, args.min_deg)?)?;
    let m0p = match &args.filter2 {
        Some(s) => Some(parse_filter(&FilterSpec::parse(
            s,
            args.scale,
            args.min_deg,
        )?)?),
        None => None,
    };
    if let Some(f) = &m0p {
        if f.scale() != m0.scale() {
            return Err(Failure::Usage(
                Error::ScaleMismatch(m0.scale(), f.scale()).to_string(),
            ));
        }
    }
    Ok((m0, m0p))
}

fn json(value: &impl Serialize) -> CmdResult {
    serde_json::to_string(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Analysis(e.to_string()))
}

fn pair_matrix(args: &FilterArgs) -> std::result::Result<crate::transfer::LawtonMatrix, Failure> {
    let (m0, m0p) = load_pair(args)?;
    let dual = m0p.as_ref().unwrap_or(&m0).m0().clone();
    Ok(lawton_matrix(&m0, &dual)?)
}

fn defaults() -> Defaults {
    let mut d = Defaults::default();
    if let Some(tol) = std::env::var(config::TOL_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
    {
        d.tol = tol;
    }
    d
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Verdict { filter, tol } => {
            let (m0, m0p) = load_pair(&filter)?;
            let report = match m0p {
                Some(m0p) => biorthogonality_verdict(&m0, &m0p, tol.tol)?,
                None => orthogonality_verdict(&m0, tol.tol)?,
            };
            json(&report)
        }
        Command::Spectrum { filter } => {
            let m = pair_matrix(&filter)?;
            let eigenvalues = spectrum(&m)?;
            #[derive(Serialize)]
            struct Out {
                #[serde(rename = "N")]
                scale: i64,
                d: i64,
                eigenvalues: Vec<Complex64>,
            }
            json(&Out {
                scale: m.scale(),
                d: m.half_width(),
                eigenvalues,
            })
        }
        Command::Fixedspace {
            filter,
            tol,
            eigenvalue,
            eigenvalue_im,
        } => {
            let m = pair_matrix(&filter)?;
            json(&fixed_space(
                &m,
                Complex64::new(eigenvalue, eigenvalue_im),
                tol.tol,
            )?)
        }
        Command::Matrix { filter } => json(&pair_matrix(&filter)?),
        Command::Cycles { p } => json(&doubling_cycles(p)?),
        Command::Eigenbasis { p } => json(&continuous_eigenbasis(p)?),
        Command::Cascade {
            filter,
            n,
            k,
            grid,
            format,
            time,
            iters,
            resolution,
        } => {
            let (m0, m0p) = load_pair(&filter)?;
            let values = if time {
                if m0p.is_some() {
                    return Err(Failure::Usage("--time takes a single filter".into()));
                }
                cascade_time(&m0, iters, resolution)?
            } else {
                let m0p = m0p.as_ref().unwrap_or(&m0);
                h_cross_approx(&m0, m0p, n, k, GridSpec::period(grid))?
            };
            match format {
                Format::Csv => Ok(values.to_csv()),
                Format::Json => json(&values),
            }
        }
        Command::Elemprop { seed, count } => {
            let summary = elemprop_suite(seed, count)?;
            let out = json(&summary)?;
            if summary.failures.is_empty() {
                Ok(out)
            } else {
                Err(Failure::Analysis(format!(
                    "{} of {} cases failed\n{}",
                    summary.failures.len(),
                    count,
                    out.trim_end()
                )))
            }
        }
        Command::Export { filter } => {
            let (m0, _) = load_pair(&filter)?;
            json(&m0)
        }
        Command::Config => json(&defaults()),
    }
}

/// Runs `rl` with `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "rl: {e}");
                1
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "rl: {msg}");
            2
        }
        Err(Failure::Analysis(msg)) => {
            let _ = writeln!(err, "rl: {msg}");
            1
        }
    }
}
