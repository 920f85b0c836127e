use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use height_census::algnum::parse_real;
use height_census::census::{self, CensusOptions, CensusRecord, CensusRow};
use height_census::constructions::{eisenstein_family, quartic_family};
use height_census::heightdyn::{iterate, Classification};
use height_census::verify::{run_suite, SUITES};
use height_census::{AlgebraicKey, IntPoly, Rational, RealAlgebraic};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "height-census",
    version,
    about = "Exact Weil height and Mahler measure censuses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Window {
    UpperHalf,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Eisenstein,
    Quartic,
}

#[derive(clap::Args)]
struct Common {
    /// Worker threads.
    #[arg(long, env = "HEIGHT_CENSUS_THREADS")]
    threads: Option<usize>,
    /// Identify A with -A (count positive leading coefficients only).
    #[arg(long, default_value_t = true, num_args = 0..=1, default_missing_value = "true", action = clap::ArgAction::Set)]
    identify_sign: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Algebraic numbers by height, one row per height value.
    CensusA {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        k: usize,
        /// Integer, p/q, decimal, sqrt(x) or x^(p/q).
        #[arg(long)]
        max_height: String,
        #[command(flatten)]
        common: Common,
    },
    /// Distinct height values, one row each.
    CensusB {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_height: String,
        #[command(flatten)]
        common: Common,
    },
    /// Integer polynomials by Mahler measure, one row per measure value.
    CensusMahler {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_measure: String,
        #[command(flatten)]
        common: Common,
    },
    /// Log-log slope of cumulative counts in a census CSV.
    Slopes {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "upper-half")]
        window: Window,
        /// Also write the fitted points as two columns for gnuplot.
        #[arg(long)]
        gnuplot: Option<PathBuf>,
    },
    /// Iterate the height map.
    Orbit {
        /// Coefficients from the constant term up, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        minpoly: String,
        /// Index among the real roots in ascending order, from 0.
        #[arg(long)]
        root_index: usize,
        #[arg(long, default_value_t = 8)]
        max_steps: usize,
        #[arg(long, default_value = "0.001")]
        eps: String,
    },
    /// Polynomial families with known heights.
    Family {
        #[arg(long, value_enum)]
        name: Family,
        /// `N,d` for eisenstein, `r` for quartic.
        #[arg(long)]
        params: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run a named self-check suite.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long, env = "HEIGHT_CENSUS_THREADS")]
        threads: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<height_census::Error> for Failure {
    fn from(e: height_census::Error) -> Self {
        match e {
            height_census::Error::InvalidArgument(_) | height_census::Error::Parse(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn write_records(records: &[CensusRecord], common: &Common) -> CliResult<()> {
    let rows: Vec<CensusRow> = records.iter().map(CensusRecord::to_row).collect();
    let mut out = output(&common.out)?;
    match common.format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out);
            if rows.is_empty() {
                w.write_record([
                    "key_minpoly",
                    "key_root_index",
                    "key_approx",
                    "d",
                    "k",
                    "count",
                    "deg_Hd",
                ])?;
            }
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &rows)
                .map_err(|e| Failure::Runtime(e.to_string()))?;
            writeln!(out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn options(common: &Common) -> CensusOptions {
    CensusOptions {
        threads: common.threads,
        identify_sign: common.identify_sign,
    }
}

fn read_rows(path: &PathBuf) -> CliResult<Vec<CensusRecord>> {
    let mut r = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for row in r.deserialize::<CensusRow>() {
        out.push(CensusRecord::from_row(&row?)?);
    }
    Ok(out)
}

fn slopes(input: &PathBuf, window: Window, gnuplot: &Option<PathBuf>) -> CliResult<()> {
    let mut records = read_rows(input)?;
    records.sort_by(|a, b| a.key.cmp(&b.key));
    let mut total = 0u64;
    let mut points: Vec<(f64, f64)> = records
        .iter()
        .map(|r| {
            total += r.count;
            (r.key.to_f64(), total as f64)
        })
        .collect();
    if let (Window::UpperHalf, Some(first), Some(last)) = (window, points.first(), points.last()) {
        let mid = (first.0 + last.0) / 2.0;
        points.retain(|p| p.0 >= mid);
    }
    let est = census::fit_slope(&points)?;
    if let Some(path) = gnuplot {
        let mut f = io::BufWriter::new(File::create(path)?);
        for (x, y) in &est.points {
            writeln!(f, "{x} {y}")?;
        }
        f.flush()?;
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&est).map_err(|e| Failure::Runtime(e.to_string()))?
    );
    Ok(())
}

fn orbit(minpoly: &str, root_index: usize, max_steps: usize, eps: &str) -> CliResult<()> {
    let minpoly: IntPoly = minpoly.parse()?;
    let seed = RealAlgebraic::from_key(&AlgebraicKey {
        minpoly,
        root_index,
    })?;
    let eps: Rational = parse_real(eps)?
        .as_rational()
        .cloned()
        .ok_or_else(|| Failure::Usage("eps must be rational".into()))?;
    let report = iterate(&seed, max_steps, &eps)?;
    let mut out = io::stdout().lock();
    for (n, x) in report.trajectory.iter().enumerate() {
        writeln!(
            out,
            "{n}\t{}\t{}\t{}",
            x.minpoly(),
            x.approx_decimal(30),
            x.degree()
        )?;
    }
    let class = match &report.classification {
        Classification::FixedSurd { a, b, settled_at } => {
            format!("FixedSurd a={a} b={b} settled_at={settled_at}")
        }
        Classification::TendingToOne { interval } => {
            format!(
                "TendingToOne (numerically indicated) interval=[{}, {}]",
                interval.0, interval.1
            )
        }
        Classification::BudgetExhausted => "BudgetExhausted".to_string(),
    };
    writeln!(
        out,
        "classification: {class}; decreasing_verified={}",
        report.decreasing_verified
    )?;
    Ok(())
}

fn family(name: Family, params: &str, format: Format) -> CliResult<()> {
    let nums: Vec<u64> = params
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("bad --params {params:?}")))?;
    let (beta, polys) = match (name, nums.as_slice()) {
        (Family::Eisenstein, [n, d]) => (None, vec![eisenstein_family(*n, *d as usize)?]),
        (Family::Quartic, [r]) => {
            let r = u32::try_from(*r).map_err(|_| Failure::Usage("r too large".into()))?;
            let ((b1, b2), polys) = quartic_family(r)?;
            (Some((b1, b2)), polys)
        }
        _ => {
            return Err(Failure::Usage(
                "eisenstein takes --params N,d; quartic takes --params r".into(),
            ))
        }
    };
    let mut out = io::stdout().lock();
    match format {
        Format::Csv => {
            if let Some((b1, b2)) = &beta {
                writeln!(out, "# beta = {b1} + {b2}*sqrt(2)")?;
            }
            for p in &polys {
                writeln!(out, "{p}")?;
            }
        }
        Format::Json => {
            let v = json!({
                "beta": beta.map(|(a, b)| [a.to_string(), b.to_string()]),
                "polys": polys.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&v).map_err(|e| Failure::Runtime(e.to_string()))?
            )?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::CensusA {
            degree,
            k,
            max_height,
            common,
        } => {
            let h = parse_real(&max_height)?;
            let recs = census::census_a(k, degree, &h, &options(&common))?;
            write_records(&recs, &common)
        }
        Command::CensusB {
            degree,
            k,
            max_height,
            common,
        } => {
            let h = parse_real(&max_height)?;
            let (values, _) = census::census_b(k, degree, &h, &options(&common))?;
            let recs: Vec<CensusRecord> = values
                .into_iter()
                .map(|v| CensusRecord {
                    deg_hd: v.pow_int(degree as i64).map(|m| m.degree()).unwrap_or(0),
                    key: v,
                    d: degree,
                    k,
                    count: 1,
                })
                .collect();
            write_records(&recs, &common)
        }
        Command::CensusMahler {
            degree,
            k,
            max_measure,
            common,
        } => {
            let m = parse_real(&max_measure)?;
            let recs = census::census_mahler(k, degree, &m, &options(&common))?;
            write_records(&recs, &common)
        }
        Command::Slopes {
            input,
            window,
            gnuplot,
        } => slopes(&input, window, &gnuplot),
        Command::Orbit {
            minpoly,
            root_index,
            max_steps,
            eps,
        } => orbit(&minpoly, root_index, max_steps, &eps),
        Command::Family {
            name,
            params,
            format,
        } => family(name, &params, format),
        Command::Verify { suite, threads } => {
            let opts = CensusOptions {
                threads,
                identify_sign: true,
            };
            let report = run_suite(&suite, &opts)?;
            let text = serde_json::to_string_pretty(&report)
                .map_err(|e| Failure::Runtime(e.to_string()))?;
            println!("{text}");
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Runtime(format!(
                    "suite {suite} failed {} of {} checks",
                    report.failures.len(),
                    report.checks
                )))
            }
        }
    }
}

fn fail(code: u8, kind: &str, message: &str) -> ExitCode {
    eprintln!("{}", json!({ "error": kind, "message": message }));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(2, "usage", e.to_string().trim()),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => fail(2, "usage", &m),
        Err(Failure::Runtime(m)) => fail(1, "failure", &m),
    }
}
