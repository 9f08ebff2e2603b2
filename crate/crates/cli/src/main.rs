//! `hind`: command-line front end for the exact Z2-index engine.
//!
//! Subcommands:
//!
//! * `index`          - full degree-by-degree report for a single `n`,
//! * `table`          - summary rows for a list of `n` values,
//! * `relations`      - the kernel-ideal generators in the wreath basis,
//! * `verify-numeric` - floating-point cross-check of the geometric setup.
//!
//! Exit codes: `0` success, `1` usage error, `2` consistency or tolerance
//! failure, `3` resource error (I/O, thread pool).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use hind_core::{
    compute_index, kernel_generators, verify_equivariant_maps, IndexOptions, IndexReport,
    KernelError, NumericOptions,
};

/// Environment variable holding the default worker-thread count.
const THREADS_ENV: &str = "HIND_THREADS";

#[derive(Parser)]
#[command(
    name = "hind",
    version,
    about = "Exact homological Z2-index of the Grassmannian G(2n,n)",
    long_about = "Computes the homological Z2-index of G(2n,n) with the \
orthogonal-complement involution, working in the mod-2 cohomology of the \
classifying space of O(n) wr Z2. All index computations are exact linear \
algebra over GF(2); `verify-numeric` is a separate floating-point sanity \
check of the underlying geometry."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the degree-by-degree index report for one n.
    Index {
        /// Rank parameter: the Grassmannian is G(2n,n).
        #[arg(long)]
        n: usize,
        /// Analyze degrees 1..=CAP instead of 1..=2n (requires CAP <= 2n).
        /// With CAP < 2n the reported hind is only a lower bound.
        #[arg(long, value_name = "CAP")]
        degree_cap: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Attach a non-membership certificate to each degree where c^d
        /// stays outside the ideal.
        #[arg(long)]
        certificates: bool,
        /// Worker threads (default: $HIND_THREADS, else all cores).
        #[arg(long, value_name = "COUNT")]
        threads: Option<usize>,
        /// Write the report to PATH instead of stdout.
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Compute hind for several n and print one summary row each.
    Table {
        /// Comma-separated n values; `a..b` denotes the inclusive range.
        #[arg(long, value_name = "LIST")]
        n_list: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Worker threads (default: $HIND_THREADS, else all cores).
        #[arg(long, value_name = "COUNT")]
        threads: Option<usize>,
        /// Write the table to PATH instead of stdout.
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Print the kernel-ideal generators g_1, ..., g_2n in the wreath basis.
    Relations {
        /// Rank parameter: generators live in H*(B(O(n) wr Z2)).
        #[arg(long)]
        n: usize,
        /// Print only the generator of this degree, as a bare class.
        #[arg(long, value_name = "D")]
        degree: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the generators to PATH instead of stdout.
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Monte-Carlo check of the projection-matrix model behind the index.
    VerifyNumeric {
        /// Rank parameter: projections of rank n in R^2n.
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Number of random projections to sample.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// RNG seed; equal seeds give byte-identical output.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the summary to PATH instead of stdout.
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

/// Failure with a process exit code attached.
#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    fn consistency(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn resource(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help/--version arrive here as "errors" but are not failures.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Index {
            n,
            degree_cap,
            format,
            certificates,
            threads,
            output,
        } => cmd_index(n, degree_cap, format, certificates, threads, output),
        Command::Table {
            n_list,
            format,
            threads,
            output,
        } => cmd_table(&n_list, format, threads, output),
        Command::Relations {
            n,
            degree,
            format,
            output,
        } => cmd_relations(n, degree, format, output),
        Command::VerifyNumeric {
            n,
            samples,
            seed,
            format,
            output,
        } => cmd_verify_numeric(n, samples, seed, format, output),
    }
}

/// Resolves the worker count: explicit flag, then $HIND_THREADS, then 0
/// (which rayon treats as "all cores").
fn thread_count(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(t) = flag {
        if t == 0 {
            return Err(CliError::usage("--threads must be at least 1"));
        }
        return Ok(t);
    }
    match std::env::var(THREADS_ENV) {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(t) if t >= 1 => Ok(t),
            _ => Err(CliError::usage(format!(
                "{THREADS_ENV} must be a positive integer, got {raw:?}"
            ))),
        },
        Err(_) => Ok(0),
    }
}

fn build_pool(threads: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let count = thread_count(threads)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(count)
        .build()
        .map_err(|err| CliError::resource(format!("cannot build thread pool: {err}")))
}

/// Prints `content` to stdout or writes it to `path`.
fn emit(output: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match output {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|err| CliError::resource(format!("cannot write {}: {err}", path.display()))),
    }
}

fn validate_n(n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::usage("--n must be at least 1"));
    }
    Ok(())
}

fn run_index(n: usize, options: IndexOptions) -> Result<IndexReport, CliError> {
    match compute_index(n, &options) {
        Ok(report) => Ok(report),
        Err(KernelError::Inconsistent { details, report }) => {
            // Dump the full offending report so the failure can be audited.
            eprintln!("{}", report.to_json_pretty());
            Err(CliError::consistency(format!(
                "inconsistent index report: {details}"
            )))
        }
        Err(err) => Err(CliError::consistency(err.to_string())),
    }
}

fn cmd_index(
    n: usize,
    degree_cap: Option<u32>,
    format: Format,
    certificates: bool,
    threads: Option<usize>,
    output: Option<PathBuf>,
) -> Result<(), CliError> {
    validate_n(n)?;
    if let Some(cap) = degree_cap {
        if cap == 0 || cap > 2 * n as u32 {
            return Err(CliError::usage(format!(
                "--degree-cap must be between 1 and 2n = {}",
                2 * n
            )));
        }
    }
    let pool = build_pool(threads)?;
    let options = IndexOptions {
        degree_cap,
        certificates,
    };
    let report = pool.install(|| run_index(n, options))?;
    let content = match format {
        Format::Text => render_index_text(&report),
        Format::Json => format!("{}\n", report.to_json_pretty()),
        Format::Csv => report.to_csv(),
    };
    emit(output.as_ref(), &content)
}

fn render_index_text(report: &IndexReport) -> String {
    let mut out = String::new();
    let n = report.n;
    writeln!(
        out,
        "index report for n = {n} (Grassmannian G({},{n}))",
        2 * n
    )
    .unwrap();
    if report.truncated {
        writeln!(
            out,
            "degrees analyzed: 1..{} (truncated below 2n = {})",
            report.degree_cap,
            2 * n
        )
        .unwrap();
    }
    writeln!(out).unwrap();
    writeln!(
        out,
        "{:>4}  {:>10}  {:>10}  c^d in I_d",
        "d", "dim H^d", "dim I_d"
    )
    .unwrap();
    for record in &report.degrees {
        writeln!(
            out,
            "{:>4}  {:>10}  {:>10}  {}",
            record.d,
            record.dim_basis,
            record.dim_ideal,
            if record.c_in_ideal { "yes" } else { "no" }
        )
        .unwrap();
    }
    writeln!(out).unwrap();
    if report.truncated {
        writeln!(
            out,
            "hind >= {} (lower bound only: run was truncated)",
            report.hind
        )
        .unwrap();
        return out;
    }
    writeln!(out, "hind = {}", report.hind).unwrap();
    writeln!(
        out,
        "a-priori bounds: {} <= hind <= {}",
        report.flags.lower_bound, report.flags.upper_bound
    )
    .unwrap();
    match report.flags.predicted_exact {
        Some(value) => writeln!(out, "predicted exact value: {value}").unwrap(),
        None => writeln!(
            out,
            "no exact value is known for this n; result is exploratory"
        )
        .unwrap(),
    }
    let mut checks = Vec::new();
    for (flag, name) in [
        (report.flags.upper_kernel_ok, "upper-kernel"),
        (report.flags.bounds_ok, "bounds"),
        (report.flags.exact_ok, "exact-match"),
    ] {
        if let Some(ok) = flag {
            checks.push(format!("{name} {}", if ok { "ok" } else { "FAILED" }));
        }
    }
    if !checks.is_empty() {
        writeln!(out, "checks: {}", checks.join(", ")).unwrap();
    }
    let certs: Vec<_> = report
        .degrees
        .iter()
        .filter_map(|r| r.certificate.as_ref().map(|c| (r.d, c)))
        .collect();
    for (d, cert) in certs {
        writeln!(out, "certificate d={d}: columns {cert:?}").unwrap();
    }
    out
}

/// Parses a comma-separated list of n values with inclusive `a..b` ranges.
/// Duplicates are dropped, first occurrence wins.
fn parse_n_list(raw: &str) -> Result<Vec<usize>, CliError> {
    let mut values = Vec::new();
    for part in raw.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(CliError::usage("empty entry in --n-list"));
        }
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: usize = lo
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("bad range start in {part:?}")))?;
            let hi: usize = hi
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("bad range end in {part:?}")))?;
            if lo < 1 || hi < lo {
                return Err(CliError::usage(format!("bad range {part:?}")));
            }
            values.extend(lo..=hi);
        } else {
            let value: usize = part
                .parse()
                .map_err(|_| CliError::usage(format!("bad entry {part:?} in --n-list")))?;
            if value < 1 {
                return Err(CliError::usage("every n must be at least 1"));
            }
            values.push(value);
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    values.retain(|v| seen.insert(*v));
    if values.is_empty() {
        return Err(CliError::usage("--n-list is empty"));
    }
    Ok(values)
}

fn cmd_table(
    n_list: &str,
    format: Format,
    threads: Option<usize>,
    output: Option<PathBuf>,
) -> Result<(), CliError> {
    let values = parse_n_list(n_list)?;
    let pool = build_pool(threads)?;
    let mut reports = Vec::with_capacity(values.len());
    for &n in &values {
        reports.push(pool.install(|| run_index(n, IndexOptions::default()))?);
    }

    // hind is monotone along divisibility; a violation means the engine is
    // internally inconsistent, not merely that the inputs were unusual.
    for a in &reports {
        for b in &reports {
            if a.n < b.n && b.n % a.n == 0 && a.hind > b.hind {
                return Err(CliError::consistency(format!(
                    "monotonicity violated: hind({}) = {} > hind({}) = {} although {} divides {}",
                    a.n, a.hind, b.n, b.hind, a.n, b.n
                )));
            }
        }
    }

    let content = match format {
        Format::Text => render_table_text(&reports),
        Format::Json => {
            let value = serde_json::json!({
                "schema": "hind.table/v1",
                "reports": reports,
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&value).expect("table serializes")
            )
        }
        Format::Csv => {
            let mut out = String::from("n,hind,lowerBound,upperBound,predictedExact,exploratory\n");
            for report in &reports {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    report.n,
                    report.hind,
                    report.flags.lower_bound,
                    report.flags.upper_bound,
                    report
                        .flags
                        .predicted_exact
                        .map(|v| v.to_string())
                        .unwrap_or_default(),
                    report.flags.exploratory
                )
                .unwrap();
            }
            out
        }
    };
    emit(output.as_ref(), &content)
}

fn render_table_text(reports: &[IndexReport]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:>5}  {:>5}  {:>6}  {:>6}  status",
        "n", "hind", "lower", "upper"
    )
    .unwrap();
    for report in reports {
        let status = if report.flags.exploratory {
            "exploratory"
        } else {
            "exact"
        };
        writeln!(
            out,
            "{:>5}  {:>5}  {:>6}  {:>6}  {status}",
            report.n, report.hind, report.flags.lower_bound, report.flags.upper_bound
        )
        .unwrap();
    }
    out
}

fn cmd_relations(
    n: usize,
    degree: Option<u32>,
    format: Format,
    output: Option<PathBuf>,
) -> Result<(), CliError> {
    validate_n(n)?;
    if format == Format::Csv {
        return Err(CliError::usage(
            "relations has no csv form; use text or json",
        ));
    }
    let gens = kernel_generators(n);
    let content = match degree {
        Some(d) => {
            let class = gens.generator(d).ok_or_else(|| {
                CliError::usage(format!("--degree must be between 1 and 2n = {}", 2 * n))
            })?;
            match format {
                Format::Text => format!("{class}\n"),
                Format::Json => {
                    let value = serde_json::json!({
                        "schema": "hind.relations/v1",
                        "n": n,
                        "generators": [{ "d": d, "class": class.to_string() }],
                    });
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&value).expect("serializes")
                    )
                }
                Format::Csv => unreachable!("rejected above"),
            }
        }
        None => match format {
            Format::Text => {
                let mut out = String::new();
                for (d, class) in gens.iter() {
                    writeln!(out, "g[{d}] = {class}").unwrap();
                }
                out
            }
            Format::Json => {
                let generators: Vec<_> = gens
                    .iter()
                    .map(|(d, class)| serde_json::json!({ "d": d, "class": class.to_string() }))
                    .collect();
                let value = serde_json::json!({
                    "schema": "hind.relations/v1",
                    "n": n,
                    "generators": generators,
                });
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&value).expect("serializes")
                )
            }
            Format::Csv => unreachable!("rejected above"),
        },
    };
    emit(output.as_ref(), &content)
}

fn cmd_verify_numeric(
    n: usize,
    samples: u64,
    seed: u64,
    format: Format,
    output: Option<PathBuf>,
) -> Result<(), CliError> {
    validate_n(n)?;
    if samples == 0 {
        return Err(CliError::usage("--samples must be at least 1"));
    }
    if format == Format::Csv {
        return Err(CliError::usage(
            "verify-numeric has no csv form; use text or json",
        ));
    }
    let summary = verify_equivariant_maps(&NumericOptions { n, samples, seed });
    let content = match format {
        Format::Json => format!("{}\n", summary.to_json_pretty()),
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "samples: {}", summary.samples).unwrap();
            writeln!(out, "min sphere-map norm: {:.17}", summary.min_norm).unwrap();
            writeln!(
                out,
                "max equivariance error: {:.3e}",
                summary.max_equivariance_error
            )
            .unwrap();
            writeln!(
                out,
                "max idempotency error: {:.3e}",
                summary.max_idempotency_error
            )
            .unwrap();
            writeln!(
                out,
                "max symmetry error: {:.3e}",
                summary.max_symmetry_error
            )
            .unwrap();
            writeln!(out, "max trace error: {:.3e}", summary.max_trace_error).unwrap();
            writeln!(
                out,
                "max spectrum error: {:.3e}",
                summary.max_spectrum_error
            )
            .unwrap();
            writeln!(
                out,
                "within tolerances: {}",
                if summary.within_tolerances() {
                    "yes"
                } else {
                    "NO"
                }
            )
            .unwrap();
            out
        }
        Format::Csv => unreachable!("rejected above"),
    };
    emit(output.as_ref(), &content)?;
    if !summary.within_tolerances() {
        return Err(CliError::consistency("numeric summary exceeds tolerances"));
    }
    Ok(())
}
