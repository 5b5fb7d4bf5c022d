use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use qspectra_cli::commands::{self, BaseCaseOptions, FamilySelection, Matrix, ParamGrid, SAMPLES};
use qspectra_cli::report::{Format, Reporter};
use qspectra_cli::suites::{self, Suite, SuiteConfig};
use qspectra_core::families::{Chain, Registry};
use qspectra_core::{Graph, HJoinSpec, Mode, Precision};
use serde::Serialize;

/// Certified verification of signless Laplacian eigenvalue sum results.
#[derive(Parser)]
#[command(name = "qspectra", version)]
struct Cli {
    /// Row format; the closing summary line is always present.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print the families, suites and versions as JSON and exit.
    #[arg(long)]
    manifest: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Spectrum, S_k and f of a graph given as an edge-list file.
    Spectrum(SpectrumArgs),
    /// Exhaustive check that the star plus an edge uniquely minimizes f.
    BaseCase(BaseCaseArgs),
    /// Tabulated characteristic polynomials against rebuilt families.
    Appendix(AppendixArgs),
    /// The star-plus bracket, the G2 identities, or the monotonicity chains.
    Bounds(BoundsArgs),
    /// Randomized and exhaustive property suites.
    Properties(PropertiesArgs),
    /// Quotient and factorized polynomial of an H-join spec file.
    Hjoin(HjoinArgs),
}

#[derive(Args, Serialize)]
struct SpectrumArgs {
    file: PathBuf,
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    #[arg(long)]
    float: bool,
    /// Use L = D - A instead of Q = D + A.
    #[arg(long)]
    laplacian: bool,
    #[arg(short, long, default_value_t = 2)]
    k: usize,
}

#[derive(Args, Serialize)]
struct BaseCaseArgs {
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(4..=10))]
    max_n: u64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..=10))]
    min_n: u64,
    /// Append per-chunk progress lines to this file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Skip chunks already recorded in the checkpoint.
    #[arg(long, requires = "checkpoint")]
    resume: bool,
    /// Required for n = 9 and 10, which run for a long time.
    #[arg(long)]
    long_run: bool,
    /// Random labeled graphs drawn to cross-check orders 7 to 9.
    #[arg(long, default_value_t = SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Serialize)]
struct AppendixArgs {
    /// `all`, `table1`, `table2`, `lemma`, or a comma-separated id list.
    #[arg(long, default_value = "all")]
    families: String,
    /// `default`, or points such as `t=1;t=2`.
    #[arg(long, default_value = "default")]
    param_grid: String,
    /// Registry JSON to use instead of the built-in one.
    #[arg(long)]
    registry: Option<PathBuf>,
}

#[derive(Args, Serialize)]
#[command(group(ArgGroup::new("which").required(true).args(["star_plus", "g2", "monotonicity"])))]
struct BoundsArgs {
    #[arg(long, requires = "n_range")]
    star_plus: bool,
    #[arg(long, value_parser = parse_range)]
    n_range: Option<(i64, i64)>,
    #[arg(long, requires = "t_range")]
    g2: bool,
    #[arg(long, value_parser = parse_range)]
    t_range: Option<(i64, i64)>,
    #[arg(long)]
    monotonicity: bool,
    /// Chain name, or `all`.
    #[arg(long, default_value = "all")]
    chain: String,
    /// Largest parameter value on the chain grid.
    #[arg(long, default_value_t = 12)]
    grid: i64,
}

#[derive(Args, Serialize)]
struct PropertiesArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    /// Invert every expectation; a correct build must then fail.
    #[arg(long)]
    self_test_negate: bool,
}

#[derive(Args, Serialize)]
struct HjoinArgs {
    spec: PathBuf,
}

/// Parses an inclusive `A..B` (or `A..=B`) range.
fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: i64 = a.trim().parse().map_err(|_| format!("bad range start `{a}`"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

const USAGE: u8 = 2;

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

/// Why a run stopped before writing its summary.
enum Stop {
    Usage(String),
    /// The reader went away (`| head`); not an error.
    ClosedOutput,
}

impl From<String> for Stop {
    fn from(msg: String) -> Stop {
        Stop::Usage(msg)
    }
}

impl From<qspectra_core::Error> for Stop {
    fn from(e: qspectra_core::Error) -> Stop {
        Stop::Usage(e.to_string())
    }
}

impl From<io::Error> for Stop {
    fn from(e: io::Error) -> Stop {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Stop::ClosedOutput
        } else {
            Stop::Usage(e.to_string())
        }
    }
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            return fail(e);
        }
    }
    if cli.manifest {
        let m = commands::manifest(Registry::builtin());
        println!("{}", serde_json::to_string(&m).expect("manifest serializes"));
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        return fail("a subcommand is required (or --manifest)");
    };
    match run(&command, cli.format) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Stop::ClosedOutput) => ExitCode::SUCCESS,
        Err(Stop::Usage(msg)) => fail(msg),
    }
}

fn run(command: &Command, format: Format) -> Result<i32, Stop> {
    let precision = Precision::from_env()?;
    let value = serde_json::to_value(command).expect("arguments serialize");
    let (name, parameters) = match value {
        serde_json::Value::Object(m) => m.into_iter().next().expect("one variant"),
        other => (String::new(), other),
    };
    let stdout = io::stdout();
    let mut rep = Reporter::new(BufWriter::new(stdout.lock()), format, &name, parameters);

    match command {
        Command::Spectrum(a) => {
            let g = Graph::parse_edge_list(&read(&a.file)?)?;
            let mode = if a.float { Mode::Floating } else { Mode::Exact };
            let matrix = if a.laplacian { Matrix::L } else { Matrix::Q };
            let row = commands::spectrum(&g, mode, matrix, a.k, precision)?;
            rep.emit(row)?;
        }
        Command::BaseCase(a) => {
            let (lo, hi) = (a.min_n as usize, a.max_n as usize);
            if lo > hi {
                return Err(format!("--min-n {lo} exceeds --max-n {hi}").into());
            }
            if hi >= 9 && !a.long_run {
                return Err(format!("--max-n {hi} is a long run; pass --long-run to confirm").into());
            }
            let opts = BaseCaseOptions {
                checkpoint: a.checkpoint.clone(),
                resume: a.resume,
                precision,
                samples: a.samples,
                seed: a.seed,
            };
            for n in lo..=hi {
                let row = commands::base_case_row(n, &opts)?;
                rep.emit(row)?;
            }
        }
        Command::Appendix(a) => {
            let owned;
            let registry = match &a.registry {
                Some(p) => {
                    owned = Registry::from_json(&read(p)?)?;
                    &owned
                }
                None => Registry::builtin(),
            };
            let selection: FamilySelection = a.families.parse()?;
            let grid: ParamGrid = a.param_grid.parse()?;
            let rows = commands::appendix(registry, &selection, &grid)?;
            rep.emit_all(rows)?;
        }
        Command::Bounds(a) => {
            let rows = if a.star_plus {
                let (lo, hi) = a.n_range.expect("required by clap");
                commands::star_plus_bounds(lo, hi)
            } else if a.g2 {
                let (lo, hi) = a.t_range.expect("required by clap");
                commands::g2_identities(lo, hi)
            } else {
                let chains: Vec<Chain> = if a.chain == "all" {
                    Chain::ALL.to_vec()
                } else {
                    a.chain.split(',').map(str::parse).collect::<Result<_, qspectra_core::Error>>()?
                };
                commands::monotonicity(&chains, a.grid)
            }
            ?;
            rep.emit_all(rows)?;
        }
        Command::Properties(a) => {
            let cfg = SuiteConfig {
                seed: a.seed,
                count: a.count,
                max_n: a.max_n,
                negate: a.self_test_negate,
            };
            let rows = suites::run(a.suite, &cfg)?;
            rep.emit_all(rows)?;
        }
        Command::Hjoin(a) => {
            let spec = HJoinSpec::from_json(&read(&a.spec)?)?;
            rep.emit(commands::hjoin(&spec)?)?;
        }
    }
    Ok(rep.finish()?)
}

