//! Command-line front end: counting, capacity, bound sweeps, cross-method
//! verification, and CSV/JSON emission.
//!
//! Exit codes: 0 on success, 1 when an invariant or verification fails,
//! 2 on configuration errors.

mod grid;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigUint;
use rayon::prelude::*;

use sswkit::cluster::gj_bad_series;
use sswkit::fsm::{build_skip_matrix, count_fsm, count_series_from_matrix};
use sswkit::noisy::{bound_report, Channel};
use sswkit::oracle::brute_force_count;
use sswkit::reduced::{count_reduced, refined_gj_series};
use sswkit::spectral::{auto_method, capacity, capacity_auto, rate_from_count, rate_increases};
use sswkit::{Error, Method, SparseMatrix, SswParams};

use output::{emit, Cell, Format, Table};

#[derive(Parser)]
#[command(name = "sswkit", version, about = "Skip-sliding window constrained-code toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count codewords of one length
    Count(CountArgs),
    /// Count codewords across a range of lengths
    Series(SeriesArgs),
    /// Noiseless capacity from the dominant eigenvalue
    Capacity(CapacityArgs),
    /// Noisy-capacity bounds at one channel point
    Bounds(BoundsArgs),
    /// Rate/capacity curves or noisy-bound curves over a grid
    Sweep(SweepArgs),
    /// Cross-check every counting method against brute force
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// Window length L
    #[arg(short = 'L', long = "window")]
    window: u32,
    /// Skip length J
    #[arg(short = 'J', long = "skip")]
    skip: u32,
    /// Minimum window weight W
    #[arg(short = 'W', long = "weight")]
    weight: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<SswParams, Error> {
        SswParams::new(self.window, self.skip, self.weight)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized restarts
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (the SSWKIT_THREADS environment variable also applies)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountMethodArg {
    Auto,
    Oracle,
    Fsm,
    Gj,
    Reduced,
    Rgj,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CapacityMethodArg {
    Auto,
    Fsm,
    Reduced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChannelKind {
    Bsc,
    Bec,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Codeword length n
    #[arg(long, conflicts_with = "k")]
    n: Option<u64>,
    /// Length index k (n = L + kJ)
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, value_enum, default_value_t = CountMethodArg::Auto)]
    method: CountMethodArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Largest length index k (n = L + kJ)
    #[arg(long = "k-max", default_value_t = 10)]
    k_max: u64,
    #[arg(long, value_enum, default_value_t = CountMethodArg::Auto)]
    method: CountMethodArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CapacityArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = CapacityMethodArg::Auto)]
    method: CapacityMethodArg,
    /// Residual tolerance of the eigenvalue iteration
    #[arg(long, default_value_t = sswkit::spectral::DEFAULT_EIGEN_TOL)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum)]
    channel: ChannelKind,
    /// Channel parameter: BSC crossover or BEC erasure probability
    #[arg(long)]
    param: f64,
    /// Random restarts for the Zehavi-Wolf maximization
    #[arg(long, default_value_t = 8)]
    restarts: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Rate/capacity curves over lengths
    #[arg(long)]
    noiseless: bool,
    /// Lower/upper noisy-capacity bounds over a channel grid
    #[arg(long, conflicts_with = "noiseless")]
    noisy: bool,
    /// Window length L
    #[arg(short = 'L', long = "window")]
    window: u32,
    /// Minimum window weight W
    #[arg(short = 'W', long = "weight")]
    weight: u32,
    /// Skip length(s): a value, list, or range like 1..6 (noiseless sweeps
    /// accept several; defaults to 1..L)
    #[arg(short = 'J', long = "skip", visible_alias = "J")]
    skip: Option<String>,
    /// Length indices k, as a list or range (noiseless sweeps)
    #[arg(long = "k", default_value = "0..40")]
    k_range: String,
    #[arg(long, value_enum)]
    channel: Option<ChannelKind>,
    /// Number of evenly spaced channel parameters (noisy sweeps)
    #[arg(long, default_value_t = 50)]
    grid: usize,
    #[arg(long, default_value_t = 8)]
    restarts: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest window length in the verification grid
    #[arg(long = "l-max", default_value_t = 6)]
    l_max: u32,
    /// Largest codeword length checked against the oracle
    #[arg(long = "n-max", default_value_t = 16)]
    n_max: u64,
    /// Deliberately corrupt one transition matrix (harness self-test)
    #[arg(long, hide = true)]
    corrupt: bool,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Internal(_) => 1,
                _ => 2,
            }
        }
    };
    std::process::exit(code);
}

fn init_threads(explicit: Option<usize>) {
    let threads = explicit.or_else(|| {
        std::env::var("SSWKIT_THREADS").ok().and_then(|s| s.parse().ok())
    });
    if let Some(n) = threads {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Count(args) => cmd_count(args),
        Command::Series(args) => cmd_series(args),
        Command::Capacity(args) => cmd_capacity(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn resolve_method(arg: CountMethodArg, params: &SswParams) -> Method {
    match arg {
        CountMethodArg::Auto => auto_method(params),
        CountMethodArg::Oracle => Method::Oracle,
        CountMethodArg::Fsm => Method::Fsm,
        CountMethodArg::Gj => Method::GjBad,
        CountMethodArg::Reduced => Method::Reduced,
        CountMethodArg::Rgj => Method::RefinedGj,
    }
}

/// Exact count at one length via the chosen method; off-grid lengths are
/// zero without touching the back end.
fn count_one(params: &SswParams, n: u64, method: Method) -> Result<BigUint, Error> {
    let k = match params.k_of(n) {
        Some(k) => k,
        None => return Ok(BigUint::ZERO),
    };
    let series = match method {
        Method::Oracle => return brute_force_count(params, n),
        Method::Fsm => count_fsm(params, k)?,
        Method::GjBad => gj_bad_series(params, k)?,
        Method::Reduced => count_reduced(params, k)?,
        Method::RefinedGj => refined_gj_series(params, k)?,
    };
    Ok(series.count_at(n).expect("series computed through n"))
}

fn echo_params(table: &mut Table, command: &str, params: &SswParams, seed: u64) {
    table.set_meta("command", command);
    table.set_meta("L", params.window_len());
    table.set_meta("J", params.skip_len());
    table.set_meta("W", params.min_weight());
    table.set_meta("seed", seed);
}

fn cmd_count(args: CountArgs) -> Result<i32, Error> {
    init_threads(args.output.threads);
    let params = args.params.params()?;
    let n = match (args.n, args.k) {
        (Some(n), None) => n,
        (None, Some(k)) => params.length_at(k),
        (None, None) => {
            return Err(Error::InvalidParams("one of --n or --k is required".into()))
        }
        (Some(_), Some(_)) => unreachable!("clap conflict"),
    };
    let method = resolve_method(args.method, &params);
    let count = count_one(&params, n, method)?;

    let mut table = Table::new(&["n", "method", "count"]);
    echo_params(&mut table, "count", &params, args.output.seed);
    table.push(vec![
        Cell::Int(n),
        Cell::Text(method.to_string()),
        Cell::Count(count.to_string()),
    ]);
    emit(&table.render(args.output.format), args.output.out.as_deref()).map_err(io_error)?;
    Ok(0)
}

fn cmd_series(args: SeriesArgs) -> Result<i32, Error> {
    init_threads(args.output.threads);
    let params = args.params.params()?;
    let method = resolve_method(args.method, &params);

    let mut table = Table::new(&["n", "method", "count"]);
    echo_params(&mut table, "series", &params, args.output.seed);
    match method {
        Method::Oracle => {
            for k in 0..=args.k_max {
                let n = params.length_at(k);
                let count = brute_force_count(&params, n)?;
                table.push(vec![
                    Cell::Int(n),
                    Cell::Text(method.to_string()),
                    Cell::Count(count.to_string()),
                ]);
            }
        }
        _ => {
            let series = match method {
                Method::Fsm => count_fsm(&params, args.k_max)?,
                Method::GjBad => gj_bad_series(&params, args.k_max)?,
                Method::Reduced => count_reduced(&params, args.k_max)?,
                Method::RefinedGj => refined_gj_series(&params, args.k_max)?,
                Method::Oracle => unreachable!(),
            };
            for (n, count) in series.iter() {
                table.push(vec![
                    Cell::Int(n),
                    Cell::Text(method.to_string()),
                    Cell::Count(count.to_string()),
                ]);
            }
        }
    }
    emit(&table.render(args.output.format), args.output.out.as_deref()).map_err(io_error)?;
    Ok(0)
}

fn cmd_capacity(args: CapacityArgs) -> Result<i32, Error> {
    init_threads(args.output.threads);
    let params = args.params.params()?;
    let estimate = match args.method {
        CapacityMethodArg::Auto => capacity_auto(&params)?,
        CapacityMethodArg::Fsm => capacity(&params, Method::Fsm)?,
        CapacityMethodArg::Reduced => capacity(&params, Method::Reduced)?,
    };
    let mut table = Table::new(&["L", "J", "W", "method", "lambda", "capacity"]);
    echo_params(&mut table, "capacity", &params, args.output.seed);
    table.push(vec![
        Cell::Int(params.window_len().into()),
        Cell::Int(params.skip_len().into()),
        Cell::Int(params.min_weight().into()),
        Cell::Text(estimate.method.to_string()),
        Cell::Float(estimate.lambda),
        Cell::Float(estimate.value),
    ]);
    emit(&table.render(args.output.format), args.output.out.as_deref()).map_err(io_error)?;
    Ok(0)
}

fn noisy_table() -> Table {
    Table::new(&["L", "J", "W", "channel", "param", "lower_mgl", "lower_zw", "upper"])
}

fn noisy_row(params: &SswParams, kind: ChannelKind, report: &sswkit::noisy::BoundReport) -> Vec<Cell> {
    vec![
        Cell::Int(params.window_len().into()),
        Cell::Int(params.skip_len().into()),
        Cell::Int(params.min_weight().into()),
        Cell::Text(match kind {
            ChannelKind::Bsc => "bsc".into(),
            ChannelKind::Bec => "bec".into(),
        }),
        Cell::Float(report.channel.parameter()),
        Cell::Float(report.lower_mgl),
        Cell::Float(report.lower_zw),
        Cell::Float(report.upper),
    ]
}

fn make_channel(kind: ChannelKind, param: f64) -> Result<Channel, Error> {
    match kind {
        ChannelKind::Bsc => Channel::bsc(param),
        ChannelKind::Bec => Channel::bec(param),
    }
}

fn cmd_bounds(args: BoundsArgs) -> Result<i32, Error> {
    init_threads(args.output.threads);
    let params = args.params.params()?;
    let channel = make_channel(args.channel, args.param)?;
    let report = bound_report(&params, &channel, args.restarts, args.output.seed)?;

    let mut table = noisy_table();
    echo_params(&mut table, "bounds", &params, args.output.seed);
    table.set_meta("channel", channel.kind());
    table.set_meta("restarts", args.restarts);
    table.push(noisy_row(&params, args.channel, &report));
    emit(&table.render(args.output.format), args.output.out.as_deref()).map_err(io_error)?;
    Ok(0)
}

fn cmd_sweep(args: SweepArgs) -> Result<i32, Error> {
    init_threads(args.output.threads);
    match (args.noiseless, args.noisy) {
        (true, false) => sweep_noiseless(args),
        (false, true) => sweep_noisy(args),
        _ => Err(Error::InvalidParams(
            "choose exactly one of --noiseless or --noisy".into(),
        )),
    }
}

fn sweep_noiseless(args: SweepArgs) -> Result<i32, Error> {
    let skips: Vec<u64> = match &args.skip {
        Some(spec) => grid::parse_list(spec).map_err(Error::InvalidParams)?,
        None => (1..=u64::from(args.window)).collect(),
    };
    let ks = grid::parse_list(&args.k_range).map_err(Error::InvalidParams)?;
    let k_max = *ks.last().ok_or_else(|| Error::InvalidParams("empty k range".into()))?;

    // one series and one eigenvalue per curve, fanned out across skips
    let curves: Vec<Result<Vec<Vec<Cell>>, Error>> = skips
        .par_iter()
        .map(|&j| {
            let params = SswParams::new(args.window, j as u32, args.weight)?;
            let method = auto_method(&params);
            let series = match method {
                Method::Reduced => count_reduced(&params, k_max)?,
                _ => count_fsm(&params, k_max)?,
            };
            let cap = capacity(&params, method)?;
            let mut rows = Vec::with_capacity(ks.len());
            for &k in &ks {
                let n = params.length_at(k);
                let count = series.count_at(n).expect("series computed through k_max");
                let rate = rate_from_count(n, &count)?.rate;
                rows.push(vec![
                    Cell::Int(params.window_len().into()),
                    Cell::Int(params.skip_len().into()),
                    Cell::Int(params.min_weight().into()),
                    Cell::Int(n),
                    Cell::Float(rate),
                    Cell::Float(cap.value),
                ]);
            }
            Ok(rows)
        })
        .collect();

    let mut table = Table::new(&["L", "J", "W", "n", "rate", "capacity"]);
    table.set_meta("command", "sweep");
    table.set_meta("mode", "noiseless");
    table.set_meta("L", args.window);
    table.set_meta("W", args.weight);
    table.set_meta("k", &args.k_range);
    table.set_meta("seed", args.output.seed);
    for curve in curves {
        for row in curve? {
            table.push(row);
        }
    }
    emit(&table.render(args.output.format), args.output.out.as_deref()).map_err(io_error)?;

    // diagnostic only: rate increases along a curve are worth a look (they
    // genuinely happen off the aligned grid) but are not failures
    for &j in &skips {
        let params = SswParams::new(args.window, j as u32, args.weight)?;
        for finding in rate_increases(&params, k_max)? {
            eprintln!(
                "note: {params} rate rises from n={} ({:.6}) to n={} ({:.6})",
                finding.shorter.n, finding.shorter.rate, finding.longer.n, finding.longer.rate
            );
        }
    }
    Ok(0)
}

fn sweep_noisy(args: SweepArgs) -> Result<i32, Error> {
    let kind = args
        .channel
        .ok_or_else(|| Error::InvalidParams("--channel is required for noisy sweeps".into()))?;
    let skip = match &args.skip {
        Some(spec) => {
            let list = grid::parse_list(spec).map_err(Error::InvalidParams)?;
            if list.len() != 1 {
                return Err(Error::InvalidParams(
                    "noisy sweeps take a single skip length".into(),
                ));
            }
            list[0] as u32
        }
        None => return Err(Error::InvalidParams("-J is required for noisy sweeps".into())),
    };
    let params = SswParams::new(args.window, skip, args.weight)?;
    if args.grid == 0 {
        return Err(Error::InvalidParams("grid must have at least one point".into()));
    }
    let max = match kind {
        ChannelKind::Bsc => 0.5,
        ChannelKind::Bec => 1.0,
    };
    let points: Vec<f64> = if args.grid == 1 {
        vec![0.0]
    } else {
        (0..args.grid).map(|i| max * i as f64 / (args.grid - 1) as f64).collect()
    };

    let reports: Vec<Result<_, Error>> = points
        .par_iter()
        .enumerate()
        .map(|(i, &x)| {
            let channel = make_channel(kind, x)?;
            bound_report(&params, &channel, args.restarts, args.output.seed.wrapping_add(i as u64))
        })
        .collect();

    let mut table = noisy_table();
    echo_params(&mut table, "sweep", &params, args.output.seed);
    table.set_meta("mode", "noisy");
    table.set_meta("channel", match kind {
        ChannelKind::Bsc => "bsc",
        ChannelKind::Bec => "bec",
    });
    table.set_meta("grid", args.grid);
    table.set_meta("restarts", args.restarts);
    for report in reports {
        table.push(noisy_row(&params, kind, &report?));
    }
    emit(&table.render(args.output.format), args.output.out.as_deref()).map_err(io_error)?;
    Ok(0)
}

/// Drops the first stored edge, leaving an FSM that undercounts.
fn corrupted_copy(matrix: &SparseMatrix) -> SparseMatrix {
    let mut out = SparseMatrix::new(matrix.dim());
    let mut dropped = false;
    for i in 0..matrix.dim() {
        for (col, value) in matrix.row(i) {
            if !dropped {
                dropped = true;
                continue;
            }
            out.push_entry(i, *col, value.clone());
        }
    }
    out
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, Error> {
    init_threads(args.output.threads);
    if args.n_max > 24 {
        return Err(Error::InvalidParams(
            "verification is capped at n-max 24 (oracle budget)".into(),
        ));
    }
    let mut report = String::new();
    let mut mismatches = 0u64;
    let mut corrupt_pending = args.corrupt;

    for l in 1..=args.l_max {
        for j in 1..=l {
            for w in 0..=l {
                let params = SswParams::new(l, j, w)?;
                if args.n_max < u64::from(l) {
                    continue;
                }
                let k_max = (args.n_max - u64::from(l)) / u64::from(j);

                let fsm = if corrupt_pending {
                    corrupt_pending = false;
                    let (_, matrix) = build_skip_matrix(&params)?;
                    count_series_from_matrix(&params, &corrupted_copy(&matrix), Method::Fsm, k_max)
                } else {
                    count_fsm(&params, k_max)?
                };
                let aligned = params.aligned().then(|| -> Result<_, Error> {
                    Ok((
                        gj_bad_series(&params, k_max)?,
                        count_reduced(&params, k_max)?,
                        refined_gj_series(&params, k_max)?,
                    ))
                });
                let aligned = aligned.transpose()?;

                for k in 0..=k_max {
                    let n = params.length_at(k);
                    let oracle = brute_force_count(&params, n)?;
                    let mut check = |method: Method, got: BigUint| {
                        if got != oracle {
                            mismatches += 1;
                            report.push_str(&format!(
                                "mismatch: {params} n={n} method={method} got={got} want={oracle}\n"
                            ));
                        }
                    };
                    check(Method::Fsm, fsm.count_at(n).expect("computed"));
                    if let Some((gj, red, rgj)) = &aligned {
                        check(Method::GjBad, gj.count_at(n).expect("computed"));
                        check(Method::Reduced, red.count_at(n).expect("computed"));
                        check(Method::RefinedGj, rgj.count_at(n).expect("computed"));
                    }
                }
            }
        }
    }

    report.push_str(&format!("{mismatches} mismatches\n"));
    emit(&report, args.output.out.as_deref()).map_err(io_error)?;
    Ok(if mismatches > 0 { 1 } else { 0 })
}

fn io_error(err: std::io::Error) -> Error {
    Error::Internal(format!("io error: {err}"))
}
