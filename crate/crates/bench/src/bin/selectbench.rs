use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fastselect_bench::datagen::{self, DatasetSpec, Distribution};
use fastselect_bench::experiment::{run_experiment, Algo, BenchError, Config, Mode, Verify};
use fastselect_bench::report::{aggregate, write_records, write_summary, Format};

/// Selection benchmark: runs every algorithm x distribution x size x k-ratio
/// cell for a number of seeded trials and writes one CSV row per trial.
#[derive(Parser)]
#[command(name = "selectbench", version)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Comma-separated algorithms, or `all` [default: adaptive and the four heuristics]
    #[arg(long)]
    algos: Option<String>,
    /// Comma-separated distributions [default: uniform]
    #[arg(long)]
    dists: Option<String>,
    /// Comma-separated sizes; `1e6` notation accepted [default: 1e4,1e5,1e6,1e7]
    #[arg(long)]
    sizes: Option<String>,
    /// Comma-separated target ratios in (0, 1) [default: 0.5]
    #[arg(long)]
    k_ratios: Option<String>,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Time)]
    mode: ModeArg,
    /// Oracle check of every result; `auto` checks below one million elements
    #[arg(long, value_enum, default_value_t = VerifyArg::Auto)]
    verify: VerifyArg,
    #[arg(long, value_enum, default_value_t = OnOff::On)]
    sampling: OnOff,
    /// Use the reference layouts verbatim
    #[arg(long)]
    fidelity: bool,
    /// Run cells concurrently (count mode only)
    #[arg(long)]
    parallel: bool,
    /// Record output path [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Also write the per-cell median/speedup table here (`-` for stdout)
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
}

#[derive(Subcommand)]
enum Command {
    /// Dump one dataset as raw little-endian f64 plus a JSON sidecar
    Gen {
        #[arg(long)]
        dist: String,
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Time,
    Count,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyArg {
    On,
    Off,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// Median search over a geometric size grid
    SizeSweep,
    /// n = 1e6, target ratio 5% through 95%
    PercentileSweep,
}

fn usage(msg: impl std::fmt::Display) -> BenchError {
    BenchError::Usage(msg.to_string())
}

fn parse_size(s: &str) -> Result<usize, BenchError> {
    if let Ok(n) = s.parse::<usize>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x <= u32::MAX as f64 * 16.0 => Ok(x as usize),
        _ => Err(usage(format!("bad size `{s}`"))),
    }
}

fn parse_list<T>(s: &str, f: impl Fn(&str) -> Result<T, BenchError>) -> Result<Vec<T>, BenchError> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(f).collect()
}

fn config(cli: &Cli) -> Result<Config, BenchError> {
    let mut cfg = Config::default();
    match cli.preset {
        Some(_) if cli.sizes.is_some() || cli.k_ratios.is_some() => {
            return Err(usage("--preset conflicts with --sizes and --k-ratios"));
        }
        Some(Preset::SizeSweep) => {
            cfg.sizes = (0..=6).map(|i| libm::round(libm::pow(10.0, 4.0 + i as f64 / 2.0)) as usize).collect();
            cfg.dists = vec![Distribution::Uniform, Distribution::Gaussian, Distribution::Sorted];
        }
        Some(Preset::PercentileSweep) => {
            cfg.sizes = vec![1_000_000];
            cfg.k_ratios = (1..=19).map(|i| i as f64 / 20.0).collect();
            cfg.dists = vec![Distribution::Uniform, Distribution::Gaussian];
        }
        None => {}
    }
    if let Some(a) = &cli.algos {
        cfg.algos = if a == "all" {
            Algo::all()
        } else {
            parse_list(a, |s| s.parse::<Algo>().map_err(usage))?
        };
    }
    if let Some(d) = &cli.dists {
        cfg.dists = parse_list(d, |s| s.parse::<Distribution>().map_err(usage))?;
    }
    if let Some(s) = &cli.sizes {
        cfg.sizes = parse_list(s, parse_size)?;
    }
    if let Some(k) = &cli.k_ratios {
        cfg.k_ratios = parse_list(k, |s| s.parse::<f64>().map_err(|_| usage(format!("bad k-ratio `{s}`"))))?;
    }
    cfg.trials = cli.trials;
    cfg.seed = cli.seed;
    cfg.mode = match cli.mode {
        ModeArg::Time => Mode::Time,
        ModeArg::Count => Mode::Count,
    };
    cfg.verify = match cli.verify {
        VerifyArg::On => Verify::On,
        VerifyArg::Off => Verify::Off,
        VerifyArg::Auto => Verify::Auto,
    };
    cfg.sampling = matches!(cli.sampling, OnOff::On);
    cfg.fidelity = cli.fidelity;
    cfg.parallel = cli.parallel;
    if cli.summary.is_some() && !cfg.algos.contains(&Algo::Adaptive) {
        return Err(usage("--summary needs `adaptive` among the algorithms"));
    }
    cfg.validate()?;
    Ok(cfg)
}

fn sink(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) if p.as_os_str() != "-" => Box::new(BufWriter::new(File::create(p)?)),
        _ => Box::new(BufWriter::new(io::stdout())),
    })
}

fn gen(dist: &str, n: &str, seed: u64, out: &PathBuf) -> Result<(), BenchError> {
    let distribution = dist.parse::<Distribution>().map_err(usage)?;
    let spec = DatasetSpec::new(distribution, parse_size(n)?, seed);
    let data = datagen::generate(&spec);
    datagen::dump(out, &spec, &data).map_err(|e| usage(format!("{}: {e}", out.display())))
}

fn run(cli: &Cli) -> Result<(), BenchError> {
    if let Some(Command::Gen { dist, n, seed, out }) = &cli.command {
        return gen(dist, n, *seed, out);
    }
    let cfg = config(cli)?;
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Tsv => Format::Tsv,
    };
    let records = run_experiment(&cfg)?;
    let io_err = |e: &dyn std::fmt::Display| usage(format!("write failed: {e}"));
    let out = sink(cli.out.as_ref()).map_err(|e| io_err(&e))?;
    write_records(out, &records, format).map_err(|e| io_err(&e))?;
    if let Some(path) = &cli.summary {
        let rows = aggregate(&records).map_err(|e| usage(e))?;
        let out = sink(Some(path)).map_err(|e| io_err(&e))?;
        write_summary(out, &rows, format).map_err(|e| io_err(&e))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ BenchError::Verification { .. }) => {
            eprintln!("selectbench: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("selectbench: {e}");
            ExitCode::from(2)
        }
    }
}
