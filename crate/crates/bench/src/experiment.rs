//! The benchmark matrix runner.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use fastselect::{run_stats, select_with, Ctx, Natural, SelectOptions, StrategyId};
use rayon::prelude::*;

use crate::datagen::{derive_seed, generate, DatasetSpec, Distribution};

/// An algorithm under test: the adaptive driver or one fixed strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algo {
    Adaptive,
    Fixed(StrategyId),
}

impl Algo {
    /// The adaptive driver followed by every fixed strategy.
    pub fn all() -> Vec<Algo> {
        std::iter::once(Algo::Adaptive)
            .chain(StrategyId::ALL.into_iter().map(Algo::Fixed))
            .collect()
    }

    /// The adaptive driver and the four heuristic baselines.
    pub fn default_set() -> Vec<Algo> {
        std::iter::once(Algo::Adaptive)
            .chain(StrategyId::HEURISTICS.into_iter().map(Algo::Fixed))
            .collect()
    }

    pub fn options(self, sampling: bool, fidelity: bool, seed: u64) -> SelectOptions {
        let strategy = match self {
            Algo::Adaptive => None,
            Algo::Fixed(id) => Some(id),
        };
        SelectOptions { strategy, sampling, fidelity, seed: Some(seed) }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algo::Adaptive => f.write_str("adaptive"),
            Algo::Fixed(id) => write!(f, "{id}"),
        }
    }
}

impl FromStr for Algo {
    type Err = fastselect::strategy::UnknownStrategy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "adaptive" {
            Ok(Algo::Adaptive)
        } else {
            s.parse().map(Algo::Fixed)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Time,
    Count,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub algos: Vec<Algo>,
    pub dists: Vec<Distribution>,
    pub sizes: Vec<usize>,
    pub k_ratios: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
    /// Check every result against an independent oracle.
    pub verify: Verify,
    pub sampling: bool,
    pub fidelity: bool,
    /// Run cells concurrently; counting mode only.
    pub parallel: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verify {
    On,
    Off,
    /// On below one million elements.
    Auto,
}

impl Verify {
    pub fn applies(self, n: usize) -> bool {
        match self {
            Verify::On => true,
            Verify::Off => false,
            Verify::Auto => n < 1_000_000,
        }
    }
}

impl Default for Config {
    fn default() -> Self {
        Config {
            algos: Algo::default_set(),
            dists: vec![Distribution::Uniform],
            sizes: vec![10_000, 100_000, 1_000_000, 10_000_000],
            k_ratios: vec![0.5],
            trials: 5,
            seed: 1,
            mode: Mode::Time,
            verify: Verify::Auto,
            sampling: true,
            fidelity: false,
            parallel: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BenchError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("verification failed: {algo} on {dist} n={n} k={k} trial {trial}: {reason}")]
    Verification {
        algo: String,
        dist: String,
        n: usize,
        k: usize,
        trial: usize,
        reason: String,
    },
}

impl Config {
    pub fn validate(&self) -> Result<(), BenchError> {
        let usage = |m: &str| Err(BenchError::Usage(m.to_owned()));
        if self.algos.is_empty() || self.dists.is_empty() || self.sizes.is_empty() || self.k_ratios.is_empty() {
            return usage("empty algorithm, distribution, size or k-ratio list");
        }
        if self.sizes.contains(&0) {
            return usage("sizes must be positive");
        }
        if let Some(r) = self.k_ratios.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
            return Err(BenchError::Usage(format!("k-ratio {r} outside (0, 1)")));
        }
        if self.trials == 0 {
            return usage("trials must be positive");
        }
        if self.parallel && self.mode == Mode::Time {
            return usage("--parallel is only allowed in count mode");
        }
        Ok(())
    }
}

/// One measured selection.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub algo: Algo,
    pub dist: Distribution,
    pub n: usize,
    pub k_ratio: f64,
    pub trial: usize,
    pub seed: u64,
    pub wall_nanos: u64,
    pub comparisons: Option<u64>,
    pub swaps: Option<u64>,
}

/// Target index for a ratio: `floor(ratio * n)`, clamped into range.
pub fn target_index(n: usize, k_ratio: f64) -> usize {
    ((k_ratio * n as f64) as usize).min(n - 1)
}

/// Seed of trial `trial` at size `n`. Independent of algorithm and
/// distribution, so every algorithm sees the same inputs.
pub fn trial_seed(base: u64, n: usize, trial: usize) -> u64 {
    derive_seed(derive_seed(base, n as u64), trial as u64)
}

/// Checks the selection postcondition against `std`'s selection on a copy
/// of the input.
pub fn verify_selection(input: &[f64], output: &[f64], k: usize) -> Result<(), String> {
    let mut oracle = input.to_vec();
    let (_, want, _) = oracle.select_nth_unstable_by(k, f64::total_cmp);
    let got = output[k];
    if got.to_bits() != want.to_bits() {
        return Err(format!("element {got} at k, expected {want}"));
    }
    if let Some(i) = output[..k].iter().position(|x| *x > got) {
        return Err(format!("left element {} at {i} exceeds the target", output[i]));
    }
    if let Some(i) = output[k + 1..].iter().position(|x| *x < got) {
        return Err(format!("right element {} at {} below the target", output[k + 1 + i], k + 1 + i));
    }
    let sum = |v: &[f64]| v.iter().map(|x| x.to_bits() as u128).sum::<u128>();
    if sum(input) != sum(output) {
        return Err("output checksum differs from the input's".into());
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
struct Cell {
    algo: Algo,
    dist: Distribution,
    n: usize,
    k_ratio: f64,
}

fn measure(cfg: &Config, cell: Cell, trial: usize, seed: u64) -> Result<BenchRecord, BenchError> {
    let Cell { algo, dist, n, k_ratio } = cell;
    let k = target_index(n, k_ratio);
    let input = generate(&DatasetSpec::new(dist, n, seed));
    let mut v = input.clone();
    let opts = algo.options(cfg.sampling, cfg.fidelity, seed);
    let (wall_nanos, comparisons, swaps) = match cfg.mode {
        Mode::Time => {
            let cx = Ctx::new(Natural);
            let start = Instant::now();
            select_with(&mut v, k, &cx, &opts).expect("index in range");
            (start.elapsed().as_nanos() as u64, None, None)
        }
        Mode::Count => {
            let start = Instant::now();
            let c = run_stats(&mut v, k, Natural, &opts).expect("index in range");
            (start.elapsed().as_nanos() as u64, Some(c.comparisons), Some(c.swaps))
        }
    };
    if cfg.verify.applies(n) {
        verify_selection(&input, &v, k).map_err(|reason| BenchError::Verification {
            algo: algo.to_string(),
            dist: dist.to_string(),
            n,
            k,
            trial,
            reason,
        })?;
    }
    Ok(BenchRecord {
        algo,
        dist,
        n,
        k_ratio,
        trial,
        seed,
        wall_nanos: wall_nanos.max(1),
        comparisons,
        swaps,
    })
}

fn run_cell(cfg: &Config, cell: Cell) -> Result<Vec<BenchRecord>, BenchError> {
    if cfg.mode == Mode::Time {
        // untimed warm-up on the first trial's input
        measure(&Config { verify: Verify::Off, ..cfg.clone() }, cell, 0, trial_seed(cfg.seed, cell.n, 0))?;
    }
    (0..cfg.trials)
        .map(|t| measure(cfg, cell, t, trial_seed(cfg.seed, cell.n, t)))
        .collect()
}

/// Orders records by cell (algorithm name, distribution name, n, ratio),
/// then trial.
pub fn sort_records(records: &mut [BenchRecord]) {
    records.sort_by(|a, b| {
        (a.algo.to_string(), a.dist.to_string(), a.n)
            .cmp(&(b.algo.to_string(), b.dist.to_string(), b.n))
            .then(a.k_ratio.total_cmp(&b.k_ratio))
            .then(a.trial.cmp(&b.trial))
    });
}

/// Runs every (algorithm, distribution, size, ratio) cell for the configured
/// number of trials. Stops at the first verification failure.
pub fn run_experiment(cfg: &Config) -> Result<Vec<BenchRecord>, BenchError> {
    cfg.validate()?;
    let mut cells = Vec::new();
    for &algo in &cfg.algos {
        for &dist in &cfg.dists {
            for &n in &cfg.sizes {
                for &k_ratio in &cfg.k_ratios {
                    cells.push(Cell { algo, dist, n, k_ratio });
                }
            }
        }
    }
    let per_cell: Vec<Vec<BenchRecord>> = if cfg.parallel {
        cells.par_iter().map(|&c| run_cell(cfg, c)).collect::<Result<_, _>>()?
    } else {
        cells.iter().map(|&c| run_cell(cfg, c)).collect::<Result<_, _>>()?
    };
    let mut records: Vec<BenchRecord> = per_cell.into_iter().flatten().collect();
    sort_records(&mut records);
    Ok(records)
}
