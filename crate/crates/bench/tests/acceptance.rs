//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::cell::RefCell;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fastselect::primitives::{lower_median4, median3, median5, upper_median4};
use fastselect::{
    quickselect_adaptive, run_stats, select_with, Counting, Ctx, Hooks, MarginGuarantee, Natural, OpCounters,
    Recorder, SelectOptions, StrategyId,
};
use fastselect_bench::datagen::{generate, stream_rng, DatasetSpec, Distribution};
use fastselect_bench::experiment::Algo;
use fastselect_bench::report::{median, read_records, Format};
use rand::seq::SliceRandom;
use rand::Rng;
use StrategyId::*;

// Pinned tolerances.
const ORACLE_INSTANCES: usize = 10_000;
const ORACLE_MAX_N: usize = 2000;
const EXHAUSTIVE_MAX_N: usize = 8;
const MEDIAN5_MEAN_SWAPS: (f64, f64) = (3.0, 3.3);
const ENVELOPE_N: usize = 100_000;
const ENVELOPE_SLACK: f64 = 512.0;
const MARGIN_TRIALS: usize = 1000;
const MARGIN_SIZES: [usize; 3] = [100, 1000, 10_000];
const MAX_MISSES_PER_SEARCH: u64 = 1;
const LINEARITY_SMALL: usize = 10_000;
const LINEARITY_LARGE: usize = 1_000_000;
const LINEARITY_MAX_GROWTH: f64 = 1.5;
const LINEARITY_TRIALS: u64 = 5;
const BENCH_BUDGET: Duration = Duration::from_secs(300);
const SEED: u64 = 20_240_611;

type Outcome = Result<String, String>;

struct Suite {
    failed: usize,
    max_misses: u64,
}

impl Suite {
    fn run(&mut self, id: usize, name: &str, f: impl FnOnce(&mut Suite) -> Outcome) {
        let start = Instant::now();
        let outcome = f(self);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                self.failed += 1;
                println!("FAIL {id:>2} {name}: {detail} [{secs:.1}s]");
            }
        }
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn partitioned_at(v: &[f64], k: usize) -> bool {
    v[..k].iter().all(|x| *x <= v[k]) && v[k + 1..].iter().all(|x| *x >= v[k])
}

fn same_multiset(a: &[f64], b: &[f64]) -> bool {
    let key = |v: &[f64]| {
        let mut s: Vec<u64> = v.iter().map(|x| x.to_bits()).collect();
        s.sort_unstable();
        s
    };
    key(a) == key(b)
}

fn counted<R>(f: impl FnOnce(&Ctx<Counting<'_, Natural>, &Recorder>) -> R) -> OpCounters {
    let rec = Recorder::new();
    let cx = Ctx::with_hooks(Counting::new(Natural, &rec), &rec);
    f(&cx);
    rec.snapshot()
}

fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..n as u32).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

fn all_algos() -> Vec<Algo> {
    Algo::all()
}

fn criterion_1(s: &mut Suite) -> Outcome {
    let mut rng = stream_rng(SEED, 1);
    let algos = all_algos();
    let mut runs = 0usize;
    for i in 0..ORACLE_INSTANCES {
        let n = rng.random_range(1..=ORACLE_MAX_N);
        let dist = Distribution::ALL[i % Distribution::ALL.len()];
        let k = rng.random_range(0..n);
        let input = generate(&DatasetSpec::new(dist, n, rng.random()));
        let mut sorted = input.clone();
        sorted.sort_by(f64::total_cmp);
        for &algo in &algos {
            for sampling in [false, true] {
                let mut v = input.clone();
                let c = run_stats(&mut v, k, Natural, &algo.options(sampling, false, 7)).unwrap();
                runs += 1;
                let ctx = || format!("{algo} {dist} n={n} k={k} sampling={sampling}");
                check(v[k].to_bits() == sorted[k].to_bits(), || format!("wrong element: {}", ctx()))?;
                check(partitioned_at(&v, k), || format!("not partitioned: {}", ctx()))?;
                check(same_multiset(&v, &input), || format!("not a permutation: {}", ctx()))?;
                if sampling {
                    s.max_misses = s.max_misses.max(c.guarantee_misses);
                }
            }
        }
    }
    Ok(format!("{runs} selections over {ORACLE_INSTANCES} instances, all exact"))
}

fn criterion_2(_: &mut Suite) -> Outcome {
    let mut runs = 0;
    for n in 1..=EXHAUSTIVE_MAX_N {
        for p in permutations(n) {
            for k in 0..n {
                let mut v = p.clone();
                quickselect_adaptive(&mut v, k, Natural, &SelectOptions::default()).unwrap();
                runs += 1;
                check(
                    v[k] == k as u32 && v[..k].iter().all(|x| *x < v[k]) && v[k + 1..].iter().all(|x| *x > v[k]),
                    || format!("{p:?} k={k} -> {v:?}"),
                )?;
            }
        }
    }
    Ok(format!("{runs} (permutation, k) pairs for n <= {EXHAUSTIVE_MAX_N}"))
}

fn criterion_3(_: &mut Suite) -> Outcome {
    let mut total = 0u64;
    let mut max5 = 0;
    for p in permutations(5) {
        let mut v = p.clone();
        let c = counted(|cx| median5(&mut v, 0, 1, 2, 3, 4, cx));
        check(c.comparisons == 6, || format!("median5 {p:?}: {} comparisons", c.comparisons))?;
        check(c.swaps <= 7, || format!("median5 {p:?}: {} swaps", c.swaps))?;
        check(v[2] == 2, || format!("median5 {p:?}: wrong median"))?;
        total += c.swaps;
        max5 = max5.max(c.swaps);
    }
    let mean = total as f64 / 120.0;
    check((MEDIAN5_MEAN_SWAPS.0..=MEDIAN5_MEAN_SWAPS.1).contains(&mean), || format!("median5 mean swaps {mean}"))?;
    let mut max4 = 0;
    for p in permutations(4) {
        let mut v = p.clone();
        let c = counted(|cx| lower_median4(&mut v, 0, 1, 2, 3, cx));
        check(c.comparisons == 4 && v[1] == 1, || format!("lowerMedian4 {p:?}: {c:?} -> {v:?}"))?;
        max4 = max4.max(c.swaps);
        let mut v = p.clone();
        let c = counted(|cx| upper_median4(&mut v, 0, 1, 2, 3, cx));
        check(c.comparisons == 4 && v[2] == 2, || format!("upperMedian4 {p:?}: {c:?} -> {v:?}"))?;
        max4 = max4.max(c.swaps);
    }
    let mut max3 = (0, 0);
    for p in permutations(3) {
        let mut v = p.clone();
        let c = counted(|cx| median3(&mut v, 0, 1, 2, cx));
        check(c.comparisons <= 3 && c.swaps <= 2 && v == [0, 1, 2], || format!("median3 {p:?}: {c:?}"))?;
        max3 = (max3.0.max(c.comparisons), max3.1.max(c.swaps));
    }
    Ok(format!(
        "median5: 6 cmp, max {max5} swaps, mean {mean:.4}; median4: 4 cmp, max {max4} swaps; median3: max {} cmp, {} swaps",
        max3.0, max3.1
    ))
}

fn criterion_4(_: &mut Suite) -> Outcome {
    let mut cases = 0;
    for p in permutations(5) {
        let arranged = p[0] < p[2] && p[1] < p[2] && p[3] > p[2] && p[4] > p[2];
        let mut v = p.clone();
        if !arranged {
            median5(&mut v, 0, 1, 2, 3, 4, &Ctx::new(Natural));
        }
        let c = counted(|cx| median5(&mut v, 0, 1, 2, 3, 4, cx));
        check(c.swaps == 0, || format!("median5 on arranged {v:?}: {} swaps", c.swaps))?;
        cases += 1;
    }
    for p in permutations(3) {
        let mut v = p.clone();
        median3(&mut v, 0, 1, 2, &Ctx::new(Natural));
        let c = counted(|cx| median3(&mut v, 0, 1, 2, cx));
        check(c.swaps == 0, || format!("median3 on arranged {v:?}: {} swaps", c.swaps))?;
        cases += 1;
    }
    Ok(format!("{cases} already-arranged inputs, 0 swaps each"))
}

fn criterion_5(_: &mut Suite) -> Outcome {
    let n = ENVELOPE_N;
    let dists = [
        Distribution::Uniform,
        Distribution::Sorted,
        Distribution::ReverseSorted,
        Distribution::OrganPipe,
        Distribution::AllEqual,
    ];
    let bounds: [(StrategyId, f64, Option<f64>); 8] = [
        (BfprtBaseline, 22.0, Some(18.5)),
        (RepeatedStep, 21.0, Some(16.25)),
        (BfprtImproved, 20.0, Some(16.0)),
        (RepeatedStepImproved, 20.0, Some(10.5)),
        (RepeatedStepLeft, 21.0, None),
        (RepeatedStepRight, 21.0, None),
        (RepeatedStepFarLeft, 21.0, None),
        (RepeatedStepFarRight, 21.0, None),
    ];
    let mut worst = Vec::new();
    for (id, bc, bs) in bounds {
        let ks: &[usize] = if id.samples() && id != RepeatedStepImproved {
            &[n / 20, n / 4, n / 2, 3 * n / 4, n - n / 20]
        } else {
            &[n / 2]
        };
        let (mut wc, mut ws) = (0f64, 0f64);
        for dist in dists {
            let input = generate(&DatasetSpec::new(dist, n, SEED));
            for &k in ks {
                let o = SelectOptions { strategy: Some(id), sampling: false, ..SelectOptions::default() };
                let c = run_stats(&mut input.clone(), k, Natural, &o).unwrap();
                check(c.comparisons as f64 <= bc * n as f64 + ENVELOPE_SLACK, || {
                    format!("{id} {dist} k={k}: C = {} > {bc}n + {ENVELOPE_SLACK}", c.comparisons)
                })?;
                if let Some(bs) = bs {
                    check(c.swaps as f64 <= bs * n as f64 + ENVELOPE_SLACK, || {
                        format!("{id} {dist} k={k}: S = {} > {bs}n + {ENVELOPE_SLACK}", c.swaps)
                    })?;
                }
                wc = wc.max(c.comparisons as f64 / n as f64);
                ws = ws.max(c.swaps as f64 / n as f64);
            }
        }
        worst.push(format!("{id} C/n<={wc:.2} S/n<={ws:.2}"));
    }
    Ok(worst.join("; "))
}

#[derive(Default)]
struct FirstPivot(RefCell<Option<usize>>);

impl Hooks for FirstPivot {
    fn partitioned(&self, _: Option<StrategyId>, _: usize, _: usize, pivot: usize, depth: usize) {
        let mut slot = self.0.borrow_mut();
        if depth == 0 && slot.is_none() {
            *slot = Some(pivot);
        }
    }
}

fn first_pivot(input: &[f64], k: usize, id: StrategyId) -> usize {
    let hook = FirstPivot::default();
    let mut v = input.to_vec();
    let o = SelectOptions { strategy: Some(id), sampling: false, ..SelectOptions::default() };
    select_with(&mut v, k, &Ctx::with_hooks(Natural, &hook), &o).unwrap();
    hook.0.into_inner().unwrap()
}

fn criterion_6(_: &mut Suite) -> Outcome {
    let ids = [
        BfprtBaseline,
        BfprtImproved,
        RepeatedStep,
        RepeatedStepImproved,
        RepeatedStepAdaptive,
        RepeatedStepLeft,
        RepeatedStepRight,
        RepeatedStepFarLeft,
        RepeatedStepFarRight,
    ];
    let mut rng = stream_rng(SEED, 6);
    let mut checks = 0;
    for n in MARGIN_SIZES {
        for _ in 0..MARGIN_TRIALS {
            let mut input: Vec<f64> = (0..n).map(|i| i as f64).collect();
            input.shuffle(&mut rng);
            let k = n / 2;
            for id in ids {
                let g = MarginGuarantee::of(id).unwrap();
                let p = first_pivot(&input, k, id);
                checks += 1;
                check(p >= g.min_left(n) && n - 1 - p >= g.min_right(n), || {
                    format!("{id} n={n}: pivot {p}, need left >= {} right >= {}", g.min_left(n), g.min_right(n))
                })?;
            }
            let k = rng.random_range(0..=n / 12);
            let p = first_pivot(&input, k, RepeatedStepFarLeft);
            check(p >= k, || format!("far-left guard n={n} k={k}: p={p}"))?;
            let k = n - 1 - rng.random_range(0..=n / 12);
            let p = first_pivot(&input, k, RepeatedStepFarRight);
            check(p <= k, || format!("far-right guard n={n} k={k}: p={p}"))?;
            checks += 2;
        }
    }
    Ok(format!("{checks} pivot checks at n in {MARGIN_SIZES:?}"))
}

fn criterion_7(s: &mut Suite) -> Outcome {
    check(s.max_misses <= MAX_MISSES_PER_SEARCH, || format!("a search recorded {} misses", s.max_misses))?;
    Ok(format!("max {} miss(es) per search over the randomized and linearity suites", s.max_misses))
}

fn criterion_8(_: &mut Suite) -> Outcome {
    let n = 100_000;
    let mut cases = 0;
    for dist in Distribution::ALL {
        let input = generate(&DatasetSpec::new(dist, n, SEED));
        for k in [0, n / 10, n / 2, n - 1] {
            let (mut a, mut b) = (input.clone(), input.clone());
            let ca = run_stats(&mut a, k, Natural, &SelectOptions::default()).unwrap();
            let cb = run_stats(&mut b, k, Natural, &SelectOptions::default()).unwrap();
            let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
            check(bits(&a) == bits(&b) && ca == cb, || format!("{dist} k={k}: runs differ"))?;
            // the uninstrumented run permutes identically
            let mut c = input.clone();
            quickselect_adaptive(&mut c, k, Natural, &SelectOptions::default()).unwrap();
            check(bits(&a) == bits(&c), || format!("{dist} k={k}: counting changed the output"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} repeated runs bit-identical"))
}

fn criterion_9(s: &mut Suite) -> Outcome {
    let algos: Vec<Algo> = std::iter::once(Algo::Adaptive)
        .chain(StrategyId::ALL.into_iter().filter(|id| !id.is_heuristic()).map(Algo::Fixed))
        .collect();
    // comparisons(n) is the median over seeded trials
    let inputs = |dist, n| -> Vec<Vec<f64>> {
        (0..LINEARITY_TRIALS).map(|t| generate(&DatasetSpec::new(dist, n, SEED + t))).collect()
    };
    let mut worst = (0.0, String::new());
    for dist in Distribution::ALL {
        let small = inputs(dist, LINEARITY_SMALL);
        let large = inputs(dist, LINEARITY_LARGE);
        for &algo in &algos {
            let per_n = |set: &[Vec<f64>], s: &mut Suite| {
                let ratios: Vec<f64> = set
                    .iter()
                    .map(|input| {
                        let n = input.len();
                        let c = run_stats(&mut input.clone(), n / 2, Natural, &algo.options(true, false, 1)).unwrap();
                        s.max_misses = s.max_misses.max(c.guarantee_misses);
                        c.comparisons as f64 / n as f64
                    })
                    .collect();
                median(&ratios)
            };
            let (a, b) = (per_n(&small, s), per_n(&large, s));
            let growth = b / a;
            check(growth <= LINEARITY_MAX_GROWTH, || {
                format!("{algo} {dist}: C/n {a:.2} at 1e4 vs {b:.2} at 1e6 (x{growth:.2})")
            })?;
            if growth > worst.0 {
                worst = (growth, format!("{algo} on {dist}"));
            }
        }
    }
    Ok(format!("worst growth x{:.3} ({}), median of {LINEARITY_TRIALS} trials", worst.0, worst.1))
}

fn selectbench(args: &[&str]) -> Result<std::process::Output, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_selectbench")).args(args).output().map_err(|e| e.to_string())?;
    if o.status.success() {
        Ok(o)
    } else {
        Err(format!("selectbench {args:?} exited {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr)))
    }
}

fn criterion_10(_: &mut Suite) -> Outcome {
    let start = Instant::now();
    let dir = std::env::temp_dir().join(format!("selectbench-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = |name: &str| dir.join(name).to_string_lossy().into_owned();

    // percentile sweep at n = 1e6, 5 trials, every result verified
    selectbench(&[
        "--preset", "percentile-sweep", "--verify", "on",
        "--out", &path("pct.csv"), "--summary", &path("pct-summary.csv"),
    ])?;
    let pct = read_records(std::fs::File::open(path("pct.csv")).map_err(|e| e.to_string())?, Format::Csv)
        .map_err(|e| e.to_string())?;
    check(pct.len() == 5 * 2 * 19 * 5, || format!("percentile sweep produced {} records", pct.len()))?;
    let table = std::fs::read_to_string(path("pct-summary.csv")).map_err(|e| e.to_string())?;
    check(table.lines().count() == 1 + 5 * 2 * 19, || format!("summary has {} lines", table.lines().count()))?;

    // median search over a size sweep, desk scale
    selectbench(&[
        "--sizes", "1e4,1e5,1e6", "--dists", "uniform,gaussian,sorted", "--verify", "on",
        "--out", &path("size.csv"), "--summary", &path("size-summary.csv"),
    ])?;

    // sorted input: median-of-3 finishes in fewer comparisons than adaptive
    let o = selectbench(&[
        "--mode", "count", "--sizes", "1e4,1e5,1e6", "--dists", "sorted", "--algos", "adaptive,median3",
        "--trials", "1", "--verify", "on",
    ])?;
    let counts = read_records(&o.stdout[..], Format::Csv).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for n in [10_000, 100_000, 1_000_000] {
        let get = |a: Algo| counts.iter().find(|r| r.algo == a && r.n == n).and_then(|r| r.comparisons).unwrap();
        let (m3, ad) = (get(Algo::Fixed(HeuristicMedian3)), get(Algo::Adaptive));
        check(m3 < ad, || format!("sorted n={n}: median3 {m3} comparisons vs adaptive {ad}"))?;
        notes.push(format!("n={n}: {m3} < {ad}"));
    }
    let elapsed = start.elapsed();
    std::fs::remove_dir_all(&dir).ok();
    check(elapsed <= BENCH_BUDGET, || format!("took {elapsed:?}"))?;

    let speedups: Vec<f64> = table
        .lines()
        .skip(1)
        .filter(|l| l.starts_with("median3,uniform"))
        .filter_map(|l| l.rsplit(',').next()?.parse().ok())
        .collect();
    Ok(format!(
        "1900 verified timed runs + size sweep; sorted comparisons median3 vs adaptive: {}; median3/adaptive time on uniform percentiles {:.2}..{:.2}",
        notes.join(", "),
        speedups.iter().cloned().fold(f64::INFINITY, f64::min),
        speedups.iter().cloned().fold(0.0, f64::max)
    ))
}

fn main() -> ExitCode {
    let mut suite = Suite { failed: 0, max_misses: 0 };
    suite.run(1, "correctness vs oracle", criterion_1);
    suite.run(2, "exhaustive small cases", criterion_2);
    suite.run(3, "fixed-size primitive costs", criterion_3);
    suite.run(4, "idempotence", criterion_4);
    suite.run(5, "comparison/swap envelopes", criterion_5);
    suite.run(6, "margin guarantees", criterion_6);
    suite.run(8, "determinism", criterion_8);
    suite.run(9, "linearity", criterion_9);
    suite.run(7, "sampling soundness", criterion_7);
    suite.run(10, "benchmark methodology", criterion_10);
    if suite.failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{} criterion(s) failed", suite.failed);
        ExitCode::FAILURE
    }
}
