//! Pivot-producing partition strategies.
//!
//! Each strategy takes a slice and a target index `k`, partitions the slice
//! around some pivot and returns the pivot's final index. The
//! median-of-medians family recurses through the engine's quickselect loop
//! with its own id to find the pivot inside a small window, then extends the
//! window's partition to the whole slice.
//!
//! Window layouts (`n` = slice length):
//!
//! | strategy               | groups                               | window              |
//! |------------------------|--------------------------------------|---------------------|
//! | `BfprtBaseline`        | contiguous 5s, medians to the front  | `[0, n/5)`          |
//! | `BfprtImproved`        | `(i, i+1, 2f+j, 3f+i, 3f+i+1)`       | `[2f, 3f)`, `f=n/5` |
//! | `RepeatedStep`         | contiguous 3s, twice                 | `[0, n/9)`          |
//! | `RepeatedStepImproved` | tertiles, then the middle tertile    | `[4f, 5f)`, `f=n/9` |
//! | `RepeatedStepLeft`     | lower medians of 4, then medians of 3 | `[f+w, f+2w)`, `f=n/4`, `w=f/3` |
//! | `RepeatedStepFarLeft`  | lower medians of 4, then minima of 3 | `[f, f+w)`          |
//!
//! The right-leaning strategies are exact mirrors of the left ones: they run
//! the same code under the converse order with indexes reflected about the
//! middle of the slice.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::engine::Engine;
use crate::instrument::Hooks;
use crate::order::Order;
use crate::primitives::{
    expand_partition, hoare_partition, lower_median4_dir, median3, median3_dir, median5, Dir,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrategyId {
    BfprtBaseline,
    BfprtImproved,
    RepeatedStep,
    RepeatedStepImproved,
    RepeatedStepAdaptive,
    RepeatedStepLeft,
    RepeatedStepRight,
    RepeatedStepFarLeft,
    RepeatedStepFarRight,
    HeuristicMedian3,
    HeuristicMedian3Randomized,
    HeuristicNinther,
    HeuristicNintherRandomized,
}

use StrategyId::*;

impl StrategyId {
    pub const ALL: [StrategyId; 13] = [
        BfprtBaseline,
        BfprtImproved,
        RepeatedStep,
        RepeatedStepImproved,
        RepeatedStepAdaptive,
        RepeatedStepLeft,
        RepeatedStepRight,
        RepeatedStepFarLeft,
        RepeatedStepFarRight,
        HeuristicMedian3,
        HeuristicMedian3Randomized,
        HeuristicNinther,
        HeuristicNintherRandomized,
    ];

    pub const HEURISTICS: [StrategyId; 4] = [
        HeuristicMedian3,
        HeuristicMedian3Randomized,
        HeuristicNinther,
        HeuristicNintherRandomized,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BfprtBaseline => "bfprt-baseline",
            BfprtImproved => "bfprt-improved",
            RepeatedStep => "repeated-step",
            RepeatedStepImproved => "repeated-step-improved",
            RepeatedStepAdaptive => "repeated-step-adaptive",
            RepeatedStepLeft => "repeated-step-left",
            RepeatedStepRight => "repeated-step-right",
            RepeatedStepFarLeft => "repeated-step-far-left",
            RepeatedStepFarRight => "repeated-step-far-right",
            HeuristicMedian3 => "median3",
            HeuristicMedian3Randomized => "median3-randomized",
            HeuristicNinther => "ninther",
            HeuristicNintherRandomized => "ninther-randomized",
        }
    }

    pub fn is_heuristic(self) -> bool {
        Self::HEURISTICS.contains(&self)
    }

    pub fn is_randomized(self) -> bool {
        matches!(self, HeuristicMedian3Randomized | HeuristicNintherRandomized)
    }

    /// Whether the strategy skips its first median round while sampling is on.
    pub fn samples(self) -> bool {
        matches!(
            self,
            RepeatedStepImproved
                | RepeatedStepAdaptive
                | RepeatedStepLeft
                | RepeatedStepRight
                | RepeatedStepFarLeft
                | RepeatedStepFarRight
        )
    }

    /// Slices shorter than this are partitioned directly around their middle
    /// element.
    pub fn min_len(self) -> usize {
        match self {
            BfprtBaseline | BfprtImproved => 5,
            RepeatedStep | RepeatedStepImproved | RepeatedStepAdaptive => 9,
            RepeatedStepLeft | RepeatedStepRight | RepeatedStepFarLeft | RepeatedStepFarRight => 12,
            HeuristicMedian3 | HeuristicMedian3Randomized | HeuristicNinther | HeuristicNintherRandomized => 1,
        }
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownStrategy(pub String);

impl fmt::Display for UnknownStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown strategy `{}`", self.0)
    }
}

impl std::error::Error for UnknownStrategy {}

impl FromStr for StrategyId {
    type Err = UnknownStrategy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| UnknownStrategy(s.to_owned()))
    }
}

/// Whether the search is still estimating pivots from a sample.
///
/// Once cleared it stays cleared for the rest of the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingFlag(bool);

impl SamplingFlag {
    pub fn new(enabled: bool) -> Self {
        SamplingFlag(enabled)
    }

    pub fn is_on(self) -> bool {
        self.0
    }

    pub fn clear(&mut self) {
        self.0 = false;
    }
}

/// `num/den` of the slice length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub num: usize,
    pub den: usize,
}

impl Fraction {
    pub const fn new(num: usize, den: usize) -> Self {
        Fraction { num, den }
    }

    pub fn of(self, n: usize) -> usize {
        n * self.num / self.den
    }
}

/// Guaranteed fraction of the slice on each side of the pivot, for distinct
/// elements, sampling off, and a median target (`k = n/2`).
///
/// `slack` absorbs floor effects and the ignored remainder groups: a pivot
/// returned for length `n` has at least `left.of(n) - slack` elements before
/// it and `right.of(n) - slack` after it. The slack values were obtained by
/// exhaustive comparison against [`guaranteed_margins`] over every length
/// from the base case up to 100 000.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MarginGuarantee {
    pub strategy: StrategyId,
    pub left: Fraction,
    pub right: Fraction,
    pub slack: usize,
}

impl MarginGuarantee {
    pub fn of(strategy: StrategyId) -> Option<Self> {
        let (l, r, slack) = match strategy {
            BfprtBaseline | BfprtImproved => ((3, 10), (3, 10), 2),
            RepeatedStep | RepeatedStepImproved | RepeatedStepAdaptive => ((2, 9), (2, 9), 2),
            RepeatedStepLeft => ((1, 6), (1, 4), 3),
            RepeatedStepRight => ((1, 4), (1, 6), 3),
            RepeatedStepFarLeft => ((1, 12), (3, 8), 5),
            RepeatedStepFarRight => ((3, 8), (1, 12), 5),
            _ => return None,
        };
        Some(MarginGuarantee {
            strategy,
            left: Fraction::new(l.0, l.1),
            right: Fraction::new(r.0, r.1),
            slack,
        })
    }

    pub fn min_left(&self, n: usize) -> usize {
        self.left.of(n).saturating_sub(self.slack)
    }

    pub fn min_right(&self, n: usize) -> usize {
        self.right.of(n).saturating_sub(self.slack)
    }
}

/// Lower bounds on the number of elements strictly before and strictly
/// after a returned pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Margins {
    pub left: usize,
    pub right: usize,
}

impl Margins {
    fn swapped(self) -> Self {
        Margins { left: self.right, right: self.left }
    }
}

/// `k * width / n`, truncated and clamped into the window.
pub fn interpolate(k: usize, width: usize, n: usize) -> usize {
    debug_assert!(width > 0 && n > 0);
    let idx = (k as u128 * width as u128 / n as u128) as usize;
    idx.min(width - 1)
}

/// Recursion index for the far strategies.
///
/// The pivot of a far-left step has at least `2*idx + 1` elements before it,
/// so `idx = k/2` keeps it at or beyond `k`. Beyond the far range the window
/// median is used.
pub fn far_index(k: usize, width: usize) -> usize {
    (k / 2).min(width / 2).min(width - 1)
}

/// The slice range a strategy recurses on and the index searched there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub start: usize,
    pub len: usize,
    pub index: usize,
}

/// Where one partition step of `id` over a slice of length `n` searches for
/// its pivot. `None` for heuristics and for slices below the base case.
pub fn recursion_window(id: StrategyId, n: usize, k: usize, fidelity: bool) -> Option<Window> {
    if id.is_heuristic() || n < id.min_len() {
        return None;
    }
    let mirror = |twin| {
        let w = recursion_window(twin, n, n - 1 - k, fidelity)?;
        Some(Window { start: n - w.start - w.len, len: w.len, index: w.len - 1 - w.index })
    };
    let (start, len, index) = match id {
        BfprtBaseline => (0, n / 5, n / 5 / 2),
        BfprtImproved => (2 * (n / 5), n / 5, n / 5 / 2),
        RepeatedStep => (0, n / 9, n / 9 / 2),
        RepeatedStepImproved => (4 * (n / 9), n / 9, n / 9 / 2),
        RepeatedStepAdaptive => (4 * (n / 9), n / 9, interpolate(k, n / 9, n)),
        RepeatedStepLeft => {
            let (f, w) = (n / 4, n / 4 / 3);
            (if fidelity { f } else { f + w }, w, interpolate(k, w, n))
        }
        RepeatedStepFarLeft => {
            let (f, w) = (n / 4, n / 4 / 3);
            (f, w, if fidelity { interpolate(k, w, n) } else { far_index(k, w) })
        }
        RepeatedStepRight => return mirror(RepeatedStepLeft),
        RepeatedStepFarRight => return mirror(RepeatedStepFarLeft),
        _ => unreachable!(),
    };
    Some(Window { start, len, index })
}

/// Structural lower bounds on the pivot's distance from both ends for one
/// partition step, assuming distinct elements.
///
/// The counts follow from the grouping: e.g. a window element of
/// `RepeatedStepImproved` is a median of three tertile medians, each a median
/// of three, so every window element ranked below the recursion index
/// certifies four elements left of the pivot. The bounds also hold with
/// duplicates for the strategies that finish with [`expand_partition`],
/// since that routine never moves a certified element across the pivot.
///
/// Returns `None` for heuristics and for lengths below the strategy's base
/// case, where no margin is promised.
pub fn guaranteed_margins(id: StrategyId, n: usize, k: usize, sampling: bool, fidelity: bool) -> Option<Margins> {
    if id.is_heuristic() || n < id.min_len() {
        return None;
    }
    let mirror = |left_twin| {
        guaranteed_margins(left_twin, n, n - 1 - k, sampling, fidelity).map(Margins::swapped)
    };
    let sampled = sampling && id.samples();
    // (left per window rank, left for the pivot, right per rank, right for the pivot)
    let (lw, lp, rw, rp) = match id {
        RepeatedStepRight => return mirror(RepeatedStepLeft),
        RepeatedStepFarRight => return mirror(RepeatedStepFarLeft),
        BfprtBaseline | BfprtImproved => (3, 2, 3, 2),
        RepeatedStep => (4, 3, 4, 3),
        RepeatedStepImproved | RepeatedStepAdaptive if sampled => (2, 1, 2, 1),
        RepeatedStepImproved | RepeatedStepAdaptive => (4, 3, 4, 3),
        // window of minima of three; also the left strategy's printed window
        RepeatedStepFarLeft | RepeatedStepLeft if id == RepeatedStepFarLeft || fidelity => {
            if sampled {
                (1, 0, 3, 2)
            } else {
                (2, 1, 9, 8)
            }
        }
        RepeatedStepLeft if sampled => (2, 1, 2, 1),
        RepeatedStepLeft => (4, 3, 6, 5),
        _ => unreachable!(),
    };
    let win = recursion_window(id, n, k, fidelity)?;
    let (w, idx) = (win.len, win.index);
    Some(Margins {
        left: lw * idx + lp,
        right: rw * (w - 1 - idx) + rp,
    })
}

/// Whether a step's pivot fell short of the strategy's non-sampling margin
/// on the side the search is about to discard, or (for the far strategies
/// in their dispatch range) landed between `k` and the near edge.
pub fn misses_guarantee(id: StrategyId, n: usize, k: usize, p: usize, fidelity: bool) -> bool {
    let Some(m) = guaranteed_margins(id, n, k, false, fidelity) else {
        return false;
    };
    let far_guard = match id {
        RepeatedStepFarLeft if k <= n / 12 => p >= k,
        RepeatedStepFarRight if n - 1 - k <= n / 12 => p <= k,
        _ => true,
    };
    let margin_ok = match p.cmp(&k) {
        std::cmp::Ordering::Less => p >= m.left,
        std::cmp::Ordering::Greater => n - 1 - p >= m.right,
        std::cmp::Ordering::Equal => true,
    };
    !(margin_ok && far_guard)
}

/// Quality check run after each partition step: clears the flag iff the
/// step missed its non-sampling guarantee. A cleared flag stays cleared.
pub fn quality_check(
    id: StrategyId,
    n: usize,
    k: usize,
    p: usize,
    mut flag: SamplingFlag,
    fidelity: bool,
) -> SamplingFlag {
    if flag.is_on() && id.samples() && misses_guarantee(id, n, k, p, fidelity) {
        flag.clear();
    }
    flag
}

/// Index of the median of `v[a]`, `v[b]`, `v[c]`; comparisons only.
fn median_index<T, O: Order<T>>(v: &[T], a: usize, b: usize, c: usize, ord: &O) -> usize {
    if ord.lt(&v[b], &v[a]) {
        if ord.lt(&v[c], &v[b]) {
            b
        } else if ord.lt(&v[c], &v[a]) {
            c
        } else {
            a
        }
    } else if ord.lt(&v[c], &v[a]) {
        a
    } else if ord.lt(&v[c], &v[b]) {
        c
    } else {
        b
    }
}

/// Sample positions of Tukey's ninther for a slice of length `n >= 9`.
pub fn ninther_positions(n: usize) -> [usize; 9] {
    let mut pos = [0; 9];
    for (i, slot) in pos.iter_mut().enumerate().take(8) {
        *slot = i * n / 8;
    }
    pos[8] = n - 1;
    pos
}

impl<O, H: Hooks> Engine<'_, O, H> {
    /// Runs one partition step of `id` over `v`.
    pub(crate) fn partition<T>(&mut self, id: StrategyId, v: &mut [T], k: usize) -> usize
    where
        O: Order<T>,
    {
        debug_assert!(!v.is_empty());
        match id {
            BfprtBaseline => self.bfprt_baseline(v),
            BfprtImproved => self.bfprt_improved(v, k),
            RepeatedStep => self.repeated_step(v),
            RepeatedStepImproved => self.repeated_step_improved(id, v, k),
            RepeatedStepAdaptive => self.repeated_step_improved(id, v, k),
            RepeatedStepLeft | RepeatedStepFarLeft => self.lean(id, v, k, Dir::Fwd),
            RepeatedStepRight => self.lean(id, v, k, Dir::Rev),
            RepeatedStepFarRight => self.lean(id, v, k, Dir::Rev),
            _ => self.heuristic(id, v),
        }
    }

    fn bfprt_baseline<T>(&mut self, v: &mut [T]) -> usize
    where
        O: Order<T>,
    {
        let cx = self.cx;
        let n = v.len();
        if n < 5 {
            return hoare_partition(v, n / 2, cx);
        }
        let (mut i, mut j) = (0, 0);
        while i + 4 < n {
            median5(v, i, i + 1, i + 2, i + 3, i + 4, cx);
            // median to the first quintile
            cx.swap(v, i + 2, j);
            i += 5;
            j += 1;
        }
        self.recurse(BfprtBaseline, &mut v[..j], j / 2);
        hoare_partition(v, j / 2, cx)
    }

    fn bfprt_improved<T>(&mut self, v: &mut [T], k: usize) -> usize
    where
        O: Order<T>,
    {
        let cx = self.cx;
        let n = v.len();
        if n < 5 {
            return hoare_partition(v, n / 2, cx);
        }
        let f = n / 5;
        for j in 0..f {
            let i = 2 * j;
            median5(v, i, i + 1, 2 * f + j, 3 * f + i, 3 * f + i + 1, cx);
        }
        self.recurse_and_expand(BfprtImproved, v, k)
    }

    fn repeated_step<T>(&mut self, v: &mut [T]) -> usize
    where
        O: Order<T>,
    {
        let cx = self.cx;
        let n = v.len();
        if n < 9 {
            return hoare_partition(v, n / 2, cx);
        }
        let (mut i, mut j) = (0, 0);
        while i + 2 < n {
            median3(v, i, i + 1, i + 2, cx);
            cx.swap(v, i + 1, j);
            i += 3;
            j += 1;
        }
        let (mut i, mut m) = (0, 0);
        while i + 2 < j {
            median3(v, i, i + 1, i + 2, cx);
            cx.swap(v, i + 1, m);
            i += 3;
            m += 1;
        }
        self.recurse(RepeatedStep, &mut v[..m], m / 2);
        hoare_partition(v, m / 2, cx)
    }

    /// `RepeatedStepImproved`, or its interpolating variant `RepeatedStepAdaptive`.
    fn repeated_step_improved<T>(&mut self, id: StrategyId, v: &mut [T], k: usize) -> usize
    where
        O: Order<T>,
    {
        let cx = self.cx;
        let n = v.len();
        if n < 9 {
            return hoare_partition(v, n / 2, cx);
        }
        let f = n / 9;
        if !self.sampling.is_on() {
            for i in 3 * f..6 * f {
                median3(v, i - 3 * f, i, i + 3 * f, cx);
            }
        }
        for i in 4 * f..5 * f {
            median3(v, i - f, i, i + f, cx);
        }
        self.recurse_and_expand(id, v, k)
    }

    /// The left-leaning strategies, or with `Dir::Rev` their mirrored
    /// right-leaning twins.
    fn lean<T>(&mut self, id: StrategyId, v: &mut [T], k: usize, dir: Dir) -> usize
    where
        O: Order<T>,
    {
        let cx = self.cx;
        let n = v.len();
        let mirrored = dir == Dir::Rev;
        let at = |i: usize| if mirrored { n - 1 - i } else { i };
        if n < 12 {
            return hoare_partition(v, at(n / 2), cx);
        }
        let far = matches!(id, RepeatedStepFarLeft | RepeatedStepFarRight);

        let f = n / 4;
        let w = f / 3;
        if !self.sampling.is_on() {
            for i in 0..f {
                lower_median4_dir(v, at(i), at(i + f), at(i + 2 * f), at(i + 3 * f), dir, cx);
            }
        }
        if far {
            for i in f..f + w {
                if cx.less(dir, v, at(i + w), at(i)) {
                    cx.swap(v, at(i + w), at(i));
                }
                if cx.less(dir, v, at(i + 2 * w), at(i)) {
                    cx.swap(v, at(i + 2 * w), at(i));
                }
            }
        } else {
            for i in f..f + w {
                median3_dir(v, at(i), at(i + w), at(i + 2 * w), dir, cx);
            }
        }
        self.recurse_and_expand(id, v, k)
    }

    /// Finds the pivot inside the strategy's window and extends the window's
    /// partition to the whole slice.
    fn recurse_and_expand<T>(&mut self, id: StrategyId, v: &mut [T], k: usize) -> usize
    where
        O: Order<T>,
    {
        let Window { start, len, index } =
            recursion_window(id, v.len(), k, self.fidelity).expect("slice above the base case");
        self.recurse(id, &mut v[start..start + len], index);
        expand_partition(v, start, start + index, start + len - 1, self.cx)
    }

    fn heuristic<T>(&mut self, id: StrategyId, v: &mut [T]) -> usize
    where
        O: Order<T>,
    {
        let cx = self.cx;
        let n = v.len();
        let ord = &cx.order;
        let pivot = match id {
            HeuristicNinther if n >= 9 => {
                let s = ninther_positions(n);
                let m = [
                    median_index(v, s[0], s[1], s[2], ord),
                    median_index(v, s[3], s[4], s[5], ord),
                    median_index(v, s[6], s[7], s[8], ord),
                ];
                median_index(v, m[0], m[1], m[2], ord)
            }
            HeuristicNintherRandomized if n >= 9 => {
                let s: [usize; 9] = std::array::from_fn(|_| self.rng.random_range(0..n));
                let m = [
                    median_index(v, s[0], s[1], s[2], ord),
                    median_index(v, s[3], s[4], s[5], ord),
                    median_index(v, s[6], s[7], s[8], ord),
                ];
                median_index(v, m[0], m[1], m[2], ord)
            }
            _ if n < 3 => 0,
            HeuristicMedian3 | HeuristicNinther => median_index(v, 0, n / 2, n - 1, ord),
            HeuristicMedian3Randomized | HeuristicNintherRandomized => {
                let s: [usize; 3] = std::array::from_fn(|_| self.rng.random_range(0..n));
                median_index(v, s[0], s[1], s[2], ord)
            }
            _ => unreachable!("{id} is not a heuristic"),
        };
        hoare_partition(v, pivot, cx)
    }
}
