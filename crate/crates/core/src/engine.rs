//! The quickselect driver and the public selection entry points.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::SelectError;
use crate::instrument::{Counting, Hooks, OpCounters, Recorder};
use crate::order::{Natural, Order};
use crate::primitives::{hoare_partition, Ctx};
use crate::strategy::{misses_guarantee, SamplingFlag, StrategyId};

const DEFAULT_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

/// Options for one selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelectOptions {
    /// Fixed strategy for every step; `None` selects one per step by the
    /// relative position of the target.
    pub strategy: Option<StrategyId>,
    /// Start the search in sampling mode.
    pub sampling: bool,
    /// Reproduce the reference layouts verbatim: the adaptive driver's middle
    /// branch uses the non-interpolating strategy, the left strategies
    /// recurse on the window of minima and the far strategies interpolate
    /// their recursion index.
    pub fidelity: bool,
    /// Seed for the randomized heuristics.
    pub seed: Option<u64>,
}

impl Default for SelectOptions {
    fn default() -> Self {
        SelectOptions { strategy: None, sampling: true, fidelity: false, seed: None }
    }
}

impl SelectOptions {
    pub fn with_strategy(strategy: StrategyId) -> Self {
        SelectOptions { strategy: Some(strategy), ..Self::default() }
    }
}

/// Strategy the adaptive driver uses for a slice of length `n` searched at
/// index `k`, or `None` when the slice is short enough to be partitioned
/// directly around its middle element.
pub fn dispatch(n: usize, k: usize, fidelity: bool) -> Option<StrategyId> {
    if n < 12 {
        return None;
    }
    let r = k as f64 / n as f64;
    let id = if r <= 7.0 / 16.0 {
        if r <= 1.0 / 12.0 {
            StrategyId::RepeatedStepFarLeft
        } else {
            StrategyId::RepeatedStepLeft
        }
    } else if r >= 9.0 / 16.0 {
        if r >= 11.0 / 12.0 {
            StrategyId::RepeatedStepFarRight
        } else {
            StrategyId::RepeatedStepRight
        }
    } else if fidelity {
        StrategyId::RepeatedStepImproved
    } else {
        StrategyId::RepeatedStepAdaptive
    };
    Some(id)
}

pub(crate) struct Engine<'c, O, H> {
    pub(crate) cx: &'c Ctx<O, H>,
    pub(crate) sampling: SamplingFlag,
    pub(crate) fidelity: bool,
    pub(crate) rng: ChaCha8Rng,
    depth: usize,
}

impl<'c, O, H: Hooks> Engine<'c, O, H> {
    pub(crate) fn new(cx: &'c Ctx<O, H>, opts: &SelectOptions) -> Self {
        Engine {
            cx,
            sampling: SamplingFlag::new(opts.sampling),
            fidelity: opts.fidelity,
            rng: ChaCha8Rng::seed_from_u64(opts.seed.unwrap_or(DEFAULT_SEED)),
            depth: 0,
        }
    }

    /// Nested search on a window, one level deeper.
    pub(crate) fn recurse<T>(&mut self, id: StrategyId, v: &mut [T], k: usize)
    where
        O: Order<T>,
    {
        self.depth += 1;
        self.cx.hooks.entered(self.depth);
        self.run(Some(id), v, k);
        self.depth -= 1;
    }

    /// Narrows `v` until the pivot lands on `k`. `fixed = None` picks the
    /// strategy per step.
    pub(crate) fn run<T>(&mut self, fixed: Option<StrategyId>, mut v: &mut [T], mut k: usize)
    where
        O: Order<T>,
    {
        loop {
            let n = v.len();
            let id = match fixed {
                Some(id) => Some(id),
                None => dispatch(n, k, self.fidelity),
            };
            let p = match id {
                Some(id) => self.partition(id, v, k),
                None => hoare_partition(v, n / 2, self.cx),
            };
            self.cx.hooks.partitioned(id, n, k, p, self.depth);
            // a step whose nested search already cleared the flag is not checked
            if let Some(id) = id {
                if self.sampling.is_on() && id.samples() && misses_guarantee(id, n, k, p, self.fidelity) {
                    self.cx.hooks.guarantee_missed();
                    self.sampling.clear();
                }
            }
            let whole = v;
            if p == k {
                return;
            } else if p > k {
                v = &mut whole[..p];
            } else {
                v = &mut whole[p + 1..];
                k -= p + 1;
            }
        }
    }
}

fn check_index(len: usize, k: usize) -> Result<(), SelectError> {
    if len == 0 {
        Err(SelectError::Empty)
    } else if k >= len {
        Err(SelectError::OutOfRange { k, len })
    } else {
        Ok(())
    }
}

/// Rearranges `v` so that `v[k]` holds the element of rank `k`, everything
/// before it is `<=` and everything after it is `>=`, with a caller-supplied
/// context (order plus instrumentation hooks).
pub fn select_with<T, O: Order<T>, H: Hooks>(
    v: &mut [T],
    k: usize,
    cx: &Ctx<O, H>,
    opts: &SelectOptions,
) -> Result<(), SelectError> {
    check_index(v.len(), k)?;
    Engine::new(cx, opts).run(opts.strategy, v, k);
    Ok(())
}

/// Adaptive selection with default options unless overridden.
pub fn quickselect_adaptive<T, O: Order<T>>(
    v: &mut [T],
    k: usize,
    order: O,
    opts: &SelectOptions,
) -> Result<(), SelectError> {
    select_with(v, k, &Ctx::new(order), &SelectOptions { strategy: None, ..*opts })
}

/// Selection with one fixed strategy, sampling on.
pub fn quickselect<T, O: Order<T>>(id: StrategyId, v: &mut [T], k: usize, order: O) -> Result<(), SelectError> {
    select_with(v, k, &Ctx::new(order), &SelectOptions::with_strategy(id))
}

/// Partitions `v` around its `k`-th smallest element under `order` and
/// returns it.
pub fn select_kth<T, O: Order<T>>(v: &mut [T], k: usize, order: O) -> Result<&T, SelectError> {
    select_with(v, k, &Ctx::new(order), &SelectOptions::default())?;
    Ok(&v[k])
}

/// [`select_kth`] under the natural order.
pub fn select_nth<T: PartialOrd>(v: &mut [T], k: usize) -> Result<&T, SelectError> {
    select_kth(v, k, Natural)
}

/// Runs one selection and reports its operation counts.
pub fn run_stats<T, O: Order<T>>(
    v: &mut [T],
    k: usize,
    order: O,
    opts: &SelectOptions,
) -> Result<OpCounters, SelectError> {
    let rec = Recorder::new();
    let cx = Ctx::with_hooks(Counting::new(order, &rec), &rec);
    select_with(v, k, &cx, opts)?;
    Ok(rec.snapshot())
}
