//! Operation counting.
//!
//! Counters are owned by the caller and threaded through a run; nothing here
//! is global, so concurrent runs with their own [`Recorder`] never interfere.

use std::cell::Cell;

use crate::order::Order;
use crate::strategy::StrategyId;

/// Final tallies of one selection run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpCounters {
    pub comparisons: u64,
    pub swaps: u64,
    /// Sampled partition steps whose pivot fell short of the strategy's
    /// non-sampling margin guarantee. Sampling stops at the first one, so a
    /// search records at most one.
    pub guarantee_misses: u64,
    /// Deepest nesting of quickselect calls (the top-level search is depth 0).
    pub max_recursion_depth: u64,
}

/// Event sink invoked by the algorithms. The unit type ignores everything.
pub trait Hooks {
    #[inline]
    fn swapped(&self) {}
    #[inline]
    fn guarantee_missed(&self) {}
    #[inline]
    fn entered(&self, _depth: usize) {}
    /// One partition step finished: `strategy` (`None` for the direct
    /// partition of a short slice) placed the pivot of a slice of length
    /// `len`, searched for index `k`, at index `pivot`.
    #[inline]
    fn partitioned(&self, _strategy: Option<StrategyId>, _len: usize, _k: usize, _pivot: usize, _depth: usize) {}
}

impl Hooks for () {}

impl<H: Hooks + ?Sized> Hooks for &H {
    #[inline]
    fn swapped(&self) {
        (**self).swapped()
    }
    #[inline]
    fn guarantee_missed(&self) {
        (**self).guarantee_missed()
    }
    #[inline]
    fn entered(&self, depth: usize) {
        (**self).entered(depth)
    }
    #[inline]
    fn partitioned(&self, strategy: Option<StrategyId>, len: usize, k: usize, pivot: usize, depth: usize) {
        (**self).partitioned(strategy, len, k, pivot, depth)
    }
}

/// Mutable counter set for one run.
///
/// Comparisons are fed by [`Counting`], everything else through [`Hooks`].
/// A swap of an element with itself counts as one swap.
#[derive(Debug, Default)]
pub struct Recorder {
    comparisons: Cell<u64>,
    swaps: Cell<u64>,
    misses: Cell<u64>,
    depth: Cell<u64>,
}

impl Recorder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn snapshot(&self) -> OpCounters {
        OpCounters {
            comparisons: self.comparisons.get(),
            swaps: self.swaps.get(),
            guarantee_misses: self.misses.get(),
            max_recursion_depth: self.depth.get(),
        }
    }

    pub fn reset(&self) {
        self.comparisons.set(0);
        self.swaps.set(0);
        self.misses.set(0);
        self.depth.set(0);
    }

    #[inline]
    fn compared(&self) {
        self.comparisons.set(self.comparisons.get() + 1);
    }
}

impl Hooks for Recorder {
    #[inline]
    fn swapped(&self) {
        self.swaps.set(self.swaps.get() + 1);
    }

    #[inline]
    fn guarantee_missed(&self) {
        self.misses.set(self.misses.get() + 1);
    }

    #[inline]
    fn entered(&self, depth: usize) {
        self.depth.set(self.depth.get().max(depth as u64));
    }
}

/// Order decorator that bumps the recorder once per `le` evaluation.
#[derive(Clone, Copy)]
pub struct Counting<'r, O> {
    inner: O,
    recorder: &'r Recorder,
}

impl<'r, O> Counting<'r, O> {
    pub fn new(inner: O, recorder: &'r Recorder) -> Self {
        Counting { inner, recorder }
    }
}

impl<T: ?Sized, O: Order<T>> Order<T> for Counting<'_, O> {
    #[inline]
    fn le(&self, x: &T, y: &T) -> bool {
        self.recorder.compared();
        self.inner.le(x, y)
    }
    #[inline]
    fn le_unobserved(&self, x: &T, y: &T) -> bool {
        self.inner.le_unobserved(x, y)
    }
}
