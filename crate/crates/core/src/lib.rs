//! In-place selection: rearrange a slice so that position `k` holds the
//! element of rank `k`, with smaller-or-equal elements before it and
//! greater-or-equal elements after it.
//!
//! The default entry point, [`select_kth`], picks a median-of-medians style
//! pivot strategy per partition step according to where `k` sits in the
//! current slice, estimates pivots from a sample while that keeps working,
//! and falls back to the full guaranteed-quality construction otherwise.
//! Worst-case time is linear.
//!
//! ```
//! let mut v = vec![9, 1, 8, 2, 7, 3, 6, 4, 5];
//! assert_eq!(*fastselect::select_nth(&mut v, 4).unwrap(), 5);
//! assert!(v[..4].iter().all(|&x| x <= 5));
//! ```
//!
//! Individual strategies, the partition primitives and operation counters
//! are exposed for experimentation.

mod engine;
mod error;
pub mod instrument;
pub mod order;
pub mod primitives;
pub mod strategy;

pub use engine::{
    dispatch, quickselect, quickselect_adaptive, run_stats, select_kth, select_nth, select_with, SelectOptions,
};
pub use error::SelectError;
pub use instrument::{Counting, Hooks, OpCounters, Recorder};
pub use order::{ByLe, Natural, Order, Reverse};
pub use primitives::Ctx;
pub use strategy::{
    guaranteed_margins, quality_check, recursion_window, Fraction, MarginGuarantee, Margins, SamplingFlag, StrategyId,
    Window,
};
