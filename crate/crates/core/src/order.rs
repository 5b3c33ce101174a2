//! Ordering relations used by every selection routine.
//!
//! All algorithms are written against a non-strict order `le(x, y)`. The
//! strict test `x < y` is always derived as `!le(y, x)`, so each strict test
//! costs exactly one evaluation of the underlying relation and every routine
//! is a no-op on runs of equal elements.

/// A non-strict total order over `T`.
///
/// Implementations must be total (`le(x, y) || le(y, x)`) and pure. Floating
/// point values containing NaN do not satisfy this and give unspecified (but
/// memory-safe) results.
pub trait Order<T: ?Sized> {
    fn le(&self, x: &T, y: &T) -> bool;

    /// Strict less-than, derived from `le`.
    #[inline]
    fn lt(&self, x: &T, y: &T) -> bool {
        !self.le(y, x)
    }

    /// Evaluates `le` without notifying any instrumentation layer. Used by
    /// debug-build assertions so they do not show up in operation counts.
    #[doc(hidden)]
    #[inline]
    fn le_unobserved(&self, x: &T, y: &T) -> bool {
        self.le(x, y)
    }
}

impl<T: ?Sized, O: Order<T> + ?Sized> Order<T> for &O {
    #[inline]
    fn le(&self, x: &T, y: &T) -> bool {
        (**self).le(x, y)
    }
    #[inline]
    fn le_unobserved(&self, x: &T, y: &T) -> bool {
        (**self).le_unobserved(x, y)
    }
}

/// The natural `<=` of a `PartialOrd` type.
#[derive(Clone, Copy, Debug, Default)]
pub struct Natural;

impl<T: PartialOrd + ?Sized> Order<T> for Natural {
    #[inline]
    fn le(&self, x: &T, y: &T) -> bool {
        x <= y
    }
}

/// The converse of an order: `le(x, y)` holds iff the inner `le(y, x)` does.
#[derive(Clone, Copy, Debug, Default)]
pub struct Reverse<O>(pub O);

impl<T: ?Sized, O: Order<T>> Order<T> for Reverse<O> {
    #[inline]
    fn le(&self, x: &T, y: &T) -> bool {
        self.0.le(y, x)
    }
    #[inline]
    fn le_unobserved(&self, x: &T, y: &T) -> bool {
        self.0.le_unobserved(y, x)
    }
}

/// Adapts a closure `|x, y| x <= y` into an [`Order`].
#[derive(Clone, Copy)]
pub struct ByLe<F>(pub F);

impl<T: ?Sized, F: Fn(&T, &T) -> bool> Order<T> for ByLe<F> {
    #[inline]
    fn le(&self, x: &T, y: &T) -> bool {
        (self.0)(x, y)
    }
}
