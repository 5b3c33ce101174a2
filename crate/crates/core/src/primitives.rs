//! Fixed-size median networks and the two partition workhorses.
//!
//! Every routine works in place on a slice through a [`Ctx`], which supplies
//! the ordering and receives a callback per swap. Strict comparisons are
//! derived from the non-strict order, so equal elements are never swapped by
//! the networks.

use crate::instrument::Hooks;
use crate::order::Order;

/// Ordering plus event hooks, shared by all routines of one run.
#[derive(Clone, Copy, Debug, Default)]
pub struct Ctx<O, H = ()> {
    pub order: O,
    pub hooks: H,
}

impl<O> Ctx<O, ()> {
    pub fn new(order: O) -> Self {
        Ctx { order, hooks: () }
    }
}

impl<O, H: Hooks> Ctx<O, H> {
    pub fn with_hooks(order: O, hooks: H) -> Self {
        Ctx { order, hooks }
    }

    #[inline]
    pub fn lt<T>(&self, x: &T, y: &T) -> bool
    where
        O: Order<T>,
    {
        self.order.lt(x, y)
    }

    #[inline]
    pub fn swap<T>(&self, v: &mut [T], i: usize, j: usize) {
        self.hooks.swapped();
        v.swap(i, j);
    }

    #[inline]
    pub(crate) fn less<T>(&self, dir: Dir, v: &[T], i: usize, j: usize) -> bool
    where
        O: Order<T>,
    {
        match dir {
            Dir::Fwd => self.order.lt(&v[i], &v[j]),
            Dir::Rev => self.order.lt(&v[j], &v[i]),
        }
    }
}

/// Reading direction of the order. `Rev` runs a routine under the converse
/// order, which is how the right-leaning strategies mirror the left ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Dir {
    Fwd,
    Rev,
}

#[inline]
fn check_distinct(len: usize, idx: &[usize]) {
    if cfg!(debug_assertions) {
        for (n, &i) in idx.iter().enumerate() {
            assert!(i < len, "index {i} out of range for length {len}");
            assert!(!idx[..n].contains(&i), "indexes must be distinct: {idx:?}");
        }
    }
}

/// Sorts `v[a] <= v[b] <= v[c]` using at most 3 comparisons and 2 swaps.
#[inline]
pub fn median3<T, O: Order<T>, H: Hooks>(v: &mut [T], a: usize, b: usize, c: usize, cx: &Ctx<O, H>) {
    median3_dir(v, a, b, c, Dir::Fwd, cx)
}

pub(crate) fn median3_dir<T, O: Order<T>, H: Hooks>(
    v: &mut [T],
    a: usize,
    b: usize,
    c: usize,
    dir: Dir,
    cx: &Ctx<O, H>,
) {
    check_distinct(v.len(), &[a, b, c]);
    if cx.less(dir, v, c, a) {
        if cx.less(dir, v, b, c) {
            // b < c < a
            cx.swap(v, a, b);
            cx.swap(v, b, c);
        } else if cx.less(dir, v, b, a) {
            // c <= b < a
            cx.swap(v, a, c);
        } else {
            // c < a <= b
            cx.swap(v, a, c);
            cx.swap(v, b, c);
        }
    } else if cx.less(dir, v, b, a) {
        cx.swap(v, a, b);
    } else if cx.less(dir, v, c, b) {
        cx.swap(v, b, c);
    }
}

/// Puts the median of the five slots in `v[c]`, the two smaller values in
/// `v[a]`, `v[b]` and the two larger in `v[d]`, `v[e]`.
///
/// Always 6 comparisons, at most 7 swaps, and no swaps at all when the slots
/// are already arranged that way.
pub fn median5<T, O: Order<T>, H: Hooks>(
    v: &mut [T],
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    e: usize,
    cx: &Ctx<O, H>,
) {
    check_distinct(v.len(), &[a, b, c, d, e]);
    if cx.lt(&v[c], &v[a]) {
        cx.swap(v, a, c);
    }
    if cx.lt(&v[d], &v[b]) {
        cx.swap(v, b, d);
    }
    if cx.lt(&v[d], &v[c]) {
        cx.swap(v, c, d);
        cx.swap(v, a, b);
    }
    if cx.lt(&v[e], &v[b]) {
        cx.swap(v, b, e);
    }
    if cx.lt(&v[e], &v[c]) {
        cx.swap(v, c, e);
        // the median is now the larger of v[a] and v[c]
        if cx.lt(&v[c], &v[a]) {
            cx.swap(v, a, c);
        }
    } else if cx.lt(&v[c], &v[b]) {
        cx.swap(v, b, c);
    }
}

/// Puts the minimum of the four slots in `v[a]` and the lower median in
/// `v[b]`. Exactly 4 comparisons, at most 4 swaps.
#[inline]
pub fn lower_median4<T, O: Order<T>, H: Hooks>(
    v: &mut [T],
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    cx: &Ctx<O, H>,
) {
    lower_median4_dir(v, a, b, c, d, Dir::Fwd, cx)
}

/// Mirror of [`lower_median4`]: the maximum lands in `v[d]`, the upper
/// median in `v[c]`.
#[inline]
pub fn upper_median4<T, O: Order<T>, H: Hooks>(
    v: &mut [T],
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    cx: &Ctx<O, H>,
) {
    lower_median4_dir(v, d, c, b, a, Dir::Rev, cx)
}

pub(crate) fn lower_median4_dir<T, O: Order<T>, H: Hooks>(
    v: &mut [T],
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    dir: Dir,
    cx: &Ctx<O, H>,
) {
    check_distinct(v.len(), &[a, b, c, d]);
    if cx.less(dir, v, b, a) {
        cx.swap(v, a, b);
    }
    if cx.less(dir, v, d, c) {
        cx.swap(v, c, d);
    }
    // now v[a] <= v[b] and v[c] <= v[d]
    if cx.less(dir, v, c, a) {
        // v[c] is the minimum; the runner-up is min(v[a], v[d])
        if cx.less(dir, v, d, a) {
            cx.swap(v, a, c);
            cx.swap(v, b, d);
        } else {
            cx.swap(v, a, c);
            cx.swap(v, b, c);
        }
    } else if cx.less(dir, v, c, b) {
        cx.swap(v, b, c);
    }
}

/// Partitions `v` around the element initially at `p` and returns its final
/// position.
///
/// Afterwards every element left of the returned index is `<=` the pivot and
/// every element right of it is `>=`. Elements equal to the pivot stop both
/// scans, which keeps runs of equal values balanced.
pub fn hoare_partition<T, O: Order<T>, H: Hooks>(v: &mut [T], p: usize, cx: &Ctx<O, H>) -> usize {
    assert!(p < v.len(), "pivot {p} out of range for length {}", v.len());
    cx.swap(v, p, 0);
    let mut a = 1;
    let mut b = v.len() - 1;
    'outer: loop {
        loop {
            if a > b {
                break 'outer;
            }
            if !cx.lt(&v[a], &v[0]) {
                break;
            }
            a += 1;
        }
        // v[0] itself stops this scan, so `b` never underflows
        while cx.lt(&v[0], &v[b]) {
            b -= 1;
        }
        if a >= b {
            break;
        }
        cx.swap(v, a, b);
        a += 1;
        b -= 1;
    }
    cx.swap(v, 0, a - 1);
    a - 1
}

/// Extends a partition of the interior window `v[lo..=hi]` (pivot at `p`) to
/// the whole slice and returns the pivot's final position.
///
/// Requires `v[lo..p] <= v[p] <= v[p+1..=hi]`. Misfits from the left and
/// right outer ranges are first exchanged pairwise, one swap settling two
/// elements. Whatever remains on one side is then moved across the pivot,
/// which shifts toward that side. The window itself is never compared.
pub fn expand_partition<T, O: Order<T>, H: Hooks>(
    v: &mut [T],
    lo: usize,
    p: usize,
    hi: usize,
    cx: &Ctx<O, H>,
) -> usize {
    let n = v.len();
    assert!(lo <= p && p <= hi && hi < n, "bad window {lo}..={hi} around {p} (len {n})");
    if cfg!(debug_assertions) {
        let (pv, o) = (&v[p], &cx.order);
        assert!(v[lo..p].iter().all(|x| o.le_unobserved(x, pv)), "window left of pivot not partitioned");
        assert!(v[p + 1..=hi].iter().all(|x| o.le_unobserved(pv, x)), "window right of pivot not partitioned");
    }

    let mut i = 0;
    let mut j = n - 1;
    loop {
        while i < lo && !cx.lt(&v[p], &v[i]) {
            i += 1;
        }
        if i == lo {
            break;
        }
        while j > hi && !cx.lt(&v[j], &v[p]) {
            j -= 1;
        }
        if j == hi {
            break;
        }
        cx.swap(v, i, j);
        i += 1;
        j -= 1;
    }

    let mut q = p;
    if i == lo {
        // left side clean; move right misfits in v[hi+1..=j] across the pivot
        for x in hi + 1..=j {
            if cx.lt(&v[x], &v[p]) {
                q += 1;
                if q != x {
                    cx.swap(v, q, x);
                }
            }
        }
    } else {
        for x in (i..lo).rev() {
            if cx.lt(&v[p], &v[x]) {
                q -= 1;
                if q != x {
                    cx.swap(v, q, x);
                }
            }
        }
    }
    if q != p {
        cx.swap(v, p, q);
    }
    q
}
