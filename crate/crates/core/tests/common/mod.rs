#![allow(dead_code)]

use std::cell::RefCell;

use fastselect::{Hooks, StrategyId};

/// All permutations of `0..n`, lexicographic.
pub fn permutations(n: usize) -> Vec<Vec<u32>> {
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

/// Checks `v[..k] <= v[k] <= v[k+1..]` and that `v[k]` equals the sorted
/// copy's element at `k`.
pub fn assert_selected<T: PartialOrd + Copy + std::fmt::Debug>(orig: &[T], v: &[T], k: usize) {
    let mut sorted = orig.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(v[k], sorted[k], "wrong element at k = {k} (n = {})", v.len());
    assert!(v[..k].iter().all(|x| *x <= v[k]), "left side exceeds pivot");
    assert!(v[k + 1..].iter().all(|x| *x >= v[k]), "right side below pivot");
    let mut got = v.to_vec();
    got.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(got, sorted, "not a permutation of the input");
}

/// Tiny deterministic generator so tests need no RNG dependency.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }

    pub fn shuffled(&mut self, n: usize) -> Vec<u32> {
        let mut v: Vec<u32> = (0..n as u32).collect();
        for i in (1..n).rev() {
            v.swap(i, self.below(i + 1));
        }
        v
    }
}

/// Records every finished partition step.
#[derive(Default)]
pub struct Trace(pub RefCell<Vec<Step>>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub strategy: Option<StrategyId>,
    pub len: usize,
    pub k: usize,
    pub pivot: usize,
    pub depth: usize,
}

impl Hooks for Trace {
    fn partitioned(&self, strategy: Option<StrategyId>, len: usize, k: usize, pivot: usize, depth: usize) {
        self.0.borrow_mut().push(Step { strategy, len, k, pivot, depth });
    }
}

impl Trace {
    /// The first step of the top-level search.
    pub fn first_top(&self) -> Step {
        *self.0.borrow().iter().find(|s| s.depth == 0).expect("no top-level step")
    }
}
