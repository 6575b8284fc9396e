//! In-place dual-pivot quicksort ("Count" and the oracle-driven
//! "Clairvoyant") and classical single-pivot quicksort, with every key
//! comparison counted.
//!
//! The dual-pivot routines keep the index discipline of the reference
//! pseudocode: `i` bounds the small block, `j` scans forward, `k` bounds the
//! large block from the right, and `d` steers which pivot is consulted
//! first. There is no insertion-sort cutoff; recursion goes down to
//! subarrays of length at most one.
//!
//! Repeated keys are allowed. With strict `<`/`>` tests an element equal to
//! a pivot lands in the medium block or in the block of the pivot it equals,
//! which keeps the output sorted; cost formulas only hold for distinct keys.

use std::fmt;
use std::str::FromStr;

use crate::classify::{
    classify_sequence, Clairvoyant, ClassSequence, ClassSymbol, ComparisonTally, Count,
    PartitionStrategy,
};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Count,
    Clairvoyant,
    Classic,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Count, Algorithm::Clairvoyant, Algorithm::Classic];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Count => "count",
            Algorithm::Clairvoyant => "clairvoyant",
            Algorithm::Classic => "classic",
        }
    }

    pub fn sort<T: Ord>(self, data: &mut [T]) -> ComparisonTally {
        match self {
            Algorithm::Count => sort_count(data),
            Algorithm::Clairvoyant => sort_clairvoyant(data),
            Algorithm::Classic => sort_classic(data),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                format!("unknown algorithm `{s}` (expected count, clairvoyant or classic)")
            })
    }
}

/// Counts every element-element comparison it performs.
struct Comparator {
    calls: u64,
}

impl Comparator {
    fn less<T: Ord>(&mut self, a: &T, b: &T) -> bool {
        self.calls += 1;
        a < b
    }

    fn greater<T: Ord>(&mut self, a: &T, b: &T) -> bool {
        self.calls += 1;
        a > b
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PivotSteering {
    /// `d` tracks small minus large seen so far.
    Observed,
    /// `d` starts at small minus large in the whole subarray and tracks what
    /// remains.
    Oracle,
}

/// `tmp <- A[k]; A[k] <- A[j]; A[j] <- A[i]; A[i] <- tmp`
fn rotate3<T>(a: &mut [T], k: usize, j: usize, i: usize) {
    if i == j {
        a.swap(i, k);
    } else {
        a.swap(i, k);
        a.swap(j, k);
    }
}

fn dual_pivot<T: Ord>(
    a: &mut [T],
    left: isize,
    right: isize,
    steering: PivotSteering,
    cmp: &mut Comparator,
    tally: &mut ComparisonTally,
) {
    if right <= left {
        return;
    }
    let (l, r) = (left as usize, right as usize);
    tally.pivot_pivot += 1;
    if cmp.less(&a[r], &a[l]) {
        a.swap(l, r);
    }
    let mut i = l + 1;
    let mut k = r - 1;
    let mut j = i;
    // Uninstrumented pre-pass for the oracle.
    let mut d: isize = match steering {
        PivotSteering::Observed => 0,
        PivotSteering::Oracle => a[l + 1..r]
            .iter()
            .map(|x| {
                if *x < a[l] {
                    1
                } else if *x > a[r] {
                    -1
                } else {
                    0
                }
            })
            .sum(),
    };
    // Sign applied to `d` when a small element is found.
    let small_step: isize = match steering {
        PivotSteering::Observed => 1,
        PivotSteering::Oracle => -1,
    };

    while j <= k {
        if d >= 0 {
            if cmp.less(&a[j], &a[l]) {
                a.swap(i, j);
                i += 1;
                j += 1;
                d += small_step;
                tally.necessary += 1;
            } else if cmp.less(&a[j], &a[r]) {
                j += 1;
                tally.necessary += 2;
            } else {
                a.swap(j, k);
                k -= 1;
                d -= small_step;
                tally.necessary += 1;
                tally.additional += 1;
            }
        } else if cmp.greater(&a[k], &a[r]) {
            k -= 1;
            d -= small_step;
            tally.necessary += 1;
        } else {
            if cmp.less(&a[k], &a[l]) {
                rotate3(a, k, j, i);
                i += 1;
                d += small_step;
                tally.necessary += 1;
                tally.additional += 1;
            } else {
                a.swap(j, k);
                tally.necessary += 2;
            }
            j += 1;
        }
    }
    a.swap(l, i - 1);
    a.swap(r, k + 1);
    let (i, k) = (i as isize, k as isize);
    dual_pivot(a, left, i - 2, steering, cmp, tally);
    dual_pivot(a, i, k, steering, cmp, tally);
    dual_pivot(a, k + 2, right, steering, cmp, tally);
}

fn run_dual_pivot<T: Ord>(data: &mut [T], steering: PivotSteering) -> ComparisonTally {
    let mut cmp = Comparator { calls: 0 };
    let mut tally = ComparisonTally::default();
    dual_pivot(
        data,
        0,
        data.len() as isize - 1,
        steering,
        &mut cmp,
        &mut tally,
    );
    debug_assert_eq!(tally.total(), cmp.calls);
    tally
}

/// Dual-pivot quicksort with the Count classification strategy.
pub fn sort_count<T: Ord>(data: &mut [T]) -> ComparisonTally {
    run_dual_pivot(data, PivotSteering::Observed)
}

/// Dual-pivot quicksort steered by the exact number of small minus large
/// elements of each subarray. That count is obtained with comparisons that
/// are not tallied.
pub fn sort_clairvoyant<T: Ord>(data: &mut [T]) -> ComparisonTally {
    run_dual_pivot(data, PivotSteering::Oracle)
}

/// Single-pivot quicksort with the first element as pivot; `len - 1`
/// comparisons per partitioning step.
pub fn sort_classic<T: Ord>(data: &mut [T]) -> ComparisonTally {
    fn go<T: Ord>(a: &mut [T], cmp: &mut Comparator) {
        if a.len() <= 1 {
            return;
        }
        let mut store = 0;
        for x in 1..a.len() {
            if cmp.less(&a[x], &a[0]) {
                store += 1;
                a.swap(store, x);
            }
        }
        a.swap(0, store);
        let (lower, upper) = a.split_at_mut(store);
        go(lower, cmp);
        go(&mut upper[1..], cmp);
    }
    let mut cmp = Comparator { calls: 0 };
    go(data, &mut cmp);
    ComparisonTally {
        pivot_pivot: 0,
        necessary: cmp.calls,
        additional: 0,
    }
}

/// Comparison count of dual-pivot quicksort simulated at the classification
/// layer: pivots are the first and last keys, the middle keys are classified
/// left to right by `strategy`, and each class recurses in input order.
///
/// Per-input counts can differ from the in-place algorithms (which inspect
/// elements in a different order); averages over all permutations agree.
pub fn abstract_sort_tally<T: Ord + Clone>(
    input: &[T],
    algorithm: Algorithm,
) -> Result<ComparisonTally> {
    let n = input.len();
    if n <= 1 {
        return Ok(ComparisonTally::default());
    }
    if algorithm == Algorithm::Classic {
        let (lower, upper): (Vec<T>, Vec<T>) =
            input[1..].iter().cloned().partition(|x| *x < input[0]);
        let rest =
            abstract_sort_tally(&lower, algorithm)? + abstract_sort_tally(&upper, algorithm)?;
        return Ok(rest
            + ComparisonTally {
                pivot_pivot: 0,
                necessary: n as u64 - 1,
                additional: 0,
            });
    }

    let (p, q) = if input[0] < input[n - 1] {
        (&input[0], &input[n - 1])
    } else {
        (&input[n - 1], &input[0])
    };
    let middle = &input[1..n - 1];
    let classes = ClassSequence(
        middle
            .iter()
            .map(|x| {
                if x < p {
                    ClassSymbol::Small
                } else if x < q {
                    ClassSymbol::Medium
                } else {
                    ClassSymbol::Large
                }
            })
            .collect(),
    );
    let strategy: Box<dyn PartitionStrategy> = match algorithm {
        Algorithm::Clairvoyant => Box::new(Clairvoyant::for_sequence(&classes)),
        _ => Box::new(Count),
    };
    let mut tally = classify_sequence(strategy.as_ref(), &classes)?;
    tally.pivot_pivot += 1;
    for class in ClassSymbol::ALL {
        let part: Vec<T> = middle
            .iter()
            .zip(classes.symbols())
            .filter(|(_, c)| **c == class)
            .map(|(x, _)| x.clone())
            .collect();
        tally += abstract_sort_tally(&part, algorithm)?;
    }
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sorted_copy(v: &[i64]) -> Vec<i64> {
        let mut s = v.to_vec();
        s.sort_unstable();
        s
    }

    #[test]
    fn trivial_inputs() {
        for algorithm in Algorithm::ALL {
            let mut empty: Vec<u8> = vec![];
            assert_eq!(algorithm.sort(&mut empty).total(), 0);
            let mut one = vec![5];
            assert_eq!(algorithm.sort(&mut one).total(), 0);
            let mut two = vec![2, 1];
            assert_eq!(algorithm.sort(&mut two).total(), 1);
            assert_eq!(two, vec![1, 2]);
        }
        assert_eq!(sort_count(&mut [2, 1]).pivot_pivot, 1);
    }

    #[test]
    fn rotate3_matches_comment() {
        let mut a = [10, 11, 12, 13, 14];
        rotate3(&mut a, 4, 2, 1);
        // A[4] <- old A[2]; A[2] <- old A[1]; A[1] <- old A[4]
        assert_eq!(a, [10, 14, 11, 13, 12]);
        let mut b = [1, 2, 3];
        rotate3(&mut b, 2, 1, 1);
        assert_eq!(b, [1, 3, 2]);
        let mut c = [1, 2, 3];
        rotate3(&mut c, 2, 2, 0);
        assert_eq!(c, [3, 2, 1]);
    }

    #[test]
    fn count_tally_by_hand() {
        // Pivots 1 and 5; middle 4 3 2 are all medium: 2 comparisons each.
        let mut v = vec![1, 4, 3, 2, 5];
        let t = sort_count(&mut v);
        assert_eq!(v, vec![1, 2, 3, 4, 5]);
        assert_eq!(t.pivot_pivot, 1 + 1);
        assert_eq!(t.additional, 0);
    }

    #[test]
    fn duplicates_still_sort() {
        let mut v = vec![3, 3, 1, 3, 2, 2, 3, 1, 1, 3];
        for algorithm in Algorithm::ALL {
            let mut w = v.clone();
            algorithm.sort(&mut w);
            assert_eq!(w, sorted_copy(&v));
        }
        let mut same = vec![7; 50];
        sort_count(&mut same);
        assert!(same.iter().all(|&x| x == 7));
        v.reverse();
        sort_clairvoyant(&mut v);
        assert_eq!(v, vec![1, 1, 1, 2, 2, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn abstract_layer_small_cases() {
        assert_eq!(
            abstract_sort_tally(&[1, 2], Algorithm::Count)
                .unwrap()
                .total(),
            1
        );
        // Pivots 1, 3; the middle 2 is medium.
        assert_eq!(
            abstract_sort_tally(&[1, 2, 3], Algorithm::Count)
                .unwrap()
                .total(),
            3
        );
        assert_eq!(
            abstract_sort_tally(&[3, 2, 1], Algorithm::Classic)
                .unwrap()
                .total(),
            3
        );
    }

    proptest! {
        #[test]
        fn every_algorithm_sorts(v in proptest::collection::vec(-1000i64..1000, 0..300)) {
            for algorithm in Algorithm::ALL {
                let mut w = v.clone();
                let tally = algorithm.sort(&mut w);
                prop_assert_eq!(&w, &sorted_copy(&v));
                prop_assert_eq!(tally.total(), tally.pivot_pivot + tally.necessary + tally.additional);
            }
        }

        #[test]
        fn distinct_keys_comparison_bounds(v in proptest::collection::hash_set(0u32..100_000, 1..200)) {
            // No pair is compared twice, and sorting needs at least n - 1.
            let base: Vec<u32> = v.into_iter().collect();
            let n = base.len() as u64;
            for algorithm in Algorithm::ALL {
                let mut w = base.clone();
                let total = algorithm.sort(&mut w).total();
                prop_assert!(w.windows(2).all(|p| p[0] < p[1]));
                prop_assert!(total + 1 >= n && total <= n * (n - 1) / 2, "{} {}", algorithm, total);
            }
        }
    }

    #[test]
    fn large_random_arrays_sort() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut v: Vec<u32> = (0..10_000).collect();
        for algorithm in Algorithm::ALL {
            v.shuffle(&mut rng);
            algorithm.sort(&mut v);
            assert!(v.windows(2).all(|p| p[0] < p[1]), "{algorithm}");
        }
    }
}
