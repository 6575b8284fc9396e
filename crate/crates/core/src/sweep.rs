//! Exhaustive sweeps over all `n!` input orders.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::classify::{
    classify_sequence, Clairvoyant, ClassSequence, ClassSymbol, ComparisonTally, Count,
};
use crate::exact::{factorial, Rational};
use crate::sort::{abstract_sort_tally, Algorithm};
use crate::{Error, Result};

pub const MAX_SWEEP_N: u64 = 10;

/// Summed tallies over every permutation of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepResult {
    pub n: u64,
    pub permutations: u64,
    pub sum: ComparisonTally,
}

impl SweepResult {
    /// Exact mean total comparison count.
    pub fn average(&self) -> Rational {
        Rational::new(
            BigInt::from(self.sum.total()),
            BigInt::from(self.permutations),
        )
    }
}

/// Rearranges `v` into the next permutation in lexicographic order; returns
/// `false` (leaving `v` sorted ascending) after the last one.
fn next_permutation(v: &mut [u32]) -> bool {
    let Some(pivot) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        v.reverse();
        return false;
    };
    let successor = v
        .iter()
        .rposition(|&x| x > v[pivot])
        .expect("exists by choice of pivot");
    v.swap(pivot, successor);
    v[pivot + 1..].reverse();
    true
}

/// Folds `per_input` over all permutations of `0..n`, fanning out on the
/// first element.
fn sweep_with<F>(n: u64, per_input: F) -> Result<SweepResult>
where
    F: Fn(&[u32]) -> Result<ComparisonTally> + Sync,
{
    if n > MAX_SWEEP_N {
        return Err(Error::SizeTooLarge {
            what: "permutation sweep",
            n,
            max: MAX_SWEEP_N,
        });
    }
    let n_us = n as usize;
    let firsts: Vec<u32> = if n == 0 {
        vec![]
    } else {
        (0..n as u32).collect()
    };
    let sum = firsts
        .into_par_iter()
        .map(|first| {
            let mut rest: Vec<u32> = (0..n as u32).filter(|&x| x != first).collect();
            let mut input = Vec::with_capacity(n_us);
            let mut acc = ComparisonTally::default();
            loop {
                input.clear();
                input.push(first);
                input.extend_from_slice(&rest);
                acc += per_input(&input)?;
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            Ok(acc)
        })
        .try_reduce(ComparisonTally::default, |a, b| Ok(a + b))?;
    let permutations = if n == 0 {
        1
    } else {
        u64::try_from(factorial(n)).expect("small factorial")
    };
    Ok(SweepResult {
        n,
        permutations,
        sum,
    })
}

/// Runs the in-place `algorithm` on every permutation of `0..n`.
pub fn permutation_sweep(n: u64, algorithm: Algorithm) -> Result<SweepResult> {
    sweep_with(n, |input| {
        let mut data = input.to_vec();
        let tally = algorithm.sort(&mut data);
        debug_assert!(data.windows(2).all(|w| w[0] < w[1]));
        Ok(tally)
    })
}

/// As [`permutation_sweep`] but through the classification-layer model.
pub fn abstract_sweep(n: u64, algorithm: Algorithm) -> Result<SweepResult> {
    sweep_with(n, |input| abstract_sort_tally(input, algorithm))
}

/// Cost of the first partitioning step only (pivot comparison plus
/// classification of the `n - 2` middle keys), summed over all permutations.
pub fn partition_sweep(n: u64, algorithm: Algorithm) -> Result<SweepResult> {
    if n < 2 {
        return Err(Error::SizeTooSmall {
            what: "partition sweep",
            n,
            min: 2,
        });
    }
    sweep_with(n, |input| {
        let last = input.len() - 1;
        let (p, q) = (input[0].min(input[last]), input[0].max(input[last]));
        let classes = ClassSequence(
            input[1..last]
                .iter()
                .map(|&x| {
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
        let mut tally = match algorithm {
            Algorithm::Count => classify_sequence(&Count, &classes)?,
            Algorithm::Clairvoyant => {
                classify_sequence(&Clairvoyant::for_sequence(&classes), &classes)?
            }
            Algorithm::Classic => ComparisonTally {
                necessary: input.len() as u64 - 2,
                ..Default::default()
            },
        };
        tally.pivot_pivot += 1;
        Ok(tally)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn permutations_are_complete() {
        let mut v = vec![0, 1, 2, 3];
        let mut seen = std::collections::BTreeSet::new();
        loop {
            seen.insert(v.clone());
            if !next_permutation(&mut v) {
                break;
            }
        }
        assert_eq!(seen.len(), 24);
        assert_eq!(v, vec![0, 1, 2, 3]);
    }

    #[test]
    fn degenerate_sizes() {
        assert_eq!(
            permutation_sweep(0, Algorithm::Count).unwrap().average(),
            ratio(0, 1)
        );
        assert_eq!(
            permutation_sweep(1, Algorithm::Count).unwrap().average(),
            ratio(0, 1)
        );
        assert_eq!(
            permutation_sweep(2, Algorithm::Classic).unwrap().average(),
            ratio(1, 1)
        );
        assert!(permutation_sweep(11, Algorithm::Count).is_err());
        assert!(partition_sweep(1, Algorithm::Count).is_err());
    }

    #[test]
    fn small_averages() {
        assert_eq!(
            permutation_sweep(4, Algorithm::Count).unwrap().average(),
            ratio(19, 4)
        );
        assert_eq!(
            permutation_sweep(3, Algorithm::Clairvoyant)
                .unwrap()
                .average(),
            ratio(7, 3)
        );
        assert_eq!(
            permutation_sweep(3, Algorithm::Classic).unwrap().average(),
            ratio(8, 3)
        );
        assert_eq!(
            permutation_sweep(4, Algorithm::Classic).unwrap().average(),
            ratio(29, 6)
        );
        assert_eq!(
            partition_sweep(3, Algorithm::Count).unwrap().average(),
            ratio(8, 3)
        );
        assert_eq!(
            partition_sweep(3, Algorithm::Clairvoyant)
                .unwrap()
                .average(),
            ratio(7, 3)
        );
        assert_eq!(
            partition_sweep(4, Algorithm::Count).unwrap().average(),
            ratio(17, 4)
        );
    }
}
