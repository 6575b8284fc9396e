//! Seeded Monte Carlo estimates checked against exact values.
//!
//! Sample `i` draws from its own ChaCha8 stream `i` under the master seed,
//! and observations are accumulated as integer sums, so results do not
//! depend on the number of worker threads.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{total_cost_clairvoyant_closed, total_cost_count_closed};
use crate::exact::Rational;
use crate::paths::{
    expected_up_from_zero, expected_zeros_closed, path_stats, sample_path, zeros_distribution,
};
use crate::sort::Algorithm;
use crate::{Error, Result};

pub const MIN_SAMPLES: u64 = 100;

/// Largest `r` reported by the zero-count distribution target.
pub const DISTRIBUTION_MAX_R: u64 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    SortCount,
    SortClairvoyant,
    /// Zeros and up-from-zero situations of random paths.
    PathZeros,
    /// `P{Z_n = r}` for `r = 1..=DISTRIBUTION_MAX_R`.
    PathDistribution,
}

impl Target {
    pub const ALL: [Target; 4] = [
        Target::SortCount,
        Target::SortClairvoyant,
        Target::PathZeros,
        Target::PathDistribution,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::SortCount => "sort-count",
            Target::SortClairvoyant => "sort-clairvoyant",
            Target::PathZeros => "path-zeros",
            Target::PathDistribution => "path-distribution",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown target {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulationConfig {
    pub n: u64,
    pub samples: u64,
    pub seed: u64,
}

/// Empirical mean of one observable next to its exact expectation.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub quantity: String,
    pub n: u64,
    pub samples: u64,
    pub seed: u64,
    pub mean: f64,
    pub std_error: f64,
    pub reference: Rational,
}

impl Estimate {
    pub fn reference_f64(&self) -> f64 {
        self.reference.to_f64().unwrap_or(f64::NAN)
    }

    /// `(mean - reference)/std_error`; zero when both coincide exactly.
    pub fn z_score(&self) -> f64 {
        let diff = self.mean - self.reference_f64();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }

    pub fn within(&self, standard_errors: f64) -> bool {
        self.z_score().abs() <= standard_errors
    }
}

/// Sums of `x` and `x^2` for each observable.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Moments {
    sum: Vec<u128>,
    sum_sq: Vec<u128>,
}

impl Moments {
    fn zero(k: usize) -> Self {
        Self {
            sum: vec![0; k],
            sum_sq: vec![0; k],
        }
    }

    fn of(observation: &[u64]) -> Self {
        Self {
            sum: observation.iter().map(|&x| x as u128).collect(),
            sum_sq: observation
                .iter()
                .map(|&x| (x as u128) * (x as u128))
                .collect(),
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.sum.iter_mut().zip(&other.sum) {
            *a += b;
        }
        for (a, b) in self.sum_sq.iter_mut().zip(&other.sum_sq) {
            *a += b;
        }
        self
    }

    fn mean_and_error(&self, i: usize, samples: u64) -> (f64, f64) {
        let count = samples as f64;
        let mean = self.sum[i] as f64 / count;
        // n * sum_sq - sum^2 is exact in integers before the division
        let spread = samples as u128 * self.sum_sq[i] - self.sum[i] * self.sum[i];
        let variance = spread as f64 / (count * (count - 1.0));
        (mean, (variance / count).sqrt())
    }
}

fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn observe(target: Target, n: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
    match target {
        Target::SortCount | Target::SortClairvoyant => {
            let algorithm = if target == Target::SortCount {
                Algorithm::Count
            } else {
                Algorithm::Clairvoyant
            };
            let mut data: Vec<u32> = (0..n as u32).collect();
            data.shuffle(rng);
            vec![algorithm.sort(&mut data).total()]
        }
        Target::PathZeros => {
            let stats = path_stats(&sample_path(n as usize, rng));
            vec![stats.zeros as u64, stats.up_from_zero as u64]
        }
        Target::PathDistribution => {
            let zeros = path_stats(&sample_path(n as usize, rng)).zeros as u64;
            (1..=DISTRIBUTION_MAX_R)
                .map(|r| u64::from(zeros == r))
                .collect()
        }
    }
}

fn references(target: Target, n: u64) -> Result<Vec<(String, Rational)>> {
    Ok(match target {
        Target::SortCount => vec![("comparisons_count".into(), total_cost_count_closed(n)?)],
        Target::SortClairvoyant => vec![(
            "comparisons_clairvoyant".into(),
            total_cost_clairvoyant_closed(n)?,
        )],
        Target::PathZeros => vec![
            ("zeros".into(), expected_zeros_closed(n)),
            ("up_from_zero".into(), expected_up_from_zero(n)),
        ],
        Target::PathDistribution => (1..=DISTRIBUTION_MAX_R)
            .map(|r| (format!("p_zeros_eq_{r}"), zeros_distribution(n, r)))
            .collect(),
    })
}

/// Runs `config.samples` independent trials on the current rayon pool.
pub fn simulate(target: Target, config: &SimulationConfig) -> Result<Vec<Estimate>> {
    if config.samples < MIN_SAMPLES {
        return Err(Error::SizeTooSmall {
            what: "samples",
            n: config.samples,
            min: MIN_SAMPLES,
        });
    }
    let refs = references(target, config.n)?;
    let moments = (0..config.samples)
        .into_par_iter()
        .map(|i| Moments::of(&observe(target, config.n, &mut sample_rng(config.seed, i))))
        .reduce(|| Moments::zero(refs.len()), Moments::merge);
    Ok(refs
        .into_iter()
        .enumerate()
        .map(|(i, (quantity, reference))| {
            let (mean, std_error) = moments.mean_and_error(i, config.samples);
            Estimate {
                quantity,
                n: config.n,
                samples: config.samples,
                seed: config.seed,
                mean,
                std_error,
                reference,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_names_round_trip() {
        for t in Target::ALL {
            assert_eq!(t.name().parse::<Target>().unwrap(), t);
        }
        assert!("bogus".parse::<Target>().is_err());
    }

    #[test]
    fn rejects_few_samples() {
        let config = SimulationConfig {
            n: 10,
            samples: 99,
            seed: 1,
        };
        assert!(simulate(Target::PathZeros, &config).is_err());
    }

    #[test]
    fn moments_are_exact() {
        let m = [3u64, 5, 7]
            .iter()
            .map(|&x| Moments::of(&[x]))
            .fold(Moments::zero(1), Moments::merge);
        let (mean, se) = m.mean_and_error(0, 3);
        assert_eq!(mean, 5.0);
        assert!((se - (4.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn deterministic_and_thread_independent() {
        let config = SimulationConfig {
            n: 40,
            samples: 2000,
            seed: 9,
        };
        let a = simulate(Target::PathZeros, &config).unwrap();
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let b = single
            .install(|| simulate(Target::PathZeros, &config))
            .unwrap();
        let multi = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let c = multi
            .install(|| simulate(Target::PathZeros, &config))
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        let other = simulate(Target::PathZeros, &SimulationConfig { seed: 10, ..config }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn small_runs_agree_with_exact_values() {
        for target in Target::ALL {
            let config = SimulationConfig {
                n: 60,
                samples: 4000,
                seed: 2024,
            };
            for e in simulate(target, &config).unwrap() {
                assert!(
                    e.within(4.0),
                    "{target} {}: z = {}",
                    e.quantity,
                    e.z_score()
                );
            }
        }
    }
}
