use num_bigint::BigInt;
use num_traits::Zero;

use super::{path_stats, LatticePath, Step};
use crate::exact::{binomial, Rational};
use crate::{Error, Result};

const MAX_ENUMERATION_LENGTH: u64 = 14;

/// Exact statistics of the two-stage path model obtained by listing all
/// `2^n` step words, each weighted by `1/((n+1) C(n, #down))`.
#[derive(Debug, Clone)]
pub struct PathEnumeration {
    pub n: u64,
    pub expected_zeros: Rational,
    pub expected_up_from_zero: Rational,
    /// `zeros_pmf[r] = P{Z_n = r}`; index 0 is always zero.
    pub zeros_pmf: Vec<Rational>,
    visits: Vec<Vec<Rational>>,
}

impl PathEnumeration {
    /// `P{(t, k) on the path}`.
    pub fn visit_probability(&self, t: u64, k: i64) -> Rational {
        if t > self.n || k.unsigned_abs() > t {
            return Rational::zero();
        }
        self.visits[t as usize][(k + t as i64) as usize].clone()
    }
}

/// Integer tallies grouped by the number of down-steps, before weighting.
struct Tallies {
    zeros: Vec<u64>,
    up_from_zero: Vec<u64>,
    zero_counts: Vec<Vec<u64>>,
    visits: Vec<Vec<Vec<u64>>>,
}

pub fn enumerate_paths(n: u64) -> Result<PathEnumeration> {
    if n > MAX_ENUMERATION_LENGTH {
        return Err(Error::SizeTooLarge {
            what: "path enumeration",
            n,
            max: MAX_ENUMERATION_LENGTH,
        });
    }
    let len = n as usize;
    let mut tallies = Tallies {
        zeros: vec![0; len + 1],
        up_from_zero: vec![0; len + 1],
        zero_counts: vec![vec![0; len + 2]; len + 1],
        visits: (0..=len)
            .map(|_| (0..=len).map(|t| vec![0; 2 * t + 1]).collect())
            .collect(),
    };

    for word in 0u32..(1u32 << n) {
        let steps: Vec<Step> = (0..n)
            .map(|i| {
                if word >> i & 1 == 1 {
                    Step::Down
                } else {
                    Step::Up
                }
            })
            .collect();
        let path = LatticePath::new(steps);
        let downs = path.down_steps();
        let stats = path_stats(&path);
        tallies.zeros[downs] += stats.zeros as u64;
        tallies.up_from_zero[downs] += stats.up_from_zero as u64;
        tallies.zero_counts[downs][stats.zeros] += 1;
        for (t, h) in path.heights().enumerate() {
            tallies.visits[downs][t][(h + t as i64) as usize] += 1;
        }
    }

    let weight = |downs: usize, count: u64| -> Rational {
        Rational::new(
            BigInt::from(count),
            binomial(n, downs as i64) * BigInt::from(n + 1),
        )
    };
    let weighted = |per_downs: &dyn Fn(usize) -> u64| -> Rational {
        (0..=len).map(|downs| weight(downs, per_downs(downs))).sum()
    };

    let zeros_pmf = (0..=len + 1)
        .map(|r| weighted(&|downs| tallies.zero_counts[downs][r]))
        .collect();
    let visits = (0..=len)
        .map(|t| {
            (0..=2 * t)
                .map(|offset| weighted(&|downs| tallies.visits[downs][t][offset]))
                .collect()
        })
        .collect();

    Ok(PathEnumeration {
        n,
        expected_zeros: weighted(&|downs| tallies.zeros[downs]),
        expected_up_from_zero: weighted(&|downs| tallies.up_from_zero[downs]),
        zeros_pmf,
        visits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn length_two_by_hand() {
        // UU, DD weight 1/3; UD, DU weight 1/6.
        let e = enumerate_paths(2).unwrap();
        assert_eq!(e.expected_zeros, ratio(4, 3));
        assert_eq!(e.expected_up_from_zero, ratio(1, 2));
        assert_eq!(e.zeros_pmf[1], ratio(2, 3));
        assert_eq!(e.zeros_pmf[2], ratio(1, 3));
        assert_eq!(e.visit_probability(2, 0), ratio(1, 3));
        assert_eq!(e.visit_probability(1, 1), ratio(1, 2));
    }

    #[test]
    fn rejects_long_paths() {
        assert!(enumerate_paths(15).is_err());
    }
}
