//! Expected comparison counts of dual-pivot quicksort: partitioning costs,
//! the recurrence for the total cost, its closed forms, the classical
//! single-pivot baseline and the asymptotic expansions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{binomial, harmonic, integer, ratio, HarmonicKind, Rational};
use crate::expansion::{AsymptoticExpansion, SortingCostConstants};
use crate::optimality::{forward_costs, CountState};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Count,
    Clairvoyant,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Count, Variant::Clairvoyant];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Count => "count",
            Variant::Clairvoyant => "clairvoyant",
        }
    }

    pub fn partition_cost(self, n: u64) -> Result<Rational> {
        match self {
            Variant::Count => partition_cost_count(n),
            Variant::Clairvoyant => partition_cost_clairvoyant(n),
        }
    }

    pub fn total_cost_closed(self, n: u64) -> Result<Rational> {
        match self {
            Variant::Count => total_cost_count_closed(n),
            Variant::Clairvoyant => total_cost_clairvoyant_closed(n),
        }
    }

    pub fn constants(self) -> SortingCostConstants {
        match self {
            Variant::Count => SortingCostConstants::count(),
            Variant::Clairvoyant => SortingCostConstants::clairvoyant(),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "count" => Ok(Variant::Count),
            "clairvoyant" => Ok(Variant::Clairvoyant),
            other => Err(format!("unknown variant {other:?}")),
        }
    }
}

fn check_n(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::SizeTooSmall {
            what: "input size",
            n,
            min: 2,
        });
    }
    Ok(())
}

fn pairs(n: u64) -> BigInt {
    binomial(n, 2)
}

/// `P{M = m}` for the number `M` of medium elements.
pub fn pivot_class_pmf(n: u64, m: u64) -> Result<Rational> {
    check_n(n)?;
    if m > n - 2 {
        return Ok(Rational::zero());
    }
    Ok(Rational::new(BigInt::from(n - m - 1), pairs(n)))
}

/// `E[M]`, summed from the distribution.
pub fn expected_m(n: u64) -> Result<Rational> {
    check_n(n)?;
    (0..=n - 2).try_fold(Rational::zero(), |acc, m| {
        Ok(acc + pivot_class_pmf(n, m)? * integer(m))
    })
}

/// `E|L - S|`, summed directly over all `(s, m, l)` with `s + m + l = n - 2`.
pub fn expected_abs_l_minus_s(n: u64) -> Result<Rational> {
    check_n(n)?;
    let k = n - 2;
    let total: u64 = (0..=k)
        .flat_map(|s| (0..=k - s).map(move |l| s.abs_diff(l)))
        .sum();
    Ok(Rational::new(total.into(), pairs(n)))
}

/// `E[Z^up_{n-2-M}]`: expected up-from-zero situations of the reduced walk.
pub fn expected_upzero_mixture(n: u64) -> Result<Rational> {
    check_n(n)?;
    let sum = (0..=n - 2).fold(Rational::zero(), |acc, m| {
        acc + integer(m + 1) * harmonic(HarmonicKind::Odd, m)
    });
    Ok(sum / Rational::from_integer(2 * pairs(n)))
}

/// Expected partitioning cost of Count.
pub fn partition_cost_count(n: u64) -> Result<Rational> {
    check_n(n)?;
    let nn = integer(n);
    let odd = n % 2 == 1;
    let mut p = ratio(3, 2) * &nn + harmonic(HarmonicKind::Odd, n) / integer(2) - ratio(19, 8);
    if odd {
        p -= ratio(3, 8) / &nn;
    } else {
        p -= Rational::one() / (integer(8) * integer(n - 1));
    }
    Ok(p)
}

/// Expected partitioning cost of Clairvoyant.
pub fn partition_cost_clairvoyant(n: u64) -> Result<Rational> {
    check_n(n)?;
    let nn = integer(n);
    let odd = n % 2 == 1;
    let mut p = ratio(3, 2) * &nn - harmonic(HarmonicKind::Odd, n) / integer(2) - ratio(13, 8);
    if odd {
        p += ratio(3, 8) / &nn;
    } else {
        p += Rational::one() / (integer(8) * integer(n - 1));
    }
    Ok(p)
}

/// `1 + (3/2)(n-2) + E[M]/2 + E[Z^up_{n-2-M}] - E|L-S|/2`.
pub fn partition_cost_decomposed(n: u64) -> Result<Rational> {
    check_n(n)?;
    Ok(Rational::one()
        + ratio(3, 2) * integer(n - 2)
        + expected_m(n)? / integer(2)
        + expected_upzero_mixture(n)?
        - expected_abs_l_minus_s(n)? / integer(2))
}

/// Clairvoyant's partitioning cost for every `2 <= n <= n_max` without the
/// closed form: necessary comparisons plus the expected number of wrong
/// first comparisons.
///
/// The remaining-counts rule is evaluated on the reversed class sequence,
/// which has the same law. With counts `(s, m, l)` before the current
/// element of the reversed sequence, the oracle errs on a large element iff
/// `l + 1 <= s` and on a small one iff `l >= s + 2`.
pub fn partition_costs_clairvoyant_by_states(n_max: u64) -> Vec<Rational> {
    let wrong = |c: &CountState| -> Result<u64> {
        Ok(if c.l < c.s {
            c.l + 1
        } else if c.l >= c.s + 2 {
            c.s + 1
        } else {
            0
        })
    };
    let additional = forward_costs(n_max, wrong).expect("weight is infallible");
    additional
        .into_iter()
        .enumerate()
        .map(|(n, a)| {
            let n = n as u64;
            if n < 2 {
                Rational::zero()
            } else {
                integer(n - 1) + ratio(n as i64 - 2, 3) + a
            }
        })
        .collect()
}

/// Exact expected partitioning and total costs for `0 <= n <= n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostTable {
    pub n_max: u64,
    /// `E[P_n]`; entries for `n < 2` are zero.
    pub partition: Vec<Rational>,
    /// `E[C_n]`
    pub total: Vec<Rational>,
}

/// Solves `E[C_n] = E[P_n] + 3/C(n,2) * sum_{k=1}^{n-2} (n-1-k) E[C_k]`
/// bottom-up. The sum equals `(n-1) S0 - S1` with the running sums
/// `S0 = sum E[C_k]` and `S1 = sum k E[C_k]`.
pub fn solve_recurrence<F>(partition: F, n_max: u64) -> Result<CostTable>
where
    F: Fn(u64) -> Result<Rational>,
{
    let len = n_max as usize + 1;
    let mut table = CostTable {
        n_max,
        partition: vec![Rational::zero(); len],
        total: vec![Rational::zero(); len],
    };
    let mut s0 = Rational::zero();
    let mut s1 = Rational::zero();
    for n in 2..=n_max {
        if n >= 3 {
            let k = n - 2;
            let c = &table.total[k as usize];
            s0 += c;
            s1 += c * integer(k);
        }
        let p = partition(n)?;
        let weighted = integer(n - 1) * &s0 - &s1;
        let c = &p + Rational::new(BigInt::from(3), pairs(n)) * weighted;
        table.partition[n as usize] = p;
        table.total[n as usize] = c;
    }
    Ok(table)
}

fn small_total(variant: Variant, n: u64) -> Result<Rational> {
    Ok(solve_recurrence(|k| variant.partition_cost(k), n)?.total[n as usize].clone())
}

fn parity_tail(n: u64) -> Rational {
    let nn = n as i64;
    if n.is_multiple_of(2) {
        -(ratio(1, nn - 3) + ratio(3, nn - 1)) / integer(320)
    } else {
        (ratio(3, nn - 2) + ratio(1, nn)) / integer(320)
    }
}

fn sign(n: u64) -> Rational {
    if n.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Expected total comparisons of Count; the closed form holds for `n >= 4`,
/// smaller sizes come from the recurrence.
pub fn total_cost_count_closed(n: u64) -> Result<Rational> {
    if n < 4 {
        return small_total(Variant::Count, n);
    }
    let nn = integer(n);
    let h = harmonic(HarmonicKind::Plain, n);
    let alt = harmonic(HarmonicKind::Alternating, n);
    Ok(
        ratio(9, 5) * &nn * &h - ratio(1, 5) * &nn * &alt - ratio(89, 25) * &nn
            + ratio(67, 40) * &h
            - ratio(3, 40) * &alt
            - ratio(83, 800)
            + sign(n) / integer(10)
            + parity_tail(n),
    )
}

/// Expected total comparisons of Clairvoyant; closed form for `n >= 4`.
pub fn total_cost_clairvoyant_closed(n: u64) -> Result<Rational> {
    if n < 4 {
        return small_total(Variant::Clairvoyant, n);
    }
    let nn = integer(n);
    let h = harmonic(HarmonicKind::Plain, n);
    let alt = harmonic(HarmonicKind::Alternating, n);
    Ok(
        ratio(9, 5) * &nn * &h + ratio(1, 5) * &nn * &alt - ratio(89, 25) * &nn
            + ratio(77, 40) * &h
            + ratio(3, 40) * &alt
            + ratio(67, 800)
            - sign(n) / integer(10)
            - parity_tail(n),
    )
}

/// Classical single-pivot quicksort: `2(n+1) H_n - 4n`.
pub fn classic_cost(n: u64) -> Rational {
    integer(2 * (n + 1)) * harmonic(HarmonicKind::Plain, n) - integer(4 * n)
}

pub fn asymptotic_expansion(variant: Variant) -> AsymptoticExpansion {
    AsymptoticExpansion::sorting_cost(&variant.constants())
}

/// The expansion of the expected total cost, without its `O(1/n^4)` error.
pub fn asymptotic_total(variant: Variant, n: u64) -> f64 {
    asymptotic_expansion(variant).eval_f64(n)
}

/// `n!` times `E[C_n]` is an integer, since it sums the comparison counts
/// of all `n!` inputs.
pub fn scaled_by_factorial_is_integer(value: &Rational, n: u64) -> bool {
    (value * Rational::from_integer(crate::exact::factorial(n))).is_integer()
}
