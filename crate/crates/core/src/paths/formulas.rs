use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{
    binomial, binomial_row, harmonic, integer, iverson, ratio, HarmonicKind, Rational,
};
use crate::{Error, Result};

fn frac(numer: BigInt, denom: BigInt) -> Rational {
    Rational::new(numer, denom)
}

/// `sum over 0 <= k < l < upper of row[k] / row[l]`, using prefix sums of
/// the numerators so only one rational addition happens per `l`.
fn ordered_ratio_sum(row: &[BigInt], upper: usize) -> Rational {
    let mut prefix = BigInt::zero();
    let mut total = Rational::zero();
    for (l, value) in row[..upper].iter().enumerate() {
        if l > 0 {
            total += frac(prefix.clone(), value.clone());
        }
        prefix += value;
    }
    total
}

/// Expected number of zeros as the double sum over binomial quotients.
pub fn expected_zeros_double_sum(n: u64) -> Rational {
    let row = binomial_row(n);
    let half_up = n.div_ceil(2) as usize;
    let scale = ratio(4, n as i64 + 1);
    let mut value = scale * ordered_ratio_sum(&row, half_up) + Rational::one();
    if n.is_multiple_of(2) {
        let central = row[(n / 2) as usize].clone();
        let two_pow = BigInt::one() << n;
        let mu_zero = frac(two_pow, central) - Rational::one();
        value += mu_zero / integer(n + 1);
    }
    value
}

/// `E[Z_n] = H^odd_{n+1}`.
pub fn expected_zeros_closed(n: u64) -> Rational {
    harmonic(HarmonicKind::Odd, n + 1)
}

/// `E[Z^up_n] = H^odd_n / 2`.
pub fn expected_up_from_zero(n: u64) -> Rational {
    harmonic(HarmonicKind::Odd, n) / integer(2)
}

/// Probability that the random path of length `n` passes through `(t, k)`.
pub fn point_probability(n: u64, t: u64, k: i64) -> Result<Rational> {
    if t > n {
        return Err(Error::SizeTooLarge {
            what: "time index",
            n: t,
            max: n,
        });
    }
    let reachable = k.unsigned_abs() <= t && (k - t as i64) % 2 == 0;
    Ok(if reachable {
        ratio(1, t as i64 + 1)
    } else {
        Rational::zero()
    })
}

/// Expected number of zeros, not counting the origin, over the paths ending
/// at `(n, d)`.
pub fn conditional_expected_zeros(n: u64, d: i64) -> Result<Rational> {
    if d.unsigned_abs() > n || (n as i64 - d) % 2 != 0 {
        return Err(Error::InfeasibleEndpoint { n, d });
    }
    let l = (n - d.unsigned_abs()) / 2;
    let below: BigInt = (0..l).map(|k| binomial(n, k as i64)).sum();
    Ok(frac(below * 2, binomial(n, l as i64)))
}

/// `P{Z_n = r}`.
pub fn zeros_distribution(n: u64, r: u64) -> Rational {
    if n == 0 {
        return iverson(r == 1);
    }
    if r == 0 || n + 2 < 2 * r {
        return Rational::zero();
    }
    let half_up = n.div_ceil(2);
    let even = n.is_multiple_of(2);
    let r_i = r as i64;
    let n_plus_1 = integer(n + 1);
    let choose_nr = binomial(n, r_i);
    let two_r = integer(BigInt::one() << r);

    let bracket = ratio(2 * half_up as i64, r_i * (r_i + 1))
        + ratio(r_i - 1, r_i + 1)
        + if even {
            ratio(1, r_i)
        } else {
            Rational::zero()
        };
    let mut value = two_r / &n_plus_1 * frac(binomial(half_up, r_i), choose_nr.clone()) * bracket;
    if even {
        let lead = integer(BigInt::one() << (r - 1)) * integer(r - 1) / (n_plus_1 * integer(r));
        value += lead * frac(binomial(n / 2, r_i - 1), choose_nr);
    }
    value
}

/// The four expressions asserted equal to `E[Z_n]`, each evaluated from its
/// own sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityQuadruple {
    pub double_sum: Rational,
    pub double_sum_odd_length: Rational,
    pub quicksort_sum: Rational,
    pub single_sum: Rational,
}

impl IdentityQuadruple {
    pub fn all_equal(&self) -> bool {
        self.double_sum == self.double_sum_odd_length
            && self.double_sum == self.quicksort_sum
            && self.double_sum == self.single_sum
    }
}

pub fn identity_quadruple(n: u64) -> IdentityQuadruple {
    IdentityQuadruple {
        double_sum: expected_zeros_double_sum(n),
        double_sum_odd_length: double_sum_odd_length(n),
        quicksort_sum: quicksort_sum(n),
        single_sum: (1..=n + 1)
            .filter(|m| m % 2 == 1)
            .map(|m| ratio(1, m as i64))
            .sum(),
    }
}

/// `2/(f+1) * sum_{0 <= k < l <= f} C(2f+1, k)/C(2f+1, l) + 1` with
/// `f = floor(n/2)`.
fn double_sum_odd_length(n: u64) -> Rational {
    let f = n / 2;
    let row = binomial_row(2 * f + 1);
    ratio(2, f as i64 + 1) * ordered_ratio_sum(&row, f as usize + 1) + Rational::one()
}

/// `1/(n+1) * sum_m sum_{l=m}^{n-m} C(2m,m) C(n-2m, l-m) / C(n, l)`.
fn quicksort_sum(n: u64) -> Rational {
    let row = binomial_row(n);
    let mut numerators = vec![BigInt::zero(); n as usize + 1];
    for m in 0..=n / 2 {
        let central = binomial(2 * m, m as i64);
        let rest = binomial_row(n - 2 * m);
        for l in m..=n - m {
            numerators[l as usize] += &central * &rest[(l - m) as usize];
        }
    }
    let total: Rational = numerators
        .into_iter()
        .zip(row)
        .map(|(numer, denom)| frac(numer, denom))
        .sum();
    total / integer(n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_sum_values() {
        assert_eq!(expected_zeros_double_sum(0), Rational::one());
        assert_eq!(expected_zeros_double_sum(2), ratio(4, 3));
        assert_eq!(expected_zeros_double_sum(7), harmonic(HarmonicKind::Odd, 8));
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(expected_zeros_closed(0), Rational::one());
        assert_eq!(expected_zeros_closed(2), ratio(4, 3));
        assert_eq!(expected_zeros_closed(10), harmonic(HarmonicKind::Odd, 11));
        assert_eq!(expected_up_from_zero(0), Rational::zero());
        assert_eq!(expected_up_from_zero(2), ratio(1, 2));
    }

    #[test]
    fn point_probabilities() {
        assert_eq!(point_probability(4, 2, 0).unwrap(), ratio(1, 3));
        assert_eq!(point_probability(4, 2, 1).unwrap(), Rational::zero());
        assert_eq!(point_probability(6, 3, -3).unwrap(), ratio(1, 4));
        assert_eq!(point_probability(6, 3, -5).unwrap(), Rational::zero());
        assert!(point_probability(3, 4, 0).is_err());
    }

    #[test]
    fn conditional_zero_counts() {
        for n in 0..10u64 {
            assert_eq!(
                conditional_expected_zeros(n, n as i64).unwrap(),
                Rational::zero()
            );
            assert_eq!(
                conditional_expected_zeros(n, -(n as i64)).unwrap(),
                Rational::zero()
            );
        }
        assert_eq!(conditional_expected_zeros(4, 0).unwrap(), ratio(5, 3));
        assert_eq!(conditional_expected_zeros(4, 2).unwrap(), ratio(1, 2));
        assert_eq!(
            conditional_expected_zeros(3, 0),
            Err(Error::InfeasibleEndpoint { n: 3, d: 0 })
        );
        assert!(conditional_expected_zeros(3, 5).is_err());
    }

    #[test]
    fn conditional_central_simplification() {
        for n in (0..40u64).step_by(2) {
            let simplified =
                frac(BigInt::one() << n, binomial(n, (n / 2) as i64)) - Rational::one();
            assert_eq!(conditional_expected_zeros(n, 0).unwrap(), simplified);
        }
    }

    #[test]
    fn conditional_means_average_to_expectation() {
        for n in 0..30u64 {
            let total: Rational = (0..=n)
                .map(|l| conditional_expected_zeros(n, n as i64 - 2 * l as i64).unwrap())
                .sum();
            assert_eq!(
                total / integer(n + 1) + Rational::one(),
                expected_zeros_closed(n)
            );
        }
    }

    #[test]
    fn distribution_values() {
        assert_eq!(zeros_distribution(0, 1), Rational::one());
        assert_eq!(zeros_distribution(0, 2), Rational::zero());
        assert_eq!(zeros_distribution(2, 1), ratio(2, 3));
        assert_eq!(zeros_distribution(2, 2), ratio(1, 3));
        assert_eq!(zeros_distribution(1, 3), Rational::zero());
        assert_eq!(zeros_distribution(1, 1), Rational::one());
    }

    #[test]
    fn distribution_sums() {
        for n in 0..=100u64 {
            let pmf: Vec<Rational> = (1..=n / 2 + 1).map(|r| zeros_distribution(n, r)).collect();
            let mass: Rational = pmf.iter().sum();
            let mean: Rational = pmf
                .iter()
                .zip(1..)
                .map(|(p, r)| p * integer(r as u64))
                .sum();
            assert_eq!(mass, Rational::one(), "n = {n}");
            assert_eq!(mean, expected_zeros_closed(n), "n = {n}");
            assert_eq!(zeros_distribution(n, n / 2 + 2), Rational::zero());
        }
    }

    #[test]
    fn identity_small_cases() {
        for (n, value) in [(0, ratio(1, 1)), (2, ratio(4, 3))] {
            let q = identity_quadruple(n);
            assert_eq!(q.double_sum, value);
            assert_eq!(q.double_sum_odd_length, value);
            assert_eq!(q.quicksort_sum, value);
            assert_eq!(q.single_sum, value);
        }
        for n in 0..=60 {
            assert!(identity_quadruple(n).all_equal(), "n = {n}");
        }
    }
}
