//! Exact rational arithmetic and the combinatorial primitives every formula
//! is assembled from.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::expansion::AsymptoticExpansion;
use crate::{Error, Result};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// `numer / denom` as an exact rational.
///
/// Panics if `denom == 0`.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

/// `[condition]` as 0 or 1.
pub fn iverson(condition: bool) -> Rational {
    if condition {
        Rational::one()
    } else {
        Rational::zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HarmonicKind {
    /// `H_n = sum 1/m`
    Plain,
    /// `sum [m odd]/m`
    Odd,
    /// `sum (-1)^m/m`
    Alternating,
}

impl HarmonicKind {
    fn term(self, m: u64) -> Rational {
        let m = m as i64;
        match self {
            HarmonicKind::Plain => ratio(1, m),
            HarmonicKind::Odd if m % 2 == 1 => ratio(1, m),
            HarmonicKind::Odd => Rational::zero(),
            HarmonicKind::Alternating if m % 2 == 1 => ratio(-1, m),
            HarmonicKind::Alternating => ratio(1, m),
        }
    }

    fn index(self) -> usize {
        match self {
            HarmonicKind::Plain => 0,
            HarmonicKind::Odd => 1,
            HarmonicKind::Alternating => 2,
        }
    }
}

type PrefixTable = RwLock<Vec<Rational>>;

fn prefix_tables() -> &'static [PrefixTable; 3] {
    static TABLES: OnceLock<[PrefixTable; 3]> = OnceLock::new();
    TABLES.get_or_init(|| std::array::from_fn(|_| RwLock::new(vec![Rational::zero()])))
}

/// Exact harmonic number of the given kind; `H_0 = 0` for every kind.
///
/// Prefix sums are memoised process-wide, so dense sweeps over `n` cost one
/// rational addition per new index.
pub fn harmonic(kind: HarmonicKind, n: u64) -> Rational {
    let table = &prefix_tables()[kind.index()];
    let n = n as usize;
    {
        let read = table.read().unwrap_or_else(|e| e.into_inner());
        if let Some(value) = read.get(n) {
            return value.clone();
        }
    }
    let mut write = table.write().unwrap_or_else(|e| e.into_inner());
    while write.len() <= n {
        let m = write.len() as u64;
        let next = &write[write.len() - 1] + kind.term(m);
        write.push(next);
    }
    write[n].clone()
}

/// Evaluates the expansion of `harmonic(kind, n)` through the `1/n^2` term.
pub fn harmonic_asymptotic(kind: HarmonicKind, n: u64) -> f64 {
    AsymptoticExpansion::harmonic(kind).eval_f64(n)
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `[C(n, 0), ..., C(n, n)]`.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut current = BigInt::one();
    row.push(current.clone());
    for k in 0..n {
        current = current * (n - k) / (k + 1);
        row.push(current.clone());
    }
    row
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n! / (parts[0]! * parts[1]! * ...)`.
pub fn multinomial(n: u64, parts: &[u64]) -> Result<BigInt> {
    let sum: u64 = parts.iter().sum();
    if sum != n {
        return Err(Error::PartsSumMismatch { n, sum });
    }
    // Product of successive binomials avoids the full factorial.
    let mut acc = BigInt::one();
    let mut placed = 0u64;
    for &part in parts {
        placed += part;
        acc *= binomial(placed, part as i64);
    }
    Ok(acc)
}
