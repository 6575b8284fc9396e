//! Asymptotic expansions whose coefficients are exact combinations of
//! `1`, Euler's constant and `log 2`.
//!
//! Expansions evaluate either in `f64` or, for remainder estimates that
//! `f64` cannot resolve, as a rational approximation carrying about fifty
//! correct decimal digits.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::exact::{ratio, HarmonicKind, Rational};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// 50 decimals; the precise evaluator is only ever asked for ~40.
const EULER_GAMMA_DIGITS: &str = "57721566490153286060651209008240243104215933593992";

/// Fixed-point scale used by the precise logarithm.
const LOG_SCALE_DIGITS: u32 = 90;

/// `rational + gamma * EULER_GAMMA + log2 * ln 2`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constant {
    pub rational: Rational,
    pub gamma: Rational,
    pub log2: Rational,
}

impl Constant {
    pub fn new(rational: Rational, gamma: Rational, log2: Rational) -> Self {
        Self {
            rational,
            gamma,
            log2,
        }
    }

    pub fn rational(value: Rational) -> Self {
        Self::new(value, Rational::zero(), Rational::zero())
    }

    pub fn to_f64(&self) -> f64 {
        self.rational.to_f64().unwrap_or(f64::NAN)
            + self.gamma.to_f64().unwrap_or(f64::NAN) * EULER_GAMMA
            + self.log2.to_f64().unwrap_or(f64::NAN) * std::f64::consts::LN_2
    }

    pub fn to_precise(&self) -> Rational {
        &self.rational + &self.gamma * precise_gamma() + &self.log2 * precise_ln2()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Any,
    Even,
    Odd,
}

impl Parity {
    fn admits(self, n: u64) -> bool {
        match self {
            Parity::Any => true,
            Parity::Even => n.is_multiple_of(2),
            Parity::Odd => n % 2 == 1,
        }
    }
}

/// Growth shape multiplying a coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    NLogN,
    LogN,
    /// `n^k` (negative `k` for the decaying terms).
    Power(i32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coefficient: Constant,
    pub shape: Shape,
    pub parity: Parity,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AsymptoticExpansion {
    pub terms: Vec<Term>,
}

impl AsymptoticExpansion {
    fn with(mut self, coefficient: Constant, shape: Shape, parity: Parity) -> Self {
        self.terms.push(Term {
            coefficient,
            shape,
            parity,
        });
        self
    }

    fn rat(self, numer: i64, denom: i64, shape: Shape, parity: Parity) -> Self {
        self.with(Constant::rational(ratio(numer, denom)), shape, parity)
    }

    /// Expansion of the harmonic number of `kind` through `1/n^2`.
    pub fn harmonic(kind: HarmonicKind) -> Self {
        use Parity::*;
        use Shape::*;
        let base = Self::default();
        match kind {
            HarmonicKind::Plain => base
                .rat(1, 1, LogN, Any)
                .with(
                    Constant::new(ratio(0, 1), ratio(1, 1), ratio(0, 1)),
                    Power(0),
                    Any,
                )
                .rat(1, 2, Power(-1), Any)
                .rat(-1, 12, Power(-2), Any),
            HarmonicKind::Odd => base
                .rat(1, 2, LogN, Any)
                .with(
                    Constant::new(ratio(0, 1), ratio(1, 2), ratio(1, 2)),
                    Power(0),
                    Any,
                )
                .rat(1, 2, Power(-1), Odd)
                .rat(1, 12, Power(-2), Even)
                .rat(-2, 12, Power(-2), Odd),
            HarmonicKind::Alternating => base
                .with(
                    Constant::new(ratio(0, 1), ratio(0, 1), ratio(-1, 1)),
                    Power(0),
                    Any,
                )
                .rat(1, 2, Power(-1), Even)
                .rat(-1, 2, Power(-1), Odd)
                .rat(-1, 4, Power(-2), Even)
                .rat(1, 4, Power(-2), Odd),
        }
    }

    /// Expected number of zeros of a random path of length `n`.
    pub fn expected_zeros() -> Self {
        use Parity::*;
        use Shape::*;
        Self::default()
            .rat(1, 2, LogN, Any)
            .with(
                Constant::new(ratio(0, 1), ratio(1, 2), ratio(1, 2)),
                Power(0),
                Any,
            )
            .rat(1, 2, Power(-1), Any)
            .rat(1, 2, Power(-1), Even)
            .rat(-2, 12, Power(-2), Any)
            .rat(-9, 12, Power(-2), Even)
            .rat(1, 1, Power(-3), Even)
    }

    /// Expected number of up-from-zero situations of a random path.
    pub fn expected_up_from_zero() -> Self {
        use Parity::*;
        use Shape::*;
        Self::default()
            .rat(1, 4, LogN, Any)
            .with(
                Constant::new(ratio(0, 1), ratio(1, 4), ratio(1, 4)),
                Power(0),
                Any,
            )
            .rat(1, 4, Power(-1), Odd)
            .rat(3, 24, Power(-2), Even)
            .rat(-2, 24, Power(-2), Any)
    }

    /// Expected partitioning cost of Count through `1/n^2`.
    pub fn partition_count() -> Self {
        use Parity::*;
        use Shape::*;
        Self::default()
            .rat(3, 2, Power(1), Any)
            .rat(1, 4, LogN, Any)
            .with(
                Constant::new(ratio(-19, 8), ratio(1, 4), ratio(1, 4)),
                Power(0),
                Any,
            )
            .rat(-1, 8, Power(-1), Any)
            .rat(-1, 12, Power(-2), Any)
    }

    /// Expected partitioning cost of Clairvoyant through `1/n^2`.
    pub fn partition_clairvoyant() -> Self {
        use Parity::*;
        use Shape::*;
        Self::default()
            .rat(3, 2, Power(1), Any)
            .rat(-1, 4, LogN, Any)
            .with(
                Constant::new(ratio(-13, 8), ratio(-1, 4), ratio(-1, 4)),
                Power(0),
                Any,
            )
            .rat(1, 8, Power(-1), Any)
            .rat(1, 12, Power(-2), Any)
    }

    /// `(9/5) n log n + A n + B log n + C + D/n + E/n^2 + (F [n even] + G)/n^3`.
    pub fn sorting_cost(c: &SortingCostConstants) -> Self {
        use Parity::*;
        use Shape::*;
        Self::default()
            .rat(9, 5, NLogN, Any)
            .with(c.a.clone(), Power(1), Any)
            .with(c.b.clone(), LogN, Any)
            .with(c.c.clone(), Power(0), Any)
            .with(c.d.clone(), Power(-1), Any)
            .with(c.e.clone(), Power(-2), Any)
            .with(c.f.clone(), Power(-3), Even)
            .with(c.g.clone(), Power(-3), Any)
    }

    pub fn eval_f64(&self, n: u64) -> f64 {
        let x = n as f64;
        self.terms
            .iter()
            .filter(|t| t.parity.admits(n))
            .map(|t| {
                let shape = match t.shape {
                    Shape::NLogN => x * x.ln(),
                    Shape::LogN => x.ln(),
                    Shape::Power(k) => x.powi(k),
                };
                t.coefficient.to_f64() * shape
            })
            .sum()
    }

    /// Rational approximation of the expansion, accurate to roughly 45
    /// significant digits for `n` up to a few thousand.
    pub fn eval_precise(&self, n: u64) -> Rational {
        let x = Rational::from_integer(BigInt::from(n));
        let log_n = precise_ln(n);
        let mut acc = Rational::zero();
        for t in self.terms.iter().filter(|t| t.parity.admits(n)) {
            let shape = match t.shape {
                Shape::NLogN => &x * &log_n,
                Shape::LogN => log_n.clone(),
                Shape::Power(k) => num_traits::pow::Pow::pow(&x, k),
            };
            acc += t.coefficient.to_precise() * shape;
        }
        acc
    }
}

/// Constants `A..G` of a `(9/5) n log n + ...` sorting-cost expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortingCostConstants {
    pub a: Constant,
    pub b: Constant,
    pub c: Constant,
    pub d: Constant,
    pub e: Constant,
    pub f: Constant,
    pub g: Constant,
}

impl SortingCostConstants {
    pub fn count() -> Self {
        Self {
            a: Constant::new(ratio(-89, 25), ratio(9, 5), ratio(1, 5)),
            b: Constant::rational(ratio(67, 40)),
            c: Constant::new(ratio(637, 800), ratio(67, 40), ratio(3, 40)),
            d: Constant::rational(ratio(11, 16)),
            e: Constant::rational(ratio(-67, 480)),
            f: Constant::rational(ratio(-1, 8)),
            g: Constant::rational(ratio(31, 400)),
        }
    }

    pub fn clairvoyant() -> Self {
        Self {
            a: Constant::new(ratio(-89, 25), ratio(9, 5), ratio(-1, 5)),
            b: Constant::rational(ratio(77, 40)),
            c: Constant::new(ratio(787, 800), ratio(77, 40), ratio(-3, 40)),
            d: Constant::rational(ratio(13, 16)),
            e: Constant::rational(ratio(-77, 480)),
            f: Constant::rational(ratio(1, 8)),
            g: Constant::rational(ratio(-19, 400)),
        }
    }
}

fn ten_pow(digits: u32) -> BigInt {
    num_traits::pow::pow(BigInt::from(10), digits as usize)
}

pub fn precise_gamma() -> Rational {
    static GAMMA: OnceLock<Rational> = OnceLock::new();
    GAMMA
        .get_or_init(|| {
            let numer: BigInt = EULER_GAMMA_DIGITS.parse().expect("digit string");
            Rational::new(numer, ten_pow(EULER_GAMMA_DIGITS.len() as u32))
        })
        .clone()
}

/// `2 atanh(numer/denom)` in fixed point with `LOG_SCALE_DIGITS` decimals.
fn fixed_two_atanh(numer: &BigInt, denom: &BigInt) -> BigInt {
    let scale = ten_pow(LOG_SCALE_DIGITS);
    let numer_sq = numer * numer;
    let denom_sq = denom * denom;
    let mut power = &scale * numer / denom;
    let mut sum = BigInt::zero();
    let mut k = 1u32;
    while !power.is_zero() {
        sum += &power / k;
        power = power * &numer_sq / &denom_sq;
        k += 2;
    }
    sum * 2
}

pub fn precise_ln2() -> Rational {
    static LN2: OnceLock<Rational> = OnceLock::new();
    LN2.get_or_init(|| {
        // ln 2 = 2 atanh(1/3)
        Rational::new(
            fixed_two_atanh(&BigInt::from(1), &BigInt::from(3)),
            ten_pow(LOG_SCALE_DIGITS),
        )
    })
    .clone()
}

/// Natural logarithm of a positive integer as a rational approximation.
pub fn precise_ln(n: u64) -> Rational {
    assert!(n >= 1, "log of zero");
    // n = 2^k * x with x in [1, 2); ln x = 2 atanh((x - 1)/(x + 1)).
    let k = 63 - n.leading_zeros() as i64;
    let pow2 = BigInt::from(1u64) << k;
    let n_big = BigInt::from(n);
    let tail = fixed_two_atanh(&(&n_big - &pow2), &(&n_big + &pow2));
    Rational::new(tail, ten_pow(LOG_SCALE_DIGITS))
        + precise_ln2() * Rational::from_integer(k.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::harmonic;
    use num_traits::Signed;

    #[test]
    fn published_constant_values() {
        let count = SortingCostConstants::count();
        assert!((count.a.to_f64() - -2.382_382_367_065_2).abs() < 1e-12);
        assert!((count.c.to_f64() - 1.815_072_277_252_06).abs() < 1e-12);
        assert_eq!(count.b.to_f64(), 1.675);
        assert_eq!(count.d.to_f64(), 0.6875);
        assert!((count.e.to_f64() - -0.139_583_333_333_333).abs() < 1e-14);
        assert_eq!(count.f.to_f64(), -0.125);
        assert_eq!(count.g.to_f64(), 0.0775);

        let cv = SortingCostConstants::clairvoyant();
        assert!((cv.a.to_f64() - -2.659_641_239_289_2).abs() < 1e-12);
        assert!((cv.c.to_f64() - 2.042_904_116_393_455).abs() < 1e-12);
        assert_eq!(cv.b.to_f64(), 1.925);
        assert_eq!(cv.d.to_f64(), 0.8125);
        assert!((cv.e.to_f64() - -0.160_416_666_666_666).abs() < 1e-14);
        assert_eq!(cv.f.to_f64(), 0.125);
        assert_eq!(cv.g.to_f64(), -0.0475);
    }

    #[test]
    fn precise_logs_agree_with_f64() {
        for n in [1u64, 2, 3, 7, 10, 400, 1 << 20, 999_999_937] {
            let precise = precise_ln(n).to_f64().unwrap();
            assert!((precise - (n as f64).ln()).abs() < 1e-14, "n = {n}");
        }
        let ln2 = precise_ln2();
        // Known digits of ln 2.
        let reference: Rational = Rational::new(
            "69314718055994530941723212145817656807550013436025"
                .parse()
                .unwrap(),
            ten_pow(50),
        );
        let err = (ln2 - reference).abs();
        assert!(err < Rational::new(1.into(), ten_pow(48)));
    }

    #[test]
    fn precise_ln_is_additive() {
        let lhs = precise_ln(6);
        let rhs = precise_ln(2) + precise_ln(3);
        assert!((lhs - rhs).abs() < Rational::new(1.into(), ten_pow(80)));
    }

    #[test]
    fn gamma_digits_are_consistent_with_harmonic_numbers() {
        // gamma = H_N - ln N - 1/(2N) + 1/(12N^2) - 1/(120N^4) + 1/(252N^6) - O(N^-8)
        let big_n = 2000u64;
        let n = Rational::from_integer(big_n.into());
        let estimate = harmonic(HarmonicKind::Plain, big_n) - precise_ln(big_n) - ratio(1, 2) / &n
            + ratio(1, 12) / (&n * &n)
            - ratio(1, 120) / num_traits::pow::Pow::pow(&n, 4i32)
            + ratio(1, 252) / num_traits::pow::Pow::pow(&n, 6i32);
        let err = (estimate - precise_gamma()).abs();
        assert!(
            err < Rational::new(1.into(), ten_pow(28)),
            "{}",
            err.to_f64().unwrap()
        );
        assert!((precise_gamma().to_f64().unwrap() - EULER_GAMMA).abs() < 1e-16);
    }

    #[test]
    fn odd_expansion_at_ten() {
        let expected =
            (10f64).ln() / 2.0 + (EULER_GAMMA + std::f64::consts::LN_2) / 2.0 + 1.0 / 1200.0;
        let got = AsymptoticExpansion::harmonic(HarmonicKind::Odd).eval_f64(10);
        assert!((got - expected).abs() < 1e-15);
    }

    #[test]
    fn alternating_expansion_large_even() {
        let n = 1_000_000u64;
        let x = n as f64;
        let expected = -std::f64::consts::LN_2 + 1.0 / (2.0 * x) - 1.0 / (4.0 * x * x);
        let got = AsymptoticExpansion::harmonic(HarmonicKind::Alternating).eval_f64(n);
        assert!((got - expected).abs() < 1e-15);
    }

    #[test]
    fn f64_and_precise_evaluations_agree() {
        let expansion = AsymptoticExpansion::sorting_cost(&SortingCostConstants::count());
        for n in [5u64, 50, 333, 1000] {
            let precise = expansion.eval_precise(n).to_f64().unwrap();
            let fast = expansion.eval_f64(n);
            assert!((precise - fast).abs() <= 1e-12 * precise.abs(), "n = {n}");
        }
    }
}
