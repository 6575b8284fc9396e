//! Classification of non-pivot elements as small, medium or large, and the
//! strategies deciding which pivot each element meets first.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use crate::paths::{LatticePath, Step};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassSymbol {
    /// Below the smaller pivot.
    Small,
    /// Between the pivots.
    Medium,
    /// Above the larger pivot.
    Large,
}

impl ClassSymbol {
    pub const ALL: [ClassSymbol; 3] = [ClassSymbol::Small, ClassSymbol::Medium, ClassSymbol::Large];

    fn from_char(c: char) -> Result<Self> {
        match c {
            'σ' | 's' | 'S' => Ok(ClassSymbol::Small),
            'μ' | 'm' | 'M' => Ok(ClassSymbol::Medium),
            'λ' | 'l' | 'L' => Ok(ClassSymbol::Large),
            other => Err(Error::BadSymbol(other)),
        }
    }
}

impl fmt::Display for ClassSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassSymbol::Small => "σ",
            ClassSymbol::Medium => "μ",
            ClassSymbol::Large => "λ",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ClassCounts {
    pub small: usize,
    pub medium: usize,
    pub large: usize,
}

impl ClassCounts {
    pub fn of(symbols: &[ClassSymbol]) -> Self {
        let mut counts = Self::default();
        for &s in symbols {
            counts.record(s);
        }
        counts
    }

    pub fn record(&mut self, symbol: ClassSymbol) {
        match symbol {
            ClassSymbol::Small => self.small += 1,
            ClassSymbol::Medium => self.medium += 1,
            ClassSymbol::Large => self.large += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.small + self.medium + self.large
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ClassSequence(pub Vec<ClassSymbol>);

impl ClassSequence {
    pub fn symbols(&self) -> &[ClassSymbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn counts(&self) -> ClassCounts {
        ClassCounts::of(&self.0)
    }

    /// All `3^len` sequences of the given length, in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = ClassSequence> {
        let total = 3usize.pow(len as u32);
        (0..total).map(move |mut code| {
            let mut symbols = vec![ClassSymbol::Small; len];
            for slot in symbols.iter_mut().rev() {
                *slot = ClassSymbol::ALL[code % 3];
                code /= 3;
            }
            ClassSequence(symbols)
        })
    }
}

impl FromStr for ClassSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(ClassSymbol::from_char)
            .collect::<Result<Vec<_>>>()
            .map(ClassSequence)
    }
}

impl fmt::Display for ClassSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{s}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PivotDecision {
    /// Compare with the smaller pivot first.
    PFirst,
    /// Compare with the larger pivot first.
    QFirst,
}

impl PivotDecision {
    /// Whether meeting `next` after this decision wastes a comparison.
    pub fn is_wrong_for(self, next: ClassSymbol) -> bool {
        matches!(
            (self, next),
            (PivotDecision::PFirst, ClassSymbol::Large)
                | (PivotDecision::QFirst, ClassSymbol::Small)
        )
    }
}

/// Comparisons split by purpose. `necessary` counts one comparison per small
/// or large element and two per medium element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ComparisonTally {
    pub pivot_pivot: u64,
    pub necessary: u64,
    pub additional: u64,
}

impl ComparisonTally {
    pub fn total(&self) -> u64 {
        self.pivot_pivot + self.necessary + self.additional
    }

    pub(crate) fn record(&mut self, class: ClassSymbol, decision: PivotDecision) {
        self.necessary += if class == ClassSymbol::Medium { 2 } else { 1 };
        if decision.is_wrong_for(class) {
            self.additional += 1;
        }
    }
}

impl Add for ComparisonTally {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for ComparisonTally {
    fn add_assign(&mut self, rhs: Self) {
        self.pivot_pivot += rhs.pivot_pivot;
        self.necessary += rhs.necessary;
        self.additional += rhs.additional;
    }
}

/// Decision rule for the next element given the classes seen so far.
pub trait PartitionStrategy {
    fn decide(&self, prefix: &[ClassSymbol]) -> Result<PivotDecision>;
}

/// Compare with `p` first iff at least as many small as large elements have
/// been seen.
#[derive(Debug, Clone, Copy, Default)]
pub struct Count;

/// Compare with `p` first iff at least as many small as large elements remain;
/// needs the totals from an oracle.
#[derive(Debug, Clone, Copy)]
pub struct Clairvoyant {
    pub small: usize,
    pub large: usize,
}

impl Clairvoyant {
    pub fn for_sequence(seq: &ClassSequence) -> Self {
        let counts = seq.counts();
        Self {
            small: counts.small,
            large: counts.large,
        }
    }
}

/// Always the same pivot first.
#[derive(Debug, Clone, Copy)]
pub struct Fixed(pub PivotDecision);

pub fn count_strategy(prefix: &[ClassSymbol]) -> PivotDecision {
    let seen = ClassCounts::of(prefix);
    if seen.small >= seen.large {
        PivotDecision::PFirst
    } else {
        PivotDecision::QFirst
    }
}

pub fn clairvoyant_strategy(
    totals: (usize, usize),
    prefix: &[ClassSymbol],
) -> Result<PivotDecision> {
    let (total_small, total_large) = totals;
    let seen = ClassCounts::of(prefix);
    if seen.small > total_small || seen.large > total_large {
        return Err(Error::PrefixExceedsTotals {
            small: seen.small,
            large: seen.large,
            total_small,
            total_large,
        });
    }
    Ok(if total_small - seen.small >= total_large - seen.large {
        PivotDecision::PFirst
    } else {
        PivotDecision::QFirst
    })
}

impl PartitionStrategy for Count {
    fn decide(&self, prefix: &[ClassSymbol]) -> Result<PivotDecision> {
        Ok(count_strategy(prefix))
    }
}

impl PartitionStrategy for Clairvoyant {
    fn decide(&self, prefix: &[ClassSymbol]) -> Result<PivotDecision> {
        clairvoyant_strategy((self.small, self.large), prefix)
    }
}

impl PartitionStrategy for Fixed {
    fn decide(&self, _prefix: &[ClassSymbol]) -> Result<PivotDecision> {
        Ok(self.0)
    }
}

/// Classifies `seq` left to right. The pivot-pivot comparison belongs to the
/// caller, so `pivot_pivot` is always 0 here.
pub fn classify_sequence(
    strategy: &dyn PartitionStrategy,
    seq: &ClassSequence,
) -> Result<ComparisonTally> {
    let mut tally = ComparisonTally::default();
    for (t, &class) in seq.symbols().iter().enumerate() {
        let decision = strategy.decide(&seq.symbols()[..t])?;
        tally.record(class, decision);
    }
    Ok(tally)
}

/// Steps of the three-way walk `W`: large `+1`, medium `0`, small `-1`.
pub fn walk_steps(seq: &ClassSequence) -> Vec<i8> {
    seq.symbols()
        .iter()
        .map(|s| match s {
            ClassSymbol::Large => 1,
            ClassSymbol::Medium => 0,
            ClassSymbol::Small => -1,
        })
        .collect()
}

/// `(W, W')` where `W'` drops the medium (flat) steps of `W`.
pub fn sequence_to_paths(seq: &ClassSequence) -> (Vec<i8>, LatticePath) {
    let walk = walk_steps(seq);
    let reduced = walk
        .iter()
        .filter_map(|&s| match s {
            1 => Some(Step::Up),
            -1 => Some(Step::Down),
            _ => None,
        })
        .collect();
    (walk, LatticePath::new(reduced))
}
