//! Optimal classification strategies: a backward dynamic program for the
//! minimum expected number of additional comparisons, an evaluator for
//! arbitrary strategies and an exhaustive search over all full-history
//! strategies for tiny inputs.
//!
//! While classifying, after `t` elements with counts `(s, m, l)` the next
//! element has class `gamma` with probability `(count_gamma + 1)/(t + 3)`.
//! A wrong first comparison therefore has probability `(l + 1)/(t + 3)` when
//! `p` is consulted first and `(s + 1)/(t + 3)` otherwise.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::classify::{
    count_strategy, ClassCounts, ClassSequence, ClassSymbol, PartitionStrategy, PivotDecision,
};
use crate::exact::{factorial, Rational};
use crate::{Error, Result};

pub const MAX_ENUMERATION_N: u64 = 5;
pub const MAX_PREFIX_TABLE_N: u64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CountState {
    pub s: u64,
    pub m: u64,
    pub l: u64,
}

impl CountState {
    pub fn new(s: u64, m: u64, l: u64) -> Self {
        Self { s, m, l }
    }

    pub fn t(&self) -> u64 {
        self.s + self.m + self.l
    }

    pub fn of_prefix(prefix: &[ClassSymbol]) -> Self {
        let ClassCounts {
            small,
            medium,
            large,
        } = ClassCounts::of(prefix);
        Self::new(small as u64, medium as u64, large as u64)
    }

    pub fn advanced(&self, symbol: ClassSymbol) -> Self {
        let mut next = *self;
        match symbol {
            ClassSymbol::Small => next.s += 1,
            ClassSymbol::Medium => next.m += 1,
            ClassSymbol::Large => next.l += 1,
        }
        next
    }

    fn count_of(&self, symbol: ClassSymbol) -> u64 {
        match symbol {
            ClassSymbol::Small => self.s,
            ClassSymbol::Medium => self.m,
            ClassSymbol::Large => self.l,
        }
    }

    /// Numerator of the probability of a wasted comparison; the denominator
    /// is `t + 3`.
    fn wrong_weight(&self, decision: PivotDecision) -> u64 {
        match decision {
            PivotDecision::PFirst => self.l + 1,
            PivotDecision::QFirst => self.s + 1,
        }
    }

    /// All states with `s + m + l = t`.
    pub fn layer(t: u64) -> impl Iterator<Item = CountState> {
        (0..=t).flat_map(move |s| (0..=t - s).map(move |l| CountState::new(s, t - s - l, l)))
    }
}

/// Next-symbol law in the order of [`ClassSymbol::ALL`].
pub fn next_symbol_pmf(state: &CountState) -> [Rational; 3] {
    let denom = BigInt::from(state.t() + 3);
    ClassSymbol::ALL.map(|g| Rational::new(BigInt::from(state.count_of(g) + 1), denom.clone()))
}

/// Count's decision expressed on counts.
pub fn count_decision(state: &CountState) -> PivotDecision {
    if state.s >= state.l {
        PivotDecision::PFirst
    } else {
        PivotDecision::QFirst
    }
}

/// Dense storage for one layer of states, indexed by `(s, l)`.
struct Layer {
    width: usize,
    cells: Vec<BigInt>,
}

impl Layer {
    fn new(t: u64) -> Self {
        let width = t as usize + 1;
        Self {
            width,
            cells: vec![BigInt::zero(); width * width],
        }
    }

    fn at(&self, s: u64, l: u64) -> &BigInt {
        &self.cells[s as usize * self.width + l as usize]
    }

    fn at_mut(&mut self, s: u64, l: u64) -> &mut BigInt {
        &mut self.cells[s as usize * self.width + l as usize]
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

/// Backward induction over count states for inputs of size `n`, reporting
/// the set of optimal decisions at every state to `on_state`.
///
/// Values are kept as integers: the value of a state at time `t` is scaled by
/// `(n)!/(t + 2)!`, which clears every denominator.
fn backward<F>(n: u64, mut on_state: F) -> Result<Rational>
where
    F: FnMut(&CountState, &[PivotDecision]),
{
    check_n(n)?;
    let horizon = n - 2;
    let mut next = Layer::new(horizon);
    // scale of the layer after the current one
    let mut next_scale = BigInt::one();
    for t in (0..horizon).rev() {
        let mut current = Layer::new(t);
        for state in CountState::layer(t) {
            let mut continuation = BigInt::zero();
            for g in ClassSymbol::ALL {
                let succ = state.advanced(g);
                continuation += next.at(succ.s, succ.l) * (state.count_of(g) + 1);
            }
            let p_first = &next_scale * state.wrong_weight(PivotDecision::PFirst) + &continuation;
            let q_first = &next_scale * state.wrong_weight(PivotDecision::QFirst) + &continuation;
            let (best, decisions): (BigInt, &[PivotDecision]) = match p_first.cmp(&q_first) {
                std::cmp::Ordering::Less => (p_first, &[PivotDecision::PFirst]),
                std::cmp::Ordering::Greater => (q_first, &[PivotDecision::QFirst]),
                std::cmp::Ordering::Equal => {
                    (p_first, &[PivotDecision::PFirst, PivotDecision::QFirst])
                }
            };
            on_state(&state, decisions);
            *current.at_mut(state.s, state.l) = best;
        }
        next_scale *= t + 3;
        next = current;
    }
    Ok(Rational::new(next.at(0, 0).clone(), next_scale))
}

/// Minimum over all strategies of the expected number of additional
/// comparisons when classifying the `n - 2` non-pivot elements.
pub fn min_additional_cost(n: u64) -> Result<Rational> {
    backward(n, |_, _| {})
}

/// Optimal decision sets for every state of the backward program.
pub fn optimal_decisions(n: u64) -> Result<HashMap<CountState, Vec<PivotDecision>>> {
    let mut policy = HashMap::new();
    backward(n, |state, decisions| {
        policy.insert(*state, decisions.to_vec());
    })?;
    Ok(policy)
}

/// Forward pass over count states. Entry `n` of the result is the sum over
/// `t < n - 2` and all states at time `t` of
/// `P{state} * weight(state) / (t + 3)`; entries below 3 are zero.
///
/// State probabilities are propagated as integers scaled by `(t + 2)!/2`.
pub fn forward_costs<F>(n_max: u64, mut weight: F) -> Result<Vec<Rational>>
where
    F: FnMut(&CountState) -> Result<u64>,
{
    let mut out = vec![Rational::zero(); n_max as usize + 1];
    let mut layer = Layer::new(0);
    *layer.at_mut(0, 0) = BigInt::one();
    let mut scale = BigInt::one();
    let mut acc = Rational::zero();
    for n in 3..=n_max {
        let t = n - 3;
        let mut next = Layer::new(t + 1);
        let mut layer_sum = BigInt::zero();
        for state in CountState::layer(t) {
            let w = layer.at(state.s, state.l);
            layer_sum += w * weight(&state)?;
            for g in ClassSymbol::ALL {
                let succ = state.advanced(g);
                *next.at_mut(succ.s, succ.l) += w * (state.count_of(g) + 1);
            }
        }
        let layer_scale = &scale * (t + 3);
        acc += Rational::new(layer_sum, layer_scale.clone());
        out[n as usize] = acc.clone();
        scale = layer_scale;
        layer = next;
    }
    Ok(out)
}

/// Pointwise minimum summed forward, for every `n <= n_max`.
pub fn min_additional_costs_forward(n_max: u64) -> Vec<Rational> {
    forward_costs(n_max, |s| {
        Ok(s.wrong_weight(PivotDecision::PFirst)
            .min(s.wrong_weight(PivotDecision::QFirst)))
    })
    .expect("weight is infallible")
}

/// A deterministic strategy given as an explicit table.
#[derive(Debug, Clone, PartialEq)]
pub enum StrategyTable {
    /// Decision as a function of the counts seen so far.
    Counts(HashMap<CountState, PivotDecision>),
    /// Decision as a function of the whole prefix.
    Prefixes(HashMap<ClassSequence, PivotDecision>),
}

impl StrategyTable {
    /// Count on every state needed for inputs up to size `n_max`.
    pub fn count(n_max: u64) -> Self {
        Self::from_count_rule(n_max, count_decision)
    }

    pub fn fixed(decision: PivotDecision, n_max: u64) -> Self {
        Self::from_count_rule(n_max, |_| decision)
    }

    pub fn from_count_rule(n_max: u64, rule: impl Fn(&CountState) -> PivotDecision) -> Self {
        let table = (0..n_max.saturating_sub(2))
            .flat_map(CountState::layer)
            .map(|s| (s, rule(&s)))
            .collect();
        StrategyTable::Counts(table)
    }

    /// Tabulates `strategy` on every prefix shorter than `n - 2`.
    pub fn from_prefix_rule(n: u64, strategy: &dyn PartitionStrategy) -> Result<Self> {
        if n > MAX_PREFIX_TABLE_N {
            return Err(Error::SizeTooLarge {
                what: "prefix table",
                n,
                max: MAX_PREFIX_TABLE_N,
            });
        }
        let mut table = HashMap::new();
        for len in 0..n.saturating_sub(2) {
            for prefix in ClassSequence::all_of_length(len as usize) {
                let decision = strategy.decide(prefix.symbols())?;
                table.insert(prefix, decision);
            }
        }
        Ok(StrategyTable::Prefixes(table))
    }
}

fn missing_state(state: &CountState) -> Error {
    Error::PartialStrategy(format!(
        "no decision for counts (s={}, m={}, l={})",
        state.s, state.m, state.l
    ))
}

/// Expected additional comparisons of a count-based table for every size up
/// to `n_max`.
pub fn strategy_additional_costs(
    table: &HashMap<CountState, PivotDecision>,
    n_max: u64,
) -> Result<Vec<Rational>> {
    forward_costs(n_max, |state| {
        table
            .get(state)
            .map(|&d| state.wrong_weight(d))
            .ok_or_else(|| missing_state(state))
    })
}

/// Expected additional comparisons of `strategy` on inputs of size `n`.
pub fn strategy_additional_cost(strategy: &StrategyTable, n: u64) -> Result<Rational> {
    check_n(n)?;
    match strategy {
        StrategyTable::Counts(table) => {
            Ok(strategy_additional_costs(table, n)?.pop().expect("n >= 2"))
        }
        StrategyTable::Prefixes(table) => prefix_strategy_cost(table, n),
    }
}

/// Walks the prefix tree carrying exact prefix probabilities.
fn prefix_strategy_cost(table: &HashMap<ClassSequence, PivotDecision>, n: u64) -> Result<Rational> {
    if n > MAX_PREFIX_TABLE_N {
        return Err(Error::SizeTooLarge {
            what: "prefix table",
            n,
            max: MAX_PREFIX_TABLE_N,
        });
    }
    let mut total = Rational::zero();
    let mut frontier = vec![(Vec::new(), Rational::one())];
    for t in 0..n - 2 {
        let mut next_frontier = Vec::with_capacity(frontier.len() * 3);
        for (prefix, probability) in frontier {
            let key = ClassSequence(prefix);
            let decision = *table
                .get(&key)
                .ok_or_else(|| Error::PartialStrategy(format!("no decision for prefix {key:?}")))?;
            let state = CountState::of_prefix(key.symbols());
            total +=
                &probability * Rational::new(state.wrong_weight(decision).into(), (t + 3).into());
            for (g, q) in ClassSymbol::ALL.into_iter().zip(next_symbol_pmf(&state)) {
                let mut extended = key.0.clone();
                extended.push(g);
                next_frontier.push((extended, &probability * q));
            }
        }
        frontier = next_frontier;
    }
    Ok(total)
}

/// Outcome of the exhaustive search over all full-history strategies.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategySearch {
    pub n: u64,
    /// Number of prefixes at which a decision is taken.
    pub decision_points: usize,
    pub strategies_evaluated: u64,
    pub min: Rational,
    pub optimal_strategies: u64,
    pub count_is_optimal: bool,
    /// Every optimal strategy decides like Count whenever `s != l`.
    pub optima_agree_with_count_off_ties: bool,
    /// Decision points with `s == l` where optimal strategies differ.
    pub free_tie_points: usize,
}

/// Scaled probability of a complete sequence and, per position, the prefix
/// index and whether P-first/Q-first is wrong there.
type WeightedSequence = (BigInt, Vec<(usize, bool, bool)>);

/// Evaluates every deterministic strategy on histories for `n <= 5` by
/// enumerating all complete class sequences with their exact probabilities.
pub fn enumerate_strategies(n: u64) -> Result<StrategySearch> {
    check_n(n)?;
    if n > MAX_ENUMERATION_N {
        return Err(Error::SizeTooLarge {
            what: "strategy enumeration",
            n,
            max: MAX_ENUMERATION_N,
        });
    }
    let len = (n - 2) as usize;
    let prefixes: Vec<ClassSequence> = (0..len).flat_map(ClassSequence::all_of_length).collect();
    let index: HashMap<&ClassSequence, usize> =
        prefixes.iter().enumerate().map(|(i, p)| (p, i)).collect();

    // probabilities are scaled by (len + 2)!/2
    let scale = factorial(len as u64 + 2) / 2u32;
    let sequences: Vec<WeightedSequence> = ClassSequence::all_of_length(len)
        .map(|seq| {
            let mut weight = BigInt::one();
            let mut steps = Vec::with_capacity(len);
            for (t, &g) in seq.symbols().iter().enumerate() {
                let prefix = ClassSequence(seq.symbols()[..t].to_vec());
                weight *= CountState::of_prefix(prefix.symbols()).count_of(g) + 1;
                steps.push((
                    index[&prefix],
                    PivotDecision::PFirst.is_wrong_for(g),
                    PivotDecision::QFirst.is_wrong_for(g),
                ));
            }
            (weight, steps)
        })
        .collect();
    debug_assert_eq!(sequences.iter().map(|(w, _)| w).sum::<BigInt>(), scale);

    let points = prefixes.len();
    let strategies = 1u64 << points;
    // bit i set: Q-first at prefix i
    let cost_of = |mask: u64| -> BigInt {
        sequences
            .iter()
            .map(|(w, steps)| {
                let wrong = steps
                    .iter()
                    .filter(
                        |&&(i, wrong_p, wrong_q)| {
                            if mask >> i & 1 == 1 {
                                wrong_q
                            } else {
                                wrong_p
                            }
                        },
                    )
                    .count();
                w * wrong
            })
            .sum()
    };
    let costs: Vec<BigInt> = (0..strategies).into_par_iter().map(cost_of).collect();
    let best = costs.iter().min().expect("at least one strategy").clone();
    let optimal: Vec<u64> = (0..strategies)
        .filter(|&m| costs[m as usize] == best)
        .collect();

    let count_mask = prefixes
        .iter()
        .enumerate()
        .filter(|(_, p)| count_strategy(p.symbols()) == PivotDecision::QFirst)
        .fold(0u64, |mask, (i, _)| mask | 1 << i);
    let ties: Vec<bool> = prefixes
        .iter()
        .map(|p| {
            let c = p.counts();
            c.small == c.large
        })
        .collect();
    let agree = optimal
        .iter()
        .all(|&m| (0..points).all(|i| ties[i] || (m >> i & 1) == (count_mask >> i & 1)));
    let free_tie_points = (0..points)
        .filter(|&i| {
            ties[i]
                && optimal.iter().any(|&m| m >> i & 1 == 1)
                && optimal.iter().any(|&m| m >> i & 1 == 0)
        })
        .count();

    let count_is_optimal = costs[count_mask as usize] == best;
    Ok(StrategySearch {
        n,
        decision_points: points,
        strategies_evaluated: strategies,
        min: Rational::new(best, scale),
        optimal_strategies: optimal.len() as u64,
        count_is_optimal,
        optima_agree_with_count_off_ties: agree,
        free_tie_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{Count, Fixed};
    use crate::exact::ratio;

    #[test]
    fn pmf_examples() {
        assert_eq!(
            next_symbol_pmf(&CountState::default()),
            [ratio(1, 3), ratio(1, 3), ratio(1, 3)]
        );
        assert_eq!(
            next_symbol_pmf(&CountState::new(1, 0, 0)),
            [ratio(2, 4), ratio(1, 4), ratio(1, 4)]
        );
        for t in 0..12 {
            for s in CountState::layer(t) {
                assert_eq!(
                    next_symbol_pmf(&s).iter().sum::<Rational>(),
                    Rational::one()
                );
            }
        }
    }

    #[test]
    fn layers_have_triangular_size() {
        for t in 0..20u64 {
            let states: Vec<_> = CountState::layer(t).collect();
            assert_eq!(states.len() as u64, (t + 1) * (t + 2) / 2);
            assert!(states.iter().all(|s| s.t() == t));
        }
    }

    #[test]
    fn min_cost_examples() {
        assert_eq!(min_additional_cost(2).unwrap(), Rational::zero());
        assert_eq!(min_additional_cost(3).unwrap(), ratio(1, 3));
        assert_eq!(min_additional_cost(4).unwrap(), ratio(7, 12));
        assert!(min_additional_cost(1).is_err());
    }

    #[test]
    fn backward_matches_forward() {
        let forward = min_additional_costs_forward(40);
        for n in 3..=40 {
            assert_eq!(
                min_additional_cost(n).unwrap(),
                forward[n as usize],
                "n = {n}"
            );
        }
    }

    #[test]
    fn forward_state_law_is_uniform() {
        // total probability one on every layer
        let sizes = forward_costs(30, |_| Ok(1)).unwrap();
        let mut expected = Rational::zero();
        for n in 3..=30u64 {
            let t = n - 3;
            expected += Rational::new(BigInt::one(), BigInt::from(t + 3));
            assert_eq!(sizes[n as usize], expected);
        }
    }

    #[test]
    fn strategy_examples() {
        let count = StrategyTable::count(4);
        assert_eq!(strategy_additional_cost(&count, 4).unwrap(), ratio(7, 12));
        let always_p = StrategyTable::fixed(PivotDecision::PFirst, 4);
        assert_eq!(strategy_additional_cost(&always_p, 4).unwrap(), ratio(2, 3));
        assert!(matches!(
            strategy_additional_cost(&StrategyTable::count(3), 4),
            Err(Error::PartialStrategy(_))
        ));
        let prefixes = StrategyTable::from_prefix_rule(4, &Fixed(PivotDecision::PFirst)).unwrap();
        assert_eq!(strategy_additional_cost(&prefixes, 4).unwrap(), ratio(2, 3));
        assert!(matches!(
            strategy_additional_cost(&StrategyTable::Prefixes(HashMap::new()), 3),
            Err(Error::PartialStrategy(_))
        ));
    }

    #[test]
    fn prefix_and_count_tables_agree() {
        for n in 2..=9 {
            let by_prefix = StrategyTable::from_prefix_rule(n, &Count).unwrap();
            assert_eq!(
                strategy_additional_cost(&by_prefix, n).unwrap(),
                strategy_additional_cost(&StrategyTable::count(n), n).unwrap()
            );
        }
    }

    #[test]
    fn count_is_among_optimal_decisions() {
        for n in 2..=16 {
            for (state, decisions) in optimal_decisions(n).unwrap() {
                assert!(decisions.contains(&count_decision(&state)));
                assert_eq!(decisions.len() == 2, state.s == state.l, "{state:?}");
            }
        }
    }

    #[test]
    fn exhaustive_search() {
        let s3 = enumerate_strategies(3).unwrap();
        assert_eq!((s3.min.clone(), s3.strategies_evaluated), (ratio(1, 3), 2));
        assert!(s3.count_is_optimal);
        let s4 = enumerate_strategies(4).unwrap();
        assert_eq!(
            (s4.min.clone(), s4.strategies_evaluated),
            (ratio(7, 12), 16)
        );
        assert!(s4.count_is_optimal && s4.optima_agree_with_count_off_ties);
        let s5 = enumerate_strategies(5).unwrap();
        assert_eq!(s5.strategies_evaluated, 1 << 13);
        assert_eq!(s5.min, min_additional_cost(5).unwrap());
        assert!(s5.count_is_optimal && s5.optima_agree_with_count_off_ties);
        assert_eq!(s5.optimal_strategies, 1 << s5.free_tie_points);
        assert!(enumerate_strategies(6).is_err());
    }
}
