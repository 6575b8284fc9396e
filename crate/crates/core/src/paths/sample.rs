use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{LatticePath, Step};
use crate::exact::{binomial, multinomial, Rational};
use crate::{Error, Result};

/// Draws a path of length `n` from the two-stage model.
///
/// The number of down-steps is uniform on `0..=n` (so the endpoint
/// `n - 2*downs` is uniform over the reachable heights); the step multiset is
/// then shuffled uniformly.
pub fn sample_path<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LatticePath {
    let downs = rng.random_range(0..=n);
    let mut steps = vec![Step::Up; n];
    steps[..downs].fill(Step::Down);
    steps.shuffle(rng);
    LatticePath::new(steps)
}

/// Ball counts of an `h`-colour contagion urn after `t` draws, not counting
/// the initial ball of each colour.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UrnState {
    pub counts: Vec<u64>,
    pub t: u64,
}

impl UrnState {
    pub fn initial(h: usize) -> Self {
        Self {
            counts: vec![0; h],
            t: 0,
        }
    }

    /// `P{next colour = j} = (c_j + 1)/(t + h)`.
    pub fn transition_probabilities(&self) -> Vec<Rational> {
        let denom = BigInt::from(self.t + self.counts.len() as u64);
        self.counts
            .iter()
            .map(|&c| Rational::new(BigInt::from(c + 1), denom.clone()))
            .collect()
    }

    fn advanced(&self, colour: usize) -> Self {
        let mut next = self.clone();
        next.counts[colour] += 1;
        next.t += 1;
        next
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UrnTrajectory {
    pub h: usize,
    pub colours: Vec<usize>,
}

impl UrnTrajectory {
    /// States at `t = 0..=n`.
    pub fn states(&self) -> Vec<UrnState> {
        let mut state = UrnState::initial(self.h);
        let mut states = vec![state.clone()];
        for &c in &self.colours {
            state = state.advanced(c);
            states.push(state.clone());
        }
        states
    }

    pub fn final_state(&self) -> UrnState {
        let mut counts = vec![0; self.h];
        for &c in &self.colours {
            counts[c] += 1;
        }
        UrnState {
            counts,
            t: self.colours.len() as u64,
        }
    }

    /// For two colours: colour 0 is an up-step, colour 1 a down-step.
    pub fn to_lattice_path(&self) -> Option<LatticePath> {
        (self.h == 2).then(|| {
            LatticePath::new(
                self.colours
                    .iter()
                    .map(|&c| if c == 0 { Step::Up } else { Step::Down })
                    .collect(),
            )
        })
    }
}

/// Runs the urn chain for `n` draws.
pub fn sample_path_urn<R: Rng + ?Sized>(h: usize, n: usize, rng: &mut R) -> Result<UrnTrajectory> {
    if h == 0 {
        return Err(Error::SizeTooSmall {
            what: "urn colours",
            n: 0,
            min: 1,
        });
    }
    let mut counts = vec![0usize; h];
    let mut colours = Vec::with_capacity(n);
    for t in 0..n {
        let mut ball = rng.random_range(0..t + h);
        let colour = counts
            .iter()
            .position(|&c| {
                if ball <= c {
                    true
                } else {
                    ball -= c + 1;
                    false
                }
            })
            .expect("ball index below total weight");
        counts[colour] += 1;
        colours.push(colour);
    }
    Ok(UrnTrajectory { h, colours })
}

/// Exact law of the urn state after `n` draws, by forward propagation of the
/// transition probabilities.
pub fn urn_endpoint_distribution(h: usize, n: u64) -> Result<HashMap<Vec<u64>, Rational>> {
    if h == 0 {
        return Err(Error::SizeTooSmall {
            what: "urn colours",
            n: 0,
            min: 1,
        });
    }
    let mut layer: HashMap<UrnState, Rational> =
        HashMap::from([(UrnState::initial(h), Rational::one())]);
    for _ in 0..n {
        let mut next: HashMap<UrnState, Rational> = HashMap::new();
        for (state, p) in &layer {
            for (colour, q) in state.transition_probabilities().into_iter().enumerate() {
                *next
                    .entry(state.advanced(colour))
                    .or_insert_with(Rational::zero) += p * q;
            }
        }
        layer = next;
    }
    Ok(layer.into_iter().map(|(s, p)| (s.counts, p)).collect())
}

/// Checks, for every prefix length `t <= n`, that each individual urn path
/// ending in `c` has probability `1/(|Omega_t| * multinomial(t; c))`, i.e.
/// the urn induces the two-stage law path by path.
///
/// All distinct path probabilities reaching each state are tracked, which
/// covers all `h^n` paths in polynomial time.
pub fn urn_path_law_matches_two_stage(h: usize, n: u64) -> Result<bool> {
    if h == 0 {
        return Err(Error::SizeTooSmall {
            what: "urn colours",
            n: 0,
            min: 1,
        });
    }
    let mut layer: HashMap<UrnState, BTreeSet<Rational>> =
        HashMap::from([(UrnState::initial(h), BTreeSet::from([Rational::one()]))]);
    for t in 0..=n {
        let omega = binomial(t + h as u64 - 1, h as i64 - 1);
        for (state, probabilities) in &layer {
            let paths = multinomial(t, &state.counts)?;
            let expected = Rational::new(BigInt::one(), &omega * paths);
            if probabilities.len() != 1 || probabilities.first() != Some(&expected) {
                return Ok(false);
            }
        }
        if t == n {
            break;
        }
        let mut next: HashMap<UrnState, BTreeSet<Rational>> = HashMap::new();
        for (state, probabilities) in &layer {
            for (colour, q) in state.transition_probabilities().into_iter().enumerate() {
                let entry = next.entry(state.advanced(colour)).or_default();
                entry.extend(probabilities.iter().map(|p| p * &q));
            }
        }
        layer = next;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn empty_path_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let path = sample_path(0, &mut rng);
        assert!(path.is_empty());
        assert_eq!(super::super::path_stats(&path).zeros, 1);
    }

    #[test]
    fn urn_transition_examples() {
        assert_eq!(
            UrnState::initial(2).transition_probabilities(),
            vec![ratio(1, 2), ratio(1, 2)]
        );
        let after_one = UrnState::initial(3).advanced(0);
        assert_eq!(
            after_one.transition_probabilities(),
            vec![ratio(2, 4), ratio(1, 4), ratio(1, 4)]
        );
    }

    #[test]
    fn urn_endpoints_uniform() {
        for n in 0..=30u64 {
            let law = urn_endpoint_distribution(2, n).unwrap();
            assert_eq!(law.len() as u64, n + 1);
            assert!(
                law.values().all(|p| *p == ratio(1, n as i64 + 1)),
                "n = {n}"
            );
        }
        let law = urn_endpoint_distribution(3, 6).unwrap();
        assert_eq!(law.len(), 28);
        assert!(law.values().all(|p| *p == ratio(1, 28)));
    }

    #[test]
    fn urn_path_law_small() {
        for n in 0..=12 {
            assert!(urn_path_law_matches_two_stage(2, n).unwrap());
        }
        assert!(urn_path_law_matches_two_stage(3, 8).unwrap());
        assert!(sample_path_urn(0, 3, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn trajectory_states_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let traj = sample_path_urn(3, 25, &mut rng).unwrap();
        let states = traj.states();
        assert_eq!(states.len(), 26);
        for (t, s) in states.iter().enumerate() {
            assert_eq!(s.t as usize, t);
            assert_eq!(s.counts.iter().sum::<u64>(), s.t);
        }
        assert_eq!(states.last().unwrap(), &traj.final_state());
        assert!(traj.to_lattice_path().is_none());
    }
}
