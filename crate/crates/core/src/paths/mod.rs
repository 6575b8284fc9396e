//! Random ±1 lattice paths under the two-stage model: the endpoint height is
//! uniform over the `n + 1` reachable values, and given the endpoint every
//! path is equally likely.

mod enumerate;
mod formulas;
mod sample;

use std::fmt;

pub use enumerate::{enumerate_paths, PathEnumeration};
pub use formulas::{
    conditional_expected_zeros, expected_up_from_zero, expected_zeros_closed,
    expected_zeros_double_sum, identity_quadruple, point_probability, zeros_distribution,
    IdentityQuadruple,
};
pub use sample::{
    sample_path, sample_path_urn, urn_endpoint_distribution, urn_path_law_matches_two_stage,
    UrnState, UrnTrajectory,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    pub fn delta(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Heights at `t = 0..=n`, starting with 0.
    pub fn heights(&self) -> impl Iterator<Item = i64> + '_ {
        std::iter::once(0).chain(self.steps.iter().scan(0i64, |h, s| {
            *h += s.delta();
            Some(*h)
        }))
    }

    pub fn endpoint(&self) -> i64 {
        self.steps.iter().map(|s| s.delta()).sum()
    }

    pub fn down_steps(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::Down).count()
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            f.write_str(match step {
                Step::Up => "U",
                Step::Down => "D",
            })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for LatticePath {
    type Err = char;

    fn from_str(s: &str) -> Result<Self, char> {
        s.chars()
            .map(|c| match c {
                'U' | 'u' | '+' => Ok(Step::Up),
                'D' | 'd' | '-' => Ok(Step::Down),
                other => Err(other),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(LatticePath::new)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PathStats {
    /// Times `t` in `0..=n` with height 0, the origin included.
    pub zeros: usize,
    /// Times `t < n` at height 0 followed by an up-step.
    pub up_from_zero: usize,
}

pub fn path_stats(path: &LatticePath) -> PathStats {
    let mut stats = PathStats {
        zeros: 1,
        up_from_zero: 0,
    };
    let mut height = 0i64;
    for &step in path.steps() {
        if height == 0 && step == Step::Up {
            stats.up_from_zero += 1;
        }
        height += step.delta();
        if height == 0 {
            stats.zeros += 1;
        }
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(s: &str) -> PathStats {
        path_stats(&s.parse().unwrap())
    }

    #[test]
    fn hand_traced_stats() {
        assert_eq!(
            stats("UU"),
            PathStats {
                zeros: 1,
                up_from_zero: 1
            }
        );
        assert_eq!(
            stats("DU"),
            PathStats {
                zeros: 2,
                up_from_zero: 0
            }
        );
        assert_eq!(
            stats("UD"),
            PathStats {
                zeros: 2,
                up_from_zero: 1
            }
        );
        assert_eq!(
            stats(""),
            PathStats {
                zeros: 1,
                up_from_zero: 0
            }
        );
        // The path drawn in the W_n/V correspondence figure.
        assert_eq!(
            stats("UUDDDUDDU"),
            PathStats {
                zeros: 3,
                up_from_zero: 1
            }
        );
    }

    #[test]
    fn heights_and_endpoint() {
        let path: LatticePath = "UUDDDU".parse().unwrap();
        assert_eq!(
            path.heights().collect::<Vec<_>>(),
            vec![0, 1, 2, 1, 0, -1, 0]
        );
        assert_eq!(path.endpoint(), 0);
        assert_eq!(path.down_steps(), 3);
        assert_eq!(path.to_string(), "UUDDDU");
    }
}
