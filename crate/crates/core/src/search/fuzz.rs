use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::exact::{ExactScalar, PositiveVector};
use crate::inequality::{check_main, InequalityError, InequalityReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuzzError {
    #[error("empty vector length range {min}..={max}")]
    EmptyLengthRange { min: usize, max: usize },
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("k={k} is out of range for the smallest length n={n}")]
    FixedKOutOfRange { k: usize, n: usize },
    #[error("no k satisfies 1 < k < n for n in {min}..={max}")]
    NoInteriorK { min: usize, max: usize },
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error(transparent)]
    Inequality(#[from] InequalityError),
}

/// Which subset sizes each trial vector is checked at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KPolicy {
    /// k = 1..=n
    All,
    /// 1 < k < n
    Interior,
    Fixed(usize),
}

impl KPolicy {
    fn ks(self, n: usize) -> std::ops::RangeInclusive<usize> {
        match self {
            KPolicy::All => 1..=n,
            KPolicy::Interior => 2..=n.saturating_sub(1),
            KPolicy::Fixed(k) => k..=k,
        }
    }
}

impl fmt::Display for KPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KPolicy::All => f.write_str("all"),
            KPolicy::Interior => f.write_str("interior"),
            KPolicy::Fixed(k) => write!(f, "{k}"),
        }
    }
}

/// Named, seed-deterministic generators for trial vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distribution {
    /// Entries drawn uniformly from `1..=max`.
    UniformInteger { max: u64 },
    /// Entries `p/q` with `p` in `1..=max_numerator`, `q` in `1..=max_denominator`.
    RandomRational { max_numerator: u64, max_denominator: u64 },
    /// All ones except one coordinate moved to `1 + s*m*epsilon`, with a
    /// random sign `s` and multiplier `m` in `1..=4`.
    NearUniform { epsilon: ExactScalar },
    /// Every entry equal to one value drawn from `1..=max`.
    Constant { max: u64 },
}

impl Distribution {
    fn validate(&self) -> Result<(), FuzzError> {
        let bad = |msg: &str| Err(FuzzError::InvalidDistribution(msg.to_string()));
        match self {
            Distribution::UniformInteger { max } | Distribution::Constant { max } if *max == 0 => {
                bad("max must be >= 1")
            }
            Distribution::RandomRational {
                max_numerator,
                max_denominator,
            } if *max_numerator == 0 || *max_denominator == 0 => bad("numerator and denominator bounds must be >= 1"),
            Distribution::NearUniform { epsilon }
                if !epsilon.is_positive() || !(ExactScalar::from(4) * epsilon < ExactScalar::one()) =>
            {
                bad("epsilon must satisfy 0 < epsilon < 1/4")
            }
            _ => Ok(()),
        }
    }

    fn sample(&self, n: usize, rng: &mut ChaCha8Rng) -> PositiveVector {
        let entries = match self {
            Distribution::UniformInteger { max } => {
                (0..n).map(|_| ExactScalar::from(rng.random_range(1..=*max))).collect()
            }
            Distribution::RandomRational {
                max_numerator,
                max_denominator,
            } => (0..n)
                .map(|_| {
                    let p = rng.random_range(1..=*max_numerator);
                    let q = rng.random_range(1..=*max_denominator);
                    ExactScalar::new(p, q).expect("q >= 1")
                })
                .collect(),
            Distribution::NearUniform { epsilon } => {
                let mut entries = vec![ExactScalar::one(); n];
                let index = rng.random_range(0..n);
                let multiplier = ExactScalar::from(rng.random_range(1..=4u64));
                let shift = multiplier * epsilon;
                entries[index] = if rng.random_bool(0.5) {
                    ExactScalar::one() + shift
                } else {
                    ExactScalar::one() - shift
                };
                entries
            }
            Distribution::Constant { max } => vec![ExactScalar::from(rng.random_range(1..=*max)); n],
        };
        PositiveVector::new(entries).expect("generators only produce positive entries")
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::UniformInteger { max } => write!(f, "uniform-int(1..={max})"),
            Distribution::RandomRational {
                max_numerator,
                max_denominator,
            } => {
                write!(f, "rational(p<={max_numerator}, q<={max_denominator})")
            }
            Distribution::NearUniform { epsilon } => write!(f, "near-uniform(eps={epsilon})"),
            Distribution::Constant { max } => write!(f, "constant(1..={max})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzConfig {
    pub min_n: usize,
    pub max_n: usize,
    pub k_policy: KPolicy,
    pub trials: usize,
    pub distribution: Distribution,
    pub seed: u64,
}

impl FuzzConfig {
    fn validate(&self) -> Result<(), FuzzError> {
        if self.min_n == 0 || self.min_n > self.max_n {
            return Err(FuzzError::EmptyLengthRange {
                min: self.min_n,
                max: self.max_n,
            });
        }
        if self.trials == 0 {
            return Err(FuzzError::NoTrials);
        }
        match self.k_policy {
            KPolicy::Fixed(k) if k == 0 || k > self.min_n => {
                return Err(FuzzError::FixedKOutOfRange { k, n: self.min_n })
            }
            KPolicy::Interior if self.max_n < 3 => {
                return Err(FuzzError::NoInteriorK {
                    min: self.min_n,
                    max: self.max_n,
                })
            }
            _ => {}
        }
        self.distribution.validate()
    }
}

/// The smallest slack observed, with the instance that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlackWitness {
    pub slack: ExactScalar,
    pub vector: PositiveVector,
    pub k: usize,
    pub trial: usize,
}

impl SlackWitness {
    // Ties on slack break toward the lexicographically smaller witness.
    fn order(&self, other: &Self) -> Ordering {
        self.slack
            .cmp(&other.slack)
            .then_with(|| self.vector.len().cmp(&other.vector.len()))
            .then_with(|| self.k.cmp(&other.k))
            .then_with(|| self.vector.entries().cmp(other.vector.entries()))
            .then_with(|| self.trial.cmp(&other.trial))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzReport {
    pub trials: usize,
    /// Number of (vector, k) instances checked.
    pub checks: usize,
    pub violations: usize,
    pub min_slack: Option<SlackWitness>,
    /// Every violating instance, ordered by trial then k.
    pub witnesses: Vec<(usize, Violation)>,
    pub seed: u64,
    pub distribution: Distribution,
    pub min_n: usize,
    pub max_n: usize,
    pub k_policy: KPolicy,
}

#[derive(Default)]
struct Partial {
    checks: usize,
    min_slack: Option<SlackWitness>,
    witnesses: Vec<(usize, Violation)>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.checks += other.checks;
        self.witnesses.extend(other.witnesses);
        self.min_slack = match (self.min_slack, other.min_slack) {
            (Some(a), Some(b)) => Some(if b.order(&a) == Ordering::Less { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Runs the campaign through [`check_main`].
pub fn fuzz(config: &FuzzConfig) -> Result<FuzzReport, FuzzError> {
    fuzz_with(config, check_main)
}

/// Runs the campaign through a caller-supplied checker. Trials run in
/// parallel; trial `i` draws from its own ChaCha stream, so the report does
/// not depend on scheduling.
pub fn fuzz_with<F>(config: &FuzzConfig, check: F) -> Result<FuzzReport, FuzzError>
where
    F: Fn(&PositiveVector, usize) -> Result<InequalityReport, InequalityError> + Sync,
{
    config.validate()?;
    let merged = (0..config.trials)
        .into_par_iter()
        .map(|trial| run_trial(config, trial, &check))
        .try_reduce(Partial::default, |a, b| Ok(a.merge(b)))?;

    let mut witnesses = merged.witnesses;
    witnesses.sort_by_key(|(trial, v)| (*trial, v.k));
    Ok(FuzzReport {
        trials: config.trials,
        checks: merged.checks,
        violations: witnesses.len(),
        min_slack: merged.min_slack,
        witnesses,
        seed: config.seed,
        distribution: config.distribution.clone(),
        min_n: config.min_n,
        max_n: config.max_n,
        k_policy: config.k_policy,
    })
}

fn run_trial<F>(config: &FuzzConfig, trial: usize, check: &F) -> Result<Partial, FuzzError>
where
    F: Fn(&PositiveVector, usize) -> Result<InequalityReport, InequalityError>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial as u64);
    let n = rng.random_range(config.min_n..=config.max_n);
    let vector = config.distribution.sample(n, &mut rng);

    let mut partial = Partial::default();
    for k in config.k_policy.ks(n) {
        partial.checks += 1;
        match check(&vector, k) {
            Ok(report) => {
                let candidate = SlackWitness {
                    slack: report.slack().clone(),
                    vector: vector.clone(),
                    k,
                    trial,
                };
                partial = partial.merge(Partial {
                    checks: 0,
                    min_slack: Some(candidate),
                    witnesses: Vec::new(),
                });
            }
            Err(InequalityError::Violation(violation)) => partial.witnesses.push((trial, *violation)),
            Err(other) => return Err(other.into()),
        }
    }
    Ok(partial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequality::{lhs_main, rhs_main, Statement};

    fn config(min_n: usize, max_n: usize, k_policy: KPolicy, trials: usize, distribution: Distribution) -> FuzzConfig {
        FuzzConfig {
            min_n,
            max_n,
            k_policy,
            trials,
            distribution,
            seed: 42,
        }
    }

    #[test]
    fn integer_campaign_has_no_violations() {
        let cfg = config(2, 8, KPolicy::All, 1000, Distribution::UniformInteger { max: 100 });
        let report = fuzz(&cfg).unwrap();
        assert_eq!(report.trials, 1000);
        assert_eq!(report.violations, 0);
        assert!(report.checks >= 2000);
        // k = 1 is always checked, so the minimum slack is exactly zero
        assert!(report.min_slack.unwrap().slack.is_zero());
    }

    #[test]
    fn single_uniform_trial_has_zero_slack() {
        let cfg = config(4, 4, KPolicy::Fixed(2), 1, Distribution::Constant { max: 50 });
        let report = fuzz(&cfg).unwrap();
        assert_eq!(report.checks, 1);
        assert!(report.min_slack.unwrap().slack.is_zero());
    }

    #[test]
    fn near_uniform_is_strict_but_small() {
        let epsilon = ExactScalar::new(1, 1000).unwrap();
        let cfg = config(3, 3, KPolicy::Fixed(2), 500, Distribution::NearUniform { epsilon });
        let report = fuzz(&cfg).unwrap();
        assert_eq!(report.violations, 0);
        let min = report.min_slack.unwrap().slack;
        assert!(min.is_positive());
        assert!(min < ExactScalar::new(1, 10_000).unwrap());
    }

    #[test]
    fn deterministic_for_a_seed() {
        let cfg = config(
            2,
            6,
            KPolicy::Interior,
            200,
            Distribution::RandomRational {
                max_numerator: 30,
                max_denominator: 30,
            },
        );
        assert_eq!(fuzz(&cfg).unwrap(), fuzz(&cfg).unwrap());
        let other = FuzzConfig { seed: 7, ..cfg.clone() };
        assert_ne!(fuzz(&cfg).unwrap().min_slack, fuzz(&other).unwrap().min_slack);
    }

    #[test]
    fn inverted_checker_reports_violations() {
        let inverted = |v: &PositiveVector, k: usize| {
            InequalityReport::certify(Statement::MainTheorem, v, k, rhs_main(v, k)?, lhs_main(v, k)?)
        };
        let cfg = config(3, 5, KPolicy::Interior, 50, Distribution::UniformInteger { max: 100 });
        let report = fuzz_with(&cfg, inverted).unwrap();
        assert!(report.violations > 0);
        assert_eq!(report.violations, report.witnesses.len());
        assert!(report
            .witnesses
            .windows(2)
            .all(|w| (w[0].0, w[0].1.k) <= (w[1].0, w[1].1.k)));
        for (_, violation) in &report.witnesses {
            assert!(violation.lhs > violation.rhs);
        }
    }

    #[test]
    fn rejects_bad_configs() {
        let d = Distribution::UniformInteger { max: 10 };
        assert_eq!(
            fuzz(&config(5, 4, KPolicy::All, 1, d.clone())).unwrap_err(),
            FuzzError::EmptyLengthRange { min: 5, max: 4 }
        );
        assert_eq!(
            fuzz(&config(0, 4, KPolicy::All, 1, d.clone())).unwrap_err(),
            FuzzError::EmptyLengthRange { min: 0, max: 4 }
        );
        assert_eq!(
            fuzz(&config(2, 4, KPolicy::All, 0, d.clone())).unwrap_err(),
            FuzzError::NoTrials
        );
        assert_eq!(
            fuzz(&config(2, 4, KPolicy::Fixed(3), 1, d.clone())).unwrap_err(),
            FuzzError::FixedKOutOfRange { k: 3, n: 2 }
        );
        assert_eq!(
            fuzz(&config(2, 2, KPolicy::Interior, 1, d)).unwrap_err(),
            FuzzError::NoInteriorK { min: 2, max: 2 }
        );
        let eps = Distribution::NearUniform {
            epsilon: ExactScalar::new(1, 4).unwrap(),
        };
        assert!(matches!(
            fuzz(&config(3, 3, KPolicy::All, 1, eps)),
            Err(FuzzError::InvalidDistribution(_))
        ));
    }
}
