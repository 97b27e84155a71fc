use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::ratio;
use crate::exact::{ExactScalar, PositiveVector};
use crate::inequality::{lhs_main, rhs_main, InequalityError, Statement, Violation};
use crate::symfun::KSubsets;

/// Lower bound kept on every coordinate by [`project_to_simplex`].
pub const COORDINATE_FLOOR: f64 = 1e-9;

const ARMIJO: f64 = 1e-4;
const MAX_BACKTRACKS: usize = 80;
// Accepted steps in a row that leave the float ratio unchanged.
const MAX_FLAT_STEPS: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("invalid search config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Inequality(#[from] InequalityError),
    #[error("exact recheck of the search endpoint failed: {0}")]
    ExactRecheck(Box<Violation>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub n: usize,
    pub k: usize,
    pub max_iterations: usize,
    /// Initial trial step of the backtracking line search.
    pub step_size: f64,
    /// Stop once the tangent-space gradient has sup-norm at most this.
    pub tolerance: f64,
    pub seed: u64,
    /// Starting point; drawn uniformly from the simplex with `seed` when absent.
    pub start: Option<Vec<f64>>,
}

impl SearchConfig {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            max_iterations: 10_000,
            step_size: 1.0,
            tolerance: 1e-10,
            seed: 0,
            start: None,
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        let bad = |msg: String| Err(SearchError::InvalidConfig(msg));
        if !(1 < self.k && self.k < self.n) {
            return bad(format!("need 1 < k < n, got k={} n={}", self.k, self.n));
        }
        if !(self.step_size.is_finite() && self.step_size > 0.0) {
            return bad(format!("step size must be positive, got {}", self.step_size));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return bad(format!("tolerance must be positive, got {}", self.tolerance));
        }
        if let Some(start) = &self.start {
            if start.len() != self.n {
                return bad(format!("start has {} coordinates, expected {}", start.len(), self.n));
            }
            if start.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
                return bad("start coordinates must be positive and finite".into());
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceStep {
    pub ratio: f64,
    /// Accepted step length; zero for the starting point.
    pub step: f64,
    /// Halvings the line search needed before accepting.
    pub backtracks: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Tangent-space gradient within tolerance.
    GradientTolerance,
    /// The line search can no longer find a step that raises the float
    /// ratio; the point is stationary to float precision.
    NoFloatProgress,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    /// Best point found, on the simplex.
    pub argmax: Vec<f64>,
    pub ratio: f64,
    /// Ratio at `argmax` after converting each coordinate to its exact
    /// binary rational value.
    pub exact_ratio: ExactScalar,
    /// Accepted ascent steps.
    pub iterations: usize,
    /// False only when the iteration limit was hit.
    pub converged: bool,
    pub stop_reason: StopReason,
    pub gradient_norm: f64,
    pub trace: Vec<TraceStep>,
}

/// `(lhs, rhs)` of the main inequality in floating point.
fn float_sides(x: &[f64], k: usize) -> (f64, f64) {
    let n = x.len();
    let mut lhs = 0.0;
    for s in KSubsets::new(n, k).expect("k validated by caller") {
        let (sum, product) = s
            .indices()
            .iter()
            .fold((0.0, 1.0), |(sum, product), &i| (sum + x[i], product * x[i]));
        lhs += product / sum;
    }
    let total: f64 = x.iter().sum();
    let rhs = n as f64 / k as f64 * elementary_symmetric_f64(x.iter().copied(), k) / total;
    (lhs, rhs)
}

fn elementary_symmetric_f64(values: impl Iterator<Item = f64>, k: usize) -> f64 {
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for (m, a) in values.enumerate() {
        for j in (1..=k.min(m + 1)).rev() {
            e[j] += a * e[j - 1];
        }
    }
    e[k]
}

/// Float ratio `lhs / rhs`. `k` must lie in `1..=x.len()`.
pub fn float_ratio(x: &[f64], k: usize) -> f64 {
    let (lhs, rhs) = float_sides(x, k);
    lhs / rhs
}

/// Analytic gradient of [`float_ratio`] in the ambient coordinates.
pub fn float_ratio_gradient(x: &[f64], k: usize) -> Vec<f64> {
    let n = x.len();
    let (lhs, rhs) = float_sides(x, k);
    let total: f64 = x.iter().sum();
    let e_k = elementary_symmetric_f64(x.iter().copied(), k);
    let scale = n as f64 / k as f64;

    let mut d_lhs = vec![0.0; n];
    for s in KSubsets::new(n, k).expect("k validated by caller") {
        let idx = s.indices();
        let sum: f64 = idx.iter().map(|&i| x[i]).sum();
        for &i in idx {
            let others: f64 = idx.iter().filter(|&&j| j != i).map(|&j| x[j]).product();
            let product = others * x[i];
            d_lhs[i] += others / sum - product / (sum * sum);
        }
    }

    (0..n)
        .map(|i| {
            let e_without =
                elementary_symmetric_f64(x.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v), k - 1);
            let d_rhs = scale * (e_without * total - e_k) / (total * total);
            (d_lhs[i] * rhs - lhs * d_rhs) / (rhs * rhs)
        })
        .collect()
}

/// Euclidean projection onto `{x : sum(x) = 1, x_i >= COORDINATE_FLOOR}`.
pub fn project_to_simplex(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mass = 1.0 - n as f64 * COORDINATE_FLOOR;
    let mut sorted: Vec<f64> = v.iter().map(|x| x - COORDINATE_FLOOR).collect();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (i, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let candidate = (cumulative - mass) / (i + 1) as f64;
        if u - candidate > 0.0 {
            theta = candidate;
        }
    }
    v.iter()
        .map(|x| (x - COORDINATE_FLOOR - theta).max(0.0) + COORDINATE_FLOOR)
        .collect()
}

fn tangent(gradient: &[f64]) -> Vec<f64> {
    let mean = gradient.iter().sum::<f64>() / gradient.len() as f64;
    gradient.iter().map(|g| g - mean).collect()
}

fn sup_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn random_simplex_point(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // normalized exponentials are uniform on the simplex
    let draws: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = draws.iter().sum();
    draws.iter().map(|d| d / total).collect()
}

/// Projected gradient ascent of the float ratio over the simplex, with an
/// Armijo backtracking line search. Every accepted step has a ratio no
/// smaller than the previous one.
pub fn maximize_ratio(config: &SearchConfig) -> Result<SearchResult, SearchError> {
    config.validate()?;
    let k = config.k;
    let mut x = project_to_simplex(&match &config.start {
        Some(start) => {
            let total: f64 = start.iter().sum();
            start.iter().map(|s| s / total).collect()
        }
        None => random_simplex_point(config.n, config.seed),
    });
    let mut value = float_ratio(&x, k);
    let mut trace = vec![TraceStep {
        ratio: value,
        step: 0.0,
        backtracks: 0,
    }];
    let mut step = config.step_size;
    let mut iterations = 0;
    let mut direction = tangent(&float_ratio_gradient(&x, k));
    let mut gradient_norm = sup_norm(&direction);
    let mut flat_steps = 0;

    let stop_reason = loop {
        if gradient_norm <= config.tolerance {
            break StopReason::GradientTolerance;
        }
        if iterations >= config.max_iterations {
            break StopReason::IterationLimit;
        }
        let mut backtracks = 0;
        let accepted = loop {
            let candidate = project_to_simplex(
                &x.iter()
                    .zip(&direction)
                    .map(|(xi, gi)| xi + step * gi)
                    .collect::<Vec<_>>(),
            );
            let gain: f64 = candidate
                .iter()
                .zip(&x)
                .zip(&direction)
                .map(|((c, xi), g)| (c - xi) * g)
                .sum();
            let candidate_value = float_ratio(&candidate, k);
            if candidate_value >= value + ARMIJO * gain && candidate_value >= value {
                break Some((candidate, candidate_value));
            }
            backtracks += 1;
            step *= 0.5;
            if backtracks > MAX_BACKTRACKS {
                break None;
            }
        };
        let Some((candidate, candidate_value)) = accepted else {
            break StopReason::NoFloatProgress;
        };
        flat_steps = if candidate_value > value { 0 } else { flat_steps + 1 };
        if candidate == x || flat_steps >= MAX_FLAT_STEPS {
            break StopReason::NoFloatProgress;
        }
        x = candidate;
        value = candidate_value;
        iterations += 1;
        trace.push(TraceStep {
            ratio: value,
            step,
            backtracks,
        });
        step = (step * 2.0).min(config.step_size);
        direction = tangent(&float_ratio_gradient(&x, k));
        gradient_norm = sup_norm(&direction);
    };

    let exact_point = PositiveVector::new(
        x.iter()
            .map(|&xi| ExactScalar::from_f64(xi).expect("coordinates are finite"))
            .collect(),
    )
    .expect("projection keeps coordinates positive");
    let exact_ratio = ratio(&exact_point, k)?;
    if exact_ratio > ExactScalar::one() {
        return Err(SearchError::ExactRecheck(Box::new(Violation {
            statement: Statement::MainTheorem,
            k,
            lhs: lhs_main(&exact_point, k)?,
            rhs: rhs_main(&exact_point, k)?,
            vector: exact_point,
        })));
    }

    Ok(SearchResult {
        argmax: x,
        ratio: value,
        exact_ratio,
        iterations,
        converged: stop_reason != StopReason::IterationLimit,
        stop_reason,
        gradient_norm,
        trace,
    })
}
