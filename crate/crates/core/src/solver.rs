//! Certified Picard iteration on caller-defined b-metric spaces.
//!
//! The caller supplies the map, the distance, the coefficient `s` and a
//! claimed PA modulus `alpha` with horizon `N`. From the first residuals the
//! solver derives the majorant `C` of the partial sums and from it
//!
//! ```text
//! d(x_n, x_m) <= C s alpha^n / (1 - s alpha)         (m > n)
//! d(x_n, z)   <= s * C s alpha^n / (1 - s alpha)
//! ```
//!
//! which only certifies anything when `s alpha < 1`. The claimed `alpha` is
//! not trusted: after the run the trace is checked against the partial-sum
//! recursion and the geometric decay it implies, and any violation revokes
//! the certificate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack used for the a posteriori checks on floating-point traces.
pub const CHECK_RTOL: f64 = 1e-12;

fn le_rel(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + CHECK_RTOL * rhs.abs()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopRule {
    /// Stop once `d(x_n, x_{n+1}) <= tolerance`.
    Residual,
    /// Stop once the distance-to-limit bound is `<= tolerance`.
    CertifiedBound,
    /// Both of the above.
    Both,
}

impl StopRule {
    fn needs_bound(self) -> bool {
        matches!(self, StopRule::CertifiedBound | StopRule::Both)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationConfig {
    /// Claimed contraction factor in `(0, 1)`.
    pub alpha: f64,
    /// b-metric coefficient, `>= 1`.
    pub s: f64,
    pub max_iter: usize,
    /// Absolute, in distance units.
    pub tolerance: f64,
    pub stop_rule: StopRule,
    /// Horizon `N` from which the averaged inequality is claimed to hold.
    pub horizon: usize,
}

impl IterationConfig {
    pub fn new(alpha: f64, s: f64) -> Self {
        Self { alpha, s, max_iter: 1000, tolerance: 1e-12, stop_rule: StopRule::CertifiedBound, horizon: 1 }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_stop_rule(mut self, stop_rule: StopRule) -> Self {
        self.stop_rule = stop_rule;
        self
    }

    pub fn with_horizon(mut self, horizon: usize) -> Self {
        self.horizon = horizon;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::AlphaOutOfRange(self.alpha));
        }
        if !self.s.is_finite() || self.s < 1.0 {
            return Err(Error::CoefficientBelowOne(self.s));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidConfig { parameter: "tolerance", message: format!("must be > 0, got {}", self.tolerance) });
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig { parameter: "max_iter", message: "must be at least 1".into() });
        }
        if self.horizon == 0 {
            return Err(Error::InvalidConfig { parameter: "horizon", message: "must be at least 1".into() });
        }
        Ok(())
    }

    pub fn s_alpha(&self) -> f64 {
        self.s * self.alpha
    }
}

/// Majorant of every partial sum `S_n = a_0 + ... + a_{n-1}` implied by the
/// recursion `S_{n+1} <= alpha S_n + a_0` for `n >= N`:
/// `C = S_N + a_0 / (1 - alpha)`. With `N = 1` this is
/// `a_0 (2 - alpha) / (1 - alpha)`.
pub fn partial_sum_majorant(residuals: &[f64], alpha: f64, horizon: usize) -> f64 {
    let a0 = residuals[0];
    if horizon == 1 {
        return a0 * (2.0 - alpha) / (1.0 - alpha);
    }
    let head: f64 = residuals[..horizon.min(residuals.len())].iter().sum();
    head + a0 / (1.0 - alpha)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecayCheck {
    pub holds: bool,
    /// `max_k a_k / alpha^k`.
    pub c_fit: f64,
    /// Index attaining `c_fit`.
    pub c_fit_index: usize,
    /// Closed-form majorant the fit is compared against.
    pub c_bound: f64,
    /// `c_fit > c_bound`: the claimed `alpha` looks dishonest.
    pub exceeds_c_bound: bool,
    /// First `k` with `a_k > c_bound alpha^k`.
    pub first_violation: Option<usize>,
}

/// Fits the smallest `C` with `a_k <= C alpha^k` over the trace and compares
/// it to `a_0 (2 - alpha) / (1 - alpha)`.
pub fn verify_decay(residuals: &[f64], alpha: f64) -> Result<DecayCheck> {
    if residuals.is_empty() {
        return Err(Error::EmptyTrace);
    }
    verify_decay_against(residuals, alpha, partial_sum_majorant(residuals, alpha, 1))
}

fn verify_decay_against(residuals: &[f64], alpha: f64, c_bound: f64) -> Result<DecayCheck> {
    if residuals.is_empty() {
        return Err(Error::EmptyTrace);
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if let Some(bad) = residuals.iter().find(|a| !(**a >= 0.0)) {
        return Err(Error::InvalidConfig { parameter: "residuals", message: format!("must be non-negative, got {bad}") });
    }

    let mut c_fit = 0.0;
    let mut c_fit_index = 0;
    let mut first_violation = None;
    let mut power = 1.0;
    for (k, &a) in residuals.iter().enumerate() {
        let ratio = if a == 0.0 {
            0.0
        } else if power == 0.0 {
            f64::INFINITY
        } else {
            a / power
        };
        if ratio > c_fit {
            c_fit = ratio;
            c_fit_index = k;
        }
        if first_violation.is_none() && !le_rel(a, c_bound * power) {
            first_violation = Some(k);
        }
        power *= alpha;
    }

    Ok(DecayCheck {
        holds: c_fit.is_finite(),
        c_fit,
        c_fit_index,
        c_bound,
        exceeds_c_bound: !le_rel(c_fit, c_bound),
        first_violation,
    })
}

/// First `n >= N` (1-based count of partial sums) where
/// `S_{n+1} > alpha S_n + a_0`.
pub fn recursion_violation(residuals: &[f64], alpha: f64, horizon: usize) -> Option<usize> {
    let a0 = *residuals.first()?;
    let mut s_n = 0.0;
    for (n, &a) in residuals.iter().enumerate() {
        // s_n = S_n here, S_{n+1} = s_n + a
        let next = s_n + a;
        if n >= horizon && !le_rel(next, alpha * s_n + a0) {
            return Some(n);
        }
        s_n = next;
    }
    None
}

/// Bound data for one Picard run. Everything needed to recompute the
/// bounds is stored, so the certificate can be audited independently.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceCertificate {
    pub alpha: f64,
    pub s: f64,
    pub horizon: usize,
    pub a0: f64,
    /// Majorant of the partial sums of residuals, see [`partial_sum_majorant`].
    pub c_bound: f64,
    pub s_alpha: f64,
    /// `s alpha < 1`.
    pub hypothesis_met: bool,
    /// Hypothesis met and no a posteriori check failed.
    pub certified: bool,
    pub partial_sums_bounded: bool,
    /// First `n` breaking `S_{n+1} <= alpha S_n + a_0`.
    pub recursion_violation: Option<usize>,
    pub decay: DecayCheck,
    /// `fixed_point_bound_at(iterations)` when certified.
    pub bound_at_stop: Option<f64>,
    pub note: &'static str,
}

const DISTANCE_TO_LIMIT_NOTE: &str = "distance-to-limit bound is the Cauchy bound inflated by one factor s \
     (b-metrics need not be continuous); it is conservative";

impl ConvergenceCertificate {
    fn prefactor(&self) -> f64 {
        self.c_bound * self.s / (1.0 - self.s_alpha)
    }

    /// `C s alpha^n / (1 - s alpha)`, bounding `d(x_n, x_m)` for all `m > n`.
    /// Infinite when `s alpha >= 1`.
    pub fn cauchy_bound_at(&self, n: usize) -> f64 {
        bound_at(self.prefactor(), self.alpha, self.hypothesis_met, n)
    }

    /// `s` times [`cauchy_bound_at`](Self::cauchy_bound_at), bounding the
    /// distance from `x_n` to the fixed point.
    pub fn fixed_point_bound_at(&self, n: usize) -> f64 {
        bound_at(self.s * self.prefactor(), self.alpha, self.hypothesis_met, n)
    }
}

fn bound_at(prefactor: f64, alpha: f64, hypothesis_met: bool, n: usize) -> f64 {
    if !hypothesis_met {
        return f64::INFINITY;
    }
    let mut power = 1.0;
    for _ in 0..n {
        power *= alpha;
    }
    prefactor * power
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Converged,
    MaxIterReached,
    /// The stopping rule fired but the bound chain does not back it.
    UncertifiedConverged,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedPointResult<P> {
    /// `x_iterations`.
    pub point: P,
    /// Number of map applications.
    pub iterations: usize,
    /// `a_k = d(x_k, x_{k+1})` for `k < iterations`.
    pub residual_trace: Vec<f64>,
    pub certificate: ConvergenceCertificate,
    pub status: SolveStatus,
}

/// Runs `x_{k+1} = map_fn(x_k)` from `x0` until the configured stop rule
/// fires or `max_iter` maps have been applied.
///
/// `dist_fn` must be a b-metric with coefficient `config.s` on the orbit,
/// and `map_fn` must be continuous; neither is checked.
pub fn picard_solve<P, F, D>(map_fn: F, dist_fn: D, x0: P, config: &IterationConfig) -> Result<FixedPointResult<P>>
where
    F: Fn(&P) -> P,
    D: Fn(&P, &P) -> f64,
{
    config.validate()?;
    let hypothesis_met = config.s_alpha() < 1.0;
    if config.stop_rule.needs_bound() && !hypothesis_met {
        return Err(Error::HypothesisViolation { s_alpha: config.s_alpha() });
    }

    let mut x = x0;
    let mut residuals: Vec<f64> = Vec::new();
    let mut stopped = false;
    while residuals.len() < config.max_iter {
        let next = map_fn(&x);
        let a = dist_fn(&x, &next);
        if !(a >= 0.0) || a.is_infinite() {
            return Err(Error::InvalidConfig {
                parameter: "dist_fn",
                message: format!("returned {a} at iteration {}", residuals.len()),
            });
        }
        residuals.push(a);
        x = next;

        let n = residuals.len();
        let residual_ok = a <= config.tolerance;
        let bound_ok = || {
            n >= config.horizon && {
                let c = partial_sum_majorant(&residuals, config.alpha, config.horizon);
                let prefactor = config.s * c * config.s / (1.0 - config.s_alpha());
                bound_at(prefactor, config.alpha, hypothesis_met, n) <= config.tolerance
            }
        };
        stopped = match config.stop_rule {
            StopRule::Residual => residual_ok,
            StopRule::CertifiedBound => bound_ok(),
            StopRule::Both => residual_ok && bound_ok(),
        };
        if stopped {
            break;
        }
    }

    let iterations = residuals.len();
    let certificate = certify(&residuals, config, hypothesis_met, iterations)?;
    let status = match (stopped, certificate.certified) {
        (false, _) => SolveStatus::MaxIterReached,
        (true, true) => SolveStatus::Converged,
        (true, false) => SolveStatus::UncertifiedConverged,
    };
    Ok(FixedPointResult { point: x, iterations, residual_trace: residuals, certificate, status })
}

fn certify(residuals: &[f64], config: &IterationConfig, hypothesis_met: bool, iterations: usize) -> Result<ConvergenceCertificate> {
    let alpha = config.alpha;
    let c_bound = partial_sum_majorant(residuals, alpha, config.horizon);
    let decay = verify_decay_against(residuals, alpha, c_bound)?;
    let recursion_violation = recursion_violation(residuals, alpha, config.horizon);

    let mut partial = 0.0;
    let mut partial_sums_bounded = true;
    for &a in residuals {
        partial += a;
        partial_sums_bounded &= le_rel(partial, c_bound);
    }

    let certified = hypothesis_met
        && partial_sums_bounded
        && recursion_violation.is_none()
        && !decay.exceeds_c_bound
        && decay.first_violation.is_none();

    let mut cert = ConvergenceCertificate {
        alpha,
        s: config.s,
        horizon: config.horizon,
        a0: residuals[0],
        c_bound,
        s_alpha: config.s_alpha(),
        hypothesis_met,
        certified,
        partial_sums_bounded,
        recursion_violation,
        decay,
        bound_at_stop: None,
        note: DISTANCE_TO_LIMIT_NOTE,
    };
    if certified {
        cert.bound_at_stop = Some(cert.fixed_point_bound_at(iterations));
    }
    Ok(cert)
}
