//! Banach, Kannan and path-averaged (PA) contraction classes on finite
//! b-metric spaces.
//!
//! Each class gets its minimal modulus together with the pair that forces
//! it. Thresholds are strict and compared exactly:
//!
//! | class  | member iff                     |
//! |--------|--------------------------------|
//! | Banach | `beta_min < 1`                 |
//! | Kannan | `beta_min < 1 / (2 s)`         |
//! | PA     | every paired orbit merges      |
//!
//! The PA test rests on a finite-space fact: a pair whose distances never
//! reach zero has both partial sums of the averaged inequality growing with
//! the same slope, so no `alpha < 1` can hold for all large `n`. When every
//! pair does merge, the ratio of the two sums is constant past the merge
//! index, which gives the exact infimum of admissible `alpha`.
//! [`pa_check_direct`] checks the inequality literally and is kept as an
//! independent oracle for [`pa_minimal_alpha`].

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::mapping::{delta_trace, MergeIndex, SelfMap};
use crate::space::FiniteBSpace;

pub type Pair = (usize, usize);

fn pairs(n: usize) -> impl Iterator<Item = Pair> {
    (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (i, j)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BanachModulus {
    /// `max d(Ti, Tj) / d(i, j)` over distinct pairs; `0` on one point.
    pub beta_min: f64,
    /// First pair (lexicographic) attaining the max; `None` on one point.
    pub witness: Option<Pair>,
}

pub fn banach_modulus(space: &FiniteBSpace, map: &SelfMap) -> Result<BanachModulus> {
    map.check_against(space)?;
    let mut best = BanachModulus { beta_min: 0.0, witness: None };
    for (i, j) in pairs(space.len()) {
        let ratio = space.d(map.apply(i), map.apply(j)) / space.d(i, j);
        if best.witness.is_none() || ratio > best.beta_min {
            best = BanachModulus { beta_min: ratio, witness: Some((i, j)) };
        }
    }
    Ok(best)
}

/// A Kannan constant, which is unbounded when some pair of fixed points
/// (or a pair with both self-displacements zero) is moved apart.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub enum KannanBound {
    Finite(f64),
    Unbounded,
}

impl KannanBound {
    pub fn is_below(self, threshold: f64) -> bool {
        match self {
            KannanBound::Finite(b) => b < threshold,
            KannanBound::Unbounded => false,
        }
    }
}

impl fmt::Display for KannanBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KannanBound::Finite(b) => write!(f, "{b}"),
            KannanBound::Unbounded => f.write_str("infinity"),
        }
    }
}

/// Finite values as JSON numbers, the unbounded case as `"infinity"`.
impl Serialize for KannanBound {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            KannanBound::Finite(b) => serializer.serialize_f64(*b),
            KannanBound::Unbounded => serializer.serialize_str("infinity"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KannanModulus {
    pub beta_min: KannanBound,
    /// First pair attaining `beta_min`; `None` when no pair constrains.
    pub witness: Option<Pair>,
}

/// Smallest `beta` with `d(Ti, Tj) <= beta (d(i, Ti) + d(j, Tj))` for one
/// pair; `None` when `d(Ti, Tj) = 0` and the pair imposes nothing.
pub fn kannan_constraint(space: &FiniteBSpace, map: &SelfMap, i: usize, j: usize) -> Result<Option<KannanBound>> {
    map.check_against(space)?;
    space.check_index(i)?;
    space.check_index(j)?;
    let (ti, tj) = (map.apply(i), map.apply(j));
    let num = space.d(ti, tj);
    if num == 0.0 {
        return Ok(None);
    }
    let den = space.d(i, ti) + space.d(j, tj);
    Ok(Some(if den == 0.0 { KannanBound::Unbounded } else { KannanBound::Finite(num / den) }))
}

/// Worst [`kannan_constraint`] over all pairs.
pub fn kannan_modulus(space: &FiniteBSpace, map: &SelfMap) -> Result<KannanModulus> {
    map.check_against(space)?;
    let mut best = KannanModulus { beta_min: KannanBound::Finite(0.0), witness: None };
    for (i, j) in pairs(space.len()) {
        let Some(bound) = kannan_constraint(space, map, i, j)? else {
            continue;
        };
        if best.witness.is_none() || bound > best.beta_min {
            best = KannanModulus { beta_min: bound, witness: Some((i, j)) };
        }
        if best.beta_min == KannanBound::Unbounded {
            break;
        }
    }
    Ok(best)
}

pub fn kannan_threshold(s: f64) -> f64 {
    1.0 / (2.0 * s)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PaModulus {
    /// Every paired orbit merges.
    Member {
        /// Infimum of admissible `alpha` at horizon `n_min`; may be `0`.
        alpha_min: f64,
        /// Largest merge index over all pairs, at least 1.
        n_min: usize,
        /// First pair attaining `alpha_min`; `None` when it is `0`.
        witness: Option<Pair>,
    },
    /// Some pair never merges, so no `alpha < 1` works.
    NotPa { witness: Pair },
}

impl PaModulus {
    pub fn is_member(&self) -> bool {
        matches!(self, PaModulus::Member { .. })
    }

    pub fn alpha_min(&self) -> Option<f64> {
        match *self {
            PaModulus::Member { alpha_min, .. } => Some(alpha_min),
            PaModulus::NotPa { .. } => None,
        }
    }

    pub fn n_min(&self) -> Option<usize> {
        match *self {
            PaModulus::Member { n_min, .. } => Some(n_min),
            PaModulus::NotPa { .. } => None,
        }
    }
}

/// Exact minimal PA modulus.
///
/// For a pair merging at `M` with total distance `P`, both sides of the
/// averaged inequality are frozen for `n >= M`, at `P - delta_0` and `P`.
/// So with `N` at least every merge index the admissible `alpha` are exactly
/// those at or above `max (P - delta_0) / P`.
pub fn pa_minimal_alpha(space: &FiniteBSpace, map: &SelfMap) -> Result<PaModulus> {
    map.check_against(space)?;
    let mut alpha_min = 0.0;
    let mut n_min = 1;
    let mut witness = None;
    for (i, j) in pairs(space.len()) {
        let trace = delta_trace(space, map, i, j)?;
        let MergeIndex::At(m) = trace.merge_index else {
            return Ok(PaModulus::NotPa { witness: (i, j) });
        };
        n_min = n_min.max(m);
        let total = trace.prefix_sums[m];
        let shifted = total - trace.deltas[0];
        if shifted == 0.0 {
            continue;
        }
        let ratio = shifted / total;
        if ratio > alpha_min {
            alpha_min = ratio;
            witness = Some((i, j));
        }
    }
    Ok(PaModulus::Member { alpha_min, n_min, witness })
}

/// Where the literal averaged inequality first failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureAt {
    /// `sum_{k=1}^{n} delta_k > alpha * sum_{k=0}^{n-1} delta_k` at this `n`.
    N(usize),
    /// The cycle carries positive distance, so the ratio tends to 1.
    Asymptotic,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PaFailure {
    pub pair: Pair,
    pub at: FailureAt,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PaCheck {
    pub holds: bool,
    pub failure: Option<PaFailure>,
}

/// Checks the averaged inequality
/// `sum_{k=0}^{n-1} d(T^{k+1}x, T^{k+1}y) <= alpha sum_{k=0}^{n-1} d(T^k x, T^k y)`
/// for every ordered pair and every `n >= n_start`, by direct simulation.
///
/// Each pair is walked until its state in `X x X` repeats, at step `H`. If
/// the cycle carries positive distance both sums grow with the same slope
/// and the inequality fails for all large `n`, reported as
/// [`FailureAt::Asymptotic`]. Otherwise both sums are frozen past `H + 1`,
/// so scanning `n_start ..= max(n_start, H + 1)` is complete.
pub fn pa_check_direct(space: &FiniteBSpace, map: &SelfMap, alpha: f64, n_start: usize) -> Result<PaCheck> {
    map.check_against(space)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if n_start == 0 {
        return Err(Error::InvalidConfig { parameter: "n_start", message: "must be at least 1".into() });
    }

    let n = space.len();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            if let Some(at) = check_pair(space, map, x, y, alpha, n_start) {
                return Ok(PaCheck { holds: false, failure: Some(PaFailure { pair: (x, y), at }) });
            }
        }
    }
    Ok(PaCheck { holds: true, failure: None })
}

fn check_pair(space: &FiniteBSpace, map: &SelfMap, x: usize, y: usize, alpha: f64, n_start: usize) -> Option<FailureAt> {
    let n = space.len();
    let mut step_of = vec![None; n * n];
    let mut states = Vec::new();
    let (mut a, mut b) = (x, y);
    let repeat_step = loop {
        if let Some(step) = step_of[a * n + b] {
            break step;
        }
        step_of[a * n + b] = Some(states.len());
        states.push((a, b));
        a = map.apply(a);
        b = map.apply(b);
    };
    let horizon = states.len();
    let cycle = &states[repeat_step..];

    let state_at = |k: usize| {
        if k < horizon {
            states[k]
        } else {
            cycle[(k - repeat_step) % cycle.len()]
        }
    };
    let delta = |k: usize| {
        let (u, v) = state_at(k);
        space.d(u, v)
    };

    let cycle_sum: f64 = cycle.iter().map(|&(u, v)| space.d(u, v)).sum();
    if cycle_sum > 0.0 {
        return Some(FailureAt::Asymptotic);
    }

    let last = n_start.max(horizon + 1);
    for m in n_start..=last {
        let lhs: f64 = (1..=m).map(delta).sum();
        let rhs: f64 = (0..m).map(delta).sum();
        if lhs > alpha * rhs {
            return Some(FailureAt::N(m));
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BanachVerdict {
    pub is_member: bool,
    pub beta_min: f64,
    pub witness: Option<Pair>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KannanVerdict {
    pub is_member: bool,
    pub beta_min: KannanBound,
    pub threshold: f64,
    pub witness: Option<Pair>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PaVerdict {
    pub is_member: bool,
    /// `null` when not a member.
    pub alpha_min: Option<f64>,
    /// `null` when not a member.
    pub n_min: Option<usize>,
    pub witness: Option<Pair>,
}

impl From<PaModulus> for PaVerdict {
    fn from(m: PaModulus) -> Self {
        match m {
            PaModulus::Member { alpha_min, n_min, witness } => {
                PaVerdict { is_member: true, alpha_min: Some(alpha_min), n_min: Some(n_min), witness }
            }
            PaModulus::NotPa { witness } => {
                PaVerdict { is_member: false, alpha_min: None, n_min: None, witness: Some(witness) }
            }
        }
    }
}

/// Consistency checks between the three classes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CrossChecks {
    /// `banach => pa` held for this map.
    pub banach_implies_pa: bool,
    /// `pa_check_direct(beta_min, 1)`, run when `beta_min` lies in `(0, 1)`.
    pub banach_alpha_at_horizon_one: Option<bool>,
}

impl CrossChecks {
    pub fn ok(&self) -> bool {
        self.banach_implies_pa && self.banach_alpha_at_horizon_one != Some(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub s: f64,
    pub banach: BanachVerdict,
    pub kannan: KannanVerdict,
    pub pa: PaVerdict,
    pub cross_checks: CrossChecks,
}

pub fn classify_all(space: &FiniteBSpace, map: &SelfMap) -> Result<ClassificationReport> {
    let b = banach_modulus(space, map)?;
    let k = kannan_modulus(space, map)?;
    let p = pa_minimal_alpha(space, map)?;

    let banach = BanachVerdict { is_member: b.beta_min < 1.0, beta_min: b.beta_min, witness: b.witness };
    let threshold = kannan_threshold(space.s());
    let kannan =
        KannanVerdict { is_member: k.beta_min.is_below(threshold), beta_min: k.beta_min, threshold, witness: k.witness };
    let pa = PaVerdict::from(p);

    let banach_alpha_at_horizon_one = if b.beta_min > 0.0 && b.beta_min < 1.0 {
        Some(pa_check_direct(space, map, b.beta_min, 1)?.holds)
    } else {
        None
    };
    let cross_checks =
        CrossChecks { banach_implies_pa: !banach.is_member || pa.is_member, banach_alpha_at_horizon_one };

    Ok(ClassificationReport { s: space.s(), banach, kannan, pa, cross_checks })
}
