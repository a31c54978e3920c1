//! Self-maps on finite spaces and the structure of their iterates.
//!
//! Every orbit of a self-map on `n` points is eventually periodic. The same
//! holds for paired orbits `k -> (T^k x, T^k y)`, which live in the product
//! functional graph on `n^2` states; [`delta_trace`] walks that graph and
//! records the distances along it.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::FiniteBSpace;

/// A total function on `0..n`, stored as `table[i] = T(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SelfMap {
    table: Vec<usize>,
}

impl SelfMap {
    pub fn new(table: Vec<usize>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        if let Some(&index) = table.iter().find(|&&t| t >= n) {
            return Err(Error::IndexOutOfRange { index, n });
        }
        Ok(Self { table })
    }

    pub fn identity(n: usize) -> Self {
        Self { table: (0..n).collect() }
    }

    pub fn constant(n: usize, value: usize) -> Result<Self> {
        Self::new(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    /// `T^k(i)`.
    pub fn iterate(&self, mut i: usize, k: usize) -> usize {
        for _ in 0..k {
            i = self.table[i];
        }
        i
    }

    /// Ensures the map acts on `space`.
    pub fn check_against(&self, space: &FiniteBSpace) -> Result<()> {
        if self.len() != space.len() {
            return Err(Error::SizeMismatch { map: self.len(), space: space.len() });
        }
        Ok(())
    }
}

/// On-disk form of a map: `{"table": [1, 2, 2]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub table: Vec<usize>,
}

impl MapFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn into_map(self) -> Result<SelfMap> {
        SelfMap::new(self.table)
    }
}

impl From<&SelfMap> for MapFile {
    fn from(map: &SelfMap) -> Self {
        Self { table: map.table.clone() }
    }
}

/// Tail-plus-cycle decomposition of a single orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub pre_period: usize,
    pub period: usize,
    /// `T^0 x, ..., T^(pre_period + period - 1) x`, all distinct.
    pub path: Vec<usize>,
}

impl Orbit {
    /// `T^k x` for any `k`, read off the tail and cycle.
    pub fn at(&self, k: usize) -> usize {
        if k < self.pre_period {
            self.path[k]
        } else {
            self.path[self.pre_period + (k - self.pre_period) % self.period]
        }
    }

    /// The point the orbit settles on, if its cycle is a fixed point.
    pub fn limit(&self) -> Option<usize> {
        (self.period == 1).then(|| self.path[self.pre_period])
    }
}

pub fn orbit(map: &SelfMap, start: usize) -> Result<Orbit> {
    let n = map.len();
    if start >= n {
        return Err(Error::IndexOutOfRange { index: start, n });
    }
    let mut first_seen = vec![usize::MAX; n];
    let mut path = Vec::new();
    let mut x = start;
    while first_seen[x] == usize::MAX {
        first_seen[x] = path.len();
        path.push(x);
        x = map.apply(x);
    }
    let pre_period = first_seen[x];
    Ok(Orbit { pre_period, period: path.len() - pre_period, path })
}

/// When a paired orbit's distances become identically zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeIndex {
    /// `delta_k = 0` exactly for `k >= M`.
    At(usize),
    /// The cycle of the paired orbit carries positive distance.
    Never,
}

impl MergeIndex {
    pub fn finite(self) -> Option<usize> {
        match self {
            MergeIndex::At(m) => Some(m),
            MergeIndex::Never => None,
        }
    }
}

/// Distances along the paired orbit of `(x_i, x_j)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaTrace {
    pub pair: (usize, usize),
    /// `delta_k = d(T^k x_i, T^k x_j)` for `k < horizon`.
    pub deltas: Vec<f64>,
    /// Tail length of the paired orbit.
    pub pre_period: usize,
    /// Cycle length of the paired orbit.
    pub period: usize,
    pub merge_index: MergeIndex,
    /// `prefix_sums[n] = delta_0 + ... + delta_{n-1}`, for `n <= horizon`.
    pub prefix_sums: Vec<f64>,
}

impl DeltaTrace {
    /// `pre_period + period`; never exceeds `n^2`.
    pub fn horizon(&self) -> usize {
        self.deltas.len()
    }

    /// `delta_k` for any `k`, using the periodic continuation.
    pub fn delta(&self, k: usize) -> f64 {
        if k < self.pre_period {
            self.deltas[k]
        } else {
            self.deltas[self.pre_period + (k - self.pre_period) % self.period]
        }
    }

    /// Sum of `delta` over one cycle.
    pub fn cycle_sum(&self) -> f64 {
        self.deltas[self.pre_period..].iter().sum()
    }

    /// `sum_{k<n} delta_k` for any `n`. Only finite-horizon prefix sums are
    /// stored; past the horizon whole cycles are added on.
    pub fn partial_sum(&self, n: usize) -> f64 {
        if n <= self.horizon() {
            return self.prefix_sums[n];
        }
        let extra = n - self.horizon();
        let cycles = extra / self.period;
        let rest = extra % self.period;
        let cycle_start = self.pre_period;
        self.prefix_sums[self.horizon()]
            + cycles as f64 * self.cycle_sum()
            + self.deltas[cycle_start..cycle_start + rest].iter().sum::<f64>()
    }
}

pub fn delta_trace(space: &FiniteBSpace, map: &SelfMap, i: usize, j: usize) -> Result<DeltaTrace> {
    map.check_against(space)?;
    space.check_index(i)?;
    space.check_index(j)?;

    let n = space.len();
    let mut first_seen = vec![usize::MAX; n * n];
    let mut deltas = Vec::new();
    let (mut a, mut b) = (i, j);
    while first_seen[a * n + b] == usize::MAX {
        first_seen[a * n + b] = deltas.len();
        deltas.push(space.d(a, b));
        a = map.apply(a);
        b = map.apply(b);
    }
    let pre_period = first_seen[a * n + b];
    let period = deltas.len() - pre_period;

    let merge_index = if deltas[pre_period..].iter().all(|&d| d == 0.0) {
        let last_positive = deltas.iter().rposition(|&d| d != 0.0);
        MergeIndex::At(last_positive.map_or(0, |p| p + 1))
    } else {
        MergeIndex::Never
    };

    let mut prefix_sums = Vec::with_capacity(deltas.len() + 1);
    let mut acc = 0.0;
    prefix_sums.push(acc);
    for &d in &deltas {
        acc += d;
        prefix_sums.push(acc);
    }

    Ok(DeltaTrace { pair: (i, j), deltas, pre_period, period, merge_index, prefix_sums })
}
