//! Finite b-metric spaces.
//!
//! A b-metric relaxes the triangle inequality to
//! `d(x, z) <= s * (d(x, y) + d(y, z))` for a coefficient `s >= 1`. Spaces
//! here are explicit distance matrices over opaque point labels; all
//! arithmetic is done on indices.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative slack on the relaxed triangle inequality. Identity and symmetry
/// are compared exactly.
pub const TRIANGLE_RTOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// `d(x, y) = 0` iff `x = y`.
    Identity,
    /// `d(x, y) = d(y, x)`.
    Symmetry,
    /// `d(x, z) <= s (d(x, y) + d(y, z))`.
    Triangle,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Identity => "identity",
            Axiom::Symmetry => "symmetry",
            Axiom::Triangle => "triangle",
        })
    }
}

/// A single failed axiom instance.
///
/// `indices` is a pair for identity/symmetry and a triple `(i, j, k)` for the
/// triangle axiom. For identity, `lhs` is `d(i, j)` and `rhs` is `0`; for
/// symmetry they are `d(i, j)` and `d(j, i)`; for the triangle they are
/// `d(i, k)` and `s (d(i, j) + d(j, k))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Shape and range checks shared by every entry point. These are input
/// errors, not axiom violations.
fn check_matrix(dist: &[Vec<f64>]) -> Result<()> {
    let n = dist.len();
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    for (i, row) in dist.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NonSquare { row: i, len: row.len(), expected: n });
        }
        for (j, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteEntry { i, j });
            }
            if v < 0.0 {
                return Err(Error::NegativeEntry { i, j, value: v });
            }
        }
    }
    Ok(())
}

fn check_coefficient(s: f64) -> Result<()> {
    if !s.is_finite() || s < 1.0 {
        return Err(Error::CoefficientBelowOne(s));
    }
    Ok(())
}

fn identity_and_symmetry(dist: &[Vec<f64>], out: &mut Vec<Violation>) {
    let n = dist.len();
    for i in 0..n {
        for j in 0..n {
            let v = dist[i][j];
            if (i == j) != (v == 0.0) {
                out.push(Violation { axiom: Axiom::Identity, indices: vec![i, j], lhs: v, rhs: 0.0 });
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if dist[i][j] != dist[j][i] {
                out.push(Violation {
                    axiom: Axiom::Symmetry,
                    indices: vec![i, j],
                    lhs: dist[i][j],
                    rhs: dist[j][i],
                });
            }
        }
    }
}

/// Checks all three b-metric axioms over every pair and ordered triple and
/// returns every violation found, in index order.
pub fn validate_b_metric(dist: &[Vec<f64>], s: f64) -> Result<ValidationReport> {
    check_matrix(dist)?;
    check_coefficient(s)?;

    let mut violations = Vec::new();
    identity_and_symmetry(dist, &mut violations);

    let n = dist.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = dist[i][k];
                let rhs = s * (dist[i][j] + dist[j][k]);
                if lhs > rhs * (1.0 + TRIANGLE_RTOL) {
                    violations.push(Violation {
                        axiom: Axiom::Triangle,
                        indices: vec![i, j, k],
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }

    Ok(ValidationReport { valid: violations.is_empty(), violations })
}

/// Smallest admissible coefficient: the worst relaxed-triangle ratio over all
/// triples with a distinct middle point, floored at 1.
pub fn minimal_coefficient(dist: &[Vec<f64>]) -> Result<f64> {
    check_matrix(dist)?;
    let mut bad = Vec::new();
    identity_and_symmetry(dist, &mut bad);
    if let Some(v) = bad.first() {
        return Err(Error::NotSemimetric { i: v.indices[0], j: v.indices[1] });
    }

    let n = dist.len();
    let mut s: f64 = 1.0;
    for i in 0..n {
        for k in 0..n {
            if i == k {
                continue;
            }
            for j in 0..n {
                if j == i || j == k {
                    continue;
                }
                let den = dist[i][j] + dist[j][k];
                assert!(den > 0.0, "axiom (i) guarantees positive detour through a distinct point");
                s = s.max(dist[i][k] / den);
            }
        }
    }
    Ok(s)
}

/// A finite point set with a distance matrix that satisfies the b-metric
/// axioms for its coefficient `s`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiniteBSpace {
    points: Vec<String>,
    dist: Vec<Vec<f64>>,
    s: f64,
}

impl FiniteBSpace {
    /// Builds a space, rejecting matrices that fail validation at `s`.
    pub fn new(points: Vec<String>, dist: Vec<Vec<f64>>, s: f64) -> Result<Self> {
        let report = validate_b_metric(&dist, s)?;
        if points.len() != dist.len() {
            return Err(Error::LabelCount { labels: points.len(), size: dist.len() });
        }
        if !report.valid {
            return Err(Error::NotBMetric(Box::new(report)));
        }
        Ok(Self { points, dist, s })
    }

    /// Builds a space whose coefficient is [`minimal_coefficient`].
    pub fn with_minimal_coefficient(points: Vec<String>, dist: Vec<Vec<f64>>) -> Result<Self> {
        let s = minimal_coefficient(&dist)?;
        Self::new(points, dist, s)
    }

    /// Same as [`new`](Self::new) with labels `"0"`, `"1"`, ...
    pub fn from_matrix(dist: Vec<Vec<f64>>, s: f64) -> Result<Self> {
        let points = (0..dist.len()).map(|i| i.to_string()).collect();
        Self::new(points, dist, s)
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.dist
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }

    /// Smallest positive off-diagonal distance, `None` for a single point.
    /// A positive value means the induced topology is discrete.
    pub fn min_positive_distance(&self) -> Option<f64> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| self.dist[i][j])
            .reduce(f64::min)
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange { index, n: self.len() });
        }
        Ok(())
    }

    pub fn to_file(&self) -> SpaceFile {
        SpaceFile { points: self.points.clone(), dist: self.dist.clone(), s: Some(self.s) }
    }
}

/// On-disk form of a space: `{"points": [...], "dist": [[...]], "s": 1.0}`
/// with `s` optional.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceFile {
    pub points: Vec<String>,
    pub dist: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
}

impl SpaceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    /// Resolves into a space, computing the minimal coefficient when `s` is
    /// absent.
    pub fn into_space(self) -> Result<FiniteBSpace> {
        match self.s {
            Some(s) => FiniteBSpace::new(self.points, self.dist, s),
            None => FiniteBSpace::with_minimal_coefficient(self.points, self.dist),
        }
    }
}
