//! Space generators, exhaustive self-map enumeration and the class census.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::classify::{classify_all, ClassificationReport};
use crate::error::{Error, Result};
use crate::mapping::SelfMap;
use crate::oracle::{verify_theorem, TheoremVerdict};
use crate::space::{minimal_coefficient, validate_b_metric, FiniteBSpace};

/// Largest `n` for which all `n^n` self-maps are enumerated (`6^6 = 46656`).
pub const ENUMERATION_LIMIT: usize = 6;

/// Recorded alongside generated data so runs can be reproduced elsewhere.
pub const PRNG_ALGORITHM: &str = "ChaCha8Rng::seed_from_u64";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceKind {
    /// All off-diagonal distances 1.
    Discrete,
    /// `|i - j|^p` on the integers `0..n`.
    PowerMetric { p: f64 },
    /// Shortest-path metric of a complete graph with weights drawn from
    /// `[1, 1 + spread]`, raised to the power `p`.
    RandomPerturbed { spread: f64, p: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub n: usize,
    #[serde(flatten)]
    pub kind: SpaceKind,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn discrete(n: usize) -> Self {
        Self { n, kind: SpaceKind::Discrete, seed: 0 }
    }

    pub fn power_metric(n: usize, p: f64) -> Self {
        Self { n, kind: SpaceKind::PowerMetric { p }, seed: 0 }
    }

    pub fn random_perturbed(n: usize, spread: f64, p: f64, seed: u64) -> Self {
        Self { n, kind: SpaceKind::RandomPerturbed { spread, p }, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EmptySpace);
        }
        let check_p = |p: f64| {
            if p.is_finite() && p >= 1.0 {
                Ok(())
            } else {
                Err(Error::InvalidConfig { parameter: "p", message: format!("exponent must be >= 1, got {p}") })
            }
        };
        match self.kind {
            SpaceKind::Discrete => Ok(()),
            SpaceKind::PowerMetric { p } => check_p(p),
            SpaceKind::RandomPerturbed { spread, p } => {
                if !(spread.is_finite() && spread >= 0.0) {
                    return Err(Error::InvalidConfig {
                        parameter: "spread",
                        message: format!("must be finite and >= 0, got {spread}"),
                    });
                }
                check_p(p)
            }
        }
    }
}

fn pow(base: f64, p: f64) -> f64 {
    if p.fract() == 0.0 && p <= i32::MAX as f64 {
        base.powi(p as i32)
    } else {
        base.powf(p)
    }
}

/// All-pairs shortest paths on a complete weighted graph.
fn shortest_path_completion(mut d: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let n = d.len();
    for via in 0..n {
        for i in 0..n {
            for k in 0..n {
                let through = d[i][via] + d[via][k];
                if through < d[i][k] {
                    d[i][k] = through;
                }
            }
        }
    }
    d
}

pub fn make_space(spec: &GeneratorSpec) -> Result<FiniteBSpace> {
    spec.validate()?;
    let n = spec.n;
    let dist: Vec<Vec<f64>> = match spec.kind {
        SpaceKind::Discrete => {
            (0..n).map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect()).collect()
        }
        SpaceKind::PowerMetric { p } => {
            (0..n).map(|i| (0..n).map(|j| pow(i.abs_diff(j) as f64, p)).collect()).collect()
        }
        SpaceKind::RandomPerturbed { spread, p } => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let mut w = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in (i + 1)..n {
                    let x = rng.random_range(1.0..=1.0 + spread);
                    w[i][j] = x;
                    w[j][i] = x;
                }
            }
            let metric = shortest_path_completion(w);
            (0..n).map(|i| (0..n).map(|j| pow(metric[i.min(j)][i.max(j)], p)).collect()).collect()
        }
    };
    let s = match spec.kind {
        SpaceKind::Discrete => 1.0,
        _ => minimal_coefficient(&dist)?,
    };
    debug_assert!(validate_b_metric(&dist, s)?.valid);
    FiniteBSpace::from_matrix(dist, s)
}

/// Lexicographic odometer over all tables in `{0..n}^n`.
#[derive(Clone, Debug)]
pub struct MapEnumerator {
    next: Option<Vec<usize>>,
}

impl Iterator for MapEnumerator {
    type Item = SelfMap;

    fn next(&mut self) -> Option<SelfMap> {
        let current = self.next.take()?;
        let n = current.len();
        let mut succ = current.clone();
        let mut pos = n;
        while pos > 0 {
            pos -= 1;
            if succ[pos] + 1 < n {
                succ[pos] += 1;
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(SelfMap::new(current).expect("odometer stays in range"))
    }
}

/// Every self-map on `n` points, `n^n` in total, in lexicographic order.
pub fn enumerate_maps(n: usize) -> Result<MapEnumerator> {
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    if n > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge { n, limit: ENUMERATION_LIMIT });
    }
    Ok(MapEnumerator { next: Some(vec![0; n]) })
}

/// SHA-256 over the point count and the bit patterns of the distances.
pub fn fingerprint(space: &FiniteBSpace) -> String {
    let mut h = Sha256::new();
    h.update((space.len() as u64).to_le_bytes());
    for row in space.matrix() {
        for v in row {
            h.update(v.to_bits().to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

/// One classified self-map.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusRecord {
    pub index: usize,
    pub table: Vec<usize>,
    pub classification: ClassificationReport,
    pub theorem: TheoremVerdict,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Cell {
    pub count: usize,
    /// Table of the first member in enumeration order.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassCounts {
    pub banach: usize,
    pub kannan: usize,
    pub pa: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub s: f64,
    pub fingerprint: String,
    pub total_maps: usize,
    pub classes: ClassCounts,
    /// Intersection and difference cells, keyed by name.
    pub cells: BTreeMap<&'static str, Cell>,
    /// `Banach \ PA` is empty.
    pub banach_subset_pa: bool,
    /// Maps with `beta_min` in `(0, 1)` failing the direct PA check at
    /// `alpha = beta_min`, `N = 1`.
    pub banach_alpha_violations: usize,
    /// Maps meeting the hypothesis without a unique attracting fixed point.
    pub theorem_violations: usize,
    /// PA maps with more than one fixed point.
    pub uniqueness_violations: usize,
    /// PA maps with `s * alpha_min >= 1` that still have a unique fixed point.
    pub unique_without_s_alpha: usize,
    pub release_blocking: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Census {
    pub records: Vec<CensusRecord>,
    pub report: CensusReport,
}

type CellRule = (&'static str, fn(bool, bool, bool) -> bool);

const CELLS: [CellRule; 10] = [
    ("banach_and_pa", |b, _, p| b && p),
    ("banach_not_pa", |b, _, p| b && !p),
    ("pa_not_banach", |b, _, p| p && !b),
    ("kannan_and_pa", |_, k, p| k && p),
    ("kannan_not_pa", |_, k, p| k && !p),
    ("pa_not_kannan", |_, k, p| p && !k),
    ("kannan_not_banach", |b, k, _| k && !b),
    ("banach_not_kannan", |b, k, _| b && !k),
    ("all_three", |b, k, p| b && k && p),
    ("none", |b, k, p| !b && !k && !p),
];

/// Classifies every self-map of `space`. Work is spread over threads;
/// records come back in enumeration order.
pub fn census(space: &FiniteBSpace) -> Result<Census> {
    let maps: Vec<SelfMap> = enumerate_maps(space.len())?.collect();
    let records = maps
        .par_iter()
        .enumerate()
        .map(|(index, map)| {
            Ok(CensusRecord {
                index,
                table: map.table().to_vec(),
                classification: classify_all(space, map)?,
                theorem: verify_theorem(space, map)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut cells: BTreeMap<&'static str, Cell> = CELLS.iter().map(|(name, _)| (*name, Cell::default())).collect();
    let mut classes = ClassCounts { banach: 0, kannan: 0, pa: 0 };
    let (mut banach_alpha_violations, mut theorem_violations) = (0, 0);
    let (mut uniqueness_violations, mut unique_without_s_alpha) = (0, 0);

    for r in &records {
        let c = &r.classification;
        let (b, k, p) = (c.banach.is_member, c.kannan.is_member, c.pa.is_member);
        classes.banach += b as usize;
        classes.kannan += k as usize;
        classes.pa += p as usize;
        for (name, rule) in CELLS {
            if rule(b, k, p) {
                let cell = cells.get_mut(name).expect("cell registered");
                cell.count += 1;
                cell.witness.get_or_insert_with(|| r.table.clone());
            }
        }
        banach_alpha_violations += (c.cross_checks.banach_alpha_at_horizon_one == Some(false)) as usize;
        theorem_violations += !r.theorem.theorem_respected as usize;
        uniqueness_violations += !r.theorem.uniqueness_from_pa as usize;
        unique_without_s_alpha += (p && !r.theorem.hypothesis_met && r.theorem.unique) as usize;
    }

    let banach_subset_pa = cells["banach_not_pa"].count == 0;
    let release_blocking = !banach_subset_pa || banach_alpha_violations > 0 || theorem_violations > 0;
    let report = CensusReport {
        n: space.len(),
        s: space.s(),
        fingerprint: fingerprint(space),
        total_maps: records.len(),
        classes,
        cells,
        banach_subset_pa,
        banach_alpha_violations,
        theorem_violations,
        uniqueness_violations,
        unique_without_s_alpha,
        release_blocking,
    };
    Ok(Census { records, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_space() {
        let sp = make_space(&GeneratorSpec::discrete(3)).unwrap();
        assert_eq!(sp.s(), 1.0);
        assert_eq!(sp.matrix(), &[vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]]);
    }

    #[test]
    fn power_metric_spaces() {
        let line = make_space(&GeneratorSpec::power_metric(3, 1.0)).unwrap();
        assert_eq!(line.s(), 1.0);
        assert_eq!(line.d(0, 2), 2.0);
        let sq = make_space(&GeneratorSpec::power_metric(3, 2.0)).unwrap();
        assert_eq!(sq.s(), 2.0);
        assert_eq!(sq.d(0, 2), 4.0);
        // on 4 points the worst triple is still (0,1,2): 4 / 2; (0,1,3) gives 9 / 5
        assert_eq!(make_space(&GeneratorSpec::power_metric(4, 2.0)).unwrap().s(), 2.0);
    }

    #[test]
    fn random_space_is_deterministic_and_valid() {
        let spec = GeneratorSpec::random_perturbed(5, 2.0, 1.5, 42);
        let a = make_space(&spec).unwrap();
        let b = make_space(&spec).unwrap();
        assert_eq!(a, b);
        assert!(validate_b_metric(a.matrix(), a.s()).unwrap().valid);
        assert!(a.s() <= 2f64.powf(0.5) * (1.0 + 1e-12));
        let c = make_space(&GeneratorSpec::random_perturbed(5, 2.0, 1.5, 43)).unwrap();
        assert_ne!(fingerprint(&a), fingerprint(&c));
    }

    #[test]
    fn spec_validation() {
        assert!(make_space(&GeneratorSpec::discrete(0)).is_err());
        assert!(make_space(&GeneratorSpec::power_metric(3, 0.5)).is_err());
        assert!(make_space(&GeneratorSpec::random_perturbed(3, -1.0, 1.0, 0)).is_err());
        assert!(make_space(&GeneratorSpec::random_perturbed(3, f64::NAN, 1.0, 0)).is_err());
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_maps(1).unwrap().count(), 1);
        assert_eq!(enumerate_maps(2).unwrap().count(), 4);
        let all: Vec<_> = enumerate_maps(3).unwrap().collect();
        assert_eq!(all.len(), 27);
        assert_eq!(all[0].table(), &[0, 0, 0]);
        assert_eq!(all[1].table(), &[0, 0, 1]);
        assert_eq!(all[26].table(), &[2, 2, 2]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(enumerate_maps(4).unwrap().count(), 256);
    }

    #[test]
    fn enumeration_guard() {
        assert!(matches!(enumerate_maps(7), Err(Error::EnumerationTooLarge { n: 7, limit: 6 })));
        assert!(enumerate_maps(0).is_err());
    }

    #[test]
    fn census_discrete_three() {
        let sp = make_space(&GeneratorSpec::discrete(3)).unwrap();
        let c = census(&sp).unwrap();
        let r = &c.report;
        assert_eq!(r.total_maps, 27);
        assert!(r.banach_subset_pa);
        assert!(!r.release_blocking);
        assert_eq!(r.cells["banach_not_pa"].count, 0);
        assert!(r.cells["pa_not_banach"].count >= 1);
        assert!(r.cells["pa_not_kannan"].count >= 1);
        let worked = c.records.iter().find(|rec| rec.table == vec![1, 2, 2]).unwrap();
        assert!(worked.classification.pa.is_member && !worked.classification.banach.is_member);
    }

    #[test]
    fn census_single_point() {
        let sp = make_space(&GeneratorSpec::discrete(1)).unwrap();
        let c = census(&sp).unwrap();
        assert_eq!(c.report.total_maps, 1);
        assert_eq!(c.report.classes, ClassCounts { banach: 1, kannan: 1, pa: 1 });
    }

    #[test]
    fn census_is_deterministic() {
        let sp = make_space(&GeneratorSpec::random_perturbed(3, 1.0, 2.0, 7)).unwrap();
        let a = serde_json::to_string(&census(&sp).unwrap()).unwrap();
        let b = serde_json::to_string(&census(&sp).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
