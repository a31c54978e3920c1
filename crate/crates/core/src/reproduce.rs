//! Reproduces the worked examples on the three-point discrete space with
//! `T = [1, 2, 2]` and the halving map under the squared distance, as a
//! checklist.

use serde::Serialize;

use crate::classify::{
    banach_modulus, kannan_constraint, kannan_modulus, kannan_threshold, pa_check_direct, pa_minimal_alpha, FailureAt, KannanBound,
    PaFailure, PaModulus,
};
use crate::error::Result;
use crate::generator::{census, make_space, GeneratorSpec};
use crate::mapping::SelfMap;
use crate::oracle::verify_theorem;
use crate::solver::{picard_solve, IterationConfig, SolveStatus};

/// Values the checklist compares against. Tests corrupt these to exercise
/// the failure path.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expectations {
    pub banach_beta_min: f64,
    pub alpha_min: f64,
    pub n_min: usize,
    /// An admissible `(alpha, N)` above the infimum.
    pub chosen_alpha: f64,
    pub chosen_n: usize,
    /// An `alpha` below the infimum, which must fail at pair (0, 1), `n = 2`.
    pub rejected_alpha: f64,
    pub kannan_ratio: f64,
    pub fixed_point: usize,
    pub solver_c_fit: f64,
    pub solver_max_iterations: usize,
}

impl Default for Expectations {
    fn default() -> Self {
        Self {
            banach_beta_min: 1.0,
            alpha_min: 0.5,
            n_min: 2,
            chosen_alpha: 2.0 / 3.0,
            chosen_n: 2,
            rejected_alpha: 0.4,
            kannan_ratio: 0.5,
            fixed_point: 2,
            solver_c_fit: 0.25,
            solver_max_iterations: 25,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckItem {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reproduction {
    pub passed: bool,
    /// Observed minimal PA modulus of `[1, 2, 2]`.
    pub alpha_min: Option<f64>,
    pub n_min: Option<usize>,
    pub items: Vec<CheckItem>,
}

pub fn run(expect: &Expectations) -> Result<Reproduction> {
    let space = make_space(&GeneratorSpec::discrete(3))?;
    let map = SelfMap::new(vec![1, 2, 2])?;
    let mut items = Vec::new();
    let mut check = |name, passed, detail: String| items.push(CheckItem { name, passed, detail });

    let b = banach_modulus(&space, &map)?;
    check(
        "not Banach: beta_min = 1 at (0, 1)",
        b.beta_min == expect.banach_beta_min && b.witness == Some((0, 1)) && b.beta_min >= 1.0,
        format!("beta_min = {}, witness = {:?}", b.beta_min, b.witness),
    );

    let pa = pa_minimal_alpha(&space, &map)?;
    check(
        "PA infimum alpha_min = 1/2 with N = 2",
        matches!(pa, PaModulus::Member { alpha_min, n_min, .. }
            if alpha_min == expect.alpha_min && n_min == expect.n_min),
        format!("{pa:?}"),
    );

    let chosen = pa_check_direct(&space, &map, expect.chosen_alpha, expect.chosen_n)?;
    check(
        "averaged inequality holds at alpha = 2/3, N = 2",
        chosen.holds,
        format!("alpha = {}, N = {}: {:?}", expect.chosen_alpha, expect.chosen_n, chosen.failure),
    );

    let rejected = pa_check_direct(&space, &map, expect.rejected_alpha, expect.chosen_n)?;
    check(
        "averaged inequality fails below the infimum at (0, 1), n = 2",
        !rejected.holds && rejected.failure == Some(PaFailure { pair: (0, 1), at: FailureAt::N(2) }),
        format!("alpha = {}: {:?}", expect.rejected_alpha, rejected.failure),
    );

    let at_01 = kannan_constraint(&space, &map, 0, 1)?;
    let k = kannan_modulus(&space, &map)?;
    let threshold = kannan_threshold(space.s());
    check(
        "not Kannan: ratio 1/2 at (0, 1) against threshold 1/(2s) = 1/2",
        at_01 == Some(KannanBound::Finite(expect.kannan_ratio))
            && at_01.is_some_and(|b| !b.is_below(threshold))
            && !k.beta_min.is_below(threshold),
        format!(
            "constraint at (0, 1) = {}, worst = {} at {:?}, threshold = {threshold}",
            at_01.map_or("none".to_string(), |b| b.to_string()),
            k.beta_min,
            k.witness
        ),
    );

    let v = verify_theorem(&space, &map)?;
    check(
        "unique fixed point 2 attracts every orbit",
        v.hypothesis_met && v.fixed_points == vec![expect.fixed_point] && v.all_orbits_converge && v.theorem_respected,
        format!("fixed points {:?}, all orbits converge: {}", v.fixed_points, v.all_orbits_converge),
    );

    let c3 = census(&space)?;
    let in_pa_not_banach = c3
        .records
        .iter()
        .any(|r| r.table == map.table() && r.classification.pa.is_member && !r.classification.banach.is_member);
    let cells = &c3.report.cells;
    check(
        "census n = 3: PA \\ Banach holds [1, 2, 2], Banach \\ PA empty, PA \\ Kannan nonempty",
        in_pa_not_banach && cells["banach_not_pa"].count == 0 && cells["pa_not_kannan"].count > 0,
        format!(
            "pa_not_banach = {}, banach_not_pa = {}, pa_not_kannan = {}",
            cells["pa_not_banach"].count, cells["banach_not_pa"].count, cells["pa_not_kannan"].count
        ),
    );

    let c4 = census(&make_space(&GeneratorSpec::discrete(4))?)?;
    check(
        "Banach maps are PA with alpha = beta, N = 1 (discrete n = 3, 4)",
        c3.report.banach_alpha_violations == 0 && c4.report.banach_alpha_violations == 0 && c4.report.banach_subset_pa,
        format!("violations: {} + {}", c3.report.banach_alpha_violations, c4.report.banach_alpha_violations),
    );

    let cfg = IterationConfig::new(0.25, 2.0).with_tolerance(1e-12);
    let r = picard_solve(|x: &f64| x / 2.0, |x: &f64, y: &f64| (x - y) * (x - y), 1.0, &cfg)?;
    check(
        "certified Picard run for x/2 under |x - y|^2",
        r.status == SolveStatus::Converged
            && r.certificate.decay.c_fit == expect.solver_c_fit
            && r.iterations <= expect.solver_max_iterations,
        format!("{:?} after {} iterations, C_fit = {}", r.status, r.iterations, r.certificate.decay.c_fit),
    );

    let passed = items.iter().all(|i| i.passed);
    Ok(Reproduction { passed, alpha_min: pa.alpha_min(), n_min: pa.n_min(), items })
}
