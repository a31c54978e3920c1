//! Brute-force ground truth for the fixed-point theorem on finite spaces.

use serde::Serialize;

use crate::classify::pa_minimal_alpha;
use crate::error::Result;
use crate::mapping::{orbit, SelfMap};
use crate::space::FiniteBSpace;

/// All `i` with `T(i) = i`, ascending.
pub fn brute_fixed_points(map: &SelfMap) -> Vec<usize> {
    map.table().iter().enumerate().filter(|&(i, &t)| i == t).map(|(i, _)| i).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub pa_member: bool,
    pub alpha_min: Option<f64>,
    pub s: f64,
    /// `s * alpha_min`, when the map is PA.
    pub s_alpha_product: Option<f64>,
    /// PA with `s * alpha_min < 1`.
    pub hypothesis_met: bool,
    pub fixed_points: Vec<usize>,
    pub unique: bool,
    /// Every orbit ends on a fixed point.
    pub all_orbits_converge: bool,
    /// Not hypothesis, or unique fixed point attracting every orbit.
    pub theorem_respected: bool,
    /// PA implies at most one fixed point, independently of `s * alpha`.
    pub uniqueness_from_pa: bool,
    /// Why continuity of `T` needs no check here.
    pub continuity: String,
}

pub fn verify_theorem(space: &FiniteBSpace, map: &SelfMap) -> Result<TheoremVerdict> {
    let pa = pa_minimal_alpha(space, map)?;
    let alpha_min = pa.alpha_min();
    let s = space.s();
    let s_alpha_product = alpha_min.map(|a| s * a);
    let hypothesis_met = s_alpha_product.is_some_and(|p| p < 1.0);

    let fixed_points = brute_fixed_points(map);
    let unique = fixed_points.len() == 1;
    let mut all_orbits_converge = true;
    for start in 0..map.len() {
        // reach-and-stay: the orbit's cycle is a single fixed point
        all_orbits_converge &= orbit(map, start)?.limit().is_some();
    }

    let continuity = match space.min_positive_distance() {
        Some(m) => format!(
            "minimal positive distance {m} > 0, so the topology is discrete and every self-map is continuous"
        ),
        None => "single point; every self-map is continuous".to_string(),
    };

    Ok(TheoremVerdict {
        pa_member: pa.is_member(),
        alpha_min,
        s,
        s_alpha_product,
        hypothesis_met,
        theorem_respected: !hypothesis_met || (unique && all_orbits_converge),
        uniqueness_from_pa: !pa.is_member() || fixed_points.len() <= 1,
        fixed_points,
        unique,
        all_orbits_converge,
        continuity,
    })
}
