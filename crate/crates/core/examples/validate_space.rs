//! Check the b-metric axioms and find the smallest admissible coefficient.
//!
//! The squared line `d(x, y) = |x - y|^2` breaks the ordinary triangle
//! inequality but is a b-metric with `s = 2`.

use pa_fixpoint::{minimal_coefficient, validate_b_metric, FiniteBSpace};

fn main() -> pa_fixpoint::Result<()> {
    let dist: Vec<Vec<f64>> =
        (0..3).map(|i| (0..3).map(|j| ((i as f64) - (j as f64)).powi(2)).collect()).collect();

    let as_metric = validate_b_metric(&dist, 1.0)?;
    println!("as a metric (s = 1): valid = {}", as_metric.valid);
    for v in &as_metric.violations {
        println!("  {:?} at {:?}: {} > {}", v.axiom, v.indices, v.lhs, v.rhs);
    }

    let s = minimal_coefficient(&dist)?;
    println!("minimal coefficient: s = {s}");

    let space = FiniteBSpace::from_matrix(dist, s)?;
    println!("space file:\n{}", serde_json::to_string_pretty(&space.to_file())?);
    Ok(())
}
