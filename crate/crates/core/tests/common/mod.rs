#![allow(dead_code)]

use pa_fixpoint::{make_space, FiniteBSpace, GeneratorSpec};

/// Discrete and squared-line spaces on 1..=4 points.
pub fn theorem_battery() -> Vec<(String, FiniteBSpace)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("discrete n={n}"), make_space(&GeneratorSpec::discrete(n)).unwrap()));
        out.push((format!("power p=2 n={n}"), make_space(&GeneratorSpec::power_metric(n, 2.0)).unwrap()));
    }
    out
}

/// Theorem battery plus other exponents and random shortest-path spaces.
pub fn wide_battery() -> Vec<(String, FiniteBSpace)> {
    let mut out = theorem_battery();
    for n in 2..=4 {
        for p in [1.0, 1.5, 3.0] {
            out.push((format!("power p={p} n={n}"), make_space(&GeneratorSpec::power_metric(n, p)).unwrap()));
        }
        for seed in 0..3 {
            let spec = GeneratorSpec::random_perturbed(n, 2.0, 2.0, seed);
            out.push((format!("random seed={seed} n={n}"), make_space(&spec).unwrap()));
        }
    }
    out
}
