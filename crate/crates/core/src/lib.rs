//! Path-averaged (PA) contractions on b-metric spaces.
//!
//! A self-map `T` is a PA contraction when, for some `alpha` in `(0, 1)` and
//! horizon `N`, every pair of points satisfies
//!
//! ```text
//! sum_{k<n} d(T^{k+1} x, T^{k+1} y) <= alpha * sum_{k<n} d(T^k x, T^k y)    for all n >= N.
//! ```
//!
//! On a complete b-metric space with coefficient `s` and `s * alpha < 1`, a
//! continuous PA contraction has a unique fixed point that attracts every
//! orbit. This crate makes that concrete:
//!
//! - [`space`]: finite b-metric spaces, axiom validation, minimal `s`.
//! - [`mapping`]: self-maps, orbits, distances along paired orbits.
//! - [`classify`]: Banach / Kannan / PA verdicts with exact minimal moduli.
//! - [`solver`]: Picard iteration on arbitrary spaces with an error-bound
//!   certificate.
//! - [`oracle`]: brute-force fixed points and the theorem check.
//! - [`generator`]: space generators, map enumeration, class census.
//! - [`cli`]: the `pa-fixpoint` command-line surface.

// index loops read better over distance matrices; `!(a <= b)` rejects NaN on purpose
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod classify;
pub mod cli;
pub mod error;
pub mod expr;
pub mod generator;
pub mod mapping;
pub mod oracle;
pub mod reproduce;
pub mod solver;
pub mod space;

pub use classify::{
    banach_modulus, classify_all, kannan_modulus, pa_check_direct, pa_minimal_alpha, ClassificationReport,
    KannanBound, PaModulus,
};
pub use error::{Error, Result};
pub use generator::{census, enumerate_maps, make_space, GeneratorSpec, SpaceKind};
pub use mapping::{delta_trace, orbit, DeltaTrace, MergeIndex, SelfMap};
pub use oracle::{brute_fixed_points, verify_theorem, TheoremVerdict};
pub use solver::{picard_solve, verify_decay, ConvergenceCertificate, FixedPointResult, IterationConfig, StopRule};
pub use space::{minimal_coefficient, validate_b_metric, FiniteBSpace};
