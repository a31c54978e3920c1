//! Picard iteration with an a priori error certificate.
//!
//! `T(x) = x / 2 + 1` on the reals under `d(x, y) = |x - y|^2` (`s = 2`):
//! residuals shrink by `1/4` per step, so `alpha = 1/4` is honest.

use pa_fixpoint::solver::SolveStatus;
use pa_fixpoint::{picard_solve, verify_decay, IterationConfig};

fn main() -> pa_fixpoint::Result<()> {
    let sq = |x: &f64, y: &f64| (x - y) * (x - y);
    let cfg = IterationConfig::new(0.25, 2.0).with_tolerance(1e-12);

    for x0 in [-10.0, 0.0, 7.5] {
        let r = picard_solve(|x: &f64| x / 2.0 + 1.0, sq, x0, &cfg)?;
        let c = &r.certificate;
        println!(
            "x0 = {x0}: point {} after {} steps, status {:?}, certified {}, bound {:e}",
            r.point,
            r.iterations,
            r.status,
            c.certified,
            c.fixed_point_bound_at(r.iterations)
        );
        assert_eq!(r.status, SolveStatus::Converged);
    }

    let r = picard_solve(|x: &f64| x / 2.0, sq, 1.0, &cfg)?;
    let decay = verify_decay(&r.residual_trace, 0.25)?;
    println!("x / 2 from 1: decay holds {}, C_fit {} (C_bound {})", decay.holds, decay.c_fit, decay.c_bound);

    // claiming a factor the map does not achieve revokes the certificate
    let dishonest = IterationConfig::new(0.1, 2.0).with_tolerance(1e-12);
    let r = picard_solve(|x: &f64| x / 2.0, sq, 1.0, &dishonest)?;
    let c = &r.certificate;
    println!(
        "alpha = 0.1 claimed: certified {}, recursion broken at {:?}, C_fit exceeds C_bound {}",
        c.certified, c.recursion_violation, c.decay.exceeds_c_bound
    );
    Ok(())
}
