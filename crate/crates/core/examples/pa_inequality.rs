//! The averaged inequality, checked literally, next to the closed-form
//! minimal modulus and the distances along paired orbits.

use pa_fixpoint::classify::pa_check_direct;
use pa_fixpoint::{delta_trace, make_space, pa_minimal_alpha, GeneratorSpec, SelfMap};

fn main() -> pa_fixpoint::Result<()> {
    let space = make_space(&GeneratorSpec::discrete(3))?;
    let map = SelfMap::new(vec![1, 2, 2])?;

    let t = delta_trace(&space, &map, 0, 1)?;
    println!("pair (0, 1): deltas {:?}, merge {:?}", t.deltas, t.merge_index);

    let pa = pa_minimal_alpha(&space, &map)?;
    println!("alpha_min = {:?}, n_min = {:?}", pa.alpha_min(), pa.n_min());

    for (alpha, n) in [(2.0 / 3.0, 2), (0.5, 2), (0.4, 2), (0.9, 1)] {
        let c = pa_check_direct(&space, &map, alpha, n)?;
        println!("alpha = {alpha:.4}, N = {n}: holds = {}, failure = {:?}", c.holds, c.failure);
    }

    let id = SelfMap::identity(3);
    println!("identity: {:?}", pa_check_direct(&space, &id, 0.9, 1)?.failure);
    Ok(())
}
