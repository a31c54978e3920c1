//! Brute-force the fixed points of every map on a small squared line and
//! confirm that `s * alpha_min < 1` always yields one attracting fixed point.

use pa_fixpoint::{enumerate_maps, make_space, verify_theorem, GeneratorSpec};

fn main() -> pa_fixpoint::Result<()> {
    let space = make_space(&GeneratorSpec::power_metric(4, 2.0))?;
    let (mut maps, mut hypothesis, mut respected) = (0, 0, 0);
    let mut example = None;

    for map in enumerate_maps(space.len())? {
        let v = verify_theorem(&space, &map)?;
        maps += 1;
        respected += v.theorem_respected as usize;
        if v.hypothesis_met {
            hypothesis += 1;
            if example.is_none() && map.table().iter().collect::<std::collections::BTreeSet<_>>().len() > 2 {
                example = Some((map.table().to_vec(), v));
            }
        }
    }

    println!("s = {}, {maps} maps, {hypothesis} meet s * alpha_min < 1, theorem respected on {respected}", space.s());
    if let Some((table, v)) = example {
        println!("e.g. T = {table:?}: alpha_min {:?}, fixed points {:?}", v.alpha_min, v.fixed_points);
    }
    Ok(())
}
