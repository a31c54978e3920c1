//! Banach, Kannan and PA verdicts for a handful of maps on the discrete
//! three-point space.

use pa_fixpoint::{classify_all, make_space, GeneratorSpec, SelfMap};

fn main() -> pa_fixpoint::Result<()> {
    let space = make_space(&GeneratorSpec::discrete(3))?;

    for table in [vec![1, 2, 2], vec![0, 0, 0], vec![1, 0, 2], vec![0, 1, 2]] {
        let map = SelfMap::new(table.clone())?;
        let r = classify_all(&space, &map)?;
        println!(
            "T = {table:?}: banach {} (beta {}), kannan {} (beta {}), pa {} (alpha {:?}, N {:?})",
            r.banach.is_member,
            r.banach.beta_min,
            r.kannan.is_member,
            r.kannan.beta_min,
            r.pa.is_member,
            r.pa.alpha_min,
            r.pa.n_min,
        );
    }

    // [1, 2, 2] is not Banach yet averages out: full report
    let r = classify_all(&space, &SelfMap::new(vec![1, 2, 2])?)?;
    println!("{}", serde_json::to_string_pretty(&r)?);
    Ok(())
}
