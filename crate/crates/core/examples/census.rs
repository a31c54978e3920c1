//! Enumerate every self-map of a generated space and tabulate the classes.
//!
//! Usage: `cargo run --example census -- [n] [seed]`

use pa_fixpoint::{census, make_space, GeneratorSpec};

fn main() -> pa_fixpoint::Result<()> {
    let mut args = std::env::args().skip(1);
    let n = args.next().and_then(|a| a.parse().ok()).unwrap_or(4);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(7);

    for spec in [
        GeneratorSpec::discrete(n),
        GeneratorSpec::power_metric(n, 2.0),
        GeneratorSpec::random_perturbed(n, 1.0, 2.0, seed),
    ] {
        let space = make_space(&spec)?;
        let report = census(&space)?.report;
        println!("{spec:?}");
        println!("  s = {:.4}, fingerprint {}..., {} maps", report.s, &report.fingerprint[..12], report.total_maps);
        for (name, cell) in &report.cells {
            println!("  {name:<18} {:>6}  {:?}", cell.count, cell.witness);
        }
        println!(
            "  banach subset of pa: {}, theorem violations: {}",
            report.banach_subset_pa, report.theorem_violations
        );
    }
    Ok(())
}
