//! Re-derive the worked three-point example end to end and print the checklist.

use pa_fixpoint::reproduce::{run, Expectations};

fn main() -> pa_fixpoint::Result<()> {
    let r = run(&Expectations::default())?;
    for item in &r.items {
        println!("[{}] {}: {}", if item.passed { "PASS" } else { "FAIL" }, item.name, item.detail);
    }
    println!("all passed: {}", r.passed);
    Ok(())
}
