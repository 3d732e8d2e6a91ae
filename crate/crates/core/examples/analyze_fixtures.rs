//! Toggle groups of the four reference families, as `toggle-lab analyze` reports them.

use toggle_lab::cli::analyze_report;
use toggle_lab::{fixtures, RunConfig};

fn main() -> toggle_lab::Result<()> {
    let config = RunConfig::default();
    for f in fixtures::all() {
        let r = analyze_report(&f, &config)?;
        println!("{f}");
        for t in &r.toggles {
            println!("  tau_{} = {}", t.element, t.permutation);
        }
        println!(
            "  degree {}, order {}, transitive {}, {} nontrivial block systems, {:?}",
            r.degree,
            r.order,
            r.transitive,
            r.block_systems.len(),
            r.primitivity.unwrap()
        );
        let present: Vec<usize> = r
            .cycle_spectrum
            .iter()
            .filter(|e| e.status == "yes")
            .map(|e| e.length)
            .collect();
        println!("  cycle lengths present: {present:?}\n");
    }
    Ok(())
}
