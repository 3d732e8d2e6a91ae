//! Long cycles in products versus coprimality and long cycles in the factors.

use toggle_lab::certify::certify_product_long_cycle;
use toggle_lab::toggle::SetFamily;
use toggle_lab::RunConfig;

fn main() -> toggle_lab::Result<()> {
    let config = RunConfig::default();
    let x = SetFamily::new(&["x"], &[vec![], vec!["x"]])?;
    let chain = SetFamily::new(&["y", "z"], &[vec![], vec!["y"], vec!["y", "z"]])?;
    let square = SetFamily::new(&["y", "z"], &[vec![], vec!["y"], vec!["z"], vec!["y", "z"]])?;
    let w = SetFamily::new(&["w"], &[vec![], vec!["w"]])?;
    for (f1, f2) in [(&x, &chain), (&x, &square), (&x, &w)] {
        let r = certify_product_long_cycle(f1, f2, &config)?;
        println!("{f1} x {f2}: {}\n  {}", r.status.label(), r.detail);
        if let Some(p) = r.witness.and_then(|w| w.permutation) {
            println!("  long cycle {p}");
        }
    }
    Ok(())
}
