//! Block systems, toggle types and layers of the imprimitive reference families.

use toggle_lab::fixtures;
use toggle_lab::permgroup::{nontrivial_block_systems, primitivity};
use toggle_lab::toggle::{build_toggles, classify_toggles, layers, ToggleType};

fn main() -> toggle_lab::Result<()> {
    for f in [fixtures::boolean2(), fixtures::prod23(), fixtures::chain3()] {
        let ts = build_toggles(&f);
        let gens = ts.generators();
        println!("{f}: {:?}", primitivity(&gens, f.len())?);
        for bs in nontrivial_block_systems(&gens, f.len())? {
            let types = classify_toggles(&f, &ts, &bs)?;
            let lay = layers(&f, &ts, &bs)?;
            println!("  blocks {:?}", bs.blocks());
            println!(
                "    type 1: {:?}, type 2: {:?}",
                types.labels_of(ToggleType::Type1),
                types.labels_of(ToggleType::Type2)
            );
            println!(
                "    layers {:?} (transversal: {})",
                lay.layers,
                lay.is_transversal(&bs)
            );
        }
    }
    Ok(())
}
