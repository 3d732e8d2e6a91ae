//! Schreier-Sims on toggle generators: base, orbit sizes, order and membership.

use toggle_lab::fixtures;
use toggle_lab::permgroup::{schreier_sims, Permutation};
use toggle_lab::toggle::build_toggles;

fn main() -> toggle_lab::Result<()> {
    let f = fixtures::prod23();
    let gens = build_toggles(&f).generators();
    let g = schreier_sims(&gens, f.len())?;
    println!("family {f}");
    println!(
        "base {:?}, basic orbit sizes {:?}, order {}",
        g.base(),
        g.basic_orbit_sizes(),
        g.order()
    );

    let six = Permutation::from_cycles(6, &[&[0, 4, 2, 3, 1, 5]])?;
    let three = Permutation::from_cycles(6, &[&[0, 1, 2]])?;
    println!("{six} in group: {}", g.contains(&six)?);
    println!("{three} in group: {}", g.contains(&three)?);

    // A larger group: all 2^5 subsets of a 5-element ground.
    let ground = ["a", "b", "c", "d", "e"];
    let sets: Vec<Vec<&str>> = (0u32..32)
        .map(|m| {
            ground
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, e)| *e)
                .collect()
        })
        .collect();
    let cube = toggle_lab::toggle::SetFamily::new(&ground, &sets)?;
    let g = schreier_sims(&build_toggles(&cube).generators(), cube.len())?;
    println!(
        "boolean lattice on 5 elements: degree {}, order {}",
        cube.len(),
        g.order()
    );
    Ok(())
}
