//! The block-system lemma clauses on one family, then on a tampered toggle set.

use toggle_lab::certify::{check_lemma_suite, check_lemma_suite_with, replay};
use toggle_lab::fixtures;
use toggle_lab::permgroup::{nontrivial_block_systems, Permutation};
use toggle_lab::toggle::build_toggles;
use toggle_lab::RunConfig;

fn main() -> toggle_lab::Result<()> {
    let config = RunConfig::default();
    let f = fixtures::prod23();
    let ts = build_toggles(&f);
    for bs in nontrivial_block_systems(&ts.generators(), f.len())? {
        println!("blocks {:?}", bs.blocks());
        for r in check_lemma_suite(&f, &bs, &config)? {
            println!("  {:<36} {:<8} {}", r.name, r.status.label(), r.detail);
        }
    }

    // Swap inside a single block: still block-preserving, no longer a toggle.
    let bs = nontrivial_block_systems(&ts.generators(), f.len())?
        .into_iter()
        .find(|b| b.block_size() == 2)
        .expect("prod23 has blocks of size 2");
    let b0 = &bs.blocks()[0];
    let tampered = ts.with_replaced("a", Permutation::from_cycles(6, &[&[b0[0], b0[1]]])?);
    println!("with tau_a replaced:");
    for r in check_lemma_suite_with(&f, &tampered, &bs, &config)? {
        println!("  {:<36} {:<8} {}", r.name, r.status.label(), r.detail);
        if r.witness.is_some() {
            println!("    replays as {}", replay(&r, &config)?.status.label());
        }
    }
    Ok(())
}
