//! Primitive toggle groups with an n, n-1 or n-2 cycle that are not S_n or A_n.

use toggle_lab::certify::survey_exceptionals;
use toggle_lab::generators::FamilyStream;
use toggle_lab::RunConfig;

fn main() -> toggle_lab::Result<()> {
    let config = RunConfig::default();
    for stream in [
        FamilyStream::exhaustive(3),
        FamilyStream::sampled(5, config.seed, 2000),
    ] {
        let r = survey_exceptionals(&stream, &config)?;
        println!(
            "{:?}: {} transitive, {} primitive, {} candidates, {} undecided",
            stream.mode,
            r.families_examined,
            r.primitive_examined,
            r.candidates.len(),
            r.undecided
        );
        for c in &r.candidates {
            println!(
                "  degree {} order {} cycle {} ({})",
                c.degree, c.order, c.witness, c.reverified
            );
        }
    }
    println!("{}", toggle_lab::certify::SEARCH_BOUND_NOTE);
    Ok(())
}
