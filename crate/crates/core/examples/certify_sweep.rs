//! Exhaustive and sampled certification sweeps.

use toggle_lab::certify::{sweep, Suite};
use toggle_lab::generators::FamilyStream;
use toggle_lab::RunConfig;

fn main() -> toggle_lab::Result<()> {
    let config = RunConfig::default();
    let report = sweep(&FamilyStream::exhaustive(3), &Suite::all(), &config)?;
    println!("{report}");

    let report = sweep(
        &FamilyStream::sampled(4, config.seed, 500),
        &Suite::theorems(),
        &config,
    )?;
    println!("{report}");
    Ok(())
}
