//! Order-ideal families of small posets and the size of their toggle groups.

use toggle_lab::generators::{all_posets, hasse_connected, order_ideals, parse_poset, Poset};
use toggle_lab::permgroup::factorial;
use toggle_lab::toggle::toggle_group;

fn main() -> toggle_lab::Result<()> {
    let (diamond, _) = parse_poset(
        r#"{"elements": ["0", "a", "b", "1"],
            "covers": [["0", "a"], ["0", "b"], ["a", "1"], ["b", "1"]]}"#,
    )?;
    for p in [Poset::chain(3), Poset::antichain(2), diamond] {
        let j = order_ideals(&p)?;
        let g = toggle_group(&j)?;
        println!("{} ideals: {j}", j.len());
        println!(
            "  connected {}, order {} (N! = {})",
            hasse_connected(&p),
            g.order(),
            factorial(j.len())
        );
    }

    let mut full = 0;
    let mut connected = 0;
    for p in (1..=4).flat_map(all_posets) {
        if !hasse_connected(&p) {
            continue;
        }
        connected += 1;
        let j = order_ideals(&p)?;
        let g = toggle_group(&j)?;
        if g.is_symmetric() || g.is_alternating() {
            full += 1;
        }
    }
    println!("{full} of {connected} connected labelled posets on <= 4 elements give S_N or A_N");
    Ok(())
}
