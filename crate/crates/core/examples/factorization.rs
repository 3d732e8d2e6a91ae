//! Cartesian products of families and their recovery by iterated factoring.

use toggle_lab::toggle::{cartesian_product, decompose, verify_direct_product, SetFamily};

fn main() -> toggle_lab::Result<()> {
    let a = SetFamily::new(&["a"], &[vec![], vec!["a"]])?;
    let bc = SetFamily::new(&["b", "c"], &[vec![], vec!["b"], vec!["b", "c"]])?;
    let de = SetFamily::new(&["d", "e"], &[vec![], vec!["d"], vec!["d", "e"], vec!["e"]])?;

    let product = cartesian_product(&cartesian_product(&a, &bc)?, &de)?;
    println!(
        "product has {} sets over {:?}",
        product.len(),
        product.ground()
    );

    let tree = decompose(&product)?;
    println!("leaf degrees {:?}", tree.leaf_degrees());
    for (leaf, group) in tree.leaves() {
        println!("  {leaf}: order {}", group.order());
    }
    for (parent, fact) in tree.splits() {
        println!(
            "  split {} sets into E1 = {:?} ({} sets) and E2 = {:?} ({} sets); direct product: {}",
            parent.len(),
            fact.e1(),
            fact.ell(),
            fact.e2(),
            fact.m(),
            verify_direct_product(parent, fact)?
        );
    }
    Ok(())
}
