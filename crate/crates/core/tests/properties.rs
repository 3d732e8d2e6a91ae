use std::collections::HashSet;

use proptest::prelude::*;

use toggle_lab::permgroup::{
    cycle_containment, is_transitive, minimal_block, nontrivial_block_systems, schreier_sims,
    Containment, Parity, Permutation,
};
use toggle_lab::toggle::{build_toggles, cartesian_product, decompose, toggle_group, SetFamily};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn perm_pair() -> impl Strategy<Value = (Permutation, Permutation)> {
    (1usize..9).prop_flat_map(|n| (perm(n), perm(n)))
}

fn generators() -> impl Strategy<Value = (usize, Vec<Permutation>)> {
    (2usize..8).prop_flat_map(|n| (Just(n), prop::collection::vec(perm(n), 1..4)))
}

/// All elements by closing under the generators; the oracle for orders and cycles.
fn closure(gens: &[Permutation], n: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut todo = vec![id];
    while let Some(p) = todo.pop() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&i| g.apply(i)).collect();
            if seen.insert(q.clone()) {
                todo.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

fn is_single_cycle(images: &[usize], k: usize) -> bool {
    let moved: Vec<usize> = (0..images.len()).filter(|&i| images[i] != i).collect();
    if moved.len() != k {
        return false;
    }
    let (mut x, mut len) = (images[moved[0]], 1);
    while x != moved[0] {
        x = images[x];
        len += 1;
    }
    len == k
}

/// Every set partition of `0..n` as restricted growth labels.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut labels = vec![0; n];
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == labels.len() {
            out.push(labels.clone());
            return;
        }
        for l in 0..=max + 1 {
            labels[i] = l;
            rec(i + 1, max.max(l), labels, out);
        }
    }
    if n > 0 {
        rec(1, 0, &mut labels, &mut out);
    }
    out
}

fn invariant(labels: &[usize], gens: &[Permutation]) -> bool {
    let n = labels.len();
    gens.iter().all(|g| {
        (0..n).all(|x| {
            (0..n).all(|y| labels[x] != labels[y] || labels[g.apply(x)] == labels[g.apply(y)])
        })
    })
}

fn refines(a: &[usize], b: &[usize]) -> bool {
    (0..a.len()).all(|x| (0..a.len()).all(|y| a[x] != a[y] || b[x] == b[y]))
}

fn family(ground: usize) -> impl Strategy<Value = SetFamily> {
    let subsets = 1u64 << ground;
    prop::collection::btree_set(0..subsets, 2..=subsets as usize).prop_map(move |sets| {
        let labels = (0..ground).map(|i| format!("e{i}")).collect();
        SetFamily::from_masks(labels, sets.into_iter().collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parity_is_a_homomorphism((p, q) in perm_pair()) {
        let pq = p.compose(&q).unwrap();
        prop_assert_eq!(pq.parity(), p.parity() ^ q.parity());
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert_eq!(p.inverse().parity(), p.parity());
        let expected = if p.cycle_decomposition().cycles.iter().filter(|c| c.len() % 2 == 0).count() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        };
        prop_assert_eq!(p.parity(), expected);
    }

    #[test]
    fn chain_order_matches_closure((n, gens) in generators()) {
        let g = schreier_sims(&gens, n).unwrap();
        let elements = closure(&gens, n);
        prop_assert_eq!(g.order_u64(), Some(elements.len() as u64));
        for e in elements.iter().take(50) {
            prop_assert!(g.contains(&Permutation::new(e.clone()).unwrap()).unwrap());
        }
    }

    #[test]
    fn minimal_block_is_the_finest_invariant_partition((n, gens) in generators(), beta_seed in 1usize..64) {
        prop_assume!(is_transitive(&gens, n).unwrap());
        let beta = 1 + beta_seed % (n - 1);
        let ours = minimal_block(&gens, n, 0, beta).unwrap();
        let candidates: Vec<Vec<usize>> = set_partitions(n)
            .into_iter()
            .filter(|l| l[0] == l[beta] && invariant(l, &gens))
            .collect();
        let finest = candidates
            .iter()
            .find(|a| candidates.iter().all(|b| refines(a, b)))
            .expect("invariant partitions containing a pair are closed under meet");
        prop_assert!(refines(ours.block_of(), finest) && refines(finest, ours.block_of()));
        for bs in nontrivial_block_systems(&gens, n).unwrap() {
            prop_assert!(invariant(bs.block_of(), &gens));
            for g in &gens {
                prop_assert!(bs.is_preserved_by(g));
            }
        }
    }

    #[test]
    fn cycle_containment_matches_closure((n, gens) in generators()) {
        let g = schreier_sims(&gens, n).unwrap();
        let elements = closure(&gens, n);
        for k in 2..=n {
            let truth = elements.iter().any(|e| is_single_cycle(e, k));
            match cycle_containment(&g, k).unwrap() {
                Containment::Yes { witness, .. } => {
                    prop_assert!(truth);
                    prop_assert!(is_single_cycle(witness.images(), k));
                    prop_assert!(g.contains(&witness).unwrap());
                }
                Containment::No { .. } => prop_assert!(!truth),
                Containment::Undecided => prop_assert!(false, "small groups are always decided"),
            }
        }
    }

    #[test]
    fn toggles_act_by_symmetric_difference(f in (1usize..5).prop_flat_map(family)) {
        let ts = build_toggles(&f);
        for (label, tau) in ts.iter() {
            let bit = 1u64 << f.element_index(label).unwrap();
            prop_assert!(tau.is_involution());
            for i in 0..f.len() {
                let flipped = f.mask(i) ^ bit;
                let want = f.index_of(flipped).unwrap_or(i);
                prop_assert_eq!(tau.apply(i), want);
            }
        }
        let (norm, _) = f.normalize();
        prop_assert!(norm.is_normalized());
        prop_assert_eq!(norm.normalize().0, norm.clone());
    }

    #[test]
    fn small_toggle_groups_match_closure(f in (1usize..4).prop_flat_map(family)) {
        let g = toggle_group(&f).unwrap();
        prop_assume!(g.order_u64().is_some_and(|o| o <= 50_000));
        prop_assert_eq!(g.order_u64().unwrap(), closure(&build_toggles(&f).generators(), f.len()).len() as u64);
    }

    #[test]
    fn products_decompose_consistently(f1 in (1usize..3).prop_flat_map(family), f2 in (1usize..3).prop_flat_map(family)) {
        let (f1, _) = f1.normalize();
        let (f2, _) = f2.normalize();
        let f2 = f2.relabel(|e| format!("{e}'")).unwrap();
        let p = cartesian_product(&f1, &f2).unwrap();
        prop_assert_eq!(p.len(), f1.len() * f2.len());
        let g = toggle_group(&p).unwrap();
        prop_assert_eq!(g.order(), &(toggle_group(&f1).unwrap().order() * toggle_group(&f2).unwrap().order()));
        if g.is_transitive() {
            let tree = decompose(&p).unwrap();
            prop_assert_eq!(tree.leaf_degrees().iter().product::<usize>(), p.len());
            let leaf_orders: num_bigint::BigUint = tree.leaves().iter().map(|(_, g)| g.order().clone()).product();
            prop_assert_eq!(&leaf_orders, g.order());
        }
    }
}
