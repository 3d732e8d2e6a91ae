//! Toggle-disjoint Cartesian factorization along a block system, and the
//! recursive decomposition built from it.

use std::collections::HashMap;

use super::family::SetFamily;
use super::toggles::{build_toggles, classify_toggles, toggle_group, ToggleType};
use crate::error::{Error, Result};
use crate::permgroup::{nontrivial_block_systems, BlockSystem, GroupDescription};

/// A verified splitting `L = L1 ⊗ L2` with disjoint grounds `E1 ∪ E2 = E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    e1: Vec<String>,
    e2: Vec<String>,
    l1: SetFamily,
    l2: SetFamily,
    /// `coords[i] = (i1, i2)` with `L[i] = L1[i1] ∪ L2[i2]`.
    coords: Vec<(usize, usize)>,
}

impl Factorization {
    /// Checks every invariant: disjoint grounds covering `E`, `ℓ·m = n` and
    /// `{X1 ∪ X2} = L` as sets of sets.
    pub fn new(f: &SetFamily, l1: SetFamily, l2: SetFamily) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidFactorization(msg));
        if let Some(shared) = l1.ground().iter().find(|g| l2.ground().contains(g)) {
            return bad(format!("grounds share `{shared}`"));
        }
        if l1.ground_len() + l2.ground_len() != f.ground_len() {
            return bad("factor grounds do not cover the ground set".into());
        }
        let lift = |part: &SetFamily| -> Option<Vec<u64>> {
            let pos: Option<Vec<usize>> =
                part.ground().iter().map(|g| f.element_index(g)).collect();
            let pos = pos?;
            Some(
                part.masks()
                    .iter()
                    .map(|&m| {
                        pos.iter()
                            .enumerate()
                            .fold(0u64, |acc, (j, &p)| acc | (m >> j & 1) << p)
                    })
                    .collect(),
            )
        };
        let (Some(lift1), Some(lift2)) = (lift(&l1), lift(&l2)) else {
            return bad("factor ground element missing from the ground set".into());
        };
        let (ell, m) = (l1.len(), l2.len());
        if ell * m != f.len() {
            return bad(format!("{ell}·{m} != {}", f.len()));
        }
        let mut coords = vec![(usize::MAX, usize::MAX); f.len()];
        for (i1, &a) in lift1.iter().enumerate() {
            for (i2, &b) in lift2.iter().enumerate() {
                match f.index_of(a | b) {
                    Some(i) if coords[i].0 == usize::MAX => coords[i] = (i1, i2),
                    Some(_) => unreachable!("disjoint grounds give distinct unions"),
                    None => {
                        return bad(format!(
                            "{} is not a member of the family",
                            f.format_mask(a | b)
                        ))
                    }
                }
            }
        }
        Ok(Factorization {
            e1: l1.ground().to_vec(),
            e2: l2.ground().to_vec(),
            l1,
            l2,
            coords,
        })
    }

    pub fn e1(&self) -> &[String] {
        &self.e1
    }

    pub fn e2(&self) -> &[String] {
        &self.e2
    }

    pub fn l1(&self) -> &SetFamily {
        &self.l1
    }

    pub fn l2(&self) -> &SetFamily {
        &self.l2
    }

    /// Number of blocks, `|L1|`.
    pub fn ell(&self) -> usize {
        self.l1.len()
    }

    /// Block size, `|L2|`.
    pub fn m(&self) -> usize {
        self.l2.len()
    }

    pub fn coords(&self) -> &[(usize, usize)] {
        &self.coords
    }

    /// The product block system `{L1[i] ∪ X2 : X2 ∈ L2}`.
    pub fn product_blocks(&self) -> BlockSystem {
        let labels: Vec<usize> = self.coords.iter().map(|&(i1, _)| i1).collect();
        BlockSystem::from_labels(&labels).expect("product blocks have equal size")
    }
}

/// Splits `f` along `bs` into type 1 / type 2 ground elements.
///
/// Returns `Ok(None)` when the family is not a product along this system;
/// the counts and the product equation are all checked.
pub fn try_factor(f: &SetFamily, bs: &BlockSystem) -> Result<Option<Factorization>> {
    if bs.is_trivial() {
        return Err(Error::MalformedBlockSystem(
            "block system is trivial".into(),
        ));
    }
    let ts = build_toggles(f);
    let group_gens = ts.generators();
    let orbs = crate::permgroup::orbits(&group_gens, f.len())?;
    if orbs.len() > 1 {
        return Err(Error::NotTransitive {
            degree: f.len(),
            orbits: orbs.len(),
        });
    }
    let types = classify_toggles(f, &ts, bs)?;
    let (mut e1, mut e2) = (Vec::new(), Vec::new());
    for (j, label) in f.ground().iter().enumerate() {
        match types.type_of(label) {
            Some(ToggleType::Type1) => e1.push(j),
            _ => e2.push(j),
        }
    }
    let l1 = f.project(&e1);
    let l2 = f.project(&e2);
    if l1.len() != bs.num_blocks() || l2.len() != bs.block_size() {
        return Ok(None);
    }
    Ok(Factorization::new(f, l1, l2).ok())
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum FactorizationTree {
    Leaf {
        family: SetFamily,
        group: GroupDescription,
    },
    Node {
        family: SetFamily,
        block_system: BlockSystem,
        factorization: Factorization,
        children: Vec<FactorizationTree>,
    },
}

impl FactorizationTree {
    pub fn family(&self) -> &SetFamily {
        match self {
            FactorizationTree::Leaf { family, .. } | FactorizationTree::Node { family, .. } => {
                family
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.family().len()
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, FactorizationTree::Leaf { .. })
    }

    /// Leaves left to right.
    pub fn leaves(&self) -> Vec<(&SetFamily, &GroupDescription)> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<(&'a SetFamily, &'a GroupDescription)>) {
        match self {
            FactorizationTree::Leaf { family, group } => out.push((family, group)),
            FactorizationTree::Node { children, .. } => {
                children.iter().for_each(|c| c.collect_leaves(out))
            }
        }
    }

    pub fn leaf_degrees(&self) -> Vec<usize> {
        self.leaves().iter().map(|(f, _)| f.len()).collect()
    }

    /// Every internal split, parent first.
    pub fn splits(&self) -> Vec<(&SetFamily, &Factorization)> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if let FactorizationTree::Node {
                family,
                factorization,
                children,
                ..
            } = t
            {
                out.push((family, factorization));
                stack.extend(children.iter().rev());
            }
        }
        out
    }
}

/// Repeatedly factors along the first block system (in the deterministic
/// order of [`nontrivial_block_systems`]) that yields a product.
pub fn decompose(f: &SetFamily) -> Result<FactorizationTree> {
    let group = toggle_group(f)?;
    let orbs = group.orbits();
    if orbs.len() > 1 {
        return Err(Error::NotTransitive {
            degree: f.len(),
            orbits: orbs.len(),
        });
    }
    decompose_with(f, group)
}

fn decompose_with(f: &SetFamily, group: GroupDescription) -> Result<FactorizationTree> {
    if f.len() >= 2 {
        for bs in nontrivial_block_systems(group.generators(), f.len())? {
            if let Some(fact) = try_factor(f, &bs)? {
                let children = vec![
                    decompose_with(fact.l1(), toggle_group(fact.l1())?)?,
                    decompose_with(fact.l2(), toggle_group(fact.l2())?)?,
                ];
                return Ok(FactorizationTree::Node {
                    family: f.clone(),
                    block_system: bs,
                    factorization: fact,
                    children,
                });
            }
        }
    }
    Ok(FactorizationTree::Leaf {
        family: f.clone(),
        group,
    })
}

/// Checks `|T(L)| = |T(L1)|·|T(L2)|` and that each toggle of `L` acts as the
/// matching factor toggle on its own coordinate.
pub fn verify_direct_product(f: &SetFamily, fact: &Factorization) -> Result<bool> {
    let (g, g1, g2) = (
        toggle_group(f)?,
        toggle_group(fact.l1())?,
        toggle_group(fact.l2())?,
    );
    if *g.order() != g1.order() * g2.order() {
        return Ok(false);
    }
    let mut index_of: HashMap<(usize, usize), usize> = HashMap::with_capacity(f.len());
    for (i, &c) in fact.coords().iter().enumerate() {
        index_of.insert(c, i);
    }
    let ts = build_toggles(f);
    let (t1, t2) = (build_toggles(fact.l1()), build_toggles(fact.l2()));
    for (label, tau) in ts.iter() {
        let ok = if let Some(tau1) = t1.get(label) {
            (0..f.len()).all(|i| {
                let (i1, i2) = fact.coords()[i];
                tau.apply(i) == index_of[&(tau1.apply(i1), i2)]
            })
        } else if let Some(tau2) = t2.get(label) {
            (0..f.len()).all(|i| {
                let (i1, i2) = fact.coords()[i];
                tau.apply(i) == index_of[&(i1, tau2.apply(i2))]
            })
        } else {
            false
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::toggle::family::cartesian_product;

    fn fam(ground: &[&str], sets: &[&[&str]]) -> SetFamily {
        let sets: Vec<Vec<&str>> = sets.iter().map(|s| s.to_vec()).collect();
        SetFamily::new(ground, &sets).unwrap()
    }

    #[test]
    fn prod23_factors_along_product_blocks() {
        let f = fixtures::prod23();
        let bs = BlockSystem::from_blocks(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let fact = try_factor(&f, &bs).unwrap().expect("product");
        assert_eq!(fact.e1(), &["a".to_string()]);
        assert_eq!(fact.e2(), &["b".to_string(), "c".to_string()]);
        assert!(fact.l1().same_sets(&fam(&["a"], &[&[], &["a"]])));
        assert!(fact
            .l2()
            .same_sets(&fam(&["b", "c"], &[&[], &["b"], &["b", "c"]])));
        assert_eq!((fact.ell(), fact.m()), (2, 3));
        assert_eq!(fact.product_blocks(), bs);
        assert!(verify_direct_product(&f, &fact).unwrap());
    }

    #[test]
    fn boolean2_factors() {
        let f = fixtures::boolean2();
        let bs = BlockSystem::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let fact = try_factor(&f, &bs).unwrap().expect("product");
        assert_eq!(fact.e1(), &["b".to_string()]);
        assert_eq!(fact.e2(), &["a".to_string()]);
        assert!(fact.l1().same_sets(&fam(&["b"], &[&[], &["b"]])));
        assert!(fact.l2().same_sets(&fam(&["a"], &[&[], &["a"]])));
        assert!(verify_direct_product(&f, &fact).unwrap());
    }

    #[test]
    fn chain2_has_no_nontrivial_system() {
        let f = fixtures::chain2();
        assert!(try_factor(&f, &BlockSystem::trivial(3)).is_err());
        let tree = decompose(&f).unwrap();
        assert!(tree.is_leaf());
        assert_eq!(tree.leaf_degrees(), vec![3]);
    }

    #[test]
    fn decompose_fixtures() {
        // Size-2 blocks come first, so the 3-point factor is split off as L1.
        assert_eq!(
            decompose(&fixtures::prod23()).unwrap().leaf_degrees(),
            vec![3, 2]
        );
        assert_eq!(
            decompose(&fixtures::boolean2()).unwrap().leaf_degrees(),
            vec![2, 2]
        );
        assert_eq!(
            decompose(&fixtures::chain3()).unwrap().leaf_degrees(),
            vec![4]
        );
    }

    #[test]
    fn decompose_rejects_intransitive() {
        let f = fam(&["a", "b"], &[&[], &["a", "b"]]);
        assert!(matches!(decompose(&f), Err(Error::NotTransitive { .. })));
    }

    #[test]
    fn corrupted_factorization_fails_invariants() {
        let f = fixtures::prod23();
        // Swap {a} for {c} in L1: the product no longer reproduces L.
        let l1 = fam(&["a"], &[&[], &["a"]]);
        let l2 = fam(&["b", "c"], &[&[], &["b"], &["b", "c"]]);
        assert!(Factorization::new(&f, l1.clone(), l2.clone()).is_ok());
        let bad_l2 = fam(&["b", "c"], &[&[], &["c"], &["b", "c"]]);
        assert!(matches!(
            Factorization::new(&f, l1.clone(), bad_l2),
            Err(Error::InvalidFactorization(_))
        ));
        let overlapping = fam(&["a", "b"], &[&[], &["a"]]);
        assert!(Factorization::new(&f, overlapping, l2).is_err());
    }

    #[test]
    fn product_round_trip() {
        let f1 = fam(&["x"], &[&[], &["x"]]);
        let f2 = fam(&["y", "z"], &[&[], &["y"], &["y", "z"]]);
        let p = cartesian_product(&f1, &f2).unwrap();
        let fact = Factorization::new(&p, f1.clone(), f2.clone()).unwrap();
        let recovered = try_factor(&p, &fact.product_blocks()).unwrap().unwrap();
        assert!(recovered.l1().same_sets(&f1));
        assert!(recovered.l2().same_sets(&f2));
    }
}
