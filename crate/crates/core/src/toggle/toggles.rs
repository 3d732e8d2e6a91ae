use serde::Serialize;

use super::family::SetFamily;
use crate::error::{Error, Result};
use crate::permgroup::{orbits, schreier_sims, BlockSystem, GroupDescription, Permutation};

/// One permutation per ground element, in ground order.
///
/// Identity toggles stay in the set but are flagged and left out of
/// [`ToggleSet::generators`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToggleSet {
    toggles: Vec<(String, Permutation)>,
    identity_toggles: Vec<String>,
}

impl ToggleSet {
    /// Assembles a toggle set from arbitrary permutations (test harnesses use
    /// this to inject non-toggles).
    pub fn from_parts(toggles: Vec<(String, Permutation)>) -> Self {
        let identity_toggles = toggles
            .iter()
            .filter(|(_, p)| p.is_identity())
            .map(|(e, _)| e.clone())
            .collect();
        ToggleSet {
            toggles,
            identity_toggles,
        }
    }

    pub fn with_replaced(&self, label: &str, perm: Permutation) -> Self {
        let toggles = self
            .toggles
            .iter()
            .map(|(e, p)| (e.clone(), if e == label { perm.clone() } else { p.clone() }))
            .collect();
        Self::from_parts(toggles)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Permutation)> {
        self.toggles.iter().map(|(e, p)| (e.as_str(), p))
    }

    pub fn get(&self, label: &str) -> Option<&Permutation> {
        self.toggles
            .iter()
            .find(|(e, _)| e == label)
            .map(|(_, p)| p)
    }

    pub fn len(&self) -> usize {
        self.toggles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.toggles.is_empty()
    }

    pub fn identity_toggles(&self) -> &[String] {
        &self.identity_toggles
    }

    /// Non-identity toggles, in ground order.
    pub fn generators(&self) -> Vec<Permutation> {
        self.toggles
            .iter()
            .filter(|(_, p)| !p.is_identity())
            .map(|(_, p)| p.clone())
            .collect()
    }
}

/// `τ_e(X) = X △ {e}` when that set is in the family, else `X`.
pub fn build_toggles(f: &SetFamily) -> ToggleSet {
    let toggles = f
        .ground()
        .iter()
        .enumerate()
        .map(|(j, label)| {
            let bit = 1u64 << j;
            let images = f
                .masks()
                .iter()
                .enumerate()
                .map(|(i, &m)| f.index_of(m ^ bit).unwrap_or(i))
                .collect();
            (label.clone(), Permutation::from_images_unchecked(images))
        })
        .collect();
    ToggleSet::from_parts(toggles)
}

pub fn toggle_group(f: &SetFamily) -> Result<GroupDescription> {
    schreier_sims(&build_toggles(f).generators(), f.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ToggleType {
    /// Moves some block to a different block.
    Type1,
    /// Maps every block to itself setwise.
    Type2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToggleTypeMap {
    pub block_system: BlockSystem,
    pub types: Vec<(String, ToggleType)>,
}

impl ToggleTypeMap {
    pub fn type_of(&self, label: &str) -> Option<ToggleType> {
        self.types.iter().find(|(e, _)| e == label).map(|(_, t)| *t)
    }

    pub fn labels_of(&self, ty: ToggleType) -> Vec<&str> {
        self.types
            .iter()
            .filter(|(_, t)| *t == ty)
            .map(|(e, _)| e.as_str())
            .collect()
    }
}

pub fn classify_toggles(f: &SetFamily, ts: &ToggleSet, bs: &BlockSystem) -> Result<ToggleTypeMap> {
    if bs.degree() != f.len() {
        return Err(Error::DegreeMismatch {
            left: bs.degree(),
            right: f.len(),
        });
    }
    let mut types = Vec::with_capacity(ts.len());
    for (label, tau) in ts.iter() {
        if !bs.is_preserved_by(tau) {
            return Err(Error::BlockLawViolated(format!("toggle {label} = {tau}")));
        }
        let ty = if bs.fixes_every_block(tau) {
            ToggleType::Type2
        } else {
            ToggleType::Type1
        };
        types.push((label.to_owned(), ty));
    }
    Ok(ToggleTypeMap {
        block_system: bs.clone(),
        types,
    })
}

/// Orbits of the points under the type 1 toggles alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerPartition {
    pub layers: Vec<Vec<usize>>,
}

impl LayerPartition {
    /// Whether every layer meets every block exactly once.
    pub fn is_transversal(&self, bs: &BlockSystem) -> bool {
        self.layers.iter().all(|layer| {
            let mut hit = vec![false; bs.num_blocks()];
            layer.len() == bs.num_blocks()
                && layer
                    .iter()
                    .all(|&p| !std::mem::replace(&mut hit[bs.block_of()[p]], true))
        })
    }
}

pub fn layers(f: &SetFamily, ts: &ToggleSet, bs: &BlockSystem) -> Result<LayerPartition> {
    let types = classify_toggles(f, ts, bs)?;
    let type1: Vec<Permutation> = ts
        .iter()
        .filter(|(e, _)| types.type_of(e) == Some(ToggleType::Type1))
        .map(|(_, p)| p.clone())
        .collect();
    Ok(LayerPartition {
        layers: orbits(&type1, f.len())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn chain2_toggles() {
        let ts = build_toggles(&fixtures::chain2());
        assert_eq!(ts.get("a").unwrap(), &cyc(3, &[&[0, 1]]));
        assert_eq!(ts.get("b").unwrap(), &cyc(3, &[&[1, 2]]));
        assert!(ts.identity_toggles().is_empty());
    }

    #[test]
    fn boolean2_toggles() {
        let ts = build_toggles(&fixtures::boolean2());
        assert_eq!(ts.get("a").unwrap(), &cyc(4, &[&[0, 1], &[2, 3]]));
        assert_eq!(ts.get("b").unwrap(), &cyc(4, &[&[0, 2], &[1, 3]]));
    }

    #[test]
    fn identity_toggles_are_flagged() {
        let f = SetFamily::new(&["a", "b"], &[vec![], vec!["a", "b"]]).unwrap();
        let ts = build_toggles(&f);
        assert_eq!(ts.identity_toggles(), &["a".to_string(), "b".to_string()]);
        assert!(ts.generators().is_empty());
        assert_eq!(toggle_group(&f).unwrap().order_u64(), Some(1));
    }

    #[test]
    fn toggles_are_involutions() {
        for f in fixtures::all() {
            for (_, t) in build_toggles(&f).iter() {
                assert!(t.is_involution());
            }
        }
    }

    #[test]
    fn classify_prod23() {
        let f = fixtures::prod23();
        let ts = build_toggles(&f);
        let bs = BlockSystem::from_blocks(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let types = classify_toggles(&f, &ts, &bs).unwrap();
        assert_eq!(types.type_of("a"), Some(ToggleType::Type1));
        assert_eq!(types.type_of("b"), Some(ToggleType::Type2));
        assert_eq!(types.type_of("c"), Some(ToggleType::Type2));

        let lp = layers(&f, &ts, &bs).unwrap();
        assert_eq!(lp.layers, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert!(lp.is_transversal(&bs));
    }

    #[test]
    fn classify_boolean2() {
        let f = fixtures::boolean2();
        let ts = build_toggles(&f);
        let bs = BlockSystem::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let types = classify_toggles(&f, &ts, &bs).unwrap();
        assert_eq!(types.type_of("a"), Some(ToggleType::Type2));
        assert_eq!(types.type_of("b"), Some(ToggleType::Type1));
        let lp = layers(&f, &ts, &bs).unwrap();
        assert_eq!(lp.layers, vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn trivial_system_makes_everything_type2() {
        let f = fixtures::chain3();
        let ts = build_toggles(&f);
        let bs = BlockSystem::trivial(f.len());
        let types = classify_toggles(&f, &ts, &bs).unwrap();
        assert!(types.types.iter().all(|(_, t)| *t == ToggleType::Type2));
        let lp = layers(&f, &ts, &bs).unwrap();
        assert_eq!(lp.layers.len(), f.len());
    }

    #[test]
    fn block_law_violation_is_an_error() {
        let f = fixtures::chain3();
        let ts = build_toggles(&f);
        let bad = BlockSystem::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(
            classify_toggles(&f, &ts, &bad),
            Err(Error::BlockLawViolated(_))
        ));
        assert!(matches!(
            classify_toggles(&f, &ts, &BlockSystem::trivial(3)),
            Err(Error::DegreeMismatch { .. })
        ));
    }
}
