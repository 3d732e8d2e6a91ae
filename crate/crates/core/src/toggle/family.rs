//! Set families over a labelled ground set, stored as bitmasks.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 64;
pub const MAX_SETS: usize = 1 << 20;

/// A ground set `E` and a duplicate-free family `L` of subsets of `E`.
///
/// Member `i` of the family is point `i` for every permutation built from
/// it; ingestion order is preserved. Bit `j` of a mask stands for `ground[j]`.
#[derive(Clone, PartialEq, Eq)]
pub struct SetFamily {
    ground: Vec<String>,
    sets: Vec<u64>,
    index: HashMap<u64, usize>,
}

/// On-disk form: `{"ground": [...], "sets": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub ground: Vec<String>,
    pub sets: Vec<Vec<String>>,
}

impl SetFamily {
    pub fn from_masks(ground: Vec<String>, sets: Vec<u64>) -> Result<Self> {
        if ground.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge(ground.len()));
        }
        let mut seen = HashSet::new();
        for label in &ground {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateElement(label.clone()));
            }
        }
        if sets.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if sets.len() > MAX_SETS {
            return Err(Error::FamilyTooLarge(sets.len()));
        }
        let width_mask = if ground.len() == 64 {
            u64::MAX
        } else {
            (1u64 << ground.len()) - 1
        };
        let mut index = HashMap::with_capacity(sets.len());
        for (i, &mask) in sets.iter().enumerate() {
            if mask & !width_mask != 0 {
                return Err(Error::UnknownElement {
                    set: format!("{mask:#b}"),
                    element: format!("bit {}", (mask & !width_mask).trailing_zeros()),
                });
            }
            if index.insert(mask, i).is_some() {
                return Err(Error::DuplicateSet(format_mask(&ground, mask)));
            }
        }
        Ok(SetFamily {
            ground,
            sets,
            index,
        })
    }

    pub fn new<S: AsRef<str>>(ground: &[S], sets: &[Vec<S>]) -> Result<Self> {
        let ground: Vec<String> = ground.iter().map(|s| s.as_ref().to_owned()).collect();
        let pos: HashMap<&str, usize> = ground
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let mut masks = Vec::with_capacity(sets.len());
        for set in sets {
            let mut mask = 0u64;
            for e in set {
                match pos.get(e.as_ref()) {
                    Some(&j) => mask |= 1 << j,
                    None => {
                        let shown: Vec<&str> = set.iter().map(AsRef::as_ref).collect();
                        return Err(Error::UnknownElement {
                            set: format!("{{{}}}", shown.join(",")),
                            element: e.as_ref().to_owned(),
                        });
                    }
                }
            }
            masks.push(mask);
        }
        Self::from_masks(ground, masks)
    }

    pub fn from_file(file: &FamilyFile) -> Result<Self> {
        Self::new(&file.ground, &file.sets)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: FamilyFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> FamilyFile {
        FamilyFile {
            ground: self.ground.clone(),
            sets: (0..self.len()).map(|i| self.set_labels(i)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("family serializes")
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn ground_len(&self) -> usize {
        self.ground.len()
    }

    /// The degree n = |L|.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn masks(&self) -> &[u64] {
        &self.sets
    }

    pub fn mask(&self, i: usize) -> u64 {
        self.sets[i]
    }

    pub fn index_of(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    pub fn element_index(&self, label: &str) -> Option<usize> {
        self.ground.iter().position(|g| g == label)
    }

    pub fn mask_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Option<u64> {
        labels.iter().try_fold(0u64, |m, l| {
            self.element_index(l.as_ref()).map(|j| m | 1 << j)
        })
    }

    pub fn set_labels(&self, i: usize) -> Vec<String> {
        labels_of(&self.ground, self.sets[i])
    }

    pub fn format_set(&self, i: usize) -> String {
        format_mask(&self.ground, self.sets[i])
    }

    pub fn format_mask(&self, mask: u64) -> String {
        format_mask(&self.ground, mask)
    }

    /// Elements that lie in every set or in none.
    pub fn trivial_elements(&self) -> Vec<usize> {
        let all = self.sets.iter().fold(u64::MAX, |acc, &m| acc & m);
        let any = self.sets.iter().fold(0u64, |acc, &m| acc | m);
        (0..self.ground.len())
            .filter(|&j| all >> j & 1 == 1 || any >> j & 1 == 0)
            .collect()
    }

    /// Drops elements present in all sets or in none; set order is kept.
    pub fn normalize(&self) -> (SetFamily, Vec<String>) {
        let drop = self.trivial_elements();
        if drop.is_empty() {
            return (self.clone(), Vec::new());
        }
        let keep: Vec<usize> = (0..self.ground.len())
            .filter(|j| !drop.contains(j))
            .collect();
        let ground = keep.iter().map(|&j| self.ground[j].clone()).collect();
        let sets = self.sets.iter().map(|&m| compress(m, &keep)).collect();
        let removed = drop.iter().map(|&j| self.ground[j].clone()).collect();
        let family = SetFamily::from_masks(ground, sets)
            .expect("removing uniform elements keeps sets distinct");
        (family, removed)
    }

    pub fn is_normalized(&self) -> bool {
        self.trivial_elements().is_empty()
    }

    /// `{A ∩ S : A ∈ L}` over the sub-ground `S` (given by ground indices in
    /// increasing order), deduplicated in order of first occurrence.
    pub fn project(&self, keep: &[usize]) -> SetFamily {
        let ground = keep.iter().map(|&j| self.ground[j].clone()).collect();
        let mut seen = HashSet::new();
        let sets = self
            .sets
            .iter()
            .map(|&m| compress(m, keep))
            .filter(|m| seen.insert(*m))
            .collect();
        SetFamily::from_masks(ground, sets).expect("projection is duplicate-free")
    }

    /// Equality as a set of labelled sets, ignoring ground and set order.
    pub fn same_sets(&self, other: &SetFamily) -> bool {
        self.labelled_sets() == other.labelled_sets()
    }

    pub fn labelled_sets(&self) -> BTreeSet<BTreeSet<String>> {
        (0..self.len())
            .map(|i| self.set_labels(i).into_iter().collect())
            .collect()
    }

    pub fn relabel(&self, mut f: impl FnMut(&str) -> String) -> Result<SetFamily> {
        let ground = self.ground.iter().map(|g| f(g)).collect();
        SetFamily::from_masks(ground, self.sets.clone())
    }

    /// Canonical key: the ground labels plus the sorted masks.
    pub fn canonical_key(&self) -> (Vec<String>, Vec<u64>) {
        let mut sets = self.sets.clone();
        sets.sort_unstable();
        (self.ground.clone(), sets)
    }
}

/// The toggle-disjoint Cartesian product `{X1 ∪ X2}`, ordered `f1`-major.
pub fn cartesian_product(f1: &SetFamily, f2: &SetFamily) -> Result<SetFamily> {
    if let Some(shared) = f1.ground.iter().find(|g| f2.ground.contains(g)) {
        return Err(Error::OverlappingGrounds(shared.clone()));
    }
    let shift = f1.ground.len();
    if shift + f2.ground.len() > MAX_GROUND {
        return Err(Error::GroundTooLarge(shift + f2.ground.len()));
    }
    let ground = f1.ground.iter().chain(&f2.ground).cloned().collect();
    let sets = f1
        .sets
        .iter()
        .flat_map(|&a| f2.sets.iter().map(move |&b| a | b << shift))
        .collect();
    SetFamily::from_masks(ground, sets)
}

pub fn normalize(f: &SetFamily) -> (SetFamily, Vec<String>) {
    f.normalize()
}

fn compress(mask: u64, keep: &[usize]) -> u64 {
    keep.iter()
        .enumerate()
        .fold(0u64, |acc, (new, &old)| acc | (mask >> old & 1) << new)
}

fn labels_of(ground: &[String], mask: u64) -> Vec<String> {
    (0..ground.len())
        .filter(|&j| mask >> j & 1 == 1)
        .map(|j| ground[j].clone())
        .collect()
}

fn format_mask(ground: &[String], mask: u64) -> String {
    if mask == 0 {
        return "∅".to_owned();
    }
    format!("{{{}}}", labels_of(ground, mask).join(","))
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily(E={{{}}}, L={})", self.ground.join(","), self)
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.len()).map(|i| self.format_set(i)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(ground: &[&str], sets: &[&[&str]]) -> SetFamily {
        let sets: Vec<Vec<&str>> = sets.iter().map(|s| s.to_vec()).collect();
        SetFamily::new(ground, &sets).unwrap()
    }

    #[test]
    fn rejects_duplicates_and_unknowns() {
        let err = SetFamily::new(&["a", "b"], &[vec!["a"], vec!["b"], vec!["a"]]).unwrap_err();
        assert_eq!(err, Error::DuplicateSet("{a}".into()));
        let err = SetFamily::new(&["a", "b"], &[vec!["b", "a"], vec!["a", "b"]]).unwrap_err();
        assert_eq!(err, Error::DuplicateSet("{a,b}".into()));
        assert!(matches!(
            SetFamily::new(&["a"], &[vec!["z"]]),
            Err(Error::UnknownElement { .. })
        ));
        assert_eq!(
            SetFamily::new(&["a", "a"], &[vec![]]).unwrap_err(),
            Error::DuplicateElement("a".into())
        );
        assert_eq!(
            SetFamily::new::<&str>(&["a"], &[]).unwrap_err(),
            Error::EmptyFamily
        );
    }

    #[test]
    fn normalize_removes_uniform_elements() {
        let f = fam(&["a", "b"], &[&["a"], &["a", "b"]]);
        let (g, removed) = f.normalize();
        assert_eq!(removed, vec!["a".to_string()]);
        assert_eq!(g.ground(), &["b".to_string()]);
        assert_eq!(g.masks(), &[0, 1]);

        let chain2 = fam(&["a", "b"], &[&[], &["a"], &["a", "b"]]);
        let (g, removed) = chain2.normalize();
        assert!(removed.is_empty());
        assert_eq!(g, chain2);

        let single = fam(&["a"], &[&[], &["a"]]);
        assert_eq!(single.normalize().0, single);
    }

    #[test]
    fn product_of_chain_factors() {
        let f1 = fam(&["a"], &[&[], &["a"]]);
        let f2 = fam(&["b", "c"], &[&[], &["b"], &["b", "c"]]);
        let p = cartesian_product(&f1, &f2).unwrap();
        let expected = fam(
            &["a", "b", "c"],
            &[
                &[],
                &["b"],
                &["b", "c"],
                &["a"],
                &["a", "b"],
                &["a", "b", "c"],
            ],
        );
        assert!(p.same_sets(&expected));
        assert_eq!(p.to_string(), "{∅, {b}, {b,c}, {a}, {a,b}, {a,b,c}}");
    }

    #[test]
    fn product_identity_and_overlap() {
        let f = fam(&["a"], &[&[], &["a"]]);
        let unit = SetFamily::from_masks(vec![], vec![0]).unwrap();
        assert_eq!(cartesian_product(&f, &unit).unwrap(), f);
        assert_eq!(
            cartesian_product(&f, &f).unwrap_err(),
            Error::OverlappingGrounds("a".into())
        );
    }

    #[test]
    fn json_round_trip_and_diagnostics() {
        let f = fam(&["a", "b"], &[&[], &["b"], &["a", "b"]]);
        assert_eq!(SetFamily::from_json(&f.to_json()).unwrap(), f);

        let err =
            SetFamily::from_json("{\n  \"ground\": [\"a\"],\n  \"sets\": [[\"a\"], [\"a\"]]\n}")
                .unwrap_err();
        assert_eq!(err.to_string(), "duplicate set {a}");

        let err =
            SetFamily::from_json("{\n  \"ground\": [\"a\"],\n  \"sets\": [[\"a\"]\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
    }

    #[test]
    fn projection_keeps_first_occurrence_order() {
        let f = fam(
            &["a", "b", "c"],
            &[
                &[],
                &["b"],
                &["b", "c"],
                &["a"],
                &["a", "b"],
                &["a", "b", "c"],
            ],
        );
        let l1 = f.project(&[0]);
        assert_eq!(l1.masks(), &[0, 1]);
        let l2 = f.project(&[1, 2]);
        assert_eq!(l2.masks(), &[0, 1, 3]);
        assert_eq!(l2.ground(), &["b".to_string(), "c".to_string()]);
    }
}
