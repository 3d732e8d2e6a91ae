//! Finite posets given by cover relations, and their order ideals.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::toggle::family::{MAX_GROUND, MAX_SETS};
use crate::toggle::SetFamily;

/// On-disk form: `{"elements": [...], "covers": [["lower", "upper"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    /// `(lower, upper)` index pairs of the transitive reduction.
    covers: Vec<(usize, usize)>,
    /// `below[j]`: mask of elements strictly below `j`.
    below: Vec<u64>,
}

impl Poset {
    /// Validates a cover list. Redundant pairs (repeats, or pairs implied by
    /// the others) are dropped and reported as warnings.
    pub fn new<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<(Self, Vec<String>)> {
        let elements: Vec<String> = elements.iter().map(|e| e.as_ref().to_owned()).collect();
        if elements.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge(elements.len()));
        }
        let mut pos = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if pos.insert(e.as_str(), i).is_some() {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        let lookup = |s: &S| {
            pos.get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownLabel(s.as_ref().to_owned()))
        };
        let mut warnings = Vec::new();
        let mut seen = HashSet::new();
        let mut pairs = Vec::new();
        for (lo, hi) in covers {
            let (a, b) = (lookup(lo)?, lookup(hi)?);
            if a == b {
                return Err(Error::PosetCycle(elements[a].clone()));
            }
            if seen.insert((a, b)) {
                pairs.push((a, b));
            } else {
                warnings.push(format!(
                    "duplicate cover ({}, {}) dropped",
                    elements[a], elements[b]
                ));
            }
        }

        let n = elements.len();
        let order =
            topological_order(n, &pairs).map_err(|i| Error::PosetCycle(elements[i].clone()))?;
        let mut below = vec![0u64; n];
        for &j in &order {
            for &(a, b) in &pairs {
                if b == j {
                    below[j] |= below[a] | 1 << a;
                }
            }
        }
        let mut kept = Vec::with_capacity(pairs.len());
        for &(a, b) in &pairs {
            // Implied if some c sits strictly between a and b.
            let between = below[b] & !(1 << a);
            let implied = (0..n).any(|c| between >> c & 1 == 1 && below[c] >> a & 1 == 1);
            if implied {
                warnings.push(format!(
                    "redundant cover ({}, {}) dropped",
                    elements[a], elements[b]
                ));
            } else {
                kept.push((a, b));
            }
        }
        Ok((
            Poset {
                elements,
                covers: kept,
                below,
            },
            warnings,
        ))
    }

    pub fn from_file(file: &PosetFile) -> Result<(Self, Vec<String>)> {
        let covers: Vec<(&str, &str)> = file
            .covers
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        let elements: Vec<&str> = file.elements.iter().map(String::as_str).collect();
        Self::new(&elements, &covers)
    }

    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            elements: self.elements.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(a, b)| [self.elements[a].clone(), self.elements[b].clone()])
                .collect(),
        }
    }

    pub fn chain(k: usize) -> Self {
        let names: Vec<String> = (0..k).map(|i| format!("p{i}")).collect();
        let covers: Vec<(String, String)> = (1..k)
            .map(|i| (names[i - 1].clone(), names[i].clone()))
            .collect();
        Self::new(&names, &covers).expect("chain is valid").0
    }

    pub fn antichain(k: usize) -> Self {
        let names: Vec<String> = (0..k).map(|i| format!("p{i}")).collect();
        Self::new::<String>(&names, &[])
            .expect("antichain is valid")
            .0
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn less_than(&self, a: usize, b: usize) -> bool {
        self.below[b] >> a & 1 == 1
    }

    /// Connected components of the undirected Hasse diagram, by least element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp: Vec<usize> = (0..n).collect();
        fn root(comp: &mut [usize], mut x: usize) -> usize {
            while comp[x] != x {
                comp[x] = comp[comp[x]];
                x = comp[x];
            }
            x
        }
        for &(a, b) in &self.covers {
            let (ra, rb) = (root(&mut comp, a), root(&mut comp, b));
            comp[ra.max(rb)] = ra.min(rb);
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = HashMap::new();
        for x in 0..n {
            let r = root(&mut comp, x);
            let idx = *slot.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[idx].push(x);
        }
        groups
    }
}

/// Kahn's algorithm; on a cycle returns some element on it.
fn topological_order(n: usize, pairs: &[(usize, usize)]) -> std::result::Result<Vec<usize>, usize> {
    let mut indeg = vec![0usize; n];
    for &(_, b) in pairs {
        indeg[b] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).rev().collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = ready.pop() {
        order.push(x);
        for &(a, b) in pairs {
            if a == x {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.push(b);
                }
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n)
            .find(|&i| indeg[i] > 0)
            .expect("some element is on a cycle");
        return Err(stuck);
    }
    Ok(order)
}

pub fn parse_poset(text: &str) -> Result<(Poset, Vec<String>)> {
    let file: PosetFile = serde_json::from_str(text)?;
    Poset::from_file(&file)
}

/// All down-closed subsets, ordered by size and then lexicographically by
/// their sorted element positions. The ground is the poset's element list.
pub fn order_ideals(p: &Poset) -> Result<SetFamily> {
    let n = p.len();
    let order = topological_order(n, &p.covers).expect("validated poset is acyclic");
    let lower_covers: Vec<u64> = (0..n)
        .map(|j| {
            p.covers
                .iter()
                .filter(|&&(_, b)| b == j)
                .fold(0u64, |m, &(a, _)| m | 1 << a)
        })
        .collect();

    let mut ideals = Vec::new();
    let mut stack = vec![(0usize, 0u64)];
    while let Some((depth, mask)) = stack.pop() {
        if depth == n {
            ideals.push(mask);
            if ideals.len() > MAX_SETS {
                return Err(Error::FamilyTooLarge(ideals.len()));
            }
            continue;
        }
        let x = order[depth];
        stack.push((depth + 1, mask));
        if lower_covers[x] & !mask == 0 {
            stack.push((depth + 1, mask | 1 << x));
        }
    }
    ideals.sort_by_key(|&m| (m.count_ones(), bit_positions(m)));
    SetFamily::from_masks(p.elements.clone(), ideals)
}

fn bit_positions(mask: u64) -> Vec<u32> {
    (0..64).filter(|&j| mask >> j & 1 == 1).collect()
}

/// Connectivity of the undirected cover graph; the empty poset counts as connected.
pub fn hasse_connected(p: &Poset) -> bool {
    p.components().len() <= 1
}

/// Every partial order on `k` labelled elements `p0..p{k-1}` (k <= 4 is instant).
pub fn all_posets(k: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|a| (0..k).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let names: Vec<String> = (0..k).map(|i| format!("p{i}")).collect();
    let mut out = Vec::new();
    for bits in 0u64..1 << pairs.len() {
        let mut rel = vec![vec![false; k]; k];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            rel[a][b] = bits >> i & 1 == 1;
        }
        let antisymmetric = (0..k).all(|a| (0..k).all(|b| !(rel[a][b] && rel[b][a])));
        let transitive =
            (0..k).all(|a| (0..k).all(|b| !rel[a][b] || (0..k).all(|c| !rel[b][c] || rel[a][c])));
        if !(antisymmetric && transitive) {
            continue;
        }
        let covers: Vec<(String, String)> = pairs
            .iter()
            .filter(|&&(a, b)| rel[a][b] && !(0..k).any(|c| rel[a][c] && rel[c][b]))
            .map(|&(a, b)| (names[a].clone(), names[b].clone()))
            .collect();
        out.push(Poset::new(&names, &covers).expect("partial order").0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn poset(elements: &[&str], covers: &[(&str, &str)]) -> Result<(Poset, Vec<String>)> {
        Poset::new(elements, covers)
    }

    #[test]
    fn parse_chain_and_antichain() {
        let (p, w) = parse_poset(r#"{"elements": ["a", "b"], "covers": [["a", "b"]]}"#).unwrap();
        assert!(w.is_empty());
        assert_eq!(p.covers(), &[(0, 1)]);
        assert!(p.less_than(0, 1));

        let (p, _) = parse_poset(r#"{"elements": ["a", "b"], "covers": []}"#).unwrap();
        assert!(p.covers().is_empty());
        assert!(!hasse_connected(&p));
    }

    #[test]
    fn cycles_and_unknown_labels_are_rejected() {
        assert!(matches!(
            poset(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(Error::PosetCycle(_))
        ));
        assert!(matches!(
            poset(&["a"], &[("a", "a")]),
            Err(Error::PosetCycle(_))
        ));
        assert_eq!(
            poset(&["a"], &[("a", "z")]).unwrap_err(),
            Error::UnknownLabel("z".into())
        );
    }

    #[test]
    fn redundant_covers_are_dropped_with_warning() {
        let (p, w) = poset(
            &["a", "b", "c"],
            &[("a", "b"), ("b", "c"), ("a", "c"), ("a", "b")],
        )
        .unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn ideals_of_small_posets() {
        let (chain2, _) = poset(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(order_ideals(&chain2).unwrap(), fixtures::chain2());
        let (anti, _) = poset(&["a", "b"], &[]).unwrap();
        assert_eq!(order_ideals(&anti).unwrap(), fixtures::boolean2());
        let (chain3, _) = poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(order_ideals(&chain3).unwrap(), fixtures::chain3());
    }

    #[test]
    fn empty_poset() {
        let p = Poset::antichain(0);
        assert!(hasse_connected(&p));
        let j = order_ideals(&p).unwrap();
        assert_eq!(j.len(), 1);
    }

    #[test]
    fn ideal_counts() {
        for k in 0..=6 {
            assert_eq!(order_ideals(&Poset::antichain(k)).unwrap().len(), 1 << k);
            assert_eq!(order_ideals(&Poset::chain(k)).unwrap().len(), k + 1);
        }
    }

    #[test]
    fn ideals_form_a_distributive_lattice() {
        for k in 0..=4 {
            for p in all_posets(k) {
                let j = order_ideals(&p).unwrap();
                for &a in j.masks() {
                    for &b in j.masks() {
                        assert!(j.index_of(a & b).is_some());
                        assert!(j.index_of(a | b).is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn labelled_poset_counts() {
        // Labelled posets on 0..4 points: 1, 1, 3, 19, 219.
        let counts: Vec<usize> = (0..=4).map(|k| all_posets(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219]);
    }
}
