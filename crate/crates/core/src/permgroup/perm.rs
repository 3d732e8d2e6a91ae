//! Permutations of `{0..n-1}` in one-line (image array) form.
//!
//! Composition is right-to-left throughout the crate: `p.compose(&q)` applies
//! `q` first and then `p`, so `(p ∘ q)(i) = p(q(i))`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Default, Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// Parity of a single cycle of length `k` (k-1 transpositions).
    pub fn of_cycle_length(k: usize) -> Self {
        if k.is_multiple_of(2) {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl std::ops::BitXor for Parity {
    type Output = Parity;

    fn bitxor(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A bijection on `{0..n-1}`; `images[i]` is the image of point `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

/// Disjoint nontrivial cycles in canonical order plus the fixed-point count.
///
/// Each cycle starts at its least point; cycles are sorted by least point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleStructure {
    pub cycles: Vec<Vec<usize>>,
    pub fixed_points: usize,
}

impl CycleStructure {
    pub fn degree(&self) -> usize {
        self.fixed_points + self.cycles.iter().map(Vec::len).sum::<usize>()
    }

    /// Sorted multiset of nontrivial cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        lens.sort_unstable();
        lens
    }

    pub fn parity(&self) -> Parity {
        let even_cycles = self.cycles.iter().filter(|c| c.len() % 2 == 0).count();
        if even_cycles % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// `Some(k)` when the permutation is a single k-cycle (k >= 2).
    pub fn single_cycle_length(&self) -> Option<usize> {
        match self.cycles.as_slice() {
            [c] => Some(c.len()),
            _ => None,
        }
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1], &[2, 3]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(Error::PointOutOfRange {
                        point: x,
                        degree: n,
                    });
                }
                if std::mem::replace(&mut touched[x], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} appears in more than one cycle"
                    )));
                }
                images[x] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: applies `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// Unchecked `self ∘ other`.
    #[inline]
    pub(crate) fn mul(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, x)| i != *x)
            .map(|(i, _)| i)
    }

    pub fn cycle_decomposition(&self) -> CycleStructure {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        let mut fixed_points = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() == 1 {
                fixed_points += 1;
            } else {
                cycles.push(cycle);
            }
        }
        CycleStructure {
            cycles,
            fixed_points,
        }
    }

    pub fn parity(&self) -> Parity {
        // n minus the number of cycles (fixed points included) counts transpositions.
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
            }
        }
        if (n - cycles).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| self.images[x] == i)
    }

    pub fn order(&self) -> u64 {
        self.cycle_decomposition()
            .cycles
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.degree() == other.degree()
            && (0..self.degree())
                .all(|i| self.images[other.images[i]] == other.images[self.images[i]])
    }
}

pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

pub fn cycle_decomposition(p: &Permutation) -> CycleStructure {
    p.cycle_decomposition()
}

pub fn parity(p: &Permutation) -> Parity {
    p.parity()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycle_decomposition();
        if cs.cycles.is_empty() {
            return f.write_str("()");
        }
        for c in &cs.cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn compose_identity_and_inverse() {
        let p = cyc(5, &[&[0, 3, 1], &[2, 4]]);
        let id = Permutation::identity(5);
        assert_eq!(id.compose(&p).unwrap(), p);
        assert_eq!(p.compose(&id).unwrap(), p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_is_right_to_left() {
        // Hand check: (1 2) sends 0->0, 1->2, 2->1; then (0 1) sends 0->1, 2->0, 1->1.
        // So 0->1, 1->2, 2->0.
        let p = cyc(3, &[&[0, 1]]);
        let q = cyc(3, &[&[1, 2]]);
        assert_eq!(p.compose(&q).unwrap(), cyc(3, &[&[0, 1, 2]]));
    }

    #[test]
    fn compose_degree_mismatch() {
        let err = Permutation::identity(2).compose(&Permutation::identity(3));
        assert_eq!(err, Err(Error::DegreeMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn canonical_cycles() {
        let cs = Permutation::identity(5).cycle_decomposition();
        assert!(cs.cycles.is_empty());
        assert_eq!(cs.fixed_points, 5);

        let cs = cyc(4, &[&[3, 2], &[1, 0]]).cycle_decomposition();
        assert_eq!(cs.cycles, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(cs.fixed_points, 0);

        let cs = cyc(6, &[&[4, 2, 5]]).cycle_decomposition();
        assert_eq!(cs.cycles, vec![vec![2, 5, 4]]);
        assert_eq!(cs.fixed_points, 3);
    }

    #[test]
    fn parity_of_small_cycles() {
        assert_eq!(cyc(4, &[&[1, 3]]).parity(), Parity::Odd);
        assert_eq!(cyc(4, &[&[0, 1, 2]]).parity(), Parity::Even);
        assert_eq!(cyc(6, &[&[0, 1, 2, 3, 4, 5]]).parity(), Parity::Odd);
        assert_eq!(cyc(4, &[&[0, 1], &[2, 3]]).parity(), Parity::Even);
        assert_eq!(Permutation::identity(0).parity(), Parity::Even);
    }

    #[test]
    fn display_uses_cycle_notation() {
        assert_eq!(cyc(4, &[&[2, 3], &[0, 1]]).to_string(), "(0 1)(2 3)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn pow_and_order() {
        let p = cyc(5, &[&[0, 1, 2], &[3, 4]]);
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
        assert!(!p.pow(3).is_identity());
        assert_eq!(p.pow(2), p.compose(&p).unwrap());
    }

    #[test]
    fn serde_roundtrip_validates() {
        let p = cyc(3, &[&[0, 2]]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[2,1,0]");
        assert_eq!(serde_json::from_str::<Permutation>(&s).unwrap(), p);
        assert!(serde_json::from_str::<Permutation>("[0,0]").is_err());
    }
}
