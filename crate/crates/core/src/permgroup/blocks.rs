//! Block systems of transitive groups via union-find refinement.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::chain::orbits;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// A partition of the points into equal-size blocks.
///
/// `block_of` is canonical: blocks are numbered by first occurrence, so two
/// equal partitions always have equal `block_of` arrays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockSystem {
    block_of: Vec<usize>,
    num_blocks: usize,
    block_size: usize,
}

impl BlockSystem {
    /// Canonicalizes arbitrary block labels; blocks must have equal sizes.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::MalformedBlockSystem("no points".into()));
        }
        let mut renumber = std::collections::HashMap::new();
        let block_of: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = renumber.len();
                *renumber.entry(*l).or_insert(next)
            })
            .collect();
        let num_blocks = renumber.len();
        let mut sizes = vec![0usize; num_blocks];
        for &b in &block_of {
            sizes[b] += 1;
        }
        let block_size = sizes[0];
        if sizes.iter().any(|&s| s != block_size) {
            return Err(Error::MalformedBlockSystem(format!(
                "unequal block sizes {sizes:?}"
            )));
        }
        Ok(BlockSystem {
            block_of,
            num_blocks,
            block_size,
        })
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            for &p in block {
                if p >= n {
                    return Err(Error::PointOutOfRange {
                        point: p,
                        degree: n,
                    });
                }
                if labels[p] != usize::MAX {
                    return Err(Error::MalformedBlockSystem(format!(
                        "point {p} in two blocks"
                    )));
                }
                labels[p] = i;
            }
        }
        if let Some(p) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::MalformedBlockSystem(format!(
                "point {p} in no block"
            )));
        }
        Self::from_labels(&labels)
    }

    pub fn trivial(n: usize) -> Self {
        BlockSystem {
            block_of: vec![0; n],
            num_blocks: 1,
            block_size: n,
        }
    }

    pub fn degree(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn is_trivial(&self) -> bool {
        self.num_blocks == 1 || self.block_size == 1
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::with_capacity(self.block_size); self.num_blocks];
        for (p, &b) in self.block_of.iter().enumerate() {
            out[b].push(p);
        }
        out
    }

    /// Block law: `g` maps every block onto a block.
    pub fn is_preserved_by(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree() {
            return false;
        }
        let mut image_block = vec![usize::MAX; self.num_blocks];
        for (p, &b) in self.block_of.iter().enumerate() {
            let target = self.block_of[g.apply(p)];
            match image_block[b] {
                usize::MAX => image_block[b] = target,
                t if t != target => return false,
                _ => {}
            }
        }
        // Equal block sizes make the induced map injective iff surjective.
        let distinct: BTreeSet<usize> = image_block.iter().copied().collect();
        distinct.len() == self.num_blocks
    }

    /// The induced action on blocks, or `None` when the block law fails.
    pub fn block_action(&self, g: &Permutation) -> Option<Vec<usize>> {
        if !self.is_preserved_by(g) {
            return None;
        }
        let mut action = vec![0; self.num_blocks];
        for (p, &b) in self.block_of.iter().enumerate() {
            action[b] = self.block_of[g.apply(p)];
        }
        Some(action)
    }

    /// Whether `g` maps every block to itself setwise.
    pub fn fixes_every_block(&self, g: &Permutation) -> bool {
        self.block_of
            .iter()
            .enumerate()
            .all(|(p, &b)| self.block_of[g.apply(p)] == b)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

fn require_transitive(gens: &[Permutation], n: usize) -> Result<()> {
    let orbs = orbits(gens, n)?;
    if orbs.len() > 1 {
        return Err(Error::NotTransitive {
            degree: n,
            orbits: orbs.len(),
        });
    }
    Ok(())
}

/// Smallest block system in which `alpha` and `beta` share a block.
///
/// Pairs known to be equivalent are queued; for each queued pair every
/// generator image pair is merged. The queued pairs span the relation, so a
/// closed queue means the partition is invariant.
pub fn minimal_block(
    gens: &[Permutation],
    n: usize,
    alpha: usize,
    beta: usize,
) -> Result<BlockSystem> {
    for p in [alpha, beta] {
        if p >= n {
            return Err(Error::PointOutOfRange {
                point: p,
                degree: n,
            });
        }
    }
    if alpha == beta {
        return Err(Error::SamePoint(alpha));
    }
    require_transitive(gens, n)?;
    Ok(minimal_block_unchecked(gens, n, alpha, beta))
}

fn minimal_block_unchecked(
    gens: &[Permutation],
    n: usize,
    alpha: usize,
    beta: usize,
) -> BlockSystem {
    let mut uf = UnionFind::new(n);
    uf.union(alpha, beta);
    let mut queue = vec![(alpha, beta)];
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let (gx, gy) = (g.apply(x), g.apply(y));
            let (rx, ry) = (uf.find(gx), uf.find(gy));
            if uf.union(rx, ry) {
                queue.push((rx, ry));
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|p| uf.find(p)).collect();
    BlockSystem::from_labels(&labels).expect("transitive group gives equal blocks")
}

/// All distinct nontrivial systems of the form `minimal_block(0, beta)`,
/// ordered by block size and then by `block_of`.
pub fn nontrivial_block_systems(gens: &[Permutation], n: usize) -> Result<Vec<BlockSystem>> {
    require_transitive(gens, n)?;
    let systems: BTreeSet<(usize, BlockSystem)> = (1..n)
        .map(|beta| minimal_block_unchecked(gens, n, 0, beta))
        .filter(|bs| !bs.is_trivial())
        .map(|bs| (bs.block_size(), bs))
        .collect();
    Ok(systems.into_iter().map(|(_, bs)| bs).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Primitivity {
    Primitive,
    Imprimitive,
    /// Degree 1: primitivity does not apply; treated as primitive.
    TriviallyPrimitive,
}

pub fn primitivity(gens: &[Permutation], n: usize) -> Result<Primitivity> {
    if n == 1 {
        require_transitive(gens, n)?;
        return Ok(Primitivity::TriviallyPrimitive);
    }
    Ok(if nontrivial_block_systems(gens, n)?.is_empty() {
        Primitivity::Primitive
    } else {
        Primitivity::Imprimitive
    })
}

pub fn is_primitive(gens: &[Permutation], n: usize) -> Result<bool> {
    Ok(primitivity(gens, n)? != Primitivity::Imprimitive)
}
