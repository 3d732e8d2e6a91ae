//! Exhaustive and sampled streams of normalized set families.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgroup::orbits;
use crate::toggle::{build_toggles, SetFamily};

/// Ground size 5 would mean 2^32 raw families.
pub const MAX_EXHAUSTIVE_GROUND: usize = 4;
pub const MAX_SAMPLED_GROUND: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StreamMode {
    Exhaustive,
    /// `count` raw draws; each subset of the ground is kept with probability 1/2.
    Sampled {
        seed: u64,
        count: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyStream {
    pub ground_size: usize,
    pub mode: StreamMode,
    pub transitive_only: bool,
    pub min_size: usize,
}

impl FamilyStream {
    pub fn exhaustive(ground_size: usize) -> Self {
        FamilyStream {
            ground_size,
            mode: StreamMode::Exhaustive,
            transitive_only: false,
            min_size: 2,
        }
    }

    pub fn sampled(ground_size: usize, seed: u64, count: usize) -> Self {
        FamilyStream {
            ground_size,
            mode: StreamMode::Sampled { seed, count },
            transitive_only: false,
            min_size: 2,
        }
    }

    pub fn transitive_only(mut self) -> Self {
        self.transitive_only = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let limit = match self.mode {
            StreamMode::Exhaustive => MAX_EXHAUSTIVE_GROUND,
            StreamMode::Sampled { .. } => MAX_SAMPLED_GROUND,
        };
        if self.ground_size > limit {
            return Err(Error::Infeasible(self.ground_size));
        }
        Ok(())
    }
}

/// What the stream dropped along the way.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamStats {
    /// Raw families drawn or visited (the empty family excluded).
    pub raw: u64,
    /// Fewer than `min_size` sets after normalization.
    pub too_small: u64,
    /// Equal to an earlier family after normalization.
    pub duplicates: u64,
    /// Rejected by the transitivity filter.
    pub intransitive: u64,
    pub yielded: u64,
}

pub struct FamilyIter {
    stream: FamilyStream,
    labels: Vec<String>,
    subsets: u64,
    next_raw: u64,
    rng: Option<ChaCha8Rng>,
    seen: HashSet<(Vec<String>, Vec<u64>)>,
    stats: StreamStats,
}

impl FamilyIter {
    pub fn stats(&self) -> &StreamStats {
        &self.stats
    }

    fn draw(&mut self) -> Option<Vec<u64>> {
        match self.stream.mode {
            StreamMode::Exhaustive => {
                // Bit s of `raw` selects subset s of the ground.
                let end = if self.subsets >= 64 {
                    u64::MAX
                } else {
                    1u64 << self.subsets
                };
                if self.next_raw >= end {
                    return None;
                }
                let raw = self.next_raw;
                self.next_raw += 1;
                Some((0..self.subsets).filter(|s| raw >> s & 1 == 1).collect())
            }
            StreamMode::Sampled { count, .. } => {
                if self.next_raw >= count as u64 {
                    return None;
                }
                self.next_raw += 1;
                let rng = self.rng.as_mut().expect("sampled stream has rng");
                Some((0..self.subsets).filter(|_| rng.gen_bool(0.5)).collect())
            }
        }
    }
}

impl Iterator for FamilyIter {
    type Item = SetFamily;

    fn next(&mut self) -> Option<SetFamily> {
        loop {
            let sets = self.draw()?;
            if sets.is_empty() {
                continue;
            }
            self.stats.raw += 1;
            let family = SetFamily::from_masks(self.labels.clone(), sets)
                .expect("distinct subsets of a small ground");
            let (family, _) = family.normalize();
            if family.len() < self.stream.min_size.max(1) {
                self.stats.too_small += 1;
                continue;
            }
            if !self.seen.insert(family.canonical_key()) {
                self.stats.duplicates += 1;
                continue;
            }
            if self.stream.transitive_only {
                let gens = build_toggles(&family).generators();
                if orbits(&gens, family.len())
                    .expect("toggle degrees match")
                    .len()
                    > 1
                {
                    self.stats.intransitive += 1;
                    continue;
                }
            }
            self.stats.yielded += 1;
            return Some(family);
        }
    }
}

/// Normalized families over the ground `e0..e{k-1}`, each yielded once, in
/// order of first appearance (raw bitmask order for exhaustive streams).
pub fn enumerate_families(stream: &FamilyStream) -> Result<FamilyIter> {
    stream.validate()?;
    let rng = match stream.mode {
        StreamMode::Sampled { seed, .. } => Some(ChaCha8Rng::seed_from_u64(seed)),
        StreamMode::Exhaustive => None,
    };
    Ok(FamilyIter {
        labels: (0..stream.ground_size).map(|i| format!("e{i}")).collect(),
        subsets: 1u64 << stream.ground_size,
        next_raw: 0,
        rng,
        seen: HashSet::new(),
        stats: StreamStats::default(),
        stream: stream.clone(),
    })
}
