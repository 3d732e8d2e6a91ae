//! Deciding whether a group contains a single k-cycle.
//!
//! The decision ladder, in order:
//! 1. order n! -> every cycle length is present;
//! 2. order n!/2 -> exactly the odd lengths (the index-2 subgroup of S_n is A_n);
//! 3. k-cycle odd but every generator even -> absent;
//! 4. order within the enumeration limit -> walk every element;
//! 5. otherwise undecided.
//!
//! Every `Yes` carries an explicit witness permutation that is a member of
//! the group and consists of exactly one cycle of length k.

use std::borrow::Borrow;
use std::ops::ControlFlow;
use std::sync::OnceLock;

use serde::Serialize;

use super::chain::GroupDescription;
use super::perm::{Parity, Permutation};
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    SymmetricOrder,
    AlternatingOrder,
    ParityObstruction,
    Enumeration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Containment {
    Yes {
        witness: Permutation,
        branch: Branch,
    },
    No {
        branch: Branch,
    },
    Undecided,
}

impl Containment {
    pub fn is_yes(&self) -> bool {
        matches!(self, Containment::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Containment::No { .. })
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, Containment::Undecided)
    }

    pub fn witness(&self) -> Option<&Permutation> {
        match self {
            Containment::Yes { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Containment::Yes { .. } => "yes",
            Containment::No { .. } => "no",
            Containment::Undecided => "undecided",
        }
    }
}

/// First single k-cycle met for each k, from one full element walk.
#[derive(Debug, Clone)]
pub struct CycleCensus {
    pub elements: u64,
    witnesses: Vec<Option<Permutation>>,
}

impl CycleCensus {
    pub fn take(group: &GroupDescription) -> Self {
        let n = group.degree();
        let mut witnesses: Vec<Option<Permutation>> = vec![None; n + 1];
        let mut elements = 0u64;
        let _ = group.for_each_element(|g| {
            elements += 1;
            if let Some(k) = g.cycle_decomposition().single_cycle_length() {
                if witnesses[k].is_none() {
                    witnesses[k] = Some(g.clone());
                }
            }
            ControlFlow::Continue(())
        });
        CycleCensus {
            elements,
            witnesses,
        }
    }

    pub fn witness(&self, k: usize) -> Option<&Permutation> {
        self.witnesses.get(k).and_then(Option::as_ref)
    }
}

/// Cycle-containment queries against one group, sharing a lazily taken census.
#[derive(Debug)]
pub struct CycleOracle<G: Borrow<GroupDescription>> {
    group: G,
    limit: u64,
    census: OnceLock<Option<CycleCensus>>,
}

impl<G: Borrow<GroupDescription>> CycleOracle<G> {
    pub fn new(group: G, limit: u64) -> Self {
        CycleOracle {
            group,
            limit,
            census: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &GroupDescription {
        self.group.borrow()
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// The element census, or `None` when the order exceeds the limit.
    pub fn census(&self) -> Option<&CycleCensus> {
        self.census
            .get_or_init(|| {
                let g = self.group();
                match g.order_u64() {
                    Some(order) if order <= self.limit => Some(CycleCensus::take(g)),
                    _ => None,
                }
            })
            .as_ref()
    }

    pub fn contains_cycle(&self, k: usize) -> Result<Containment> {
        let g = self.group();
        let n = g.degree();
        if k < 2 || k > n {
            return Err(Error::CycleLengthOutOfRange { k, degree: n });
        }
        let standard = || {
            let cycle: Vec<usize> = (0..k).collect();
            let p = Permutation::from_cycles(n, &[&cycle]).expect("valid cycle");
            debug_assert!(g.contains(&p).unwrap());
            p
        };
        if g.is_symmetric() {
            return Ok(Containment::Yes {
                witness: standard(),
                branch: Branch::SymmetricOrder,
            });
        }
        if g.is_alternating() {
            return Ok(if k % 2 == 1 {
                Containment::Yes {
                    witness: standard(),
                    branch: Branch::AlternatingOrder,
                }
            } else {
                Containment::No {
                    branch: Branch::AlternatingOrder,
                }
            });
        }
        if Parity::of_cycle_length(k) == Parity::Odd
            && g.generators().iter().all(|s| s.parity() == Parity::Even)
        {
            return Ok(Containment::No {
                branch: Branch::ParityObstruction,
            });
        }
        Ok(match self.census() {
            Some(census) => match census.witness(k) {
                Some(w) => Containment::Yes {
                    witness: w.clone(),
                    branch: Branch::Enumeration,
                },
                None => Containment::No {
                    branch: Branch::Enumeration,
                },
            },
            None => Containment::Undecided,
        })
    }

    /// Aggregate over a range of lengths: any `Yes` wins, then any
    /// `Undecided`, otherwise `No`. Empty ranges give `None`.
    pub fn contains_any_cycle(
        &self,
        lengths: impl IntoIterator<Item = usize>,
    ) -> Result<Option<Containment>> {
        let mut acc: Option<Containment> = None;
        for k in lengths {
            let c = self.contains_cycle(k)?;
            match (&acc, &c) {
                (_, Containment::Yes { .. }) => return Ok(Some(c)),
                (None, _) | (Some(Containment::No { .. }), Containment::Undecided) => acc = Some(c),
                _ => {}
            }
        }
        Ok(acc)
    }
}

pub fn cycle_containment(group: &GroupDescription, k: usize) -> Result<Containment> {
    CycleOracle::new(group, DEFAULT_ENUMERATION_LIMIT).contains_cycle(k)
}

pub fn cycle_containment_with_limit(
    group: &GroupDescription,
    k: usize,
    limit: u64,
) -> Result<Containment> {
    CycleOracle::new(group, limit).contains_cycle(k)
}
