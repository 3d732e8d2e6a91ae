//! Executable certifiers for the structure theorems on transitive toggle
//! groups, the block-system lemma suite, and sweep orchestration.
//!
//! A certifier checks an implication "hypothesis ⇒ conclusion" on one
//! instance. When the hypothesis is decided false the status is
//! [`Status::VacuouslyTrue`], never `Pass`; when the cycle oracle cannot
//! decide the hypothesis the status is [`Status::Undecided`].

mod lemmas;
mod posets;
mod survey;
mod sweep;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::permgroup::{
    factorial, nontrivial_block_systems, primitivity, BlockSystem, Containment, CycleOracle,
    GroupDescription, Permutation, Primitivity,
};
use crate::toggle::{
    build_toggles, cartesian_product, decompose, verify_direct_product, FamilyFile, SetFamily,
    ToggleSet,
};

pub use lemmas::{check_lemma_suite, check_lemma_suite_with, LEMMA_CLAUSES};
pub use posets::{certify_cameron_fon_der_flaass, certify_disjoint_union};
pub use survey::{survey_exceptionals, Candidate, SurveyReport, SEARCH_BOUND_NOTE};
pub use sweep::{
    replay, sweep, sweep_families, Certifier, Source, Suite, SweepReport, Tally, UndecidedEntry,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    VacuouslyTrue,
    Undecided,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::VacuouslyTrue => "vacuous",
            Status::Undecided => "undecided",
        }
    }
}

/// Everything needed to rerun a certifier on the instance that produced a result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub family: FamilyFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<(FamilyFile, FamilyFile)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_system: Option<Vec<usize>>,
    /// Toggles actually used, when they differ from the family's own.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toggles: Option<Vec<(String, Permutation)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Permutation>,
}

impl Witness {
    pub fn of_family(f: &SetFamily) -> Self {
        Witness {
            family: f.to_file(),
            factors: None,
            block_system: None,
            toggles: None,
            permutation: None,
        }
    }

    fn with_permutation(mut self, p: Option<&Permutation>) -> Self {
        self.permutation = p.cloned();
        self
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Wall time; left out of structured output so reports stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CertResult {
    fn new(
        name: &str,
        status: Status,
        detail: impl Into<String>,
        witness: Option<Witness>,
    ) -> Self {
        CertResult {
            name: name.to_owned(),
            status,
            detail: detail.into(),
            witness,
            elapsed: Duration::ZERO,
        }
    }

    fn timed(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}

/// Lazily computed facts about one family, shared by all certifiers.
#[derive(Debug)]
pub struct FamilyAnalysis {
    family: SetFamily,
    toggles: ToggleSet,
    oracle: CycleOracle<GroupDescription>,
    orbit_count: usize,
    block_systems: OnceLock<Vec<BlockSystem>>,
}

impl FamilyAnalysis {
    pub fn new(f: &SetFamily, config: &RunConfig) -> Result<Self> {
        let toggles = build_toggles(f);
        let group = crate::permgroup::schreier_sims(&toggles.generators(), f.len())?;
        let orbit_count = group.orbits().len();
        Ok(FamilyAnalysis {
            family: f.clone(),
            toggles,
            oracle: CycleOracle::new(group, config.enumeration_limit),
            orbit_count,
            block_systems: OnceLock::new(),
        })
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn toggles(&self) -> &ToggleSet {
        &self.toggles
    }

    pub fn group(&self) -> &GroupDescription {
        self.oracle.group()
    }

    pub fn oracle(&self) -> &CycleOracle<GroupDescription> {
        &self.oracle
    }

    pub fn degree(&self) -> usize {
        self.family.len()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit_count <= 1
    }

    fn require_transitive(&self) -> Result<()> {
        if self.is_transitive() {
            Ok(())
        } else {
            Err(Error::NotTransitive {
                degree: self.degree(),
                orbits: self.orbit_count,
            })
        }
    }

    pub fn block_systems(&self) -> Result<&[BlockSystem]> {
        self.require_transitive()?;
        Ok(self.block_systems.get_or_init(|| {
            nontrivial_block_systems(self.group().generators(), self.degree())
                .expect("transitivity checked")
        }))
    }

    pub fn primitivity(&self) -> Result<Primitivity> {
        self.require_transitive()?;
        if self.degree() == 1 {
            return primitivity(&[], 1);
        }
        Ok(if self.block_systems()?.is_empty() {
            Primitivity::Primitive
        } else {
            Primitivity::Imprimitive
        })
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.primitivity()? != Primitivity::Imprimitive)
    }

    /// Order is n! or n!/2.
    pub fn contains_alternating(&self) -> bool {
        self.group().is_symmetric() || self.group().is_alternating()
    }

    fn witness(&self, p: Option<&Permutation>) -> Witness {
        Witness::of_family(&self.family).with_permutation(p)
    }

    /// Resolves a hypothesis given as cycle containment; `None` means the
    /// range of admissible lengths is empty.
    fn implication(
        &self,
        name: &str,
        start: Instant,
        hypothesis: Option<Containment>,
        conclusion: impl FnOnce(&Permutation) -> Result<(bool, String)>,
    ) -> Result<CertResult> {
        let result = match hypothesis {
            None => CertResult::new(
                name,
                Status::VacuouslyTrue,
                "no admissible cycle length",
                None,
            ),
            Some(Containment::No { branch }) => CertResult::new(
                name,
                Status::VacuouslyTrue,
                format!("hypothesis absent ({branch:?})"),
                None,
            ),
            Some(Containment::Undecided) => CertResult::new(
                name,
                Status::Undecided,
                format!(
                    "cycle containment undecided: order {} exceeds limit {}",
                    self.group().order(),
                    self.oracle.limit()
                ),
                Some(self.witness(None)),
            ),
            Some(Containment::Yes { witness, .. }) => {
                let (ok, detail) = conclusion(&witness)?;
                let status = if ok { Status::Pass } else { Status::Fail };
                CertResult::new(name, status, detail, Some(self.witness(Some(&witness))))
            }
        };
        Ok(result.timed(start))
    }

    fn order_detail(&self) -> String {
        let n = self.degree();
        format!(
            "order {} (n = {n}, n! = {})",
            self.group().order(),
            factorial(n)
        )
    }

    /// A transposition forces the full symmetric group.
    pub fn certify_transposition(&self) -> Result<CertResult> {
        let start = Instant::now();
        self.require_transitive()?;
        let hyp = (self.degree() >= 2)
            .then(|| self.oracle.contains_cycle(2))
            .transpose()?;
        self.implication("transposition", start, hyp, |w| {
            Ok((
                self.group().is_symmetric(),
                format!("transposition {w}; {}", self.order_detail()),
            ))
        })
    }

    /// A 3-cycle forces the alternating group.
    pub fn certify_three_cycle(&self) -> Result<CertResult> {
        let start = Instant::now();
        self.require_transitive()?;
        let hyp = (self.degree() >= 3)
            .then(|| self.oracle.contains_cycle(3))
            .transpose()?;
        self.implication("three-cycle", start, hyp, |w| {
            Ok((
                self.contains_alternating(),
                format!("3-cycle {w}; {}", self.order_detail()),
            ))
        })
    }

    /// A nontrivial cycle with a fixed point forces primitivity.
    pub fn certify_short_cycle_primitive(&self) -> Result<CertResult> {
        let start = Instant::now();
        self.require_transitive()?;
        let hyp = self.oracle.contains_any_cycle(2..self.degree())?;
        self.implication("short-cycle-primitive", start, hyp, |w| {
            let prim = self.is_primitive()?;
            Ok((prim, format!("short cycle {w}; primitive = {prim}")))
        })
    }

    /// A cycle of length at most n-3 forces the alternating group.
    pub fn certify_jordan_jones(&self) -> Result<CertResult> {
        let start = Instant::now();
        self.require_transitive()?;
        let hyp = self
            .oracle
            .contains_any_cycle(2..=self.degree().saturating_sub(3))?;
        self.implication("jordan-jones", start, hyp, |w| {
            Ok((
                self.contains_alternating(),
                format!("cycle {w}; {}", self.order_detail()),
            ))
        })
    }

    /// Imprimitive with a long cycle: the family splits into coprime primitive
    /// factors, each with a long cycle.
    pub fn certify_imprimitive_decomposition(&self) -> Result<CertResult> {
        let start = Instant::now();
        let name = "imprimitive-decomposition";
        if self.is_primitive()? {
            return Ok(
                CertResult::new(name, Status::VacuouslyTrue, "primitive", None).timed(start),
            );
        }
        let hyp = Some(self.oracle.contains_cycle(self.degree())?);
        let mut undecided_leaf = None;
        let result = self.implication(name, start, hyp, |_| {
            let tree = decompose(&self.family)?;
            let leaves = tree.leaves();
            let degrees = tree.leaf_degrees();
            let mut problems = Vec::new();
            if leaves.len() < 2 {
                problems.push("fewer than two leaves".to_owned());
            }
            if degrees.iter().product::<usize>() != self.degree() {
                problems.push("leaf degrees do not multiply to n".to_owned());
            }
            for (i, &a) in degrees.iter().enumerate() {
                if a < 2 {
                    problems.push(format!("leaf of degree {a}"));
                }
                for &b in &degrees[i + 1..] {
                    if num_integer::gcd(a, b) != 1 {
                        problems.push(format!("degrees {a} and {b} not coprime"));
                    }
                }
            }
            let order_product: BigUint = leaves.iter().map(|(_, g)| g.order().clone()).product();
            if order_product != *self.group().order() {
                problems.push("leaf orders do not multiply to the group order".to_owned());
            }
            for (leaf, group) in &leaves {
                if group.degree() < 2 {
                    continue;
                }
                if !crate::permgroup::is_primitive(group.generators(), group.degree())? {
                    problems.push(format!("leaf {leaf} is imprimitive"));
                }
                let oracle = CycleOracle::new(*group, self.oracle.limit());
                match oracle.contains_cycle(group.degree())? {
                    Containment::Yes { .. } => {}
                    Containment::No { .. } => {
                        problems.push(format!("leaf {leaf} has no long cycle"))
                    }
                    Containment::Undecided => undecided_leaf = Some(leaf.to_string()),
                }
            }
            for (parent, fact) in tree.splits() {
                if !verify_direct_product(parent, fact)? {
                    problems.push(format!("split of {parent} is not a direct product"));
                }
            }
            let detail = if problems.is_empty() {
                format!("leaf degrees {degrees:?}")
            } else {
                format!("leaf degrees {degrees:?}: {}", problems.join("; "))
            };
            Ok((problems.is_empty(), detail))
        })?;
        match undecided_leaf {
            Some(leaf) if result.status == Status::Pass => Ok(CertResult {
                status: Status::Undecided,
                detail: format!("long cycle in leaf {leaf} undecided"),
                ..result
            }),
            _ => Ok(result),
        }
    }

    /// Prime-power degree with a long cycle forces primitivity.
    pub fn certify_prime_power_primitive(&self) -> Result<CertResult> {
        let start = Instant::now();
        self.require_transitive()?;
        let n = self.degree();
        let hyp = is_prime_power(n)
            .then(|| self.oracle.contains_cycle(n))
            .transpose()?;
        self.implication("prime-power-primitive", start, hyp, |w| {
            let prim = self.is_primitive()?;
            Ok((prim, format!("long cycle {w}; primitive = {prim}")))
        })
    }
}

pub fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n)
        .find(|d| n.is_multiple_of(*d))
        .expect("n >= 2 has a divisor");
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

pub fn certify_transposition(f: &SetFamily, config: &RunConfig) -> Result<CertResult> {
    FamilyAnalysis::new(f, config)?.certify_transposition()
}

pub fn certify_three_cycle(f: &SetFamily, config: &RunConfig) -> Result<CertResult> {
    FamilyAnalysis::new(f, config)?.certify_three_cycle()
}

pub fn certify_short_cycle_primitive(f: &SetFamily, config: &RunConfig) -> Result<CertResult> {
    FamilyAnalysis::new(f, config)?.certify_short_cycle_primitive()
}

pub fn certify_jordan_jones(f: &SetFamily, config: &RunConfig) -> Result<CertResult> {
    FamilyAnalysis::new(f, config)?.certify_jordan_jones()
}

pub fn certify_imprimitive_decomposition(f: &SetFamily, config: &RunConfig) -> Result<CertResult> {
    FamilyAnalysis::new(f, config)?.certify_imprimitive_decomposition()
}

pub fn certify_prime_power_primitive(f: &SetFamily, config: &RunConfig) -> Result<CertResult> {
    FamilyAnalysis::new(f, config)?.certify_prime_power_primitive()
}

/// Long cycle in `T(L1 ⊗ L2)` versus "coprime sizes and long cycles in both
/// factors", each side computed on its own.
pub fn certify_product_long_cycle(
    f1: &SetFamily,
    f2: &SetFamily,
    config: &RunConfig,
) -> Result<CertResult> {
    let start = Instant::now();
    let name = "product-long-cycle";
    for f in [f1, f2] {
        if f.len() < 2 {
            return Err(Error::FactorTooSmall(f.len()));
        }
    }
    let product = cartesian_product(f1, f2)?;
    let (ell, m) = (f1.len(), f2.len());
    let long_cycle = |f: &SetFamily| -> Result<Containment> {
        FamilyAnalysis::new(f, config)?
            .oracle()
            .contains_cycle(f.len())
    };
    let left = long_cycle(&product)?;
    let coprime = num_integer::gcd(ell, m) == 1;
    let (c1, c2) = (long_cycle(f1)?, long_cycle(f2)?);

    let mut witness = Witness::of_family(&product).with_permutation(left.witness());
    witness.factors = Some((f1.to_file(), f2.to_file()));

    let right = match (coprime, &c1, &c2) {
        (false, _, _) => Some(false),
        (true, Containment::No { .. }, _) | (true, _, Containment::No { .. }) => Some(false),
        (true, Containment::Yes { .. }, Containment::Yes { .. }) => Some(true),
        _ => None,
    };
    let detail = format!(
        "ℓ = {ell}, m = {m}; product long cycle: {}; factor long cycles: {}, {}",
        left.label(),
        c1.label(),
        c2.label()
    );
    let status = match (&left, right) {
        (Containment::Undecided, _) | (_, None) => Status::Undecided,
        (l, Some(r)) if l.is_yes() == r => Status::Pass,
        _ => Status::Fail,
    };
    Ok(CertResult::new(name, status, detail, Some(witness)).timed(start))
}
