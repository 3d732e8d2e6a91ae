//! Runs a selection of certifiers over a stream of families and tallies the
//! outcomes. Families are evaluated in parallel; the report is assembled in
//! stream order so identical inputs give identical reports.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    certify_product_long_cycle, check_lemma_suite_with, CertResult, FamilyAnalysis, Status,
    LEMMA_CLAUSES, SCHEMA_VERSION,
};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::generators::{enumerate_families, FamilyStream, StreamStats};
use crate::permgroup::BlockSystem;
use crate::toggle::{build_toggles, FamilyFile, SetFamily, ToggleSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certifier {
    Transposition,
    ThreeCycle,
    ShortCyclePrimitive,
    JordanJones,
    ImprimitiveDecomposition,
    PrimePowerPrimitive,
    /// Every lemma clause on every nontrivial block system.
    Lemmas,
}

impl Certifier {
    pub const THEOREMS: [Certifier; 6] = [
        Certifier::Transposition,
        Certifier::ThreeCycle,
        Certifier::ShortCyclePrimitive,
        Certifier::JordanJones,
        Certifier::ImprimitiveDecomposition,
        Certifier::PrimePowerPrimitive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Certifier::Transposition => "transposition",
            Certifier::ThreeCycle => "three-cycle",
            Certifier::ShortCyclePrimitive => "short-cycle-primitive",
            Certifier::JordanJones => "jordan-jones",
            Certifier::ImprimitiveDecomposition => "imprimitive-decomposition",
            Certifier::PrimePowerPrimitive => "prime-power-primitive",
            Certifier::Lemmas => "lemmas",
        }
    }

    fn run(self, a: &FamilyAnalysis) -> Result<CertResult> {
        match self {
            Certifier::Transposition => a.certify_transposition(),
            Certifier::ThreeCycle => a.certify_three_cycle(),
            Certifier::ShortCyclePrimitive => a.certify_short_cycle_primitive(),
            Certifier::JordanJones => a.certify_jordan_jones(),
            Certifier::ImprimitiveDecomposition => a.certify_imprimitive_decomposition(),
            Certifier::PrimePowerPrimitive => a.certify_prime_power_primitive(),
            Certifier::Lemmas => unreachable!("lemma clauses are run per block system"),
        }
    }
}

impl FromStr for Certifier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Certifier::THEOREMS
            .into_iter()
            .chain([Certifier::Lemmas])
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown certifier {s:?}")))
    }
}

/// An ordered, duplicate-free selection of certifiers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Suite(Vec<Certifier>);

impl Suite {
    pub fn all() -> Self {
        let mut v = Certifier::THEOREMS.to_vec();
        v.push(Certifier::Lemmas);
        Suite(v)
    }

    pub fn theorems() -> Self {
        Suite(Certifier::THEOREMS.to_vec())
    }

    pub fn new(certifiers: impl IntoIterator<Item = Certifier>) -> Self {
        let mut v: Vec<Certifier> = Vec::new();
        for c in certifiers {
            if !v.contains(&c) {
                v.push(c);
            }
        }
        Suite(v)
    }

    pub fn certifiers(&self) -> &[Certifier] {
        &self.0
    }

    /// Tally rows in report order: one per theorem certifier, one per lemma clause.
    fn tally_names(&self) -> Vec<&'static str> {
        self.0
            .iter()
            .flat_map(|c| match c {
                Certifier::Lemmas => LEMMA_CLAUSES.to_vec(),
                c => vec![c.name()],
            })
            .collect()
    }
}

impl FromStr for Suite {
    type Err = Error;

    /// `all`, `theorems`, `lemmas`, or a comma-separated list of certifier names.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "all" => out.extend(Suite::all().0),
                "theorems" => out.extend(Certifier::THEOREMS),
                p => out.push(p.parse()?),
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidConfig("empty certifier suite".into()));
        }
        Ok(Suite::new(out))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub certifier: String,
    pub pass: u64,
    pub fail: u64,
    pub vacuously_true: u64,
    pub undecided: u64,
}

impl Tally {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::VacuouslyTrue => self.vacuously_true += 1,
            Status::Undecided => self.undecided += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UndecidedEntry {
    pub family: FamilyFile,
    pub certifiers: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Source {
    Stream {
        stream: FamilyStream,
        stats: StreamStats,
    },
    Families {
        count: usize,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub config: RunConfig,
    pub source: Source,
    pub suite: Vec<String>,
    pub families_examined: u64,
    pub skipped_intransitive: u64,
    pub tallies: Vec<Tally>,
    /// Fraction of examined families with at least one undecided result.
    pub undecided_rate: f64,
    pub undecided: Vec<UndecidedEntry>,
    pub failures: Vec<CertResult>,
}

impl SweepReport {
    pub fn fail_count(&self) -> u64 {
        self.tallies.iter().map(|t| t.fail).sum()
    }

    pub fn tally(&self, certifier: &str) -> Option<&Tally> {
        self.tallies.iter().find(|t| t.certifier == certifier)
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.source {
            Source::Stream { stream, stats } => writeln!(
                f,
                "stream: ground size {}, {:?}; {} raw, {} duplicates, {} too small",
                stream.ground_size, stream.mode, stats.raw, stats.duplicates, stats.too_small
            )?,
            Source::Families { count } => writeln!(f, "families: {count} given")?,
        }
        writeln!(
            f,
            "examined {} transitive families ({} intransitive skipped)\n",
            self.families_examined, self.skipped_intransitive
        )?;
        let width = self
            .tallies
            .iter()
            .map(|t| t.certifier.len())
            .max()
            .unwrap_or(9)
            .max(9);
        writeln!(
            f,
            "{:<width$}  {:>8}  {:>8}  {:>8}  {:>9}",
            "certifier", "pass", "vacuous", "FAIL", "undecided"
        )?;
        for t in &self.tallies {
            writeln!(
                f,
                "{:<width$}  {:>8}  {:>8}  {:>8}  {:>9}",
                t.certifier, t.pass, t.vacuously_true, t.fail, t.undecided
            )?;
        }
        writeln!(f, "\nundecided rate: {:.4}", self.undecided_rate)?;
        for u in &self.undecided {
            let fam = SetFamily::from_file(&u.family)
                .map(|x| x.to_string())
                .unwrap_or_default();
            writeln!(f, "  undecided: {fam} [{}]", u.certifiers.join(", "))?;
        }
        for r in &self.failures {
            let mut line = format!("  FAIL {}: {}", r.name, r.detail);
            if let Some(w) = &r.witness {
                if let Ok(fam) = SetFamily::from_file(&w.family) {
                    let _ = write!(line, " on {fam}");
                }
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

struct FamilyOutcome {
    transitive: bool,
    /// (tally row, result) pairs, in tally order.
    results: Vec<(usize, CertResult)>,
}

fn severity(s: Status) -> u8 {
    match s {
        Status::VacuouslyTrue => 0,
        Status::Pass => 1,
        Status::Undecided => 2,
        Status::Fail => 3,
    }
}

fn evaluate(f: &SetFamily, suite: &Suite, config: &RunConfig) -> Result<FamilyOutcome> {
    let a = FamilyAnalysis::new(f, config)?;
    if !a.is_transitive() {
        return Ok(FamilyOutcome {
            transitive: false,
            results: Vec::new(),
        });
    }
    let mut results = Vec::new();
    let mut row = 0;
    for &c in suite.certifiers() {
        if c != Certifier::Lemmas {
            results.push((row, c.run(&a)?));
            row += 1;
            continue;
        }
        // Per clause: every failure is kept, otherwise the most severe status
        // across block systems stands for the family.
        let mut merged: Vec<Option<CertResult>> = vec![None; LEMMA_CLAUSES.len()];
        let mut fails = Vec::new();
        for bs in a.block_systems()? {
            for (i, r) in check_lemma_suite_with(f, a.toggles(), bs, config)?
                .into_iter()
                .enumerate()
            {
                if r.status == Status::Fail {
                    fails.push((row + i, r.clone()));
                }
                let keep = merged[i]
                    .as_ref()
                    .is_none_or(|m| severity(r.status) > severity(m.status));
                if keep {
                    merged[i] = Some(r);
                }
            }
        }
        for (i, m) in merged.into_iter().enumerate() {
            match m {
                Some(r) if r.status == Status::Fail => {}
                Some(r) => results.push((row + i, r)),
                None => results.push((
                    row + i,
                    CertResult::new(
                        LEMMA_CLAUSES[i],
                        Status::VacuouslyTrue,
                        "no nontrivial block system",
                        None,
                    ),
                )),
            }
        }
        results.extend(fails);
        row += LEMMA_CLAUSES.len();
    }
    results.sort_by_key(|(r, _)| *r);
    Ok(FamilyOutcome {
        transitive: true,
        results,
    })
}

fn run_parallel(
    families: &[SetFamily],
    suite: &Suite,
    config: &RunConfig,
) -> Result<Vec<FamilyOutcome>> {
    let work = || -> Result<Vec<FamilyOutcome>> {
        families
            .par_iter()
            .map(|f| evaluate(f, suite, config))
            .collect()
    };
    if config.jobs == 0 {
        return work();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?
        .install(work)
}

fn assemble(
    families: &[SetFamily],
    outcomes: Vec<FamilyOutcome>,
    source: Source,
    suite: &Suite,
    config: &RunConfig,
) -> SweepReport {
    let names = suite.tally_names();
    let mut tallies: Vec<Tally> = names
        .iter()
        .map(|n| Tally {
            certifier: (*n).to_owned(),
            ..Tally::default()
        })
        .collect();
    let mut report = SweepReport {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        source,
        suite: suite
            .certifiers()
            .iter()
            .map(|c| c.name().to_owned())
            .collect(),
        families_examined: 0,
        skipped_intransitive: 0,
        tallies: Vec::new(),
        undecided_rate: 0.0,
        undecided: Vec::new(),
        failures: Vec::new(),
    };
    for (f, outcome) in families.iter().zip(outcomes) {
        if !outcome.transitive {
            report.skipped_intransitive += 1;
            continue;
        }
        report.families_examined += 1;
        let mut undecided = Vec::new();
        let mut last_row = None;
        for (row, r) in outcome.results {
            // Several failures for one clause still count once per family.
            if last_row != Some(row) {
                tallies[row].add(r.status);
            }
            last_row = Some(row);
            match r.status {
                Status::Undecided => undecided.push(r.name.clone()),
                Status::Fail => report.failures.push(r),
                _ => {}
            }
        }
        if !undecided.is_empty() {
            report.undecided.push(UndecidedEntry {
                family: f.to_file(),
                certifiers: undecided,
            });
        }
    }
    report.tallies = tallies;
    if report.families_examined > 0 {
        report.undecided_rate = report.undecided.len() as f64 / report.families_examined as f64;
    }
    report
}

pub fn sweep(stream: &FamilyStream, suite: &Suite, config: &RunConfig) -> Result<SweepReport> {
    config.validate()?;
    let mut it = enumerate_families(stream)?;
    let families: Vec<SetFamily> = it.by_ref().collect();
    let outcomes = run_parallel(&families, suite, config)?;
    let source = Source::Stream {
        stream: stream.clone(),
        stats: it.stats().clone(),
    };
    Ok(assemble(&families, outcomes, source, suite, config))
}

/// Same as [`sweep`] over an explicit list; intransitive families are skipped.
pub fn sweep_families(
    families: &[SetFamily],
    suite: &Suite,
    config: &RunConfig,
) -> Result<SweepReport> {
    config.validate()?;
    let outcomes = run_parallel(families, suite, config)?;
    let source = Source::Families {
        count: families.len(),
    };
    Ok(assemble(families, outcomes, source, suite, config))
}

/// Reruns the certifier that produced `result` on the instance in its witness.
pub fn replay(result: &CertResult, config: &RunConfig) -> Result<CertResult> {
    let w = result.witness.as_ref().ok_or_else(|| {
        Error::InvalidConfig(format!("{} result carries no witness", result.name))
    })?;
    let family = SetFamily::from_file(&w.family)?;
    if result.name == "product-long-cycle" {
        let (f1, f2) = w
            .factors
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig("product witness lacks factors".into()))?;
        return certify_product_long_cycle(
            &SetFamily::from_file(f1)?,
            &SetFamily::from_file(f2)?,
            config,
        );
    }
    if let Ok(c) = result.name.parse::<Certifier>() {
        if c != Certifier::Lemmas {
            return c.run(&FamilyAnalysis::new(&family, config)?);
        }
    }
    if LEMMA_CLAUSES.contains(&result.name.as_str()) {
        let labels = w
            .block_system
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig("lemma witness lacks a block system".into()))?;
        let bs = BlockSystem::from_labels(labels)?;
        let ts = match &w.toggles {
            Some(t) => ToggleSet::from_parts(t.clone()),
            None => build_toggles(&family),
        };
        return check_lemma_suite_with(&family, &ts, &bs, config)?
            .into_iter()
            .find(|r| r.name == result.name)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown clause {}", result.name)));
    }
    Err(Error::InvalidConfig(format!(
        "cannot replay {}",
        result.name
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_parsing() {
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::all());
        let s: Suite = "three-cycle, transposition,three-cycle".parse().unwrap();
        assert_eq!(
            s.certifiers(),
            &[Certifier::ThreeCycle, Certifier::Transposition]
        );
        assert!("bogus".parse::<Suite>().is_err());
        assert!("".parse::<Suite>().is_err());
        assert_eq!(Suite::all().tally_names().len(), 6 + LEMMA_CLAUSES.len());
    }

    #[test]
    fn exhaustive_two_has_no_failures() {
        let r = sweep(
            &FamilyStream::exhaustive(2),
            &Suite::all(),
            &RunConfig::default(),
        )
        .unwrap();
        assert_eq!(r.fail_count(), 0, "{r}");
        assert!(r.families_examined > 0);
        assert_eq!(r.undecided_rate, 0.0);
        for t in &r.tallies {
            assert_eq!(
                t.pass + t.fail + t.vacuously_true + t.undecided,
                r.families_examined
            );
        }
    }

    #[test]
    fn jobs_do_not_change_the_report() {
        let stream = FamilyStream::exhaustive(3);
        let one = RunConfig {
            jobs: 1,
            ..RunConfig::default()
        };
        let four = RunConfig {
            jobs: 4,
            ..RunConfig::default()
        };
        let a = sweep(&stream, &Suite::all(), &one).unwrap();
        let b = sweep(&stream, &Suite::all(), &four).unwrap();
        assert_eq!(
            serde_json::to_value(&a.tallies).unwrap(),
            serde_json::to_value(&b.tallies).unwrap()
        );
        assert_eq!(a.families_examined, b.families_examined);
    }

    #[test]
    fn lemma_failures_replay() {
        use crate::fixtures;
        use crate::permgroup::{nontrivial_block_systems, Permutation};
        let f = fixtures::prod23();
        let ts = build_toggles(&f);
        let bs = nontrivial_block_systems(&ts.generators(), 6)
            .unwrap()
            .into_iter()
            .find(|b| b.block_size() == 2)
            .unwrap();
        let b0 = &bs.blocks()[0];
        let bad = ts.with_replaced(
            "a",
            Permutation::from_cycles(6, &[&[b0[0], b0[1]]]).unwrap(),
        );
        let cfg = RunConfig::default();
        for r in check_lemma_suite_with(&f, &bad, &bs, &cfg).unwrap() {
            if r.status == Status::Fail {
                assert_eq!(replay(&r, &cfg).unwrap().status, Status::Fail, "{}", r.name);
            }
        }
    }
}
