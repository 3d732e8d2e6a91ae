//! Checks on toggle groups of order-ideal families.

use std::time::Instant;

use super::{CertResult, FamilyAnalysis, Status, Witness};
use crate::config::RunConfig;
use crate::error::Result;
use crate::generators::{hasse_connected, order_ideals, Poset};
use crate::permgroup::{factorial, Containment};
use crate::toggle::decompose;

/// A connected poset's ideal family has toggle group `S_N` or `A_N`, where `N`
/// is the number of ideals.
pub fn certify_cameron_fon_der_flaass(p: &Poset, config: &RunConfig) -> Result<CertResult> {
    let start = Instant::now();
    let name = "connected-poset-full-group";
    if p.is_empty() || !hasse_connected(p) {
        return Ok(
            CertResult::new(name, Status::VacuouslyTrue, "poset is disconnected", None)
                .timed(start),
        );
    }
    let ideals = order_ideals(p)?;
    let analysis = FamilyAnalysis::new(&ideals, config)?;
    let n = ideals.len();
    let order = analysis.group().order();
    let ok = analysis.contains_alternating();
    let detail = format!("{n} ideals; order {order}, {n}! = {}", factorial(n));
    let status = if ok { Status::Pass } else { Status::Fail };
    Ok(CertResult::new(name, status, detail, Some(Witness::of_family(&ideals))).timed(start))
}

/// A disconnected poset's ideal family is a Cartesian product, so when its
/// toggle group has a long cycle the decomposition must split it.
///
/// Without a long cycle the product structure may sit on a block system that
/// is not minimal; that case is reported as vacuous rather than failed.
pub fn certify_disjoint_union(p: &Poset, config: &RunConfig) -> Result<CertResult> {
    let start = Instant::now();
    let name = "disjoint-union-decomposes";
    if hasse_connected(p) {
        return Ok(
            CertResult::new(name, Status::VacuouslyTrue, "poset is connected", None).timed(start),
        );
    }
    let ideals = order_ideals(p)?;
    let witness = Some(Witness::of_family(&ideals));
    let degrees = decompose(&ideals)?.leaf_degrees();
    if degrees.len() >= 2 {
        let detail = format!(
            "{} components; leaf degrees {degrees:?}",
            p.components().len()
        );
        return Ok(CertResult::new(name, Status::Pass, detail, witness).timed(start));
    }
    let analysis = FamilyAnalysis::new(&ideals, config)?;
    let (status, detail) = match analysis.oracle().contains_cycle(ideals.len())? {
        Containment::Yes { witness, .. } => (
            Status::Fail,
            format!("long cycle {witness} but no decomposition found"),
        ),
        Containment::No { .. } => (
            Status::VacuouslyTrue,
            "no long cycle; decomposition did not split the family".to_owned(),
        ),
        Containment::Undecided => (Status::Undecided, "long cycle undecided".to_owned()),
    };
    Ok(CertResult::new(name, status, detail, witness).timed(start))
}
