//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Run with `cargo test --test acceptance`.

use std::collections::{BTreeSet, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use toggle_lab::certify::{
    certify_cameron_fon_der_flaass, certify_product_long_cycle, check_lemma_suite,
    check_lemma_suite_with, replay, sweep, FamilyAnalysis, Status, Suite,
};
use toggle_lab::generators::{all_posets, enumerate_families, hasse_connected, FamilyStream};
use toggle_lab::permgroup::{nontrivial_block_systems, Containment, Permutation};
use toggle_lab::toggle::{build_toggles, cartesian_product, decompose, toggle_group, SetFamily};
use toggle_lab::{fixtures, RunConfig};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

/// Group order by closing the generators under multiplication.
fn closure_order(gens: &[Permutation], n: usize) -> usize {
    let id: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut todo = vec![id];
    while let Some(p) = todo.pop() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&i| g.images()[i]).collect();
            if seen.insert(q.clone()) {
                todo.push(q);
            }
        }
    }
    seen.len()
}

fn fixture_orders() -> Outcome {
    let expected = [6u64, 4, 24, 12];
    for (f, want) in fixtures::all().into_iter().zip(expected) {
        let order = toggle_group(&f).map_err(|e| e.to_string())?.order_u64();
        let brute = closure_order(&build_toggles(&f).generators(), f.len()) as u64;
        if order != Some(want) || brute != want {
            return Err(format!(
                "{f}: chain {order:?}, closure {brute}, expected {want}"
            ));
        }
    }
    Ok("orders 6, 4, 24, 12 match closure".into())
}

fn theorem_sweep() -> Outcome {
    let config = RunConfig::default();
    let mut examined = 0;
    for k in 1..=3 {
        let r = sweep(&FamilyStream::exhaustive(k), &Suite::theorems(), &config)
            .map_err(|e| e.to_string())?;
        if r.fail_count() > 0 {
            return Err(format!("k = {k}: {} failures\n{r}", r.fail_count()));
        }
        examined += r.families_examined;
    }
    Ok(format!("{examined} transitive families, 0 Fail"))
}

fn sampled_sweep() -> Outcome {
    let config = RunConfig::default();
    let stream = FamilyStream::sampled(4, 42, 5000);
    let r = sweep(&stream, &Suite::theorems(), &config).map_err(|e| e.to_string())?;
    if r.fail_count() > 0 {
        return Err(format!("{} failures\n{r}", r.fail_count()));
    }
    if r.undecided_rate >= 0.05 {
        return Err(format!(
            "undecided rate {:.4} >= 0.05; listed: {}",
            r.undecided_rate,
            r.undecided.len()
        ));
    }
    Ok(format!(
        "{} families, 0 Fail, undecided rate {:.4}",
        r.families_examined, r.undecided_rate
    ))
}

fn lemma_suite() -> Outcome {
    let config = RunConfig::default();
    let mut pairs = 0;
    for k in 1..=3 {
        for f in enumerate_families(&FamilyStream::exhaustive(k).transitive_only())
            .map_err(|e| e.to_string())?
        {
            let ts = build_toggles(&f);
            for bs in
                nontrivial_block_systems(&ts.generators(), f.len()).map_err(|e| e.to_string())?
            {
                pairs += 1;
                for r in check_lemma_suite(&f, &bs, &config).map_err(|e| e.to_string())? {
                    if r.status == Status::Fail {
                        return Err(format!(
                            "{f} blocks {:?}: {} {}",
                            bs.blocks(),
                            r.name,
                            r.detail
                        ));
                    }
                }
            }
        }
    }
    // Negative control: a block-preserving permutation that is not a toggle.
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
    let results = check_lemma_suite_with(&f, &bad, &bs, &config).map_err(|e| e.to_string())?;
    let control = results
        .iter()
        .find(|r| r.name == "type1-commutes-type2")
        .ok_or("commutation clause missing")?;
    let witnessed = control
        .witness
        .as_ref()
        .is_some_and(|w| w.permutation.is_some());
    let replayed = replay(control, &config).map_err(|e| e.to_string())?.status;
    if control.status != Status::Fail || !witnessed || replayed != Status::Fail {
        return Err(format!(
            "negative control: {:?}, witness {witnessed}, replay {replayed:?}",
            control.status
        ));
    }
    Ok(format!(
        "{pairs} (family, block system) pairs clean; negative control fails with witness"
    ))
}

/// Normalized families over one- and two-element grounds with at least two sets.
fn factor_inventory() -> Vec<SetFamily> {
    (1..=2)
        .flat_map(|k| enumerate_families(&FamilyStream::exhaustive(k)).unwrap())
        .collect()
}

fn primed(f: &SetFamily) -> SetFamily {
    f.relabel(|e| format!("{e}'")).unwrap()
}

fn product_long_cycle() -> Outcome {
    let config = RunConfig::default();
    let inventory = factor_inventory();
    let mut checked = 0;
    let mut fired = 0;
    for f1 in &inventory {
        for f2 in &inventory {
            let r =
                certify_product_long_cycle(f1, &primed(f2), &config).map_err(|e| e.to_string())?;
            if r.status != Status::Pass {
                return Err(format!("{f1} x {f2}: {:?} {}", r.status, r.detail));
            }
            checked += 1;
            fired += usize::from(r.witness.is_some_and(|w| w.permutation.is_some()));
        }
    }
    Ok(format!(
        "{checked} ordered pairs agree ({fired} with a long cycle)"
    ))
}

fn round_trip() -> Outcome {
    let config = RunConfig::default();
    let long = |f: &SetFamily| {
        FamilyAnalysis::new(f, &config)
            .and_then(|a| a.oracle().contains_cycle(f.len()))
            .map(|c| matches!(c, Containment::Yes { .. }))
    };
    let inventory = factor_inventory();
    let mut checked = 0;
    for f1 in &inventory {
        for f2 in &inventory {
            let (l, m) = (f1.len(), f2.len());
            if num_integer::gcd(l, m) != 1 || !long(f1).unwrap() || !long(f2).unwrap() {
                continue;
            }
            let product = cartesian_product(f1, &primed(f2)).map_err(|e| e.to_string())?;
            let mut degrees = decompose(&product)
                .map_err(|e| e.to_string())?
                .leaf_degrees();
            degrees.sort_unstable();
            let mut want = vec![l, m];
            want.sort_unstable();
            if degrees != want {
                return Err(format!(
                    "{f1} x {f2}: leaves {degrees:?}, expected {want:?}"
                ));
            }
            checked += 1;
        }
    }
    if checked == 0 {
        return Err("no coprime pairs with long cycles".into());
    }
    Ok(format!("{checked} coprime pairs recovered"))
}

fn connected_posets() -> Outcome {
    let config = RunConfig::default();
    let mut checked = 0;
    let mut sizes = BTreeSet::new();
    for k in 1..=4 {
        for p in all_posets(k) {
            if !hasse_connected(&p) {
                continue;
            }
            let r = certify_cameron_fon_der_flaass(&p, &config).map_err(|e| e.to_string())?;
            if r.status != Status::Pass {
                return Err(format!("{:?}: {:?} {}", p.covers(), r.status, r.detail));
            }
            sizes.insert(r.witness.map(|w| w.family.sets.len()).unwrap_or(0));
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} connected posets, ideal counts {sizes:?}"
    ))
}

fn determinism() -> Outcome {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_toggle-lab"))
            .args([
                "certify",
                "--exhaustive",
                "3",
                "--output",
                "structured",
                "--jobs",
                jobs,
            ])
            .env_remove("TOGGLE_LAB_OUTPUT")
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run("4")?;
    let b = run("4")?;
    if !a.status.success() || a.stdout.is_empty() {
        return Err(format!("certify exited with {:?}", a.status.code()));
    }
    if a.stdout != b.stdout {
        return Err("two identical runs differ".into());
    }
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("fixture orders", fixture_orders, Duration::from_secs(1)),
        (
            "exhaustive theorem sweep |E| <= 3",
            theorem_sweep,
            Duration::from_secs(60),
        ),
        (
            "sampled sweep |E| = 4, seed 42, 5000 draws",
            sampled_sweep,
            Duration::from_secs(300),
        ),
        (
            "lemma suite |E| <= 3 + negative control",
            lemma_suite,
            Duration::from_secs(120),
        ),
        (
            "product long cycle, both directions",
            product_long_cycle,
            Duration::from_secs(30),
        ),
        ("factor round trip", round_trip, Duration::from_secs(30)),
        (
            "connected posets give S_N or A_N",
            connected_posets,
            Duration::from_secs(60),
        ),
        (
            "deterministic structured reports",
            determinism,
            Duration::from_secs(120),
        ),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= *budget => (true, d),
            Ok(d) => (false, format!("{d}; took {elapsed:.2?}, budget {budget:?}")),
            Err(d) => (false, d),
        };
        failed += usize::from(!ok);
        println!(
            "[{}] {}. {name}: {detail} ({elapsed:.2?})",
            if ok { "PASS" } else { "FAIL" },
            i + 1
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
