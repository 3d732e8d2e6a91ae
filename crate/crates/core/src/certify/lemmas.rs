//! Property checks for the structure of toggles relative to a block system.
//!
//! Clauses quantified over arbitrary toggle words are checked on every word
//! of length 1 and 2 plus `word_samples` seeded random words of length up to
//! `word_bound`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CertResult, Status, Witness};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::permgroup::{orbits, BlockSystem, Parity, Permutation};
use crate::toggle::{
    build_toggles, classify_toggles, try_factor, SetFamily, ToggleSet, ToggleType,
};

pub const LEMMA_CLAUSES: [&str; 8] = [
    "type1-fixes-stable-block",
    "type1-commutes-type2",
    "type2-uniform-cycle-type",
    "type2-pointwise-rigidity",
    "type1-symmetric-difference",
    "disjoint-words-agree-only-on-fixed",
    "odd-block-size-factors",
    "type2-parity-dichotomy",
];

type Outcome = (Status, String, Option<Permutation>);

fn vacuous(why: &str) -> Outcome {
    (Status::VacuouslyTrue, why.to_owned(), None)
}

fn pass(detail: String) -> Outcome {
    (Status::Pass, detail, None)
}

fn fail(detail: String, p: &Permutation) -> Outcome {
    (Status::Fail, detail, Some(p.clone()))
}

struct Suite<'a> {
    family: &'a SetFamily,
    bs: &'a BlockSystem,
    blocks: Vec<Vec<usize>>,
    type1: Vec<(&'a str, &'a Permutation)>,
    type2: Vec<(&'a str, &'a Permutation)>,
    all: Vec<(&'a str, &'a Permutation)>,
    config: &'a RunConfig,
}

impl<'a> Suite<'a> {
    fn rng(&self, clause: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed.wrapping_add(clause as u64))
    }

    fn product(&self, pool: &[&Permutation], word: &[usize]) -> Permutation {
        word.iter()
            .fold(Permutation::identity(self.family.len()), |acc, &i| {
                acc.mul(pool[i])
            })
    }

    fn random_word(&self, rng: &mut ChaCha8Rng, len: usize) -> Vec<usize> {
        let k = rng.gen_range(1..=self.config.word_bound);
        (0..k).map(|_| rng.gen_range(0..len)).collect()
    }

    /// All words of length 1 and 2 over `pool`, then seeded random words.
    fn words(&self, pool: &[&Permutation], clause: usize) -> Vec<Permutation> {
        let k = pool.len();
        if k == 0 {
            return Vec::new();
        }
        let mut out: Vec<Permutation> = pool.iter().map(|p| (*p).clone()).collect();
        for i in 0..k {
            for j in 0..k {
                out.push(self.product(pool, &[i, j]));
            }
        }
        let mut rng = self.rng(clause);
        for _ in 0..self.config.word_samples {
            let w = self.random_word(&mut rng, k);
            out.push(self.product(pool, &w));
        }
        out
    }

    fn perms(list: &[(&'a str, &'a Permutation)]) -> Vec<&'a Permutation> {
        list.iter().map(|(_, p)| *p).collect()
    }

    fn stabilizes(&self, p: &Permutation, block: &[usize]) -> bool {
        let b = self.bs.block_of()[block[0]];
        block.iter().all(|&x| self.bs.block_of()[p.apply(x)] == b)
    }

    /// Sorted cycle lengths of `p` restricted to each block, for a block-fixing `p`.
    fn restricted_cycle_types(&self, p: &Permutation) -> Vec<Vec<usize>> {
        let mut types = vec![Vec::new(); self.bs.num_blocks()];
        for c in p.cycle_decomposition().cycles {
            types[self.bs.block_of()[c[0]]].push(c.len());
        }
        for t in &mut types {
            t.sort_unstable();
        }
        types
    }

    fn restricted_parity(lengths: &[usize]) -> Parity {
        lengths
            .iter()
            .fold(Parity::Even, |acc, &k| acc ^ Parity::of_cycle_length(k))
    }

    fn type1_fixes_stable_block(&self) -> Outcome {
        let mut stable = 0;
        for (label, tau) in &self.type1 {
            for block in &self.blocks {
                if !self.stabilizes(tau, block) {
                    continue;
                }
                stable += 1;
                if let Some(&x) = block.iter().find(|&&x| tau.apply(x) != x) {
                    return fail(
                        format!(
                            "toggle {label} maps block {block:?} to itself but moves point {x}"
                        ),
                        tau,
                    );
                }
            }
        }
        if stable == 0 {
            return vacuous("no type 1 toggle stabilizes a block");
        }
        pass(format!(
            "{stable} (toggle, stable block) pairs fixed pointwise"
        ))
    }

    fn type1_commutes_type2(&self) -> Outcome {
        if self.type1.is_empty() || self.type2.is_empty() {
            return vacuous("one of the toggle classes is empty");
        }
        for (l1, t1) in &self.type1 {
            for (l2, t2) in &self.type2 {
                if !t1.commutes_with(t2) {
                    return fail(format!("toggles {l1} and {l2} do not commute"), t1);
                }
            }
        }
        pass(format!(
            "{} pairs commute",
            self.type1.len() * self.type2.len()
        ))
    }

    fn type2_uniform_cycle_type(&self) -> Outcome {
        if self.type2.is_empty() {
            return vacuous("no type 2 toggles");
        }
        for (label, tau) in &self.type2 {
            let types = self.restricted_cycle_types(tau);
            if let Some(j) = types.iter().position(|t| *t != types[0]) {
                return fail(
                    format!(
                        "toggle {label} has cycle type {:?} on block 0 but {:?} on block {j}",
                        types[0], types[j]
                    ),
                    tau,
                );
            }
        }
        pass(format!(
            "{} type 2 toggles uniform across blocks",
            self.type2.len()
        ))
    }

    fn type2_pointwise_rigidity(&self) -> Outcome {
        let words = self.words(&Self::perms(&self.type2), 3);
        let mut fired = 0;
        for rho in &words {
            let fixed_block = self
                .blocks
                .iter()
                .find(|b| b.iter().all(|&x| rho.apply(x) == x));
            if let Some(block) = fixed_block {
                fired += 1;
                if !rho.is_identity() {
                    return fail(format!("{rho} fixes block {block:?} pointwise"), rho);
                }
            }
        }
        if fired == 0 {
            return vacuous("no sampled type 2 word fixes a block pointwise");
        }
        pass(format!(
            "{fired} of {} type 2 words fix a block and are trivial",
            words.len()
        ))
    }

    fn type1_symmetric_difference(&self) -> Outcome {
        let words = self.words(&Self::perms(&self.type1), 4);
        if words.is_empty() {
            return vacuous("no type 1 toggles");
        }
        let f = self.family;
        for sigma in &words {
            for block in &self.blocks {
                let x = f.mask(block[0]) ^ f.mask(sigma.apply(block[0]));
                if let Some(&a) = block
                    .iter()
                    .find(|&&a| f.mask(sigma.apply(a)) != f.mask(a) ^ x)
                {
                    return fail(
                        format!(
                            "{sigma} on block {block:?}: {} is not {} shifted by {}",
                            f.format_set(sigma.apply(a)),
                            f.format_set(a),
                            f.format_mask(x)
                        ),
                        sigma,
                    );
                }
            }
        }
        pass(format!(
            "{} type 1 words act by a fixed symmetric difference per block",
            words.len()
        ))
    }

    fn disjoint_words(&self) -> Outcome {
        // Pairs from the type split first, then random disjoint splits of the ground.
        let mut pairs = Vec::new();
        let w1 = self.words(&Self::perms(&self.type1), 5);
        let w2 = self.words(&Self::perms(&self.type2), 6);
        if !w1.is_empty() && !w2.is_empty() {
            for i in 0..w1.len().max(w2.len()) {
                pairs.push((w1[i % w1.len()].clone(), w2[i % w2.len()].clone()));
            }
        }
        let mut rng = self.rng(7);
        for _ in 0..self.config.word_samples {
            let (mut xs, mut ys) = (Vec::new(), Vec::new());
            for (_, p) in &self.all {
                match rng.gen_range(0..3) {
                    0 => xs.push(*p),
                    1 => ys.push(*p),
                    _ => {}
                }
            }
            if xs.is_empty() || ys.is_empty() {
                continue;
            }
            let wx = self.random_word(&mut rng, xs.len());
            let wy = self.random_word(&mut rng, ys.len());
            pairs.push((self.product(&xs, &wx), self.product(&ys, &wy)));
        }
        if pairs.is_empty() {
            return vacuous("no disjoint word pairs");
        }
        for (sigma, rho) in &pairs {
            for a in 0..self.family.len() {
                let s = sigma.apply(a);
                if s == rho.apply(a) && s != a {
                    return fail(
                        format!(
                            "{sigma} and {rho} agree on {} without fixing it",
                            self.family.format_set(a)
                        ),
                        sigma,
                    );
                }
            }
        }
        pass(format!("{} disjoint word pairs", pairs.len()))
    }

    fn factors_along_system(&self) -> Result<Option<String>> {
        Ok(match try_factor(self.family, self.bs)? {
            Some(fact) if fact.ell() >= 2 && fact.m() >= 2 => None,
            Some(fact) => Some(format!("factor sizes {} x {}", fact.ell(), fact.m())),
            None => Some("no Cartesian factorization along this block system".to_owned()),
        })
    }

    fn odd_block_size_factors(&self) -> Result<Outcome> {
        if self.bs.block_size().is_multiple_of(2) {
            return Ok(vacuous("block size is even"));
        }
        Ok(match self.factors_along_system()? {
            None => pass(format!(
                "block size {} odd; factors as {} x {}",
                self.bs.block_size(),
                self.bs.num_blocks(),
                self.bs.block_size()
            )),
            Some(why) => (
                Status::Fail,
                format!("block size {} odd but {why}", self.bs.block_size()),
                None,
            ),
        })
    }

    fn type2_parity_dichotomy(&self) -> Result<Outcome> {
        let words = self.words(&Self::perms(&self.type1), 8);
        let moving = words.iter().find(|sigma| {
            self.blocks
                .iter()
                .any(|b| self.stabilizes(sigma, b) && b.iter().any(|&x| sigma.apply(x) != x))
        });
        let odd_restriction = self.type2.iter().find_map(|(label, tau)| {
            self.restricted_cycle_types(tau)
                .iter()
                .position(|t| Self::restricted_parity(t) == Parity::Odd)
                .map(|j| (*label, *tau, j))
        });
        if let (Some(sigma), Some((label, tau, j))) = (moving, odd_restriction) {
            return Ok(fail(
                format!(
                    "type 1 word {sigma} moves points inside a stabilized block, yet toggle {label} is odd on block {j}"
                ),
                tau,
            ));
        }
        if let Some((label, tau, j)) = odd_restriction {
            if let Some(why) = self.factors_along_system()? {
                return Ok(fail(
                    format!("toggle {label} is odd on block {j} but {why}"),
                    tau,
                ));
            }
            return Ok(pass(format!(
                "toggle {label} is odd on block {j}; family factors"
            )));
        }
        if moving.is_some() {
            return Ok(pass(
                "type 1 word moves a stabilized block; all type 2 restrictions even".into(),
            ));
        }
        Ok(vacuous("neither hypothesis observed"))
    }
}

/// Runs every clause on `f` with its own toggles.
pub fn check_lemma_suite(
    f: &SetFamily,
    bs: &BlockSystem,
    config: &RunConfig,
) -> Result<Vec<CertResult>> {
    check_lemma_suite_with(f, &build_toggles(f), bs, config)
}

/// Runs every clause with the given permutations standing in for the toggles.
pub fn check_lemma_suite_with(
    f: &SetFamily,
    ts: &ToggleSet,
    bs: &BlockSystem,
    config: &RunConfig,
) -> Result<Vec<CertResult>> {
    let n = f.len();
    if ts.len() != f.ground_len() {
        return Err(Error::DegreeMismatch {
            left: ts.len(),
            right: f.ground_len(),
        });
    }
    if let Some((_, p)) = ts.iter().find(|(_, p)| p.degree() != n) {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: n,
        });
    }
    if bs.degree() != n {
        return Err(Error::DegreeMismatch {
            left: bs.degree(),
            right: n,
        });
    }
    if bs.is_trivial() {
        return Err(Error::MalformedBlockSystem(
            "block system is trivial".into(),
        ));
    }
    let orbit_count = orbits(&ts.generators(), n)?.len();
    if orbit_count > 1 {
        return Err(Error::NotTransitive {
            degree: n,
            orbits: orbit_count,
        });
    }
    let types = classify_toggles(f, ts, bs)?;
    let split = |ty| {
        ts.iter()
            .filter(|(e, _)| types.type_of(e) == Some(ty))
            .collect::<Vec<_>>()
    };
    let suite = Suite {
        family: f,
        bs,
        blocks: bs.blocks(),
        type1: split(ToggleType::Type1),
        type2: split(ToggleType::Type2),
        all: ts.iter().collect(),
        config,
    };
    let custom = *ts != build_toggles(f);

    let mut results = Vec::with_capacity(LEMMA_CLAUSES.len());
    for (i, name) in LEMMA_CLAUSES.iter().enumerate() {
        let start = Instant::now();
        let (status, detail, perm) = match i {
            0 => suite.type1_fixes_stable_block(),
            1 => suite.type1_commutes_type2(),
            2 => suite.type2_uniform_cycle_type(),
            3 => suite.type2_pointwise_rigidity(),
            4 => suite.type1_symmetric_difference(),
            5 => suite.disjoint_words(),
            6 => suite.odd_block_size_factors()?,
            _ => suite.type2_parity_dichotomy()?,
        };
        let witness = (status == Status::Fail).then(|| {
            let mut w = Witness::of_family(f).with_permutation(perm.as_ref());
            w.block_system = Some(bs.block_of().to_vec());
            if custom {
                w.toggles = Some(ts.iter().map(|(e, p)| (e.to_owned(), p.clone())).collect());
            }
            w
        });
        results.push(CertResult::new(name, status, detail, witness).timed(start));
    }
    Ok(results)
}
