//! Orbits and the deterministic Schreier–Sims stabilizer chain.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::One;

use super::perm::Permutation;
use crate::error::{Error, Result};

fn check_degrees(gens: &[Permutation], n: usize) -> Result<()> {
    match gens.iter().find(|g| g.degree() != n) {
        Some(g) => Err(Error::DegreeMismatch {
            left: g.degree(),
            right: n,
        }),
        None => Ok(()),
    }
}

/// Finest partition of `{0..n-1}` closed under every generator.
///
/// Orbits are sorted internally and listed by least point.
pub fn orbits(gens: &[Permutation], n: usize) -> Result<Vec<Vec<usize>>> {
    check_degrees(gens, n)?;
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    Ok(out)
}

pub fn is_transitive(gens: &[Permutation], n: usize) -> Result<bool> {
    Ok(orbits(gens, n)?.len() <= 1)
}

#[derive(Debug, Clone)]
struct Level {
    point: usize,
    /// Indices into the strong generating set; all fix the earlier base points.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// `transversal[b]` maps `point` to `b`.
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
}

impl Level {
    fn new(n: usize, point: usize) -> Self {
        let mut transversal = vec![None; n];
        let mut inverse = vec![None; n];
        transversal[point] = Some(Permutation::identity(n));
        inverse[point] = Some(Permutation::identity(n));
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            transversal,
            inverse,
        }
    }

    /// Extends the orbit after `gens` grew; existing representatives are kept.
    fn close_orbit(&mut self, strong: &[Permutation]) {
        let mut queue: VecDeque<usize> = self.orbit.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &gi in &self.gens {
                let s = &strong[gi];
                let y = s.apply(x);
                if self.transversal[y].is_none() {
                    let rep = s.mul(self.transversal[x].as_ref().expect("orbit point has rep"));
                    self.inverse[y] = Some(rep.inverse());
                    self.transversal[y] = Some(rep);
                    self.orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
    }
}

/// Generators plus a base and strong generating set with exact order.
#[derive(Debug, Clone)]
pub struct GroupDescription {
    degree: usize,
    generators: Vec<Permutation>,
    strong_generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
}

impl GroupDescription {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong_generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Fundamental orbit sizes along the base.
    pub fn basic_orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Order as `u64` when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits(&self.generators, self.degree).expect("degrees checked at construction")
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    pub fn is_symmetric(&self) -> bool {
        self.order == factorial(self.degree)
    }

    /// Order is exactly n!/2 (n >= 2), which pins the group to the alternating group.
    pub fn is_alternating(&self) -> bool {
        self.degree >= 2 && self.order.clone() * 2u32 == factorial(self.degree)
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level it stopped at.
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.apply(level.point);
            match &level.inverse[b] {
                Some(inv) => h = inv.mul(&h),
                None => return (h, j),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: p.degree(),
                right: self.degree,
            });
        }
        let (residue, _) = self.strip(p, 0);
        Ok(residue.is_identity())
    }

    /// Visits every element exactly once by walking the coset representatives.
    pub fn for_each_element<F>(&self, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&Permutation) -> ControlFlow<()>,
    {
        fn walk<F>(levels: &[Level], prefix: &Permutation, visit: &mut F) -> ControlFlow<()>
        where
            F: FnMut(&Permutation) -> ControlFlow<()>,
        {
            match levels.split_first() {
                None => visit(prefix),
                Some((level, rest)) => {
                    for &b in &level.orbit {
                        let rep = level.transversal[b].as_ref().expect("orbit point has rep");
                        walk(rest, &prefix.mul(rep), visit)?;
                    }
                    ControlFlow::Continue(())
                }
            }
        }
        walk(
            &self.levels,
            &Permutation::identity(self.degree),
            &mut visit,
        )
    }

    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        let _ = self.for_each_element(|p| {
            out.push(p.clone());
            ControlFlow::Continue(())
        });
        out
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// Deterministic Schreier–Sims.
///
/// Base points are chosen as the smallest point moved by the generator (or
/// sifted residue) that forces a new level, so identical inputs always give
/// identical bases and strong generating sets.
pub fn schreier_sims(gens: &[Permutation], n: usize) -> Result<GroupDescription> {
    check_degrees(gens, n)?;

    let mut strong: Vec<Permutation> = Vec::new();
    let mut base: Vec<usize> = Vec::new();
    for g in gens {
        if g.is_identity() || strong.contains(g) {
            continue;
        }
        if base.iter().all(|&b| g.apply(b) == b) {
            base.push(g.smallest_moved_point().expect("non-identity"));
        }
        strong.push(g.clone());
    }

    let mut group = GroupDescription {
        degree: n,
        generators: gens.to_vec(),
        strong_generators: Vec::new(),
        levels: Vec::new(),
        order: BigUint::one(),
    };
    for (l, &b) in base.iter().enumerate() {
        let mut level = Level::new(n, b);
        level.gens = (0..strong.len())
            .filter(|&i| base[..l].iter().all(|&p| strong[i].apply(p) == p))
            .collect();
        level.close_orbit(&strong);
        group.levels.push(level);
    }

    let mut i = group.levels.len();
    while i > 0 {
        let lvl = i - 1;
        match find_new_generator(&group, &strong, lvl) {
            None => i -= 1,
            Some((h, j)) => {
                if j == group.levels.len() {
                    let point = h.smallest_moved_point().expect("non-identity residue");
                    group.levels.push(Level::new(n, point));
                }
                strong.push(h);
                let idx = strong.len() - 1;
                for level in &mut group.levels[lvl + 1..=j] {
                    level.gens.push(idx);
                    level.close_orbit(&strong);
                }
                i = j + 1;
            }
        }
    }

    group.order = group
        .levels
        .iter()
        .fold(BigUint::one(), |acc, l| acc * l.orbit.len());
    group.strong_generators = strong;
    Ok(group)
}

/// Finds a Schreier generator at `lvl` whose sift through the deeper levels
/// leaves a non-identity residue.
fn find_new_generator(
    group: &GroupDescription,
    strong: &[Permutation],
    lvl: usize,
) -> Option<(Permutation, usize)> {
    let level = &group.levels[lvl];
    for &b in &level.orbit {
        let u = level.transversal[b].as_ref().expect("orbit point has rep");
        for &gi in &level.gens {
            let s = &strong[gi];
            let sb = s.apply(b);
            let inv = level.inverse[sb].as_ref().expect("orbit closed");
            let schreier = inv.mul(&s.mul(u));
            if schreier.is_identity() {
                continue;
            }
            let (residue, j) = group.strip(&schreier, lvl + 1);
            if !residue.is_identity() {
                return Some((residue, j));
            }
        }
    }
    None
}

pub fn contains_element(group: &GroupDescription, p: &Permutation) -> Result<bool> {
    group.contains(p)
}
