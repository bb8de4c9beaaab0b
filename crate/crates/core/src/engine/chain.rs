//! Permutation groups with a deterministic Schreier–Sims stabilizer chain.

use std::collections::HashMap;
use std::hash::Hash;

use super::perm::Perm;
use crate::caps::Caps;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    gens: Vec<Perm>,
    /// Orbit of `base` in discovery order.
    orbit: Vec<u32>,
    /// `trans[x] = u` with `base^u = x`, and its inverse.
    trans: Vec<Option<(Perm, Perm)>>,
}

impl Level {
    fn build(degree: usize, base: u32, gens: Vec<Perm>) -> Level {
        let mut trans: Vec<Option<(Perm, Perm)>> = vec![None; degree];
        let id = Perm::identity(degree);
        trans[base as usize] = Some((id.clone(), id));
        let mut orbit = vec![base];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            k += 1;
            for s in &gens {
                let y = s.apply(x);
                if trans[y as usize].is_none() {
                    let u = trans[x as usize].as_ref().unwrap().0.then(s);
                    let ui = u.inverse();
                    trans[y as usize] = Some((u, ui));
                    orbit.push(y);
                }
            }
        }
        Level {
            base,
            gens,
            orbit,
            trans,
        }
    }
}

/// A permutation group given by generators, with its stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::Input(format!(
                    "generator of degree {} in a group of degree {degree}",
                    g.degree()
                )));
            }
        }
        let levels = schreier_sims(degree, &gens);
        Ok(PermGroup {
            degree,
            gens,
            levels,
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            gens: Vec::new(),
            levels: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of the fundamental orbit lengths.
    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Sifts `g` through the chain; returns the residue and the level reached.
    fn strip(&self, g: &Perm) -> (Perm, usize) {
        sift(&self.levels, g.clone(), 0)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(g);
        j == self.levels.len() && h.is_identity()
    }

    /// All elements, enumerated through the transversals.
    pub fn elements(&self, cap: usize) -> Result<Vec<Perm>> {
        let order = self.order();
        if order > cap as u128 {
            return Err(Error::Resource {
                cap: "table",
                limit: cap,
                needed: order.min(usize::MAX as u128) as usize,
            });
        }
        let mut out = vec![Perm::identity(self.degree)];
        for lvl in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lvl.orbit.len());
            for h in &out {
                for x in &lvl.orbit {
                    next.push(h.then(&lvl.trans[*x as usize].as_ref().unwrap().0));
                }
            }
            out = next;
        }
        Ok(out)
    }

    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[point as usize] = true;
        let mut out = vec![point];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            k += 1;
            for g in &self.gens {
                let y = g.apply(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
        }
        out
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    /// Subgroup generated by `candidates`, adding only non-members; keeps the
    /// generator list short when the candidate list is long.
    pub fn generated_incrementally(
        degree: usize,
        candidates: impl IntoIterator<Item = Perm>,
    ) -> Result<PermGroup> {
        let mut g = PermGroup::trivial(degree);
        for c in candidates {
            if c.degree() != degree {
                return Err(Error::Input("candidate of wrong degree".into()));
            }
            if !g.contains(&c) {
                let mut gens = g.gens.clone();
                gens.push(c);
                g = PermGroup::new(degree, gens)?;
            }
        }
        Ok(g)
    }

    /// Orbit of `start` under an action of this group, with the Schreier
    /// generators of its stabilizer.
    pub fn orbit_stabilizer<T, F>(&self, start: T, act: F) -> Result<(Vec<T>, PermGroup)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &Perm) -> T,
    {
        let cap = Caps::global().orbit;
        let mut index: HashMap<T, usize> = HashMap::new();
        let mut orbit = vec![start.clone()];
        let mut reps = vec![Perm::identity(self.degree)];
        index.insert(start, 0);
        let mut k = 0;
        while k < orbit.len() {
            for g in &self.gens {
                let y = act(&orbit[k], g);
                if !index.contains_key(&y) {
                    Caps::check(cap, orbit.len() + 1, "orbit")?;
                    index.insert(y.clone(), orbit.len());
                    reps.push(reps[k].then(g));
                    orbit.push(y);
                }
            }
            k += 1;
        }
        let mut schreier = Vec::new();
        for (k, pt) in orbit.iter().enumerate() {
            for g in &self.gens {
                let j = index[&act(pt, g)];
                let s = reps[k].then(g).then(&reps[j].inverse());
                if !s.is_identity() {
                    schreier.push(s);
                }
            }
        }
        let stab = PermGroup::generated_incrementally(self.degree, schreier)?;
        Ok((orbit, stab))
    }
}

fn sift(levels: &[Level], mut g: Perm, from: usize) -> (Perm, usize) {
    for (j, lvl) in levels.iter().enumerate().skip(from) {
        let x = g.apply(lvl.base);
        match &lvl.trans[x as usize] {
            None => return (g, j),
            Some((_, ui)) => g = g.then(ui),
        }
    }
    (g, levels.len())
}

fn sift_refs(levels: &[&Level], mut g: Perm) -> (Perm, usize) {
    for (j, lvl) in levels.iter().enumerate() {
        let x = g.apply(lvl.base);
        match &lvl.trans[x as usize] {
            None => return (g, j),
            Some((_, ui)) => g = g.then(ui),
        }
    }
    (g, levels.len())
}

/// Deterministic Schreier–Sims: the base is extended by the smallest point
/// moved by each new strong generator, and Schreier generators are scanned in
/// orbit order, so the chain depends only on the generator list.
fn schreier_sims(degree: usize, gens: &[Perm]) -> Vec<Level> {
    let mut strong: Vec<Perm> = Vec::new();
    for g in gens {
        if !g.is_identity() && !strong.contains(g) {
            strong.push(g.clone());
        }
    }
    let mut base: Vec<u32> = Vec::new();
    for g in &strong {
        if base.iter().all(|&b| g.apply(b) == b) {
            base.push(g.first_moved().unwrap());
        }
    }
    let fixes_prefix =
        |g: &Perm, base: &[u32], i: usize| base[..i].iter().all(|&b| g.apply(b) == b);
    let mut levels: Vec<Option<Level>> = vec![None; base.len()];
    let ensure = |levels: &mut Vec<Option<Level>>, strong: &[Perm], base: &[u32], i: usize| {
        if levels[i].is_none() {
            let gi: Vec<Perm> = strong
                .iter()
                .filter(|g| fixes_prefix(g, base, i))
                .cloned()
                .collect();
            levels[i] = Some(Level::build(degree, base[i], gi));
        }
    };
    let mut i = base.len() as isize - 1;
    while i >= 0 {
        let iu = i as usize;
        ensure(&mut levels, &strong, &base, iu);
        for l in iu + 1..base.len() {
            ensure(&mut levels, &strong, &base, l);
        }
        let found: Option<(Perm, usize)> = {
            let lvl = levels[iu].as_ref().unwrap();
            let lower: Vec<&Level> = levels[iu + 1..]
                .iter()
                .map(|l| l.as_ref().unwrap())
                .collect();
            let mut found = None;
            'scan: for &x in &lvl.orbit {
                let ux = &lvl.trans[x as usize].as_ref().unwrap().0;
                for s in &lvl.gens {
                    let y = s.apply(x);
                    let uyi = &lvl.trans[y as usize].as_ref().unwrap().1;
                    let sch = ux.then(s).then(uyi);
                    if sch.is_identity() {
                        continue;
                    }
                    let (h, j) = sift_refs(&lower, sch);
                    let j = j + iu + 1;
                    if j < base.len() || !h.is_identity() {
                        found = Some((h, j));
                        break 'scan;
                    }
                }
            }
            found
        };
        let mut restart: Option<usize> = None;
        if let Some((h, j)) = found {
            if j == base.len() {
                base.push(h.first_moved().unwrap());
                levels.push(None);
            }
            strong.push(h);
            for l in iu + 1..=j {
                levels[l] = None;
            }
            restart = Some(j);
        }
        match restart {
            Some(j) => i = j as isize,
            None => i -= 1,
        }
    }
    levels.into_iter().map(|l| l.unwrap()).collect()
}
