//! Exhaustive subgroup enumeration, bottom-up.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use super::table::{FiniteGroup, Subgroup};
use crate::caps::Caps;
use crate::error::Result;

pub fn is_solvable(g: &FiniteGroup, h: &Subgroup) -> bool {
    let mut cur = h.clone();
    loop {
        if cur.is_trivial() {
            return true;
        }
        let d = g.derived(&cur);
        if d.order() == cur.order() {
            return false;
        }
        cur = d;
    }
}

/// Cyclic subgroups of `h`, deduplicated, in canonical order.
pub fn cyclic_subgroups(g: &FiniteGroup, h: &Subgroup) -> Vec<Subgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in h.iter() {
        let c = g.generate(&[x]);
        if seen.insert(c.bits().clone()) {
            out.push(c);
        }
    }
    out.sort();
    out
}

/// Every subgroup of `h`, sorted canonically (by order, then elements).
///
/// Solvable `h`: every nontrivial subgroup has a normal subgroup of prime
/// index, so joins are only taken with elements of prime order modulo a
/// subgroup inside its normalizer. Otherwise joins with all cyclic subgroups.
pub fn all_subgroups(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    let cap = Caps::global().lattice;
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut out: Vec<Subgroup> = Vec::new();
    // Extension steps commute with conjugation by `h`, so only one
    // representative per class is extended; the rest of its class is added
    // directly.
    let mut reps: Vec<Subgroup> = Vec::new();
    let mut add = |s: Subgroup, out: &mut Vec<Subgroup>, reps: &mut Vec<Subgroup>| -> Result<()> {
        if seen.contains(s.bits()) {
            return Ok(());
        }
        let mut class = vec![s.clone()];
        seen.insert(s.bits().clone());
        let mut k = 0;
        while k < class.len() {
            for &x in h.gens() {
                let c = g.conj_subgroup(&class[k], x);
                if seen.insert(c.bits().clone()) {
                    class.push(c);
                }
            }
            k += 1;
        }
        Caps::check(cap, out.len() + class.len(), "lattice")?;
        reps.push(s);
        out.extend(class);
        Ok(())
    };
    add(g.trivial(), &mut out, &mut reps)?;
    let mut k = 0;
    if is_solvable(g, h) {
        while k < reps.len() {
            let cur = reps[k].clone();
            k += 1;
            let n = g.normalizer(h, &cur);
            let mut made: Vec<Subgroup> = Vec::new();
            for x in n.iter() {
                if cur.contains(x) || made.iter().any(|m| m.contains(x)) {
                    continue;
                }
                let mut y = x;
                let mut e = 1u32;
                while !cur.contains(y) {
                    y = g.mul(y, x);
                    e += 1;
                }
                if !super::local::is_prime(e) {
                    continue;
                }
                let mut gens = cur.gens().to_vec();
                gens.push(x);
                let j = g.generate(&gens);
                add(j.clone(), &mut out, &mut reps)?;
                made.push(j);
            }
        }
    } else {
        let cyc = cyclic_subgroups(g, h);
        while k < reps.len() {
            let cur = reps[k].clone();
            k += 1;
            for c in &cyc {
                if c.is_subgroup_of(&cur) {
                    continue;
                }
                add(g.join(&cur, c), &mut out, &mut reps)?;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Partition of `subs` into orbits under conjugation by `within`; classes
/// and members in canonical order. Returns indices into `subs`.
pub fn conjugacy_classes_of_subgroups(
    g: &FiniteGroup,
    within: &Subgroup,
    subs: &[Subgroup],
) -> Vec<Vec<usize>> {
    let index: HashMap<&FixedBitSet, usize> = subs
        .iter()
        .enumerate()
        .map(|(i, s)| (s.bits(), i))
        .collect();
    let mut class_of = vec![usize::MAX; subs.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..subs.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = classes.len();
        class_of[i] = c;
        let mut members = vec![i];
        let mut k = 0;
        while k < members.len() {
            let s = &subs[members[k]];
            k += 1;
            for &x in within.gens() {
                let bits = g.conj_bits(s, x);
                if let Some(&j) = index.get(&bits) {
                    if class_of[j] == usize::MAX {
                        class_of[j] = c;
                        members.push(j);
                    }
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

/// Maximal elements of `subs` below `top` (excluding `top`).
pub fn maximal_subgroups_in(subs: &[Subgroup], top: &Subgroup) -> Vec<Subgroup> {
    let below: Vec<&Subgroup> = subs
        .iter()
        .filter(|s| s.order() < top.order() && s.is_subgroup_of(top))
        .collect();
    below
        .iter()
        .filter(|m| {
            !below
                .iter()
                .any(|k| k.order() > m.order() && m.is_subgroup_of(k))
        })
        .map(|m| (*m).clone())
        .collect()
}

pub fn normal_subgroups(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    Ok(all_subgroups(g, h)?
        .into_iter()
        .filter(|s| g.is_normal(s, h))
        .collect())
}

pub fn elementary_abelian_subgroups(
    g: &FiniteGroup,
    h: &Subgroup,
    p: u32,
) -> Result<Vec<Subgroup>> {
    Ok(all_subgroups(g, h)?
        .into_iter()
        .filter(|s| g.is_elementary_abelian(s, p))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::models;

    #[test]
    fn sym4_has_30_subgroups_in_11_classes() {
        let g = models::sym(4);
        let subs = all_subgroups(&g, &g.whole()).unwrap();
        assert_eq!(subs.len(), 30);
        assert_eq!(
            conjugacy_classes_of_subgroups(&g, &g.whole(), &subs).len(),
            11
        );
    }

    #[test]
    fn nonsolvable_path() {
        let g = models::sl32_on_7();
        assert!(!is_solvable(&g, &g.whole()));
        let subs = all_subgroups(&g, &g.whole()).unwrap();
        assert_eq!(subs.len(), 179);
        assert_eq!(
            conjugacy_classes_of_subgroups(&g, &g.whole(), &subs).len(),
            15
        );
    }

    #[test]
    fn d8_lattice() {
        let g = models::dihedral8();
        assert_eq!(all_subgroups(&g, &g.whole()).unwrap().len(), 10);
    }
}
