//! Automorphisms and isomorphisms of table groups by backtracking over
//! generator images.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::chain::PermGroup;
use super::lattice::all_subgroups;
use super::perm::Perm;
use super::table::{Elem, FiniteGroup, Subgroup};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Per-element isomorphism invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Invariant {
    order: u32,
    class_size: u32,
    square_class_size: u32,
    square_roots: u32,
}

fn invariants(g: &FiniteGroup) -> Vec<Invariant> {
    let n = g.order();
    let mut class_size = vec![0u32; n];
    for cls in g.conjugacy_classes(&g.whole(), &g.whole()) {
        for &x in &cls {
            class_size[x as usize] = cls.len() as u32;
        }
    }
    let mut roots = vec![0u32; n];
    for x in g.elements() {
        roots[g.mul(x, x) as usize] += 1;
    }
    g.elements()
        .map(|x| {
            let sq = g.mul(x, x);
            Invariant {
                order: g.elem_order(x),
                class_size: class_size[x as usize],
                square_class_size: class_size[sq as usize],
                square_roots: roots[x as usize],
            }
        })
        .collect()
}

/// Generators chosen greedily: each step takes an element outside the
/// current subgroup whose invariant is shared by the fewest elements,
/// preferring the largest resulting subgroup.
fn search_generators(g: &FiniteGroup, inv: &[Invariant]) -> Vec<Elem> {
    let mut freq: HashMap<Invariant, usize> = HashMap::new();
    for i in inv {
        *freq.entry(*i).or_default() += 1;
    }
    let mut gens: Vec<Elem> = Vec::new();
    let mut cur = g.trivial();
    while cur.order() < g.order() {
        let mut best: Option<(usize, std::cmp::Reverse<usize>, Elem)> = None;
        for x in g.elements().filter(|&x| !cur.contains(x)) {
            let mut trial = gens.clone();
            trial.push(x);
            let size = g.generate(&trial).order();
            let key = (freq[&inv[x as usize]], std::cmp::Reverse(size), x);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        let x = best.unwrap().2;
        gens.push(x);
        cur = g.generate(&gens);
    }
    gens
}

/// Extends `gens[..k] ↦ imgs[..k]` over `⟨gens[..k]⟩`; `None` if the
/// assignment is not a well-defined injective homomorphism there.
fn extend_partial(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[Elem],
    imgs: &[Elem],
) -> Option<Vec<Elem>> {
    let mut map = vec![Elem::MAX; a.order()];
    let mut used = FixedBitSet::with_capacity(b.order());
    map[0] = 0;
    used.insert(0);
    let mut queue = vec![0 as Elem];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = a.mul(x, s);
            let fy = b.mul(map[x as usize], t);
            if map[y as usize] == Elem::MAX {
                if used.put(fy as usize) {
                    return None;
                }
                map[y as usize] = fy;
                queue.push(y);
            } else if map[y as usize] != fy {
                return None;
            }
        }
    }
    Some(map)
}

struct Search<'a> {
    a: &'a FiniteGroup,
    b: &'a FiniteGroup,
    gens: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
}

impl<'a> Search<'a> {
    fn new(a: &'a FiniteGroup, b: &'a FiniteGroup) -> Option<Search<'a>> {
        if a.order() != b.order() {
            return None;
        }
        let ia = invariants(a);
        let ib = invariants(b);
        let mut sa = ia.clone();
        let mut sb = ib.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
        let gens = search_generators(a, &ia);
        let candidates = gens
            .iter()
            .map(|&x| {
                b.elements()
                    .filter(|&y| ib[y as usize] == ia[x as usize])
                    .collect()
            })
            .collect();
        Some(Search {
            a,
            b,
            gens,
            candidates,
        })
    }

    /// Depth-first over image tuples; `visit` returns false to stop.
    fn run(&self, visit: &mut dyn FnMut(&[Elem], Vec<Elem>) -> bool) {
        if self.gens.is_empty() {
            visit(&[], vec![0]);
            return;
        }
        let mut imgs = Vec::with_capacity(self.gens.len());
        self.step(&mut imgs, visit);
    }

    fn step(
        &self,
        imgs: &mut Vec<Elem>,
        visit: &mut dyn FnMut(&[Elem], Vec<Elem>) -> bool,
    ) -> bool {
        let k = imgs.len();
        for &c in &self.candidates[k] {
            imgs.push(c);
            if let Some(map) = extend_partial(self.a, self.b, &self.gens[..=k], imgs) {
                let go_on = if k + 1 == self.gens.len() {
                    visit(imgs, map)
                } else {
                    self.step(imgs, visit)
                };
                if !go_on {
                    imgs.pop();
                    return false;
                }
            }
            imgs.pop();
        }
        true
    }
}

/// An isomorphism given by generator images, with the full element map.
#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub generators: Vec<Elem>,
    pub images: Vec<Elem>,
    pub map: Vec<Elem>,
}

pub fn isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Result<Option<Isomorphism>> {
    let cap = Caps::global().aut;
    Caps::check(cap, a.order().max(b.order()), "aut")?;
    let Some(search) = Search::new(a, b) else {
        return Ok(None);
    };
    let mut found = None;
    search.run(&mut |imgs, map| {
        found = Some(Isomorphism {
            generators: search.gens.clone(),
            images: imgs.to_vec(),
            map,
        });
        false
    });
    Ok(found)
}

/// The full automorphism group: every map as an element list, and the same
/// group as permutations of the element indices.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub maps: Vec<Vec<Elem>>,
    pub group: PermGroup,
    pub inner_order: usize,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.maps.len()
    }

    pub fn outer_order(&self) -> usize {
        self.maps.len() / self.inner_order
    }
}

pub fn automorphisms(g: &FiniteGroup) -> Result<AutomorphismGroup> {
    let cap = Caps::global().aut;
    Caps::check(cap, g.order(), "aut")?;
    let search = Search::new(g, g).expect("a group matches itself");
    let mut maps = Vec::new();
    search.run(&mut |_, map| {
        maps.push(map);
        true
    });
    maps.sort();
    let perms: Vec<Perm> = maps
        .iter()
        .map(|m| Perm::from_images(m.clone()).expect("automorphism is a bijection"))
        .collect();
    let group = PermGroup::generated_incrementally(g.order(), perms)?;
    let inner_order = g.order() / g.center(&g.whole()).order();
    Ok(AutomorphismGroup {
        maps,
        group,
        inner_order,
    })
}

pub fn image_bits(map: &[Elem], h: &Subgroup) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(map.len());
    for x in h.iter() {
        bits.insert(map[x as usize] as usize);
    }
    bits
}

/// True iff `q` is invariant under every automorphism of `g`.
pub fn is_characteristic_subgroup(g: &FiniteGroup, q: &Subgroup) -> Result<bool> {
    let aut = automorphisms(g)?;
    Ok(aut
        .maps
        .iter()
        .all(|m| q.gens().iter().all(|&x| q.contains(m[x as usize]))))
}

/// Characteristic subgroups of `g` itself, in canonical order.
pub fn characteristic_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let aut = automorphisms(g)?;
    let subs = all_subgroups(g, &g.whole())?;
    Ok(subs
        .into_iter()
        .filter(|q| {
            aut.maps
                .iter()
                .all(|m| q.gens().iter().all(|&x| q.contains(m[x as usize])))
        })
        .collect())
}

/// For `g = ⟨x⟩ ⋉ h` and `z ∈ Z(h)` with `|xz| = |x|`, the automorphism
/// fixing `h` pointwise and sending `x` to `xz`.
pub fn extend_automorphism_semidirect(
    g: &FiniteGroup,
    x: Elem,
    h: &Subgroup,
    z: Elem,
) -> Result<Vec<Elem>> {
    let fail = |m: &str| Err(Error::Precondition(m.to_string()));
    if !g.is_normal(h, &g.whole()) {
        return fail("H is not normal in G");
    }
    let cx = g.generate(&[x]);
    if g.intersect(&cx, h).order() != 1 || cx.order() * h.order() != g.order() {
        return fail("G is not the semidirect product of <x> and H");
    }
    if !h.contains(z) || !h.gens().iter().all(|&a| g.mul(a, z) == g.mul(z, a)) {
        return fail("z is not in Z(H)");
    }
    let xz = g.mul(x, z);
    if g.elem_order(xz) != g.elem_order(x) {
        return fail("x and xz have different orders");
    }
    let mut map = vec![Elem::MAX; g.order()];
    let (mut xi, mut yi) = (0, 0);
    for _ in 0..cx.order() {
        for a in h.iter() {
            map[g.mul(xi, a) as usize] = g.mul(yi, a);
        }
        xi = g.mul(xi, x);
        yi = g.mul(yi, xz);
    }
    let is_hom = g.elements().all(|a| {
        g.elements()
            .all(|b| map[g.mul(a, b) as usize] == g.mul(map[a as usize], map[b as usize]))
    });
    if !is_hom {
        return Err(Error::Internal(
            "semidirect extension is not a homomorphism".into(),
        ));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::models;

    fn is_automorphism(g: &FiniteGroup, m: &[Elem]) -> bool {
        let mut seen = FixedBitSet::with_capacity(g.order());
        m.iter().all(|&y| !seen.put(y as usize))
            && g.elements().all(|a| {
                g.elements()
                    .all(|b| m[g.mul(a, b) as usize] == g.mul(m[a as usize], m[b as usize]))
            })
    }

    #[test]
    fn aut_q8_is_sym4() {
        let q = models::quaternion8();
        let aut = automorphisms(&q).unwrap();
        assert_eq!(aut.order(), 24);
        assert_eq!(aut.group.order(), 24);
        assert_eq!(aut.inner_order, 4);
        assert!(aut.maps.iter().all(|m| is_automorphism(&q, m)));
    }

    #[test]
    fn small_automorphism_groups() {
        assert_eq!(automorphisms(&models::cyclic(2)).unwrap().order(), 1);
        assert_eq!(automorphisms(&models::dihedral8()).unwrap().order(), 8);
        assert_eq!(automorphisms(&models::sym(4)).unwrap().order(), 24);
        assert_eq!(automorphisms(&models::cyclic(1)).unwrap().order(), 1);
    }

    #[test]
    fn q8_and_d8_are_not_isomorphic() {
        assert!(isomorphism(&models::quaternion8(), &models::dihedral8())
            .unwrap()
            .is_none());
        let d = models::dihedral8();
        let iso = isomorphism(&d, &d).unwrap().unwrap();
        assert!(is_automorphism(&d, &iso.map));
    }

    #[test]
    fn characteristic_subgroups_of_small_groups() {
        let c4 = models::cyclic(4);
        assert_eq!(characteristic_subgroups(&c4).unwrap().len(), 3);
        let v4 = {
            let s4 = models::sym(4);
            let a = s4
                .index_of(&Perm::parse_cycles(4, "(1 2)(3 4)").unwrap())
                .unwrap();
            let b = s4
                .index_of(&Perm::parse_cycles(4, "(1 3)(2 4)").unwrap())
                .unwrap();
            s4.subgroup_as_group(&s4.generate(&[a, b])).0
        };
        let ch = characteristic_subgroups(&v4).unwrap();
        assert_eq!(ch.iter().map(|s| s.order()).collect::<Vec<_>>(), vec![1, 4]);
        let d8 = models::dihedral8();
        assert!(is_characteristic_subgroup(&d8, &d8.center(&d8.whole())).unwrap());
        assert!(is_characteristic_subgroup(&d8, &d8.derived(&d8.whole())).unwrap());
    }

    #[test]
    fn semidirect_extension_on_d8() {
        let g = models::dihedral8();
        let el = |s: &str| g.index_of(&Perm::parse_cycles(4, s).unwrap()).unwrap();
        let (r, s) = (el("(1 2 3 4)"), el("(1 3)"));
        let h = g.generate(&[r]);
        let z = g.mul(r, r);
        let beta = extend_automorphism_semidirect(&g, s, &h, z).unwrap();
        assert_eq!(beta[s as usize], g.mul(s, z));
        assert_eq!(beta[g.mul(s, z) as usize], s);
        assert!(h.iter().all(|a| beta[a as usize] == a));
        let id = extend_automorphism_semidirect(&g, s, &h, 0).unwrap();
        assert!(g.elements().all(|a| id[a as usize] == a));
        let c6 = models::cyclic(6);
        let a = c6.generators()[0];
        let x = c6.pow(a, 3);
        let h = c6.generate(&[c6.pow(a, 2)]);
        let bad = extend_automorphism_semidirect(&c6, x, &h, c6.pow(a, 2));
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }
}
