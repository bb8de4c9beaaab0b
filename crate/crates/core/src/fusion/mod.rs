//! Realized fusion systems `F_S(G)`.

mod closure;
mod essential;
mod large;
mod subsystems;

pub use closure::{fusion_contained, fusion_contained_elems, strongly_closed_in, ConjugatesIn};
pub use essential::{has_strongly_p_embedded, has_strongly_p_embedded_brute, EssentialStructure};
pub use large::{is_large_in_group, GroupLargeness, LargenessReport, NormalityReport, Verdict};
pub use subsystems::{FocalPair, SubsystemGenerator};

use std::cell::OnceCell;
use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::engine::lattice::all_subgroups;
use crate::engine::local::{is_p_subgroup, is_prime, p_part, quotient_has_trivial_o_p};
use crate::engine::{Elem, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// A conjugation map `P → Q`, `x ↦ x^g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: Subgroup,
    pub target: Subgroup,
    pub witness: Elem,
}

impl Morphism {
    pub fn apply(&self, g: &FiniteGroup, x: Elem) -> Elem {
        g.conj(x, self.witness)
    }

    pub fn image(&self, g: &FiniteGroup) -> Subgroup {
        g.conj_subgroup(&self.source, self.witness)
    }
}

/// The fusion system of `ambient` (a subgroup of the table group) on a
/// Sylow p-subgroup `sylow`.
pub struct FusionSystem<'a> {
    pub group: &'a FiniteGroup,
    pub ambient: Subgroup,
    pub sylow: Subgroup,
    pub p: u32,
    subgroups: OnceCell<Vec<Subgroup>>,
    classes: OnceCell<Classes>,
}

struct Classes {
    /// Indices into the subgroup list, one vector per F-class.
    members: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupClassReport {
    #[serde(skip)]
    pub representative: Subgroup,
    pub label: String,
    pub order: usize,
    pub class_size: usize,
    pub fully_normalized: bool,
    pub fully_centralized: bool,
    pub centric: bool,
    pub radical: bool,
    pub essential: bool,
    pub weakly_closed: bool,
    pub strongly_closed: bool,
}

impl<'a> FusionSystem<'a> {
    pub fn new(g: &'a FiniteGroup, ambient: &Subgroup, sylow: &Subgroup, p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        if !sylow.is_subgroup_of(ambient)
            || !is_p_subgroup(sylow, p)
            || sylow.order() != p_part(ambient.order(), p)
        {
            return Err(Error::Input("S is not a Sylow p-subgroup of G".into()));
        }
        Ok(FusionSystem {
            group: g,
            ambient: ambient.clone(),
            sylow: sylow.clone(),
            p,
            subgroups: OnceCell::new(),
            classes: OnceCell::new(),
        })
    }

    /// Every subgroup of `S`, in canonical order.
    pub fn subgroups(&self) -> Result<&[Subgroup]> {
        if let Some(s) = self.subgroups.get() {
            return Ok(s);
        }
        let subs = all_subgroups(self.group, &self.sylow)?;
        Ok(self.subgroups.get_or_init(|| subs))
    }

    fn classes(&self) -> Result<&Classes> {
        if let Some(c) = self.classes.get() {
            return Ok(c);
        }
        let subs = self.subgroups()?;
        let index: HashMap<&FixedBitSet, usize> = subs
            .iter()
            .enumerate()
            .map(|(i, s)| (s.bits(), i))
            .collect();
        let mut class_of = vec![usize::MAX; subs.len()];
        let mut members = Vec::new();
        for i in 0..subs.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = members.len();
            let mut found: Vec<usize> = Vec::new();
            for bits in self.g_orbit_bits(&subs[i]) {
                if let Some(&j) = index.get(&bits) {
                    class_of[j] = c;
                    found.push(j);
                }
            }
            found.sort_unstable();
            members.push(found);
        }
        Ok(self.classes.get_or_init(|| Classes { members, class_of }))
    }

    /// The `G`-conjugates of `p` as bitsets.
    fn g_orbit_bits(&self, p: &Subgroup) -> Vec<FixedBitSet> {
        let g = self.group;
        let mut seen = std::collections::HashSet::new();
        let mut orbit = vec![p.clone()];
        seen.insert(p.bits().clone());
        let mut k = 0;
        while k < orbit.len() {
            for &x in self.ambient.gens() {
                let c = g.conj_subgroup(&orbit[k], x);
                if seen.insert(c.bits().clone()) {
                    orbit.push(c);
                }
            }
            k += 1;
        }
        orbit.into_iter().map(|s| s.bits().clone()).collect()
    }

    /// The F-conjugates of `p` inside `S`.
    pub fn f_class(&self, p: &Subgroup) -> Vec<Subgroup> {
        let g = self.group;
        let s_bits = self.sylow.bits();
        let mut out: Vec<Subgroup> = self
            .g_orbit_bits(p)
            .into_iter()
            .filter(|b| b.is_subset(s_bits))
            .map(|b| g.subgroup_from_set(b))
            .collect();
        out.sort();
        out
    }

    /// Index of `p` in [`Self::subgroups`].
    pub fn index_of(&self, p: &Subgroup) -> Result<usize> {
        let subs = self.subgroups()?;
        subs.binary_search(p)
            .map_err(|_| Error::Input("not a subgroup of S".into()))
    }

    /// The F-classes, each as a list of subgroups in canonical order.
    pub fn class_list(&self) -> Result<Vec<Vec<Subgroup>>> {
        let subs = self.subgroups()?;
        Ok(self
            .classes()?
            .members
            .iter()
            .map(|c| c.iter().map(|&i| subs[i].clone()).collect())
            .collect())
    }

    pub fn class_members(&self, p: &Subgroup) -> Result<Vec<Subgroup>> {
        let i = self.index_of(p)?;
        let subs = self.subgroups()?;
        let cl = self.classes()?;
        Ok(cl.members[cl.class_of[i]]
            .iter()
            .map(|&j| subs[j].clone())
            .collect())
    }

    pub fn n_s(&self, p: &Subgroup) -> Subgroup {
        self.group.normalizer(&self.sylow, p)
    }

    pub fn c_s(&self, p: &Subgroup) -> Subgroup {
        self.group.centralizer(&self.sylow, p)
    }

    pub fn n_g(&self, p: &Subgroup) -> Subgroup {
        self.group.normalizer(&self.ambient, p)
    }

    pub fn c_g(&self, p: &Subgroup) -> Subgroup {
        self.group.centralizer(&self.ambient, p)
    }

    /// `|N_S(P)|` is maximal in the F-class (equivalently `N_S(P)` is
    /// Sylow in `N_G(P)`).
    pub fn is_fully_normalized(&self, p: &Subgroup) -> bool {
        self.n_s(p).order() == p_part(self.n_g(p).order(), self.p)
    }

    pub fn is_fully_centralized(&self, p: &Subgroup) -> bool {
        self.c_s(p).order() == p_part(self.c_g(p).order(), self.p)
    }

    pub fn is_centric(&self, p: &Subgroup) -> bool {
        self.f_class(p)
            .iter()
            .all(|q| self.c_s(q).is_subgroup_of(q))
    }

    /// `O_p(Out_F(P)) = 1`.
    pub fn is_radical(&self, p: &Subgroup) -> bool {
        let g = self.group;
        let n = self.n_g(p);
        let pc = g.join(p, &self.c_g(p));
        quotient_has_trivial_o_p(g, &n, &pc, self.p)
    }

    pub fn is_weakly_closed(&self, p: &Subgroup) -> bool {
        self.f_class(p).len() == 1
    }

    /// No element of `P` is F-conjugate to an element of `S` outside `P`.
    pub fn is_strongly_closed(&self, p: &Subgroup) -> bool {
        let conj = ConjugatesIn::new(self.group, &self.ambient, &self.sylow, p);
        strongly_closed_in(&conj, p)
    }

    /// `Hom_F(P, Q)`: one morphism per coset of `C_G(P)` in the transporter.
    pub fn hom_set(&self, p: &Subgroup, q: &Subgroup) -> Vec<Morphism> {
        let g = self.group;
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for x in g.transporter_into(&self.ambient, p, q) {
            let images: Vec<Elem> = p.gens().iter().map(|&a| g.conj(a, x)).collect();
            if seen.insert(images) {
                out.push(Morphism {
                    source: p.clone(),
                    target: q.clone(),
                    witness: x,
                });
            }
        }
        out
    }

    /// `Aut_F(P) = N_G(P)/C_G(P)` and `Out_F(P) = N_G(P)/PC_G(P)` orders.
    pub fn aut_out_orders(&self, p: &Subgroup) -> (usize, usize) {
        let n = self.n_g(p).order();
        let c = self.c_g(p);
        let pc = self.group.join(p, &c);
        (n / c.order(), n / pc.order())
    }

    /// A morphism on `N_S(P)` carrying `P` to a fully normalized conjugate:
    /// the identity if `P` is fully normalized, else the canonically least
    /// fully normalized member of the class.
    pub fn fully_normalize(&self, p: &Subgroup) -> Morphism {
        if self.is_fully_normalized(p) {
            return Morphism {
                source: self.n_s(p),
                target: self.sylow.clone(),
                witness: 0,
            };
        }
        let target = self
            .f_class(p)
            .into_iter()
            .find(|q| self.is_fully_normalized(q))
            .expect("fully normalized member");
        self.fully_normalize_to(p, &target)
            .expect("target is fully normalized")
    }

    /// A morphism on `N_S(P)` with `P ↦ T`; exists whenever `T ∈ P^F` is
    /// fully normalized. Found by taking any transporter and correcting it
    /// inside `N_G(T)` so that `N_S(P)` lands in `N_S(T)`.
    pub fn fully_normalize_to(&self, p: &Subgroup, t: &Subgroup) -> Option<Morphism> {
        let g = self.group;
        let x0 = g.transporter(&self.ambient, p, t)?;
        let ns = self.n_s(p);
        self.n_g(t)
            .iter()
            .map(|y| g.mul(x0, y))
            .find(|&x| ns.gens().iter().all(|&a| self.sylow.contains(g.conj(a, x))))
            .map(|x| Morphism {
                source: ns.clone(),
                target: self.sylow.clone(),
                witness: x,
            })
    }

    /// `N_F(P) = F_{N_S(P)}(N_G(P))` for fully normalized `P`.
    pub fn normalizer_subsystem(&self, p: &Subgroup) -> Result<FusionSystem<'a>> {
        if !self.is_fully_normalized(p) {
            return Err(Error::Precondition("P is not fully F-normalized".into()));
        }
        FusionSystem::new(self.group, &self.n_g(p), &self.n_s(p), self.p)
    }

    /// One report per F-class, represented by its first fully normalized member.
    pub fn classify_subgroups(&self) -> Result<Vec<SubgroupClassReport>> {
        let subs = self.subgroups()?;
        let cl = self.classes()?;
        let mut out = Vec::new();
        for members in &cl.members {
            let rep = members
                .iter()
                .map(|&i| &subs[i])
                .find(|s| self.is_fully_normalized(s))
                .expect("fully normalized member");
            let centric = members
                .iter()
                .all(|&i| self.c_s(&subs[i]).is_subgroup_of(&subs[i]));
            let radical = self.is_radical(rep);
            let essential = centric && self.out_has_strongly_p_embedded(rep);
            out.push(SubgroupClassReport {
                representative: rep.clone(),
                label: describe(self.group, rep),
                order: rep.order(),
                class_size: members.len(),
                fully_normalized: true,
                fully_centralized: self.is_fully_centralized(rep),
                centric,
                radical,
                essential,
                weakly_closed: members.len() == 1,
                strongly_closed: members.len() == 1 && self.is_strongly_closed(rep),
            });
        }
        Ok(out)
    }
}

/// Short human-readable description of a subgroup.
pub fn describe(g: &FiniteGroup, h: &Subgroup) -> String {
    let gens: Vec<String> = h.gens().iter().map(|&x| g.label(x)).collect();
    format!("<{}> (order {})", gens.join(", "), h.order())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::engine::local::sylow;
    use crate::engine::{models, Perm};

    pub(crate) fn el(g: &FiniteGroup, deg: usize, s: &str) -> Elem {
        g.index_of(&Perm::parse_cycles(deg, s).unwrap()).unwrap()
    }

    /// `Sym(4)` with `S = ⟨(1 2 3 4), (1 3)⟩`.
    pub(crate) fn sym4_d8() -> (FiniteGroup, Subgroup) {
        let g = models::sym(4);
        let s = g.generate(&[el(&g, 4, "(1 2 3 4)"), el(&g, 4, "(1 3)")]);
        (g, s)
    }

    #[test]
    fn sylow_validation() {
        let (g, s) = sym4_d8();
        assert!(FusionSystem::new(&g, &g.whole(), &s, 2).is_ok());
        let v4 = g.generate(&[el(&g, 4, "(1 2)(3 4)"), el(&g, 4, "(1 3)(2 4)")]);
        assert!(FusionSystem::new(&g, &g.whole(), &v4, 2).is_err());
        let d8 = models::dihedral8();
        assert!(FusionSystem::new(&d8, &d8.whole(), &d8.whole(), 2).is_ok());
    }

    #[test]
    fn hom_sets_in_sym4() {
        let (g, s) = sym4_d8();
        let f = FusionSystem::new(&g, &g.whole(), &s, 2).unwrap();
        let z = g.generate(&[el(&g, 4, "(1 3)(2 4)")]);
        let v4 = g.generate(&[el(&g, 4, "(1 2)(3 4)"), el(&g, 4, "(1 3)(2 4)")]);
        assert_eq!(f.hom_set(&z, &z).len(), 1);
        assert_eq!(f.hom_set(&z, &v4).len(), 3);
        assert!(!f.hom_set(&v4, &s).is_empty());
    }

    #[test]
    fn sym4_classification() {
        let (g, s) = sym4_d8();
        let f = FusionSystem::new(&g, &g.whole(), &s, 2).unwrap();
        let v4 = g.generate(&[el(&g, 4, "(1 2)(3 4)"), el(&g, 4, "(1 3)(2 4)")]);
        let z = g.generate(&[el(&g, 4, "(1 3)(2 4)")]);
        let rows = f.classify_subgroups().unwrap();
        let row = rows.iter().find(|r| r.representative == v4).unwrap();
        assert!(
            row.centric
                && row.radical
                && row.fully_normalized
                && row.weakly_closed
                && row.strongly_closed
        );
        assert!(row.essential);
        assert!(!f.is_weakly_closed(&z));
        assert_eq!(f.f_class(&z).len(), 3);
        let top = rows.iter().find(|r| r.representative == s).unwrap();
        assert!(top.centric && top.fully_normalized);
        assert_eq!(rows.iter().filter(|r| r.essential).count(), 1);
    }

    #[test]
    fn fully_normalizing_morphisms() {
        let (g, s) = sym4_d8();
        let f = FusionSystem::new(&g, &g.whole(), &s, 2).unwrap();
        let other = g.generate(&[el(&g, 4, "(1 3)"), el(&g, 4, "(2 4)")]);
        assert!(f.is_fully_normalized(&other));
        assert_eq!(f.fully_normalize(&other).witness, 0);
        let t = g.generate(&[el(&g, 4, "(1 3)")]);
        let m = f.fully_normalize(&t);
        assert_eq!(m.source.order(), 4);
        assert!(f.is_fully_normalized(&g.conj_subgroup(&t, m.witness)));
        // a non-fully-normalized involution: (1 2)(3 4) has N_S of order 4, (1 3)(2 4) is central
        let u = g.generate(&[el(&g, 4, "(1 2)(3 4)")]);
        let m = f.fully_normalize(&u);
        assert!(m
            .source
            .gens()
            .iter()
            .all(|&a| s.contains(g.conj(a, m.witness))));
        assert_eq!(g.conj_subgroup(&u, m.witness).order(), 2);
        assert!(f.is_fully_normalized(&g.conj_subgroup(&u, m.witness)));
    }

    #[test]
    fn normalizer_subsystems() {
        let (g, s) = sym4_d8();
        let f = FusionSystem::new(&g, &g.whole(), &s, 2).unwrap();
        let v4 = g.generate(&[el(&g, 4, "(1 2)(3 4)"), el(&g, 4, "(1 3)(2 4)")]);
        assert_eq!(f.normalizer_subsystem(&v4).unwrap().ambient, g.whole());
        let z = g.center(&s);
        assert_eq!(f.normalizer_subsystem(&z).unwrap().ambient, s);
        assert_eq!(f.normalizer_subsystem(&s).unwrap().ambient, s);
        let u = g.generate(&[el(&g, 4, "(1 2)(3 4)")]);
        assert!(f.normalizer_subsystem(&u).is_err());
        assert_eq!(sylow(&g, &g.whole(), 2).order(), 8);
    }
}
