//! Subcentric subgroups, focal and hyperfocal subgroups, generated subsystems.

use std::collections::{HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use super::closure::ConjugatesIn;
use super::large::normal_in_realized;
use super::{FusionSystem, Morphism};
use crate::caps::Caps;
use crate::engine::local::o_up_p;
use crate::engine::{Elem, Subgroup};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct FocalPair {
    pub hyp: Subgroup,
    pub foc: Subgroup,
}

/// A realized subsystem `F_T(H)` with `T ≤ S`.
#[derive(Clone, Debug)]
pub struct SubsystemGenerator {
    pub sylow: Subgroup,
    pub group: Subgroup,
}

impl FusionSystem<'_> {
    /// `O_p(F_T(H))` for `T ≤ S` Sylow in `H`: the largest subgroup of `T`
    /// normal in the subsystem, found by a descending scan.
    pub fn largest_normal_p_subgroup(&self, t: &Subgroup, h: &Subgroup) -> Result<Subgroup> {
        let g = self.group;
        let mut candidates: Vec<&Subgroup> = self
            .subgroups()?
            .iter()
            .filter(|x| x.is_subgroup_of(t) && g.is_normal(x, t))
            .collect();
        candidates.sort_by_key(|x| std::cmp::Reverse(x.order()));
        Ok(candidates
            .into_iter()
            .find(|x| normal_in_realized(g, t, h, x))
            .cloned()
            .expect("the trivial subgroup is normal"))
    }

    /// `O_p(F)`.
    pub fn o_p(&self) -> Result<Subgroup> {
        self.largest_normal_p_subgroup(&self.sylow, &self.ambient)
    }

    /// `O_p(F)` is centric.
    pub fn is_constrained(&self) -> Result<bool> {
        Ok(self.is_centric(&self.o_p()?))
    }

    /// `O_p(N_F(P'))` is centric for a fully normalized `P' ∈ P^F`.
    pub fn is_subcentric(&self, p: &Subgroup) -> Result<bool> {
        let g = self.group;
        let m = self.fully_normalize(p);
        let pp = g.conj_subgroup(p, m.witness);
        let op = self.largest_normal_p_subgroup(&self.n_s(&pp), &self.n_g(&pp))?;
        Ok(self.is_centric(&op))
    }

    /// Every subgroup of `S` in `F^s`, in canonical order. The result is
    /// checked to be closed under F-conjugacy and overgroups.
    pub fn subcentric_set(&self) -> Result<Vec<Subgroup>> {
        let mut members = Vec::new();
        for class in self.class_list()? {
            let rep = class
                .iter()
                .find(|r| self.is_fully_normalized(r))
                .expect("fully normalized member");
            if self.is_subcentric(rep)? {
                members.extend(class);
            }
        }
        members.sort();
        let inside: HashSet<&FixedBitSet> = members.iter().map(|m| m.bits()).collect();
        for sub in self.subgroups()? {
            if !inside.contains(sub.bits()) && members.iter().any(|m| m.is_subgroup_of(sub)) {
                return Err(Error::Internal(
                    "subcentric set not closed under overgroups".into(),
                ));
            }
        }
        Ok(members)
    }

    /// Every nontrivial `P ⊴ S` lies in `F^s`.
    pub fn parabolic_characteristic(&self) -> Result<bool> {
        let g = self.group;
        for p in self.subgroups()? {
            if !p.is_trivial() && g.is_normal(p, &self.sylow) && !self.is_subcentric(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `hyp(F) = ⟨[Q, O^p(Aut_F(Q))]⟩` over all `Q ≤ S` and
    /// `foc(F) = ⟨x⁻¹y : x, y ∈ S F-conjugate⟩`.
    pub fn hyperfocal_focal(&self) -> Result<FocalPair> {
        let g = self.group;
        let mut hyp_gens: Vec<Elem> = Vec::new();
        for class in self.class_list()? {
            let rep = &class[0];
            let k = o_up_p(g, &self.n_g(rep), self.p);
            let mut comms = FixedBitSet::with_capacity(g.order());
            for x in rep.iter() {
                for y in k.iter() {
                    comms.insert(g.comm(x, y) as usize);
                }
            }
            let c = g.subgroup_from_elems(&comms.ones().map(|e| e as Elem).collect::<Vec<_>>());
            for member in &class {
                let t = g
                    .transporter(&self.ambient, rep, member)
                    .expect("class members are conjugate");
                hyp_gens.extend(g.conj_subgroup(&c, t).gens());
            }
        }
        let conj = ConjugatesIn::new(g, &self.ambient, &self.sylow, &self.sylow);
        let mut foc_gens = Vec::new();
        for x in self.sylow.iter() {
            foc_gens.extend(conj.of(x).iter().map(|&y| g.mul(g.inv(x), y)));
        }
        Ok(FocalPair {
            hyp: g.generate(&hyp_gens),
            foc: g.generate(&foc_gens),
        })
    }

    /// Does `probe` factor as a composite of restrictions of morphisms of the
    /// given realized subsystems?
    pub fn subsystem_generated_contains(
        &self,
        generators: &[SubsystemGenerator],
        probe: &Morphism,
    ) -> Result<bool> {
        self.generated_contains_with(generators, probe, &Caps::global())
    }

    pub fn generated_contains_with(
        &self,
        generators: &[SubsystemGenerator],
        probe: &Morphism,
        caps: &Caps,
    ) -> Result<bool> {
        let g = self.group;
        let start: Vec<Elem> = probe.source.gens().to_vec();
        let target: Vec<Elem> = start.iter().map(|&a| g.conj(a, probe.witness)).collect();
        let mut seen: HashSet<Vec<Elem>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(state) = queue.pop_front() {
            if state == target {
                return Ok(true);
            }
            for gen in generators {
                if !state.iter().all(|&a| gen.sylow.contains(a)) {
                    continue;
                }
                for h in gen.group.iter() {
                    let next: Vec<Elem> = state.iter().map(|&a| g.conj(a, h)).collect();
                    if next.iter().all(|&a| gen.sylow.contains(a)) && seen.insert(next.clone()) {
                        Caps::check(caps.closure, seen.len(), "closure")?;
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::lattice::all_subgroups;
    use crate::engine::local::sylow;
    use crate::engine::models;
    use crate::fusion::tests::{el, sym4_d8};

    #[test]
    fn subcentric_in_sym4() {
        let (g, s) = sym4_d8();
        let f = FusionSystem::new(&g, &g.whole(), &s, 2).unwrap();
        let all_of_s = all_subgroups(&g, &s).unwrap();
        assert_eq!(f.subcentric_set().unwrap(), all_of_s);
        assert!(f.is_constrained().unwrap());
        assert_eq!(f.o_p().unwrap().order(), 4);
        assert!(f.parabolic_characteristic().unwrap());
    }

    #[test]
    fn central_p_prime_factor_is_invisible_to_fusion() {
        let g = models::sym4_times_c3();
        let all = g.whole();
        let s = sylow(&g, &all, 2);
        let f = FusionSystem::new(&g, &all, &s, 2).unwrap();
        // The fusion system is that of Sym4, so constraint survives.
        assert!(f.parabolic_characteristic().unwrap());
        let d8 = models::dihedral8();
        let fp = FusionSystem::new(&d8, &d8.whole(), &d8.whole(), 2).unwrap();
        assert!(fp.parabolic_characteristic().unwrap());
        assert_eq!(
            fp.subcentric_set().unwrap().len(),
            all_subgroups(&d8, &d8.whole()).unwrap().len()
        );
    }

    #[test]
    fn focal_subgroups_match_group_theoretic_oracles() {
        for g in [
            models::sym(4),
            models::alt(4),
            models::sl32_on_7(),
            models::sym4_times_c3(),
            models::dihedral8(),
        ] {
            let all = g.whole();
            let s = sylow(&g, &all, 2);
            let f = FusionSystem::new(&g, &all, &s, 2).unwrap();
            let pair = f.hyperfocal_focal().unwrap();
            assert_eq!(pair.hyp, g.intersect(&s, &o_up_p(&g, &all, 2)));
            assert_eq!(pair.foc, g.intersect(&s, &g.derived(&all)));
            assert!(pair.hyp.is_subgroup_of(&pair.foc));
        }
    }

    #[test]
    fn generated_subsystems() {
        let (g, s) = sym4_d8();
        let all = g.whole();
        let f = FusionSystem::new(&g, &all, &s, 2).unwrap();
        let v4 = g.generate(&[el(&g, 4, "(1 2)(3 4)"), el(&g, 4, "(1 3)(2 4)")]);
        let n_v4 = SubsystemGenerator {
            sylow: s.clone(),
            group: f.n_g(&v4),
        };
        let n_s = SubsystemGenerator {
            sylow: s.clone(),
            group: f.n_g(&s),
        };
        let z = g.center(&s);
        let fuse = Morphism {
            source: z.clone(),
            target: v4.clone(),
            witness: el(&g, 4, "(2 3)"),
        };
        assert!(f
            .subsystem_generated_contains(std::slice::from_ref(&n_v4), &fuse)
            .unwrap());
        assert!(!f
            .subsystem_generated_contains(std::slice::from_ref(&n_s), &fuse)
            .unwrap());
        let id = Morphism {
            source: s.clone(),
            target: s.clone(),
            witness: 0,
        };
        assert!(f.subsystem_generated_contains(&[], &id).unwrap());
        let tight = Caps {
            closure: 1,
            ..Caps::default()
        };
        assert!(f.generated_contains_with(&[n_v4], &fuse, &tight).is_err());
    }
}
