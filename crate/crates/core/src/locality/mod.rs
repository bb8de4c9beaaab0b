//! Localities `L_Δ(G)` built from a finite group.
//!
//! For `f ∈ L` let `S_f = {x ∈ S : x^f ∈ S}`. A word `w = (f₁, …, fₙ)` lies in
//! the domain `D` iff some `P₀ ∈ Δ` is carried into `S` by every prefix
//! product. The set `X_w` of elements carried into `S` by every prefix is a
//! subgroup containing each such `P₀`, and `Δ` is closed under overgroups, so
//! `w ∈ D` iff `X_w ∈ Δ`. The chain is then `X_w, X_w^{f₁}, …`.

mod alperin;
mod verify;

pub use alperin::AlperinFactorization;
pub use verify::{LocalityLargeness, VerifyOptions};

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::engine::local::{is_characteristic_p, o_p_prime, o_up_p};
use crate::engine::{Elem, FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::fusion::{describe, FusionSystem};

/// A family `Δ` of subgroups of `S`.
#[derive(Clone, Debug)]
pub struct ObjectSet {
    members: Vec<Subgroup>,
    index: HashSet<FixedBitSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `F^c`.
    Centric,
    /// `{P : N_G(P)` of characteristic p`}`.
    CharP,
    /// `{P : N_G(P)/O_{p'}(N_G(P))` of characteristic p`}`.
    DeltaStar,
    /// `F^s`.
    Subcentric,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::Centric,
        Preset::CharP,
        Preset::DeltaStar,
        Preset::Subcentric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Centric => "centric",
            Preset::CharP => "char-p",
            Preset::DeltaStar => "delta-star",
            Preset::Subcentric => "subcentric",
        }
    }
}

impl ObjectSet {
    /// Wraps an explicit family without checking closure.
    pub fn from_members(mut members: Vec<Subgroup>) -> ObjectSet {
        members.sort();
        members.dedup();
        let index = members.iter().map(|m| m.bits().clone()).collect();
        ObjectSet { members, index }
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Subgroup) -> bool {
        self.index.contains(p.bits())
    }

    pub fn contains_bits(&self, bits: &FixedBitSet) -> bool {
        self.index.contains(bits)
    }

    /// A member whose F-class or overgroup set leaves the family.
    pub fn closure_defect(&self, f: &FusionSystem) -> Result<Option<String>> {
        let g = f.group;
        if !self.members.contains(&f.sylow) {
            return Ok(Some("S is not an object".into()));
        }
        for p in &self.members {
            if let Some(q) = f.f_class(p).into_iter().find(|q| !self.contains(q)) {
                return Ok(Some(format!(
                    "{} is conjugate to non-object {}",
                    describe(g, p),
                    describe(g, &q)
                )));
            }
        }
        for sub in f.subgroups()? {
            if !self.contains(sub) {
                if let Some(p) = self.members.iter().find(|p| p.is_subgroup_of(sub)) {
                    return Ok(Some(format!(
                        "overgroup {} of {} is missing",
                        describe(g, sub),
                        describe(g, p)
                    )));
                }
            }
        }
        Ok(None)
    }

    pub fn preset(f: &FusionSystem, preset: Preset) -> Result<ObjectSet> {
        let g = f.group;
        let members: Vec<Subgroup> = match preset {
            Preset::Subcentric => f.subcentric_set()?,
            Preset::Centric => {
                let mut out = Vec::new();
                for class in f.class_list()? {
                    if f.is_centric(&class[0]) {
                        out.extend(class);
                    }
                }
                out
            }
            Preset::CharP => f
                .subgroups()?
                .iter()
                .filter(|p| is_characteristic_p(g, &f.n_g(p), f.p))
                .cloned()
                .collect(),
            Preset::DeltaStar => f
                .subgroups()?
                .iter()
                .filter(|p| {
                    let n = f.n_g(p);
                    let quot = g.quotient(&n, &o_p_prime(g, &n, f.p));
                    is_characteristic_p(&quot.group, &quot.group.whole(), f.p)
                })
                .cloned()
                .collect(),
        };
        let set = ObjectSet::from_members(members);
        if let Some(defect) = set.closure_defect(f)? {
            return Err(Error::Input(format!(
                "preset {} is not closed: {defect}",
                preset.name()
            )));
        }
        Ok(set)
    }

    /// The smallest family closed under F-conjugacy and overgroups in `S`
    /// containing the seeds.
    pub fn from_seeds(f: &FusionSystem, seeds: &[Subgroup]) -> Result<ObjectSet> {
        if seeds.iter().any(|s| !s.is_subgroup_of(&f.sylow)) {
            return Err(Error::Input("seed is not a subgroup of S".into()));
        }
        let mut conjugates: Vec<Subgroup> = seeds.iter().flat_map(|s| f.f_class(s)).collect();
        conjugates.push(f.sylow.clone());
        let members: Vec<Subgroup> = f
            .subgroups()?
            .iter()
            .filter(|sub| conjugates.iter().any(|c| c.is_subgroup_of(sub)))
            .cloned()
            .collect();
        let set = ObjectSet::from_members(members);
        debug_assert!(set.closure_defect(f)?.is_none());
        Ok(set)
    }
}

/// `(L_Δ(G), Δ, S)` with its fusion system `F_S(G)`.
pub struct Locality<'a> {
    pub fusion: FusionSystem<'a>,
    pub objects: ObjectSet,
    elements: Vec<Elem>,
    member: FixedBitSet,
    s_of: HashMap<Elem, FixedBitSet>,
}

/// `X_w` and the chain `X_w, X_w^{f₁}, …` for a word in the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    pub x_w: Subgroup,
    pub chain: Vec<Subgroup>,
}

impl<'a> Locality<'a> {
    /// `L = {g ∈ G : P^g ≤ S for some P ∈ Δ}`, i.e. `S_g ∈ Δ`.
    pub fn build(fusion: FusionSystem<'a>, objects: ObjectSet) -> Result<Locality<'a>> {
        if !objects.contains(&fusion.sylow) {
            return Err(Error::Input("S must be an object".into()));
        }
        let g = fusion.group;
        let mut elements = Vec::new();
        let mut member = FixedBitSet::with_capacity(g.order());
        let mut s_of = HashMap::new();
        for x in fusion.ambient.iter() {
            let mut bits = FixedBitSet::with_capacity(g.order());
            for y in fusion.sylow.iter() {
                if fusion.sylow.contains(g.conj(y, x)) {
                    bits.insert(y as usize);
                }
            }
            if objects.contains_bits(&bits) {
                elements.push(x);
                member.insert(x as usize);
                s_of.insert(x, bits);
            }
        }
        Ok(Locality {
            fusion,
            objects,
            elements,
            member,
            s_of,
        })
    }

    pub fn group(&self) -> &'a FiniteGroup {
        self.fusion.group
    }

    pub fn sylow(&self) -> &Subgroup {
        &self.fusion.sylow
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.member.contains(x as usize)
    }

    /// `S_f` for `f ∈ L`.
    pub fn s_f(&self, f: Elem) -> Result<Subgroup> {
        let bits = self
            .s_of
            .get(&f)
            .ok_or_else(|| Error::Input(format!("{} is not in L", self.group().label(f))))?;
        Ok(self.group().subgroup_from_set(bits.clone()))
    }

    fn check_word(&self, w: &[Elem]) -> Result<()> {
        match w.iter().find(|&&f| !self.contains(f)) {
            Some(&f) => Err(Error::Input(format!(
                "{} is not in L",
                self.group().label(f)
            ))),
            None => Ok(()),
        }
    }

    /// `X_w` as a bitset.
    pub fn x_w_bits(&self, w: &[Elem]) -> FixedBitSet {
        let g = self.group();
        let s = self.sylow();
        let mut bits = FixedBitSet::with_capacity(g.order());
        'outer: for x in s.iter() {
            let mut y = x;
            for &f in w {
                y = g.conj(y, f);
                if !s.contains(y) {
                    continue 'outer;
                }
            }
            bits.insert(x as usize);
        }
        bits
    }

    /// `w ∈ D`.
    pub fn in_domain(&self, w: &[Elem]) -> bool {
        self.objects.contains_bits(&self.x_w_bits(w))
    }

    /// `X_w` and its chain when `w ∈ D`.
    pub fn domain_check(&self, w: &[Elem]) -> Result<Option<Domain>> {
        self.check_word(w)?;
        let bits = self.x_w_bits(w);
        if !self.objects.contains_bits(&bits) {
            return Ok(None);
        }
        let g = self.group();
        let x_w = g.subgroup_from_set(bits);
        let mut chain = vec![x_w.clone()];
        for &f in w {
            let next = g.conj_subgroup(chain.last().unwrap(), f);
            chain.push(next);
        }
        Ok(Some(Domain { x_w, chain }))
    }

    /// `Π(w)`, defined on `D`.
    pub fn product(&self, w: &[Elem]) -> Result<Elem> {
        self.check_word(w)?;
        if !self.in_domain(w) {
            return Err(Error::UndefinedProduct);
        }
        Ok(self.group().product(w))
    }

    /// `x^f = Π(f⁻¹, x, f)` when defined.
    pub fn conj(&self, x: Elem, f: Elem) -> Option<Elem> {
        let g = self.group();
        self.in_domain(&[g.inv(f), x, f]).then(|| g.conj(x, f))
    }

    /// `N_L(X) = {f ∈ L : X ⊆ S_f, X^f = X}`.
    pub fn normalizer(&self, x: &Subgroup) -> Vec<Elem> {
        let g = self.group();
        self.elements
            .iter()
            .copied()
            .filter(|&f| *x.bits() == g.conj_bits(x, f))
            .collect()
    }

    /// `C_L(X)`.
    pub fn centralizer(&self, x: &Subgroup) -> Vec<Elem> {
        let g = self.group();
        self.elements
            .iter()
            .copied()
            .filter(|&f| x.gens().iter().all(|&a| g.conj(a, f) == a))
            .collect()
    }

    /// `H ≤ G` is a subgroup of `L` iff `H ⊆ L` and
    /// `P_H = {x ∈ S : x^h ∈ S for all h ∈ H} ∈ Δ`: every word in `H` is then
    /// in `D` via `P_H`, and conversely `P_H` contains `X_w` for a word listing `H`.
    pub fn is_subgroup_of_l(&self, h: &Subgroup) -> bool {
        if !h.iter().all(|x| self.contains(x)) {
            return false;
        }
        let g = self.group();
        let s = self.sylow();
        let mut bits = FixedBitSet::with_capacity(g.order());
        for x in s.iter() {
            if h.iter().all(|y| s.contains(g.conj(x, y))) {
                bits.insert(x as usize);
            }
        }
        self.objects.contains_bits(&bits)
    }

    /// The largest `P ≤ S` with `P ≤ S_f` and `P^f = P` for all `f ∈ L`.
    pub fn o_p(&self) -> Result<Subgroup> {
        let g = self.group();
        let mut candidates: Vec<&Subgroup> = self
            .fusion
            .subgroups()?
            .iter()
            .filter(|p| g.is_normal(p, self.sylow()))
            .collect();
        candidates.sort_by_key(|p| std::cmp::Reverse(p.order()));
        Ok(candidates
            .into_iter()
            .find(|p| {
                self.elements
                    .iter()
                    .all(|&f| *p.bits() == g.conj_bits(p, f))
            })
            .cloned()
            .expect("the trivial subgroup is normal"))
    }

    /// `O^p(L)`: the closure of `⋃ O^p(N_L(P))` over objects under
    /// conjugation in `L` and under products of domain pairs. `K·S = L` is
    /// checked before returning.
    pub fn o_up_p(&self) -> Result<Vec<Elem>> {
        let g = self.group();
        let f = &self.fusion;
        let mut k = FixedBitSet::with_capacity(g.order());
        let mut queue: Vec<Elem> = Vec::new();
        let add = |x: Elem, k: &mut FixedBitSet, queue: &mut Vec<Elem>| {
            if !k.put(x as usize) {
                queue.push(x);
            }
        };
        for class in f.class_list()? {
            if let Some(p) = class
                .iter()
                .find(|p| self.objects.contains(p) && f.is_fully_normalized(p))
            {
                for x in o_up_p(g, &f.n_g(p), f.p).iter() {
                    add(x, &mut k, &mut queue);
                }
            }
        }
        while let Some(x) = queue.pop() {
            for &c in &self.elements {
                if let Some(y) = self.conj(x, c) {
                    add(y, &mut k, &mut queue);
                }
            }
            let current: Vec<Elem> = k.ones().map(|e| e as Elem).collect();
            for y in current {
                for (a, b) in [(x, y), (y, x)] {
                    if self.in_domain(&[a, b]) {
                        add(g.mul(a, b), &mut k, &mut queue);
                    }
                }
            }
        }
        let s = self.sylow();
        for &x in &self.elements {
            let covered = s.iter().any(|t| {
                let a = g.mul(x, g.inv(t));
                k.contains(a as usize) && self.in_domain(&[a, t])
            });
            if !covered {
                return Err(Error::Internal(format!("{} is not in O^p(L)S", g.label(x))));
            }
        }
        Ok(k.ones().map(|e| e as Elem).collect())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::fusion::tests::{el, sym4_d8};

    pub(crate) fn sym4_centric() -> (FiniteGroup, Subgroup) {
        sym4_d8()
    }

    fn v4(g: &FiniteGroup) -> Subgroup {
        g.generate(&[el(g, 4, "(1 2)(3 4)"), el(g, 4, "(1 3)(2 4)")])
    }

    #[test]
    fn presets_on_sym4() {
        let (g, s) = sym4_centric();
        let f = FusionSystem::new(&g, &g.whole(), &s, 2).unwrap();
        let all_of_s = f.subgroups().unwrap().to_vec();
        // Every normalizer in Sym4 of a 2-subgroup of D8 has characteristic 2,
        // the trivial subgroup included.
        assert_eq!(
            ObjectSet::preset(&f, Preset::CharP).unwrap().members(),
            &all_of_s[..]
        );
        let centric = ObjectSet::preset(&f, Preset::Centric).unwrap();
        assert_eq!(
            centric
                .members()
                .iter()
                .map(Subgroup::order)
                .collect::<Vec<_>>(),
            vec![4, 4, 4, 8]
        );
        let seeded = ObjectSet::from_seeds(&f, &[v4(&g)]).unwrap();
        assert_eq!(seeded.members(), &[v4(&g), s.clone()]);
        assert_eq!(ObjectSet::from_seeds(&f, std::slice::from_ref(&s)).unwrap().len(), 1);
        assert_eq!(
            ObjectSet::preset(&f, Preset::Subcentric).unwrap().len(),
            all_of_s.len()
        );
    }

    #[test]
    fn element_sets() {
        let (g, s) = sym4_centric();
        let f = FusionSystem::new(&g, &g.whole(), &s, 2).unwrap();
        let objects = ObjectSet::preset(&f, Preset::Centric).unwrap();
        assert_eq!(Locality::build(f, objects).unwrap().len(), 24);
        let c4 = g.generate(&[el(&g, 4, "(1 2 3 4)")]);
        let f = FusionSystem::new(&g, &g.whole(), &s, 2).unwrap();
        let l = Locality::build(f, ObjectSet::from_members(vec![c4, s.clone()])).unwrap();
        assert_eq!(l.elements(), &s.elems()[..]);
        let d8 = crate::engine::models::dihedral8();
        let fp = FusionSystem::new(&d8, &d8.whole(), &d8.whole(), 2).unwrap();
        assert_eq!(
            Locality::build(fp, ObjectSet::from_members(vec![d8.whole()]))
                .unwrap()
                .len(),
            8
        );
    }

    #[test]
    fn domain_and_products() {
        let (g, s) = sym4_centric();
        let f = FusionSystem::new(&g, &g.whole(), &s, 2).unwrap();
        let objects = ObjectSet::preset(&f, Preset::Centric).unwrap();
        let l = Locality::build(f, objects).unwrap();
        let c = el(&g, 4, "(1 2 3)");
        let d = l.domain_check(&[c, c]).unwrap().unwrap();
        assert_eq!(d.x_w, v4(&g));
        assert_eq!(d.chain, vec![v4(&g); 3]);
        assert_eq!(l.product(&[c, c]).unwrap(), el(&g, 4, "(1 3 2)"));
        assert_eq!(l.product(&[]).unwrap(), 0);
        for &x in l.elements() {
            assert_eq!(l.product(&[x, g.inv(x)]).unwrap(), 0);
        }
        let top = l.domain_check(&[el(&g, 4, "(1 3)")]).unwrap().unwrap();
        assert_eq!(top.x_w, s);

        let c4 = g.generate(&[el(&g, 4, "(1 2 3 4)")]);
        let f = FusionSystem::new(&g, &g.whole(), &s, 2).unwrap();
        let small = Locality::build(f, ObjectSet::from_members(vec![c4, s.clone()])).unwrap();
        assert!(small.domain_check(&[c]).is_err());
        let (t, r) = (el(&g, 4, "(1 3)"), el(&g, 4, "(1 2 3 4)"));
        assert_eq!(small.domain_check(&[t, r]).unwrap().unwrap().x_w, s);
    }

    #[test]
    fn undefined_products_are_distinguished() {
        let (g, s) = sym4_centric();
        let c4 = g.generate(&[el(&g, 4, "(1 2 3 4)")]);
        let f = FusionSystem::new(&g, &g.whole(), &s, 2).unwrap();
        let l = Locality::build(f, ObjectSet::from_members(vec![c4, s.clone()])).unwrap();
        assert!(matches!(
            l.product(&[el(&g, 4, "(1 2 3)")]),
            Err(Error::Input(_))
        ));

        let h = crate::engine::models::sl32_on_7();
        let all = h.whole();
        let t = crate::engine::local::sylow(&h, &all, 2);
        let f = FusionSystem::new(&h, &all, &t, 2).unwrap();
        let objects = ObjectSet::preset(&f, Preset::Centric).unwrap();
        let l = Locality::build(f, objects).unwrap();
        let pair = l
            .elements()
            .iter()
            .flat_map(|&a| l.elements().iter().map(move |&b| [a, b]))
            .find(|w| !l.in_domain(w))
            .unwrap();
        assert!(l.domain_check(&pair).unwrap().is_none());
        assert_eq!(l.product(&pair), Err(Error::UndefinedProduct));
    }

    #[test]
    fn normalizers_and_residuals() {
        let (g, s) = sym4_centric();
        let f = FusionSystem::new(&g, &g.whole(), &s, 2).unwrap();
        let objects = ObjectSet::preset(&f, Preset::Centric).unwrap();
        let l = Locality::build(f, objects).unwrap();
        assert_eq!(l.normalizer(&s), s.elems());
        assert!(l.is_subgroup_of_l(&g.whole()));
        assert!(l.is_subgroup_of_l(&g.trivial()));
        assert_eq!(l.o_p().unwrap(), v4(&g));
        let k = l.o_up_p().unwrap();
        assert_eq!(k, o_up_p(&g, &g.whole(), 2).elems());
        assert_eq!(k.len(), 12);

        let f = FusionSystem::new(&g, &g.whole(), &s, 2).unwrap();
        let l = Locality::build(f, ObjectSet::from_members(vec![s.clone()])).unwrap();
        assert_eq!(l.elements(), &s.elems()[..]);
        assert_eq!(l.o_p().unwrap(), s);
        assert_eq!(l.o_up_p().unwrap(), vec![0]);
    }
}
