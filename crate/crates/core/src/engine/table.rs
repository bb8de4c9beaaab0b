//! Enumerated finite groups with a multiplication table, and subgroups as
//! bitsets over the element indices.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use super::chain::PermGroup;
use super::perm::Perm;
use crate::caps::Caps;
use crate::error::{Error, Result};

pub type Elem = u32;

/// A finite group with elements `0..n`; element 0 is the identity.
pub struct FiniteGroup {
    n: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    ord: Vec<u32>,
    gens: Vec<Elem>,
    perms: Option<Vec<Perm>>,
    index: HashMap<Perm, Elem>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.n)
    }
}

impl FiniteGroup {
    /// Enumerates a permutation group; elements are sorted by image list.
    pub fn from_perm_group(g: &PermGroup) -> Result<FiniteGroup> {
        let cap = Caps::global().table;
        let mut elems = g.elements(cap)?;
        elems.sort();
        let index: HashMap<Perm, Elem> = elems
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as Elem))
            .collect();
        let gens: Vec<Elem> = g
            .generators()
            .iter()
            .map(|p| index[p])
            .filter(|&e| e != 0)
            .collect();
        let n = elems.len();
        // Right multiplication by each generator, then extend along a BFS tree.
        let right: Vec<Vec<Elem>> = elems
            .iter()
            .map(|x| {
                gens.iter()
                    .map(|&k| index[&x.then(&elems[k as usize])])
                    .collect()
            })
            .collect();
        let mul = table_from_right_mult(n, &right);
        Self::finish(n, mul, gens, Some(elems), index)
    }

    /// Builds a group from a complete table (`mul[a*n+b] = ab`, identity 0).
    pub fn from_table(n: usize, mul: Vec<Elem>, gens: Vec<Elem>) -> Result<FiniteGroup> {
        if mul.len() != n * n || n == 0 {
            return Err(Error::Input("table has the wrong size".into()));
        }
        for a in 0..n {
            if mul[a] as usize != a || mul[a * n] as usize != a {
                return Err(Error::Input("element 0 is not the identity".into()));
            }
        }
        Self::finish(n, mul, gens, None, HashMap::new())
    }

    fn finish(
        n: usize,
        mul: Vec<Elem>,
        gens: Vec<Elem>,
        perms: Option<Vec<Perm>>,
        index: HashMap<Perm, Elem>,
    ) -> Result<FiniteGroup> {
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as Elem;
                    break;
                }
            }
            if inv[a] == u32::MAX {
                return Err(Error::Input("table element without inverse".into()));
            }
        }
        let mut ord = vec![1u32; n];
        for a in 1..n {
            let mut x = a as Elem;
            let mut k = 1u32;
            while x != 0 {
                x = mul[x as usize * n + a];
                k += 1;
            }
            ord[a] = k;
        }
        Ok(FiniteGroup {
            n,
            mul,
            inv,
            ord,
            gens,
            perms,
            index,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    #[inline]
    pub fn elem_order(&self, a: Elem) -> u32 {
        self.ord[a as usize]
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn comm(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        let o = self.ord[a as usize] as i64;
        let e = e.rem_euclid(o);
        let mut x = 0;
        for _ in 0..e {
            x = self.mul(x, a);
        }
        x
    }

    pub fn product(&self, word: &[Elem]) -> Elem {
        word.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn perm(&self, a: Elem) -> Option<&Perm> {
        self.perms.as_ref().map(|p| &p[a as usize])
    }

    pub fn index_of(&self, p: &Perm) -> Option<Elem> {
        self.index.get(p).copied()
    }

    /// Human-readable element label: cycle notation when available.
    pub fn label(&self, a: Elem) -> String {
        match self.perm(a) {
            Some(p) => p.to_string(),
            None => format!("#{a}"),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.n as Elem
    }

    // ----- subgroups -----

    pub fn whole(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.n);
        bits.insert_range(..);
        Subgroup {
            bits,
            order: self.n,
            gens: self.gens.clone(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.n);
        bits.insert(0);
        Subgroup {
            bits,
            order: 1,
            gens: Vec::new(),
        }
    }

    /// The subgroup generated by `gens`.
    pub fn generate(&self, gens: &[Elem]) -> Subgroup {
        let gens: Vec<Elem> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut bits = FixedBitSet::with_capacity(self.n);
        bits.insert(0);
        let mut list = vec![0 as Elem];
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            k += 1;
            for &g in &gens {
                let y = self.mul(x, g);
                if !bits.put(y as usize) {
                    list.push(y);
                }
            }
        }
        let order = list.len();
        Subgroup {
            bits,
            order,
            gens: minimal_prefix_gens(self, &gens),
        }
    }

    /// Wraps a set already known to be a subgroup.
    pub fn subgroup_from_set(&self, bits: FixedBitSet) -> Subgroup {
        let order = bits.count_ones(..);
        let gens = greedy_gens(self, &bits);
        Subgroup { bits, order, gens }
    }

    pub fn subgroup_from_elems(&self, elems: &[Elem]) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.n);
        for &e in elems {
            bits.insert(e as usize);
        }
        self.subgroup_from_set(bits)
    }

    pub fn is_subgroup_set(&self, bits: &FixedBitSet) -> bool {
        if !bits.contains(0) {
            return false;
        }
        let els: Vec<usize> = bits.ones().collect();
        els.iter().all(|&a| {
            els.iter()
                .all(|&b| bits.contains(self.mul(a as Elem, b as Elem) as usize))
        })
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        if a.is_subgroup_of(b) {
            return b.clone();
        }
        if b.is_subgroup_of(a) {
            return a.clone();
        }
        let mut gens = a.gens.clone();
        gens.extend_from_slice(&b.gens);
        self.generate(&gens)
    }

    pub fn intersect(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut bits = a.bits.clone();
        bits.intersect_with(&b.bits);
        self.subgroup_from_set(bits)
    }

    pub fn conj_subgroup(&self, h: &Subgroup, g: Elem) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.n);
        for x in h.iter() {
            bits.insert(self.conj(x, g) as usize);
        }
        let gens = h.gens.iter().map(|&x| self.conj(x, g)).collect();
        Subgroup {
            bits,
            order: h.order,
            gens,
        }
    }

    /// The bitset of `h^g` without building generators.
    pub fn conj_bits(&self, h: &Subgroup, g: Elem) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.n);
        for x in h.iter() {
            bits.insert(self.conj(x, g) as usize);
        }
        bits
    }

    pub fn normalizes(&self, g: Elem, h: &Subgroup) -> bool {
        h.gens.iter().all(|&x| h.contains(self.conj(x, g)))
    }

    pub fn normalizer(&self, within: &Subgroup, h: &Subgroup) -> Subgroup {
        let els: Vec<Elem> = within.iter().filter(|&g| self.normalizes(g, h)).collect();
        self.subgroup_from_elems(&els)
    }

    /// Centralizer in `within` of the set `x` (given by generators or elements).
    pub fn centralizer(&self, within: &Subgroup, x: &Subgroup) -> Subgroup {
        let els: Vec<Elem> = within
            .iter()
            .filter(|&g| x.gens.iter().all(|&a| self.mul(a, g) == self.mul(g, a)))
            .collect();
        self.subgroup_from_elems(&els)
    }

    pub fn centralizer_of_elems(&self, within: &Subgroup, xs: &[Elem]) -> Subgroup {
        let els: Vec<Elem> = within
            .iter()
            .filter(|&g| xs.iter().all(|&a| self.mul(a, g) == self.mul(g, a)))
            .collect();
        self.subgroup_from_elems(&els)
    }

    pub fn center(&self, h: &Subgroup) -> Subgroup {
        self.centralizer(h, h)
    }

    pub fn is_normal(&self, h: &Subgroup, k: &Subgroup) -> bool {
        h.is_subgroup_of(k) && k.gens.iter().all(|&g| self.normalizes(g, h))
    }

    /// `[A, B]`, generated by all commutators.
    pub fn commutator(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = Vec::new();
        let mut bits = FixedBitSet::with_capacity(self.n);
        for x in a.iter() {
            for y in b.iter() {
                let c = self.comm(x, y);
                if !bits.put(c as usize) {
                    gens.push(c);
                }
            }
        }
        self.generate(&gens)
    }

    pub fn derived(&self, h: &Subgroup) -> Subgroup {
        self.commutator(h, h)
    }

    pub fn is_abelian(&self, h: &Subgroup) -> bool {
        h.gens
            .iter()
            .all(|&a| h.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_elementary_abelian(&self, h: &Subgroup, p: u32) -> bool {
        self.is_abelian(h) && h.iter().all(|x| x == 0 || self.elem_order(x) == p)
    }

    /// Normal closure of `h` in `k`.
    pub fn normal_closure(&self, k: &Subgroup, h: &Subgroup) -> Subgroup {
        let mut cur = h.clone();
        loop {
            let mut gens = cur.gens.clone();
            for &g in &k.gens {
                for &x in &cur.gens {
                    let y = self.conj(x, g);
                    if !cur.contains(y) {
                        gens.push(y);
                    }
                }
            }
            if gens.len() == cur.gens.len() {
                return cur;
            }
            cur = self.generate(&gens);
        }
    }

    /// Union of cosets: `{ab : a ∈ A, b ∈ B}` as a bitset.
    pub fn product_set(&self, a: &Subgroup, b: &Subgroup) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.n);
        for x in a.iter() {
            for y in b.iter() {
                bits.insert(self.mul(x, y) as usize);
            }
        }
        bits
    }

    /// First `g ∈ within` (in index order) with `P^g = Q`.
    pub fn transporter(&self, within: &Subgroup, p: &Subgroup, q: &Subgroup) -> Option<Elem> {
        if p.order != q.order {
            return None;
        }
        within
            .iter()
            .find(|&g| p.gens.iter().all(|&x| q.contains(self.conj(x, g))))
    }

    /// All `g ∈ within` with `P^g ≤ Q`.
    pub fn transporter_into(&self, within: &Subgroup, p: &Subgroup, q: &Subgroup) -> Vec<Elem> {
        within
            .iter()
            .filter(|&g| p.gens.iter().all(|&x| q.contains(self.conj(x, g))))
            .collect()
    }

    /// Conjugacy classes of `h` under `within`, ordered by smallest member.
    pub fn conjugacy_classes(&self, within: &Subgroup, h: &Subgroup) -> Vec<Vec<Elem>> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut out = Vec::new();
        for x in h.iter() {
            if seen.contains(x as usize) {
                continue;
            }
            let mut cls = vec![x];
            seen.insert(x as usize);
            let mut k = 0;
            while k < cls.len() {
                let y = cls[k];
                k += 1;
                for &g in &within.gens {
                    let z = self.conj(y, g);
                    if !seen.put(z as usize) {
                        cls.push(z);
                    }
                }
            }
            cls.sort_unstable();
            out.push(cls);
        }
        out
    }

    /// The subgroup as a standalone group, with the embedding of its elements.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<Elem>) {
        let embed: Vec<Elem> = h.iter().collect();
        let local: HashMap<Elem, Elem> = embed
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i as Elem))
            .collect();
        let m = embed.len();
        let mut mul = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                mul[i * m + j] = local[&self.mul(embed[i], embed[j])];
            }
        }
        let gens = h.gens.iter().map(|g| local[g]).collect();
        let mut grp = FiniteGroup::from_table(m, mul, gens).expect("subgroup table is a group");
        if let Some(perms) = &self.perms {
            let ps: Vec<Perm> = embed.iter().map(|&e| perms[e as usize].clone()).collect();
            grp.index = ps
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), i as Elem))
                .collect();
            grp.perms = Some(ps);
        }
        (grp, embed)
    }

    /// `within / normal`; cosets are ordered by their smallest element.
    pub fn quotient(&self, within: &Subgroup, normal: &Subgroup) -> Quotient {
        let mut coset_of = vec![u32::MAX; self.n];
        let mut reps: Vec<Elem> = Vec::new();
        for x in within.iter() {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for k in normal.iter() {
                coset_of[self.mul(k, x) as usize] = c;
            }
        }
        let m = reps.len();
        let mut mul = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                mul[i * m + j] = coset_of[self.mul(reps[i], reps[j]) as usize];
            }
        }
        let mut gens: Vec<Elem> = within
            .gens
            .iter()
            .map(|&g| coset_of[g as usize])
            .filter(|&c| c != 0)
            .collect();
        gens.dedup();
        let group = FiniteGroup::from_table(m, mul, gens).expect("quotient table is a group");
        Quotient {
            group,
            coset_of,
            reps,
        }
    }
}

/// Fills a full table from right multiplication by generators.
fn table_from_right_mult(n: usize, right: &[Vec<Elem>]) -> Vec<Elem> {
    // BFS tree from the identity: elem j = parent(j) * gen(k_j).
    let mut parent = vec![(u32::MAX, 0usize); n];
    let mut order = vec![0 as Elem];
    parent[0] = (0, 0);
    let mut k = 0;
    while k < order.len() {
        let x = order[k];
        k += 1;
        for (gi, &y) in right[x as usize].iter().enumerate() {
            if parent[y as usize].0 == u32::MAX {
                parent[y as usize] = (x, gi);
                order.push(y);
            }
        }
    }
    assert_eq!(
        order.len(),
        n,
        "generators do not generate the enumerated group"
    );
    let mut mul = vec![0 as Elem; n * n];
    for a in 0..n {
        let row = &mut mul[a * n..(a + 1) * n];
        row[0] = a as Elem;
        for &j in &order[1..] {
            let (p, gi) = parent[j as usize];
            row[j as usize] = right[row[p as usize] as usize][gi];
        }
    }
    mul
}

fn minimal_prefix_gens(g: &FiniteGroup, gens: &[Elem]) -> Vec<Elem> {
    // Drop generators already in the span of earlier ones.
    let mut out: Vec<Elem> = Vec::new();
    let mut bits = FixedBitSet::with_capacity(g.n);
    bits.insert(0);
    let mut list = vec![0 as Elem];
    for &x in gens {
        if bits.contains(x as usize) {
            continue;
        }
        out.push(x);
        extend_closure(g, &mut bits, &mut list, &out);
    }
    out
}

fn extend_closure(g: &FiniteGroup, bits: &mut FixedBitSet, list: &mut Vec<Elem>, gens: &[Elem]) {
    // Recompute the closure starting from the current list.
    let mut k = 0;
    while k < list.len() {
        let x = list[k];
        k += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !bits.put(y as usize) {
                list.push(y);
            }
        }
    }
}

fn greedy_gens(g: &FiniteGroup, set: &FixedBitSet) -> Vec<Elem> {
    // Prefer elements of large order so the list stays short.
    let mut cand: Vec<Elem> = set.ones().map(|x| x as Elem).filter(|&x| x != 0).collect();
    cand.sort_by_key(|&x| (std::cmp::Reverse(g.elem_order(x)), x));
    let total = set.count_ones(..);
    let mut out = Vec::new();
    let mut bits = FixedBitSet::with_capacity(g.n);
    bits.insert(0);
    let mut list = vec![0 as Elem];
    for x in cand {
        if list.len() == total {
            break;
        }
        if bits.contains(x as usize) {
            continue;
        }
        out.push(x);
        extend_closure(g, &mut bits, &mut list, &out);
    }
    out
}

/// A subgroup of an enumerated group.
#[derive(Clone)]
pub struct Subgroup {
    bits: FixedBitSet,
    order: usize,
    gens: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}
impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by order, then by the sorted element list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.bits.ones().cmp(other.bits.ones()))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.order, self.gens)
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.bits.contains(x as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.ones().map(|x| x as Elem)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order <= other.order && self.bits.is_subset(&other.bits)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn elems(&self) -> Vec<Elem> {
        self.iter().collect()
    }
}

/// A quotient group with its projection.
pub struct Quotient {
    pub group: FiniteGroup,
    /// Coset index of each element of the ambient group (`u32::MAX` outside).
    pub coset_of: Vec<u32>,
    pub reps: Vec<Elem>,
}

impl Quotient {
    pub fn project(&self, x: Elem) -> Elem {
        self.coset_of[x as usize]
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, ambient: &FiniteGroup, h: &Subgroup) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(ambient.order());
        for (x, &c) in self.coset_of.iter().enumerate() {
            if c != u32::MAX && h.contains(c) {
                bits.insert(x);
            }
        }
        ambient.subgroup_from_set(bits)
    }

    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let els: Vec<Elem> = h.iter().map(|x| self.coset_of[x as usize]).collect();
        self.group.subgroup_from_elems(&els)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym4() -> FiniteGroup {
        let g = PermGroup::new(
            4,
            vec![
                Perm::parse_cycles(4, "(1 2)").unwrap(),
                Perm::parse_cycles(4, "(1 2 3 4)").unwrap(),
            ],
        )
        .unwrap();
        FiniteGroup::from_perm_group(&g).unwrap()
    }

    fn el(g: &FiniteGroup, s: &str) -> Elem {
        g.index_of(&Perm::parse_cycles(4, s).unwrap()).unwrap()
    }

    #[test]
    fn table_agrees_with_composition() {
        let g = sym4();
        assert_eq!(g.order(), 24);
        for a in g.elements() {
            for b in g.elements() {
                let p = g.perm(a).unwrap().then(g.perm(b).unwrap());
                assert_eq!(g.index_of(&p).unwrap(), g.mul(a, b));
            }
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.elem_order(a) as u64, g.perm(a).unwrap().order());
        }
    }

    #[test]
    fn local_subgroups_in_sym4() {
        let g = sym4();
        let all = g.whole();
        let v4 = g.generate(&[el(&g, "(1 2)(3 4)"), el(&g, "(1 3)(2 4)")]);
        assert_eq!(v4.order(), 4);
        assert_eq!(g.normalizer(&all, &v4), all);
        assert_eq!(g.centralizer(&all, &v4), v4);
        let z = g.generate(&[el(&g, "(1 3)(2 4)")]);
        let d8 = g.generate(&[el(&g, "(1 2 3 4)"), el(&g, "(1 3)")]);
        assert_eq!(g.normalizer(&all, &z), d8);
        assert_eq!(g.normalizer(&all, &g.trivial()), all);
        assert_eq!(g.centralizer(&all, &g.trivial()), all);
    }

    #[test]
    fn quotient_of_sym4_by_v4() {
        let g = sym4();
        let v4 = g.generate(&[el(&g, "(1 2)(3 4)"), el(&g, "(1 3)(2 4)")]);
        let q = g.quotient(&g.whole(), &v4);
        assert_eq!(q.group.order(), 6);
        let nonab = q.group.elements().any(|a| {
            q.group
                .elements()
                .any(|b| q.group.mul(a, b) != q.group.mul(b, a))
        });
        assert!(nonab);
        assert_eq!(q.preimage(&g, &q.group.trivial()), v4);
    }

    #[test]
    fn transporter_examples() {
        let g = sym4();
        let all = g.whole();
        let p = g.generate(&[el(&g, "(1 3)(2 4)")]);
        let q = g.generate(&[el(&g, "(1 2)(3 4)")]);
        let t = g.transporter(&all, &p, &q).unwrap();
        assert_eq!(g.conj_subgroup(&p, t), q);
        assert_eq!(g.transporter(&all, &p, &p), Some(0));
        let v4 = g.generate(&[el(&g, "(1 2)(3 4)"), el(&g, "(1 3)(2 4)")]);
        let other = g.generate(&[el(&g, "(1 3)"), el(&g, "(2 4)")]);
        assert_eq!(g.transporter(&all, &v4, &other), None);
    }
}
