//! Elementary abelian sections `A/B` as F_p-modules for a group acting by
//! conjugation.

pub mod linalg;

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::caps::Caps;
use crate::engine::lattice::all_subgroups;
use crate::engine::local::{is_prime, quotient_has_trivial_o_p};
use crate::engine::{Elem, FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use linalg::{kernel, Matrix, Subspace, Vector};

/// The section `top/bottom` with the conjugation action of `actors`.
pub struct SectionModule<'a> {
    pub group: &'a FiniteGroup,
    pub p: u32,
    pub top: Subgroup,
    pub bottom: Subgroup,
    pub actors: Subgroup,
    /// Coset representatives whose images form a basis.
    pub basis: Vec<Elem>,
    coords: HashMap<Elem, Vector>,
    kernel: Subgroup,
}

impl<'a> SectionModule<'a> {
    pub fn new(
        g: &'a FiniteGroup,
        top: &Subgroup,
        bottom: &Subgroup,
        actors: &Subgroup,
        p: u32,
    ) -> Result<Self> {
        if !(p == 2 || p == 3) {
            return Err(Error::Input(format!(
                "modules are supported over F_2 and F_3, not F_{p}"
            )));
        }
        if !g.is_normal(bottom, top) {
            return Err(Error::Input("bottom is not normal in top".into()));
        }
        let comm = g.derived(top);
        if !comm.is_subgroup_of(bottom) || !top.iter().all(|a| bottom.contains(g.pow(a, p as i64)))
        {
            return Err(Error::Input("section is not elementary abelian".into()));
        }
        if !actors
            .gens()
            .iter()
            .all(|&h| g.normalizes(h, top) && g.normalizes(h, bottom))
        {
            return Err(Error::Input("actors do not normalize the section".into()));
        }
        let cap = Caps::global().module_dim;
        let mut basis = Vec::new();
        let mut cur = bottom.clone();
        for a in top.iter() {
            if !cur.contains(a) {
                basis.push(a);
                cur = g.join(&cur, &g.generate(&[a]));
            }
        }
        Caps::check(cap, basis.len(), "module_dim")?;
        let pu = p as u8;
        let whole = Subspace::whole(pu, basis.len());
        let mut coords = HashMap::new();
        for v in whole.vectors(pu) {
            let rep = rep_of(g, &basis, &v);
            for b in bottom.iter() {
                coords.insert(g.mul(rep, b), v.clone());
            }
        }
        let mut m = SectionModule {
            group: g,
            p,
            top: top.clone(),
            bottom: bottom.clone(),
            actors: actors.clone(),
            basis,
            coords,
            kernel: g.trivial(),
        };
        m.kernel = m.centralizer_of(&m.whole());
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn pu(&self) -> u8 {
        self.p as u8
    }

    pub fn coords(&self, x: Elem) -> &Vector {
        &self.coords[&x]
    }

    /// A representative in `top` of the coset with coordinates `v`.
    pub fn element(&self, v: &[u8]) -> Elem {
        rep_of(self.group, &self.basis, v)
    }

    /// Matrix of `h` acting by conjugation on row vectors.
    pub fn matrix(&self, h: Elem) -> Matrix {
        let rows = self
            .basis
            .iter()
            .map(|&a| self.coords[&self.group.conj(a, h)].clone())
            .collect();
        Matrix { p: self.pu(), rows }
    }

    pub fn generator_matrices(&self) -> Vec<Matrix> {
        self.actors.gens().iter().map(|&h| self.matrix(h)).collect()
    }

    pub fn whole(&self) -> Subspace {
        Subspace::whole(self.pu(), self.dim())
    }

    pub fn zero(&self) -> Subspace {
        Subspace::zero(self.dim())
    }

    /// `C_H(A/B)`.
    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// Order of the image of the acting group.
    pub fn image_order(&self) -> usize {
        self.actors.order() / self.kernel.order()
    }

    /// Elements of the acting group fixing `u` vectorwise.
    pub fn centralizer_of(&self, u: &Subspace) -> Subgroup {
        let g = self.group;
        let els: Vec<Elem> = self
            .actors
            .iter()
            .filter(|&h| u.basis.iter().all(|v| self.act(v, h) == *v))
            .collect();
        g.subgroup_from_elems(&els)
    }

    pub fn act(&self, v: &[u8], h: Elem) -> Vector {
        let x = self.element(v);
        self.coords[&self.group.conj(x, h)].clone()
    }

    /// Preimage in `top` of a subspace.
    pub fn subgroup_of(&self, u: &Subspace) -> Subgroup {
        let mut gens: Vec<Elem> = self.bottom.gens().to_vec();
        gens.extend(u.basis.iter().map(|v| self.element(v)));
        self.group.generate(&gens)
    }

    /// Image of a subgroup between `bottom` and `top`.
    pub fn subspace_of(&self, x: &Subgroup) -> Subspace {
        Subspace::span(
            self.pu(),
            self.dim(),
            x.gens().iter().map(|&a| self.coords[&a].clone()),
        )
    }

    pub fn is_invariant(&self, u: &Subspace) -> bool {
        let p = self.pu();
        self.generator_matrices()
            .iter()
            .all(|m| u.basis.iter().all(|v| u.contains(p, &m.apply(v))))
    }

    /// Smallest submodule containing the given vectors.
    pub fn submodule_generated(&self, vecs: &[Vector]) -> Subspace {
        let p = self.pu();
        let mats = self.generator_matrices();
        let mut cur = Subspace::span(p, self.dim(), vecs.iter().cloned());
        loop {
            let mut next = cur.clone();
            for m in &mats {
                next = next.sum(p, &cur.image(p, m));
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn submodule_lattice(&self) -> Result<SubmoduleLattice> {
        let p = self.pu();
        Caps::check(Caps::global().module_dim, self.dim(), "module_dim")?;
        let cap = Caps::global().lattice;
        let mut cyclic: Vec<Subspace> = Vec::new();
        let mut seen: HashSet<Subspace> = HashSet::new();
        for v in self.whole().vectors(p) {
            if linalg::is_zero(&v) {
                continue;
            }
            let c = self.submodule_generated(&[v]);
            if seen.insert(c.clone()) {
                cyclic.push(c);
            }
        }
        let mut members: Vec<Subspace> = vec![self.zero()];
        let mut all: HashSet<Subspace> = HashSet::from([self.zero()]);
        members.extend(cyclic.iter().cloned());
        all.extend(cyclic.iter().cloned());
        let mut k = 1;
        while k < members.len() {
            let cur = members[k].clone();
            k += 1;
            for c in &cyclic {
                if cur.contains_space(p, c) {
                    continue;
                }
                let s = cur.sum(p, c);
                if all.insert(s.clone()) {
                    Caps::check(cap, members.len() + 1, "lattice")?;
                    members.push(s);
                }
            }
        }
        members.sort_by(|a, b| (a.dim(), &a.basis).cmp(&(b.dim(), &b.basis)));
        let irreducible: Vec<bool> = members
            .iter()
            .map(|m| {
                m.dim() > 0
                    && !members
                        .iter()
                        .any(|k| k.dim() > 0 && k.dim() < m.dim() && m.contains_space(p, k))
            })
            .collect();
        let mut height = vec![0usize; members.len()];
        for i in 0..members.len() {
            for j in 0..i {
                if members[j].dim() < members[i].dim() && members[i].contains_space(p, &members[j])
                {
                    height[i] = height[i].max(height[j] + 1);
                }
            }
        }
        let composition_length = *height.last().unwrap_or(&0);
        Ok(SubmoduleLattice {
            members,
            irreducible,
            composition_length,
        })
    }

    /// `O_p(H/C_H(A/B)) = 1`.
    pub fn is_p_reduced(&self) -> bool {
        quotient_has_trivial_o_p(self.group, &self.actors, &self.kernel, self.p)
    }

    /// p-reducedness of a submodule `u`.
    pub fn is_p_reduced_sub(&self, u: &Subspace) -> bool {
        let c = self.centralizer_of(u);
        quotient_has_trivial_o_p(self.group, &self.actors, &c, self.p)
    }

    /// `[M, K]` and `C_M(K)` as subspaces.
    pub fn commutator_and_fixed_spaces(&self, k: &Subgroup) -> (Subspace, Subspace) {
        let p = self.pu();
        let n = self.dim();
        let shifted: Vec<Matrix> = k
            .gens()
            .iter()
            .map(|&h| self.matrix(h).minus_identity())
            .collect();
        let mut comm = Subspace::zero(n);
        for m in &shifted {
            comm = comm.sum(p, &self.whole().image(p, m));
        }
        loop {
            let mut next = comm.clone();
            for m in &shifted {
                next = next.sum(p, &comm.image(p, m));
            }
            if next == comm {
                break;
            }
            comm = next;
        }
        let mut fixed = self.whole();
        for m in &shifted {
            fixed = fixed.intersect(p, &kernel(m));
        }
        (comm, fixed)
    }

    pub fn commutator_and_fixed(&self, k: &Subgroup) -> CommutatorFixed {
        let (c, f) = self.commutator_and_fixed_spaces(k);
        CommutatorFixed {
            commutator: self.subgroup_of(&c),
            fixed: self.subgroup_of(&f),
        }
    }

    /// `[M, K, K] = 0`.
    pub fn quadratic_action(&self, k: &Subgroup) -> bool {
        let (comm, _) = self.commutator_and_fixed_spaces(k);
        k.gens().iter().all(|&h| {
            let m = self.matrix(h).minus_identity();
            comm.basis.iter().all(|v| linalg::is_zero(&m.apply(v)))
        })
    }

    /// `Some(n)` when the module is the natural module of `SL_n(2)`.
    pub fn is_natural_sln2(&self) -> Option<usize> {
        let n = self.dim();
        if self.p != 2 || n < 2 {
            return None;
        }
        let gl: usize = (0..n).map(|i| (1usize << n) - (1usize << i)).product();
        if self.image_order() != gl {
            return None;
        }
        let mats = self.generator_matrices();
        let start: Vector = (0..n).map(|i| u8::from(i == 0)).collect();
        let mut orbit = vec![start.clone()];
        let mut seen: HashSet<Vector> = HashSet::from([start.clone()]);
        let mut k = 0;
        while k < orbit.len() {
            for m in &mats {
                let w = m.apply(&orbit[k]);
                if seen.insert(w.clone()) {
                    orbit.push(w);
                }
            }
            k += 1;
        }
        if orbit.len() != (1 << n) - 1 {
            return None;
        }
        let stab = self
            .actors
            .iter()
            .filter(|&h| self.act(&start, h) == start)
            .count()
            / self.kernel.order();
        (stab * orbit.len() == gl).then_some(n)
    }

    /// Candidates `A` with `|A/C_A(M)| ≥ 2` and `|M/C_M(A)| ≤ |A/C_A(M)|`.
    pub fn offenders(&self, candidates: &[Subgroup]) -> Vec<Offender> {
        let g = self.group;
        let mut out = Vec::new();
        for a in candidates {
            let acting = a.order() / g.intersect(a, &self.kernel).order();
            let (_, fixed) = self.commutator_and_fixed_spaces(a);
            let module_index = (self.p as usize).pow((self.dim() - fixed.dim()) as u32);
            if acting >= 2 && module_index <= acting {
                out.push(Offender {
                    subgroup: a.clone(),
                    module_index,
                    acting_index: acting,
                });
            }
        }
        out
    }
}

fn rep_of(g: &FiniteGroup, basis: &[Elem], v: &[u8]) -> Elem {
    let mut x = 0;
    for (&a, &c) in basis.iter().zip(v) {
        x = g.mul(x, g.pow(a, c as i64));
    }
    x
}

#[derive(Clone, Debug)]
pub struct SubmoduleLattice {
    pub members: Vec<Subspace>,
    /// `irreducible[i]`: member `i` is a minimal nonzero submodule.
    pub irreducible: Vec<bool>,
    pub composition_length: usize,
}

#[derive(Clone, Debug)]
pub struct CommutatorFixed {
    pub commutator: Subgroup,
    pub fixed: Subgroup,
}

#[derive(Clone, Debug, Serialize)]
pub struct Offender {
    #[serde(skip)]
    pub subgroup: Subgroup,
    pub module_index: usize,
    pub acting_index: usize,
}

/// A `within`-invariant complement to `u1` in the abelian p-group `v`,
/// given `v = u1 × u2` with `u2` invariant under a Sylow p-subgroup `s`.
pub fn gaschutz_complement(
    g: &FiniteGroup,
    within: &Subgroup,
    v: &Subgroup,
    u1: &Subgroup,
    u2: &Subgroup,
    s: &Subgroup,
    p: u32,
) -> Result<Subgroup> {
    let pre = |m: &str| Err(Error::Precondition(m.to_string()));
    if !is_prime(p) || !g.is_abelian(v) || !crate::engine::local::is_p_subgroup(v, p) {
        return pre("V is not an abelian p-group");
    }
    if !within
        .gens()
        .iter()
        .all(|&x| g.normalizes(x, v) && g.normalizes(x, u1))
    {
        return pre("V or U1 is not invariant under G");
    }
    if !u1.is_subgroup_of(v)
        || !u2.is_subgroup_of(v)
        || g.intersect(u1, u2).order() != 1
        || u1.order() * u2.order() != v.order()
    {
        return pre("V is not U1 × U2");
    }
    if !s.is_subgroup_of(within) || crate::engine::local::p_part(within.order(), p) != s.order() {
        return pre("S is not a Sylow p-subgroup of G");
    }
    if !s.gens().iter().all(|&x| g.normalizes(x, u2)) {
        return pre("U2 is not S-invariant");
    }
    let target = v.order() / u1.order();
    let found = all_subgroups(g, v)?.into_iter().find(|w| {
        w.order() == target
            && g.intersect(w, u1).order() == 1
            && within.gens().iter().all(|&x| g.normalizes(x, w))
    });
    match found {
        Some(w) => {
            debug_assert!(g.join(u1, &w) == *v);
            Ok(w)
        }
        None => Err(Error::Internal("no invariant complement exists".into())),
    }
}
