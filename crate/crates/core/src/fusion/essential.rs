//! Essential subgroups and their local structure.

use serde::Serialize;

use super::{describe, FusionSystem};
use crate::engine::lattice::all_subgroups;
use crate::engine::local::{all_sylows, frattini, o_p, o_up_p_prime, sylow};
use crate::engine::{FiniteGroup, Subgroup};
use crate::error::Result;
use crate::modrep::SectionModule;

/// Strongly p-embedded subgroup test for `h`: `p | |h|`, `O_p(h) = 1`, and
/// the Sylow p-subgroups fall into at least two classes under the relation
/// generated by nontrivial intersection.
pub fn has_strongly_p_embedded(g: &FiniteGroup, h: &Subgroup, p: u32) -> bool {
    if !h.order().is_multiple_of(p as usize) || !o_p(g, h, p).is_trivial() {
        return false;
    }
    let sylows = all_sylows(g, h, p);
    let mut parent: Vec<usize> = (0..sylows.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..sylows.len() {
        for j in i + 1..sylows.len() {
            if !g.intersect(&sylows[i], &sylows[j]).is_trivial() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let root = find(&mut parent, 0);
    (1..sylows.len()).any(|i| find(&mut parent, i) != root)
}

/// Direct search for a proper `M < h` with `p | |M|` and `p ∤ |M ∩ M^x|`
/// for every `x ∈ h \ M`.
pub fn has_strongly_p_embedded_brute(g: &FiniteGroup, h: &Subgroup, p: u32) -> Result<bool> {
    let p = p as usize;
    for m in all_subgroups(g, h)? {
        if m.order() == h.order() || m.order() % p != 0 {
            continue;
        }
        if h.iter()
            .filter(|&x| !m.contains(x))
            .all(|x| !g.intersect(&m, &g.conj_subgroup(&m, x)).order().is_multiple_of(p))
        {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, Serialize)]
pub struct EssentialStructure {
    pub subgroup: String,
    /// False when no offender exists; the remaining checks are then empty.
    pub applicable: bool,
    pub offender: Option<String>,
    pub q: usize,
    pub offender_index: usize,
    pub frattini_quotient_order: usize,
    pub out_order: usize,
    pub o_p_prime_out_order: usize,
    /// `|O^{p'}(Out_F(R))| = q(q²−1)` with `q + 1` elementary abelian Sylow subgroups of order `q`.
    pub sl2_shape: bool,
    /// Dimension-2 natural module check; `None` when `q` is not prime.
    pub natural_module: Option<bool>,
}

impl FusionSystem<'_> {
    /// `Out_F(P) = N_G(P)/PC_G(P)` as a standalone group.
    pub fn out_group(&self, p: &Subgroup) -> FiniteGroup {
        let g = self.group;
        let pc = g.join(p, &self.c_g(p));
        g.quotient(&self.n_g(p), &pc).group
    }

    pub(super) fn out_has_strongly_p_embedded(&self, r: &Subgroup) -> bool {
        let out = self.out_group(r);
        has_strongly_p_embedded(&out, &out.whole(), self.p)
    }

    /// Fully normalized centric representatives whose outer automorphism
    /// group has a strongly p-embedded subgroup, one per F-class.
    pub fn essential_subgroups(&self) -> Result<Vec<Subgroup>> {
        let mut out = Vec::new();
        for class in self.class_list()? {
            let Some(rep) = class.iter().find(|r| self.is_fully_normalized(r)) else {
                continue;
            };
            if class.iter().all(|r| self.c_s(r).is_subgroup_of(r))
                && self.out_has_strongly_p_embedded(rep)
            {
                out.push(rep.clone());
            }
        }
        Ok(out)
    }

    /// Offender, `SL₂(q)` shape of `O^{p'}(Out_F(R))` and the natural module
    /// on `R̄/C_R̄(O^{p'}(Out_F(R)))`, where `R̄ = R/Φ(R)`.
    pub fn essential_local_structure(
        &self,
        r: &Subgroup,
        offender: Option<&Subgroup>,
    ) -> Result<EssentialStructure> {
        let g = self.group;
        let p = self.p;
        let ns = self.n_s(r);
        let phi = frattini(g, r)?;
        let rbar = SectionModule::new(g, r, &phi, &ns, p)?;
        let candidates: Vec<Subgroup> = match offender {
            Some(a) => vec![a.clone()],
            None => {
                let mut c: Vec<Subgroup> = all_subgroups(g, &ns)?
                    .into_iter()
                    .filter(|a| !a.is_subgroup_of(r))
                    .collect();
                c.sort_by_key(|a| std::cmp::Reverse(a.order()));
                c
            }
        };
        let mut report = EssentialStructure {
            subgroup: describe(g, r),
            applicable: false,
            offender: None,
            q: ns.order() / r.order(),
            offender_index: 0,
            frattini_quotient_order: r.order() / phi.order(),
            out_order: 0,
            o_p_prime_out_order: 0,
            sl2_shape: false,
            natural_module: None,
        };
        let found = candidates.iter().find(|a| {
            let index = a.order() / g.intersect(a, r).order();
            rbar.offenders(std::slice::from_ref(*a))
                .first()
                .is_some_and(|o| o.module_index <= index)
        });
        let Some(a) = found else { return Ok(report) };
        report.applicable = true;
        report.offender = Some(describe(g, a));
        report.offender_index = a.order() / g.intersect(a, r).order();

        let ng = self.n_g(r);
        let pc = g.join(r, &self.c_g(r));
        let quot = g.quotient(&ng, &pc);
        let out = &quot.group;
        report.out_order = out.order();
        let k = o_up_p_prime(out, &out.whole(), p);
        report.o_p_prime_out_order = k.order();
        let q = report.q;
        let sylows = all_sylows(out, &k, p);
        let t = sylow(out, &k, p);
        report.sl2_shape = k.order() == q * (q * q - 1)
            && t.order() == q
            && out.is_elementary_abelian(&t, p)
            && sylows.len() == q + 1;

        if q == p as usize {
            let k_pre = quot.preimage(g, &k);
            let full = SectionModule::new(g, r, &phi, &k_pre, p)?;
            let (_, fixed) = full.commutator_and_fixed_spaces(&k_pre);
            let bottom = full.subgroup_of(&fixed);
            let m = SectionModule::new(g, r, &bottom, &k_pre, p)?;
            report.natural_module = Some(match p {
                2 => m.is_natural_sln2() == Some(2),
                _ => {
                    m.dim() == 2
                        && m.image_order() == q * (q * q - 1)
                        && m.submodule_lattice()?.members.len() == 2
                }
            });
        }
        Ok(report)
    }
}
