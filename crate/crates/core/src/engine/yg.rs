//! The largest p-reduced elementary abelian normal p-subgroup.

use super::local::{o_p, omega1};
use super::table::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::modrep::linalg::Subspace;
use crate::modrep::SectionModule;

/// Sum of the p-reduced `within`-submodules of `Ω₁(Z(O_p(within)))`.
/// The sum is checked to be p-reduced itself.
pub fn y_subgroup(g: &FiniteGroup, within: &Subgroup, p: u32) -> Result<Subgroup> {
    let r = o_p(g, within, p);
    let v = omega1(g, &g.center(&r), p);
    let m = SectionModule::new(g, &v, &g.trivial(), within, p)?;
    let lattice = m.submodule_lattice()?;
    let pu = p as u8;
    let mut sum = Subspace::zero(m.dim());
    for u in &lattice.members {
        if m.is_p_reduced_sub(u) {
            sum = sum.sum(pu, u);
        }
    }
    if !m.is_p_reduced_sub(&sum) {
        return Err(Error::Internal(
            "sum of p-reduced submodules is not p-reduced".into(),
        ));
    }
    Ok(m.subgroup_of(&sum))
}
