use serde::Serialize;

use super::{kron, mat2, perm_of};
use crate::engine::auto::{automorphisms, isomorphism};
use crate::engine::lattice::elementary_abelian_subgroups;
use crate::engine::models::{direct_product, quaternion8_group};
use crate::engine::{FiniteGroup, PermGroup, Subgroup};
use crate::error::{Error, Result};
use crate::modrep::linalg::Matrix;

/// `Q₈∘Q₈` on the 80 nonzero vectors of `F₃⁴`, with its two quaternion
/// factors `P₁ = Q₈ ⊗ 1` and `P₂ = 1 ⊗ Q₈` sharing the centre `⟨-1⟩`.
pub struct Q8CentralProduct {
    pub group: FiniteGroup,
    pub p1: Subgroup,
    pub p2: Subgroup,
    pub z: Subgroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtraspecialInvariants {
    pub order: usize,
    pub center_order: usize,
    /// `|Q/Z|`, checked elementary abelian.
    pub frattini_quotient_order: usize,
    pub involutions: usize,
    pub max_elementary_abelian: usize,
    pub aut_order: usize,
    pub out_order: usize,
}

pub(super) fn quaternion_generators() -> (Matrix, Matrix) {
    (mat2([[0, 1], [2, 0]]), mat2([[1, 1], [1, 2]]))
}

pub fn build_q8_central_product() -> Result<Q8CentralProduct> {
    let (i, j) = quaternion_generators();
    let one = Matrix::identity(3, 2);
    let mats = [
        kron(&i, &one),
        kron(&j, &one),
        kron(&one, &i),
        kron(&one, &j),
    ];
    let perms: Vec<_> = mats.iter().map(perm_of).collect();
    let group = FiniteGroup::from_perm_group(&PermGroup::new(80, perms.clone())?)?;
    let elem = |k: usize| {
        group
            .index_of(&perms[k])
            .expect("generator is a group element")
    };
    let p1 = group.generate(&[elem(0), elem(1)]);
    let p2 = group.generate(&[elem(2), elem(3)]);
    let z = group.intersect(&p1, &p2);
    Ok(Q8CentralProduct { group, p1, p2, z })
}

/// `(Q₈ × Q₈)/⟨(-1,-1)⟩`, an independent model for cross-checking.
pub fn q8_central_product_from_direct_product() -> Result<FiniteGroup> {
    let q8 = quaternion8_group();
    let g = FiniteGroup::from_perm_group(&direct_product(&q8, &q8))?;
    let all = g.whole();
    let centre = g.center(&all);
    let diagonal = centre
        .iter()
        .find(|&x| x != 0 && !is_factor_central(&g, x))
        .ok_or_else(|| Error::Internal("no diagonal central involution".into()))?;
    Ok(g.quotient(&all, &g.generate(&[diagonal])).group)
}

/// True for the two central involutions lying in a single factor.
fn is_factor_central(g: &FiniteGroup, x: u32) -> bool {
    let perm = g.perm(x).expect("permutation group");
    let moved: Vec<u32> = (0..16).filter(|&pt| perm.apply(pt) != pt).collect();
    moved.iter().all(|&pt| pt < 8) || moved.iter().all(|&pt| pt >= 8)
}

impl Q8CentralProduct {
    pub fn invariants(&self) -> Result<ExtraspecialInvariants> {
        extraspecial_invariants(&self.group)
    }

    /// The independent model is isomorphic to this one.
    pub fn matches_direct_product_model(&self) -> Result<bool> {
        Ok(isomorphism(&self.group, &q8_central_product_from_direct_product()?)?.is_some())
    }
}

pub(super) fn extraspecial_invariants(g: &FiniteGroup) -> Result<ExtraspecialInvariants> {
    let all = g.whole();
    let z = g.center(&all);
    let quot = g.quotient(&all, &z);
    if !quot.group.is_elementary_abelian(&quot.group.whole(), 2) {
        return Err(Error::Input("Q/Z(Q) is not elementary abelian".into()));
    }
    let involutions = g.elements().filter(|&x| x != 0 && g.mul(x, x) == 0).count();
    let max_elementary_abelian = elementary_abelian_subgroups(g, &all, 2)?
        .iter()
        .map(Subgroup::order)
        .max()
        .unwrap_or(1);
    let aut = automorphisms(g)?;
    Ok(ExtraspecialInvariants {
        order: g.order(),
        center_order: z.order(),
        frattini_quotient_order: quot.group.order(),
        involutions,
        max_elementary_abelian,
        aut_order: aut.order(),
        out_order: aut.outer_order(),
    })
}
