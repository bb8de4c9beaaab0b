use std::collections::HashSet;

use super::q8::{build_q8_central_product, quaternion_generators};
use super::{gl2, kron, mat2, negate, perm_of, sl23_group, tensor_swap};
use crate::engine::auto::{isomorphism, Isomorphism};
use crate::engine::lattice::{all_subgroups, elementary_abelian_subgroups};
use crate::engine::local::{o_p, o_up_p, p_part};
use crate::engine::models::{
    cyclic_group, dihedral8_group, direct_product, quaternion8_group, sym_group,
};
use crate::engine::{Elem, FiniteGroup, Perm, PermGroup, Subgroup};
use crate::error::{Error, Result};
use crate::fusion::is_large_in_group;
use crate::modrep::linalg::Matrix;
use crate::report::ReportNode;

const BLOCK: u32 = 80;

/// `C̃` on 160 points with its named elements and subgroups.
///
/// `⟨H₁∘H₂, t⟩` acts on two copies of `F₃⁴ \ {0}`: naturally on the first
/// and twisted by `α(g) = χ(g)·YgY` on the second, where `Y` is the tensor
/// swap and `χ` is the sign character with kernel `H₁∘H₂`. The involution
/// `y` swaps the copies, so `g^y = α(g)` and `(yt)² = -1`.
///
/// `c_star` is `O²(C̃)⟨yt⟩`, the index-2 subgroup with quotient `S₃×C₃`.
/// The index-2 subgroup over `S* = Q⟨t⟩` has quotient `(C₃×C₃)⋊C₂` instead,
/// since `t` inverts all of `D`.
pub struct TildeCModel {
    pub group: FiniteGroup,
    pub i: Elem,
    pub j: Elem,
    pub iy: Elem,
    pub jy: Elem,
    pub d1: Elem,
    pub d2: Elem,
    pub y: Elem,
    pub t: Elem,
    pub q: Subgroup,
    pub p1: Subgroup,
    pub p2: Subgroup,
    pub z: Subgroup,
    pub d: Subgroup,
    pub t_group: Subgroup,
    pub s: Subgroup,
    pub s_star: Subgroup,
    pub c_star: Subgroup,
    pub h1: Subgroup,
    pub h2: Subgroup,
    pub o2: Subgroup,
}

fn closure(gens: &[Matrix]) -> HashSet<Matrix> {
    let mut seen: HashSet<Matrix> = HashSet::new();
    let mut queue = vec![Matrix::identity(3, gens[0].dim())];
    seen.insert(queue[0].clone());
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen
}

struct Witnesses {
    i1: Matrix,
    j1: Matrix,
    d1: Matrix,
    i2: Matrix,
    j2: Matrix,
    d2: Matrix,
}

fn witnesses() -> Witnesses {
    let (i, j) = quaternion_generators();
    let d = mat2([[1, 1], [0, 1]]);
    let one = Matrix::identity(3, 2);
    Witnesses {
        i1: kron(&i, &one),
        j1: kron(&j, &one),
        d1: kron(&d, &one),
        i2: kron(&one, &i),
        j2: kron(&one, &j),
        d2: kron(&one, &d),
    }
}

fn conj(x: &Matrix, t: &Matrix) -> Matrix {
    // Only used for involutions t.
    t.mul(x).mul(t)
}

/// Every `t = (τ₁⊗τ₂)·q` with `τₖ ∈ GL₂(3)` and `q ∈ Q` that is an
/// involution outside `H₁∘H₂`, inverts `d₁` and `d₂`, swaps `i⊗1 ↔ j⊗1` and
/// `1⊗i ↔ 1⊗j`, and commutes with the tensor swap. Distinct matrices in
/// search order.
pub fn t_solutions() -> Vec<Matrix> {
    let w = witnesses();
    let q: Vec<Matrix> = {
        let mut v: Vec<Matrix> = closure(&[w.i1.clone(), w.j1.clone(), w.i2.clone(), w.j2.clone()])
            .into_iter()
            .collect();
        v.sort_by(|a, b| a.rows.cmp(&b.rows));
        v
    };
    let o2 = closure(&[
        w.i1.clone(),
        w.j1.clone(),
        w.d1.clone(),
        w.i2.clone(),
        w.j2.clone(),
        w.d2.clone(),
    ]);
    let y = tensor_swap();
    let gl = gl2();
    let mut out: Vec<Matrix> = Vec::new();
    for t1 in &gl {
        for t2 in &gl {
            let base = kron(t1, t2);
            for qq in &q {
                let t = base.mul(qq);
                let ok = t.mul(&t).is_identity()
                    && conj(&w.d1, &t) == w.d1.mul(&w.d1)
                    && conj(&w.d2, &t) == w.d2.mul(&w.d2)
                    && conj(&w.i1, &t) == w.j1
                    && conj(&w.i2, &t) == w.j2
                    && y.mul(&t).mul(&y) == t
                    && !o2.contains(&t)
                    && !out.contains(&t);
                if ok {
                    out.push(t);
                }
            }
        }
    }
    out
}

fn two_block_perm(m: &Matrix, chi: bool) -> Perm {
    let y = tensor_swap();
    let twisted = y.mul(m).mul(&y);
    let twisted = if chi { twisted } else { negate(&twisted) };
    let (a, b) = (perm_of(m), perm_of(&twisted));
    let images = (0..BLOCK)
        .map(|pt| a.apply(pt))
        .chain((0..BLOCK).map(|pt| BLOCK + b.apply(pt)))
        .collect();
    Perm::from_images(images).expect("block permutation")
}

fn block_swap() -> Perm {
    Perm::from_images(
        (0..2 * BLOCK)
            .map(|pt| (pt + BLOCK) % (2 * BLOCK))
            .collect(),
    )
    .expect("block swap")
}

pub fn assemble_tilde_c() -> Result<TildeCModel> {
    assemble_variant(0)
}

/// The model built from the `k`-th element of [`t_solutions`].
pub fn assemble_variant(k: usize) -> Result<TildeCModel> {
    let sols = t_solutions();
    if sols.is_empty() {
        return Err(Error::Internal("no admissible t in GL₄(3)".into()));
    }
    let t = sols.get(k).ok_or_else(|| {
        Error::Input(format!(
            "variant {k} out of range: {} solutions",
            sols.len()
        ))
    })?;
    let w = witnesses();
    let mats = [&w.i1, &w.j1, &w.d1, &w.i2, &w.j2, &w.d2];
    let mut perms: Vec<Perm> = mats.iter().map(|m| two_block_perm(m, true)).collect();
    perms.push(two_block_perm(t, false));
    perms.push(block_swap());
    let group = FiniteGroup::from_perm_group(&PermGroup::new(2 * BLOCK as usize, perms.clone())?)?;
    let e: Vec<Elem> = perms
        .iter()
        .map(|p| group.index_of(p).expect("generator is an element"))
        .collect();
    let (i, j, d1, i2, j2, d2, t, y) = (e[0], e[1], e[2], e[3], e[4], e[5], e[6], e[7]);
    let p1 = group.generate(&[i, j]);
    let p2 = group.generate(&[i2, j2]);
    let q = group.join(&p1, &p2);
    let h1 = group.generate(&[i, j, d1]);
    let h2 = group.generate(&[i2, j2, d2]);
    let o2 = group.join(&h1, &h2);
    let t_group = group.generate(&[y, t]);
    let s_star = group.join(&q, &group.generate(&[t]));
    Ok(TildeCModel {
        iy: group.conj(i, y),
        jy: group.conj(j, y),
        z: group.center(&q),
        d: group.generate(&[d1, d2]),
        s: group.join(&q, &t_group),
        c_star: group.join(&o2, &group.generate(&[group.mul(y, t)])),
        i,
        j,
        d1,
        d2,
        y,
        t,
        q,
        p1,
        p2,
        t_group,
        s_star,
        h1,
        h2,
        o2,
        group,
    })
}

fn iso_to(g: &FiniteGroup, h: &Subgroup, model: &PermGroup) -> Result<bool> {
    let (sub, _) = g.subgroup_as_group(h);
    Ok(isomorphism(&sub, &FiniteGroup::from_perm_group(model)?)?.is_some())
}

fn iso_quotient(
    g: &FiniteGroup,
    top: &Subgroup,
    bottom: &Subgroup,
    model: &PermGroup,
) -> Result<bool> {
    let quot = g.quotient(top, bottom);
    Ok(isomorphism(&quot.group, &FiniteGroup::from_perm_group(model)?)?.is_some())
}

fn check(name: &str, ok: bool, witness: impl FnOnce() -> String) -> ReportNode {
    if ok {
        ReportNode::pass(name)
    } else {
        ReportNode::fail(name, witness())
    }
}

/// Checks the structure of `C̃` clause by clause.
pub fn verify_tilde_c(m: &TildeCModel) -> Result<ReportNode> {
    let g = &m.group;
    let all = g.whole();
    let order = g.order();
    let mut out = Vec::new();
    out.push(check("|C̃| = 1152", order == 1152, || {
        format!("order {order}")
    }));

    let q8q8 = build_q8_central_product()?;
    let o2q = o_p(g, &all, 2);
    let (qg, _) = g.subgroup_as_group(&m.q);
    let q_iso = isomorphism(&qg, &q8q8.group)?.is_some();
    out.push(check(
        "Q = O₂(C̃) ≅ Q₈∘Q₈",
        o2q == m.q && q_iso,
        || format!("|O₂(C̃)| = {}", o2q.order()),
    ));
    let zq = g.center(&m.q);
    out.push(check(
        "Z(Q) = Z has order 2",
        zq == m.z && zq.order() == 2,
        || format!("|Z(Q)| = {}", zq.order()),
    ));

    let s3 = sym_group(3);
    let s3s3 = direct_product(&s3, &s3);
    out.push(check(
        "C̃/Q ≅ S₃×S₃",
        iso_quotient(g, &all, &m.q, &s3s3)?,
        || "quotient differs".into(),
    ));

    let sylow_order = p_part(order, 2);
    out.push(check(
        "S = QT is Sylow of order 2⁷",
        m.s.order() == 128 && sylow_order == 128,
        || format!("|S| = {}, |C̃|₂ = {sylow_order}", m.s.order()),
    ));

    let nsd = g.normalizer(&m.s, &m.d);
    let t_ok = nsd == m.t_group
        && iso_to(g, &m.t_group, &dihedral8_group())?
        && g.intersect(&m.t_group, &m.q) == m.z
        && g.intersect(&m.t_group, &m.o2) == m.z
        && g.center(&m.t_group) == m.z;
    out.push(check(
        "T = N_S(D) ≅ D₈ with T∩Q = T∩O²(C̃) = Z(T) = Z",
        t_ok,
        || format!("|N_S(D)| = {}, |T| = {}", nsd.order(), m.t_group.order()),
    ));

    let o2_up = o_up_p(g, &all, 2);
    let sl23 = sl23_group();
    let h_ok = iso_to(g, &m.h1, &sl23)? && iso_to(g, &m.h2, &sl23)?;
    let o2_ok = o2_up == m.o2 && m.o2.order() == 288 && g.join(&m.d, &m.q) == m.o2;
    out.push(check(
        "O²(C̃) = DQ = H₁∘H₂ with Hₖ ≅ SL₂(3)",
        o2_ok && h_ok,
        || format!("|O²(C̃)| = {}", o2_up.order()),
    ));

    let fixed = m.q.iter().filter(|&x| !m.z.contains(x)).find(|&x| {
        m.d.gens()
            .iter()
            .all(|&delta| m.z.contains(g.mul(g.inv(x), g.conj(x, delta))))
    });
    out.push(check(
        "D acts fixed-point-freely on Q/Z",
        fixed.is_none(),
        || format!("{} is fixed mod Z", g.label(fixed.unwrap_or(0))),
    ));

    let c3 = cyclic_group(3);
    let cs_ok = m.c_star.order() * 2 == order && g.is_normal(&m.c_star, &all);
    let cs_quot = iso_quotient(g, &m.c_star, &m.q, &direct_product(&s3, &c3))?;
    out.push(check(
        "C̃* = O²(C̃)⟨yt⟩ has index 2 and C̃*/Q ≅ S₃×C₃",
        cs_ok && cs_quot,
        || format!("|C̃*| = {}", m.c_star.order()),
    ));

    let ss_ok = m.s_star.order() * 2 == m.s.order() && m.s_star.is_subgroup_of(&m.s);
    out.push(check("S* = Q⟨t⟩ has index 2 in S", ss_ok, || {
        format!("|S*| = {}", m.s_star.order())
    }));
    let pn = g.is_normal(&m.p1, &m.s_star) && g.is_normal(&m.p2, &m.s_star);
    out.push(check("P₁, P₂ ⊴ S*", pn, || {
        "a factor is not normal".into()
    }));

    let max_ea = elementary_abelian_subgroups(g, &m.s_star, 2)?
        .iter()
        .map(Subgroup::order)
        .max()
        .unwrap_or(1);
    out.push(check(
        "S* has no elementary abelian subgroup of order 2⁴",
        max_ea < 16,
        || format!("order {max_ea}"),
    ));

    let st = g.intersect(&m.s_star, &m.t_group);
    let st_ok = st.order() == 4 && g.is_elementary_abelian(&st, 2) && !st.is_subgroup_of(&m.q);
    out.push(check(
        "S*∩T ≅ C₂×C₂ and S*∩T ≰ Q",
        st_ok,
        || format!("|S*∩T| = {}", st.order()),
    ));

    let q8 = FiniteGroup::from_perm_group(&quaternion8_group())?;
    let mut quaternions = Vec::new();
    for h in all_subgroups(g, &m.q)? {
        if h.order() == 8 && isomorphism(&g.subgroup_as_group(&h).0, &q8)?.is_some() {
            quaternions.push(h);
        }
    }
    let quat_ok =
        quaternions.len() == 2 && quaternions.contains(&m.p1) && quaternions.contains(&m.p2);
    out.push(check(
        "P₁ and P₂ are the only Q₈ subgroups of Q",
        quat_ok,
        || format!("{} found", quaternions.len()),
    ));

    let cq = g.centralizer(&all, &m.q);
    out.push(check("C_C̃(Q) ≤ Q", cq.is_subgroup_of(&m.q), || {
        format!("|C_C̃(Q)| = {}", cq.order())
    }));

    let zgen = m.z.iter().find(|&x| x != 0).unwrap_or(0);
    let yt = g.mul(m.y, m.t);
    let relations = [
        ("t² = 1", g.mul(m.t, m.t) == 0),
        ("y² = 1", g.mul(m.y, m.y) == 0),
        ("(yt)² generates Z", g.mul(yt, yt) == zgen && zgen != 0),
        ("i^t = j", g.conj(m.i, m.t) == m.j),
        ("j^t = i", g.conj(m.j, m.t) == m.i),
        ("d₁^t = d₁²", g.conj(m.d1, m.t) == g.mul(m.d1, m.d1)),
        ("d₁^y = d₂", g.conj(m.d1, m.y) == m.d2),
        ("i^y, j^y ∈ P₂", m.p2.contains(m.iy) && m.p2.contains(m.jy)),
        ("[P₁, P₂] = 1", g.commutator(&m.p1, &m.p2).is_trivial()),
    ];
    let broken: Vec<&str> = relations.iter().filter(|r| !r.1).map(|r| r.0).collect();
    out.push(check("witness relations", broken.is_empty(), || {
        broken.join(", ")
    }));

    let large = is_large_in_group(g, &all, &m.q)?;
    out.push(check("Q is large in C̃", large.large, || {
        large.failing.clone().unwrap_or_else(|| "C_C̃(Q) ≰ Q".into())
    }));

    Ok(ReportNode::group("C̃ structure", out))
}

/// An isomorphism between two assembled models; none is an internal error.
pub fn uniqueness_tilde_c(a: &TildeCModel, b: &TildeCModel) -> Result<Isomorphism> {
    isomorphism(&a.group, &b.group)?
        .ok_or_else(|| Error::Internal("two models of C̃ are not isomorphic".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn t_search_finds_solutions() {
        let sols = t_solutions();
        assert!(!sols.is_empty());
        let y = tensor_swap();
        for t in &sols {
            assert_eq!(y.mul(t).mul(&y), *t);
            assert!(t.mul(t).is_identity());
        }
    }

    #[test]
    fn assembled_model_verifies() {
        let m = assemble_tilde_c().unwrap();
        let report = verify_tilde_c(&m).unwrap();
        assert_eq!(report.status, Status::Pass, "{report}");
        assert_eq!(m.group.order(), 1152);
        assert_eq!(
            (m.q.order(), m.s.order(), m.s_star.order(), m.c_star.order()),
            (32, 128, 64, 576)
        );
        assert_eq!((m.d.order(), m.t_group.order(), m.o2.order()), (9, 8, 288));

        let g = &m.group;
        let yt = g.mul(m.y, m.t);
        assert_eq!(g.elem_order(yt), 4);
        assert_eq!((g.elem_order(m.d1), g.elem_order(m.d2)), (3, 3));
        assert!(g.commutator(&g.generate(&[m.d1]), &m.p2).is_trivial());
        assert!(g.commutator(&g.generate(&[m.d2]), &m.p1).is_trivial());
    }

    #[test]
    fn index_two_subgroup_over_s_star_is_generalized_dihedral() {
        let m = assemble_tilde_c().unwrap();
        let g = &m.group;
        let over = g.join(&m.o2, &g.generate(&[m.t]));
        assert_eq!(over.order(), 576);
        assert!(m.s_star.is_subgroup_of(&over));
        assert!(!m.s_star.is_subgroup_of(&m.c_star));
        let quot = g.quotient(&over, &m.q).group;
        assert_eq!(quot.center(&quot.whole()).order(), 1);
        let s3c3 = direct_product(&sym_group(3), &cyclic_group(3));
        assert!(!iso_quotient(g, &over, &m.q, &s3c3).unwrap());
        let index_two: Vec<_> = crate::engine::lattice::normal_subgroups(g, &g.whole())
            .unwrap()
            .into_iter()
            .filter(|n| n.order() == 576)
            .collect();
        assert_eq!(index_two.len(), 3);
    }

    #[test]
    fn variants_are_isomorphic() {
        let last = t_solutions().len() - 1;
        let a = assemble_tilde_c().unwrap();
        let b = assemble_variant(last).unwrap();
        let iso = uniqueness_tilde_c(&a, &b).unwrap();
        for x in a.group.elements() {
            for y in [a.t, a.y, a.d1] {
                let xy = a.group.mul(x, y);
                assert_eq!(
                    iso.map[xy as usize],
                    b.group.mul(iso.map[x as usize], iso.map[y as usize])
                );
            }
        }
        assert!(assemble_variant(last + 1).is_err());
    }

    #[test]
    fn relabelled_points_give_the_same_group() {
        let a = assemble_tilde_c().unwrap();
        let shift = Perm::from_images((0..160).map(|pt| (pt + 37) % 160).collect()).unwrap();
        let gens: Vec<Perm> = a
            .group
            .generators()
            .iter()
            .map(|&x| a.group.perm(x).unwrap().conjugate_by(&shift))
            .collect();
        let b = FiniteGroup::from_perm_group(&PermGroup::new(160, gens).unwrap()).unwrap();
        assert!(isomorphism(&a.group, &b).unwrap().is_some());
    }
}
