use std::collections::HashSet;
use std::path::Path;

use crate::engine::groupfile::{parse, GroupFile};
use crate::engine::local::{o_p, o_up_p, p_part};
use crate::engine::yg::y_subgroup;
use crate::engine::{FiniteGroup, Perm, PermGroup, Subgroup};
use crate::error::{Error, Result};
use crate::modrep::SectionModule;
use crate::report::ReportNode;

const AUT_G23_ORDER: u128 = 8_491_392;
const NAME: &str = "Aut(G₂(3)) ingest";

/// Runs the `Aut(G₂(3))` checks on a group file with `subgroup M_G` and
/// `subgroup C_G` blocks. A missing file yields SKIPPED.
pub fn ingest_autg23(path: &Path) -> Result<ReportNode> {
    if !path.exists() {
        return Ok(ReportNode::skipped(
            NAME,
            format!("{} not found", path.display()),
        ));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let file = parse(&text)?;
    Ok(ReportNode::group(NAME, checks(&file)?))
}

fn block(file: &GroupFile, name: &str) -> Result<PermGroup> {
    let gens = file
        .subgroup(name)
        .ok_or_else(|| Error::Input(format!("missing `subgroup {name}` block")))?;
    PermGroup::new(file.degree, gens.to_vec())
}

fn perm_set(g: &FiniteGroup, h: &Subgroup) -> HashSet<Perm> {
    h.iter().filter_map(|x| g.perm(x).cloned()).collect()
}

fn leaf(name: &str, ok: bool, witness: String) -> ReportNode {
    ReportNode::leaf(name, ok, (!ok).then_some(witness))
}

fn checks(file: &GroupFile) -> Result<Vec<ReportNode>> {
    let mut out = Vec::new();
    let g = PermGroup::new(file.degree, file.generators.clone())?;
    let order = g.order();
    out.push(leaf(
        "|G| = 2·|G₂(3)|",
        order == AUT_G23_ORDER,
        format!("|G| = {order}"),
    ));
    let two_part = p_part(usize::try_from(order).unwrap_or(usize::MAX), 2);
    out.push(leaf(
        "Sylow 2-subgroup of order 2⁷",
        two_part == 128,
        format!("2-part {two_part}"),
    ));

    let c = FiniteGroup::from_perm_group(&block(file, "C_G")?)?;
    let q = o_p(&c, &c.whole(), 2);
    let z = c.center(&q);
    let extraspecial = q.order() == 32
        && z.order() == 2
        && c.derived(&q) == z
        && c.quotient(&q, &z)
            .group
            .is_abelian(&c.quotient(&q, &z).group.whole());
    out.push(leaf(
        "Q_G = O₂(C_G) extraspecial of order 2⁵",
        extraspecial,
        format!("|Q_G| = {}, |Z(Q_G)| = {}", q.order(), z.order()),
    ));
    if !extraspecial {
        return Ok(out);
    }

    // Z(Q_G) has order 2, so largeness reduces to C_G(z) ≤ N_G(Q_G) and C_G(Q_G) ≤ Q_G.
    let zperm = c
        .perm(z.iter().find(|&x| x != 0).unwrap_or(0))
        .cloned()
        .expect("permutation group");
    let (_, cz) = g.orbit_stabilizer(zperm, |x, h| x.conjugate_by(h))?;
    let cz = FiniteGroup::from_perm_group(&cz)?;
    let q_in_cz: Vec<_> = perm_set(&c, &q)
        .iter()
        .filter_map(|p| cz.index_of(p))
        .collect();
    let large = if q_in_cz.len() != q.order() {
        leaf("Q_G large in G", false, "Q_G is not inside C_G(z)".into())
    } else {
        let qz = cz.subgroup_from_elems(&q_in_cz);
        let all = cz.whole();
        let normal = cz.is_normal(&qz, &all);
        let centric = cz.centralizer(&all, &qz).is_subgroup_of(&qz);
        leaf(
            "Q_G large in G",
            normal && centric,
            format!("C_G(z) normalizes Q_G: {normal}, C_G(Q_G) ≤ Q_G: {centric}"),
        )
    };
    out.push(large);

    let m = FiniteGroup::from_perm_group(&block(file, "M_G")?)?;
    let all = m.whole();
    let y = y_subgroup(&m, &all, 2)?;
    out.push(leaf(
        "|Y_M| = 2⁴",
        y.order() == 16,
        format!("|Y_M| = {}", y.order()),
    ));
    let o2 = o_up_p(&m, &all, 2);
    let v = m.commutator(&y, &o2);
    let fixed = m.intersect(&y, &m.centralizer(&all, &o2));
    let natural = SectionModule::new(&m, &y, &fixed, &all, 2)?.is_natural_sln2() == Some(3)
        || SectionModule::new(&m, &v, &m.trivial(), &all, 2)?.is_natural_sln2() == Some(3);
    out.push(leaf(
        "M_G acts on a section of Y_M as the natural SL₃(2)-module",
        natural,
        format!("|V_G| = {}", v.order()),
    ));

    let qset = perm_set(&c, &q);
    let yset = perm_set(&m, &y);
    let vset = perm_set(&m, &v);
    out.push(leaf(
        "Y_M ≰ Q_G",
        !yset.is_subset(&qset),
        "Y_M ≤ Q_G".into(),
    ));
    out.push(leaf("V_G ≤ Q_G", vset.is_subset(&qset), "V_G ≰ Q_G".into()));
    Ok(out)
}
