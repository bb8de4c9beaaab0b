//! Normality in F and large subgroups of groups and fusion systems.

use std::collections::VecDeque;
use std::time::Instant;

use serde::Serialize;

use super::closure::{fusion_contained, strongly_closed_in, ConjugatesIn};
use super::{describe, FusionSystem};
use crate::engine::auto::characteristic_subgroups;
use crate::engine::lattice::all_subgroups;
use crate::engine::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    /// The first `U` (or subgroup) where the criterion fails.
    pub witness: Option<String>,
    pub millis: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LargenessReport {
    pub self_centralizing: bool,
    /// `(name, verdict)` for `i, ii, ii', iii, iii', iv, iv'`.
    pub criteria: Vec<(String, Verdict)>,
    pub large: bool,
    pub weakly_closed: Option<bool>,
    pub normal_in_s: Option<bool>,
}

impl LargenessReport {
    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.criteria
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalityReport {
    pub extension: bool,
    pub characteristic_strongly_closed: bool,
    pub central_series: bool,
    pub normal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupLargeness {
    pub large: bool,
    pub self_centralizing: bool,
    /// A nontrivial `U ≤ Z(Q)` with `N_G(U) ≰ N_G(Q)`.
    pub failing: Option<String>,
}

/// `C_G(Q) ≤ Q` and `N_G(U) ≤ N_G(Q)` for every `1 ≠ U ≤ Z(Q)`.
pub fn is_large_in_group(
    g: &FiniteGroup,
    within: &Subgroup,
    q: &Subgroup,
) -> Result<GroupLargeness> {
    let self_centralizing = g.centralizer(within, q).is_subgroup_of(q);
    let nq = g.normalizer(within, q);
    let mut failing = None;
    for u in all_subgroups(g, &g.center(q))? {
        if !u.is_trivial() && !g.normalizer(within, &u).is_subgroup_of(&nq) {
            failing = Some(describe(g, &u));
            break;
        }
    }
    Ok(GroupLargeness {
        large: self_centralizing && failing.is_none(),
        self_centralizing,
        failing,
    })
}

/// Characteristic subgroups of `q`, as subgroups of the ambient table.
fn characteristic_in(g: &FiniteGroup, q: &Subgroup) -> Result<Vec<Subgroup>> {
    let (local, embed) = g.subgroup_as_group(q);
    Ok(characteristic_subgroups(&local)?
        .iter()
        .map(|c| g.subgroup_from_elems(&c.iter().map(|x| embed[x as usize]).collect::<Vec<_>>()))
        .collect())
}

/// `Q ⊴ F_T(H)`: `Q ⊴ T` and every morphism extends to one normalizing `Q`.
pub(super) fn normal_in_realized(
    g: &FiniteGroup,
    t: &Subgroup,
    h: &Subgroup,
    q: &Subgroup,
) -> bool {
    g.is_normal(q, t) && fusion_contained(g, t, h, t, &g.normalizer(h, q)).is_none()
}

/// A chain `1 = Q₀ ≤ … ≤ Qₙ = Q` of strongly closed subgroups with
/// `[Qᵢ, Q] ≤ Qᵢ₋₁`.
fn strongly_closed_series(
    g: &FiniteGroup,
    conj: &ConjugatesIn,
    q: &Subgroup,
    subs_of_q: &[Subgroup],
) -> bool {
    let closed: Vec<&Subgroup> = subs_of_q
        .iter()
        .filter(|x| strongly_closed_in(conj, x))
        .collect();
    let mut seen = vec![false; closed.len()];
    let start = closed
        .iter()
        .position(|x| x.is_trivial())
        .expect("trivial subgroup is strongly closed");
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        if closed[i] == q {
            return true;
        }
        for (j, y) in closed.iter().enumerate() {
            if !seen[j]
                && closed[i].is_subgroup_of(y)
                && g.commutator(y, q).is_subgroup_of(closed[i])
            {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    false
}

fn timed(f: impl FnOnce() -> Result<Option<String>>) -> Result<Verdict> {
    let start = Instant::now();
    let witness = f()?;
    Ok(Verdict {
        holds: witness.is_none(),
        witness,
        millis: start.elapsed().as_secs_f64() * 1e3,
    })
}

impl FusionSystem<'_> {
    /// `Q ⊴ F`, decided three ways that must agree.
    pub fn is_normal(&self, q: &Subgroup) -> Result<NormalityReport> {
        if !q.is_subgroup_of(&self.sylow) {
            return Err(Error::Input("Q is not a subgroup of S".into()));
        }
        let g = self.group;
        let extension = normal_in_realized(g, &self.sylow, &self.ambient, q);
        let conj = ConjugatesIn::new(g, &self.ambient, &self.sylow, q);
        let characteristic_strongly_closed = characteristic_in(g, q)?
            .iter()
            .all(|c| strongly_closed_in(&conj, c));
        let central_series = strongly_closed_series(g, &conj, q, &all_subgroups(g, q)?);
        if extension != characteristic_strongly_closed || extension != central_series {
            return Err(Error::Internal(format!(
                "normality criteria disagree: extension {extension}, characteristic {characteristic_strongly_closed}, series {central_series}"
            )));
        }
        Ok(NormalityReport {
            extension,
            characteristic_strongly_closed,
            central_series,
            normal: extension,
        })
    }

    /// Largeness of `Q` in F by definition and by the equivalent local criteria.
    pub fn is_large(&self, q: &Subgroup) -> Result<LargenessReport> {
        if !q.is_subgroup_of(&self.sylow) {
            return Err(Error::Input("Q is not a subgroup of S".into()));
        }
        let g = self.group;
        let self_centralizing = self.c_s(q).is_subgroup_of(q);
        let us: Vec<Subgroup> = all_subgroups(g, &g.center(q))?
            .into_iter()
            .filter(|u| !u.is_trivial())
            .collect();
        let fully: Vec<bool> = us.iter().map(|u| self.is_fully_normalized(u)).collect();
        let ns_q = self.n_s(q);
        let ng_q = self.n_g(q);
        let chars = characteristic_in(g, q)?;
        let subs_of_q = all_subgroups(g, q)?;

        let first_failure =
            |primed: bool, test: &dyn Fn(&Subgroup, &Subgroup, &Subgroup) -> bool| {
                us.iter()
                    .zip(&fully)
                    .filter(|&(_, &f)| f || !primed)
                    .find(|(u, _)| !test(u, &self.n_s(u), &self.n_g(u)))
                    .map(|(u, _)| describe(g, u))
            };
        let crit_i = |_: &Subgroup, t: &Subgroup, h: &Subgroup| {
            fusion_contained(g, t, h, &ns_q, &ng_q).is_none()
        };
        let crit_ii = |_: &Subgroup, t: &Subgroup, h: &Subgroup| normal_in_realized(g, t, h, q);
        let crit_iii = |_: &Subgroup, t: &Subgroup, h: &Subgroup| {
            let conj = ConjugatesIn::new(g, h, t, q);
            chars.iter().all(|c| strongly_closed_in(&conj, c))
        };
        let crit_iv = |_: &Subgroup, t: &Subgroup, h: &Subgroup| {
            strongly_closed_series(g, &ConjugatesIn::new(g, h, t, q), q, &subs_of_q)
        };

        let criteria = vec![
            (
                "i".to_string(),
                timed(|| Ok(first_failure(false, &crit_i)))?,
            ),
            (
                "ii".to_string(),
                timed(|| Ok(first_failure(false, &crit_ii)))?,
            ),
            (
                "ii'".to_string(),
                timed(|| Ok(first_failure(true, &crit_ii)))?,
            ),
            (
                "iii".to_string(),
                timed(|| Ok(first_failure(false, &crit_iii)))?,
            ),
            (
                "iii'".to_string(),
                timed(|| Ok(first_failure(true, &crit_iii)))?,
            ),
            (
                "iv".to_string(),
                timed(|| Ok(first_failure(false, &crit_iv)))?,
            ),
            (
                "iv'".to_string(),
                timed(|| Ok(first_failure(true, &crit_iv)))?,
            ),
        ];
        if self_centralizing {
            let first = criteria[0].1.holds;
            if let Some((name, _)) = criteria.iter().find(|(_, v)| v.holds != first) {
                return Err(Error::Internal(format!(
                    "largeness criterion {name} disagrees with (i)"
                )));
            }
        }
        let large = self_centralizing && criteria[0].1.holds;
        let (mut weakly_closed, mut normal_in_s) = (None, None);
        if large {
            let wc = self.is_weakly_closed(q);
            let ns = g.is_normal(q, &self.sylow);
            if !wc || !ns {
                return Err(Error::Internal(format!(
                    "large subgroup with weakly closed {wc}, normal in S {ns}"
                )));
            }
            weakly_closed = Some(wc);
            normal_in_s = Some(ns);
        }
        Ok(LargenessReport {
            self_centralizing,
            criteria,
            large,
            weakly_closed,
            normal_in_s,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::local::sylow;
    use crate::engine::models;
    use crate::fusion::tests::{el, sym4_d8};

    #[test]
    fn group_largeness_in_sym4() {
        let (g, s) = sym4_d8();
        let all = g.whole();
        let v4 = g.generate(&[el(&g, 4, "(1 2)(3 4)"), el(&g, 4, "(1 3)(2 4)")]);
        assert!(is_large_in_group(&g, &all, &v4).unwrap().large);
        let z = is_large_in_group(&g, &all, &g.center(&s)).unwrap();
        assert!(!z.large && !z.self_centralizing);
        let d8 = models::dihedral8();
        assert!(
            is_large_in_group(&d8, &d8.whole(), &d8.whole())
                .unwrap()
                .large
        );
    }

    #[test]
    fn normality_in_sym4() {
        let (g, s) = sym4_d8();
        let f = FusionSystem::new(&g, &g.whole(), &s, 2).unwrap();
        let v4 = g.generate(&[el(&g, 4, "(1 2)(3 4)"), el(&g, 4, "(1 3)(2 4)")]);
        assert!(f.is_normal(&v4).unwrap().normal);
        assert!(!f.is_normal(&g.center(&s)).unwrap().normal);
        assert!(!f.is_normal(&s).unwrap().normal);
        assert!(f.is_normal(&g.trivial()).unwrap().normal);
        let d8 = models::dihedral8();
        let fp = FusionSystem::new(&d8, &d8.whole(), &d8.whole(), 2).unwrap();
        assert!(fp.is_normal(&d8.whole()).unwrap().normal);
    }

    #[test]
    fn largeness_in_sym4() {
        let (g, s) = sym4_d8();
        let f = FusionSystem::new(&g, &g.whole(), &s, 2).unwrap();
        let v4 = g.generate(&[el(&g, 4, "(1 2)(3 4)"), el(&g, 4, "(1 3)(2 4)")]);
        let r = f.is_large(&v4).unwrap();
        assert!(r.large && r.criteria.iter().all(|(_, v)| v.holds));
        assert_eq!(r.weakly_closed, Some(true));
        let r = f.is_large(&g.center(&s)).unwrap();
        assert!(!r.large && !r.self_centralizing);
        let d8 = models::dihedral8();
        let fp = FusionSystem::new(&d8, &d8.whole(), &d8.whole(), 2).unwrap();
        assert!(fp.is_large(&d8.whole()).unwrap().large);
    }

    #[test]
    fn fusion_large_but_not_group_large() {
        let g = models::sym4_times_c3();
        let all = g.whole();
        let s = sylow(&g, &all, 2);
        let f = FusionSystem::new(&g, &all, &s, 2).unwrap();
        let q = crate::engine::local::o_p(&g, &all, 2);
        assert_eq!(q.order(), 4);
        let gl = is_large_in_group(&g, &all, &q).unwrap();
        assert!(!gl.large && !gl.self_centralizing);
        assert!(f.is_large(&q).unwrap().large);
    }

    #[test]
    fn sl32_four_groups_are_large() {
        let g = models::sl32_on_7();
        let all = g.whole();
        let s = sylow(&g, &all, 2);
        let f = FusionSystem::new(&g, &all, &s, 2).unwrap();
        let mut count = 0;
        for q in all_subgroups(&g, &s).unwrap() {
            if q.order() == 4 && g.is_elementary_abelian(&q, 2) {
                assert!(is_large_in_group(&g, &all, &q).unwrap().large);
                assert!(f.is_large(&q).unwrap().large);
                count += 1;
            }
        }
        assert_eq!(count, 2);
        assert!(!f.is_large(&g.center(&s)).unwrap().large);
    }
}
