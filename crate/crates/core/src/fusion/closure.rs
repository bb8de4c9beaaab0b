//! Element fusion and containment between realized fusion systems.

use std::collections::{HashMap, HashSet};

use crate::engine::{Elem, FiniteGroup, Subgroup};

/// For each element `x` of a subgroup `X ≤ T`: the `H`-conjugates of `x`
/// that lie in `T`. These are exactly the images of `x` under morphisms of
/// `F_T(H)`.
pub struct ConjugatesIn {
    images: HashMap<Elem, Vec<Elem>>,
}

impl ConjugatesIn {
    pub fn new(g: &FiniteGroup, h: &Subgroup, t: &Subgroup, x: &Subgroup) -> Self {
        let mut images = HashMap::new();
        for class in g.conjugacy_classes(h, x) {
            let inside: Vec<Elem> = class.iter().copied().filter(|&y| t.contains(y)).collect();
            for &y in &class {
                if x.contains(y) {
                    images.insert(y, inside.clone());
                }
            }
        }
        ConjugatesIn { images }
    }

    pub fn of(&self, x: Elem) -> &[Elem] {
        &self.images[&x]
    }
}

/// `X` is strongly closed: every fused image of an element of `X` stays in `X`.
/// `conj` must have been built for a subgroup containing `X`.
pub fn strongly_closed_in(conj: &ConjugatesIn, x: &Subgroup) -> bool {
    x.iter().all(|a| conj.of(a).iter().all(|&b| x.contains(b)))
}

/// Is `F_A(H) ⊆ F_B(K)`? Returns `None` if so, else an element `h ∈ H`
/// whose conjugation map (on the largest subgroup of `A` it carries into `A`)
/// is not realized by `K`.
///
/// Every morphism of `F_A(H)` is a restriction of `c_h` on `A ∩ A^{h⁻¹}`, so
/// it suffices to match those maximal maps.
pub fn fusion_contained(
    g: &FiniteGroup,
    a: &Subgroup,
    h: &Subgroup,
    b: &Subgroup,
    k: &Subgroup,
) -> Option<Elem> {
    fusion_contained_elems(g, a, &h.elems(), b, &k.elems())
}

/// [`fusion_contained`] for arbitrary element sets, such as normalizers in a
/// locality.
pub fn fusion_contained_elems(
    g: &FiniteGroup,
    a: &Subgroup,
    h: &[Elem],
    b: &Subgroup,
    k: &[Elem],
) -> Option<Elem> {
    if !a.is_subgroup_of(b) {
        return Some(0);
    }
    let a_elems = a.elems();
    let k_set: HashSet<Elem> = k.iter().copied().collect();
    let mut checked: HashSet<Vec<(Elem, Elem)>> = HashSet::new();
    for &x in h {
        if k_set.contains(&x) {
            continue;
        }
        let domain: Vec<(Elem, Elem)> = a_elems
            .iter()
            .filter_map(|&y| Some((y, g.conj(y, x))).filter(|&(_, z)| a.contains(z)))
            .collect();
        if checked.contains(&domain) {
            continue;
        }
        if !k
            .iter()
            .any(|&c| domain.iter().all(|&(y, z)| g.conj(y, c) == z))
        {
            return Some(x);
        }
        checked.insert(domain);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::tests::{el, sym4_d8};

    #[test]
    fn strong_closure_in_sym4() {
        let (g, s) = sym4_d8();
        let all = g.whole();
        let conj = ConjugatesIn::new(&g, &all, &s, &s);
        let v4 = g.generate(&[el(&g, 4, "(1 2)(3 4)"), el(&g, 4, "(1 3)(2 4)")]);
        assert!(strongly_closed_in(&conj, &v4));
        assert!(strongly_closed_in(&conj, &s));
        assert!(!strongly_closed_in(&conj, &g.center(&s)));
        assert!(strongly_closed_in(&conj, &g.trivial()));
    }

    #[test]
    fn containment_of_normalizer_systems() {
        let (g, s) = sym4_d8();
        let all = g.whole();
        let v4 = g.generate(&[el(&g, 4, "(1 2)(3 4)"), el(&g, 4, "(1 3)(2 4)")]);
        let z = g.center(&s);
        // F_S(S) ⊆ F_S(G) but not conversely.
        assert!(fusion_contained(&g, &s, &s, &s, &all).is_none());
        assert!(fusion_contained(&g, &s, &all, &s, &s).is_some());
        // N_F(Z) = F_S(S) ⊆ N_F(V4) = F.
        assert!(fusion_contained(
            &g,
            &s,
            &g.normalizer(&all, &z),
            &s,
            &g.normalizer(&all, &v4)
        )
        .is_none());
        // F_S(G) ⊆ F_S(N_G(V4)) as V4 is normal.
        assert!(fusion_contained(&g, &s, &all, &s, &g.normalizer(&all, &v4)).is_none());
    }

    #[test]
    fn containment_matches_brute_hom_sets() {
        // Compare with explicit hom-set inclusion over all pairs of subgroups.
        let (g, s) = sym4_d8();
        let all = g.whole();
        let subs = crate::engine::lattice::all_subgroups(&g, &s).unwrap();
        for kk in crate::engine::lattice::all_subgroups(&g, &all).unwrap() {
            if !s.is_subgroup_of(&kk) {
                continue;
            }
            let mut brute = true;
            'outer: for p in &subs {
                for q in &subs {
                    let maps = |grp: &Subgroup| -> std::collections::BTreeSet<Vec<Elem>> {
                        g.transporter_into(grp, p, q)
                            .into_iter()
                            .map(|x| p.gens().iter().map(|&a| g.conj(a, x)).collect())
                            .collect()
                    };
                    if !maps(&all).is_subset(&maps(&kk)) {
                        brute = false;
                        break 'outer;
                    }
                }
            }
            assert_eq!(fusion_contained(&g, &s, &all, &s, &kk).is_none(), brute);
        }
    }
}
