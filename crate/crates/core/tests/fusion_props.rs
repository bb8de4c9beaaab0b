mod common;

use common::{corpus, Instance};
use fusionloc::engine::lattice::all_subgroups;
use fusionloc::engine::local::{frattini, is_characteristic_p, o_p};
use fusionloc::engine::Subgroup;
use fusionloc::fusion::has_strongly_p_embedded_brute;
use fusionloc::fusion::{is_large_in_group, FusionSystem};

fn nontrivial_central(inst: &Instance, q: &Subgroup) -> Vec<Subgroup> {
    let g = &inst.group;
    all_subgroups(g, &g.center(q))
        .unwrap()
        .into_iter()
        .filter(|u| !u.is_trivial())
        .collect()
}

fn large_in(f: &FusionSystem) -> Vec<Subgroup> {
    f.subgroups()
        .unwrap()
        .iter()
        .filter(|q| f.is_large(q).unwrap().large)
        .cloned()
        .collect()
}

#[test]
fn largeness_criteria_agree_everywhere() {
    for inst in corpus() {
        let f = inst.fusion();
        for q in f.subgroups().unwrap() {
            let r = f.is_large(q).unwrap();
            if r.self_centralizing {
                let first = r.criteria[0].1.holds;
                assert!(
                    r.criteria.iter().all(|(_, v)| v.holds == first),
                    "{}: {:?}",
                    inst.name,
                    r.criteria
                );
            }
        }
    }
}

#[test]
fn large_subgroups_of_fusion_systems() {
    let mut hits = 0;
    for inst in corpus() {
        let g = &inst.group;
        let f = inst.fusion();
        let large = large_in(&f);
        for q in &large {
            hits += 1;
            assert!(g.is_normal(q, &f.sylow), "{}", inst.name);
            assert!(f.is_weakly_closed(q) && f.is_fully_normalized(q));

            let nf = f.normalizer_subsystem(q).unwrap();
            let bullet = nf.o_p().unwrap();
            assert!(q.is_subgroup_of(&bullet));
            assert!(f.is_large(&bullet).unwrap().large, "{}", inst.name);

            for u in nontrivial_central(&inst, q) {
                let local = f.largest_normal_p_subgroup(&f.n_s(&u), &f.n_g(&u)).unwrap();
                assert!(q.is_subgroup_of(&local), "{}", inst.name);
                if f.is_fully_normalized(&u) {
                    let nu = f.normalizer_subsystem(&u).unwrap();
                    assert!(nu.is_normal(q).unwrap().normal, "{}", inst.name);
                }
            }

            for r in &large {
                assert!(f.is_large(&g.join(q, r)).unwrap().large, "{}", inst.name);
            }
        }
    }
    assert!(hits > 0);
}

#[test]
fn group_large_implies_fusion_large_and_parabolic_structure() {
    for inst in corpus() {
        let g = &inst.group;
        let all = g.whole();
        let f = inst.fusion();
        for q in f.subgroups().unwrap() {
            if !is_large_in_group(g, &all, q).unwrap().large {
                continue;
            }
            assert!(f.is_large(q).unwrap().large, "{}", inst.name);
            for p in f.subgroups().unwrap() {
                if !p.is_trivial() && q.gens().iter().all(|&x| g.normalizes(x, p)) {
                    assert!(
                        is_characteristic_p(g, &f.n_g(p), inst.p),
                        "{}: N_G(P) not of characteristic p",
                        inst.name
                    );
                }
            }
            assert!(f.parabolic_characteristic().unwrap(), "{}", inst.name);
        }
    }
}

#[test]
fn fusion_large_without_group_large() {
    let inst = common::small_corpus()
        .into_iter()
        .find(|i| i.name == "Sym4 x C3")
        .unwrap();
    let g = &inst.group;
    let f = inst.fusion();
    let q = o_p(g, &g.whole(), 2);
    assert_eq!(q.order(), 4);
    assert!(f.is_large(&q).unwrap().large);
    let gl = is_large_in_group(g, &g.whole(), &q).unwrap();
    assert!(!gl.large && !gl.self_centralizing);
}

#[test]
fn some_conjugate_has_fully_normalized_centre() {
    for inst in corpus() {
        let g = &inst.group;
        let f = inst.fusion();
        for r in f.subgroups().unwrap() {
            let z = g.center(r);
            let m = f.fully_normalize(&z);
            assert!(r.is_subgroup_of(&m.source));
            let r2 = g.conj_subgroup(r, m.witness);
            assert!(r2.is_subgroup_of(&f.sylow));
            assert_eq!(g.center(&r2), g.conj_subgroup(&z, m.witness));
            assert!(m.image(g).is_subgroup_of(&f.sylow));
            assert!(f.is_fully_normalized(&g.center(&r2)), "{}", inst.name);
        }
    }
}

#[test]
fn fully_normalized_conjugates_stay_central() {
    for inst in corpus() {
        let g = &inst.group;
        let f = inst.fusion();
        for q in f.subgroups().unwrap() {
            if !f.is_weakly_closed(q) {
                continue;
            }
            let zq = g.center(q);
            for u in nontrivial_central(&inst, q) {
                for v in f.f_class(&u) {
                    if f.is_fully_normalized(&v) {
                        assert!(v.is_subgroup_of(&zq), "{}", inst.name);
                    }
                }
            }
        }
    }
}

#[test]
fn out_acts_faithfully_on_frattini_quotient() {
    for inst in corpus() {
        let g = &inst.group;
        let f = inst.fusion();
        for class in f.class_list().unwrap() {
            let r = &class[0];
            if !(f.is_centric(r) && f.is_radical(r)) {
                continue;
            }
            let phi = frattini(g, r).unwrap();
            let inner = g.join(r, &f.c_g(r));
            for x in f.n_g(r).iter() {
                let trivial = r
                    .gens()
                    .iter()
                    .all(|&a| phi.contains(g.mul(g.inv(a), g.conj(a, x))));
                if trivial {
                    assert!(inner.contains(x), "{}", inst.name);
                }
            }
        }
    }
}

#[test]
fn essential_subgroups_are_centric_and_radical() {
    for inst in corpus() {
        let g = &inst.group;
        let f = inst.fusion();
        let essentials = f.essential_subgroups().unwrap();
        for r in &essentials {
            for x in f.ambient.iter() {
                let r2 = g.conj_subgroup(r, x);
                if r2.is_subgroup_of(&f.sylow) {
                    assert!(g.centralizer(&f.sylow, &r2).is_subgroup_of(&r2));
                }
            }
            let out = f.out_group(r);
            assert!(
                o_p(&out, &out.whole(), inst.p).is_trivial(),
                "{}",
                inst.name
            );
        }
        for class in f.class_list().unwrap() {
            let r = class.iter().find(|r| f.is_fully_normalized(r)).unwrap();
            if !f.is_centric(r) {
                continue;
            }
            let out = f.out_group(r);
            let brute = has_strongly_p_embedded_brute(&out, &out.whole(), inst.p).unwrap();
            assert_eq!(essentials.contains(r), brute, "{}", inst.name);
        }
    }
}
