//! Checks over a single locality, shared by the property tests and the
//! acceptance runner. Each returns the number of cases examined.

use std::collections::HashSet;

use fusionloc::engine::lattice::all_subgroups;
use fusionloc::engine::local::is_characteristic_p;
use fusionloc::engine::{Elem, Subgroup};
use fusionloc::locality::Locality;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<usize, String>;

fn label(l: &Locality, p: &Subgroup) -> String {
    fusionloc::fusion::describe(l.group(), p)
}

/// Image tuples of `A`'s generators under single elements of `xs`, kept
/// when they land in `target`.
fn images(l: &Locality, a: &Subgroup, xs: &[Elem], target: &Subgroup) -> HashSet<Vec<Elem>> {
    let g = l.group();
    xs.iter()
        .filter(|&&x| a.gens().iter().all(|&y| target.contains(g.conj(y, x))))
        .map(|&x| a.gens().iter().map(|&y| g.conj(y, x)).collect())
        .collect()
}

/// Image tuples of `A`'s generators under composites of conjugation maps by
/// elements of `xs`, every intermediate image staying inside `target`.
fn composite_images(
    l: &Locality,
    a: &Subgroup,
    xs: &[Elem],
    target: &Subgroup,
) -> HashSet<Vec<Elem>> {
    let g = l.group();
    let start = a.gens().to_vec();
    let mut seen = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    while let Some(t) = frontier.pop() {
        for &x in xs {
            let next: Vec<Elem> = t.iter().map(|&y| g.conj(y, x)).collect();
            if next.iter().all(|&y| target.contains(y)) && seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen
}

/// `F_{N_S(P)}(N_L(P)) = N_F(P)` on every pair of subgroups of `N_S(P)`,
/// for objects and for nontrivial weakly closed `P`. `N_F(P)` is realized
/// by `N_G(P)`.
pub fn normalizer_fusion(l: &Locality) -> Outcome {
    let f = &l.fusion;
    let subs = f.subgroups().map_err(|e| e.to_string())?;
    let mut count = 0;
    for p in subs {
        if p.is_trivial() || !(l.objects.contains(p) || f.is_weakly_closed(p)) {
            continue;
        }
        let ns = f.n_s(p);
        let n_l = l.normalizer(p);
        let n_g = f.n_g(p).elems();
        for a in subs.iter().filter(|a| a.is_subgroup_of(&ns)) {
            if composite_images(l, a, &n_l, &ns) != images(l, a, &n_g, &ns) {
                return Err(format!(
                    "N_L({}) misses a morphism on {}",
                    label(l, p),
                    label(l, a)
                ));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// `hyp(F) = O^p(L) ∩ S`.
pub fn hyperfocal_residual(l: &Locality) -> Outcome {
    let g = l.group();
    let hyp = l.fusion.hyperfocal_focal().map_err(|e| e.to_string())?.hyp;
    let residual: Vec<Elem> = l
        .o_up_p()
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|&x| l.sylow().contains(x))
        .collect();
    let meet = g.subgroup_from_elems(&residual);
    if meet.order() != residual.len() || meet != hyp {
        return Err(format!(
            "hyp(F) = {}, O^p(L) ∩ S = {}",
            label(l, &hyp),
            label(l, &meet)
        ));
    }
    Ok(1)
}

/// `N_L(P)` has characteristic p for every object `P`.
pub fn objective_characteristic(l: &Locality) -> bool {
    let g = l.group();
    l.objects.members().iter().all(|p| {
        let n = g.subgroup_from_elems(&l.normalizer(p));
        is_characteristic_p(g, &n, l.fusion.p)
    })
}

/// Every nontrivial subgroup of `C_S(Q)` is an object.
pub fn is_replete(l: &Locality, q: &Subgroup) -> Result<bool, String> {
    let g = l.group();
    Ok(all_subgroups(g, &l.fusion.c_s(q))
        .map_err(|e| e.to_string())?
        .iter()
        .all(|p| p.is_trivial() || l.objects.contains(p)))
}

/// Largeness in `L` against largeness in `F_S(L) = F_S(G)`, in the three
/// directions available: replete, replete of objective characteristic p,
/// and linking. `Ok(0)` when `F_S(L)` differs from `F_S(G)`.
pub fn large_round_trip(l: &Locality) -> Outcome {
    let f = &l.fusion;
    if l.fusion_gap().map_err(|e| e.to_string())?.is_some() {
        return Ok(0);
    }
    let objective = objective_characteristic(l);
    let cr_inside = f
        .class_list()
        .map_err(|e| e.to_string())?
        .iter()
        .filter(|c| f.is_centric(&c[0]) && f.is_radical(&c[0]))
        .all(|c| c.iter().all(|p| l.objects.contains(p)));
    let linking = objective && cr_inside;
    let centric_inside = f
        .class_list()
        .map_err(|e| e.to_string())?
        .iter()
        .filter(|c| f.is_centric(&c[0]))
        .all(|c| c.iter().all(|p| l.objects.contains(p)));
    let mut count = 0;
    for q in f.subgroups().map_err(|e| e.to_string())? {
        let in_l = l.is_large_in_locality(q).map_err(|e| e.to_string())?.large;
        let in_f = f.is_large(q).map_err(|e| e.to_string())?.large;
        let replete = is_replete(l, q)?;
        let bad = (replete && in_l && !(in_f && centric_inside))
            || (replete && objective && in_l != in_f)
            || (linking && in_f && !in_l);
        if bad {
            return Err(format!(
                "{}: large in L {in_l}, in F {in_f}, replete {replete}, objective {objective}",
                label(l, q)
            ));
        }
        count += usize::from(replete && objective);
    }
    Ok(count)
}

/// Some `P₀ ∈ Δ` with `P_{i-1} ≤ S_{f_i}` and `P_{i-1}^{f_i} ∈ Δ`.
fn chain_exists(l: &Locality, s_of: &[Subgroup], w: &[usize]) -> bool {
    let g = l.group();
    let elems = l.elements();
    l.objects.members().iter().any(|p0| {
        let mut p = p0.clone();
        for &i in w {
            if !p.is_subgroup_of(&s_of[i]) {
                return false;
            }
            p = g.conj_subgroup(&p, elems[i]);
            if !l.objects.contains(&p) {
                return false;
            }
        }
        true
    })
}

fn words(n: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n * n * n <= 30_000 {
        for a in 0..n {
            out.push(vec![a]);
            for b in 0..n {
                out.push(vec![a, b]);
                for c in 0..n {
                    out.push(vec![a, b, c]);
                }
            }
        }
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out.extend((0..n).map(|a| vec![a]));
    for len in 2..=3 {
        for _ in 0..4000 {
            out.push((0..len).map(|_| rng.gen_range(0..n)).collect());
        }
    }
    out
}

/// The `X_w` domain test against a brute-force chain search, plus the shape
/// of the returned chain. Exhaustive up to length 3 when `|L|³ ≤ 30000`,
/// else every length-one word and 4000 seeded samples per longer length.
pub fn domain_matches_chains(l: &Locality, seed: u64) -> Outcome {
    let g = l.group();
    let elems = l.elements();
    let s_of: Vec<Subgroup> = elems
        .iter()
        .map(|&f| l.s_f(f).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let all = words(elems.len(), seed);
    for w in &all {
        let word: Vec<Elem> = w.iter().map(|&i| elems[i]).collect();
        let got = l.domain_check(&word).map_err(|e| e.to_string())?;
        if got.is_some() != chain_exists(l, &s_of, w) {
            return Err(format!("domain disagrees on {word:?}"));
        }
        if let Some(d) = got {
            let ok = d.chain.len() == word.len() + 1
                && d.chain[0] == d.x_w
                && d.chain.iter().all(|p| l.objects.contains(p))
                && word.iter().enumerate().all(|(i, &f)| {
                    d.chain[i].is_subgroup_of(&s_of[w[i]])
                        && g.conj_subgroup(&d.chain[i], f) == d.chain[i + 1]
                });
            if !ok {
                return Err(format!("bad chain for {word:?}"));
            }
        }
    }
    Ok(all.len())
}

/// Every element factors through object normalizers and multiplies back.
pub fn alperin_everywhere(l: &Locality) -> Outcome {
    let g = l.group();
    for &x in l.elements() {
        let fac = l.alperin_factorize(x).map_err(|e| e.to_string())?;
        fac.validate(l).map_err(|e| e.to_string())?;
        let word: Vec<Elem> = fac.factors.iter().map(|(y, _)| *y).collect();
        if !l.in_domain(&word) || g.product(&word) != x {
            return Err(format!("factors of {} do not multiply back", g.label(x)));
        }
    }
    Ok(l.len())
}
