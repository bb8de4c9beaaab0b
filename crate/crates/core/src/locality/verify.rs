//! Axiom verification and structural flags for localities.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Locality;
use crate::caps::Caps;
use crate::engine::lattice::all_subgroups;
use crate::engine::local::{is_characteristic_p, is_p_subgroup, quotient_has_trivial_o_p};
use crate::engine::{Elem, Subgroup};
use crate::error::{Error, Result};
use crate::fusion::{describe, fusion_contained_elems};
use crate::report::ReportNode;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Longest word checked against the partial-group axioms.
    pub word_cap: usize,
    /// Enumerate every word when `Σ |L|^i` stays below this.
    pub exhaustive_limit: usize,
    /// Words per length when sampling.
    pub samples: usize,
    pub seed: u64,
    /// Largest `|Δ|` for the brute-force chain search.
    pub chain_limit: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            word_cap: 3,
            exhaustive_limit: 250_000,
            samples: 20_000,
            seed: 0x5eed,
            chain_limit: 64,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LocalityLargeness {
    pub large: bool,
    /// `C_L(Q) ⊆ Q`.
    pub self_centralizing: bool,
    /// An element of `C_L(Q)` outside `Q`.
    pub centralizer_escape: Option<Elem>,
    /// Some `1 ≠ U ≤ Z(Q)` and `f ∈ N_L(U) ∖ N_L(Q)`.
    pub normalizer_escape: Option<(Subgroup, Elem)>,
}

/// `F_S(L)` computed by closing generator tuples under the maps `c_f : S_f → S`.
pub struct LocalityFusion {
    /// Classes of subgroups of `S` under `F_S(L)`, in canonical order.
    pub classes: Vec<Vec<Subgroup>>,
    /// `F_S(L)`-centric and radical, per class.
    pub centric: Vec<bool>,
    pub radical: Vec<bool>,
}

impl LocalityFusion {
    pub fn centric_radical(&self) -> Vec<Subgroup> {
        let mut out: Vec<Subgroup> = (0..self.classes.len())
            .filter(|&i| self.centric[i] && self.radical[i])
            .flat_map(|i| self.classes[i].iter().cloned())
            .collect();
        out.sort();
        out
    }
}

fn word_label(l: &Locality, w: &[Elem]) -> String {
    let g = l.group();
    format!(
        "({})",
        w.iter().map(|&x| g.label(x)).collect::<Vec<_>>().join(", ")
    )
}

impl Locality<'_> {
    fn words(&self, opts: &VerifyOptions) -> (Vec<Vec<Elem>>, bool) {
        let n = self.len();
        let mut total = 0usize;
        let mut power = 1usize;
        for _ in 0..opts.word_cap {
            power = power.saturating_mul(n);
            total = total.saturating_add(power);
        }
        let mut out = vec![Vec::new()];
        if total <= opts.exhaustive_limit {
            let mut layer: Vec<Vec<Elem>> = vec![Vec::new()];
            for _ in 0..opts.word_cap {
                layer = layer
                    .iter()
                    .flat_map(|w| {
                        self.elements().iter().map(move |&f| {
                            let mut next = w.clone();
                            next.push(f);
                            next
                        })
                    })
                    .collect();
                out.extend(layer.iter().cloned());
            }
            return (out, true);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for len in 1..=opts.word_cap {
            for _ in 0..opts.samples {
                out.push(
                    (0..len)
                        .map(|_| self.elements()[rng.gen_range(0..n)])
                        .collect(),
                );
            }
        }
        (out, false)
    }

    /// Some `P₀ ∈ Δ` with `P_{i-1} ≤ S_{f_i}` and `P_i = P_{i-1}^{f_i} ∈ Δ`.
    fn chain_exists(&self, w: &[Elem]) -> bool {
        let g = self.group();
        self.objects.members().iter().any(|p0| {
            let mut p = p0.clone();
            for &f in w {
                if !p.bits().is_subset(&self.s_of[&f]) {
                    return false;
                }
                p = g.conj_subgroup(&p, f);
                if !self.objects.contains(&p) {
                    return false;
                }
            }
            true
        })
    }

    /// The first axiom violation on `w`, by axiom number.
    fn axiom_violation(&self, w: &[Elem]) -> Option<(usize, String)> {
        let g = self.group();
        if w.len() == 1 && !self.in_domain(w) {
            return Some((1, "length-one word outside D".into()));
        }
        if !self.in_domain(w) {
            return None;
        }
        for i in 0..=w.len() {
            if !self.in_domain(&w[..i]) || !self.in_domain(&w[i..]) {
                return Some((2, format!("split at {i} leaves D")));
            }
        }
        let total = g.product(w);
        if !self.contains(total) {
            return Some((3, "product outside L".into()));
        }
        for i in 0..w.len() {
            for j in i + 1..=w.len() {
                let mut spliced = w[..i].to_vec();
                spliced.push(g.product(&w[i..j]));
                spliced.extend_from_slice(&w[j..]);
                if !self.in_domain(&spliced) || g.product(&spliced) != total {
                    return Some((3, format!("collapsing positions {i}..{j} breaks D or Π")));
                }
            }
        }
        let mut inverse: Vec<Elem> = w.iter().rev().map(|&f| g.inv(f)).collect();
        inverse.extend_from_slice(w);
        if !self.in_domain(&inverse) || g.product(&inverse) != 0 {
            return Some((4, "w⁻¹∘w outside D or Π ≠ 1".into()));
        }
        None
    }

    /// Checks the partial-group axioms on words up to `word_cap`, the three
    /// locality axioms, and `S_g ∈ Δ` for every `g`.
    pub fn verify_locality(&self, opts: &VerifyOptions) -> Result<ReportNode> {
        let g = self.group();
        let (words, exhaustive) = self.words(opts);

        let axioms = ReportNode::timed(|| {
            let mut first: [Option<String>; 4] = Default::default();
            for w in &words {
                if let Some((k, why)) = self.axiom_violation(w) {
                    first[k - 1].get_or_insert_with(|| format!("{} {why}", word_label(self, w)));
                }
            }
            let names = [
                "(1) words of length one",
                "(2) subwords",
                "(3) products",
                "(4) inverses",
            ];
            let mut node = ReportNode::group(
                "partial group axioms",
                names
                    .iter()
                    .zip(first)
                    .map(|(name, bad)| match bad {
                        Some(w) => ReportNode::fail(*name, w),
                        None => ReportNode::pass(*name),
                    })
                    .collect(),
            );
            let mode = if exhaustive { "exhaustive" } else { "sampled" };
            node.witness = Some(format!(
                "{} words up to length {}, {mode}",
                words.len(),
                opts.word_cap
            ));
            node
        });

        let l1 = ReportNode::timed(|| {
            let s = self.sylow();
            let bigger = self
                .normalizer(s)
                .into_iter()
                .filter(|&x| !s.contains(x))
                .find(|&x| {
                    let mut gens = s.gens().to_vec();
                    gens.push(x);
                    is_p_subgroup(&g.generate(&gens), self.fusion.p)
                });
            match bigger {
                Some(x) => ReportNode::fail(
                    "(L1) S maximal among p-subgroups of L",
                    format!("<S, {}> is a p-group", g.label(x)),
                ),
                None => ReportNode::pass("(L1) S maximal among p-subgroups of L"),
            }
        });

        let l2 = ReportNode::timed(|| {
            let name = "(L2) D equals the words admitting a chain in Δ";
            if self.objects.len() > opts.chain_limit {
                return ReportNode::skipped(
                    name,
                    format!("|Δ| = {} exceeds chain search limit", self.objects.len()),
                );
            }
            match words
                .iter()
                .find(|w| self.in_domain(w) != self.chain_exists(w))
            {
                Some(w) => ReportNode::fail(name, word_label(self, w)),
                None => ReportNode::pass(name),
            }
        });

        let defect = self.objects.closure_defect(&self.fusion)?;
        let l3 = match defect {
            Some(d) => ReportNode::fail("(L3) Δ closed under conjugates and overgroups", d),
            None => ReportNode::pass("(L3) Δ closed under conjugates and overgroups"),
        };

        let s_g = match self
            .elements()
            .iter()
            .find(|&&f| !self.objects.contains_bits(&self.s_of[&f]))
        {
            Some(&f) => ReportNode::fail("S_g in Δ", g.label(f)),
            None => ReportNode::pass("S_g in Δ"),
        };

        let functorial = ReportNode::timed(|| {
            let bad = words.iter().filter(|w| self.in_domain(w)).find(|w| {
                let x_w = g.subgroup_from_set(self.x_w_bits(w));
                let total = g.product(w);
                x_w.gens()
                    .iter()
                    .any(|&x| w.iter().fold(x, |y, &f| g.conj(y, f)) != g.conj(x, total))
            });
            match bad {
                Some(w) => ReportNode::fail("conjugation functorial on X_w", word_label(self, w)),
                None => ReportNode::pass("conjugation functorial on X_w"),
            }
        });

        Ok(ReportNode::group(
            "locality axioms",
            vec![axioms, l1, l2, l3, s_g, functorial],
        ))
    }

    /// Every gen-image tuple reachable from `P` under the maps `c_f`, with
    /// an ambient element realizing it.
    fn reachable(&self, p: &Subgroup, caps: &Caps) -> Result<HashMap<Vec<Elem>, Elem>> {
        let g = self.group();
        let start = p.gens().to_vec();
        let mut seen = HashMap::from([(start.clone(), 0)]);
        let mut queue = VecDeque::from([(start, 0)]);
        while let Some((state, w)) = queue.pop_front() {
            for &f in self.elements() {
                let dom = &self.s_of[&f];
                if !state.iter().all(|&a| dom.contains(a as usize)) {
                    continue;
                }
                let next: Vec<Elem> = state.iter().map(|&a| g.conj(a, f)).collect();
                if !seen.contains_key(&next) {
                    let wf = g.mul(w, f);
                    seen.insert(next.clone(), wf);
                    Caps::check(caps.closure, seen.len(), "closure")?;
                    queue.push_back((next, wf));
                }
            }
        }
        Ok(seen)
    }

    /// `F_S(L)` with its centric and radical classes.
    pub fn fusion_of_locality(&self) -> Result<LocalityFusion> {
        let g = self.group();
        let f = &self.fusion;
        let caps = Caps::global();
        let mut assigned: HashSet<FixedBitSet> = HashSet::new();
        let (mut classes, mut centric, mut radical) = (Vec::new(), Vec::new(), Vec::new());
        for p in f.subgroups()? {
            if assigned.contains(p.bits()) {
                continue;
            }
            let reach = self.reachable(p, &caps)?;
            let mut class: Vec<Subgroup> = reach.values().map(|&w| g.conj_subgroup(p, w)).collect();
            class.sort();
            class.dedup();
            let cg = f.c_g(p);
            let mut autos: Vec<Elem> = cg.gens().to_vec();
            autos.extend(reach.values().copied().filter(|&w| g.normalizes(w, p)));
            let m = g.generate(&autos);
            let inner = g.join(p, &cg);
            centric.push(class.iter().all(|q| f.c_s(q).is_subgroup_of(q)));
            radical.push(quotient_has_trivial_o_p(g, &m, &inner, f.p));
            assigned.extend(class.iter().map(|q| q.bits().clone()));
            classes.push(class);
        }
        Ok(LocalityFusion {
            classes,
            centric,
            radical,
        })
    }

    /// A subgroup `P` and a morphism `c_x` of `F_S(G)` on `P` that is not in
    /// `F_S(L)`, if any.
    pub fn fusion_gap(&self) -> Result<Option<(Subgroup, Elem)>> {
        let g = self.group();
        let f = &self.fusion;
        let caps = Caps::global();
        for class in f.class_list()? {
            let p = &class[0];
            let reach = self.reachable(p, &caps)?;
            for m in f.hom_set(p, &f.sylow) {
                let images: Vec<Elem> = p.gens().iter().map(|&a| g.conj(a, m.witness)).collect();
                if !reach.contains_key(&images) {
                    return Ok(Some((p.clone(), m.witness)));
                }
            }
        }
        Ok(None)
    }

    /// Objective characteristic `p`, `F_S(L) = F_S(G)`, saturation, linking,
    /// and with `Q` given, `Q`-repleteness and largeness of `Q` in `L`.
    pub fn locality_flags(&self, q: Option<&Subgroup>) -> Result<ReportNode> {
        let g = self.group();
        let f = &self.fusion;
        let mut nodes = Vec::new();

        let not_char_p =
            self.objects.members().iter().find(|p| {
                !is_characteristic_p(g, &g.subgroup_from_elems(&self.normalizer(p)), f.p)
            });
        let objective = not_char_p.is_none();
        nodes.push(match not_char_p {
            Some(p) => ReportNode::fail(
                "objective characteristic p",
                format!("N_L({}) is not of characteristic p", describe(g, p)),
            ),
            None => ReportNode::pass("objective characteristic p"),
        });

        let gap = self.fusion_gap()?;
        let equals_g = gap.is_none();
        nodes.push(ReportNode::timed(|| match &gap {
            Some((p, x)) => ReportNode::fail(
                "F_S(L) = F_S(G)",
                format!("c_{} on {} is missing", g.label(*x), describe(g, p)),
            ),
            None => ReportNode::pass("F_S(L) = F_S(G)"),
        }));

        let n_s = f.n_g(&f.sylow);
        let saturated = if equals_g {
            Some("equals F_S(G)")
        } else if fusion_contained_elems(g, &f.sylow, self.elements(), &f.sylow, &n_s.elems())
            .is_none()
        {
            Some("equals F_S(N_G(S))")
        } else {
            None
        };
        nodes.push(match saturated {
            Some(why) => ReportNode::leaf("F_S(L) saturated", true, Some(why.into())),
            None => {
                ReportNode::skipped("F_S(L) saturated", "not equal to a realized fusion system")
            }
        });

        let lf = self.fusion_of_locality()?;
        let missing_cr = lf
            .centric_radical()
            .into_iter()
            .find(|p| !self.objects.contains(p));
        nodes.push(match (saturated, &missing_cr) {
            (None, _) => ReportNode::skipped("linking", "saturation of F_S(L) undecided"),
            (Some(_), Some(p)) => ReportNode::fail(
                "linking",
                format!("{} in F_S(L)^cr is not an object", describe(g, p)),
            ),
            (Some(_), None) if !objective => {
                ReportNode::fail("linking", "not of objective characteristic p")
            }
            (Some(_), None) => ReportNode::pass("linking"),
        });
        let mut g_cr = Vec::new();
        for class in f.class_list()? {
            if f.is_centric(&class[0]) && f.is_radical(&class[0]) {
                g_cr.extend(class);
            }
        }
        nodes.push(match g_cr.iter().find(|p| !self.objects.contains(p)) {
            Some(p) => ReportNode::fail("F_S(G)^cr contained in Δ", describe(g, p)),
            None => ReportNode::pass("F_S(G)^cr contained in Δ"),
        });

        if let Some(q) = q {
            if !q.is_subgroup_of(&f.sylow) {
                return Err(Error::Input("Q is not a subgroup of S".into()));
            }
            let first = f.subgroups()?.iter().find(|p| {
                !p.is_trivial() && q.iter().all(|x| g.normalizes(x, p)) && !self.objects.contains(p)
            });
            let cs = f.c_s(q);
            let second = all_subgroups(g, &cs)?
                .into_iter()
                .find(|p| !p.is_trivial() && !self.objects.contains(p));
            if first.is_none() != second.is_none() {
                return Err(Error::Internal(
                    "the two forms of Q-repleteness disagree".into(),
                ));
            }
            let leaf = |name: &str, bad: Option<&Subgroup>| match bad {
                Some(p) => ReportNode::fail(name, format!("{} is not an object", describe(g, p))),
                None => ReportNode::pass(name),
            };
            nodes.push(ReportNode::group(
                "Q-replete",
                vec![
                    leaf("(i) subgroups normalized by Q", first),
                    leaf("(ii) subgroups of C_S(Q)", second.as_ref()),
                ],
            ));
            let large = self.is_large_in_locality(q)?;
            nodes.push(match (large.centralizer_escape, &large.normalizer_escape) {
                (Some(x), _) => {
                    ReportNode::fail("Q large in L", format!("{} centralizes Q", g.label(x)))
                }
                (None, Some((u, x))) => ReportNode::fail(
                    "Q large in L",
                    format!("{} normalizes {} but not Q", g.label(*x), describe(g, u)),
                ),
                (None, None) => ReportNode::pass("Q large in L"),
            });
        }
        Ok(ReportNode::group("locality flags", nodes))
    }

    /// `C_L(Q) ⊆ Q` and `N_L(U) ⊆ N_L(Q)` for every `1 ≠ U ≤ Z(Q)`.
    pub fn is_large_in_locality(&self, q: &Subgroup) -> Result<LocalityLargeness> {
        let g = self.group();
        if !q.is_subgroup_of(self.sylow()) {
            return Err(Error::Input("Q is not a subgroup of S".into()));
        }
        let centralizer_escape = self.centralizer(q).into_iter().find(|&x| !q.contains(x));
        let n_q: HashSet<Elem> = self.normalizer(q).into_iter().collect();
        let mut normalizer_escape = None;
        for u in all_subgroups(g, &g.center(q))? {
            if u.is_trivial() {
                continue;
            }
            if let Some(x) = self.normalizer(&u).into_iter().find(|x| !n_q.contains(x)) {
                normalizer_escape = Some((u, x));
                break;
            }
        }
        let self_centralizing = centralizer_escape.is_none();
        Ok(LocalityLargeness {
            large: self_centralizing && normalizer_escape.is_none(),
            self_centralizing,
            centralizer_escape,
            normalizer_escape,
        })
    }
}
