//! Sylow subgroups, p-cores and related local subgroups.

use fixedbitset::FixedBitSet;

use super::lattice::all_subgroups;
use super::table::{Elem, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: u32) -> usize {
    let p = p as usize;
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

pub fn is_p_power(n: usize, p: u32) -> bool {
    p_part(n, p) == n
}

pub fn is_p_subgroup(h: &Subgroup, p: u32) -> bool {
    is_p_power(h.order(), p)
}

pub fn is_p_element(g: &FiniteGroup, x: Elem, p: u32) -> bool {
    is_p_power(g.elem_order(x) as usize, p)
}

pub fn is_p_prime_element(g: &FiniteGroup, x: Elem, p: u32) -> bool {
    !g.elem_order(x).is_multiple_of(p)
}

/// Smallest `k ≥ 1` with `x^k ∈ h`.
fn order_mod(g: &FiniteGroup, x: Elem, h: &Subgroup) -> u32 {
    let mut y = x;
    let mut k = 1;
    while !h.contains(y) {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

/// A Sylow p-subgroup of `within`, by ascent through normalizers:
/// each step adjoins an element of order p modulo the current subgroup.
pub fn sylow(g: &FiniteGroup, within: &Subgroup, p: u32) -> Subgroup {
    let target = p_part(within.order(), p);
    let mut cur = g.trivial();
    while cur.order() < target {
        let n = g.normalizer(within, &cur);
        let step = n.iter().filter(|&x| !cur.contains(x)).find_map(|x| {
            let k = order_mod(g, x, &cur);
            k.is_multiple_of(p).then(|| g.pow(x, (k / p) as i64))
        });
        let y = step.expect("a p-subgroup below Sylow order has a larger normalizer");
        let mut gens = cur.gens().to_vec();
        gens.push(y);
        cur = g.generate(&gens);
    }
    cur
}

/// Sylow p-subgroup of `within` containing the p-subgroup `p_sub`.
pub fn sylow_containing(g: &FiniteGroup, within: &Subgroup, p_sub: &Subgroup, p: u32) -> Subgroup {
    let target = p_part(within.order(), p);
    let mut cur = p_sub.clone();
    while cur.order() < target {
        let n = g.normalizer(within, &cur);
        let y = n
            .iter()
            .filter(|&x| !cur.contains(x))
            .find_map(|x| {
                let k = order_mod(g, x, &cur);
                k.is_multiple_of(p).then(|| g.pow(x, (k / p) as i64))
            })
            .expect("normalizer growth");
        let mut gens = cur.gens().to_vec();
        gens.push(y);
        cur = g.generate(&gens);
    }
    cur
}

/// All Sylow p-subgroups of `within`, in canonical order.
pub fn all_sylows(g: &FiniteGroup, within: &Subgroup, p: u32) -> Vec<Subgroup> {
    let s = sylow(g, within, p);
    let mut out = vec![s.clone()];
    let mut seen = std::collections::HashSet::new();
    seen.insert(s.bits().clone());
    let mut k = 0;
    while k < out.len() {
        let cur = out[k].clone();
        k += 1;
        for &x in within.gens() {
            let c = g.conj_subgroup(&cur, x);
            if seen.insert(c.bits().clone()) {
                out.push(c);
            }
        }
    }
    out.sort();
    out
}

/// Largest normal subgroup of `within` contained in `h`.
pub fn core(g: &FiniteGroup, within: &Subgroup, h: &Subgroup) -> Subgroup {
    let mut cur = h.clone();
    loop {
        let mut bits = cur.bits().clone();
        for &s in within.gens() {
            bits.intersect_with(&g.conj_bits(&cur, s));
        }
        if bits.count_ones(..) == cur.order() {
            return cur;
        }
        cur = g.subgroup_from_set(bits);
    }
}

pub fn o_p(g: &FiniteGroup, within: &Subgroup, p: u32) -> Subgroup {
    let s = sylow(g, within, p);
    core(g, within, &s)
}

/// `O^p`: generated by the p'-elements.
pub fn o_up_p(g: &FiniteGroup, within: &Subgroup, p: u32) -> Subgroup {
    let gens: Vec<Elem> = within
        .iter()
        .filter(|&x| is_p_prime_element(g, x, p))
        .collect();
    g.generate(&gens)
}

/// `O^{p'}`: generated by the p-elements.
pub fn o_up_p_prime(g: &FiniteGroup, within: &Subgroup, p: u32) -> Subgroup {
    let gens: Vec<Elem> = within
        .iter()
        .filter(|&x| x != 0 && is_p_element(g, x, p))
        .collect();
    g.generate(&gens)
}

/// `O_{p'}`: join of the normal closures of p'-elements that stay p'.
pub fn o_p_prime(g: &FiniteGroup, within: &Subgroup, p: u32) -> Subgroup {
    let mut cur = g.trivial();
    for x in within.iter() {
        if cur.contains(x) || !is_p_prime_element(g, x, p) {
            continue;
        }
        let nc = g.normal_closure(within, &g.generate(&[x]));
        if !nc.order().is_multiple_of(p as usize) {
            cur = g.join(&cur, &nc);
        }
    }
    cur
}

/// Preimage of `O_p(within/k)` for `k ⊴ within`.
pub fn o_p_mod(g: &FiniteGroup, within: &Subgroup, k: &Subgroup, p: u32) -> Subgroup {
    let s = sylow(g, within, p);
    let sk = g.join(&s, k);
    core(g, within, &sk)
}

/// True iff `O_p(within/k) = 1`.
pub fn quotient_has_trivial_o_p(g: &FiniteGroup, within: &Subgroup, k: &Subgroup, p: u32) -> bool {
    o_p_mod(g, within, k, p).order() == k.order()
}

pub fn is_characteristic_p(g: &FiniteGroup, within: &Subgroup, p: u32) -> bool {
    let op = o_p(g, within, p);
    g.centralizer(within, &op).is_subgroup_of(&op)
}

pub fn omega1(g: &FiniteGroup, h: &Subgroup, p: u32) -> Subgroup {
    let gens: Vec<Elem> = h
        .iter()
        .filter(|&x| x != 0 && g.elem_order(x) == p)
        .collect();
    g.generate(&gens)
}

pub fn frattini(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    let n = h.order();
    if n == 1 {
        return Ok(h.clone());
    }
    let primes = prime_divisors(n);
    if primes.len() == 1 {
        // p-group: Φ = ⟨x^p, [x, y]⟩
        let p = primes[0];
        let mut gens: Vec<Elem> = h.iter().map(|x| g.pow(x, p as i64)).collect();
        gens.extend(g.derived(h).gens().iter().copied());
        return Ok(g.generate(&gens));
    }
    let subs = all_subgroups(g, h)?;
    let maximal: Vec<&Subgroup> = subs
        .iter()
        .filter(|m| m.order() < n)
        .filter(|m| {
            !subs
                .iter()
                .any(|k| k.order() < n && k.order() > m.order() && m.is_subgroup_of(k))
        })
        .collect();
    let mut bits: FixedBitSet = h.bits().clone();
    for m in maximal {
        bits.intersect_with(m.bits());
    }
    Ok(g.subgroup_from_set(bits))
}

pub fn prime_divisors(mut n: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as u32);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u32);
    }
    out
}

#[derive(Clone, Debug)]
pub struct CoreBundle {
    pub o_p: Subgroup,
    pub o_p_prime: Subgroup,
    pub o_up_p: Subgroup,
    pub derived: Subgroup,
    pub center: Subgroup,
    pub frattini: Subgroup,
    pub omega1_center: Subgroup,
}

pub fn core_bundle(g: &FiniteGroup, within: &Subgroup, p: u32) -> Result<CoreBundle> {
    if !is_prime(p) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    let center = g.center(within);
    Ok(CoreBundle {
        o_p: o_p(g, within, p),
        o_p_prime: o_p_prime(g, within, p),
        o_up_p: o_up_p(g, within, p),
        derived: g.derived(within),
        frattini: frattini(g, within)?,
        omega1_center: omega1(g, &center, p),
        center,
    })
}
