//! Small permutation groups used as examples and test corpus.

use super::chain::PermGroup;
use super::perm::Perm;
use super::table::FiniteGroup;

fn cyc(deg: usize, s: &str) -> Perm {
    Perm::parse_cycles(deg, s).expect("valid cycle text")
}

fn group(deg: usize, gens: &[&str]) -> PermGroup {
    PermGroup::new(deg, gens.iter().map(|s| cyc(deg, s)).collect()).expect("valid generators")
}

fn table(g: &PermGroup) -> FiniteGroup {
    FiniteGroup::from_perm_group(g).expect("corpus group within table cap")
}

pub fn sym_group(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n.max(1));
    }
    let long: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    group(n, &["(1 2)", &format!("({})", long.join(" "))])
}

pub fn alt_group(n: usize) -> PermGroup {
    if n < 3 {
        return PermGroup::trivial(n.max(1));
    }
    let gens: Vec<String> = (3..=n).map(|k| format!("(1 2 {k})")).collect();
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    group(n, &refs)
}

pub fn cyclic_group(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(1);
    }
    let long: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    group(n, &[&format!("({})", long.join(" "))])
}

pub fn dihedral8_group() -> PermGroup {
    group(4, &["(1 2 3 4)", "(1 3)"])
}

pub fn quaternion8_group() -> PermGroup {
    group(8, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"])
}

/// `PSL(2,7) ≅ SL₃(2)` acting on the 7 points of the Fano plane.
pub fn sl32_group() -> PermGroup {
    group(7, &["(1 2 3 4 5 6 7)", "(3 5)(6 7)"])
}

/// `AGL₃(2)` on the 8 vectors of `F₂³` (point `v+1` for bit vector `v`).
pub fn agl32_group() -> PermGroup {
    let from_fn = |f: &dyn Fn(u32) -> u32| Perm::from_images((0..8).map(f).collect()).unwrap();
    let translate = from_fn(&|v| v ^ 1);
    let transvect = from_fn(&|v| v ^ ((v >> 1) & 1));
    let rotate = from_fn(&|v| ((v << 1) | (v >> 2)) & 7);
    PermGroup::new(8, vec![translate, transvect, rotate]).unwrap()
}

/// Direct product acting on the disjoint union of the point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (da, db) = (a.degree(), b.degree());
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut im: Vec<u32> = g.images().to_vec();
        im.extend((da as u32)..(da + db) as u32);
        gens.push(Perm::from_images(im).unwrap());
    }
    for g in b.generators() {
        let mut im: Vec<u32> = (0..da as u32).collect();
        im.extend(g.images().iter().map(|&x| x + da as u32));
        gens.push(Perm::from_images(im).unwrap());
    }
    PermGroup::new(da + db, gens).unwrap()
}

pub fn sym(n: usize) -> FiniteGroup {
    table(&sym_group(n))
}

pub fn alt(n: usize) -> FiniteGroup {
    table(&alt_group(n))
}

pub fn cyclic(n: usize) -> FiniteGroup {
    table(&cyclic_group(n))
}

pub fn dihedral8() -> FiniteGroup {
    table(&dihedral8_group())
}

pub fn quaternion8() -> FiniteGroup {
    table(&quaternion8_group())
}

pub fn sl32_on_7() -> FiniteGroup {
    table(&sl32_group())
}

pub fn agl32() -> FiniteGroup {
    table(&agl32_group())
}

/// `Sym(4) × C₃` on 7 points.
pub fn sym4_times_c3() -> FiniteGroup {
    table(&direct_product(&sym_group(4), &cyclic_group(3)))
}
