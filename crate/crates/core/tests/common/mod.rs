#![allow(dead_code)]

pub mod checks;

use fusionloc::engine::local::sylow;
use fusionloc::engine::models;
use fusionloc::engine::{FiniteGroup, Subgroup};
use fusionloc::fusion::FusionSystem;
use fusionloc::g2study::{assemble_tilde_c, build_q8_central_product};
use fusionloc::locality::{Locality, ObjectSet, Preset};

pub struct Instance {
    pub name: &'static str,
    pub group: FiniteGroup,
    pub p: u32,
}

impl Instance {
    pub fn sylow(&self) -> Subgroup {
        sylow(&self.group, &self.group.whole(), self.p)
    }

    pub fn fusion(&self) -> FusionSystem<'_> {
        FusionSystem::new(&self.group, &self.group.whole(), &self.sylow(), self.p).unwrap()
    }

    /// Runs `visit` on `L_Δ(G)` for every preset that yields a family
    /// containing `S`; returns the presets that do not.
    pub fn each_locality(&self, mut visit: impl FnMut(Preset, &Locality)) -> Vec<Preset> {
        let mut skipped = Vec::new();
        for preset in Preset::ALL {
            let f = self.fusion();
            match ObjectSet::preset(&f, preset) {
                Ok(objects) => visit(preset, &Locality::build(f, objects).unwrap()),
                Err(fusionloc::Error::Input(_)) => skipped.push(preset),
                Err(e) => panic!("{}: {e}", self.name),
            }
        }
        skipped
    }
}

fn inst(name: &'static str, group: FiniteGroup, p: u32) -> Instance {
    Instance { name, group, p }
}

/// Small groups whose fusion systems are cheap to enumerate.
pub fn small_corpus() -> Vec<Instance> {
    vec![
        inst("Sym4", models::sym(4), 2),
        inst("Alt4", models::alt(4), 2),
        inst("D8", models::dihedral8(), 2),
        inst("Q8", models::quaternion8(), 2),
        inst("SL(3,2)", models::sl32_on_7(), 2),
        inst("Sym4 x C3", models::sym4_times_c3(), 2),
        inst("Sym4 at 3", models::sym(4), 3),
        inst("Alt5", models::alt(5), 2),
        inst("Sym5", models::sym(5), 2),
        inst("AGL(3,2)", models::agl32(), 2),
    ]
}

/// The small corpus plus `Q₈∘Q₈` and `C̃`.
pub fn corpus() -> Vec<Instance> {
    let mut out = small_corpus();
    out.push(inst("Q8oQ8", build_q8_central_product().unwrap().group, 2));
    out.push(inst("C~", assemble_tilde_c().unwrap().group, 2));
    out
}
