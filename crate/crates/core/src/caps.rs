//! Search caps. Defaults cover the built-in corpus; `FUSIONLOC_CAPS`
//! (`table=20000,aut=8192,...`) raises them for larger inputs.

use std::sync::OnceLock;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest group given an explicit multiplication table.
    pub table: usize,
    /// Largest group for automorphism and isomorphism search.
    pub aut: usize,
    /// Most subgroups a lattice enumeration may produce.
    pub lattice: usize,
    /// Largest module dimension for submodule enumeration.
    pub module_dim: usize,
    /// Most states in a subsystem-generation closure.
    pub closure: usize,
    /// Largest conjugation orbit tracked for big-group stabilizers.
    pub orbit: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            table: 4096,
            aut: 4096,
            lattice: 200_000,
            module_dim: 16,
            closure: 2_000_000,
            orbit: 2_000_000,
        }
    }
}

impl Caps {
    pub fn parse(spec: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("cap entry {part:?} is not key=value")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("cap value {v:?} is not a number")))?;
            match k.trim() {
                "table" => caps.table = v,
                "aut" => caps.aut = v,
                "lattice" => caps.lattice = v,
                "module_dim" => caps.module_dim = v,
                "closure" => caps.closure = v,
                "orbit" => caps.orbit = v,
                other => return Err(Error::Input(format!("unknown cap {other:?}"))),
            }
        }
        Ok(caps)
    }

    /// Process-wide caps, read once from `FUSIONLOC_CAPS`.
    pub fn global() -> Caps {
        static CAPS: OnceLock<Caps> = OnceLock::new();
        *CAPS.get_or_init(|| match std::env::var("FUSIONLOC_CAPS") {
            Ok(s) => Caps::parse(&s).unwrap_or_else(|e| {
                eprintln!("ignoring FUSIONLOC_CAPS: {e}");
                Caps::default()
            }),
            Err(_) => Caps::default(),
        })
    }

    pub fn check(limit: usize, needed: usize, cap: &'static str) -> Result<()> {
        if needed > limit {
            Err(Error::Resource { cap, limit, needed })
        } else {
            Ok(())
        }
    }
}
