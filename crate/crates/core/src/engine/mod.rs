//! Finite group engine: permutations, stabilizer chains, Cayley tables and
//! the subgroup computations built on them.

pub mod auto;
pub mod chain;
pub mod groupfile;
pub mod lattice;
pub mod local;
pub mod models;
pub mod perm;
pub mod table;
pub mod yg;

pub use chain::PermGroup;
pub use perm::Perm;
pub use table::{Elem, FiniteGroup, Quotient, Subgroup};
