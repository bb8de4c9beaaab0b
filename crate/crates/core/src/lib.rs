pub mod caps;
pub mod engine;
pub mod error;
pub mod fusion;
pub mod g2study;
pub mod locality;
pub mod modrep;
pub mod report;

pub use error::{Error, Result};
