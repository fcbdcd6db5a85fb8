//! Exact group-theoretic machinery for branched covers of the projective line with
//! three branch points: cyclotomic arithmetic, character tables, monodromy data,
//! Chevalley–Weil multiplicities and CM-type detection.

pub mod analysis;
pub mod chartable;
pub mod cm;
pub mod cyclotomic;
mod dixon;
pub mod error;
pub mod families;
pub mod group;
pub mod hodge;
pub mod matrix;
pub mod modp;
pub mod monodromy;

pub use error::{Error, Result};
