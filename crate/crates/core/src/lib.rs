//! Modular data, modular invariants, nimreps and McKay/Kostant series for
//! finite braided fusion systems.

pub mod catalog;
pub mod chiral;
pub mod error;
pub mod format;
pub mod fusion;
pub mod invariant;
pub mod kostant;
pub mod linalg;
pub mod modular;
pub mod nimrep;
pub mod twist;

pub use error::{Error, Result};
