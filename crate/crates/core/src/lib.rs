pub mod automorphisms;
pub mod catalog;
pub mod error;
pub mod exact;
pub mod invariants;
pub mod matrix;
pub mod rota_baxter;
pub mod search;
pub mod verifier;

pub use error::{Error, Result};
