//! Computations with string and band modules over the symmetric special
//! biserial algebra on three vertices with loops α, ρ, ξ and the cycle βδλ.

pub mod ar;
pub mod cli;
pub mod config;
pub mod deform;
pub mod error;
pub mod hom;
pub mod iso;
pub mod linalg;
pub mod rep;
pub mod type0;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
