//! Arithmetic triple symbols.
//!
//! The Rédei symbol [p1, p2, p3] over Q, the triple cubic residue symbol over
//! Q(ζ3), and a small finite-group cochain lab for checking the group-theoretic
//! identities the symbols rest on.

// Errors carry the offending big integers.
#![allow(clippy::result_large_err)]

pub mod field;
pub mod modarith;
pub mod eisenstein;
pub mod conic;
pub mod redei;
pub mod cubic;
pub mod cochain;

pub use redei::SymbolValue;
pub mod verify;
pub mod cli;
