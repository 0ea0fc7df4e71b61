//! Combinatorial construction of irreducible modules over quiver Hecke (KLR)
//! algebras of finite classical type.
//!
//! The pipeline runs from Cartan data and reduced words for the longest Weyl
//! group element, through highest weight crystals and their adapted strings,
//! to factorizations of each string into segment modules `Δ(a,b)` whose
//! characters and explicit matrix models can be checked independently.
//!
//! Indices `i ∈ I` are 1-based (`1..=n`) everywhere in the public API.

#![no_std]

extern crate alloc;

pub mod cartan;
pub mod character;
pub mod crystal;
pub mod delta;
mod error;
pub mod inequality;
pub mod klr;
pub mod letter;
pub mod strings;
pub mod verify;

pub use cartan::{CartanDatum, CartanType, ReducedWord};
pub use character::Character;
pub use crystal::{Crystal, CrystalElement};
pub use delta::{Decomposition, DeltaFactor};
pub use error::Error;
pub use letter::Letter;
pub use strings::{AdaptedString, Triangle};

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
