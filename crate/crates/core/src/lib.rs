//! Reversible cellular automata on full shifts that realize wreath-product
//! embeddings: actions on finitely many orbits, conveyor belts with floating
//! boundaries, pointy actions, the head-marking tower construction and
//! Neumann groups, each checked against brute-force permutation-group oracles
//! on periodic tapes.

pub mod action;
pub mod afo;
pub mod belt;
pub mod alphabet;
pub mod code;
pub mod config;
pub mod error;
pub mod gallery;
pub mod khat;
pub mod level;
pub mod neumann;
pub mod perm;
pub mod pointy;
pub mod report;
pub mod suites;
pub mod text;
pub mod verify;
pub mod wreath;

pub use action::{Generator, GeneratorTable, GroupWord, TapeMap};
pub use alphabet::{Alphabet, Symbol};
pub use code::{Automorphism, SlidingBlockCode};
pub use config::{FiniteConfig, PeriodicConfig};
pub use error::{Error, Result};
