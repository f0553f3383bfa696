//! Front end of the `cabelt` binary: config documents, system resolution and
//! spacetime rendering.

pub mod config;
pub mod render;
pub mod system;
