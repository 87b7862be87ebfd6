//! Library half of the `commhier` command: spec parsing, report rendering
//! and corpus verification.

pub mod dsl;
pub mod render;
pub mod run;
pub mod verify;
