//! Library surface of the command-line front end: input/output documents,
//! random system generators, and the batch agreement study. The binary in
//! `main.rs` is a thin wrapper over these.

pub mod batch;
pub mod gen;
pub mod io;
