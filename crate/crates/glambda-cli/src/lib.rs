//! Expression parsing, elaboration and rendering for the `glambda` binary.

pub mod ast;
pub mod elab;
pub mod parser;
pub mod render;
