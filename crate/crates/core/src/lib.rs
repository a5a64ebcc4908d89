//! Exact model checking for a dynamic logic of quantum programs.

pub mod linalg;
pub mod qframe;
pub mod lang;
pub mod regions;
pub mod checker;
pub mod random;
pub mod protocols;
pub mod cli;
