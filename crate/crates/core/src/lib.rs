//! Crossing limit cycles of Hamiltonian fields on the torus `[0,1]²/~`.

pub mod enumeration;
pub mod error;
pub mod mode;
pub mod poly;
pub mod report;
pub mod switching;
pub mod verification;
