//! Mod-2 cohomology of small covers and bounds for their LS-category and
//! topological complexities.

pub mod charfun;
pub mod cli;
pub mod cohomology;
pub mod complexes;
pub mod f2linalg;
pub mod invariants;
