//! Exact and numerical tools for matched pairs of low-dimensional Lie
//! algebras and Lie groups: the classified catalog of codimension-one pairs,
//! their extension cohomology, the induced Lie bialgebras with duality, the
//! integrated group-level pairs with modular data, and principal-value
//! cocycle integrals on them.

pub mod algebra;
pub mod bialgebra;
pub mod bialgebra_catalog;
pub mod catalog;
pub mod cli;
pub mod cohomology;
pub mod groups;
pub mod linalg;
pub mod matched;
pub mod numerics;
pub mod report;
pub mod scalar;
