//! Exact non-abelian multiplicative integration for nilpotent differential
//! graded Lie algebras.
//!
//! The crate computes one- and two-dimensional holonomies of polynomial
//! connections exactly over Q and uses them to build the integration map
//! from Hinich's simplicial set `Σ(g) = MC(g ⊗ Ω_•)` to the nerve of the
//! Deligne 2-groupoid of `g`.

pub mod algebra;
pub mod bundle;
pub mod catalog;
pub mod checks;
pub mod deligne;
pub mod forms;
pub mod hinich;
pub mod holonomy;
pub mod integration;
pub mod lie;
pub mod report;
pub mod surface;
