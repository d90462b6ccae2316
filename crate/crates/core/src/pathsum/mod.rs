//! Weighted path sums on the Maurer-Cartan graph of multi-indices and the
//! deformation equations they produce.

mod graph;
mod infinitesimal;
mod kernel;
mod mc;
mod multiindex;
mod ncpoly;
pub mod words;

pub use graph::{
    enumerate_paths, enumerate_paths_with, mc_coefficient, mc_coefficient_with, path_count, Move, Path, PathCounter,
    WeightTable,
};
pub use infinitesimal::{
    infinitesimal_coefficients, infinitesimal_coefficients_from_paths, infinitesimal_terms, par, verify_infinitesimal,
    Composition, Trailing,
};
pub use kernel::{kernel_registry, truncated_mc_graph, Enumeration, FiniteDigraph, KernelBackend, TransferMatrix};
pub use mc::{
    mc_equation, mc_equation_complete, mc_equation_with, verify_equation, verify_mc_identity,
    verify_mc_identity_complete, McEquation,
};
pub use multiindex::MultiIndex;
pub use ncpoly::{render_word, NcPoly, NcTerm};
pub use words::{WordMismatch, WordVerdict};
