//! Depth-N differential forms and difference forms.

mod difference;
mod omega;
mod simplicial;

pub use difference::{dn_map, dn_simplex, DifferenceAlgebra, DifferenceForm};
pub use omega::{omega_map, omega_space, DeltaMap};
pub use simplicial::{
    forms_on_simplicial_set, omega_simplicial_set, FormsOnSimplicialSet, SimplexRef, SimplicialSet, SimplicialSetDoc,
};
