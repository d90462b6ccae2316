//! Lie algebroid data, their Chevalley-Eilenberg derivations and the
//! diamond-power conditions defining 3 Lie algebras and algebroids.

mod deform;
mod identities;
mod structure;
mod threelie;

pub use deform::{
    deform_de_rham, displayed_matrix_closed, displayed_matrix_open, scaled_coordinates, DeformationMatrix,
    DeformationReport,
};
pub use identities::{algebroid_identities, order_three_residuals, order_two_residuals, IdentityReport};
pub use structure::{ce_derivation, coordinate_algebra, theta, theta_coefficient, x, StructureData};
pub use threelie::{
    is_3_lie, jacobiator, shuffle_defect, shuffles, three_lie_registry, OperatorRoute, RouteVerdict, ShuffleRoute,
    ThreeLieMethod, ThreeLieVerdict,
};
