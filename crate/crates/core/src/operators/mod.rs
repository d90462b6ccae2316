//! Derivations, differential operators and nilpotency checks.

mod curvature;
mod derivation;
mod dga;
mod diffop;
mod endop;
mod fieldpower;
mod nilpotency;

pub use curvature::{curvature, curvature_condition};
pub use derivation::Derivation;
pub use dga::{tensor_dga, Dga};
pub use diffop::DiffOperator;
pub use endop::{end_derivative, EndOperator, Letter};
pub use fieldpower::{
    field_power_closed, field_power_direct, field_power_registry, field_square_two_term, ClosedSum, DirectComposition,
    FieldPowerStrategy, VectorField, DEFAULT_CLOSED_MAX_ORDER,
};
pub use nilpotency::{basis_monomials, check_operator, nilpotency_check, NilpotencyVerdict, Outcome};
