//! Graded-commutative polynomial algebras over ℚ with monomial, substitution
//! and linear relations.

mod json;
mod monomial;
mod morphism;
mod poly;
mod presentation;
mod text;
mod var;

pub use json::{presentation_from_json, presentation_to_json, GeneratorSpec, PresentationDoc};
pub use monomial::Monomial;
pub use morphism::Morphism;
pub use poly::Poly;
pub use presentation::{Presentation, PresentationBuilder, RawTerm};
pub use text::{parse_poly, parse_var_key, render};
pub use var::{Family, GVar, VarKey};
