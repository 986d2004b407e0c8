//! Exact-coefficient monomials over derivative factors, layered formulas,
//! and their renderings.

pub mod formula;
pub mod json;
pub mod monomial;
pub mod render;

pub use formula::{DerivativeFormula, FormulaKind, FormulaLayer, Layers};
pub use json::{from_json, to_json};
pub use monomial::{normalize, ImplicitMonomial, ParametricMonomial, Partial, Term};
pub use render::{render, render_implicit_layer, render_parametric_layer, Format};
