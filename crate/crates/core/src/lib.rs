//! Closed-form nth derivatives of parametric, implicit and inverse
//! functions.
//!
//! The coefficients of `dⁿy/dxⁿ` are sums over restricted set partitions:
//! [`parametric`] handles `x = f(t)`, `y = g(t)`, [`implicit`] handles
//! `F(x, y) = 0`, and the inverse function `y = f⁻¹(x)` is a special case
//! of both. Every formula can be computed by enumerating partitions or by a
//! recurrence, and checked against the independent routes in [`oracle`].

pub mod algebra;
pub mod cli;
pub mod error;
pub mod implicit;
pub mod oracle;
pub mod parametric;
pub mod partitions;
pub mod verify;

pub use algebra::{DerivativeFormula, Format, FormulaKind, FormulaLayer};
pub use error::{Error, Result};
pub use parametric::Method;
