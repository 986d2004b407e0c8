//! Independent routes to the same derivatives: brute-force symbolic
//! differentiation, truncated power series, and point evaluation of the
//! layered formulas.

pub mod eval;
pub mod jet;
pub mod series;
pub mod symbolic;
pub mod table;

pub use eval::{eval_implicit, eval_parametric, evaluate};
pub use jet::{BivariateJet, Jet};
pub use series::{implicit_series_oracle, series_reversion_oracle, ON_CURVE_TOLERANCE};
pub use symbolic::{symbolic_implicit_oracle, symbolic_parametric_oracle};
pub use table::{DerivativeTable, ImplicitTable, ParametricTable};
