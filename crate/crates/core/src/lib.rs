//! Exact computations around the log canonical models `M̄_g(α)`: divisor
//! classes and F-curve intersections, the walls at 9/11 and 7/10, dual graphs
//! of stable and pseudostable curves, limit linear series dimensions and the
//! stack-to-coarse descent of boundary coefficients.

pub mod cli;
pub mod descent;
pub mod divisor;
pub mod error;
pub mod fcurves;
pub mod graph;
pub mod linear_series;
pub mod oracle;
pub mod phase;
pub mod rational;
pub mod report;

pub use error::{Error, Result};
pub use rational::Rational;
