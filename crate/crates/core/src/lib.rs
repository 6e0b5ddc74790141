//! Inequality indexes as statistical functionals of a discrete measure,
//! their design-based influence functions, and linearized variance
//! estimation for plug-in estimators under finite-population sampling.
//!
//! The layers build on each other:
//!
//! * [`measure`]: weighted point masses with `N`, `T`, `H_y`, `K_y` queries.
//! * [`engine`]: generic functionals `phi(sum psi_y(L_y(M)))`, their
//!   assembled influence functions and a numerical Gateaux oracle.
//! * [`indexes`]: Gini, Amato, Zenga and Atkinson in closed form and as
//!   engine compositions.
//! * [`survey`]: sampling designs, Horvitz-Thompson empirical measures and
//!   linearized variance estimators.
//! * [`montecarlo`]: seeded replicated-sampling experiments.
//! * [`cli`]: the `ineq` command-line front end.

pub mod cli;
pub mod engine;
pub mod error;
pub mod indexes;
pub mod measure;
pub mod montecarlo;
pub mod survey;

pub use engine::{
    ComponentFunctional, ComposedFunctional, GateauxOptions, IntegrandFamily, OuterMap,
};
pub use error::{Error, Result};
pub use indexes::{IndexKind, IndexResult, InfluenceFunction};
pub use measure::DiscreteMeasure;
pub use survey::{SampleData, SamplingDesign, VarianceReport};
