//! Exact graph-sum potentials over cyclic Hodge dGBV algebras and mechanical
//! checks of the identities they satisfy (WDVV, Getzler, Maurer-Cartan,
//! operator identities, critical points of cubic actions).

pub mod algebra;
pub mod bcov;
pub mod error;
pub mod evaluator;
pub mod graphs;
pub mod homotopy;
pub mod linalg;
pub mod pipeline;
pub mod relations;
pub mod report;
pub mod scalar;
pub mod series;

pub use algebra::ChAlgebra;
pub use error::{Error, Result};
pub use linalg::{SuperOperator, SuperSpace, SuperVector};
pub use report::{Report, Status};
pub use scalar::Scalar;
pub use series::{Parity, Series, Vars};
