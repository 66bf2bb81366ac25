//! Numerical geometry of the simply isotropic plane I² and space I³.
//!
//! Catenaries and their weighted generalizations, minimal and singular minimal
//! surfaces of revolution, helicoidal and parabolic-revolution surfaces, and the
//! ODE solvers that go with them.

// `!(x > 0.0)` is used on purpose: it rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod curves;
pub mod error;
pub mod io;
pub mod metric;
pub mod odes;
pub mod quadrature;
pub mod singular;
pub mod surfaces;
pub mod variational;

pub use error::{GeometryError, Result};
pub use metric::{IsoVec2, IsoVec3};
