//! Numerical toolkit for immersed hyperbolic turnovers in 3-orbifolds.
//!
//! The modules build on each other bottom-up:
//!
//! - [`numerics`]: root finding, quadrature and the Lobachevsky function.
//! - [`trig`]: turnover signatures, triangle trigonometry, polygon laws.
//! - [`collars`]: collar bounds between elliptic axes, the supergroup table,
//!   admissible boundary cone orders.
//! - [`rooms`]: rooms over geodesic floors and their isoperimetric bounds.
//! - [`simplices`]: regular truncated simplices and the density `ρ₃`.
//! - [`engine`]: volume budgets, boundary candidates and case exclusion.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod collars;
pub mod engine;
pub mod error;
pub mod numerics;
pub mod rooms;
pub mod simplices;
pub mod trig;

pub use error::{Error, Result};
pub use numerics::{Bracket, Tolerance};
pub use trig::{classify, turnover_area, GeometryClass, TurnoverSignature};
