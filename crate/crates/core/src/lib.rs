//! Adaptive dual-formulation A-WENO solvers for the compressible Euler
//! equations in one and two space dimensions.
//!
//! The conservative system is advanced with a fifth-order A-WENO scheme
//! whose interface reconstruction is chosen per interface: unlimited in
//! smooth regions, Ai-WENO-Z near shocks and overcompressive SBM slopes with
//! a low-dissipation flux near contacts. A primitive-variable solver run
//! alongside on detection steps supplies the discrepancy that drives the
//! choice.

pub mod boundary;
pub mod cases;
pub mod conservative;
pub mod driver;
pub mod eos;
pub mod error;
pub mod flux;
pub mod grid;
pub mod indicator;
pub mod io;
pub mod primitive;
pub mod stencil;
pub mod sweep;
pub mod time;

pub use error::{Result, SolverError};
