//! Simulation and design tools for a Zeno-effect photonic two-qubit gate.
//!
//! * [`gate`]: transfer-matrix model of the segmented interferometer and its error budget.
//! * [`design`]: closed-form parameter laws.
//! * [`oracle`]: independent density-matrix simulation with Kraus channels.
//! * [`optimizer`]: minimal absorption ratio at a fixed error budget.
//! * [`rates`] and [`units`]: physical feasibility estimates.

pub mod design;
pub mod error;
pub mod gate;
pub mod optimizer;
pub mod oracle;
pub mod rates;
pub mod units;

pub use error::{Error, Result};
