//! Availability and profit analysis for a one-unit repairable system backed by
//! two cold-standby spares and serviced by a regular and a visiting expert
//! repairer.
//!
//! The crate has four parts:
//!
//! * [`model`] builds the embedded transition matrix and expected sojourn
//!   times of the six-state semi-Markov process for each of the four repair
//!   models (MRE/SRE expert policy crossed with random/deterministic patience).
//! * [`smp`] solves for the stationary distribution, occupancy fractions,
//!   limiting availability, busy fractions, expected cycle length and limiting
//!   profit per unit time.
//! * [`simulator`] is a discrete-event Monte Carlo oracle of the physical
//!   system, used to validate the analytic engine.
//! * [`optimizer`] searches over the patience time and the expert cost rate.
//!
//! The analytic code is generic over the floating point type; the aliases at
//! the crate root fix it to `f64`.

pub mod error;
#[cfg(test)]
mod linalg;
pub mod model;
pub mod optimizer;
pub mod scalar;
pub mod simulator;
pub mod smp;

pub use error::{Error, Result};
pub use model::{
    build_transition_matrix, p45_dpt, sojourn_means, validate, ExpertPolicy, ModelKind, PatienceFamily, PatiencePolicy,
    StateId, StateVector,
};
pub use scalar::Scalar;
pub use simulator::{simulate, Estimate, KernelMode, SimConfig, SimEstimate, StoppingRule};
pub use smp::{evaluate_model, CostParams};

pub type RateParams = model::RateParams<f64>;
pub type Patience = model::PatiencePolicy<f64>;
pub type ModelSpec = model::ModelSpec<f64>;
pub type TransitionMatrix = model::TransitionMatrix<f64>;
pub type SojournMeans = model::SojournMeans<f64>;
pub type Costs = smp::CostParams<f64>;
pub type SmpSolution = smp::SmpSolution<f64>;
pub type SweepGrid = optimizer::SweepGrid<f64>;
pub type CrossingResult = optimizer::CrossingResult<f64>;
pub type SweepRow = optimizer::SweepRow<f64>;
