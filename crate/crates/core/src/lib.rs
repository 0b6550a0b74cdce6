//! Two-timescale momentum gradient descent-ascent for stochastic minimax
//! problems `min_x max_y f(x, y)` where `f(x, .)` satisfies a
//! Polyak-Lojasiewicz condition (possibly without strong concavity).
//!
//! The crate provides:
//!
//! * [`problems`]: synthetic instance families with closed-form best
//!   responses, envelopes `F(x) = max_y f(x, y)` and smoothness constants,
//!   plus assumption certification on random point clouds.
//! * [`estimators`]: variance-reduced (STORM-style) gradient estimators.
//! * [`adaptive`]: diagonal preconditioner generators (Adam-norm,
//!   AdaBelief, constant) with explicit spectral floor and dual cap.
//! * [`optimizers`]: the MSGDA and AdaMSGDA loops, step-size schedules and
//!   hyperparameter validators for the supported convergence regimes.
//! * [`diagnostics`]: stationarity metrics, Lyapunov potentials, rate
//!   fitting and finite-difference gradient checks.
//! * [`config`]: flat key=value experiment configuration.
//!
//! All numerical code is generic over [`Scalar`] (`f32` or `f64`);
//! the `*64` aliases at the crate root fix the common concrete choice.

pub mod adaptive;
pub mod config;
pub mod diagnostics;
pub mod error;
pub mod estimators;
pub mod kvfile;
pub mod linalg;
pub mod optimizers;
pub mod problems;

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

pub use error::Error;

/// Scalar field shared by every solver component.
///
/// Blanket-implemented for any real field with primitive conversions,
/// in practice `f32` and `f64`.
pub trait Scalar: RealField + FromPrimitive + ToPrimitive + Copy {
    /// Lossy conversion from `f64`, for literals and tolerances.
    fn c(v: f64) -> Self {
        Self::from_f64(v).expect("constant conversion")
    }
}

impl<T> Scalar for T where T: RealField + FromPrimitive + ToPrimitive + Copy {}

/// Dynamically sized column vector over the generic scalar.
pub type Vector<T> = nalgebra::DVector<T>;
/// Dynamically sized matrix over the generic scalar.
pub type Matrix<T> = nalgebra::DMatrix<T>;

pub type MinimaxProblem64 = problems::MinimaxProblem<f64>;
pub type ProblemConstants64 = problems::ProblemConstants<f64>;
pub type Hyperparams64 = optimizers::Hyperparams<f64>;
pub type OptimizerState64 = optimizers::OptimizerState<f64>;
pub type TrajectoryRecord64 = diagnostics::TrajectoryRecord<f64>;
pub type ExperimentConfig64 = config::ExperimentConfig<f64>;
