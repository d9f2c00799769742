//! Achievable distortion region for sending a bivariate Gaussian source
//! `(S1, S2)` over a two-user Gaussian broadcast channel, receiver `k`
//! reconstructing `S_k` under mean-squared error.
//!
//! * [`model`]: problem instances, the single-letter joint law of the hybrid
//!   scheme, linear MMSE and Gaussian mutual-information kernels.
//! * [`analytic`]: closed-form frontier, regimes, SNR threshold, genie bound.
//! * [`schemes`]: uncoded, hybrid and separation schemes.
//! * [`simulate`]: Monte Carlo checks with Gaussian and matched-covariance
//!   non-Gaussian sources and noises.
//!
//! The math in `model`, `analytic` and `schemes` is generic over
//! [`Scalar`] (`f32` / `f64`); the aliases below fix `f64`.

pub mod analytic;
pub mod error;
pub mod model;
pub mod scalar;
pub mod schemes;
pub mod simulate;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Instance = model::ProblemInstance<f64>;
pub type Instance32 = model::ProblemInstance<f32>;
pub type Hybrid = schemes::HybridParams<f64>;
pub type Uncoded = schemes::UncodedParams<f64>;
pub type Distortions = schemes::SchemeDistortions<f64>;
pub type Point = analytic::DistortionPoint<f64>;
pub type Regimes = analytic::RegimeReport<f64>;
pub type Joint = model::GaussianVector<f64>;
