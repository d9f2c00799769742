//! Monte Carlo validation of the analytic distortions, and of the claim that
//! Gaussian sources and noises are the worst case among matched-covariance
//! alternatives.
//!
//! Everything here runs in `f64`. Draws are generated in fixed-size chunks,
//! each from its own ChaCha stream, so results do not depend on the number of
//! worker threads.

mod accum;
mod batch;
mod empirical;
mod entropy;
mod family;
mod worst_case;

pub use accum::{Moments, RawMoments};
pub use batch::{sample_batch, SampleBatch, CHUNK};
pub use empirical::{empirical_distortions, residual_correlations, EmpiricalDistortions};
pub use entropy::{gaussian_entropy, kl_entropy_1d};
pub use family::DistributionFamily;
pub use worst_case::{worst_case_check, EntropyCheck, WorstCaseReport, ENTROPY_SLACK};
