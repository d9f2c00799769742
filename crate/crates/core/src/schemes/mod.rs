//! Parameter-to-distortion maps for the uncoded, hybrid and separation
//! schemes, plus the hybrid parameters that meet the genie-aided bound.

mod hybrid;
mod separation;
mod uncoded;

pub use hybrid::{
    alpha_window, hybrid_closed_form, hybrid_d1_at_matched_beta, hybrid_distortions, hybrid_sweep,
    matched_beta, optimal_hybrid_params, q_star, solve_gamma, sweep_beta_max, HybridParams,
    SweepPoint,
};
pub use separation::separation_baseline;
pub use uncoded::{invert_uncoded_d1, uncoded_distortions, UncodedParams};

use serde::{Deserialize, Serialize};

/// Linear reconstruction `Ŝ_k = a·X_d + b·(analog observation)` at one receiver.
///
/// For the uncoded scheme `a = 0` and `b` multiplies the channel output `Y_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimatorCoeffs<T> {
    pub a: T,
    pub b: T,
}

/// Per-receiver mean-squared errors of a scheme, with the linear estimators
/// that achieve them when the scheme has any.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeDistortions<T> {
    pub d1: T,
    pub d2: T,
    pub coeffs: Option<[EstimatorCoeffs<T>; 2]>,
}

impl<T: Copy> SchemeDistortions<T> {
    pub fn get(&self, receiver: usize) -> T {
        if receiver == 1 {
            self.d1
        } else {
            self.d2
        }
    }
}
