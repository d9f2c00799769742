//! Problem instances, the single-letter joint law of the hybrid scheme, and
//! the Gaussian estimation / information kernels evaluated on it.

mod gaussian;
mod joint;
pub mod linalg;

pub use gaussian::{gaussian_mi, mmse_estimate, GaussianVector, MmseEstimate, SingularPolicy};
pub use joint::{hybrid_joint_law, joint_law_from_parts, labels};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One broadcast problem: transmit power, per-component source variance,
/// source correlation and the two receiver noise variances.
///
/// Receiver 1 is always the strong user (`n1 <= n2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemInstance<T> {
    power: T,
    sigma2: T,
    rho: T,
    n1: T,
    n2: T,
}

/// Validates the five scalars and builds a [`ProblemInstance`].
pub fn make_instance<T: Scalar>(
    power: T,
    sigma2: T,
    rho: T,
    n1: T,
    n2: T,
) -> Result<ProblemInstance<T>> {
    let named = [("P", power), ("sigma2", sigma2), ("rho", rho), ("N1", n1), ("N2", n2)];
    for (name, v) in named {
        if !v.is_finite() {
            return Err(Error::InvalidInstance(format!("{name} must be finite, got {v}")));
        }
    }
    for (name, v) in [("P", power), ("sigma2", sigma2), ("N1", n1), ("N2", n2)] {
        if v <= T::zero() {
            return Err(Error::InvalidInstance(format!("{name} must be > 0, got {v}")));
        }
    }
    if rho < T::zero() || rho >= T::one() {
        return Err(Error::InvalidInstance(format!(
            "rho must satisfy 0 <= rho < 1, got {rho}"
        )));
    }
    if n1 > n2 {
        return Err(Error::InvalidInstance(format!(
            "receiver 1 must be the strong user: N1 = {n1} > N2 = {n2}"
        )));
    }
    Ok(ProblemInstance {
        power,
        sigma2,
        rho,
        n1,
        n2,
    })
}

impl<T: Scalar> ProblemInstance<T> {
    pub fn new(power: T, sigma2: T, rho: T, n1: T, n2: T) -> Result<Self> {
        make_instance(power, sigma2, rho, n1, n2)
    }

    pub fn power(&self) -> T {
        self.power
    }
    pub fn sigma2(&self) -> T {
        self.sigma2
    }
    pub fn rho(&self) -> T {
        self.rho
    }
    pub fn n1(&self) -> T {
        self.n1
    }
    pub fn n2(&self) -> T {
        self.n2
    }

    /// `1 - rho^2`.
    pub fn decorrelation(&self) -> T {
        T::one() - self.rho * self.rho
    }

    /// Conditional variance of one source component given the other, `σ²(1-ρ²)`.
    pub fn conditional_variance(&self) -> T {
        self.sigma2 * self.decorrelation()
    }

    /// Analog-layer power `σ²(a² + b² + 2ρab)` of `a·S1 + b·S2`.
    pub fn analog_power(&self, a: T, b: T) -> T {
        self.sigma2 * (a * a + b * b + T::lit(2.0) * self.rho * a * b)
    }

    /// Distortion floor at receiver 2, `σ² N2 / (P + N2)`.
    pub fn d2_floor(&self) -> T {
        self.sigma2 * self.n2 / (self.power + self.n2)
    }

    pub fn to_f64(&self) -> ProblemInstance<f64> {
        ProblemInstance {
            power: self.power.to_f64().unwrap(),
            sigma2: self.sigma2.to_f64().unwrap(),
            rho: self.rho.to_f64().unwrap(),
            n1: self.n1.to_f64().unwrap(),
            n2: self.n2.to_f64().unwrap(),
        }
    }
}

impl ProblemInstance<f64> {
    /// Instance with a hybrid window
    /// (`P = 1, σ² = 1, ρ = 0.4, N1 = 0.3, N2 = 1`).
    pub fn hybrid_window_example() -> Self {
        make_instance(1.0, 1.0, 0.4, 0.3, 1.0).unwrap()
    }

    /// Instance where the uncoded scheme is optimal everywhere (`ρ = 0.8`).
    pub fn uncoded_example() -> Self {
        make_instance(1.0, 1.0, 0.8, 0.3, 1.0).unwrap()
    }
}
