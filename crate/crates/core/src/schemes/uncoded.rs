use crate::error::{Error, Result};
use crate::model::ProblemInstance;
use crate::analytic::{d1_max, d1_min};
use crate::scalar::Scalar;
use crate::schemes::{EstimatorCoeffs, SchemeDistortions};

/// Weights of the uncoded map `X ∝ α S1 + β S2`, normalized so `α + β = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncodedParams<T> {
    alpha: T,
    beta: T,
}

impl<T: Scalar> UncodedParams<T> {
    /// `alpha ∈ [0, 1]`, `beta = 1 − alpha`.
    pub fn new(alpha: T) -> Result<Self> {
        if !(alpha >= T::zero() && alpha <= T::one()) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha.to_f64().unwrap_or(f64::NAN),
                reason: "must lie in [0, 1]",
            });
        }
        Ok(Self {
            alpha,
            beta: T::one() - alpha,
        })
    }

    /// Arbitrary nonnegative weights, rescaled to sum to one.
    pub fn from_weights(alpha: T, beta: T) -> Result<Self> {
        let sum = alpha + beta;
        if !(alpha >= T::zero() && beta >= T::zero()) || !(sum > T::zero()) || !sum.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha+beta",
                value: sum.to_f64().unwrap_or(f64::NAN),
                reason: "weights must be nonnegative, finite and not both zero",
            });
        }
        Ok(Self {
            alpha: alpha / sum,
            beta: beta / sum,
        })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    fn norm(&self, rho: T) -> T {
        self.alpha * self.alpha + T::lit(2.0) * self.alpha * self.beta * rho + self.beta * self.beta
    }

    /// Gains `(α̃, β̃)` with `X = α̃ S1 + β̃ S2` using the full power `P`.
    pub fn input_gains(&self, inst: &ProblemInstance<T>) -> (T, T) {
        let k = (inst.power() / (inst.sigma2() * self.norm(inst.rho()))).sqrt();
        (k * self.alpha, k * self.beta)
    }
}

/// Closed-form distortions of the uncoded scheme with per-letter MMSE decoding.
pub fn uncoded_distortions<T: Scalar>(
    inst: &ProblemInstance<T>,
    up: &UncodedParams<T>,
) -> SchemeDistortions<T> {
    let (p, s, n1, n2) = (inst.power(), inst.sigma2(), inst.n1(), inst.n2());
    let (a, b) = (up.alpha, up.beta);
    let norm = up.norm(inst.rho());
    let dec = inst.decorrelation();
    let d1 = s * (p * b * b * dec / ((p + n1) * norm) + n1 / (p + n1));
    let d2 = s * (p * a * a * dec / ((p + n2) * norm) + n2 / (p + n2));

    let (ga, gb) = up.input_gains(inst);
    let rho = inst.rho();
    let coeff = |cov: T, noise: T| EstimatorCoeffs {
        a: T::zero(),
        b: cov / (p + noise),
    };
    SchemeDistortions {
        d1,
        d2,
        coeffs: Some([
            coeff(s * (ga + rho * gb), n1),
            coeff(s * (rho * ga + gb), n2),
        ]),
    }
}

/// Finds the uncoded weights whose receiver-1 distortion equals `target_d1`.
///
/// `D̂1` decreases monotonically from `D1ᵐᵃˣ` (α = 0) to `D1ᵐⁱⁿ` (α = 1), so
/// bisection on α converges; stops at an α-bracket of `1e-12`.
pub fn invert_uncoded_d1<T: Scalar>(
    inst: &ProblemInstance<T>,
    target_d1: T,
) -> Result<UncodedParams<T>> {
    let d1_of = |alpha: T| uncoded_distortions(inst, &UncodedParams::new(alpha).unwrap()).d1;
    let (lo_d1, hi_d1) = (d1_min(inst), d1_max(inst));
    if !(target_d1 >= lo_d1 && target_d1 <= hi_d1) {
        return Err(Error::OutOfDomain {
            d1: target_d1.to_f64().unwrap_or(f64::NAN),
            lo: lo_d1.to_f64().unwrap(),
            hi: hi_d1.to_f64().unwrap(),
        });
    }
    // the closed form can sit an ulp inside the domain at either end
    if target_d1 >= d1_of(T::zero()) {
        return UncodedParams::new(T::zero());
    }
    if target_d1 <= d1_of(T::one()) {
        return UncodedParams::new(T::one());
    }
    let (mut lo, mut hi) = (T::zero(), T::one());
    let tol = T::lit(1e-12).max(T::epsilon());
    while hi - lo > tol {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if d1_of(mid) > target_d1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    UncodedParams::new((lo + hi) / T::lit(2.0))
}
