use crate::error::{Error, Result};
use crate::model::ProblemInstance;
use crate::scalar::Scalar;
use crate::schemes::SchemeDistortions;

/// Source coding followed by degraded-broadcast channel coding.
///
/// `lambda` is the power fraction of the private (receiver 1) layer. The
/// common layer carries `S2` at `R2 = ½ln(1 + (1-λ)P/(λP+N2))`; the private
/// layer describes `S1` given the reconstruction `Ŝ2` at `R1 = ½ln(1 + λP/N1)`.
/// Gaussian test channels give `D2 = σ²e^{-2R2}` and
/// `D1 = σ²(1 − ρ²(1 − D2/σ²))e^{-2R1}`.
pub fn separation_baseline<T: Scalar>(
    inst: &ProblemInstance<T>,
    lambda: T,
) -> Result<SchemeDistortions<T>> {
    if !(lambda >= T::zero() && lambda <= T::one()) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda.to_f64().unwrap_or(f64::NAN),
            reason: "power split must lie in [0, 1]",
        });
    }
    let (p, s, n1, n2, rho) = (inst.power(), inst.sigma2(), inst.n1(), inst.n2(), inst.rho());
    // e^{-2R} for each layer
    let shrink2 = (lambda * p + n2) / (p + n2);
    let shrink1 = n1 / (n1 + lambda * p);
    let d2 = s * shrink2;
    let d1 = s * (T::one() - rho * rho * (T::one() - d2 / s)) * shrink1;
    Ok(SchemeDistortions {
        d1,
        d2,
        coeffs: None,
    })
}
