//! Closed-form region objects: frontier endpoints, regime classification, the
//! uncoded and hybrid frontier branches, the optimal frontier, the SNR
//! threshold under which uncoded transmission is optimal, and the genie-aided
//! outer bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ProblemInstance;
use crate::scalar::Scalar;

/// Which scheme is optimal where along the frontier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `P <= 2ρN1/(1-ρ)`: uncoded transmission is optimal for every D1.
    UncodedEverywhere,
    /// `P > 2ρN1/(1-ρ)`: the hybrid scheme is needed on `[D1⁻, D1⁺]`.
    HybridWindow,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport<T> {
    pub regime: Regime,
    pub d1_min: T,
    pub d1_max: T,
    /// Present only for [`Regime::HybridWindow`].
    pub d1_minus: Option<T>,
    pub d1_plus: Option<T>,
}

impl<T: Scalar> RegimeReport<T> {
    /// `[D1⁻, D1⁺]` when the instance has a hybrid window.
    pub fn window(&self) -> Option<(T, T)> {
        self.d1_minus.zip(self.d1_plus)
    }

    /// Whether `d1` falls inside the closed hybrid window.
    pub fn in_window(&self, d1: T) -> bool {
        self.window().is_some_and(|(lo, hi)| d1 >= lo && d1 <= hi)
    }
}

/// Producer of a distortion pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceTag {
    Frontier,
    Uncoded,
    Hybrid,
    /// The `D2ʰ` lower bound evaluated as a curve in D1.
    HybridOuter,
    GenieOuter,
    Separation,
    TrivialAnalog,
}

impl SourceTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SourceTag::Frontier => "frontier",
            SourceTag::Uncoded => "uncoded",
            SourceTag::Hybrid => "hybrid",
            SourceTag::HybridOuter => "hybrid_outer",
            SourceTag::GenieOuter => "genie_outer",
            SourceTag::Separation => "separation",
            SourceTag::TrivialAnalog => "trivial_analog",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistortionPoint<T> {
    pub d1: T,
    pub d2: T,
    pub source_tag: SourceTag,
}

impl<T> DistortionPoint<T> {
    pub fn new(d1: T, d2: T, source_tag: SourceTag) -> Self {
        Self { d1, d2, source_tag }
    }
}

/// Smallest achievable D1 (receiver 2 ignored): `N1σ²/(P+N1)`.
pub fn d1_min<T: Scalar>(inst: &ProblemInstance<T>) -> T {
    inst.n1() * inst.sigma2() / (inst.power() + inst.n1())
}

/// D1 beyond which receiver 2 reaches its floor: `σ²((1-ρ²)P+N1)/(P+N1)`.
pub fn d1_max<T: Scalar>(inst: &ProblemInstance<T>) -> T {
    inst.sigma2() * (inst.decorrelation() * inst.power() + inst.n1()) / (inst.power() + inst.n1())
}

/// Power threshold `2ρN1/(1-ρ)` separating the two regimes.
pub fn regime_power_threshold<T: Scalar>(inst: &ProblemInstance<T>) -> T {
    T::lit(2.0) * inst.rho() * inst.n1() / (T::one() - inst.rho())
}

/// `P² − (P+2N1)²ρ²`, clamped to zero when negative by at most `1e-12` relative.
pub(crate) fn window_discriminant<T: Scalar>(inst: &ProblemInstance<T>) -> T {
    let p = inst.power();
    let w = (p + T::lit(2.0) * inst.n1()) * inst.rho();
    let disc = p * p - w * w;
    if disc < T::zero() && disc >= -T::lit(1e-12) * p * p {
        T::zero()
    } else {
        disc
    }
}

/// Endpoints `(D1⁻, D1⁺)` of the hybrid window whenever the discriminant is
/// nonnegative (including the regime boundary, where they coincide).
///
/// `D1⁻` is taken from the product of the roots, `D1⁻·D1⁺ = σ⁴(1-ρ²)N1/(P+N1)`,
/// to avoid cancellation.
pub fn window_endpoints<T: Scalar>(inst: &ProblemInstance<T>) -> Option<(T, T)> {
    let disc = window_discriminant(inst);
    if disc < T::zero() {
        return None;
    }
    let (p, n1, s) = (inst.power(), inst.n1(), inst.sigma2());
    let dec = inst.decorrelation();
    let two = T::lit(2.0);
    let root = (disc * dec).sqrt();
    let plus = s * ((p + two * n1) * dec + root) / (two * (p + n1));
    let minus = s * s * dec * n1 / ((p + n1) * plus);
    Some((minus, plus))
}

pub fn classify_regime<T: Scalar>(inst: &ProblemInstance<T>) -> RegimeReport<T> {
    let hybrid = inst.power() > regime_power_threshold(inst);
    let (d1_minus, d1_plus) = match (hybrid, window_endpoints(inst)) {
        (true, Some((lo, hi))) => (Some(lo), Some(hi)),
        // threshold and discriminant disagree only within rounding: collapse the window
        (true, None) => {
            let mid = inst.conditional_variance() * (inst.power() + T::lit(2.0) * inst.n1())
                / (T::lit(2.0) * (inst.power() + inst.n1()));
            (Some(mid), Some(mid))
        }
        (false, _) => (None, None),
    };
    RegimeReport {
        regime: if hybrid {
            Regime::HybridWindow
        } else {
            Regime::UncodedEverywhere
        },
        d1_min: d1_min(inst),
        d1_max: d1_max(inst),
        d1_minus,
        d1_plus,
    }
}

fn out_of_domain<T: Scalar>(d1: T, lo: T, hi: T) -> Error {
    Error::OutOfDomain {
        d1: d1.to_f64().unwrap_or(f64::NAN),
        lo: lo.to_f64().unwrap_or(f64::NAN),
        hi: hi.to_f64().unwrap_or(f64::NAN),
    }
}

/// Uncoded frontier `D2ᵘ(D1)` on `[D1ᵐⁱⁿ, D1ᵐᵃˣ]`.
pub fn d2_uncoded_frontier<T: Scalar>(inst: &ProblemInstance<T>, d1: T) -> Result<T> {
    let (lo, hi) = (d1_min(inst), d1_max(inst));
    if !(d1 >= lo && d1 <= hi) {
        return Err(out_of_domain(d1, lo, hi));
    }
    let (p, s, n1, n2) = (inst.power(), inst.sigma2(), inst.n1(), inst.n2());
    let dec = inst.decorrelation();
    // t ranges over [0, 1-ρ²] on the domain; both radicands are affine in t.
    let t = ((p + n1) * d1 / (p * s) - n1 / p).max(T::zero());
    let first = (T::one() - t).max(T::zero()).sqrt();
    let second = (inst.rho() * inst.rho() / dec * t).sqrt();
    let gap = first - second;
    Ok(s * (gap * gap * dec * p / (p + n2) + n2 / (p + n2)))
}

/// Hybrid frontier `D2ʰ(D1) = σ²/(P+N2) · (N1(1-ρ²)σ²/D1 + N2 − N1)`, for `D1 > 0`.
///
/// This is also the genie-aided lower bound on D2 for every D1 in `[D1ᵐⁱⁿ, D1ᵐᵃˣ]`.
pub fn d2_hybrid_frontier<T: Scalar>(inst: &ProblemInstance<T>, d1: T) -> T {
    let (p, s, n1, n2) = (inst.power(), inst.sigma2(), inst.n1(), inst.n2());
    s / (p + n2) * (n1 * inst.conditional_variance() / d1 + n2 - n1)
}

/// Optimal frontier: the minimum achievable D2 for a given D1.
pub fn d2_star<T: Scalar>(inst: &ProblemInstance<T>, d1: T) -> Result<T> {
    let report = classify_regime(inst);
    d2_star_with(inst, &report, d1)
}

/// [`d2_star`] with a precomputed regime report, for grid evaluation.
pub fn d2_star_with<T: Scalar>(
    inst: &ProblemInstance<T>,
    report: &RegimeReport<T>,
    d1: T,
) -> Result<T> {
    if !(d1 >= report.d1_min) {
        return Err(out_of_domain(d1, report.d1_min, T::infinity()));
    }
    if d1 > report.d1_max {
        return Ok(inst.d2_floor());
    }
    if report.in_window(d1) {
        Ok(d2_hybrid_frontier(inst, d1))
    } else {
        d2_uncoded_frontier(inst, d1)
    }
}

/// SNR threshold `Γ(D1, σ², ρ)`: uncoded transmission is optimal at `D1`
/// whenever `P/N1 <= Γ`.
pub fn gamma_threshold<T: Scalar>(d1: T, sigma2: T, rho: T) -> T {
    let c = sigma2 * (T::one() - rho * rho);
    if d1 > T::zero() && d1 < c {
        (sigma2 * c - T::lit(2.0) * d1 * c + d1 * d1) / (d1 * (c - d1))
    } else {
        T::infinity()
    }
}

/// Genie-aided pair `(D1|2, D2)` for power split `alpha` ∈ [0, 1], where
/// receiver 1 also sees `S2`.
pub fn genie_region<T: Scalar>(inst: &ProblemInstance<T>, alpha: T) -> Result<(T, T)> {
    if !(alpha >= T::zero() && alpha <= T::one()) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha.to_f64().unwrap_or(f64::NAN),
            reason: "power split must lie in [0, 1]",
        });
    }
    let (p, s, n1, n2) = (inst.power(), inst.sigma2(), inst.n1(), inst.n2());
    let d12 = inst.conditional_variance() / (T::one() + alpha * p / n1);
    let d2 = s / (T::one() + (T::one() - alpha) * p / (alpha * p + n2));
    Ok((d12, d2))
}
