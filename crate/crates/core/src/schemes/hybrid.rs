use crate::analytic::{classify_regime, window_discriminant, Regime};
use crate::error::{Error, Result};
use crate::model::{
    gaussian_mi, joint_law_from_parts, labels, mmse_estimate, ProblemInstance, SingularPolicy,
};
use crate::scalar::Scalar;
use crate::schemes::{EstimatorCoeffs, SchemeDistortions};

fn f<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Relative slack on power comparisons.
fn power_slack<T: Scalar>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(8.0))
}

/// Knobs of the hybrid scheme `X = α̃S1 + β̃S2 + γ̃(S2 + U)`, `Var(U) = Q`.
///
/// Only constructible through checked constructors, so every value satisfies
/// the power constraint and the digital rate window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HybridParams<T> {
    alpha_t: T,
    beta_t: T,
    gamma_t: T,
    q: T,
    rate_window: (T, T),
}

impl<T: Scalar> HybridParams<T> {
    /// `Q = Q*` and `γ̃` saturating the power constraint. Requires the analog
    /// layer to leave some power for the digital one.
    pub fn new(inst: &ProblemInstance<T>, alpha_t: T, beta_t: T) -> Result<Self> {
        let q = q_star(inst, alpha_t, beta_t)?;
        Self::build(inst, alpha_t, beta_t, q)
    }

    /// Arbitrary quantization noise `q ≥ Q*`, `γ̃` saturating the power constraint.
    pub fn with_q(inst: &ProblemInstance<T>, alpha_t: T, beta_t: T, q: T) -> Result<Self> {
        let qs = q_star(inst, alpha_t, beta_t)?;
        if !(q >= qs * (T::one() - power_slack::<T>())) {
            let lower = T::lit(0.5) * ((inst.sigma2() + q) / q).ln();
            let upper = T::lit(0.5) * ((inst.sigma2() + qs) / qs).ln();
            return Err(Error::RateInfeasible {
                lower: f(lower),
                upper: f(upper),
            });
        }
        Self::build(inst, alpha_t, beta_t, q)
    }

    /// No digital layer (`γ̃ = 0`). `Q` is reported as `+∞`, the limit of `Q*`
    /// as the analog layer saturates the power.
    pub fn pure_analog(inst: &ProblemInstance<T>, alpha_t: T, beta_t: T) -> Result<Self> {
        check_gains(alpha_t, beta_t)?;
        let analog = inst.analog_power(alpha_t, beta_t);
        if analog > inst.power() * (T::one() + power_slack::<T>()) {
            return Err(Error::AnalogPowerExceeded {
                analog: f(analog),
                power: f(inst.power()),
            });
        }
        Ok(Self {
            alpha_t,
            beta_t,
            gamma_t: T::zero(),
            q: T::infinity(),
            rate_window: (T::zero(), T::zero()),
        })
    }

    /// The uncoded scheme as a hybrid one: analog gains at full power, no digital layer.
    pub fn from_uncoded(inst: &ProblemInstance<T>, up: &super::UncodedParams<T>) -> Result<Self> {
        let (a, b) = up.input_gains(inst);
        Self::pure_analog(inst, a, b)
    }

    fn build(inst: &ProblemInstance<T>, alpha_t: T, beta_t: T, q: T) -> Result<Self> {
        let gamma_t = solve_gamma(inst, alpha_t, beta_t, q)?;
        let joint = joint_law_from_parts(inst, alpha_t, beta_t, gamma_t, q)?;
        let lower = gaussian_mi(&joint, &[labels::S2], &[labels::XD])?;
        let upper = gaussian_mi(&joint, &[labels::XD], &[labels::Y2])?;
        if lower > upper + T::lit(1e-10) * (T::one() + upper) {
            return Err(Error::RateInfeasible {
                lower: f(lower),
                upper: f(upper),
            });
        }
        Ok(Self {
            alpha_t,
            beta_t,
            gamma_t,
            q,
            rate_window: (lower, upper),
        })
    }

    pub fn alpha_t(&self) -> T {
        self.alpha_t
    }
    pub fn beta_t(&self) -> T {
        self.beta_t
    }
    pub fn gamma_t(&self) -> T {
        self.gamma_t
    }
    /// Quantization-noise variance; `+∞` for [`pure_analog`](Self::pure_analog) parameters.
    pub fn q(&self) -> T {
        self.q
    }
    /// `(I(S2;Xd), I(Xd;Y2))` in nats; any digital rate inside the window decodes.
    pub fn rate_window(&self) -> (T, T) {
        self.rate_window
    }
    pub fn is_pure_analog(&self) -> bool {
        self.gamma_t == T::zero()
    }
}

fn check_gains<T: Scalar>(alpha_t: T, beta_t: T) -> Result<()> {
    for (name, v) in [("alpha_t", alpha_t), ("beta_t", beta_t)] {
        if !(v >= T::zero()) || !v.is_finite() {
            return Err(Error::InvalidParameter {
                name,
                value: f(v),
                reason: "analog gain must be finite and nonnegative",
            });
        }
    }
    Ok(())
}

/// Smallest quantization noise for which the digital layer decodes at the weak receiver:
/// `Q* = σ²((1-ρ²)α̃²σ² + N2) / (P − σ²(α̃²+β̃²+2ρα̃β̃))`.
pub fn q_star<T: Scalar>(inst: &ProblemInstance<T>, alpha_t: T, beta_t: T) -> Result<T> {
    check_gains(alpha_t, beta_t)?;
    let s = inst.sigma2();
    let analog = inst.analog_power(alpha_t, beta_t);
    let p = inst.power();
    if analog > p * (T::one() + power_slack::<T>()) {
        return Err(Error::AnalogPowerExceeded {
            analog: f(analog),
            power: f(p),
        });
    }
    let spare = p - analog;
    if spare <= p * power_slack::<T>() {
        return Err(Error::PureAnalog { power: f(p) });
    }
    Ok(s * (inst.decorrelation() * alpha_t * alpha_t * s + inst.n2()) / spare)
}

/// Digital scale `γ̃ ≥ 0` at which the total input power equals `P`.
///
/// Positive root of `γ̃²(σ²+Q) + 2γ̃σ²(α̃ρ+β̃) + analog − P = 0`, written as
/// `−2c / (b + √(b² − 4ac))` so no subtraction of near-equal terms occurs.
pub fn solve_gamma<T: Scalar>(inst: &ProblemInstance<T>, alpha_t: T, beta_t: T, q: T) -> Result<T> {
    check_gains(alpha_t, beta_t)?;
    if !(q > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "Q",
            value: f(q),
            reason: "quantization noise variance must be positive",
        });
    }
    let s = inst.sigma2();
    let p = inst.power();
    let analog = inst.analog_power(alpha_t, beta_t);
    if analog > p * (T::one() + power_slack::<T>()) {
        return Err(Error::AnalogPowerExceeded {
            analog: f(analog),
            power: f(p),
        });
    }
    let a = s + q;
    let b = T::lit(2.0) * s * (alpha_t * inst.rho() + beta_t);
    let c = (analog - p).min(T::zero());
    if c == T::zero() {
        return Ok(T::zero());
    }
    Ok(-T::lit(2.0) * c / (b + (b * b - T::lit(4.0) * a * c).sqrt()))
}

/// Distortions of the hybrid scheme from linear MMSE estimation of `S_k`
/// given `(X_d, α̃S1 + β̃S2 + Z_k)` on the scheme's joint law.
pub fn hybrid_distortions<T: Scalar>(
    inst: &ProblemInstance<T>,
    hp: &HybridParams<T>,
) -> Result<SchemeDistortions<T>> {
    let (lower, upper) = hp.rate_window;
    if lower > upper + T::lit(1e-10) * (T::one() + upper) {
        return Err(Error::RateInfeasible {
            lower: f(lower),
            upper: f(upper),
        });
    }
    let joint = joint_law_from_parts(inst, hp.alpha_t, hp.beta_t, hp.gamma_t, hp.q)?;
    let mut d = [T::zero(); 2];
    let mut coeffs = [EstimatorCoeffs {
        a: T::zero(),
        b: T::zero(),
    }; 2];
    for k in 1..=2 {
        let est = mmse_estimate(
            &joint,
            labels::source(k),
            &[labels::XD, labels::analog_observation(k)],
            SingularPolicy::PseudoInverse,
        )?;
        d[k - 1] = est.mmse;
        coeffs[k - 1] = EstimatorCoeffs {
            a: est.coeffs[0],
            b: est.coeffs[1],
        };
    }
    Ok(SchemeDistortions {
        d1: d[0],
        d2: d[1],
        coeffs: Some(coeffs),
    })
}

/// Closed-form hybrid distortions at `Q = Q*` and saturated power, as functions of `(α̃, β̃)`.
pub fn hybrid_closed_form<T: Scalar>(inst: &ProblemInstance<T>, alpha_t: T, beta_t: T) -> (T, T) {
    let (p, s, n1, n2, rho) = (inst.power(), inst.sigma2(), inst.n1(), inst.n2(), inst.rho());
    let dec = inst.decorrelation();
    let two = T::lit(2.0);
    let (a2, b2, ab) = (alpha_t * alpha_t, beta_t * beta_t, alpha_t * beta_t);
    let num = dec * (n1 * p - (b2 + two * ab * rho) * n1 * s + b2 * n2 * s + dec * a2 * b2 * s * s)
        + n1 * n2;
    let den = dec * a2 * (p + n1) * s + p * n1 + n1 * n2 + (a2 + b2 + two * ab * rho) * (n2 - n1) * s;
    let d1 = s * num / den;
    let d2 = s * (a2 * dec * s + n2) / (p + n2);
    (d1, d2)
}

/// `β̃ = N1ρ / (α̃(1-ρ²)σ²)`, the analog S2 weight that lets the hybrid scheme
/// meet the genie-aided bound.
pub fn matched_beta<T: Scalar>(inst: &ProblemInstance<T>, alpha_t: T) -> T {
    if inst.rho() == T::zero() {
        return T::zero();
    }
    inst.n1() * inst.rho() / (alpha_t * inst.conditional_variance())
}

/// Receiver-1 distortion once `β̃ =` [`matched_beta`]:
/// `σ²(1-ρ²)N1 / ((1-ρ²)α̃²σ² + N1)`.
pub fn hybrid_d1_at_matched_beta<T: Scalar>(inst: &ProblemInstance<T>, alpha_t: T) -> T {
    let c = inst.conditional_variance();
    c * inst.n1() / (inst.decorrelation() * alpha_t * alpha_t * inst.sigma2() + inst.n1())
}

/// Range of `α̃²` for which `(α̃, matched_beta(α̃))` fits in the power budget.
/// `None` without a hybrid window.
pub fn alpha_window<T: Scalar>(inst: &ProblemInstance<T>) -> Option<(T, T)> {
    let disc = window_discriminant(inst);
    if disc < T::zero() {
        return None;
    }
    let (p, s, n1, rho) = (inst.power(), inst.sigma2(), inst.n1(), inst.rho());
    let dec = inst.decorrelation();
    let two = T::lit(2.0);
    let root = (disc * dec).sqrt();
    let hi = (dec * p - two * rho * rho * n1 + root) / (two * dec * s);
    // product of the two roots is ρ²N1²/((1-ρ²)σ²)²
    let lo = (rho * n1 / (dec * s)).powi(2) / hi;
    Some((lo, hi))
}

/// Hybrid parameters achieving `(D1, D2ʰ(D1))` for `D1 ∈ [D1⁻, D1⁺]`.
///
/// At the window edges the analog layer uses all the power; those points are
/// returned as pure analog parameters (rescaled onto the power boundary).
pub fn optimal_hybrid_params<T: Scalar>(inst: &ProblemInstance<T>, d1: T) -> Result<HybridParams<T>> {
    if classify_regime(inst).regime != Regime::HybridWindow {
        return Err(Error::NoHybridWindow);
    }
    let (lo, hi) = alpha_window(inst).ok_or(Error::NoHybridWindow)?;
    if !(d1 > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "D1",
            value: f(d1),
            reason: "must be positive",
        });
    }
    let alpha_sq = inst.n1() / d1 - inst.n1() / inst.conditional_variance();
    let tol = T::lit(1e-9) * hi;
    if !(alpha_sq >= lo - tol && alpha_sq <= hi + tol) || alpha_sq <= T::zero() && inst.rho() > T::zero() {
        return Err(Error::AlphaWindow {
            alpha_sq: f(alpha_sq),
            lo: f(lo),
            hi: f(hi),
        });
    }
    let alpha_t = alpha_sq.max(T::zero()).sqrt();
    let beta_t = matched_beta(inst, alpha_t);
    let analog = inst.analog_power(alpha_t, beta_t);
    let p = inst.power();
    if analog >= p * (T::one() - power_slack::<T>()) {
        let k = (p / analog).sqrt();
        return HybridParams::pure_analog(inst, alpha_t * k, beta_t * k);
    }
    HybridParams::new(inst, alpha_t, beta_t)
}

/// Largest `β̃` keeping the analog layer within power at fixed `α̃`.
pub fn sweep_beta_max<T: Scalar>(inst: &ProblemInstance<T>, alpha_t: T) -> Result<T> {
    check_gains(alpha_t, T::zero())?;
    let room = inst.power() / inst.sigma2() - alpha_t * alpha_t * inst.decorrelation();
    if alpha_t * alpha_t * inst.sigma2() > inst.power() {
        return Err(Error::AnalogPowerExceeded {
            analog: f(alpha_t * alpha_t * inst.sigma2()),
            power: f(inst.power()),
        });
    }
    Ok((room.sqrt() - inst.rho() * alpha_t).max(T::zero()))
}

/// One point of a fixed-`α̃` hybrid sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint<T> {
    pub beta_t: T,
    pub d1: T,
    pub d2: T,
}

/// Hybrid performance over `β̃ ∈ [0, β̃_max]` at fixed `α̃`, `n_beta` evenly
/// spaced points. `D2` is the same at every point. At `β̃_max` the digital
/// layer gets no power and the point coincides with an uncoded one.
pub fn hybrid_sweep<T: Scalar>(
    inst: &ProblemInstance<T>,
    alpha_t: T,
    n_beta: usize,
) -> Result<Vec<SweepPoint<T>>> {
    if n_beta < 2 {
        return Err(Error::InvalidParameter {
            name: "n_beta",
            value: n_beta as f64,
            reason: "need at least two sweep points",
        });
    }
    let beta_max = sweep_beta_max(inst, alpha_t)?;
    let last = T::from_usize(n_beta - 1).unwrap();
    Ok((0..n_beta)
        .map(|j| {
            let beta_t = if j == n_beta - 1 {
                beta_max
            } else {
                beta_max * T::from_usize(j).unwrap() / last
            };
            let (d1, d2) = hybrid_closed_form(inst, alpha_t, beta_t);
            SweepPoint { beta_t, d1, d2 }
        })
        .collect())
}
