use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{hybrid_joint_law, labels, ProblemInstance};
use crate::schemes::{hybrid_distortions, HybridParams, SchemeDistortions};
use crate::simulate::empirical::signals;
use crate::simulate::{
    empirical_distortions, gaussian_entropy, kl_entropy_1d, sample_batch, DistributionFamily,
    EmpiricalDistortions,
};

/// Allowed excess (nats) of a non-Gaussian conditional-entropy estimate over
/// the Gaussian control before the check fails.
pub const ENTROPY_SLACK: f64 = 0.02;

/// Offset applied to the seed of the Gaussian control batch.
const CONTROL_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

/// Entropy comparison at one receiver.
///
/// `h(Xd|Y_k)` is bounded above by the entropy of the linear-estimation
/// residual `Xd − c_k Y_k`, with equality in the Gaussian case; both the
/// tested family and a Gaussian control are estimated this way.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyCheck {
    pub receiver: usize,
    /// `c_k = Cov(Xd, Y_k) / Var(Y_k)`.
    pub residual_coeff: f64,
    /// Exact `h(Xd|Y_k)` for Gaussian sources and noises.
    pub h_gaussian_exact: f64,
    /// kNN estimate on the Gaussian control batch.
    pub h_control: f64,
    /// kNN estimate on the tested family.
    pub h_family: f64,
    /// `h_family − h_control`; expected ≤ 0 up to estimator noise.
    pub gap: f64,
    /// `h(γ̃U)`.
    pub h_quantizer: f64,
    /// `h_family − h(γ̃U)`, an upper bound on `I(S2;Xd) − I(Xd;Y_k)` for the tested family.
    pub rate_deficit_bound: f64,
    pub gap_ok: bool,
    pub decodable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorstCaseReport {
    pub family: DistributionFamily,
    pub n: usize,
    pub k_nn: usize,
    pub seed: u64,
    /// Gaussian-case distortions of the scheme.
    pub analytic: SchemeDistortions<f64>,
    pub family_empirical: EmpiricalDistortions,
    pub control_empirical: EmpiricalDistortions,
    /// `|empirical − analytic| / SE` per receiver for the tested family.
    pub z_scores: [f64; 2],
    pub distortions_ok: bool,
    /// `None` for pure-analog parameters (no digital layer to decode).
    pub entropy: Option<[EntropyCheck; 2]>,
}

impl WorstCaseReport {
    pub fn passed(&self) -> bool {
        self.distortions_ok
            && self
                .entropy
                .is_none_or(|e| e.iter().all(|c| c.gap_ok && c.decodable))
    }
}

/// Runs the scheme designed for Gaussian statistics on `family` and checks
/// the two consequences of the worst-case property: distortions unchanged
/// (fixed linear estimators see only second moments) and the digital layer
/// still decodable at both receivers.
pub fn worst_case_check(
    inst: &ProblemInstance<f64>,
    hp: &HybridParams<f64>,
    family: DistributionFamily,
    n: usize,
    k_nn: usize,
    seed: u64,
) -> Result<WorstCaseReport> {
    let min = 10 * k_nn.max(1);
    if n < min {
        return Err(Error::TooFewSamples { n, min });
    }
    let analytic = hybrid_distortions(inst, hp)?;
    let batch = sample_batch(inst, hp, family, n, seed)?;
    let control = sample_batch(
        inst,
        hp,
        DistributionFamily::Gaussian,
        n,
        seed.wrapping_add(CONTROL_SEED_OFFSET),
    )?;
    let family_empirical = empirical_distortions(inst, hp, &batch)?;
    let control_empirical = empirical_distortions(inst, hp, &control)?;
    let z_scores = [
        family_empirical.z_score(1, analytic.d1),
        family_empirical.z_score(2, analytic.d2),
    ];
    let distortions_ok = z_scores.iter().all(|&z| z <= 3.0);

    let entropy = if hp.is_pure_analog() {
        None
    } else {
        let joint = hybrid_joint_law(inst, hp)?;
        let h_quantizer = gaussian_entropy(hp.gamma_t().powi(2) * hp.q());
        let mut checks = Vec::with_capacity(2);
        for k in 1..=2 {
            let y = labels::receiver_output(k);
            let c = joint.covariance(labels::XD, y)? / joint.variance(y)?;
            let cond_var = joint.variance(labels::XD)? - c * joint.covariance(labels::XD, y)?;
            let residuals = |b: &crate::simulate::SampleBatch| -> Vec<f64> {
                (0..b.n)
                    .map(|i| {
                        let (xd, a1, a2) = signals(hp, b, i);
                        let yk = xd + if k == 1 { a1 } else { a2 };
                        xd - c * yk
                    })
                    .collect()
            };
            let h_family = kl_entropy_1d(&residuals(&batch), k_nn)?;
            let h_control = kl_entropy_1d(&residuals(&control), k_nn)?;
            let gap = h_family - h_control;
            let rate_deficit_bound = h_family - h_quantizer;
            checks.push(EntropyCheck {
                receiver: k,
                residual_coeff: c,
                h_gaussian_exact: gaussian_entropy(cond_var),
                h_control,
                h_family,
                gap,
                h_quantizer,
                rate_deficit_bound,
                gap_ok: gap <= ENTROPY_SLACK,
                decodable: rate_deficit_bound <= ENTROPY_SLACK,
            });
        }
        Some([checks[0], checks[1]])
    };

    Ok(WorstCaseReport {
        family,
        n,
        k_nn,
        seed,
        analytic,
        family_empirical,
        control_empirical,
        z_scores,
        distortions_ok,
        entropy,
    })
}
