use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::model::ProblemInstance;
use crate::schemes::{hybrid_distortions, EstimatorCoeffs, HybridParams, SchemeDistortions};
use crate::simulate::{Moments, RawMoments, SampleBatch, CHUNK};

/// Monte Carlo distortions with their standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmpiricalDistortions {
    pub n: usize,
    /// Squared reconstruction error at receivers 1 and 2.
    pub squared_error: [Moments; 2],
    /// Instantaneous channel-input power `X²`.
    pub power: Moments,
    pub coeffs: [EstimatorCoeffs<f64>; 2],
}

impl EmpiricalDistortions {
    pub fn mean(&self, receiver: usize) -> f64 {
        self.squared_error[receiver - 1].mean
    }

    pub fn std_err(&self, receiver: usize) -> f64 {
        self.squared_error[receiver - 1].std_err()
    }

    /// `|empirical − reference|` in units of the standard error.
    pub fn z_score(&self, receiver: usize, reference: f64) -> f64 {
        (self.mean(receiver) - reference).abs() / self.std_err(receiver)
    }

    pub fn distortions(&self) -> SchemeDistortions<f64> {
        SchemeDistortions {
            d1: self.mean(1),
            d2: self.mean(2),
            coeffs: Some(self.coeffs),
        }
    }
}

/// Per-letter signals of the hybrid scheme at index `i`:
/// `(Xd, A1, A2)` with `A_k = α̃S1 + β̃S2 + Z_k`.
#[inline]
pub(crate) fn signals(hp: &HybridParams<f64>, b: &SampleBatch, i: usize) -> (f64, f64, f64) {
    let xd = hp.gamma_t() * (b.s2[i] + b.u[i]);
    let analog = hp.alpha_t() * b.s1[i] + hp.beta_t() * b.s2[i];
    (xd, analog + b.z1[i], analog + b.z2[i])
}

/// Empirical MSE of `Ŝ_k = a_k X_d + b_k A_k` with the coefficients of the
/// Gaussian linear MMSE estimator. Digital decoding is assumed to succeed.
pub fn empirical_distortions(
    inst: &ProblemInstance<f64>,
    hp: &HybridParams<f64>,
    batch: &SampleBatch,
) -> Result<EmpiricalDistortions> {
    let coeffs = hybrid_distortions(inst, hp)?.coeffs.expect("hybrid estimator");
    let n = batch.n;
    let partial: Vec<[Moments; 3]> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = [Moments::default(); 3];
            for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                let (xd, a1, a2) = signals(hp, batch, i);
                let e1 = batch.s1[i] - (coeffs[0].a * xd + coeffs[0].b * a1);
                let e2 = batch.s2[i] - (coeffs[1].a * xd + coeffs[1].b * a2);
                let x = a1 - batch.z1[i] + xd;
                acc[0].push(e1 * e1);
                acc[1].push(e2 * e2);
                acc[2].push(x * x);
            }
            acc
        })
        .collect();
    let mut total = [Moments::default(); 3];
    for part in &partial {
        for (t, p) in total.iter_mut().zip(part) {
            t.merge(p);
        }
    }
    Ok(EmpiricalDistortions {
        n,
        squared_error: [total[0], total[1]],
        power: total[2],
        coeffs,
    })
}

/// Sample correlation of each receiver's reconstruction error with its two
/// observations: `[[corr(e1, Xd), corr(e1, A1)], [corr(e2, Xd), corr(e2, A2)]]`.
/// A zero-variance observation reports 0.
pub fn residual_correlations(
    inst: &ProblemInstance<f64>,
    hp: &HybridParams<f64>,
    batch: &SampleBatch,
) -> Result<[[f64; 2]; 2]> {
    let coeffs = hybrid_distortions(inst, hp)?.coeffs.expect("hybrid estimator");
    let n = batch.n;
    let partial: Vec<[RawMoments; 4]> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = [RawMoments::default(); 4];
            for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                let (xd, a1, a2) = signals(hp, batch, i);
                let e1 = batch.s1[i] - (coeffs[0].a * xd + coeffs[0].b * a1);
                let e2 = batch.s2[i] - (coeffs[1].a * xd + coeffs[1].b * a2);
                acc[0].push(e1, xd);
                acc[1].push(e1, a1);
                acc[2].push(e2, xd);
                acc[3].push(e2, a2);
            }
            acc
        })
        .collect();
    let mut total = [RawMoments::default(); 4];
    for part in &partial {
        for (t, p) in total.iter_mut().zip(part) {
            t.merge(p);
        }
    }
    let corr = |m: &RawMoments| {
        if m.yy == 0.0 || m.xx == 0.0 {
            0.0
        } else {
            m.correlation()
        }
    };
    Ok([
        [corr(&total[0]), corr(&total[1])],
        [corr(&total[2]), corr(&total[3])],
    ])
}
