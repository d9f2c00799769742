use rayon::prelude::*;

use crate::error::{Error, Result};

/// Differential entropy of `N(0, v)` in nats.
pub fn gaussian_entropy(variance: f64) -> f64 {
    0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E * variance).ln()
}

/// `ψ(n) − ψ(k)` for integers, as a harmonic partial sum.
fn digamma_gap(n: usize, k: usize) -> f64 {
    (k..n).map(|j| 1.0 / j as f64).sum()
}

/// Kozachenko–Leonenko k-nearest-neighbor estimate of the differential entropy
/// (nats) of a scalar sample:
/// `ψ(n) − ψ(k) + ln 2 + mean(ln εᵢ)`, `εᵢ` the distance to the k-th neighbor.
pub fn kl_entropy_1d(samples: &[f64], k: usize) -> Result<f64> {
    let n = samples.len();
    if k == 0 || n <= k {
        return Err(Error::TooFewSamples { n, min: k + 1 });
    }
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));

    const BLOCK: usize = 4096;
    let block_sums: Vec<f64> = (0..n.div_ceil(BLOCK))
        .into_par_iter()
        .map(|b| {
            let end = (b * BLOCK + BLOCK).min(n);
            (b * BLOCK..end)
                .map(|i| kth_distance(&xs, i, k).max(f64::MIN_POSITIVE).ln())
                .sum::<f64>()
        })
        .collect();
    let mean_log = block_sums.iter().sum::<f64>() / n as f64;
    Ok(digamma_gap(n, k) + std::f64::consts::LN_2 + mean_log)
}

/// Distance from `xs[i]` to its k-th nearest neighbor in the sorted slice.
fn kth_distance(xs: &[f64], i: usize, k: usize) -> f64 {
    let x = xs[i];
    let (mut left, mut right) = (i, i + 1);
    let mut dist = 0.0;
    for _ in 0..k {
        let dl = if left > 0 { x - xs[left - 1] } else { f64::INFINITY };
        let dr = if right < xs.len() { xs[right] - x } else { f64::INFINITY };
        if dl <= dr {
            dist = dl;
            left -= 1;
        } else {
            dist = dr;
            right += 1;
        }
    }
    dist
}
