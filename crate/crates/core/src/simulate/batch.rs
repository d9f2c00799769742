use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::ProblemInstance;
use crate::schemes::HybridParams;
use crate::simulate::DistributionFamily;

/// Samples per ChaCha stream.
pub const CHUNK: usize = 1 << 15;

/// Independent draws of the sources, the quantization noise and the channel
/// noises, one entry per time index.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub n: usize,
    pub family: DistributionFamily,
    pub s1: Vec<f64>,
    pub s2: Vec<f64>,
    /// Always Gaussian with variance `Q`; all zeros for pure-analog parameters.
    pub u: Vec<f64>,
    pub z1: Vec<f64>,
    pub z2: Vec<f64>,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// Draws `n` samples. Chunk `c` uses stream `c` of a ChaCha8 generator keyed by
/// `seed`, so the batch is bit-identical for a given seed on any thread count.
pub fn sample_batch(
    inst: &ProblemInstance<f64>,
    hp: &HybridParams<f64>,
    family: DistributionFamily,
    n: usize,
    seed: u64,
) -> Result<SampleBatch> {
    if n == 0 {
        return Err(Error::TooFewSamples { n, min: 1 });
    }
    let sigma = inst.sigma2().sqrt();
    let rho = inst.rho();
    let rho_c = (1.0 - rho * rho).sqrt();
    let q_sd = if hp.is_pure_analog() { 0.0 } else { hp.q().sqrt() };
    let (n1_sd, n2_sd) = (inst.n1().sqrt(), inst.n2().sqrt());

    let chunks: Vec<[Vec<f64>; 5]> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let len = CHUNK.min(n - c * CHUNK);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let mut cols: [Vec<f64>; 5] = std::array::from_fn(|_| Vec::with_capacity(len));
            for _ in 0..len {
                let w1 = family.unit(&mut rng);
                let w2 = family.unit(&mut rng);
                let u: f64 = rng.sample(StandardNormal);
                let z1 = family.unit(&mut rng);
                let z2 = family.unit(&mut rng);
                cols[0].push(sigma * w1);
                cols[1].push(sigma * (rho * w1 + rho_c * w2));
                cols[2].push(q_sd * u);
                cols[3].push(n1_sd * z1);
                cols[4].push(n2_sd * z2);
            }
            cols
        })
        .collect();

    let mut out: [Vec<f64>; 5] = std::array::from_fn(|_| Vec::with_capacity(n));
    for chunk in chunks {
        for (dst, src) in out.iter_mut().zip(chunk) {
            dst.extend(src);
        }
    }
    let [s1, s2, u, z1, z2] = out;
    Ok(SampleBatch {
        n,
        family,
        s1,
        s2,
        u,
        z1,
        z2,
    })
}
