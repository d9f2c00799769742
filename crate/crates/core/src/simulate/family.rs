use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Base distribution of the iid unit-variance variates that are linearly mixed
/// into sources and channel noises. Every family matches the Gaussian
/// second-order statistics exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionFamily {
    Gaussian,
    /// Uniform on `[-√3, √3]`.
    UniformLinear,
    /// Laplace with scale `1/√2`.
    LaplaceLinear,
}

impl DistributionFamily {
    pub fn notes(&self) -> &'static str {
        match self {
            DistributionFamily::Gaussian => "iid N(0,1) base variates",
            DistributionFamily::UniformLinear => {
                "iid uniform[-sqrt3, sqrt3] base variates mixed by the source Cholesky factor; noises scaled by sqrt(N_k)"
            }
            DistributionFamily::LaplaceLinear => {
                "iid Laplace(0, 1/sqrt2) base variates mixed by the source Cholesky factor; noises scaled by sqrt(N_k)"
            }
        }
    }

    pub fn is_gaussian(&self) -> bool {
        matches!(self, DistributionFamily::Gaussian)
    }

    /// Kurtosis `E[w⁴]` of a base variate.
    pub fn kurtosis(&self) -> f64 {
        match self {
            DistributionFamily::Gaussian => 3.0,
            DistributionFamily::UniformLinear => 1.8,
            DistributionFamily::LaplaceLinear => 6.0,
        }
    }

    /// One zero-mean, unit-variance draw.
    pub fn unit<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            DistributionFamily::Gaussian => rng.sample(StandardNormal),
            DistributionFamily::UniformLinear => {
                3f64.sqrt() * (2.0 * rng.random::<f64>() - 1.0)
            }
            DistributionFamily::LaplaceLinear => {
                // inverse CDF; u in (-1/2, 1/2]
                let u = 0.5 - rng.random::<f64>();
                -std::f64::consts::FRAC_1_SQRT_2 * u.signum() * (1.0 - 2.0 * u.abs()).max(f64::MIN_POSITIVE).ln()
            }
        }
    }
}

impl std::str::FromStr for DistributionFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "gaussian" => Ok(Self::Gaussian),
            "uniform_linear" | "uniform" => Ok(Self::UniformLinear),
            "laplace_linear" | "laplace" => Ok(Self::LaplaceLinear),
            other => Err(format!("unknown distribution family `{other}`")),
        }
    }
}
