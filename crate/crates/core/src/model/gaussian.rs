use crate::error::{Error, Result};
use crate::model::linalg::{symmetric_eigen, SquareMatrix};
use crate::scalar::Scalar;

/// Zero-mean jointly Gaussian vector described by labeled components and
/// their covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianVector<T> {
    labels: Vec<String>,
    cov: SquareMatrix<T>,
}

impl<T: Scalar> GaussianVector<T> {
    pub fn new<S: Into<String>>(labels: Vec<S>, cov: SquareMatrix<T>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != cov.dim() {
            return Err(Error::BadCovariance("sized like the label list"));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let tol = T::lit(1e-12);
        if !cov.is_symmetric(tol) {
            return Err(Error::BadCovariance("symmetric"));
        }
        let n = cov.dim();
        let scale = (0..n).fold(T::zero(), |m, i| m.max(cov.get(i, i))).max(T::min_positive_value());
        for i in 0..n {
            if cov.get(i, i) < -tol * scale {
                return Err(Error::BadCovariance("positive semidefinite (negative variance)"));
            }
            for j in 0..i {
                let minor = cov.get(i, i) * cov.get(j, j) - cov.get(i, j) * cov.get(j, i);
                if minor < -tol * scale * scale {
                    return Err(Error::BadCovariance("positive semidefinite (2x2 minor)"));
                }
            }
        }
        Ok(Self { labels, cov })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn cov(&self) -> &SquareMatrix<T> {
        &self.cov
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    fn indices(&self, labels: &[&str]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.index(l)).collect()
    }

    pub fn variance(&self, label: &str) -> Result<T> {
        let i = self.index(label)?;
        Ok(self.cov.get(i, i))
    }

    pub fn covariance(&self, a: &str, b: &str) -> Result<T> {
        Ok(self.cov.get(self.index(a)?, self.index(b)?))
    }

    /// Smallest eigenvalue of the full covariance.
    pub fn min_eigenvalue(&self) -> T {
        symmetric_eigen(&self.cov).min_value()
    }

    /// Covariance of the affine combination `Σ wᵢ · component_i` with each listed component.
    pub fn combination_covariance(&self, weights: &[(&str, T)], other: &str) -> Result<T> {
        let j = self.index(other)?;
        weights.iter().try_fold(T::zero(), |acc, (l, w)| {
            Ok(acc + *w * self.cov.get(self.index(l)?, j))
        })
    }
}

/// Behavior when the observation covariance is singular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SingularPolicy {
    /// Spectral pseudo-inverse: degenerate directions carry no information.
    #[default]
    PseudoInverse,
    Reject,
}

/// Linear MMSE estimate of one component from a set of others.
#[derive(Debug, Clone, PartialEq)]
pub struct MmseEstimate<T> {
    /// One coefficient per observed label, in the order requested.
    pub coeffs: Vec<T>,
    pub mmse: T,
}

/// Linear MMSE estimate of `target` from `observed`.
///
/// Coefficients solve `Σ_obs c = Σ_obs,target`; the error is
/// `Var(target) − cᵀ Σ_obs,target`, clamped at zero.
pub fn mmse_estimate<T: Scalar>(
    joint: &GaussianVector<T>,
    target: &str,
    observed: &[&str],
    policy: SingularPolicy,
) -> Result<MmseEstimate<T>> {
    let t = joint.index(target)?;
    let obs = joint.indices(observed)?;
    let sigma_obs = joint.cov.submatrix(&obs);
    let cross: Vec<T> = obs.iter().map(|&i| joint.cov.get(i, t)).collect();

    let eig = symmetric_eigen(&sigma_obs);
    if eig.rank() < obs.len() && policy == SingularPolicy::Reject {
        return Err(Error::SingularObservation);
    }
    let coeffs = eig.pinv_apply(&cross);
    let explained = coeffs
        .iter()
        .zip(&cross)
        .fold(T::zero(), |acc, (&c, &x)| acc + c * x);
    let mmse = (joint.cov.get(t, t) - explained).max(T::zero());
    Ok(MmseEstimate { coeffs, mmse })
}

/// Mutual information `I(A;B)` in nats between two disjoint label groups.
///
/// Uses log pseudo-determinants, so zero-variance components drop out. If the
/// union has lower rank than the two groups combined, some combination of `A`
/// is a deterministic function of `B` and the result is `+∞`.
pub fn gaussian_mi<T: Scalar>(
    joint: &GaussianVector<T>,
    group_a: &[&str],
    group_b: &[&str],
) -> Result<T> {
    if group_a.is_empty() || group_b.is_empty() || group_a.iter().any(|a| group_b.contains(a)) {
        return Err(Error::BadGroups);
    }
    let a = joint.indices(group_a)?;
    let b = joint.indices(group_b)?;
    let ab: Vec<usize> = a.iter().chain(&b).copied().collect();

    let eig_ab = symmetric_eigen(&joint.cov.submatrix(&ab));
    let trace = joint.cov.submatrix(&ab).trace();
    if eig_ab.min_value() < -T::lit(1e-10) * trace {
        return Err(Error::BadCovariance("positive semidefinite"));
    }
    let eig_a = symmetric_eigen(&joint.cov.submatrix(&a));
    let eig_b = symmetric_eigen(&joint.cov.submatrix(&b));
    if eig_ab.rank() < eig_a.rank() + eig_b.rank() {
        return Ok(T::infinity());
    }
    let mi = T::lit(0.5) * (eig_a.log_pdet() + eig_b.log_pdet() - eig_ab.log_pdet());
    Ok(mi.max(T::zero()))
}
