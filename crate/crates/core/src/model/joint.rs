use crate::error::Result;
use crate::model::linalg::SquareMatrix;
use crate::model::{GaussianVector, ProblemInstance};
use crate::scalar::Scalar;
use crate::schemes::HybridParams;

/// Component names used in the hybrid joint law.
pub mod labels {
    pub const S1: &str = "S1";
    pub const S2: &str = "S2";
    /// Digital layer `γ̃(S2 + U)`.
    pub const XD: &str = "Xd";
    pub const X: &str = "X";
    pub const Y1: &str = "Y1";
    pub const Y2: &str = "Y2";
    /// Analog observation at receiver 1 once the digital layer is removed: `α̃S1 + β̃S2 + Z1`.
    pub const A1: &str = "A1";
    pub const A2: &str = "A2";

    pub const ALL: [&str; 8] = [S1, S2, XD, X, Y1, Y2, A1, A2];

    pub fn receiver_output(k: usize) -> &'static str {
        if k == 1 { Y1 } else { Y2 }
    }

    pub fn analog_observation(k: usize) -> &'static str {
        if k == 1 { A1 } else { A2 }
    }

    pub fn source(k: usize) -> &'static str {
        if k == 1 { S1 } else { S2 }
    }
}

/// Joint law of `(S1, S2, Xd, X, Y1, Y2, A1, A2)` for the hybrid scheme.
pub fn hybrid_joint_law<T: Scalar>(
    inst: &ProblemInstance<T>,
    hp: &HybridParams<T>,
) -> Result<GaussianVector<T>> {
    joint_law_from_parts(inst, hp.alpha_t(), hp.beta_t(), hp.gamma_t(), hp.q())
}

/// Same as [`hybrid_joint_law`] from raw knobs, with no feasibility checks.
///
/// Built as `L Σ Lᵀ` over the independent base `(S1, S2, U, Z1, Z2)`; the two
/// channel noises are taken independent (only per-receiver marginals matter).
/// With `gamma_t = 0` the value of `q` is irrelevant.
pub fn joint_law_from_parts<T: Scalar>(
    inst: &ProblemInstance<T>,
    alpha_t: T,
    beta_t: T,
    gamma_t: T,
    q: T,
) -> Result<GaussianVector<T>> {
    let (o, z) = (T::one(), T::zero());
    let s = inst.sigma2();
    let q = if gamma_t == z { z } else { q };
    let base = SquareMatrix::from_rows(&[
        vec![s, inst.rho() * s, z, z, z],
        vec![inst.rho() * s, s, z, z, z],
        vec![z, z, q, z, z],
        vec![z, z, z, inst.n1(), z],
        vec![z, z, z, z, inst.n2()],
    ]);
    let (a, b, g) = (alpha_t, beta_t, gamma_t);
    let rows = vec![
        vec![o, z, z, z, z],         // S1
        vec![z, o, z, z, z],         // S2
        vec![z, g, g, z, z],         // Xd
        vec![a, b + g, g, z, z],     // X
        vec![a, b + g, g, o, z],     // Y1
        vec![a, b + g, g, z, o],     // Y2
        vec![a, b, z, o, z],         // A1
        vec![a, b, z, z, o],         // A2
    ];
    GaussianVector::new(labels::ALL.to_vec(), base.congruence(&rows))
}
