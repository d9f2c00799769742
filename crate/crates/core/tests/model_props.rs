mod common;

use common::*;
use gaussbc::model::{
    gaussian_mi, hybrid_joint_law, joint_law_from_parts, labels, linalg::SquareMatrix,
    mmse_estimate, GaussianVector, SingularPolicy,
};
use gaussbc::schemes::{uncoded_distortions, HybridParams, UncodedParams};
use gaussbc::simulate::{sample_batch, DistributionFamily};
use gaussbc::Instance;
use proptest::prelude::*;

#[test]
fn mi_of_quantizer_channel() {
    // I(S2; S2 + U) with σ² = Q = 1
    let inst = gaussbc::model::make_instance(1.0, 1.0, 0.4, 0.3, 1.0).unwrap();
    let g = joint_law_from_parts(&inst, 0.0, 0.0, 1.0, 1.0).unwrap();
    let mi = gaussian_mi(&g, &[labels::S2], &[labels::XD]).unwrap();
    assert!((mi - 0.5 * 2f64.ln()).abs() < 1e-14);
    assert!((mi - 0.346_573_590_279_972_6).abs() < 1e-12);
}

#[test]
fn rate_window_closes_at_q_star() {
    let mut r = rng(11);
    for _ in 0..200 {
        let inst = random_instance(&mut r);
        let hp = random_hybrid(&mut r, &inst);
        let g = hybrid_joint_law(&inst, &hp).unwrap();
        let lower = gaussian_mi(&g, &[labels::S2], &[labels::XD]).unwrap();
        let upper = gaussian_mi(&g, &[labels::XD], &[labels::Y2]).unwrap();
        let strong = gaussian_mi(&g, &[labels::XD], &[labels::Y1]).unwrap();
        assert!((lower - upper).abs() < 1e-10, "{lower} vs {upper}");
        assert!(lower <= strong + 1e-12);
        let closed = 0.5 * ((inst.sigma2() + hp.q()) / hp.q()).ln();
        assert!((lower - closed).abs() < 1e-12);
    }
}

#[test]
fn uncoded_mmse_matches_closed_form() {
    let inst = Instance::hybrid_window_example();
    let up = UncodedParams::new(0.5).unwrap();
    let hp = HybridParams::from_uncoded(&inst, &up).unwrap();
    let g = hybrid_joint_law(&inst, &hp).unwrap();
    let est = mmse_estimate(&g, labels::S1, &[labels::Y1], SingularPolicy::default()).unwrap();
    let d = uncoded_distortions(&inst, &up);
    assert!((est.mmse - d.d1).abs() < 1e-14);
    assert!((est.coeffs[0] - d.coeffs.unwrap()[0].b).abs() < 1e-14);
}

#[test]
fn saturated_power_matches_empirical_covariance() {
    let inst = Instance::hybrid_window_example();
    let hp = gaussbc::schemes::optimal_hybrid_params(&inst, 0.5).unwrap();
    let var_x = hybrid_joint_law(&inst, &hp).unwrap().variance(labels::X).unwrap();
    assert!((var_x - 1.0).abs() < 1e-12);

    let b = sample_batch(&inst, &hp, DistributionFamily::Gaussian, 1_000_000, 5).unwrap();
    let xs: Vec<f64> = (0..b.n)
        .map(|i| hp.alpha_t() * b.s1[i] + hp.beta_t() * b.s2[i] + hp.gamma_t() * (b.s2[i] + b.u[i]))
        .collect();
    let m: gaussbc::simulate::Moments = xs.iter().map(|x| x * x).collect();
    assert!((m.mean - var_x).abs() < 3.0 * m.std_err(), "{} ± {}", m.mean, m.std_err());
}

fn power_expression(inst: &Instance, a: f64, b: f64, g: f64, q: f64) -> f64 {
    let (s, rho) = (inst.sigma2(), inst.rho());
    s * (a * a + b * b + 2.0 * rho * a * b) + g * g * (s + q) + 2.0 * g * s * (a * rho + b)
}

fn instance_strategy() -> impl Strategy<Value = Instance> {
    (0.1f64..5.0, 0.2f64..3.0, 0.0f64..0.95, 0.05f64..2.0, 0.0f64..3.0).prop_map(
        |(p, s, rho, n1, dn)| gaussbc::model::make_instance(p, s, rho, n1, n1 + dn).unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn joint_law_is_psd(inst in instance_strategy(), a in 0.0f64..2.0, b in 0.0f64..2.0,
                        g in 0.0f64..2.0, q in 0.01f64..10.0) {
        let law = joint_law_from_parts(&inst, a, b, g, q).unwrap();
        let trace = law.cov().trace();
        prop_assert!(law.min_eigenvalue() >= -1e-10 * trace);
    }

    #[test]
    fn input_variance_is_power_expression(inst in instance_strategy(), a in 0.0f64..2.0,
                                          b in 0.0f64..2.0, g in 0.0f64..2.0, q in 0.01f64..10.0) {
        let law = joint_law_from_parts(&inst, a, b, g, q).unwrap();
        let expect = power_expression(&inst, a, b, g, q);
        prop_assert!((law.variance(labels::X).unwrap() - expect).abs() <= 1e-12 * expect.max(1.0));
    }

    #[test]
    fn mmse_residual_is_orthogonal(inst in instance_strategy(), a in 0.0f64..2.0,
                                   b in 0.0f64..2.0, g in 0.0f64..2.0, q in 0.01f64..10.0) {
        let law = joint_law_from_parts(&inst, a, b, g, q).unwrap();
        for k in 1..=2 {
            let obs = [labels::XD, labels::analog_observation(k)];
            let target = labels::source(k);
            let est = mmse_estimate(&law, target, &obs, SingularPolicy::PseudoInverse).unwrap();
            prop_assert!(est.mmse >= 0.0);
            for o in obs {
                let var_o = law.variance(o).unwrap();
                if var_o == 0.0 { continue; }
                // Cov(target − Σ c_j obs_j, o)
                let mut cov = law.covariance(target, o).unwrap();
                for (c, oj) in est.coeffs.iter().zip(obs) {
                    cov -= c * law.covariance(oj, o).unwrap();
                }
                let corr = cov / (est.mmse.max(1e-300) * var_o).sqrt();
                prop_assert!(est.mmse < 1e-14 || corr.abs() < 1e-10, "corr {corr}");
            }
        }
    }

    #[test]
    fn mi_symmetric_and_scale_invariant(inst in instance_strategy(), a in 0.0f64..2.0,
                                        b in 0.0f64..2.0, g in 0.01f64..2.0, q in 0.01f64..10.0,
                                        scale in 0.01f64..100.0) {
        let law = joint_law_from_parts(&inst, a, b, g, q).unwrap();
        let ab = gaussian_mi(&law, &[labels::S1, labels::XD], &[labels::Y2]).unwrap();
        let ba = gaussian_mi(&law, &[labels::Y2], &[labels::S1, labels::XD]).unwrap();
        prop_assert!((ab - ba).abs() < 1e-10);

        // rescale Y2 by `scale`
        let idx = law.index(labels::Y2).unwrap();
        let n = law.cov().dim();
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| {
                let mut v = law.cov().get(i, j);
                if i == idx { v *= scale; }
                if j == idx { v *= scale; }
                v
            }).collect())
            .collect();
        let scaled = GaussianVector::new(law.labels().to_vec(), SquareMatrix::from_rows(&rows)).unwrap();
        let sc = gaussian_mi(&scaled, &[labels::S1, labels::XD], &[labels::Y2]).unwrap();
        prop_assert!((ab - sc).abs() < 1e-10, "{ab} vs {sc}");
    }
}
