#![allow(dead_code)]

use gaussbc::analytic::{classify_regime, Regime};
use gaussbc::model::make_instance;
use gaussbc::schemes::HybridParams;
use gaussbc::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Any valid instance.
pub fn random_instance(rng: &mut ChaCha8Rng) -> Instance {
    let p = rng.random_range(0.1..5.0);
    let s = rng.random_range(0.2..3.0);
    let rho = rng.random_range(0.0..0.95);
    let n1 = rng.random_range(0.05..2.0);
    let n2 = n1 + rng.random_range(0.0..3.0);
    make_instance(p, s, rho, n1, n2).unwrap()
}

/// Instance with a hybrid window, kept away from the regime boundary.
pub fn random_window_instance(rng: &mut ChaCha8Rng) -> Instance {
    loop {
        let p = rng.random_range(0.2..5.0);
        let s = rng.random_range(0.2..3.0);
        let n1 = rng.random_range(0.05..2.0);
        let n2 = n1 + rng.random_range(0.0..3.0);
        let rho_max = p / (p + 2.0 * n1);
        let rho = rng.random_range(0.0..0.97) * rho_max;
        let inst = make_instance(p, s, rho, n1, n2).unwrap();
        if classify_regime(&inst).regime == Regime::HybridWindow {
            return inst;
        }
    }
}

/// Random analog gains leaving between 1% and 99% of the power to the digital layer.
pub fn random_hybrid(rng: &mut ChaCha8Rng, inst: &Instance) -> HybridParams<f64> {
    loop {
        let scale = (inst.power() / inst.sigma2()).sqrt();
        let a = rng.random_range(0.0..1.0) * scale;
        let b = rng.random_range(0.0..1.0) * scale;
        let frac = inst.analog_power(a, b) / inst.power();
        if (0.01..0.99).contains(&frac) {
            return HybridParams::new(inst, a, b).unwrap();
        }
    }
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}
