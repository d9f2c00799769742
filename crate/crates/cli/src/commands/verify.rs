use anyhow::Result;
use gaussbc::analytic::*;
use gaussbc::model::{hybrid_joint_law, labels, make_instance};
use gaussbc::schemes::*;
use gaussbc::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Profile, VerifyArgs};
use crate::output::{emit_json, VERSION};

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    /// Worst residual seen (a count for `snr_threshold`).
    pub max_residual: f64,
    pub tolerance: f64,
    /// Number of evaluations behind `max_residual`.
    pub evaluated: usize,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &'static str, max_residual: f64, tolerance: f64, evaluated: usize) -> Self {
        Self {
            name,
            max_residual,
            tolerance,
            evaluated,
            passed: evaluated == 0 || max_residual <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub instance: Instance,
    pub regime: Regime,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub version: &'static str,
    pub profile: Profile,
    pub seed: u64,
    pub randomized: bool,
    pub corrupted: bool,
    /// Worst result per check across instances.
    pub summary: Vec<CheckResult>,
    pub instances: Vec<InstanceReport>,
    pub passed: bool,
}

struct Sizes {
    gamma_grid: usize,
    genie_sweep: usize,
    matching_d1: usize,
    random_params: usize,
}

fn sizes(p: Profile) -> Sizes {
    match p {
        Profile::Fast => Sizes {
            gamma_grid: 1_000,
            genie_sweep: 20_000,
            matching_d1: 10,
            random_params: 50,
        },
        Profile::Full => Sizes {
            gamma_grid: 10_000,
            genie_sweep: 100_000,
            matching_d1: 50,
            random_params: 1_000,
        },
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Lowest genie D2 with `D1|2 <= d1`, linear between bracketing sweep points.
fn genie_elimination(curve: &[(f64, f64)], d1: f64) -> f64 {
    let last = curve[curve.len() - 1];
    let mut best = if last.0 <= d1 { last.1 } else { f64::INFINITY };
    for w in curve.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if x0 <= d1 {
            best = best.min(y0);
        }
        if x0 >= d1 && x1 <= d1 && x0 > x1 {
            best = best.min(y0 + (x0 - d1) / (x0 - x1) * (y1 - y0));
        }
    }
    best
}

fn random_hybrid(rng: &mut ChaCha8Rng, inst: &Instance) -> Result<HybridParams<f64>> {
    let scale = (inst.power() / inst.sigma2()).sqrt();
    loop {
        let (a, b) = (rng.random::<f64>() * scale, rng.random::<f64>() * scale);
        let frac = inst.analog_power(a, b) / inst.power();
        if (0.01..0.99).contains(&frac) {
            return Ok(HybridParams::new(inst, a, b)?);
        }
    }
}

pub fn check_instance(inst: &Instance, profile: Profile, seed: u64, corrupt: bool) -> Result<InstanceReport> {
    let sz = sizes(profile);
    let report = classify_regime(inst);
    let s = inst.sigma2();
    let reference = |d1: f64| d2_hybrid_frontier(inst, d1) * if corrupt { 1.0 + 1e-6 } else { 1.0 };
    let mut checks = Vec::new();

    // branch continuity at the window edges
    let (mut worst, mut n) = (0.0_f64, 0);
    if let Some((a, b)) = report.window() {
        for d in [a, b] {
            worst = worst.max((d2_uncoded_frontier(inst, d)? - reference(d)).abs() / s);
            n += 1;
        }
    }
    checks.push(CheckResult::new("continuity", worst, 1e-9, n));

    // P/N1 <= Γ(D1) exactly outside the window
    let snr = inst.power() / inst.n1();
    let (mut bad, mut n) = (0usize, 0usize);
    for i in 0..sz.gamma_grid {
        let d1 = report.d1_min + (report.d1_max - report.d1_min) * (i as f64 + 0.5) / sz.gamma_grid as f64;
        let outside = match report.window() {
            Some((a, b)) if (d1 - a).abs() < 1e-9 || (d1 - b).abs() < 1e-9 => continue,
            Some((a, b)) => d1 <= a || d1 >= b,
            None => true,
        };
        n += 1;
        if (snr <= gamma_threshold(d1, s, inst.rho())) != outside {
            bad += 1;
        }
    }
    checks.push(CheckResult::new("snr_threshold", bad as f64, 0.0, n));

    // genie sweep elimination reproduces D2ʰ
    let m = sz.genie_sweep;
    let curve: Vec<(f64, f64)> = (0..m)
        .map(|i| genie_region(inst, i as f64 / (m - 1) as f64))
        .collect::<gaussbc::Result<_>>()?;
    let c = inst.conditional_variance();
    let lo = c * inst.n1() / (inst.power() + inst.n1());
    let mut worst = 0.0_f64;
    for k in 0..=20 {
        let d1 = (lo + (c - lo) * (k as f64 + 1e-9) / 20.0).min(c);
        worst = worst.max((genie_elimination(&curve, d1) - reference(d1)).abs());
    }
    checks.push(CheckResult::new("genie_elimination", worst, 1e-6, 21));

    // matched hybrid parameters: distortions, power and rate tightness
    let (mut wd, mut wp, mut wr, mut n, mut nr) = (0.0_f64, 0.0_f64, 0.0_f64, 0, 0);
    if let Some((a, b)) = report.window() {
        for j in 1..=sz.matching_d1 {
            let d1 = a + (b - a) * j as f64 / (sz.matching_d1 + 1) as f64;
            let hp = optimal_hybrid_params(inst, d1)?;
            let d = hybrid_distortions(inst, &hp)?;
            wd = wd.max(rel(d.d1, d1)).max(rel(d.d2, reference(d1)));
            let joint = hybrid_joint_law(inst, &hp)?;
            wp = wp.max(rel(joint.variance(labels::X)?, inst.power()));
            n += 1;
            if !hp.is_pure_analog() {
                let (lower, upper) = hp.rate_window();
                wr = wr.max((lower - upper).abs());
                nr += 1;
            }
        }
    }
    checks.push(CheckResult::new("matching", wd, 1e-9, n));
    checks.push(CheckResult::new("power_tightness", wp, 1e-12, n));
    checks.push(CheckResult::new("rate_tightness", wr, 1e-10, nr));

    // closed form against MMSE on the joint law
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for _ in 0..sz.random_params {
        let hp = random_hybrid(&mut rng, inst)?;
        let d = hybrid_distortions(inst, &hp)?;
        let (d1, d2) = hybrid_closed_form(inst, hp.alpha_t(), hp.beta_t());
        worst = worst.max(rel(d1, d.d1)).max(rel(d2, d.d2));
    }
    checks.push(CheckResult::new("formula_vs_mmse", worst, 1e-9, sz.random_params));

    Ok(InstanceReport {
        instance: *inst,
        regime: report.regime,
        checks,
    })
}

/// Seeded instances; every other one is drawn inside the hybrid regime.
pub fn random_instances(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = rng.random_range(0.2..5.0);
        let s = rng.random_range(0.2..3.0);
        let n1 = rng.random_range(0.05..2.0);
        let n2 = n1 + rng.random_range(0.0..3.0);
        let rho = if out.len() % 2 == 0 {
            rng.random_range(0.0..0.97) * p / (p + 2.0 * n1)
        } else {
            rng.random_range(0.0..0.95)
        };
        let inst = make_instance(p, s, rho, n1, n2).expect("valid by construction");
        if out.len() % 2 == 1 || classify_regime(&inst).regime == Regime::HybridWindow {
            out.push(inst);
        }
    }
    out
}

pub fn verify(
    instances: &[Instance],
    profile: Profile,
    seed: u64,
    randomized: bool,
    corrupt: bool,
) -> Result<VerifyReport> {
    let reports: Vec<InstanceReport> = instances
        .par_iter()
        .enumerate()
        .map(|(i, inst)| check_instance(inst, profile, seed.wrapping_add(i as u64), corrupt))
        .collect::<Result<_>>()?;
    let mut summary: Vec<CheckResult> = reports[0].checks.clone();
    for r in &reports[1..] {
        for (acc, c) in summary.iter_mut().zip(&r.checks) {
            acc.max_residual = acc.max_residual.max(c.max_residual);
            acc.evaluated += c.evaluated;
            acc.passed &= c.passed;
        }
    }
    let passed = summary.iter().all(|c| c.passed);
    Ok(VerifyReport {
        version: VERSION,
        profile,
        seed,
        randomized,
        corrupted: corrupt,
        summary,
        instances: reports,
        passed,
    })
}

/// Returns whether every check passed.
pub fn run(args: &VerifyArgs) -> Result<bool> {
    let (instances, randomized) = match args.random {
        Some(0) => anyhow::bail!("--random needs at least one instance"),
        Some(n) => {
            if !args.instance.is_empty() {
                anyhow::bail!("--random cannot be combined with instance parameters");
            }
            (random_instances(args.common.seed, n), true)
        }
        None => (vec![args.instance.instance()?], false),
    };
    let report = verify(&instances, args.profile, args.common.seed, randomized, args.corrupt_frontier)?;
    emit_json(&report, args.out.as_deref())?;
    for c in &report.summary {
        eprintln!(
            "{:<18} {} max residual {:.3e} (tol {:.0e}, n = {})",
            c.name,
            if c.passed { "ok  " } else { "FAIL" },
            c.max_residual,
            c.tolerance,
            c.evaluated
        );
    }
    Ok(report.passed)
}
