use anyhow::{bail, Context, Result};
use gaussbc::analytic::{classify_regime, d2_star, Regime};
use gaussbc::schemes::*;
use gaussbc::simulate::{worst_case_check, DistributionFamily, WorstCaseReport};
use gaussbc::{Hybrid, Instance};
use serde::Serialize;

use crate::args::{SchemeKind, SimulateArgs};
use crate::output::{emit_json, VERSION};

#[derive(Debug, Serialize)]
pub struct SchemeSpec {
    pub kind: SchemeKind,
    pub d1_target: Option<f64>,
    pub alpha_t: f64,
    pub beta_t: f64,
    pub gamma_t: f64,
    /// `None` when there is no digital layer.
    pub q: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct SimulateReport {
    pub version: &'static str,
    pub instance: Instance,
    pub scheme: SchemeSpec,
    pub family: DistributionFamily,
    pub family_notes: &'static str,
    pub seed: u64,
    pub result: WorstCaseReport,
    pub passed: bool,
}

fn uncoded_at(inst: &Instance, d1: Option<f64>, alpha: Option<f64>) -> Result<Hybrid> {
    let up = match (d1, alpha) {
        (Some(d1), None) => invert_uncoded_d1(inst, d1)?,
        (None, Some(a)) => UncodedParams::new(a)?,
        _ => bail!("uncoded scheme needs exactly one of --d1 or --alpha"),
    };
    Ok(HybridParams::from_uncoded(inst, &up)?)
}

pub fn scheme_params(inst: &Instance, args: &SimulateArgs) -> Result<Hybrid> {
    match args.scheme {
        SchemeKind::Optimal => {
            let d1 = args.d1.context("optimal scheme needs --d1")?;
            // validates the domain
            d2_star(inst, d1)?;
            let rep = classify_regime(inst);
            if rep.regime == Regime::HybridWindow && rep.in_window(d1) {
                Ok(optimal_hybrid_params(inst, d1)?)
            } else {
                uncoded_at(inst, Some(d1.min(rep.d1_max)), None)
            }
        }
        SchemeKind::Uncoded => uncoded_at(inst, args.d1, args.alpha),
        SchemeKind::Hybrid => {
            let (Some(a), Some(b)) = (args.alpha_t, args.beta_t) else {
                bail!("hybrid scheme needs --alpha-t and --beta-t");
            };
            Ok(match args.q {
                Some(q) => HybridParams::with_q(inst, a, b, q)?,
                None => HybridParams::new(inst, a, b)?,
            })
        }
    }
}

/// Returns whether the distortion and entropy checks passed.
pub fn run(args: &SimulateArgs) -> Result<bool> {
    let inst = args.instance.instance()?;
    if args.n == 0 {
        bail!("--n must be positive");
    }
    let hp = scheme_params(&inst, args)?;
    let result = worst_case_check(&inst, &hp, args.family, args.n, args.k, args.common.seed)?;
    let report = SimulateReport {
        version: VERSION,
        instance: inst,
        scheme: SchemeSpec {
            kind: args.scheme,
            d1_target: args.d1,
            alpha_t: hp.alpha_t(),
            beta_t: hp.beta_t(),
            gamma_t: hp.gamma_t(),
            q: (!hp.is_pure_analog()).then(|| hp.q()),
        },
        family: args.family,
        family_notes: args.family.notes(),
        seed: args.common.seed,
        passed: result.passed(),
        result,
    };
    emit_json(&report, args.out.as_deref())?;
    let r = &report.result;
    for k in 1..=2 {
        eprintln!(
            "D{k}: empirical {:.6} ± {:.1e}, analytic {:.6}, z = {:.2}",
            r.family_empirical.mean(k),
            r.family_empirical.std_err(k),
            r.analytic.get(k),
            r.z_scores[k - 1]
        );
    }
    if let Some(e) = &r.entropy {
        for c in e {
            eprintln!("receiver {}: entropy gap {:+.4} nats", c.receiver, c.gap);
        }
    }
    Ok(report.passed)
}
