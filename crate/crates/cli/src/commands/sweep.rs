use anyhow::{bail, Result};
use gaussbc::analytic::{classify_regime, SourceTag};
use gaussbc::schemes::{hybrid_sweep, sweep_beta_max};

use crate::args::SweepArgs;
use crate::commands::region::write_curves;
use crate::curve::{GridSpec, RegionCurve};

pub fn run(args: &SweepArgs) -> Result<()> {
    let inst = args.instance.instance()?;
    if args.grid < 2 {
        bail!("--grid must be at least 2, got {}", args.grid);
    }
    let alphas = if args.alpha_t.is_empty() {
        let top = (inst.power() / inst.sigma2()).sqrt();
        (0..10).map(|i| top * i as f64 / 10.0).collect()
    } else {
        args.alpha_t.clone()
    };

    let mut curves = Vec::new();
    let mut rejected = Vec::new();
    for (i, &a) in alphas.iter().enumerate() {
        let pts = match sweep_beta_max(&inst, a).and_then(|_| hybrid_sweep(&inst, a, args.grid)) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("alpha_t = {a}: {e}");
                rejected.push(format!("alpha_t = {a}: {e}"));
                continue;
            }
        };
        let hi = pts.last().map_or(0.0, |p| p.beta_t);
        let spec = GridSpec::Param { name: "beta_t", n: args.grid, lo: 0.0, hi };
        let mut c = RegionCurve::new(inst, spec, SourceTag::Hybrid, Some("beta_t")).with_fixed("alpha_t", a);
        for p in pts {
            c.push(p.d1, p.d2, Some(p.beta_t));
        }
        curves.push((format!("sweep_{i:02}"), c.finish()?));
    }
    if curves.is_empty() {
        bail!("no feasible alpha_t value");
    }
    let report = classify_regime(&inst);
    write_curves(&args.out, &inst, &report, args.common.seed, &curves, rejected)?;
    eprintln!("wrote {} sweeps to {}", curves.len(), args.out.display());
    Ok(())
}
