use std::path::Path;

use anyhow::{bail, Result};
use gaussbc::analytic::*;
use gaussbc::schemes::{invert_uncoded_d1, separation_baseline};
use gaussbc::{Instance, Regimes};
use serde::Serialize;

use crate::args::RegionArgs;
use crate::curve::{d1_grid, linspace, GridSpec, RegionCurve};
use crate::output::{to_json, write_atomic, VERSION};

#[derive(Debug, Serialize)]
pub struct FileEntry {
    pub file: String,
    pub scheme: SourceTag,
    pub points: usize,
    pub grid: GridSpec,
    pub param: Option<&'static str>,
    pub fixed: Option<(&'static str, f64)>,
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub instance: Instance,
    pub regime_report: Regimes,
    pub files: Vec<FileEntry>,
    pub version: &'static str,
    pub seed: u64,
    /// Inputs that produced no file, with the reason.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rejected: Vec<String>,
}

/// Writes each curve as `<name>.csv` and a `manifest.json` listing them.
pub fn write_curves(
    dir: &Path,
    inst: &Instance,
    report: &Regimes,
    seed: u64,
    curves: &[(String, RegionCurve)],
    rejected: Vec<String>,
) -> Result<Manifest> {
    let mut files = Vec::new();
    for (name, c) in curves {
        let file = format!("{name}.csv");
        write_atomic(&dir.join(&file), &c.to_csv()?)?;
        files.push(FileEntry {
            file,
            scheme: c.meta.scheme,
            points: c.points.len(),
            grid: c.meta.grid.clone(),
            param: c.meta.param,
            fixed: c.meta.fixed,
        });
    }
    let manifest = Manifest {
        instance: *inst,
        regime_report: *report,
        files,
        version: VERSION,
        seed,
        rejected,
    };
    write_atomic(&dir.join("manifest.json"), &to_json(&manifest)?)?;
    Ok(manifest)
}

pub fn region_curves(inst: &Instance, n: usize) -> Result<(Regimes, Vec<(String, RegionCurve)>)> {
    if n < 2 {
        bail!("--grid must be at least 2, got {n}");
    }
    let report = classify_regime(inst);
    let (grid, breaks) = d1_grid(inst, &report, n);
    let d1_spec = GridSpec::D1 { n, breakpoints: breaks };
    let c = inst.conditional_variance();

    let mut frontier = RegionCurve::new(*inst, d1_spec.clone(), SourceTag::Frontier, None);
    let mut uncoded = RegionCurve::new(*inst, d1_spec.clone(), SourceTag::Uncoded, Some("alpha"));
    let mut outer = RegionCurve::new(*inst, d1_spec, SourceTag::HybridOuter, None);
    for &d1 in &grid {
        frontier.push(d1, d2_star_with(inst, &report, d1)?, None);
        let alpha = invert_uncoded_d1(inst, d1)?.alpha();
        uncoded.push(d1, d2_uncoded_frontier(inst, d1)?, Some(alpha));
        // beyond (1-ρ²)σ² the bound drops under the D2 floor and carries no information
        if d1 <= c {
            outer.push(d1, d2_hybrid_frontier(inst, d1), None);
        }
    }

    let alpha_spec = GridSpec::Param { name: "alpha", n, lo: 0.0, hi: 1.0 };
    let mut genie = RegionCurve::new(*inst, alpha_spec, SourceTag::GenieOuter, Some("alpha"));
    for a in linspace(0.0, 1.0, n) {
        let (d1, d2) = genie_region(inst, a)?;
        genie.push(d1, d2, Some(a));
    }

    let lambda_spec = GridSpec::Param { name: "lambda", n, lo: 0.0, hi: 1.0 };
    let mut sep = RegionCurve::new(*inst, lambda_spec, SourceTag::Separation, Some("lambda"));
    for l in linspace(0.0, 1.0, n) {
        let d = separation_baseline(inst, l)?;
        sep.push(d.d1, d.d2, Some(l));
    }

    // S2 sent uncoded alone
    let mut trivial = RegionCurve::new(*inst, GridSpec::Single, SourceTag::TrivialAnalog, Some("alpha"));
    trivial.push(report.d1_max, inst.d2_floor(), Some(0.0));

    let curves = vec![
        ("frontier".to_string(), frontier.finish()?),
        ("uncoded".to_string(), uncoded.finish()?),
        ("hybrid_outer".to_string(), outer.finish()?),
        ("genie_outer".to_string(), genie.finish()?),
        ("separation".to_string(), sep.finish()?),
        ("trivial".to_string(), trivial.finish()?),
    ];
    Ok((report, curves))
}

pub fn run(args: &RegionArgs) -> Result<()> {
    let inst = args.instance.instance()?;
    let (report, curves) = region_curves(&inst, args.grid)?;
    let m = write_curves(&args.out, &inst, &report, args.common.seed, &curves, Vec::new())?;
    eprintln!(
        "{:?}: wrote {} curves to {}",
        report.regime,
        m.files.len(),
        args.out.display()
    );
    Ok(())
}
