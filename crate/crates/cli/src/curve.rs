use anyhow::{bail, Result};
use gaussbc::analytic::SourceTag;
use gaussbc::{Instance, Point, Regimes};
use serde::Serialize;

use crate::output::{fmt_float, VERSION};

/// How the points of a curve were generated.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GridSpec {
    /// Uniform D1 grid with the branch breakpoints inserted.
    D1 { n: usize, breakpoints: Vec<f64> },
    /// Uniform sweep of a scheme parameter over `[lo, hi]`.
    Param { name: &'static str, n: usize, lo: f64, hi: f64 },
    Single,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveMeta {
    pub instance: Instance,
    pub grid: GridSpec,
    pub scheme: SourceTag,
    /// Name of the `param` column, if used.
    pub param: Option<&'static str>,
    /// Extra fixed parameter, e.g. the α̃ of a hybrid sweep.
    pub fixed: Option<(&'static str, f64)>,
    pub version: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub point: Point,
    pub param: Option<f64>,
}

/// A distortion curve ready for CSV: sorted by D1, all values finite.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionCurve {
    pub points: Vec<CurvePoint>,
    pub meta: CurveMeta,
}

impl RegionCurve {
    pub fn new(instance: Instance, grid: GridSpec, scheme: SourceTag, param: Option<&'static str>) -> Self {
        Self {
            points: Vec::new(),
            meta: CurveMeta {
                instance,
                grid,
                scheme,
                param,
                fixed: None,
                version: VERSION,
            },
        }
    }

    pub fn with_fixed(mut self, name: &'static str, value: f64) -> Self {
        self.meta.fixed = Some((name, value));
        self
    }

    pub fn push(&mut self, d1: f64, d2: f64, param: Option<f64>) {
        self.points.push(CurvePoint {
            point: Point::new(d1, d2, self.meta.scheme),
            param,
        });
    }

    /// Sorts by D1 (stable) and rejects non-finite values.
    pub fn finish(mut self) -> Result<Self> {
        for p in &self.points {
            let vals = [p.point.d1, p.point.d2, p.param.unwrap_or(0.0)];
            if vals.iter().any(|v| !v.is_finite()) {
                bail!("non-finite value in {} curve: {:?}", self.meta.scheme.as_str(), p);
            }
        }
        self.points.sort_by(|a, b| a.point.d1.total_cmp(&b.point.d1));
        Ok(self)
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["d1", "d2", "scheme", "param"])?;
        for p in &self.points {
            w.write_record([
                fmt_float(p.point.d1),
                fmt_float(p.point.d2),
                p.point.source_tag.as_str().to_string(),
                p.param.map(fmt_float).unwrap_or_default(),
            ])?;
        }
        Ok(w.into_inner()?)
    }
}

/// `n` uniform points on `[D1min, D1max]` plus `D1⁻`, `D1⁺` and `(1-ρ²)σ²`.
/// Grid points closer than `1e-12·σ²` to a breakpoint are dropped.
pub fn d1_grid(inst: &Instance, report: &Regimes, n: usize) -> (Vec<f64>, Vec<f64>) {
    let (lo, hi) = (report.d1_min, report.d1_max);
    let mut breaks = vec![inst.conditional_variance()];
    if let Some((a, b)) = report.window() {
        breaks.extend([a, b]);
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let tol = 1e-12 * inst.sigma2();
    let mut grid: Vec<f64> = (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
        .filter(|x| breaks.iter().all(|b| (x - b).abs() > tol))
        .collect();
    grid.extend(&breaks);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    (grid, breaks)
}

/// `n` evenly spaced values on `[lo, hi]` with both ends exact.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use gaussbc::analytic::classify_regime;

    #[test]
    fn grid_contains_breakpoints() {
        let inst = Instance::hybrid_window_example();
        let rep = classify_regime(&inst);
        let (g, b) = d1_grid(&inst, &rep, 2);
        assert_eq!(b.len(), 3);
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], rep.d1_min);
        assert_eq!(*g.last().unwrap(), rep.d1_max);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        for x in b {
            assert!(g.contains(&x));
        }
    }

    #[test]
    fn curve_sorts_and_rejects_nan() {
        let inst = Instance::uncoded_example();
        let mut c = RegionCurve::new(inst, GridSpec::Single, SourceTag::Uncoded, Some("alpha"));
        c.push(0.5, 0.2, Some(1.0));
        c.push(0.3, 0.4, None);
        let c = c.finish().unwrap();
        assert_eq!(c.points[0].point.d1, 0.3);
        let text = String::from_utf8(c.to_csv().unwrap()).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("d1,d2,scheme,param"));
        assert_eq!(lines.next(), Some("2.9999999999999999e-1,4.0000000000000002e-1,uncoded,"));

        let mut bad = RegionCurve::new(inst, GridSpec::Single, SourceTag::Uncoded, None);
        bad.push(f64::NAN, 0.1, None);
        assert!(bad.finish().is_err());
    }
}
