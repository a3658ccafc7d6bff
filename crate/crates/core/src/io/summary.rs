use serde::Serialize;

use crate::geodesics::{GeodesicState, Trajectory};
use crate::physics::residual_series;
use crate::FormulaVariant;

use super::config::Thresholds;

/// Largest deviation of each monitored quantity from its initial value.
///
/// `e` is relative to `|E0|`; momenta and Clairaut products are scaled by
/// `max(1, |x0|)`; the effective-energy residual is absolute and `None` when
/// the slope-angle chart is never defined.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Drifts {
    #[serde(rename = "E")]
    pub e: f64,
    pub p_a: f64,
    pub p_b: f64,
    pub clairaut1: f64,
    pub clairaut2: f64,
    pub residual: Option<f64>,
}

fn max_drift(xs: impl Iterator<Item = f64>, scale: impl Fn(f64) -> f64) -> f64 {
    let mut x0 = None;
    let mut worst = 0.0f64;
    for x in xs {
        let base = *x0.get_or_insert(x);
        let d = (x - base).abs() / scale(base);
        worst = if d.is_nan() { f64::INFINITY } else { worst.max(d) };
    }
    worst
}

impl Drifts {
    pub fn of(tr: &Trajectory, variant: FormulaVariant) -> Drifts {
        let rec = || tr.samples.iter().map(|s| s.record);
        let rel = |x0: f64| if x0 == 0.0 { 1.0 } else { x0.abs() };
        let unit = |x0: f64| x0.abs().max(1.0);
        let res = residual_series(tr, variant);
        Drifts {
            e: max_drift(rec().map(|r| r.e), rel),
            p_a: max_drift(rec().map(|r| r.p_a), unit),
            p_b: max_drift(rec().map(|r| r.p_b), unit),
            clairaut1: max_drift(rec().map(|r| r.clairaut1), unit),
            clairaut2: max_drift(rec().map(|r| r.clairaut2), unit),
            residual: (!res.is_empty()).then(|| max_drift(res.into_iter(), |_| 1.0)),
        }
    }

    /// Names of the drifts above their thresholds.
    pub fn violations(&self, th: &Thresholds) -> Vec<&'static str> {
        let mut v = Vec::new();
        let mut check = |name, x: f64, lim: f64| {
            if !(x <= lim) {
                v.push(name);
            }
        };
        check("E", self.e, th.energy);
        check("p_a", self.p_a, th.momentum);
        check("p_b", self.p_b, th.momentum);
        check("clairaut1", self.clairaut1, th.clairaut);
        check("clairaut2", self.clairaut2, th.clairaut);
        if let Some(r) = self.residual {
            check("residual", r, th.residual);
        }
        v
    }
}

/// One geodesic run reduced to a table row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub phi0: Option<f64>,
    pub theta0: Option<f64>,
    pub start: GeodesicState,
    /// Final `(s, state)`; `None` when the run never started.
    pub end: Option<(f64, GeodesicState)>,
    pub steps: usize,
    pub termination: String,
    pub drifts: Drifts,
    pub residual_mean: Option<f64>,
    pub note: Option<String>,
}

impl RunSummary {
    pub fn from_trajectory(
        tr: &Trajectory,
        variant: FormulaVariant,
        chart: Option<(f64, f64)>,
    ) -> RunSummary {
        let last = tr.last();
        let res = residual_series(tr, variant);
        RunSummary {
            phi0: chart.map(|c| c.0),
            theta0: chart.map(|c| c.1),
            start: tr.first().state,
            end: Some((last.record.s, last.state)),
            steps: tr.meta.steps,
            termination: tr.meta.termination.label().to_string(),
            drifts: Drifts::of(tr, variant),
            residual_mean: (!res.is_empty()).then(|| res.iter().sum::<f64>() / res.len() as f64),
            note: None,
        }
    }

    /// Row for a node whose initial state could not be built.
    pub fn failed(chart: Option<(f64, f64)>, start: GeodesicState, why: &str, msg: String) -> Self {
        RunSummary {
            phi0: chart.map(|c| c.0),
            theta0: chart.map(|c| c.1),
            start,
            end: None,
            steps: 0,
            termination: why.to_string(),
            drifts: Drifts::default(),
            residual_mean: None,
            note: Some(msg),
        }
    }
}
