//! One geodesic per `(phi, theta)` node, run on a worker pool and collected
//! in grid order.

use rayon::prelude::*;

use crate::error::{GeomError, Result};
use crate::geodesics::{integrate, unit_speed_state, GeodesicState};

use super::config::{ChartStart, RunConfig};
use super::summary::RunSummary;

/// Grid nodes, `phi` outer and `theta` inner.
pub fn sweep_nodes(cfg: &RunConfig) -> Result<Vec<(f64, f64)>> {
    let sw = cfg
        .sweep
        .ok_or_else(|| GeomError::Invalid("missing [sweep] section".into()))?;
    let thetas = sw.theta.values();
    let nodes: Vec<_> = sw
        .phi
        .values()
        .into_iter()
        .flat_map(|p| thetas.iter().map(move |&q| (p, q)))
        .collect();
    if nodes.is_empty() {
        return Err(GeomError::Invalid("empty sweep grid".into()));
    }
    Ok(nodes)
}

fn base_point(cfg: &RunConfig) -> Result<ChartStart> {
    cfg.initial
        .and_then(|i| i.chart)
        .ok_or_else(|| GeomError::Invalid("sweep needs an [initial.chart] start point".into()))
}

/// Runs the node at `(phi, theta)` from the configured start point.
pub fn run_node(cfg: &RunConfig, phi: f64, theta: f64) -> Result<RunSummary> {
    let m = cfg.metric()?;
    let c = base_point(cfg)?;
    let chart = Some((phi, theta));
    let st = match unit_speed_state(&m, c.a, c.b, c.t, phi, theta) {
        Ok(st) => st,
        Err(e @ GeomError::NotTimelike(_)) => {
            let at = GeodesicState {
                a: c.a,
                b: c.b,
                t: c.t,
                ..Default::default()
            };
            return Ok(RunSummary::failed(chart, at, "not_timelike", e.to_string()));
        }
        Err(e) => return Err(e),
    };
    let tr = integrate(&m, st, cfg.s_end, &cfg.integrator)?;
    Ok(RunSummary::from_trajectory(&tr, cfg.variant, chart))
}

/// All nodes on `workers` threads; rows come back in grid order whatever the
/// scheduling.
pub fn run_sweep(cfg: &RunConfig, workers: usize) -> Result<Vec<RunSummary>> {
    let nodes = sweep_nodes(cfg)?;
    base_point(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| GeomError::Invalid(format!("worker pool: {e}")))?;
    pool.install(|| {
        nodes
            .par_iter()
            .map(|&(p, q)| run_node(cfg, p, q))
            .collect::<Result<Vec<_>>>()
    })
}
