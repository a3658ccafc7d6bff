use serde::{Deserialize, Serialize};

use super::{
    curvature_closed, curvature_numeric, immerse_curve_restricted, AnglePath, ProfileCurve,
    SurfaceFamily,
};
use crate::error::{GeomError, Result};
use crate::FormulaVariant;

/// Rectangular `(t, s)` grid, `n` nodes per axis including both ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceGrid {
    pub t: (f64, f64),
    pub t_n: usize,
    pub s: (f64, f64),
    pub s_n: usize,
}

fn node(r: (f64, f64), n: usize, i: usize) -> f64 {
    if n == 1 {
        r.0
    } else {
        r.0 + (r.1 - r.0) * i as f64 / (n - 1) as f64
    }
}

impl SurfaceGrid {
    pub fn len(&self) -> usize {
        self.t_n * self.s_n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Nodes in row-major order (`t` outer, `s` inner).
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.t_n).flat_map(move |i| {
            (0..self.s_n).map(move |j| (node(self.t, self.t_n, i), node(self.s, self.s_n, j)))
        })
    }
}

/// One mesh vertex. Curvature fields are `None` where the frame degenerates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeshRow {
    pub t: f64,
    pub s: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    #[serde(rename = "K")]
    pub k: Option<f64>,
    #[serde(rename = "H_e3")]
    pub h_e3: Option<f64>,
    #[serde(rename = "H_e4")]
    pub h_e4: Option<f64>,
    /// Largest of `|closed - numeric| / max(1, |closed|)` over K, H_e3, H_e4.
    pub deviation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshSummary {
    pub rows: usize,
    pub degenerate: usize,
    /// First degeneracy message, if any.
    pub degenerate_reason: Option<String>,
    pub k_min: f64,
    pub k_max: f64,
    pub k_mean: f64,
    pub deviation_max: f64,
    pub deviation_mean: f64,
}

fn rel_dev(closed: f64, numeric: f64) -> f64 {
    (closed - numeric).abs() / closed.abs().max(1.0)
}

/// Evaluates immersion, closed-form curvature and its deviation from the
/// numeric oracle at every grid node.
pub fn surface_mesh(
    fam: SurfaceFamily,
    profile: &ProfileCurve,
    path: &AnglePath,
    grid: &SurfaceGrid,
    variant: FormulaVariant,
) -> Result<(Vec<MeshRow>, MeshSummary)> {
    if grid.is_empty() {
        return Err(GeomError::Invalid("empty surface grid".into()));
    }
    let mut rows = Vec::with_capacity(grid.len());
    let mut degenerate = 0;
    let mut reason = None;
    let (mut kmin, mut kmax, mut ksum, mut kn) = (f64::INFINITY, f64::NEG_INFINITY, 0.0, 0usize);
    let (mut dmax, mut dsum) = (0.0f64, 0.0);
    for (t, s) in grid.nodes() {
        let x = immerse_curve_restricted(fam, profile, path, t, s)?;
        let mut row = MeshRow {
            t,
            s,
            c1: x.c1,
            c2: x.c2,
            c3: x.c3,
            c4: x.c4,
            k: None,
            h_e3: None,
            h_e4: None,
            deviation: None,
        };
        match curvature_closed(fam, profile, path, t, s, variant) {
            Ok(c) => {
                row.k = Some(c.k);
                row.h_e3 = Some(c.h_e3);
                row.h_e4 = Some(c.h_e4);
                if c.k.is_finite() {
                    kmin = kmin.min(c.k);
                    kmax = kmax.max(c.k);
                    ksum += c.k;
                    kn += 1;
                }
                if let Ok(n) = curvature_numeric(fam, profile, path, t, s) {
                    let d = rel_dev(c.k, n.k)
                        .max(rel_dev(c.h_e3, n.h_e3))
                        .max(rel_dev(c.h_e4, n.h_e4));
                    row.deviation = Some(d);
                    if d.is_finite() {
                        dmax = dmax.max(d);
                    } else {
                        dmax = f64::INFINITY;
                    }
                    dsum += d;
                }
            }
            Err(e @ (GeomError::DegenerateFrame { .. } | GeomError::DegenerateMetric { .. })) => {
                degenerate += 1;
                reason.get_or_insert_with(|| e.to_string());
            }
            Err(e) => return Err(e),
        }
        rows.push(row);
    }
    let nd = rows.iter().filter(|r| r.deviation.is_some()).count();
    let summary = MeshSummary {
        rows: rows.len(),
        degenerate,
        degenerate_reason: reason,
        k_min: if kn > 0 { kmin } else { f64::NAN },
        k_max: if kn > 0 { kmax } else { f64::NAN },
        k_mean: if kn > 0 { ksum / kn as f64 } else { f64::NAN },
        deviation_max: dmax,
        deviation_mean: if nd > 0 { dsum / nd as f64 } else { f64::NAN },
    };
    Ok((rows, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_node_grid() {
        let g = ProfileCurve::space_form_catalog(SurfaceFamily::S23);
        let grid = SurfaceGrid {
            t: (0.3, 0.3),
            t_n: 1,
            s: (0.7, 0.7),
            s_n: 1,
        };
        let (rows, sum) = surface_mesh(
            SurfaceFamily::S23,
            &g,
            &AnglePath::diagonal(),
            &grid,
            FormulaVariant::Corrected,
        )
        .unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(sum.degenerate, 0);
        assert_eq!((rows[0].t, rows[0].s), (0.3, 0.7));
    }

    #[test]
    fn row_major_order() {
        let grid = SurfaceGrid {
            t: (0.0, 1.0),
            t_n: 2,
            s: (0.0, 2.0),
            s_n: 3,
        };
        let v: Vec<_> = grid.nodes().collect();
        assert_eq!(v, vec![(0., 0.), (0., 1.), (0., 2.), (1., 0.), (1., 1.), (1., 2.)]);
    }
}
