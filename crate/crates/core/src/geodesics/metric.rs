use std::fmt;

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::surfaces::{ProfileCurve, ScalarFn, SurfaceFamily};

/// Radii and metric coefficients below this are treated as zero.
pub const METRIC_TOL: f64 = 1e-10;

/// Allowed `|g_t + 1|` before the unit normalization is flagged.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Signs of the two angle coefficients of the induced 3-metric.
pub fn angle_signs(fam: SurfaceFamily) -> (f64, f64) {
    match fam {
        SurfaceFamily::S14 => (1.0, -1.0),
        SurfaceFamily::S23 => (1.0, 1.0),
        SurfaceFamily::S56 => (-1.0, 1.0),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Source {
    Profile {
        first: ScalarFn,
        second: ScalarFn,
        domain: (f64, f64),
    },
    Constant {
        g: [f64; 3],
    },
}

/// Induced metric `diag(g_a(t), g_b(t), g_t(t))` on a rotational
/// 3-submanifold, with the angle coordinates cyclic.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalMetric3 {
    family: SurfaceFamily,
    source: Source,
    unit_t_coefficient: bool,
}

/// Coefficients and their `t`-derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricPoint {
    pub g: [f64; 3],
    pub dg: [f64; 3],
    /// Signed radius functions behind `g_a` and `g_b`.
    pub radii: [f64; 2],
}

impl MetricPoint {
    /// `(A, B, C)`: square roots of `|g|`.
    pub fn scales(&self) -> [f64; 3] {
        self.g.map(|x| x.abs().sqrt())
    }

    pub fn signs(&self) -> [f64; 3] {
        self.g.map(f64::signum)
    }
}

/// `g_t` differs from `-1` although a unit t-coefficient was requested.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizationWarning {
    pub t: f64,
    pub g_t: f64,
}

impl fmt::Display for NormalizationWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "induced t-coefficient is {} at t = {}, not -1; the unit normalization changes the geometry",
            self.g_t, self.t
        )
    }
}

impl DiagonalMetric3 {
    /// Induced metric of the family's rotational 3-submanifold over a planar
    /// profile. With `unit_t_coefficient` the t-coefficient is replaced by `-1`.
    pub fn from_profile(
        fam: SurfaceFamily,
        profile: &ProfileCurve,
        unit_t_coefficient: bool,
    ) -> Result<Self> {
        if !profile.matches_pattern(fam) {
            return Err(GeomError::PatternMismatch { family: fam.name() });
        }
        let (i, j) = fam.profile_slots();
        let pick = |k: usize| {
            profile
                .slot(k)
                .cloned()
                .unwrap_or_else(|| ScalarFn::constant(0.0))
        };
        Ok(DiagonalMetric3 {
            family: fam,
            source: Source::Profile {
                first: pick(i),
                second: pick(j),
                domain: profile.domain(),
            },
            unit_t_coefficient,
        })
    }

    /// Constant coefficients; only the signs of `g_a`, `g_b` enter the
    /// family's Clairaut chart.
    pub fn constant(fam: SurfaceFamily, g: [f64; 3]) -> Result<Self> {
        if g.iter().any(|x| !x.is_finite()) {
            return Err(GeomError::NonFinite("metric coefficient"));
        }
        Ok(DiagonalMetric3 {
            family: fam,
            source: Source::Constant { g },
            unit_t_coefficient: false,
        })
    }

    pub fn family(&self) -> SurfaceFamily {
        self.family
    }

    pub fn unit_t_coefficient(&self) -> bool {
        self.unit_t_coefficient
    }

    pub fn domain(&self) -> (f64, f64) {
        match &self.source {
            Source::Profile { domain, .. } => *domain,
            Source::Constant { .. } => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Coefficients at `t` without degeneracy checks.
    pub fn eval_raw(&self, t: f64) -> Result<MetricPoint> {
        match &self.source {
            Source::Constant { g } => Ok(MetricPoint {
                g: *g,
                dg: [0.0; 3],
                radii: [g[0].abs().sqrt(), g[1].abs().sqrt()],
            }),
            Source::Profile {
                first,
                second,
                domain,
            } => {
                if !(t >= domain.0 && t <= domain.1) {
                    return Err(GeomError::Domain {
                        what: "profile parameter",
                        value: t,
                        lo: domain.0,
                        hi: domain.1,
                    });
                }
                let (p, q) = (first.jet(t), second.jet(t));
                let (ea, eb) = angle_signs(self.family);
                let (gt, dgt) = match self.family {
                    SurfaceFamily::S23 => (
                        -p.d1 * p.d1 - q.d1 * q.d1,
                        -2.0 * (p.d1 * p.d2 + q.d1 * q.d2),
                    ),
                    SurfaceFamily::S14 | SurfaceFamily::S56 => (
                        q.d1 * q.d1 - p.d1 * p.d1,
                        2.0 * (q.d1 * q.d2 - p.d1 * p.d2),
                    ),
                };
                let (gt, dgt) = if self.unit_t_coefficient {
                    (-1.0, 0.0)
                } else {
                    (gt, dgt)
                };
                Ok(MetricPoint {
                    g: [ea * p.v * p.v, eb * q.v * q.v, gt],
                    dg: [2.0 * ea * p.v * p.d1, 2.0 * eb * q.v * q.d1, dgt],
                    radii: [p.v, q.v],
                })
            }
        }
    }

    /// Coefficients at `t`, rejecting vanishing radii or t-coefficient.
    pub fn eval(&self, t: f64) -> Result<MetricPoint> {
        let m = self.eval_raw(t)?;
        if !m.g.iter().chain(m.dg.iter()).all(|x| x.is_finite()) {
            return Err(GeomError::NonFinite("metric coefficient"));
        }
        let [a, b, c] = m.scales();
        for (name, v) in [("A", a), ("B", b), ("C", c)] {
            if !(v >= METRIC_TOL) {
                return Err(GeomError::DegenerateMetric {
                    condition: name,
                    value: v,
                });
            }
        }
        Ok(m)
    }

    /// The unnormalized t-coefficient, for comparison with `-1`.
    pub fn normalization_warning(&self, t: f64) -> Result<Option<NormalizationWarning>> {
        if !self.unit_t_coefficient {
            return Ok(None);
        }
        let raw = DiagonalMetric3 {
            unit_t_coefficient: false,
            ..self.clone()
        };
        let g_t = raw.eval_raw(t)?.g[2];
        Ok(((g_t + 1.0).abs() > NORMALIZATION_TOL).then_some(NormalizationWarning { t, g_t }))
    }
}

/// Induced metric of the family at `t`, plus a warning when the requested
/// unit normalization of the t-coefficient is not exact there.
pub fn induced_metric3(
    fam: SurfaceFamily,
    profile: &ProfileCurve,
    t: f64,
    unit_t_coefficient: bool,
) -> Result<(MetricPoint, Option<NormalizationWarning>)> {
    let m = DiagonalMetric3::from_profile(fam, profile, unit_t_coefficient)?;
    let warn = m.normalization_warning(t)?;
    Ok((m.eval(t)?, warn))
}
