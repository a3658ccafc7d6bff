use serde::{Deserialize, Serialize};

use super::{clairaut_decompose, conserved_momenta, geodesic_rhs, DiagonalMetric3, GeodesicState};
use crate::error::{GeomError, Result};
use crate::physics::specific_angular_momentum;
use crate::surfaces::SurfaceFamily;

fn default_h() -> f64 {
    1e-3
}

fn default_tol() -> f64 {
    1e-10
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorOptions {
    /// Fixed step, or the initial step in adaptive mode.
    #[serde(default = "default_h")]
    pub h: f64,
    /// Step doubling with local error control.
    #[serde(default)]
    pub adaptive: bool,
    /// Local error tolerance per step (adaptive mode).
    #[serde(default = "default_tol")]
    pub tol: f64,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        IntegratorOptions {
            h: default_h(),
            adaptive: false,
            tol: default_tol(),
        }
    }
}

impl IntegratorOptions {
    pub fn fixed(h: f64) -> Self {
        IntegratorOptions {
            h,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(GeomError::Invalid(format!("step h must be positive, got {}", self.h)));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(GeomError::Invalid(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

/// Monitored quantities at one sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantRecord {
    pub s: f64,
    #[serde(rename = "E")]
    pub e: f64,
    pub p_a: f64,
    pub p_b: f64,
    pub clairaut1: f64,
    pub clairaut2: f64,
    #[serde(rename = "V")]
    pub v: f64,
    pub phi: Option<f64>,
    pub theta: Option<f64>,
    pub l: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub state: GeodesicState,
    pub record: InvariantRecord,
}

/// Why integration stopped.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Termination {
    Completed,
    DegenerateMetric { condition: String, value: f64 },
    /// `g_t` changed sign relative to the start.
    CausalChange { g_t: f64 },
    OutOfDomain { t: f64 },
    NonFinite,
    StepUnderflow { h: f64 },
}

impl Termination {
    pub fn is_completed(&self) -> bool {
        matches!(self, Termination::Completed)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Termination::Completed => "completed",
            Termination::DegenerateMetric { .. } => "degenerate_metric",
            Termination::CausalChange { .. } => "causal_change",
            Termination::OutOfDomain { .. } => "out_of_domain",
            Termination::NonFinite => "non_finite",
            Termination::StepUnderflow { .. } => "step_underflow",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryMeta {
    pub family: SurfaceFamily,
    pub step_policy: &'static str,
    pub h: f64,
    pub tol: Option<f64>,
    pub s_end: f64,
    pub steps: usize,
    pub rejected: usize,
    pub unit_t_coefficient: bool,
    pub termination: Termination,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub meta: TrajectoryMeta,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn first(&self) -> &Sample {
        &self.samples[0]
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory has the initial sample")
    }
}

fn record(m: &DiagonalMetric3, s: f64, st: &GeodesicState) -> Result<InvariantRecord> {
    let mom = conserved_momenta(m, st)?;
    let d = clairaut_decompose(m, st)?;
    Ok(InvariantRecord {
        s,
        e: mom.e,
        p_a: mom.p_a,
        p_b: mom.p_b,
        clairaut1: d.clairaut1,
        clairaut2: d.clairaut2,
        v: d.v,
        phi: d.phi,
        theta: d.theta,
        l: specific_angular_momentum(m, st)?,
    })
}

fn termination_of(e: GeomError, t: f64) -> Termination {
    match e {
        GeomError::DegenerateMetric { condition, value } => Termination::DegenerateMetric {
            condition: condition.to_string(),
            value,
        },
        GeomError::Domain { .. } => Termination::OutOfDomain { t },
        _ => Termination::NonFinite,
    }
}

struct Stepper<'a> {
    m: &'a DiagonalMetric3,
    gt_sign: f64,
}

impl Stepper<'_> {
    fn rk4(&self, y: &GeodesicState, h: f64) -> Result<GeodesicState> {
        let k1 = geodesic_rhs(self.m, y)?;
        let k2 = geodesic_rhs(self.m, &(*y + (0.5 * h) * k1))?;
        let k3 = geodesic_rhs(self.m, &(*y + (0.5 * h) * k2))?;
        let k4 = geodesic_rhs(self.m, &(*y + h * k3))?;
        Ok(*y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
    }

    /// Accepts a new state or says why the run must stop.
    fn admit(&self, y: &GeodesicState) -> std::result::Result<(), Termination> {
        if !y.is_finite() {
            return Err(Termination::NonFinite);
        }
        let p = self.m.eval(y.t).map_err(|e| termination_of(e, y.t))?;
        if p.g[2].signum() != self.gt_sign {
            return Err(Termination::CausalChange { g_t: p.g[2] });
        }
        Ok(())
    }
}

/// Integrates the geodesic equations from `s = 0` to `s_end`.
///
/// A vanishing radius, a sign change of `g_t`, leaving the profile domain or
/// a non-finite state end the run early; that is reported in
/// `meta.termination`, not as an error.
pub fn integrate(
    m: &DiagonalMetric3,
    st0: GeodesicState,
    s_end: f64,
    opts: &IntegratorOptions,
) -> Result<Trajectory> {
    opts.validate()?;
    if !(s_end > 0.0 && s_end.is_finite()) {
        return Err(GeomError::Invalid(format!("s_end must be positive, got {s_end}")));
    }
    if !st0.is_finite() {
        return Err(GeomError::NonFinite("initial state"));
    }
    let p0 = m.eval(st0.t)?;
    let stepper = Stepper {
        m,
        gt_sign: p0.g[2].signum(),
    };
    let mut samples = vec![Sample {
        state: st0,
        record: record(m, 0.0, &st0)?,
    }];
    let mut termination = Termination::Completed;
    let mut rejected = 0usize;
    let mut y = st0;

    if !opts.adaptive {
        let n = (s_end / opts.h - 1e-9).ceil().max(1.0) as usize;
        let mut s_prev = 0.0;
        for i in 1..=n {
            let s = if i == n { s_end } else { i as f64 * opts.h };
            let next = match stepper.rk4(&y, s - s_prev) {
                Ok(v) => v,
                Err(e) => {
                    termination = termination_of(e, y.t);
                    break;
                }
            };
            if let Err(t) = stepper.admit(&next) {
                termination = t;
                break;
            }
            y = next;
            samples.push(Sample {
                state: y,
                record: record(m, s, &y)?,
            });
            s_prev = s;
        }
    } else {
        const H_MIN: f64 = 1e-12;
        let mut s = 0.0;
        let mut h = opts.h.min(s_end);
        while s < s_end {
            let hh = h.min(s_end - s);
            let trial = stepper.rk4(&y, hh).and_then(|full| {
                let half = stepper.rk4(&y, 0.5 * hh)?;
                let two = stepper.rk4(&half, 0.5 * hh)?;
                Ok((full, two))
            });
            let (full, two) = match trial {
                Ok(v) => v,
                Err(e) => {
                    if hh > H_MIN {
                        h = 0.5 * hh;
                        rejected += 1;
                        continue;
                    }
                    termination = termination_of(e, y.t);
                    break;
                }
            };
            let err = two.max_abs_diff(&full);
            if !(err <= opts.tol) {
                rejected += 1;
                let shrink = if err.is_finite() {
                    (0.9 * (opts.tol / err).powf(0.2)).clamp(0.1, 0.5)
                } else {
                    0.1
                };
                h = hh * shrink;
                if h < H_MIN {
                    termination = Termination::StepUnderflow { h };
                    break;
                }
                continue;
            }
            // local extrapolation
            let next = two + (1.0 / 15.0) * (two + (-1.0) * full);
            if let Err(t) = stepper.admit(&next) {
                termination = t;
                break;
            }
            s = if s_end - (s + hh) < 1e-14 * s_end { s_end } else { s + hh };
            y = next;
            samples.push(Sample {
                state: y,
                record: record(m, s, &y)?,
            });
            let grow = if err > 0.0 {
                (0.9 * (opts.tol / err).powf(0.2)).clamp(1.0, 4.0)
            } else {
                4.0
            };
            h = hh * grow;
        }
    }

    Ok(Trajectory {
        meta: TrajectoryMeta {
            family: m.family(),
            step_policy: if opts.adaptive { "rk4_step_doubling" } else { "rk4_fixed" },
            h: opts.h,
            tol: opts.adaptive.then_some(opts.tol),
            s_end,
            steps: samples.len() - 1,
            rejected,
            unit_t_coefficient: m.unit_t_coefficient(),
            termination,
        },
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::ProfileCurve;

    #[test]
    fn meridian_keeps_angles() {
        for fam in SurfaceFamily::ALL {
            let g = ProfileCurve::linear_catalog(fam);
            let m = DiagonalMetric3::from_profile(fam, &g, false).unwrap();
            let st = GeodesicState::new(0.3, -0.2, 0.5, 0.0, 0.0, 1.0).unwrap();
            let tr = integrate(&m, st, 10.0, &IntegratorOptions::default()).unwrap();
            assert!(tr.meta.termination.is_completed());
            for smp in &tr.samples {
                assert!((smp.state.a - 0.3).abs() < 1e-12);
                assert!((smp.state.b + 0.2).abs() < 1e-12);
            }
            assert!((tr.last().state.t - 10.5).abs() < 1e-9);
        }
    }

    #[test]
    fn samples_strictly_increase_and_end_at_s_end() {
        let fam = SurfaceFamily::S23;
        let m =
            DiagonalMetric3::from_profile(fam, &ProfileCurve::linear_catalog(fam), false).unwrap();
        let st = GeodesicState::new(0., 0., 1.0, 0.2, 0.1, 1.1).unwrap();
        for opts in [
            IntegratorOptions::fixed(0.3),
            IntegratorOptions {
                h: 0.1,
                adaptive: true,
                tol: 1e-10,
            },
        ] {
            let tr = integrate(&m, st, 2.0, &opts).unwrap();
            assert!(tr.samples.windows(2).all(|w| w[1].record.s > w[0].record.s));
            assert_eq!(tr.last().record.s, 2.0);
        }
    }

    #[test]
    fn adaptive_matches_fixed() {
        let fam = SurfaceFamily::S56;
        let m =
            DiagonalMetric3::from_profile(fam, &ProfileCurve::linear_catalog(fam), false).unwrap();
        let st = GeodesicState::new(0., 0., 0.5, 0.3, 0.2, 1.2).unwrap();
        let a = integrate(&m, st, 3.0, &IntegratorOptions::fixed(1e-3)).unwrap();
        let b = integrate(
            &m,
            st,
            3.0,
            &IntegratorOptions {
                h: 0.01,
                adaptive: true,
                tol: 1e-10,
            },
        )
        .unwrap();
        assert!(b.samples.len() < a.samples.len());
        assert!(a.last().state.max_abs_diff(&b.last().state) < 1e-7);
    }

    #[test]
    fn rejects_bad_options() {
        let fam = SurfaceFamily::S23;
        let m =
            DiagonalMetric3::from_profile(fam, &ProfileCurve::linear_catalog(fam), false).unwrap();
        let st = GeodesicState::new(0., 0., 1.0, 0.0, 0.0, 1.0).unwrap();
        assert!(integrate(&m, st, -1.0, &IntegratorOptions::default()).is_err());
        assert!(integrate(&m, st, 1.0, &IntegratorOptions::fixed(0.0)).is_err());
    }
}
