//! Run configuration. TOML with dotted sections; unknown keys are rejected.
//!
//! ```toml
//! family = "S23"
//! s_end = 10.0
//! variant = "corrected"
//!
//! [profile]
//! domain = [-0.5, 60.0]
//! first = { kind = "poly", coeffs = [1.0, 0.6] }
//! second = { kind = "poly", coeffs = [1.0, 0.8] }
//!
//! [initial.chart]
//! t = 1.0
//! phi = 0.5
//! theta = 0.3
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geodesics::{unit_speed_state, DiagonalMetric3, GeodesicState, IntegratorOptions};
use crate::surfaces::{AnglePath, ProfileCurve, ScalarFn, SurfaceFamily, SurfaceGrid};
use crate::FormulaVariant;

fn is_false(b: &bool) -> bool {
    !*b
}

fn default_s_end() -> f64 {
    10.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSpec {
    pub first: ScalarFn,
    pub second: ScalarFn,
    pub domain: (f64, f64),
}

impl ProfileSpec {
    pub fn build(&self, fam: SurfaceFamily) -> Result<ProfileCurve> {
        ProfileCurve::planar(fam, self.first.clone(), self.second.clone(), self.domain)
    }
}

/// Start point and slope angles of a unit-speed time-like geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartStart {
    #[serde(default)]
    pub a: f64,
    #[serde(default)]
    pub b: f64,
    pub t: f64,
    pub phi: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<ChartStart>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<GeodesicState>,
}

fn t_energy() -> f64 {
    1e-8
}
fn t_momentum() -> f64 {
    1e-8
}
fn t_clairaut() -> f64 {
    1e-7
}
fn t_residual() -> f64 {
    1e-7
}

/// Largest accepted drifts (see [`crate::io::Drifts`] for their definitions).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thresholds {
    #[serde(default = "t_energy")]
    pub energy: f64,
    #[serde(default = "t_momentum")]
    pub momentum: f64,
    #[serde(default = "t_clairaut")]
    pub clairaut: f64,
    #[serde(default = "t_residual")]
    pub residual: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            energy: t_energy(),
            momentum: t_momentum(),
            clairaut: t_clairaut(),
            residual: t_residual(),
        }
    }
}

/// `n` evenly spaced values from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range1 {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Range1 {
    pub fn values(&self) -> Vec<f64> {
        match self.n {
            0 => vec![],
            1 => vec![self.lo],
            n => (0..n)
                .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub phi: Range1,
    pub theta: Range1,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stem: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub family: SurfaceFamily,
    #[serde(default = "default_s_end")]
    pub s_end: f64,
    #[serde(default)]
    pub variant: FormulaVariant,
    #[serde(default, skip_serializing_if = "is_false")]
    pub unit_t_coefficient: bool,
    pub profile: ProfileSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<AnglePath>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<InitialSpec>,
    #[serde(default)]
    pub integrator: IntegratorOptions,
    #[serde(default)]
    pub thresholds: Thresholds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<SurfaceGrid>,
    #[serde(default)]
    pub output: OutputSpec,
}

fn invalid(msg: impl Into<String>) -> GeomError {
    GeomError::Invalid(msg.into())
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            toml::from_str(text).map_err(|e| invalid(format!("config parse error: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s_end > 0.0 && self.s_end.is_finite()) {
            return Err(invalid(format!("s_end must be positive, got {}", self.s_end)));
        }
        self.integrator.validate()?;
        if let Some(init) = &self.initial {
            match (init.chart.is_some(), init.state.is_some()) {
                (true, false) | (false, true) => {}
                _ => {
                    return Err(invalid(
                        "exactly one of [initial.chart] and [initial.state] must be given",
                    ))
                }
            }
        }
        Ok(())
    }

    pub fn profile_curve(&self) -> Result<ProfileCurve> {
        self.profile.build(self.family)
    }

    pub fn metric(&self) -> Result<DiagonalMetric3> {
        DiagonalMetric3::from_profile(self.family, &self.profile_curve()?, self.unit_t_coefficient)
    }

    pub fn angle_path(&self) -> Result<AnglePath> {
        let p = self.path.clone().unwrap_or_else(AnglePath::diagonal);
        p.validate()?;
        Ok(p)
    }

    /// Initial state from `[initial]`, building the unit-speed state when
    /// the chart form is used.
    pub fn initial_state(&self, m: &DiagonalMetric3) -> Result<GeodesicState> {
        let init = self
            .initial
            .ok_or_else(|| invalid("missing [initial.chart] or [initial.state]"))?;
        match (init.chart, init.state) {
            (Some(c), None) => unit_speed_state(m, c.a, c.b, c.t, c.phi, c.theta),
            (None, Some(s)) => GeodesicState::new(s.a, s.b, s.t, s.va, s.vb, s.vt),
            _ => Err(invalid("exactly one of [initial.chart] and [initial.state] must be given")),
        }
    }

    /// File stem for outputs, `family` by default.
    pub fn stem(&self) -> String {
        self.output
            .stem
            .clone()
            .unwrap_or_else(|| self.family.name().to_ascii_lowercase())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
family = "S23"
s_end = 5.0
variant = "verbatim"

[profile]
domain = [-0.5, 60.0]
first = { kind = "poly", coeffs = [1.0, 0.6] }
second = { kind = "sin", amp = 2.0 }

[initial.chart]
t = 1.0
phi = 0.5
theta = 0.3

[integrator]
h = 0.002

[sweep]
phi = { lo = 0.1, hi = 1.0, n = 4 }
theta = { lo = -1.0, hi = 1.0, n = 3 }
"#;

    #[test]
    fn parses_and_round_trips() {
        let cfg = RunConfig::from_toml_str(SAMPLE).unwrap();
        assert_eq!(cfg.family, SurfaceFamily::S23);
        assert_eq!(cfg.variant, FormulaVariant::Verbatim);
        assert_eq!(cfg.integrator.h, 0.002);
        assert!(!cfg.integrator.adaptive);
        assert_eq!(cfg.profile.second, ScalarFn::sin(2.0, 1.0, 0.0));
        let text = cfg.to_toml_string();
        let again = RunConfig::from_toml_str(&text).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn rejects_unknown_keys() {
        let bad = SAMPLE.replace("s_end = 5.0", "s_end = 5.0\nspeed = 3");
        assert!(RunConfig::from_toml_str(&bad).is_err());
        let bad = SAMPLE.replace("h = 0.002", "h = 0.002\nstep = 1");
        assert!(RunConfig::from_toml_str(&bad).is_err());
        let bad = SAMPLE.replace("amp = 2.0", "amp = 2.0, freq = 1.0");
        assert!(RunConfig::from_toml_str(&bad).is_err());
    }

    #[test]
    fn rejects_two_initial_forms() {
        let bad = format!("{SAMPLE}\n[initial.state]\nt = 1.0\na = 0.0\nb = 0.0\nva = 0.0\nvb = 0.0\nvt = 1.0\n");
        assert!(RunConfig::from_toml_str(&bad).is_err());
    }

    #[test]
    fn rejects_bad_numbers() {
        assert!(RunConfig::from_toml_str(&SAMPLE.replace("s_end = 5.0", "s_end = -1.0")).is_err());
        assert!(RunConfig::from_toml_str(&SAMPLE.replace("h = 0.002", "h = 0.0")).is_err());
    }

    #[test]
    fn range_values() {
        let r = Range1 {
            lo: 0.0,
            hi: 1.0,
            n: 3,
        };
        assert_eq!(r.values(), vec![0.0, 0.5, 1.0]);
        assert!(Range1 { n: 0, ..r }.values().is_empty());
    }
}
