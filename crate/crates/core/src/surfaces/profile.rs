//! Profile curves and angle paths built from a small catalog of scalar
//! functions whose derivatives are exact.

use serde::{Deserialize, Serialize};

use super::SurfaceFamily;
use crate::error::{GeomError, Result};
use crate::linalg::Vec4;

fn one() -> f64 {
    1.0
}

/// `amp * f(rate * x + phase)` for a trigonometric or hyperbolic `f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Wave {
    #[serde(default = "one")]
    pub amp: f64,
    #[serde(default = "one")]
    pub rate: f64,
    #[serde(default)]
    pub phase: f64,
}

impl Default for Wave {
    fn default() -> Self {
        Wave {
            amp: 1.0,
            rate: 1.0,
            phase: 0.0,
        }
    }
}

/// Scalar function of one variable with exact first and second derivatives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ScalarFn {
    /// `sum coeffs[k] x^k`.
    Poly { coeffs: Vec<f64> },
    Sin(Wave),
    Cos(Wave),
    Sinh(Wave),
    Cosh(Wave),
}

/// Value and first two derivatives at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl ScalarFn {
    pub fn constant(c: f64) -> Self {
        ScalarFn::Poly { coeffs: vec![c] }
    }

    pub fn linear(c0: f64, c1: f64) -> Self {
        ScalarFn::Poly {
            coeffs: vec![c0, c1],
        }
    }

    pub fn poly(coeffs: &[f64]) -> Self {
        ScalarFn::Poly {
            coeffs: coeffs.to_vec(),
        }
    }

    pub fn sin(amp: f64, rate: f64, phase: f64) -> Self {
        ScalarFn::Sin(Wave { amp, rate, phase })
    }

    pub fn cos(amp: f64, rate: f64, phase: f64) -> Self {
        ScalarFn::Cos(Wave { amp, rate, phase })
    }

    pub fn sinh(amp: f64, rate: f64, phase: f64) -> Self {
        ScalarFn::Sinh(Wave { amp, rate, phase })
    }

    pub fn cosh(amp: f64, rate: f64, phase: f64) -> Self {
        ScalarFn::Cosh(Wave { amp, rate, phase })
    }

    pub fn jet(&self, x: f64) -> Jet {
        match self {
            ScalarFn::Poly { coeffs } => {
                let (mut v, mut d1, mut d2) = (0.0, 0.0, 0.0);
                for c in coeffs.iter().rev() {
                    d2 = d2 * x + 2.0 * d1;
                    d1 = d1 * x + v;
                    v = v * x + c;
                }
                Jet { v, d1, d2 }
            }
            ScalarFn::Sin(w) => {
                let u = w.rate * x + w.phase;
                Jet {
                    v: w.amp * u.sin(),
                    d1: w.amp * w.rate * u.cos(),
                    d2: -w.amp * w.rate * w.rate * u.sin(),
                }
            }
            ScalarFn::Cos(w) => {
                let u = w.rate * x + w.phase;
                Jet {
                    v: w.amp * u.cos(),
                    d1: -w.amp * w.rate * u.sin(),
                    d2: -w.amp * w.rate * w.rate * u.cos(),
                }
            }
            ScalarFn::Sinh(w) => {
                let u = w.rate * x + w.phase;
                Jet {
                    v: w.amp * u.sinh(),
                    d1: w.amp * w.rate * u.cosh(),
                    d2: w.amp * w.rate * w.rate * u.sinh(),
                }
            }
            ScalarFn::Cosh(w) => {
                let u = w.rate * x + w.phase;
                Jet {
                    v: w.amp * u.cosh(),
                    d1: w.amp * w.rate * u.sinh(),
                    d2: w.amp * w.rate * w.rate * u.cosh(),
                }
            }
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        self.jet(x).v
    }

    fn params_finite(&self) -> bool {
        match self {
            ScalarFn::Poly { coeffs } => coeffs.iter().all(|c| c.is_finite()),
            ScalarFn::Sin(w) | ScalarFn::Cos(w) | ScalarFn::Sinh(w) | ScalarFn::Cosh(w) => {
                w.amp.is_finite() && w.rate.is_finite() && w.phase.is_finite()
            }
        }
    }

    /// Compares the exact derivatives with central differences at evenly
    /// spaced interior points of `[lo, hi]`.
    pub fn check_derivatives(&self, what: &str, lo: f64, hi: f64) -> Result<()> {
        const REL: f64 = 1e-6;
        if !self.params_finite() {
            return Err(GeomError::NonFinite("scalar function parameter"));
        }
        let n = 9;
        for k in 1..=n {
            let x = lo + (hi - lo) * k as f64 / (n + 1) as f64;
            let j = self.jet(x);
            let h1 = 1e-5 * x.abs().max(1.0);
            let fd1 = (self.value(x + h1) - self.value(x - h1)) / (2.0 * h1);
            let scale1 = j.d1.abs().max(j.v.abs()).max(1.0);
            let rel1 = (fd1 - j.d1).abs() / scale1;
            if !(rel1 <= REL) {
                return Err(GeomError::InconsistentDerivative {
                    what: format!("{what}'"),
                    at: x,
                    rel: rel1,
                });
            }
            let h2 = 1e-4 * x.abs().max(1.0);
            let fd2 = (self.value(x + h2) - 2.0 * j.v + self.value(x - h2)) / (h2 * h2);
            let scale2 = j.d2.abs().max(j.v.abs()).max(1.0);
            let rel2 = (fd2 - j.d2).abs() / scale2;
            if !(rel2 <= REL) {
                return Err(GeomError::InconsistentDerivative {
                    what: format!("{what}''"),
                    at: x,
                    rel: rel2,
                });
            }
        }
        Ok(())
    }
}

fn check_domain(lo: f64, hi: f64) -> Result<()> {
    if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok(())
    } else {
        Err(GeomError::Invalid(format!("bad domain [{lo}, {hi}]")))
    }
}

/// Generating curve `gamma(s) = (f1, f2, f3, f4)`. `None` slots are exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    slots: [Option<ScalarFn>; 4],
    domain: (f64, f64),
}

/// Jet of the two slots a family rotates (for the planar pattern).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarJet {
    pub first: Jet,
    pub second: Jet,
}

impl ProfileCurve {
    /// Arbitrary (not necessarily planar) profile.
    pub fn general(slots: [Option<ScalarFn>; 4], domain: (f64, f64)) -> Result<Self> {
        check_domain(domain.0, domain.1)?;
        for (i, f) in slots.iter().enumerate() {
            if let Some(f) = f {
                f.check_derivatives(&format!("f{}", i + 1), domain.0, domain.1)?;
            }
        }
        Ok(ProfileCurve { slots, domain })
    }

    /// Planar profile in the slot pattern of `family`:
    /// S14 `(f1,0,0,f4)`, S23 `(f1,f2,0,0)`, S56 `(0,f2,0,f4)`.
    pub fn planar(
        family: SurfaceFamily,
        first: ScalarFn,
        second: ScalarFn,
        domain: (f64, f64),
    ) -> Result<Self> {
        let (i, j) = family.profile_slots();
        let mut slots: [Option<ScalarFn>; 4] = Default::default();
        slots[i] = Some(first);
        slots[j] = Some(second);
        ProfileCurve::general(slots, domain)
    }

    /// Profiles whose surfaces lie on the unit space forms:
    /// S14 `(sinh, 0, 0, cosh)`, S23 `(cos, sin, 0, 0)`, S56 `(0, cosh, 0, sinh)`.
    pub fn space_form_catalog(family: SurfaceFamily) -> Self {
        let (first, second, dom) = match family {
            SurfaceFamily::S14 => (ScalarFn::sinh(1., 1., 0.), ScalarFn::cosh(1., 1., 0.), 3.0),
            SurfaceFamily::S23 => (ScalarFn::cos(1., 1., 0.), ScalarFn::sin(1., 1., 0.), 6.5),
            SurfaceFamily::S56 => (ScalarFn::cosh(1., 1., 0.), ScalarFn::sinh(1., 1., 0.), 3.0),
        };
        ProfileCurve::planar(family, first, second, (-dom, dom)).expect("catalog profile")
    }

    /// Profiles for which the induced t-coefficient is exactly `-1`:
    /// S14 `(sinh, cosh)`, S23 `(cos, sin)`, S56 `(sinh, cosh)`.
    pub fn normalized_catalog(family: SurfaceFamily) -> Self {
        let (first, second, dom) = match family {
            SurfaceFamily::S14 | SurfaceFamily::S56 => {
                (ScalarFn::sinh(1., 1., 0.), ScalarFn::cosh(1., 1., 0.), 12.0)
            }
            SurfaceFamily::S23 => (ScalarFn::cos(1., 1., 0.), ScalarFn::sin(1., 1., 0.), 6.5),
        };
        ProfileCurve::planar(family, first, second, (-dom, dom)).expect("catalog profile")
    }

    /// Straight-line profiles with unit time-like (or, for S23, Euclidean unit)
    /// speed, so the induced t-coefficient is exactly `-1`, and both radii stay
    /// positive for `t >= 0`.
    pub fn linear_catalog(family: SurfaceFamily) -> Self {
        let (first, second) = match family {
            SurfaceFamily::S14 | SurfaceFamily::S56 => {
                let w: f64 = 0.5;
                (ScalarFn::linear(1.0, w.cosh()), ScalarFn::linear(1.0, w.sinh()))
            }
            SurfaceFamily::S23 => (ScalarFn::linear(1.0, 0.6), ScalarFn::linear(1.0, 0.8)),
        };
        ProfileCurve::planar(family, first, second, (-0.5, 60.0)).expect("catalog profile")
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn slot(&self, i: usize) -> Option<&ScalarFn> {
        self.slots[i].as_ref()
    }

    pub fn in_domain(&self, s: f64) -> bool {
        s >= self.domain.0 && s <= self.domain.1
    }

    fn check(&self, s: f64) -> Result<()> {
        if self.in_domain(s) {
            Ok(())
        } else {
            Err(GeomError::Domain {
                what: "profile parameter",
                value: s,
                lo: self.domain.0,
                hi: self.domain.1,
            })
        }
    }

    fn slot_jet(&self, i: usize, s: f64) -> Jet {
        match &self.slots[i] {
            Some(f) => f.jet(s),
            None => Jet {
                v: 0.0,
                d1: 0.0,
                d2: 0.0,
            },
        }
    }

    /// `f_i(s)`, with `i` in 1..=4.
    pub fn value(&self, i: usize, s: f64) -> Result<f64> {
        self.check(s)?;
        Ok(self.slot_jet(i - 1, s).v)
    }

    pub fn d1(&self, i: usize, s: f64) -> Result<f64> {
        self.check(s)?;
        Ok(self.slot_jet(i - 1, s).d1)
    }

    pub fn d2(&self, i: usize, s: f64) -> Result<f64> {
        self.check(s)?;
        Ok(self.slot_jet(i - 1, s).d2)
    }

    pub fn point(&self, s: f64) -> Result<Vec4> {
        self.check(s)?;
        Ok(Vec4::from_array(std::array::from_fn(|i| self.slot_jet(i, s).v)))
    }

    pub fn matches_pattern(&self, family: SurfaceFamily) -> bool {
        let (i, j) = family.profile_slots();
        (0..4).all(|k| k == i || k == j || self.slots[k].is_none())
    }

    /// Jet of the two rotated slots; errors if the profile is not in the
    /// family's planar pattern.
    pub fn planar_jet(&self, family: SurfaceFamily, s: f64) -> Result<PlanarJet> {
        if !self.matches_pattern(family) {
            return Err(GeomError::PatternMismatch {
                family: family.name(),
            });
        }
        self.check(s)?;
        let (i, j) = family.profile_slots();
        Ok(PlanarJet {
            first: self.slot_jet(i, s),
            second: self.slot_jet(j, s),
        })
    }
}

/// Angle path `t -> (a(t), b(t))` selecting a 2-surface inside the
/// two-angle immersion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnglePath {
    pub a: ScalarFn,
    pub b: ScalarFn,
    pub domain: (f64, f64),
}

/// `(a, a', a'', b, b', b'')` at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathJet {
    pub a: Jet,
    pub b: Jet,
}

impl AnglePath {
    pub fn new(a: ScalarFn, b: ScalarFn, domain: (f64, f64)) -> Result<Self> {
        check_domain(domain.0, domain.1)?;
        a.check_derivatives("a", domain.0, domain.1)?;
        b.check_derivatives("b", domain.0, domain.1)?;
        Ok(AnglePath { a, b, domain })
    }

    /// `a(t) = t, b(t) = t`.
    pub fn diagonal() -> Self {
        AnglePath::new(ScalarFn::linear(0., 1.), ScalarFn::linear(0., 1.), (-10., 10.))
            .expect("diagonal path")
    }

    pub fn constant(a: f64, b: f64) -> Self {
        AnglePath::new(ScalarFn::constant(a), ScalarFn::constant(b), (-10., 10.))
            .expect("constant path")
    }

    pub fn validate(&self) -> Result<()> {
        AnglePath::new(self.a.clone(), self.b.clone(), self.domain).map(|_| ())
    }

    pub fn jet(&self, t: f64) -> Result<PathJet> {
        if t < self.domain.0 || t > self.domain.1 {
            return Err(GeomError::Domain {
                what: "path parameter",
                value: t,
                lo: self.domain.0,
                hi: self.domain.1,
            });
        }
        Ok(PathJet {
            a: self.a.jet(t),
            b: self.b.jet(t),
        })
    }
}
