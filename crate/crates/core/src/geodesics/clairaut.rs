//! Slope-angle charts of time-like velocities, the Clairaut products, and the
//! first-order quadrature slopes `dt/d(angle)`.

use serde::{Deserialize, Serialize};

use super::{conserved_momenta, DiagonalMetric3, GeodesicState};
use crate::error::{GeomError, Result};
use crate::surfaces::SurfaceFamily;
use crate::FormulaVariant;

/// Speed, slope angles and Clairaut products of one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Decomposition {
    #[serde(rename = "V")]
    pub v: f64,
    /// `None` when the chart cannot represent the velocity.
    pub phi: Option<f64>,
    pub theta: Option<f64>,
    pub clairaut1: f64,
    pub clairaut2: f64,
    /// Orthonormal components `(A va, B vb, C vt)`.
    pub u: [f64; 3],
    /// S14 only: `u_t - V sinh(theta) sin(phi)`. The S14 chart fixes
    /// `(phi, theta)` from `u_a, u_b`; its third relation is not compatible
    /// with a time-like unit vector and this records by how much it misses.
    pub chart_t_residual: Option<f64>,
}

/// `(k_a, k_b)` with `clairaut_i * V = 2 k_i p_i` for positive radii.
pub fn clairaut_momentum_signs(fam: SurfaceFamily) -> (f64, f64) {
    match fam {
        SurfaceFamily::S14 | SurfaceFamily::S23 => (1.0, 1.0),
        SurfaceFamily::S56 => (-1.0, 1.0),
    }
}

pub fn clairaut_decompose(m: &DiagonalMetric3, st: &GeodesicState) -> Result<Decomposition> {
    let p = m.eval_raw(st.t)?;
    let e = conserved_momenta(m, st)?.e;
    let [sa, sb, sc] = p.scales();
    let u = [sa * st.va, sb * st.vb, sc * st.vt];
    let v = (2.0 * e.abs()).sqrt();
    let [r1, r2] = p.radii;
    let (ra, rb) = (u[0] / v, u[1] / v);
    let fam = m.family();
    let (c1, c2) = match fam {
        SurfaceFamily::S14 => (2.0 * r1 * ra, -2.0 * r2 * rb),
        SurfaceFamily::S23 | SurfaceFamily::S56 => (2.0 * r1 * ra, 2.0 * r2 * rb),
    };
    let mut d = Decomposition {
        v,
        phi: None,
        theta: None,
        clairaut1: c1,
        clairaut2: c2,
        u,
        chart_t_residual: None,
    };
    if !(v > 0.0) {
        return Ok(d);
    }
    let rt = u[2] / v;
    match fam {
        SurfaceFamily::S14 => {
            // u_a = V cos(phi), u_b = V cosh(theta) sin(phi)
            let mut sin_sq = 1.0 - ra * ra;
            if sin_sq > -1e-12 {
                sin_sq = sin_sq.max(0.0);
            }
            if sin_sq >= 0.0 && rb * rb >= sin_sq {
                let sphi = if rb < 0.0 { -sin_sq.sqrt() } else { sin_sq.sqrt() };
                let phi = sphi.atan2(ra);
                let mut theta = if sphi == 0.0 {
                    0.0
                } else {
                    (rb / sphi).max(1.0).acosh()
                };
                if rt * sphi < 0.0 {
                    theta = -theta;
                }
                d.phi = Some(phi);
                d.theta = Some(theta);
                d.chart_t_residual = Some(u[2] - v * theta.sinh() * sphi);
            }
        }
        SurfaceFamily::S23 => {
            // u_t = V cosh(phi), u_a = V cos(theta) sinh(phi), u_b = V sinh(phi) sin(theta)
            if rt > 0.0 {
                let sh = (ra * ra + rb * rb).sqrt();
                d.phi = Some(sh.asinh());
                d.theta = Some(rb.atan2(ra));
            }
        }
        SurfaceFamily::S56 => {
            // u_t = V cos(phi), u_a = V sin(phi) cosh(theta), u_b = V sinh(theta) sin(phi)
            if rb.abs() < ra.abs() {
                d.theta = Some((rb / ra).atanh());
                let sphi = ra.signum() * (ra * ra - rb * rb).sqrt();
                d.phi = Some(sphi.atan2(rt));
            }
        }
    }
    Ok(d)
}

/// Unit-speed time-like state at `(a, b, t)` whose slope angles are
/// `(phi, theta)`: the two angle components come from the family chart, the
/// t-component from `g(v, v) = -1`.
pub fn unit_speed_state(
    m: &DiagonalMetric3,
    a: f64,
    b: f64,
    t: f64,
    phi: f64,
    theta: f64,
) -> Result<GeodesicState> {
    let p = m.eval(t)?;
    let [sa, sb, sc] = p.scales();
    let [ea, eb, et] = p.signs();
    let (ua, ub, hint) = match m.family() {
        SurfaceFamily::S14 => (
            phi.cos(),
            theta.cosh() * phi.sin(),
            theta.sinh() * phi.sin(),
        ),
        SurfaceFamily::S23 => (theta.cos() * phi.sinh(), phi.sinh() * theta.sin(), 1.0),
        SurfaceFamily::S56 => (phi.sin() * theta.cosh(), theta.sinh() * phi.sin(), phi.cos()),
    };
    let ut_sq = (-1.0 - ea * ua * ua - eb * ub * ub) / et;
    if !(ut_sq >= 0.0) {
        return Err(GeomError::NotTimelike(ut_sq));
    }
    let ut = if hint < 0.0 { -ut_sq.sqrt() } else { ut_sq.sqrt() };
    GeodesicState::new(a, b, t, ua / sa, ub / sb, ut / sc)
}

/// Which angle the slope `dt/d(angle)` is taken against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlopeAxis {
    First,
    Second,
}

/// Reading of the quadrature constant `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LInterpretation {
    /// `L = 2E = g(v, v)`.
    TwiceEnergy,
    /// `L = V^2 = 2|E|`.
    SquaredSpeed,
}

impl LInterpretation {
    pub fn value(self, energy: f64) -> f64 {
        match self {
            LInterpretation::TwiceEnergy => 2.0 * energy,
            LInterpretation::SquaredSpeed => 2.0 * energy.abs(),
        }
    }
}

fn finish(prefactor: f64, radicand: f64, denom: f64) -> Result<f64> {
    if !(denom.abs() > 1e-300) {
        return Err(GeomError::SingularSlope);
    }
    let magnitude = (prefactor * radicand.abs().sqrt() / denom).abs();
    if radicand < 0.0 {
        return Err(GeomError::ImaginarySlope {
            radicand,
            magnitude,
        });
    }
    Ok(magnitude)
}

/// `|dt/d(angle)|` from the slope angles, the quadrature constant `l` and
/// the profile values `f = (f1, f2, f3, f4)` at the current `t`, for unit
/// speed and `g_t = -1`.
///
/// Errors with `ImaginarySlope` when the radicand is negative; for S56 that
/// is the case on every time-like state.
pub fn quadrature_slope(
    fam: SurfaceFamily,
    axis: SlopeAxis,
    variant: FormulaVariant,
    phi: f64,
    theta: f64,
    l: f64,
    f: [f64; 4],
) -> Result<f64> {
    let [f1, f2, _f3, f4] = f;
    let (sp, cp) = (phi.sin(), phi.cos());
    match (fam, axis) {
        (SurfaceFamily::S14, SlopeAxis::First) => {
            let tan = sp / cp;
            let sec_sq = 1.0 / (cp * cp);
            let rad = 1.0 - theta.cosh().powi(2) * tan * tan - l * sec_sq;
            if !(cp.abs() > 1e-300) {
                return Err(GeomError::SingularSlope);
            }
            finish(f1, rad, 1.0)
        }
        (SurfaceFamily::S14, SlopeAxis::Second) => {
            if !(sp.abs() > 1e-300) {
                return Err(GeomError::SingularSlope);
            }
            let cot_sq = (cp / sp).powi(2);
            let csc_sq = 1.0 / (sp * sp);
            match variant {
                FormulaVariant::Verbatim => {
                    let sech_phi_sq = 1.0 / phi.cosh().powi(2);
                    let rad = cot_sq * theta.tanh().powi(2) - l * sech_phi_sq * csc_sq;
                    finish(f2, rad, 1.0)
                }
                FormulaVariant::Corrected => {
                    let sech_sq = 1.0 / theta.cosh().powi(2);
                    let rad = cot_sq * sech_sq - 1.0 - l * sech_sq * csc_sq;
                    finish(f4, rad, 1.0)
                }
            }
        }
        (SurfaceFamily::S23, SlopeAxis::First) => {
            let sh = phi.sinh();
            finish(f1, sh * sh - l, theta.cos() * sh)
        }
        (SurfaceFamily::S23, SlopeAxis::Second) => {
            let sh = phi.sinh();
            finish(f2, sh * sh - l, sh * theta.sin())
        }
        (SurfaceFamily::S56, SlopeAxis::First) => finish(f2, l + sp * sp, sp * theta.cosh()),
        (SurfaceFamily::S56, SlopeAxis::Second) => finish(f4, sp * sp + l, theta.sinh() * sp),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::ProfileCurve;

    fn linear(fam: SurfaceFamily) -> DiagonalMetric3 {
        DiagonalMetric3::from_profile(fam, &ProfileCurve::linear_catalog(fam), false).unwrap()
    }

    #[test]
    fn pure_first_angle_motion() {
        // u = (V, 0, 0) is space-like here; the chart only reads u_a and u_b
        let m = linear(SurfaceFamily::S14);
        let p = m.eval(1.0).unwrap();
        let st = GeodesicState::new(0., 0., 1., 1.0 / p.radii[0], 0., 0.).unwrap();
        let d = clairaut_decompose(&m, &st).unwrap();
        assert!((d.v - 1.0).abs() < 1e-14);
        assert!((d.clairaut1 - 2.0 * p.radii[0]).abs() < 1e-13);
        assert_eq!(d.clairaut2, 0.0);
        assert_eq!(d.phi, Some(0.0));
    }

    #[test]
    fn unit_speed_round_trip() {
        let cases = [
            (SurfaceFamily::S14, 0.3, 1.2),
            (SurfaceFamily::S23, 0.8, -2.0),
            (SurfaceFamily::S56, 0.6, 0.4),
        ];
        for (fam, phi, theta) in cases {
            let m = linear(fam);
            let st = unit_speed_state(&m, 0.1, -0.2, 2.0, phi, theta).unwrap();
            let mom = conserved_momenta(&m, &st).unwrap();
            assert!((mom.e + 0.5).abs() < 1e-14, "{fam:?}");
            let d = clairaut_decompose(&m, &st).unwrap();
            assert!((d.v - 1.0).abs() < 1e-14);
            assert!((d.phi.unwrap() - phi).abs() < 1e-12, "{fam:?} {d:?}");
            assert!((d.theta.unwrap() - theta).abs() < 1e-12, "{fam:?} {d:?}");
            let (ka, kb) = clairaut_momentum_signs(fam);
            assert!((d.clairaut1 * d.v - 2.0 * ka * mom.p_a).abs() < 1e-12);
            assert!((d.clairaut2 * d.v - 2.0 * kb * mom.p_b).abs() < 1e-12);
        }
    }

    #[test]
    fn s14_chart_misses_t_component() {
        let m = linear(SurfaceFamily::S14);
        let st = unit_speed_state(&m, 0., 0., 2.0, 0.3, 1.2).unwrap();
        let d = clairaut_decompose(&m, &st).unwrap();
        assert!(d.chart_t_residual.unwrap().abs() > 1e-3);
    }

    #[test]
    fn s14_not_timelike() {
        let m = linear(SurfaceFamily::S14);
        assert!(matches!(
            unit_speed_state(&m, 0., 0., 2.0, 1.2, 2.5),
            Err(GeomError::NotTimelike(_))
        ));
    }

    #[test]
    fn s23_turning_point_has_zero_slope() {
        let phi: f64 = 0.7;
        let l = phi.sinh().powi(2);
        let f = [1.5, 0.8, 0.0, 0.0];
        for axis in [SlopeAxis::First, SlopeAxis::Second] {
            let s = quadrature_slope(SurfaceFamily::S23, axis, FormulaVariant::Corrected, phi, 0.4, l, f)
                .unwrap();
            assert_eq!(s, 0.0);
        }
    }

    #[test]
    fn s56_timelike_slope_is_imaginary() {
        let r = quadrature_slope(
            SurfaceFamily::S56,
            SlopeAxis::First,
            FormulaVariant::Verbatim,
            0.6,
            0.3,
            -1.0,
            [0.0, 2.0, 0.0, 1.0],
        );
        match r {
            Err(GeomError::ImaginarySlope {
                radicand,
                magnitude,
            }) => {
                assert!((radicand - (0.6f64.sin().powi(2) - 1.0)).abs() < 1e-15);
                let expect = 2.0 * 0.6f64.cos() / (0.6f64.sin() * 0.3f64.cosh());
                assert!((magnitude - expect).abs() < 1e-13);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn s14_second_slope_variants_differ() {
        let f = [1.3, 0.0, 0.0, 2.1];
        let v = quadrature_slope(SurfaceFamily::S14, SlopeAxis::Second, FormulaVariant::Verbatim, 0.5, 0.2, -1.0, f)
            .unwrap();
        // the printed prefactor is f2, which this slot pattern sets to zero
        assert_eq!(v, 0.0);
        let c = quadrature_slope(SurfaceFamily::S14, SlopeAxis::Second, FormulaVariant::Corrected, 0.5, 0.2, -1.0, f)
            .unwrap();
        assert!(c > 0.0);
    }
}
