//! Geodesic flow on the induced diagonal 3-metrics of the rotational
//! families.

mod clairaut;
mod integrate;
mod metric;

pub use clairaut::{
    clairaut_decompose, clairaut_momentum_signs, quadrature_slope, unit_speed_state,
    Decomposition, LInterpretation, SlopeAxis,
};
pub use integrate::{
    integrate, InvariantRecord, IntegratorOptions, Sample, Termination, Trajectory,
    TrajectoryMeta,
};
pub use metric::{
    angle_signs, induced_metric3, DiagonalMetric3, MetricPoint, NormalizationWarning,
    METRIC_TOL, NORMALIZATION_TOL,
};

use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Position `(a, b, t)` (two angles and the profile parameter) and velocity
/// with respect to the affine parameter.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeodesicState {
    pub a: f64,
    pub b: f64,
    pub t: f64,
    pub va: f64,
    pub vb: f64,
    pub vt: f64,
}

impl GeodesicState {
    pub fn new(a: f64, b: f64, t: f64, va: f64, vb: f64, vt: f64) -> Result<Self> {
        let st = GeodesicState {
            a,
            b,
            t,
            va,
            vb,
            vt,
        };
        if st.is_finite() {
            Ok(st)
        } else {
            Err(GeomError::NonFinite("geodesic state"))
        }
    }

    pub fn to_array(self) -> [f64; 6] {
        [self.a, self.b, self.t, self.va, self.vb, self.vt]
    }

    pub fn from_array(x: [f64; 6]) -> Self {
        GeodesicState {
            a: x[0],
            b: x[1],
            t: x[2],
            va: x[3],
            vb: x[4],
            vt: x[5],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|x| x.is_finite())
    }

    pub fn max_abs_diff(&self, o: &GeodesicState) -> f64 {
        self.to_array()
            .iter()
            .zip(o.to_array())
            .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }
}

impl Add for GeodesicState {
    type Output = GeodesicState;
    fn add(self, o: GeodesicState) -> GeodesicState {
        let (x, y) = (self.to_array(), o.to_array());
        GeodesicState::from_array(std::array::from_fn(|i| x[i] + y[i]))
    }
}

impl Mul<GeodesicState> for f64 {
    type Output = GeodesicState;
    fn mul(self, o: GeodesicState) -> GeodesicState {
        GeodesicState::from_array(o.to_array().map(|x| self * x))
    }
}

/// Nonzero Levi-Civita symbols of a diagonal metric depending on `t` only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Christoffel3 {
    /// `Gamma^a_{at}`
    pub a_at: f64,
    /// `Gamma^b_{bt}`
    pub b_bt: f64,
    /// `Gamma^t_{aa}`
    pub t_aa: f64,
    /// `Gamma^t_{bb}`
    pub t_bb: f64,
    /// `Gamma^t_{tt}`
    pub t_tt: f64,
}

pub fn christoffel(m: &DiagonalMetric3, t: f64) -> Result<Christoffel3> {
    Ok(christoffel_at(&m.eval(t)?))
}

fn christoffel_at(p: &MetricPoint) -> Christoffel3 {
    let [ga, gb, gt] = p.g;
    let [da, db, dt] = p.dg;
    Christoffel3 {
        a_at: da / (2.0 * ga),
        b_bt: db / (2.0 * gb),
        t_aa: -da / (2.0 * gt),
        t_bb: -db / (2.0 * gt),
        t_tt: dt / (2.0 * gt),
    }
}

/// Right-hand side of the first-order geodesic system.
pub fn geodesic_rhs(m: &DiagonalMetric3, st: &GeodesicState) -> Result<GeodesicState> {
    let c = christoffel(m, st.t)?;
    Ok(GeodesicState {
        a: st.va,
        b: st.vb,
        t: st.vt,
        va: -2.0 * c.a_at * st.va * st.vt,
        vb: -2.0 * c.b_bt * st.vb * st.vt,
        vt: -c.t_tt * st.vt * st.vt - c.t_aa * st.va * st.va - c.t_bb * st.vb * st.vb,
    })
}

/// `E = (1/2) g(v, v)` and the momenta conjugate to the two cyclic angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Momenta {
    #[serde(rename = "E")]
    pub e: f64,
    pub p_a: f64,
    pub p_b: f64,
}

pub fn conserved_momenta(m: &DiagonalMetric3, st: &GeodesicState) -> Result<Momenta> {
    Ok(momenta_at(&m.eval_raw(st.t)?, st))
}

fn momenta_at(p: &MetricPoint, st: &GeodesicState) -> Momenta {
    let [ga, gb, gt] = p.g;
    Momenta {
        e: 0.5 * (ga * st.va * st.va + gb * st.vb * st.vb + gt * st.vt * st.vt),
        p_a: ga * st.va,
        p_b: gb * st.vb,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::{ProfileCurve, ScalarFn, SurfaceFamily};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn christoffel_hyperbolic_pair() {
        let g = ProfileCurve::normalized_catalog(SurfaceFamily::S14);
        let m = DiagonalMetric3::from_profile(SurfaceFamily::S14, &g, false).unwrap();
        let c = christoffel(&m, 1.0).unwrap();
        let coth1 = 1.0f64.cosh() / 1.0f64.sinh();
        assert!((c.a_at - coth1).abs() < 1e-14);
        assert!((c.b_bt - 1.0f64.tanh()).abs() < 1e-14);
        // g_t = -1 exactly
        assert!(c.t_tt.abs() < 1e-14);
    }

    #[test]
    fn constant_metric_is_flat() {
        let m = DiagonalMetric3::constant(SurfaceFamily::S23, [2.0, 3.0, -1.0]).unwrap();
        let c = christoffel(&m, 0.3).unwrap();
        assert_eq!([c.a_at, c.b_bt, c.t_aa, c.t_bb, c.t_tt], [0.0; 5]);
        let st = GeodesicState::new(0.1, 0.2, 0.3, 1.0, -2.0, 0.5).unwrap();
        let d = geodesic_rhs(&m, &st).unwrap();
        assert_eq!(d, GeodesicState::from_array([1.0, -2.0, 0.5, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn meridian_is_geodesic() {
        for fam in SurfaceFamily::ALL {
            let g = ProfileCurve::linear_catalog(fam);
            let m = DiagonalMetric3::from_profile(fam, &g, false).unwrap();
            let st = GeodesicState::new(0.0, 0.0, 1.0, 0.0, 0.0, 1.0).unwrap();
            let d = geodesic_rhs(&m, &st).unwrap();
            assert_eq!(d, GeodesicState::from_array([0.0, 0.0, 1.0, 0.0, 0.0, 0.0]));
            let p = conserved_momenta(&m, &st).unwrap();
            assert!((p.e + 0.5).abs() < 1e-15);
            assert_eq!((p.p_a, p.p_b), (0.0, 0.0));
        }
    }

    /// Accelerations from the Euler-Lagrange equations of
    /// `L = (1/2) sum g_i(t) v_i^2`, with every partial derivative of `L`
    /// taken by finite differences.
    fn euler_lagrange_accel(m: &DiagonalMetric3, st: &GeodesicState) -> [f64; 3] {
        let lag = |q: [f64; 3], v: [f64; 3]| {
            let p = m.eval_raw(q[2]).unwrap();
            0.5 * (0..3).map(|i| p.g[i] * v[i] * v[i]).sum::<f64>()
        };
        let q = [st.a, st.b, st.t];
        let v = [st.va, st.vb, st.vt];
        let h = 1e-4;
        let shift = |x: [f64; 3], i: usize, d: f64| {
            let mut y = x;
            y[i] += d;
            y
        };
        let dl_dq: [f64; 3] =
            std::array::from_fn(|i| (lag(shift(q, i, h), v) - lag(shift(q, i, -h), v)) / (2.0 * h));
        // mass matrix d2L/dv_i dv_j and mixed d2L/dv_i dq_j
        let mut mass = [[0.0; 3]; 3];
        let mut mixed = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                mass[i][j] = (lag(q, shift(shift(v, i, h), j, h))
                    - lag(q, shift(shift(v, i, h), j, -h))
                    - lag(q, shift(shift(v, i, -h), j, h))
                    + lag(q, shift(shift(v, i, -h), j, -h)))
                    / (4.0 * h * h);
                mixed[i][j] = (lag(shift(q, j, h), shift(v, i, h))
                    - lag(shift(q, j, -h), shift(v, i, h))
                    - lag(shift(q, j, h), shift(v, i, -h))
                    + lag(shift(q, j, -h), shift(v, i, -h)))
                    / (4.0 * h * h);
            }
        }
        let rhs: [f64; 3] = std::array::from_fn(|i| {
            dl_dq[i] - (0..3).map(|j| mixed[i][j] * v[j]).sum::<f64>()
        });
        // mass is diagonal up to rounding
        std::array::from_fn(|i| rhs[i] / mass[i][i])
    }

    #[test]
    fn rhs_matches_discrete_euler_lagrange() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let profiles = [
            (SurfaceFamily::S14, ProfileCurve::normalized_catalog(SurfaceFamily::S14)),
            (SurfaceFamily::S23, ProfileCurve::space_form_catalog(SurfaceFamily::S23)),
            (
                SurfaceFamily::S56,
                ProfileCurve::planar(
                    SurfaceFamily::S56,
                    ScalarFn::poly(&[1.0, 0.3, 0.2]),
                    ScalarFn::cosh(1.5, 0.8, 0.0),
                    (-1.0, 2.0),
                )
                .unwrap(),
            ),
        ];
        for (fam, g) in &profiles {
            let m = DiagonalMetric3::from_profile(*fam, g, false).unwrap();
            for _ in 0..50 {
                let st = GeodesicState::new(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(0.3..0.9),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                )
                .unwrap();
                let d = geodesic_rhs(&m, &st).unwrap();
                let acc = euler_lagrange_accel(&m, &st);
                for (x, y) in [d.va, d.vb, d.vt].iter().zip(acc) {
                    assert!((x - y).abs() < 1e-6 * x.abs().max(1.0), "{fam:?}: {x} vs {y}");
                }
            }
        }
    }
}
