//! Whole-trajectory behaviour: early termination, the t-momentum and the
//! adaptive stepper against the fixed one.

use rotsurf::geodesics::{
    integrate, unit_speed_state, DiagonalMetric3, GeodesicState, IntegratorOptions, Termination,
};
use rotsurf::physics::{energy_report, specific_angular_momentum};
use rotsurf::surfaces::{ProfileCurve, ScalarFn, SurfaceFamily};
use rotsurf::FormulaVariant;

fn linear(fam: SurfaceFamily) -> DiagonalMetric3 {
    DiagonalMetric3::from_profile(fam, &ProfileCurve::linear_catalog(fam), false).unwrap()
}

#[test]
fn axis_approach_stops_with_degenerate_metric() {
    let g = ProfileCurve::planar(
        SurfaceFamily::S23,
        ScalarFn::linear(1.0, 0.6),
        ScalarFn::linear(1.0, 0.8),
        (-5.0, 10.0),
    )
    .unwrap();
    let m = DiagonalMetric3::from_profile(SurfaceFamily::S23, &g, false).unwrap();
    let st = GeodesicState::new(0.0, 0.0, 0.0, 0.0, 0.0, -1.0).unwrap();
    let tr = integrate(&m, st, 5.0, &IntegratorOptions::default()).unwrap();
    match &tr.meta.termination {
        Termination::DegenerateMetric { condition, .. } => assert_eq!(condition, "B"),
        other => panic!("unexpected {other:?}"),
    }
    let s_stop = tr.last().record.s;
    // second radius 1 + 0.8 t vanishes at t = -1.25
    assert!((s_stop - 1.25).abs() < 2e-3, "stopped at {s_stop}");
}

#[test]
fn leaving_the_profile_domain_is_reported() {
    let m = linear(SurfaceFamily::S56);
    let st = GeodesicState::new(0.0, 0.0, 59.5, 0.0, 0.0, 1.0).unwrap();
    let tr = integrate(&m, st, 2.0, &IntegratorOptions::default()).unwrap();
    assert!(matches!(tr.meta.termination, Termination::OutOfDomain { .. }));
}

/// The specific angular momentum `l` is `-2 vt`; with `g_t = -1` it is still not a
/// constant of motion because the angle coefficients depend on `t`.
#[test]
fn l_is_not_conserved_even_with_unit_t_coefficient() {
    for fam in SurfaceFamily::ALL {
        let m = linear(fam);
        assert!((m.eval(1.0).unwrap().g[2] + 1.0).abs() < 1e-15);
        let (phi, theta) = match fam {
            SurfaceFamily::S14 => (0.5, 0.8),
            SurfaceFamily::S23 => (0.9, 0.3),
            SurfaceFamily::S56 => (0.8, 0.2),
        };
        let st = unit_speed_state(&m, 0.0, 0.0, 1.0, phi, theta).unwrap();
        let tr = integrate(&m, st, 10.0, &IntegratorOptions::default()).unwrap();
        assert!(tr.meta.termination.is_completed());
        let ls: Vec<f64> = tr
            .samples
            .iter()
            .map(|s| specific_angular_momentum(&m, &s.state).unwrap())
            .collect();
        let spread = ls.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - ls.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(spread > 1e-2, "{fam:?}: l spread {spread}");
        // the corrected residual still is a constant
        let rep = energy_report(&tr, FormulaVariant::Corrected);
        assert!(rep.residual_max_drift < 1e-7);
    }
}

#[test]
fn adaptive_run_conserves_energy() {
    let m = linear(SurfaceFamily::S14);
    let st = unit_speed_state(&m, 0.0, 0.0, 1.0, 0.5, 0.8).unwrap();
    let opts = IntegratorOptions {
        h: 0.01,
        adaptive: true,
        tol: 1e-12,
    };
    let tr = integrate(&m, st, 10.0, &opts).unwrap();
    assert!(tr.meta.termination.is_completed());
    assert_eq!(tr.last().record.s, 10.0);
    for s in &tr.samples {
        assert!((s.record.e + 0.5).abs() < 1e-9);
    }
}
