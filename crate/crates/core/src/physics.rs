//! Specific energy, specific angular momentum and the effective-energy
//! relations along geodesics, read as a point particle moving on the surface.

use serde::Serialize;

use crate::error::Result;
use crate::geodesics::{angle_signs, DiagonalMetric3, GeodesicState, Trajectory};
use crate::surfaces::SurfaceFamily;
use crate::FormulaVariant;

/// Sign exponent in `l = 2 (-1)^SIGMA p_t` where `p_t = g_t vt`, under the
/// unit normalization `g_t = -1`.
pub const SIGMA: i32 = 0;

/// The family's Lagrangian `(1/2) g(v, v)`, written out with its signs and
/// radius functions.
pub fn specific_energy(fam: SurfaceFamily, st: &GeodesicState, m: &DiagonalMetric3) -> Result<f64> {
    let p = m.eval_raw(st.t)?;
    let [r1, r2] = p.radii;
    let (ea, eb) = angle_signs(fam);
    let x = r1 * st.va;
    let y = r2 * st.vb;
    Ok(0.5 * ea * x * x + 0.5 * eb * y * y + 0.5 * p.g[2] * st.vt * st.vt)
}

/// `l = -2 u_t` with `u_t = C vt` the orthonormal t-component; under the
/// unit normalization this is `-2 vt`.
pub fn specific_angular_momentum(m: &DiagonalMetric3, st: &GeodesicState) -> Result<f64> {
    let c = m.eval_raw(st.t)?.g[2].abs().sqrt();
    Ok(-2.0 * c * st.vt)
}

/// Conjugate momentum of `t`, `g_t vt`. Not conserved unless `g_t` is constant
/// and even then `t` is not cyclic.
pub fn t_momentum(m: &DiagonalMetric3, st: &GeodesicState) -> Result<f64> {
    Ok(m.eval_raw(st.t)?.g[2] * st.vt)
}

/// Right-hand side of the family's effective-energy relation.
pub fn effective_energy_rhs(
    fam: SurfaceFamily,
    variant: FormulaVariant,
    v: f64,
    phi: f64,
    theta: f64,
    l: f64,
) -> f64 {
    let v2 = v * v;
    match fam {
        SurfaceFamily::S14 => {
            0.5 * v2 * (phi.cos().powi(2) - theta.cosh().powi(2) * phi.sin().powi(2)) - l * l / 8.0
        }
        SurfaceFamily::S23 => match variant {
            FormulaVariant::Verbatim => 0.5 * v2 * (phi.sinh().powi(2) - l * l / 8.0),
            FormulaVariant::Corrected => 0.5 * v2 * phi.sinh().powi(2) - l * l / 8.0,
        },
        SurfaceFamily::S56 => -0.5 * v2 * phi.sin().powi(2) - l * l / 8.0,
    }
}

/// `E - rhs` of the effective-energy relation.
pub fn effective_energy_residual(
    fam: SurfaceFamily,
    variant: FormulaVariant,
    e: f64,
    v: f64,
    phi: f64,
    theta: f64,
    l: f64,
) -> f64 {
    e - effective_energy_rhs(fam, variant, v, phi, theta, l)
}

/// Energy from the slope-angle decomposition of the velocity. `Verbatim`
/// adds the squared chart components as printed (always `V^2/2`);
/// `Corrected` weights them with the metric signs.
pub fn energy_from_chart(
    fam: SurfaceFamily,
    variant: FormulaVariant,
    v: f64,
    phi: f64,
    theta: f64,
) -> f64 {
    let v2 = v * v;
    let (sp, cp) = (phi.sin(), phi.cos());
    let (sh, ch) = (theta.sinh(), theta.cosh());
    let (sphi, cphi) = (phi.sinh(), phi.cosh());
    match (fam, variant) {
        (SurfaceFamily::S14, FormulaVariant::Verbatim) => {
            0.5 * (v2 * cp * cp + v2 * ch * ch * sp * sp - v2 * sh * sh * sp * sp)
        }
        (SurfaceFamily::S14, FormulaVariant::Corrected) => {
            0.5 * (v2 * cp * cp - v2 * ch * ch * sp * sp - v2 * sh * sh * sp * sp)
        }
        (SurfaceFamily::S23, FormulaVariant::Verbatim) => {
            let (st, ct) = (theta.sin(), theta.cos());
            0.5 * (-v2 * ct * ct * sphi * sphi - v2 * sphi * sphi * st * st + v2 * cphi * cphi)
        }
        (SurfaceFamily::S23, FormulaVariant::Corrected) => {
            let (st, ct) = (theta.sin(), theta.cos());
            0.5 * (v2 * ct * ct * sphi * sphi + v2 * sphi * sphi * st * st - v2 * cphi * cphi)
        }
        (SurfaceFamily::S56, FormulaVariant::Verbatim) => {
            0.5 * (v2 * sp * sp * ch * ch - v2 * sh * sh * sp * sp + v2 * cp * cp)
        }
        (SurfaceFamily::S56, FormulaVariant::Corrected) => {
            0.5 * (-v2 * sp * sp * ch * ch + v2 * sh * sh * sp * sp - v2 * cp * cp)
        }
    }
}

/// Per-trajectory summary of the effective-energy relation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    pub family: SurfaceFamily,
    pub variant: FormulaVariant,
    #[serde(rename = "E")]
    pub e: f64,
    pub l: f64,
    pub residual_mean: f64,
    pub residual_max_drift: f64,
    /// Samples where the slope-angle chart was defined.
    pub samples: usize,
}

/// Residuals of the effective-energy relation at each sample where the
/// slope angles exist.
pub fn residual_series(tr: &Trajectory, variant: FormulaVariant) -> Vec<f64> {
    let fam = tr.meta.family;
    tr.samples
        .iter()
        .filter_map(|smp| {
            let r = &smp.record;
            let (phi, theta) = (r.phi?, r.theta?);
            Some(effective_energy_residual(fam, variant, r.e, r.v, phi, theta, r.l))
        })
        .collect()
}

pub fn energy_report(tr: &Trajectory, variant: FormulaVariant) -> EnergyReport {
    let res = residual_series(tr, variant);
    let first = tr.first().record;
    let (mean, drift) = match res.first() {
        Some(&r0) => (
            res.iter().sum::<f64>() / res.len() as f64,
            res.iter().fold(0.0f64, |m, r| m.max((r - r0).abs())),
        ),
        None => (f64::NAN, f64::NAN),
    };
    EnergyReport {
        family: tr.meta.family,
        variant,
        e: first.e,
        l: first.l,
        residual_mean: mean,
        residual_max_drift: drift,
        samples: res.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesics::{conserved_momenta, unit_speed_state};
    use crate::surfaces::ProfileCurve;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn energy_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for fam in SurfaceFamily::ALL {
            let m = DiagonalMetric3::from_profile(fam, &ProfileCurve::linear_catalog(fam), false)
                .unwrap();
            for _ in 0..100 {
                let st = GeodesicState::new(
                    0.0,
                    0.0,
                    rng.gen_range(0.0..5.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                )
                .unwrap();
                let a = specific_energy(fam, &st, &m).unwrap();
                let b = conserved_momenta(&m, &st).unwrap().e;
                assert!((a - b).abs() < 1e-14 * a.abs().max(1.0));
            }
        }
    }

    #[test]
    fn unit_speed_energy_and_l() {
        let fam = SurfaceFamily::S23;
        let m =
            DiagonalMetric3::from_profile(fam, &ProfileCurve::linear_catalog(fam), false).unwrap();
        let phi: f64 = 0.9;
        let st = unit_speed_state(&m, 0.0, 0.0, 1.0, phi, 0.3).unwrap();
        assert!((specific_energy(fam, &st, &m).unwrap() + 0.5).abs() < 1e-14);
        let l = specific_angular_momentum(&m, &st).unwrap();
        assert!((l + 2.0 * phi.cosh()).abs() < 1e-13);
        // l = 2 (-1)^SIGMA p_t
        let pt = t_momentum(&m, &st).unwrap();
        assert!((l - 2.0 * (-1f64).powi(SIGMA) * pt).abs() < 1e-14);
        let still = GeodesicState::new(0., 0., 1., 0.3, 0.1, 0.0).unwrap();
        assert_eq!(specific_angular_momentum(&m, &still).unwrap(), 0.0);
    }

    #[test]
    fn equatorial_elliptic_relation() {
        // phi = 0 forces l = -2V and E = -V^2/2
        let v = 1.0;
        let e = -0.5 * v * v;
        let r = effective_energy_residual(
            SurfaceFamily::S56,
            FormulaVariant::Verbatim,
            e,
            v,
            0.0,
            0.0,
            -2.0 * v,
        );
        assert!(r.abs() < 1e-15);
    }

    #[test]
    fn printed_chart_energy_has_wrong_sign() {
        for fam in SurfaceFamily::ALL {
            let e = energy_from_chart(fam, FormulaVariant::Verbatim, 1.0, 0.4, 0.2);
            assert!((e - 0.5).abs() < 1e-14);
        }
        for fam in [SurfaceFamily::S23, SurfaceFamily::S56] {
            let e = energy_from_chart(fam, FormulaVariant::Corrected, 1.0, 0.4, 0.2);
            assert!((e + 0.5).abs() < 1e-14);
        }
    }
}
