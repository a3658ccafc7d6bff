//! Normal frames and curvature of the curve-restricted rotational surfaces
//! `(t, s) -> X(a(t), b(t), s)`.
//!
//! Three evaluators:
//! * [`curvature_closed`]: closed forms in the profile and path jets,
//! * [`curvature_numeric`]: finite-difference fundamental forms against the
//!   analytic normal frame,
//! * [`curvature_numeric_chart`]: frame-free, for any chart of a 2-surface.

use serde::Serialize;

use super::{immerse_curve_restricted, AnglePath, PlanarJet, ProfileCurve, SurfaceFamily};
use crate::error::{GeomError, Result};
use crate::linalg::{inner, Mat4, Vec4};
use crate::FormulaVariant;

/// Frame and metric denominators below this are treated as zero.
pub const DEGENERACY_TOL: f64 = 1e-10;
/// Central-difference step for first derivatives.
pub const FD_STEP_FIRST: f64 = 1e-4;
/// Step for second and mixed differences.
pub const FD_STEP_SECOND: f64 = 1e-3;

/// Gaussian curvature, frame components of the mean curvature vector, and
/// the unit normal frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureSample {
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "H_e3")]
    pub h_e3: f64,
    #[serde(rename = "H_e4")]
    pub h_e4: f64,
    pub e3: Vec4,
    pub e4: Vec4,
}

/// Closed-form ingredients at one `(t, s)`.
///
/// `n3`, `n4` are the unnormalized normals with `d3 = <n3,n3>`, `d4 = <n4,n4>`.
/// `F`, `N3` and `M4` vanish identically for all three families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormTerms {
    pub xt: Vec4,
    pub xs: Vec4,
    pub n3: Vec4,
    pub n4: Vec4,
    pub e: f64,
    pub g: f64,
    pub d3: f64,
    pub d4: f64,
    pub l3: f64,
    pub m3: f64,
    pub l4: f64,
    pub n4_ss: f64,
}

fn jets(
    fam: SurfaceFamily,
    profile: &ProfileCurve,
    path: &AnglePath,
    t: f64,
    s: f64,
) -> Result<(PlanarJet, super::PathJet)> {
    Ok((profile.planar_jet(fam, s)?, path.jet(t)?))
}

pub fn form_terms(
    fam: SurfaceFamily,
    profile: &ProfileCurve,
    path: &AnglePath,
    t: f64,
    s: f64,
) -> Result<FormTerms> {
    let (pj, q) = jets(fam, profile, path, t, s)?;
    let (p, r) = (pj.first, pj.second);
    let (a, ad, add) = (q.a.v, q.a.d1, q.a.d2);
    let (b, bd, bdd) = (q.b.v, q.b.d1, q.b.d2);
    let ft = match fam {
        SurfaceFamily::S14 => {
            // p = f1, r = f4, a = x, b = alpha
            let (chx, shx, cha, sha) = (a.cosh(), a.sinh(), b.cosh(), b.sinh());
            let e = p.v * p.v * ad * ad - r.v * r.v * bd * bd;
            let g = r.d1 * r.d1 - p.d1 * p.d1;
            FormTerms {
                xt: Vec4::raw(p.v * ad * shx, r.v * bd * cha, p.v * ad * chx, r.v * bd * sha),
                xs: Vec4::raw(p.d1 * chx, r.d1 * sha, p.d1 * shx, r.d1 * cha),
                n3: Vec4::raw(r.v * bd * shx, p.v * ad * cha, r.v * bd * chx, p.v * ad * sha),
                n4: Vec4::raw(r.d1 * chx, p.d1 * sha, r.d1 * shx, p.d1 * cha),
                e,
                g,
                d3: -e,
                d4: -g,
                l3: p.v * r.v * (bd * add - ad * bdd),
                m3: ad * bd * (p.d1 * r.v - p.v * r.d1),
                l4: p.d1 * r.v * bd * bd - p.v * r.d1 * ad * ad,
                n4_ss: p.d1 * r.d2 - p.d2 * r.d1,
            }
        }
        SurfaceFamily::S23 => {
            // p = f1, r = f2, a = y, b = z
            let (chy, shy, chz, shz) = (a.cosh(), a.sinh(), b.cosh(), b.sinh());
            let e = p.v * p.v * ad * ad + r.v * r.v * bd * bd;
            let g = -p.d1 * p.d1 - r.d1 * r.d1;
            FormTerms {
                xt: Vec4::raw(p.v * ad * shy, r.v * bd * shz, r.v * bd * chz, p.v * ad * chy),
                xs: Vec4::raw(p.d1 * chy, r.d1 * chz, r.d1 * shz, p.d1 * shy),
                n3: Vec4::raw(r.v * bd * shy, -p.v * ad * shz, -p.v * ad * chz, r.v * bd * chy),
                n4: Vec4::raw(r.d1 * chy, -p.d1 * chz, -p.d1 * shz, r.d1 * shy),
                e,
                g,
                d3: e,
                d4: g,
                l3: p.v * r.v * (bd * add - ad * bdd),
                m3: ad * bd * (p.d1 * r.v - p.v * r.d1),
                l4: p.d1 * r.v * bd * bd - p.v * r.d1 * ad * ad,
                n4_ss: p.d1 * r.d2 - p.d2 * r.d1,
            }
        }
        SurfaceFamily::S56 => {
            // p = f2, r = f4, a = beta, b = theta
            let (cb, sb, ct, st) = (a.cos(), a.sin(), b.cos(), b.sin());
            let e = r.v * r.v * bd * bd - p.v * p.v * ad * ad;
            let g = r.d1 * r.d1 - p.d1 * p.d1;
            FormTerms {
                xt: Vec4::raw(p.v * ad * cb, -p.v * ad * sb, r.v * bd * ct, -r.v * bd * st),
                xs: Vec4::raw(p.d1 * sb, p.d1 * cb, r.d1 * st, r.d1 * ct),
                n3: Vec4::raw(-r.v * bd * cb, r.v * bd * sb, -p.v * ad * ct, p.v * ad * st),
                n4: Vec4::raw(r.d1 * sb, r.d1 * cb, p.d1 * st, p.d1 * ct),
                e,
                g,
                d3: -e,
                d4: -g,
                l3: p.v * r.v * (bd * add - ad * bdd),
                m3: ad * bd * (p.d1 * r.v - p.v * r.d1),
                l4: p.v * r.d1 * ad * ad - p.d1 * r.v * bd * bd,
                n4_ss: p.d1 * r.d2 - p.d2 * r.d1,
            }
        }
    };
    Ok(ft)
}

fn check_frame(ft: &FormTerms) -> Result<()> {
    if !(ft.d3.abs() >= DEGENERACY_TOL) {
        return Err(GeomError::DegenerateFrame {
            condition: "<n3,n3>",
            value: ft.d3,
        });
    }
    if !(ft.d4.abs() >= DEGENERACY_TOL) {
        return Err(GeomError::DegenerateFrame {
            condition: "<n4,n4>",
            value: ft.d4,
        });
    }
    Ok(())
}

/// Unit normal pair `(e3, e4)`, orthogonal to both tangents.
pub fn normal_frame(
    fam: SurfaceFamily,
    profile: &ProfileCurve,
    path: &AnglePath,
    t: f64,
    s: f64,
) -> Result<(Vec4, Vec4)> {
    let ft = form_terms(fam, profile, path, t, s)?;
    check_frame(&ft)?;
    Ok(unit_frame(&ft))
}

fn unit_frame(ft: &FormTerms) -> (Vec4, Vec4) {
    (ft.n3 * (1.0 / ft.d3.abs().sqrt()), ft.n4 * (1.0 / ft.d4.abs().sqrt()))
}

/// The frame exactly as it is usually printed for these families, scaled by
/// `1/sqrt|<n,n>|` so it stays finite. For S23 its signs differ from
/// [`normal_frame`] and the pair is not orthogonal to the tangents.
pub fn printed_normal_frame(
    fam: SurfaceFamily,
    profile: &ProfileCurve,
    path: &AnglePath,
    t: f64,
    s: f64,
) -> Result<(Vec4, Vec4)> {
    let ft = form_terms(fam, profile, path, t, s)?;
    check_frame(&ft)?;
    if fam != SurfaceFamily::S23 {
        return Ok(unit_frame(&ft));
    }
    let n3 = Vec4::raw(ft.n3.c1, -ft.n3.c2, -ft.n3.c3, ft.n3.c4);
    let n4 = Vec4::raw(ft.n4.c1, -ft.n4.c2, -ft.n4.c3, ft.n4.c4);
    let (d3, d4) = (inner(n3, n3), inner(n4, n4));
    Ok((n3 * (1.0 / d3.abs().sqrt()), n4 * (1.0 / d4.abs().sqrt())))
}

/// `K` and `H` components as commonly printed for the three families.
/// Square roots of negative radicands yield NaN.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrintedCurvature {
    #[serde(rename = "K")]
    pub k: f64,
    /// S56 only: the second K term with its path factor unsquared. Equal to
    /// `k` for the other families.
    #[serde(rename = "K_unsquared")]
    pub k_unsquared: f64,
    #[serde(rename = "H_e3")]
    pub h_e3: f64,
    #[serde(rename = "H_e4")]
    pub h_e4: f64,
}

pub fn printed_curvature(
    fam: SurfaceFamily,
    profile: &ProfileCurve,
    path: &AnglePath,
    t: f64,
    s: f64,
) -> Result<PrintedCurvature> {
    let (pj, q) = jets(fam, profile, path, t, s)?;
    let (p, r) = (pj.first, pj.second);
    let (ad, add, bd, bdd) = (q.a.d1, q.a.d2, q.b.d1, q.b.d2);
    Ok(match fam {
        SurfaceFamily::S14 => {
            let (f1, f1p, f1pp) = (p.v, p.d1, p.d2);
            let (f4, f4p, f4pp) = (r.v, r.d1, r.d2);
            let rad3 = f4 * f4 * bd * bd - f1 * f1 * ad * ad;
            let rad4 = -f1p * f1p + f4p * f4p;
            let w = f1p * f4pp - f1pp * f4p;
            let k = (f1p * f4 - f1 * f4p).powi(2) * (ad * bd).powi(2) / rad3
                + (f1p * f4 * bd * bd - f4p * f1 * ad * ad) * w / rad4;
            PrintedCurvature {
                k,
                k_unsquared: k,
                h_e3: f1 * f4 * (add * bd + ad * bdd) / (2.0 * rad3.sqrt())
                    + (f4p * f1 * ad * ad - f1p * f4 * bd * bd) / (2.0 * rad4.sqrt()),
                h_e4: w / (2.0 * rad4.sqrt()),
            }
        }
        SurfaceFamily::S23 => {
            let (f1, f1p, f1pp) = (p.v, p.d1, p.d2);
            let (f2, f2p, f2pp) = (r.v, r.d1, r.d2);
            let rad3 = f2 * f2 * bd * bd + f1 * f1 * ad * ad;
            let rad4 = f1p * f1p + f2p * f2p;
            let k = -((f1 * f2p + f1p * f2).powi(2) * (ad * bd).powi(2) / rad3
                + (f1 * f2p * ad * ad + f1p * f2 * bd * bd) * (f1pp * f2p + f1p * f2pp) / rad4);
            PrintedCurvature {
                k,
                k_unsquared: k,
                h_e3: f1 * f2 * (ad * bdd + add * bd) / (2.0 * rad3.sqrt()),
                h_e4: (f1 * f2p * ad * ad + f1p * f2 * bd * bd - f1pp * f2p - f1p * f2pp)
                    / (2.0 * rad4.sqrt()),
            }
        }
        SurfaceFamily::S56 => {
            let (f2, f2p, f2pp) = (p.v, p.d1, p.d2);
            let (f4, f4p, f4pp) = (r.v, r.d1, r.d2);
            let rad3 = -f2 * f2 * ad * ad + f4 * f4 * bd * bd;
            let rad4 = -f2p * f2p + f4p * f4p;
            let first = (f2p * f4 - f2 * f4p).powi(2) * (ad * bd).powi(2) / rad3;
            let w = -f2pp * f4p + f2p * f4pp;
            let u = f4p * f2 * ad * ad - f2p * f4 * bd * bd;
            PrintedCurvature {
                k: -(first + w * u * u / rad4),
                k_unsquared: -(first + w * u / rad4),
                h_e3: f4 * f2 * (ad * bdd - bd * add) / (2.0 * rad3.sqrt()),
                h_e4: (u + f2pp * f4p - f2p * f4pp) / (2.0 * rad4.sqrt()),
            }
        }
    })
}

/// Closed-form `K`, `H_e3`, `H_e4` and frame.
///
/// `Corrected` is the form confirmed by [`curvature_numeric`]; `Verbatim`
/// reports [`printed_curvature`] with [`printed_normal_frame`].
pub fn curvature_closed(
    fam: SurfaceFamily,
    profile: &ProfileCurve,
    path: &AnglePath,
    t: f64,
    s: f64,
    variant: FormulaVariant,
) -> Result<CurvatureSample> {
    let ft = form_terms(fam, profile, path, t, s)?;
    check_frame(&ft)?;
    match variant {
        FormulaVariant::Corrected => {
            let (e3, e4) = unit_frame(&ft);
            let (eps3, eps4) = (ft.d3.signum(), ft.d4.signum());
            let eg = ft.e * ft.g;
            let k = (-ft.m3 * ft.m3 / ft.d3 + ft.l4 * ft.n4_ss / ft.d4) / eg;
            let h_e3 = eps3 * ft.l3 / (2.0 * ft.e * ft.d3.abs().sqrt());
            let h_e4 = eps4 * (ft.l4 * ft.g + ft.n4_ss * ft.e) / (2.0 * eg * ft.d4.abs().sqrt());
            Ok(CurvatureSample {
                k,
                h_e3,
                h_e4,
                e3,
                e4,
            })
        }
        FormulaVariant::Verbatim => {
            let pc = printed_curvature(fam, profile, path, t, s)?;
            let (e3, e4) = printed_normal_frame(fam, profile, path, t, s)?;
            Ok(CurvatureSample {
                k: pc.k,
                h_e3: pc.h_e3,
                h_e4: pc.h_e4,
                e3,
                e4,
            })
        }
    }
}

struct Stencil {
    xt: Vec4,
    xs: Vec4,
    xtt: Vec4,
    xts: Vec4,
    xss: Vec4,
}

fn stencil(f: &dyn Fn(f64, f64) -> Result<Vec4>, u: f64, v: f64) -> Result<Stencil> {
    let (h, k) = (FD_STEP_FIRST, FD_STEP_SECOND);
    let c = f(u, v)?;
    let xt = (f(u + h, v)? - f(u - h, v)?) * (0.5 / h);
    let xs = (f(u, v + h)? - f(u, v - h)?) * (0.5 / h);
    let xtt = (f(u + k, v)? - 2.0 * c + f(u - k, v)?) * (1.0 / (k * k));
    let xss = (f(u, v + k)? - 2.0 * c + f(u, v - k)?) * (1.0 / (k * k));
    let xts = (f(u + k, v + k)? - f(u + k, v - k)? - f(u - k, v + k)? + f(u - k, v - k)?)
        * (0.25 / (k * k));
    Ok(Stencil {
        xt,
        xs,
        xtt,
        xts,
        xss,
    })
}

fn numeric_from(st: &Stencil, e3: Vec4, e4: Vec4) -> Result<CurvatureSample> {
    let (e, f, g) = (inner(st.xt, st.xt), inner(st.xt, st.xs), inner(st.xs, st.xs));
    let det = e * g - f * f;
    if !(det.abs() >= DEGENERACY_TOL) {
        return Err(GeomError::DegenerateMetric {
            condition: "EG - F^2",
            value: det,
        });
    }
    let mut k = 0.0;
    let mut hs = [0.0; 2];
    for (i, n) in [e3, e4].into_iter().enumerate() {
        let eps = inner(n, n).signum();
        let (l, m, nn) = (inner(st.xtt, n), inner(st.xts, n), inner(st.xss, n));
        k += eps * (l * nn - m * m) / det;
        hs[i] = eps * (l * g - 2.0 * m * f + nn * e) / (2.0 * det);
    }
    Ok(CurvatureSample {
        k,
        h_e3: hs[0],
        h_e4: hs[1],
        e3,
        e4,
    })
}

/// Fundamental forms from central differences of the immersion, projected on
/// the analytic unit normal frame.
pub fn curvature_numeric(
    fam: SurfaceFamily,
    profile: &ProfileCurve,
    path: &AnglePath,
    t: f64,
    s: f64,
) -> Result<CurvatureSample> {
    curvature_numeric_moved(fam, profile, path, t, s, &Mat4::IDENTITY)
}

/// [`curvature_numeric`] for the surface moved by the ambient matrix `m`
/// (frame moved along with it).
pub fn curvature_numeric_moved(
    fam: SurfaceFamily,
    profile: &ProfileCurve,
    path: &AnglePath,
    t: f64,
    s: f64,
    m: &Mat4,
) -> Result<CurvatureSample> {
    let (e3, e4) = normal_frame(fam, profile, path, t, s)?;
    let x = |u: f64, v: f64| immerse_curve_restricted(fam, profile, path, u, v).map(|p| m.apply(p));
    let st = stencil(&x, t, s)?;
    numeric_from(&st, m.apply(e3), m.apply(e4))
}

/// Frame-free curvature of a chart of a 2-surface in E(2,4).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChartCurvature {
    #[serde(rename = "K")]
    pub k: f64,
    /// Mean curvature vector.
    pub h: Vec4,
    /// `EG - F^2`.
    pub det: f64,
}

/// Central differences of `chart`, second derivatives projected onto the
/// normal space through the inverse first fundamental form, then the Gauss
/// equation `K = (<h11,h22> - <h12,h12>) / (EG - F^2)`.
pub fn curvature_numeric_chart(
    chart: &dyn Fn(f64, f64) -> Result<Vec4>,
    u: f64,
    v: f64,
) -> Result<ChartCurvature> {
    let st = stencil(chart, u, v)?;
    let (e, f, g) = (inner(st.xt, st.xt), inner(st.xt, st.xs), inner(st.xs, st.xs));
    let det = e * g - f * f;
    if !(det.abs() >= DEGENERACY_TOL) {
        return Err(GeomError::DegenerateMetric {
            condition: "EG - F^2",
            value: det,
        });
    }
    let (gi11, gi12, gi22) = (g / det, -f / det, e / det);
    let normal_part = |y: Vec4| {
        let (p, q) = (inner(y, st.xt), inner(y, st.xs));
        let ct = gi11 * p + gi12 * q;
        let cs = gi12 * p + gi22 * q;
        y - ct * st.xt - cs * st.xs
    };
    let (h11, h12, h22) = (normal_part(st.xtt), normal_part(st.xts), normal_part(st.xss));
    let k = (inner(h11, h22) - inner(h12, h12)) / det;
    let h = (gi11 * h11 + 2.0 * gi12 * h12 + gi22 * h22) * 0.5;
    Ok(ChartCurvature { k, h, det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{space_form_membership, SpaceFormKind};
    use crate::surfaces::ScalarFn;
    use crate::symmetry::flow_matrix;

    fn unit_diag() -> AnglePath {
        AnglePath::diagonal()
    }

    #[test]
    fn s14_frame_is_orthonormal() {
        let g = ProfileCurve::space_form_catalog(SurfaceFamily::S14);
        let path = unit_diag();
        let ft = form_terms(SurfaceFamily::S14, &g, &path, 1.0, 1.0).unwrap();
        let (e3, e4) = normal_frame(SurfaceFamily::S14, &g, &path, 1.0, 1.0).unwrap();
        assert!((inner(e3, e3).abs() - 1.0).abs() < 1e-10);
        assert!((inner(e4, e4).abs() - 1.0).abs() < 1e-10);
        assert!(inner(e3, e4).abs() < 1e-10);
        for tan in [ft.xt, ft.xs] {
            assert!(inner(e3, tan).abs() < 1e-10);
            assert!(inner(e4, tan).abs() < 1e-10);
        }
    }

    #[test]
    fn s14_equal_profiles_and_speeds_degenerate() {
        let g = ProfileCurve::planar(
            SurfaceFamily::S14,
            ScalarFn::linear(1.0, 2.0),
            ScalarFn::linear(1.0, 2.0),
            (0.0, 2.0),
        )
        .unwrap();
        let r = normal_frame(SurfaceFamily::S14, &g, &unit_diag(), 0.1, 0.5);
        assert!(matches!(r, Err(GeomError::DegenerateFrame { .. })));
    }

    #[test]
    fn s14_zero_first_speed_kills_first_term() {
        let g = ProfileCurve::planar(
            SurfaceFamily::S14,
            ScalarFn::sinh(1.3, 1.0, 0.2),
            ScalarFn::cosh(1.0, 0.7, 0.0),
            (-2.0, 2.0),
        )
        .unwrap();
        let path =
            AnglePath::new(ScalarFn::constant(0.4), ScalarFn::linear(0., 1.), (-3., 3.)).unwrap();
        let ft = form_terms(SurfaceFamily::S14, &g, &path, 0.2, 0.6).unwrap();
        assert_eq!(ft.m3, 0.0);
        let pc = printed_curvature(SurfaceFamily::S14, &g, &path, 0.2, 0.6).unwrap();
        let second_only = {
            let p = g.planar_jet(SurfaceFamily::S14, 0.6).unwrap();
            let (f1, f4) = (p.first, p.second);
            (f1.d1 * f4.v) * (f1.d1 * f4.d2 - f1.d2 * f4.d1) / (f4.d1 * f4.d1 - f1.d1 * f1.d1)
        };
        assert!((pc.k - second_only).abs() < 1e-14);
    }

    #[test]
    fn s23_printed_frame_is_not_normal() {
        let g = ProfileCurve::space_form_catalog(SurfaceFamily::S23);
        let path = unit_diag();
        let ft = form_terms(SurfaceFamily::S23, &g, &path, 0.3, 0.7).unwrap();
        let (p3, _) = printed_normal_frame(SurfaceFamily::S23, &g, &path, 0.3, 0.7).unwrap();
        assert!(inner(p3, ft.xt).abs() > 0.1);
        let (e3, e4) = normal_frame(SurfaceFamily::S23, &g, &path, 0.3, 0.7).unwrap();
        assert!(inner(e3, ft.xt).abs() < 1e-12);
        assert!(inner(e4, ft.xs).abs() < 1e-12);
    }

    #[test]
    fn s23_circular_lies_in_unit_hyperbolic_space() {
        let g = ProfileCurve::space_form_catalog(SurfaceFamily::S23);
        let path = unit_diag();
        for &(t, s) in &[(0.3, 0.7), (-1.2, 2.0), (2.0, -0.4)] {
            let x = immerse_curve_restricted(SurfaceFamily::S23, &g, &path, t, s).unwrap();
            let kind = space_form_membership(x, Vec4::ZERO, 1.0).unwrap();
            assert!(matches!(kind, SpaceFormKind::PseudoHyperbolic { .. }));
        }
    }

    #[test]
    fn constant_radii_elliptic_surface() {
        // two circles of constant radius: the s-direction collapses, the
        // e4 numerator vanishes and the closed form reports the null frame
        let g = ProfileCurve::planar(
            SurfaceFamily::S56,
            ScalarFn::constant(1.5),
            ScalarFn::constant(0.8),
            (-1.0, 1.0),
        )
        .unwrap();
        let path = unit_diag();
        let ft = form_terms(SurfaceFamily::S56, &g, &path, 0.4, 0.1).unwrap();
        assert_eq!(ft.n4_ss, 0.0);
        assert!(matches!(
            curvature_closed(SurfaceFamily::S56, &g, &path, 0.4, 0.1, FormulaVariant::Corrected),
            Err(GeomError::DegenerateFrame { .. })
        ));
        let chart = |b: f64, th: f64| {
            crate::surfaces::immerse_full(SurfaceFamily::S56, &g, b, th, 0.1)
        };
        let c = curvature_numeric_chart(&chart, 0.4, 0.9).unwrap();
        assert!(c.k.abs() < 5e-6, "K = {}", c.k);
    }

    #[test]
    fn closed_agrees_with_numeric_example() {
        let g = ProfileCurve::planar(
            SurfaceFamily::S14,
            ScalarFn::sinh(1.0, 1.0, 0.0),
            ScalarFn::cosh(1.2, 0.9, 0.1),
            (-2.0, 2.0),
        )
        .unwrap();
        let path = AnglePath::new(
            ScalarFn::poly(&[0.1, 0.8, 0.3]),
            ScalarFn::sin(0.5, 1.0, 0.0),
            (-2.0, 2.0),
        )
        .unwrap();
        let c = curvature_closed(SurfaceFamily::S14, &g, &path, 0.3, 0.9, FormulaVariant::Corrected)
            .unwrap();
        let n = curvature_numeric(SurfaceFamily::S14, &g, &path, 0.3, 0.9).unwrap();
        assert!((c.k - n.k).abs() < 1e-4 * c.k.abs().max(1.0), "{c:?} {n:?}");
        assert!((c.h_e3 - n.h_e3).abs() < 1e-4 * c.h_e3.abs().max(1.0));
        assert!((c.h_e4 - n.h_e4).abs() < 1e-4 * c.h_e4.abs().max(1.0));
    }

    #[test]
    fn moved_surface_keeps_curvature() {
        let g = ProfileCurve::space_form_catalog(SurfaceFamily::S56);
        let path = AnglePath::new(
            ScalarFn::linear(0.0, 1.0),
            ScalarFn::linear(0.2, -0.6),
            (-4.0, 4.0),
        )
        .unwrap();
        let (g1, g2) = SurfaceFamily::S56.generators();
        let m = flow_matrix(g1, 0.7).mul(&flow_matrix(g2, -1.3));
        let a = curvature_numeric(SurfaceFamily::S56, &g, &path, 0.5, 0.4).unwrap();
        let b = curvature_numeric_moved(SurfaceFamily::S56, &g, &path, 0.5, 0.4, &m).unwrap();
        assert!((a.k - b.k).abs() < 1e-6 * a.k.abs().max(1.0));
    }
}
