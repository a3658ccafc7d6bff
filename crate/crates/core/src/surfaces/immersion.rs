use super::{AnglePath, ProfileCurve, SurfaceFamily};
use crate::error::Result;
use crate::linalg::Vec4;
use crate::symmetry::flow_matrix;

/// Two-angle immersion of a (not necessarily planar) profile.
pub fn immerse_full(
    family: SurfaceFamily,
    profile: &ProfileCurve,
    angle1: f64,
    angle2: f64,
    s: f64,
) -> Result<Vec4> {
    let g = profile.point(s)?;
    let (f1, f2, f3, f4) = (g.c1, g.c2, g.c3, g.c4);
    Ok(match family {
        SurfaceFamily::S14 => {
            let (chx, shx) = (angle1.cosh(), angle1.sinh());
            let (cha, sha) = (angle2.cosh(), angle2.sinh());
            Vec4::raw(
                f1 * chx + f3 * shx,
                f2 * cha + f4 * sha,
                f1 * shx + f3 * chx,
                f2 * sha + f4 * cha,
            )
        }
        SurfaceFamily::S23 => {
            let (chy, shy) = (angle1.cosh(), angle1.sinh());
            let (chz, shz) = (angle2.cosh(), angle2.sinh());
            Vec4::raw(
                f1 * chy + f4 * shy,
                f2 * chz + f3 * shz,
                f2 * shz + f3 * chz,
                f1 * shy + f4 * chy,
            )
        }
        SurfaceFamily::S56 => {
            let (cb, sb) = (angle1.cos(), angle1.sin());
            let (ct, st) = (angle2.cos(), angle2.sin());
            Vec4::raw(
                f1 * cb + f2 * sb,
                -f1 * sb + f2 * cb,
                f3 * ct + f4 * st,
                -f3 * st + f4 * ct,
            )
        }
    })
}

/// Same immersion computed by applying the two one-parameter groups to the
/// profile point.
pub fn immerse_full_by_flows(
    family: SurfaceFamily,
    profile: &ProfileCurve,
    angle1: f64,
    angle2: f64,
    s: f64,
) -> Result<Vec4> {
    let (g1, g2) = family.generators();
    let m = flow_matrix(g1, angle1).mul(&flow_matrix(g2, angle2));
    Ok(m.apply(profile.point(s)?))
}

/// The 2-surface `(t, s) -> immerse_full(a(t), b(t), s)`.
pub fn immerse_curve_restricted(
    family: SurfaceFamily,
    profile: &ProfileCurve,
    path: &AnglePath,
    t: f64,
    s: f64,
) -> Result<Vec4> {
    let j = path.jet(t)?;
    immerse_full(family, profile, j.a.v, j.b.v, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::ScalarFn;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn general_profile() -> ProfileCurve {
        ProfileCurve::general(
            [
                Some(ScalarFn::poly(&[0.3, 1.0, -0.2])),
                Some(ScalarFn::sin(0.7, 1.3, 0.2)),
                Some(ScalarFn::cosh(0.4, 0.5, 0.0)),
                Some(ScalarFn::linear(-0.1, 0.9)),
            ],
            (-2.0, 2.0),
        )
        .unwrap()
    }

    #[test]
    fn zero_angles_give_profile() {
        let g = general_profile();
        for fam in SurfaceFamily::ALL {
            let p = immerse_full(fam, &g, 0.0, 0.0, 0.6).unwrap();
            assert_eq!(p, g.point(0.6).unwrap());
        }
    }

    #[test]
    fn planar_s14_matches_printed_form() {
        let g = ProfileCurve::space_form_catalog(SurfaceFamily::S14);
        let (x, a, s): (f64, f64, f64) = (0.4, -0.9, 0.8);
        let (f1, f4) = (s.sinh(), s.cosh());
        let p = immerse_full(SurfaceFamily::S14, &g, x, a, s).unwrap();
        let expect = Vec4::raw(f1 * x.cosh(), f4 * a.sinh(), f1 * x.sinh(), f4 * a.cosh());
        assert!((p - expect).max_abs() < 1e-15);
    }

    #[test]
    fn closed_form_equals_flow_application() {
        let g = general_profile();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for fam in SurfaceFamily::ALL {
            for _ in 0..200 {
                let (a1, a2) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                let s = rng.gen_range(-1.9..1.9);
                let p = immerse_full(fam, &g, a1, a2, s).unwrap();
                let q = immerse_full_by_flows(fam, &g, a1, a2, s).unwrap();
                assert!((p - q).max_abs() < 1e-12, "{fam:?}");
            }
        }
    }

    #[test]
    fn restricted_examples() {
        let g = ProfileCurve::space_form_catalog(SurfaceFamily::S14);
        let path =
            AnglePath::new(ScalarFn::linear(0., 1.), ScalarFn::constant(0.), (-5., 5.)).unwrap();
        let (t, s): (f64, f64) = (0.3, 1.1);
        let p = immerse_curve_restricted(SurfaceFamily::S14, &g, &path, t, s).unwrap();
        let (f1, f4) = (s.sinh(), s.cosh());
        assert!((p - Vec4::raw(f1 * t.cosh(), 0.0, f1 * t.sinh(), f4)).max_abs() < 1e-15);

        let still = AnglePath::constant(0.0, 0.0);
        for fam in SurfaceFamily::ALL {
            let g = ProfileCurve::space_form_catalog(fam);
            assert_eq!(
                immerse_curve_restricted(fam, &g, &still, 0.2, 0.5).unwrap(),
                g.point(0.5).unwrap()
            );
        }

        let diag = AnglePath::diagonal();
        let p = immerse_curve_restricted(SurfaceFamily::S56, &g, &diag, 0.7, 0.2).unwrap();
        assert_eq!(p, immerse_full(SurfaceFamily::S56, &g, 0.7, 0.7, 0.2).unwrap());
    }

    #[test]
    fn domain_error_propagates() {
        let g = ProfileCurve::space_form_catalog(SurfaceFamily::S14);
        assert!(immerse_full(SurfaceFamily::S14, &g, 0.0, 0.0, 50.0).is_err());
    }
}
