//! Linear algebra of E(2,4): the metric diag(-1,-1,1,1), causal character,
//! the three-argument cross product and space-form membership.

use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Diagonal of the ambient metric.
pub const SIGNATURE: [f64; 4] = [-1.0, -1.0, 1.0, 1.0];

/// Relative tolerance for deciding that a vector is null.
pub const NULL_TOL: f64 = 1e-12;

/// Relative tolerance for space-form membership.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// A point or vector of E(2,4).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec4 {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

impl Vec4 {
    pub const ZERO: Vec4 = Vec4 {
        c1: 0.0,
        c2: 0.0,
        c3: 0.0,
        c4: 0.0,
    };

    /// Builds a vector, rejecting NaN and infinite components.
    pub fn new(c1: f64, c2: f64, c3: f64, c4: f64) -> Result<Self> {
        let v = Vec4 { c1, c2, c3, c4 };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(GeomError::NonFinite("Vec4 component"))
        }
    }

    /// Unchecked constructor for internal use on values known to be finite.
    pub(crate) const fn raw(c1: f64, c2: f64, c3: f64, c4: f64) -> Self {
        Vec4 { c1, c2, c3, c4 }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Vec4::raw(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.c1, self.c2, self.c3, self.c4]
    }

    /// Standard basis vector `i_k`, `k` in 1..=4.
    pub fn basis(k: usize) -> Self {
        let mut a = [0.0; 4];
        a[k - 1] = 1.0;
        Vec4::from_array(a)
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|x| x.is_finite())
    }

    /// Squared Euclidean norm (used only for tolerance scaling).
    pub fn euclidean_sq(&self) -> f64 {
        self.to_array().iter().map(|x| x * x).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.c1,
            1 => &self.c2,
            2 => &self.c3,
            3 => &self.c4,
            _ => panic!("Vec4 index {i} out of range"),
        }
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, o: Vec4) -> Vec4 {
        Vec4::raw(self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3, self.c4 + o.c4)
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, o: Vec4) -> Vec4 {
        Vec4::raw(self.c1 - o.c1, self.c2 - o.c2, self.c3 - o.c3, self.c4 - o.c4)
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        Vec4::raw(-self.c1, -self.c2, -self.c3, -self.c4)
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;
    fn mul(self, v: Vec4) -> Vec4 {
        Vec4::raw(self * v.c1, self * v.c2, self * v.c3, self * v.c4)
    }
}

impl Mul<f64> for Vec4 {
    type Output = Vec4;
    fn mul(self, k: f64) -> Vec4 {
        k * self
    }
}

/// Dense 4x4 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[f64; 4]; 4]);

/// Symmetric 4x4 matrix. Stored densely; symmetry is a property of how it is built.
pub type SymMat4 = Mat4;

impl Mat4 {
    pub const IDENTITY: Mat4 = Mat4([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]);

    pub const ZERO: Mat4 = Mat4([[0.0; 4]; 4]);

    /// The ambient metric as a matrix.
    pub fn metric() -> Mat4 {
        let mut m = Mat4::ZERO;
        for (i, s) in SIGNATURE.iter().enumerate() {
            m.0[i][i] = *s;
        }
        m
    }

    pub fn apply(&self, v: Vec4) -> Vec4 {
        let a = v.to_array();
        let mut out = [0.0; 4];
        for (i, row) in self.0.iter().enumerate() {
            out[i] = row.iter().zip(a.iter()).map(|(m, x)| m * x).sum();
        }
        Vec4::from_array(out)
    }

    pub fn mul(&self, o: &Mat4) -> Mat4 {
        let mut out = Mat4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = (0..4).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat4 {
        let mut out = Mat4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i];
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, o: &Mat4) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                m = m.max((self.0[i][j] - o.0[i][j]).abs());
            }
        }
        m
    }
}

/// Causal character of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Null,
    Zero,
}

/// `-u1 v1 - u2 v2 + u3 v3 + u4 v4`.
pub fn inner(u: Vec4, v: Vec4) -> f64 {
    -u.c1 * v.c1 - u.c2 * v.c2 + u.c3 * v.c3 + u.c4 * v.c4
}

pub fn causal_class(v: Vec4) -> CausalClass {
    if v == Vec4::ZERO {
        return CausalClass::Zero;
    }
    let q = inner(v, v);
    let tol = NULL_TOL * v.euclidean_sq().max(1.0);
    if q > tol {
        CausalClass::Spacelike
    } else if q < -tol {
        CausalClass::Timelike
    } else {
        CausalClass::Null
    }
}

/// `sqrt(|<v,v>|)`.
pub fn norm(v: Vec4) -> f64 {
    inner(v, v).abs().sqrt()
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Minor of the 3x4 block `[x; y; z]` with column `skip` removed.
fn minor(rows: [[f64; 4]; 3], skip: usize) -> f64 {
    let mut m = [[0.0; 3]; 3];
    for (r, row) in rows.iter().enumerate() {
        let mut c = 0;
        for (j, val) in row.iter().enumerate() {
            if j != skip {
                m[r][c] = *val;
                c += 1;
            }
        }
    }
    det3(m)
}

/// Cross product of three vectors: the first-row cofactor expansion of the
/// formal determinant whose first row is `(-i1, -i2, i3, i4)`.
///
/// The result is orthogonal (for `inner`) to each argument.
pub fn cross3(x: Vec4, y: Vec4, z: Vec4) -> Vec4 {
    let rows = [x.to_array(), y.to_array(), z.to_array()];
    let mut out = [0.0; 4];
    for (j, o) in out.iter_mut().enumerate() {
        let cofactor_sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        *o = SIGNATURE[j] * cofactor_sign * minor(rows, j);
    }
    Vec4::from_array(out)
}

/// Which pseudo-Riemannian space form (centre `m`, radius `r`) a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SpaceFormKind {
    /// `<p-m, p-m> = r^2`.
    PseudoSphere { center: Vec4, radius: f64 },
    /// `<p-m, p-m> = -r^2`; `hyperbolic_sheet` is set when additionally `p1 > 0`,
    /// i.e. the point is on the hyperbolic space H^3(m, r).
    PseudoHyperbolic {
        center: Vec4,
        radius: f64,
        hyperbolic_sheet: bool,
    },
    None,
}

impl SpaceFormKind {
    pub fn is_pseudo_sphere(&self) -> bool {
        matches!(self, SpaceFormKind::PseudoSphere { .. })
    }

    pub fn is_pseudo_hyperbolic(&self) -> bool {
        matches!(self, SpaceFormKind::PseudoHyperbolic { .. })
    }
}

pub fn space_form_membership(p: Vec4, m: Vec4, r: f64) -> Result<SpaceFormKind> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(GeomError::NonPositiveRadius(r));
    }
    let d = p - m;
    let q = inner(d, d);
    let r2 = r * r;
    let tol = MEMBERSHIP_TOL * r2.max(d.euclidean_sq());
    Ok(if (q - r2).abs() <= tol {
        SpaceFormKind::PseudoSphere {
            center: m,
            radius: r,
        }
    } else if (q + r2).abs() <= tol {
        SpaceFormKind::PseudoHyperbolic {
            center: m,
            radius: r,
            hyperbolic_sheet: p.c1 > 0.0,
        }
    } else {
        SpaceFormKind::None
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(a: f64, b: f64, c: f64, d: f64) -> Vec4 {
        Vec4::new(a, b, c, d).unwrap()
    }

    /// Independent oracle: full 4x4 Laplace expansion of the formal
    /// determinant with basis symbols represented by indicator rows.
    fn brute_cross(x: Vec4, y: Vec4, z: Vec4) -> Vec4 {
        fn det4(m: [[f64; 4]; 4]) -> f64 {
            // permutation sum
            let mut total = 0.0;
            let perms = permutations4();
            for (p, sign) in perms {
                let mut prod = sign;
                for (r, c) in p.iter().enumerate() {
                    prod *= m[r][*c];
                }
                total += prod;
            }
            total
        }
        fn permutations4() -> Vec<([usize; 4], f64)> {
            let mut out = Vec::new();
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        for d in 0..4 {
                            let p = [a, b, c, d];
                            let mut seen = [false; 4];
                            if p.iter().any(|&i| std::mem::replace(&mut seen[i], true)) {
                                continue;
                            }
                            let mut inv = 0;
                            for i in 0..4 {
                                for j in i + 1..4 {
                                    if p[i] > p[j] {
                                        inv += 1;
                                    }
                                }
                            }
                            out.push((p, if inv % 2 == 0 { 1.0 } else { -1.0 }));
                        }
                    }
                }
            }
            out
        }
        let first_row = [-1.0, -1.0, 1.0, 1.0];
        let mut out = [0.0; 4];
        for k in 0..4 {
            // component k: keep only basis symbol k in the first row
            let mut row0 = [0.0; 4];
            row0[k] = first_row[k];
            out[k] = det4([row0, x.to_array(), y.to_array(), z.to_array()]);
        }
        Vec4::from_array(out)
    }

    #[test]
    fn inner_examples() {
        assert_eq!(inner(v(1., 0., 0., 0.), v(1., 0., 0., 0.)), -1.0);
        assert_eq!(inner(v(1., 1., 1., 1.), v(1., 1., 1., 1.)), 0.0);
        assert_eq!(inner(v(0., 0., 3., 4.), v(0., 0., 3., 4.)), 25.0);
    }

    #[test]
    fn gram_of_standard_basis_is_signature() {
        for i in 1..=4 {
            for j in 1..=4 {
                let g = inner(Vec4::basis(i), Vec4::basis(j));
                let expect = if i == j { SIGNATURE[i - 1] } else { 0.0 };
                assert_eq!(g, expect);
            }
        }
        let m = Mat4::metric();
        assert_eq!(m.0[0][0], -1.0);
        assert_eq!(m.0[3][3], 1.0);
    }

    #[test]
    fn causal_examples() {
        assert_eq!(causal_class(v(1., 0., 0., 0.)), CausalClass::Timelike);
        assert_eq!(causal_class(v(1., 0., 1., 0.)), CausalClass::Null);
        assert_eq!(causal_class(Vec4::ZERO), CausalClass::Zero);
        assert_eq!(causal_class(v(0., 0., 0., 2.)), CausalClass::Spacelike);
        // scale-relative: a large null vector with rounding noise stays null
        let big = v(1e8, 0.0, 1e8, 1e-5);
        assert_eq!(causal_class(big), CausalClass::Null);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(v(1., 0., 0., 0.)), 1.0);
        assert_eq!(norm(v(1., 1., 1., 1.)), 0.0);
        assert_eq!(norm(v(0., 0., 3., 4.)), 5.0);
    }

    #[test]
    fn constructor_rejects_non_finite() {
        assert!(Vec4::new(f64::NAN, 0., 0., 0.).is_err());
        assert!(Vec4::new(0., f64::INFINITY, 0., 0.).is_err());
    }

    #[test]
    fn cross_of_basis() {
        let c = cross3(Vec4::basis(2), Vec4::basis(3), Vec4::basis(4));
        assert_eq!(c, v(-1.0, 0.0, 0.0, 0.0));
        assert_eq!(brute_cross(Vec4::basis(2), Vec4::basis(3), Vec4::basis(4)), c);
    }

    #[test]
    fn cross_with_repeated_argument_vanishes() {
        let x = v(0.3, -1.2, 2.0, 0.7);
        let z = v(1.0, 0.5, -0.25, 3.0);
        // zero up to rounding in the 3x3 minors
        assert!(cross3(x, x, z).max_abs() < 1e-14);
    }

    #[test]
    fn membership_examples() {
        let o = Vec4::ZERO;
        assert!(space_form_membership(v(0., 0., 1., 0.), o, 1.0)
            .unwrap()
            .is_pseudo_sphere());
        match space_form_membership(v(1., 0., 0., 0.), o, 1.0).unwrap() {
            SpaceFormKind::PseudoHyperbolic {
                hyperbolic_sheet, ..
            } => assert!(hyperbolic_sheet),
            other => panic!("unexpected {other:?}"),
        }
        match space_form_membership(v(-1., 0., 0., 0.), o, 1.0).unwrap() {
            SpaceFormKind::PseudoHyperbolic {
                hyperbolic_sheet, ..
            } => assert!(!hyperbolic_sheet),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            space_form_membership(v(1., 1., 1., 1.), o, 1.0).unwrap(),
            SpaceFormKind::None
        );
        assert!(matches!(
            space_form_membership(o, o, 0.0),
            Err(GeomError::NonPositiveRadius(_))
        ));
        assert!(space_form_membership(o, o, -2.0).is_err());
    }

    fn unit() -> impl Strategy<Value = f64> {
        -1.0f64..1.0
    }

    fn vec4() -> impl Strategy<Value = Vec4> {
        (unit(), unit(), unit(), unit()).prop_map(|(a, b, c, d)| Vec4::raw(a, b, c, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn cross_is_orthogonal(x in vec4(), y in vec4(), z in vec4()) {
            let c = cross3(x, y, z);
            for w in [x, y, z] {
                prop_assert!(inner(c, w).abs() < 1e-10);
            }
        }

        #[test]
        fn cross_matches_brute_determinant(x in vec4(), y in vec4(), z in vec4()) {
            let c = cross3(x, y, z);
            let b = brute_cross(x, y, z);
            prop_assert!((c - b).max_abs() < 1e-12);
        }

        #[test]
        fn cross_is_alternating(x in vec4(), y in vec4(), z in vec4()) {
            let c = cross3(x, y, z);
            for swapped in [cross3(y, x, z), cross3(x, z, y), cross3(z, y, x)] {
                prop_assert!((swapped + c).max_abs() < 1e-14);
            }
        }

        #[test]
        fn inner_is_bilinear_and_symmetric(u in vec4(), w in vec4(), x in vec4(), a in unit(), b in unit()) {
            let lhs = inner(a * u + b * w, x);
            let rhs = a * inner(u, x) + b * inner(w, x);
            prop_assert!((lhs - rhs).abs() < 1e-14);
            prop_assert_eq!(inner(u, x), inner(x, u));
        }

        #[test]
        fn classification_is_total(x in vec4()) {
            let c = causal_class(x);
            let q = inner(x, x);
            match c {
                CausalClass::Spacelike => prop_assert!(q > 0.0),
                CausalClass::Timelike => prop_assert!(q < 0.0),
                CausalClass::Null => prop_assert!(q.abs() <= 1e-12 * x.euclidean_sq().max(1.0)),
                CausalClass::Zero => prop_assert_eq!(x, Vec4::ZERO),
            }
        }
    }
}
