//! The six infinitesimal isometries of E(2,4), their one-parameter groups and
//! a flat-space Killing check.
//!
//! Coordinates are labelled `(xi, rho, vartheta, eta) = (x1, x2, x3, x4)`.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::linalg::{Mat4, SymMat4, Vec4};

/// Rotation generators. Four mix a time-like with a space-like slot and
/// generate boosts; the last two rotate two slots of equal causal type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    /// `vartheta d/dxi + xi d/dvartheta`, slots (1,3).
    Omega1,
    /// `eta d/dxi + xi d/deta`, slots (1,4).
    Omega2,
    /// `vartheta d/drho + rho d/dvartheta`, slots (2,3).
    Omega3,
    /// `eta d/drho + rho d/deta`, slots (2,4).
    Omega4,
    /// `xi d/drho - rho d/dxi`, slots (1,2).
    Omega5,
    /// `vartheta d/deta - eta d/dvartheta`, slots (3,4).
    Omega6,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::Omega1,
        Generator::Omega2,
        Generator::Omega3,
        Generator::Omega4,
        Generator::Omega5,
        Generator::Omega6,
    ];

    /// Zero-based slots of the active 2x2 block.
    pub fn slots(self) -> (usize, usize) {
        match self {
            Generator::Omega1 => (0, 2),
            Generator::Omega2 => (0, 3),
            Generator::Omega3 => (1, 2),
            Generator::Omega4 => (1, 3),
            Generator::Omega5 => (0, 1),
            Generator::Omega6 => (2, 3),
        }
    }

    pub fn is_hyperbolic(self) -> bool {
        !matches!(self, Generator::Omega5 | Generator::Omega6)
    }

    /// The generator as a vector field evaluated at `p`.
    pub fn vector_at(self, p: Vec4) -> Vec4 {
        let x = p.to_array();
        let (i, j) = self.slots();
        let mut w = [0.0; 4];
        if self.is_hyperbolic() {
            w[i] = x[j];
            w[j] = x[i];
        } else {
            // xi d/drho - rho d/dxi  and  vartheta d/deta - eta d/dvartheta
            w[j] = x[i];
            w[i] = -x[j];
        }
        Vec4::from_array(w)
    }

    /// Sign relating `d/dphi flow_matrix(g, phi)` at 0 to `vector_at`.
    ///
    /// The elliptic blocks follow the sign pattern of the elliptic surface of
    /// rotation, which runs the flow of `Omega5`/`Omega6` backwards.
    pub fn flow_orientation(self) -> f64 {
        if self.is_hyperbolic() {
            1.0
        } else {
            -1.0
        }
    }

    /// Weight of this generator inside a Killing field.
    pub fn coefficient(self, k: &KillingCoefficients) -> f64 {
        match self {
            Generator::Omega1 => k.c,
            Generator::Omega2 => k.a,
            Generator::Omega3 => k.b,
            Generator::Omega4 => k.d,
            Generator::Omega5 => k.f,
            Generator::Omega6 => k.e,
        }
    }
}

/// Weights `a..f` of the Killing field
/// `W = a Omega2 + b Omega3 + c Omega1 + d Omega4 + e Omega6 + f Omega5`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct KillingCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl KillingCoefficients {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Result<Self> {
        let k = KillingCoefficients { a, b, c, d, e, f };
        if k.as_array().iter().all(|x| x.is_finite() && *x >= 0.0) {
            Ok(k)
        } else {
            Err(GeomError::Invalid(format!(
                "Killing coefficients must be finite and nonnegative, got {k:?}"
            )))
        }
    }

    /// Unit weight on one generator, zero elsewhere.
    pub fn unit(g: Generator) -> Self {
        let mut k = KillingCoefficients::default();
        match g {
            Generator::Omega1 => k.c = 1.0,
            Generator::Omega2 => k.a = 1.0,
            Generator::Omega3 => k.b = 1.0,
            Generator::Omega4 => k.d = 1.0,
            Generator::Omega5 => k.f = 1.0,
            Generator::Omega6 => k.e = 1.0,
        }
        k
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }
}

pub fn killing_vector_at(k: &KillingCoefficients, p: Vec4) -> Vec4 {
    Generator::ALL
        .iter()
        .fold(Vec4::ZERO, |acc, g| acc + g.coefficient(k) * g.vector_at(p))
}

/// Constant Jacobian `J[z][k] = dW^z/dx_k` of the (linear) Killing field.
pub fn killing_jacobian(k: &KillingCoefficients) -> Mat4 {
    let mut j = Mat4::ZERO;
    for g in Generator::ALL {
        let w = g.coefficient(k);
        let (a, b) = g.slots();
        if g.is_hyperbolic() {
            j.0[a][b] += w;
            j.0[b][a] += w;
        } else {
            j.0[b][a] += w;
            j.0[a][b] -= w;
        }
    }
    j
}

/// One-parameter group element `psi_angle` of a generator.
pub fn flow_matrix(g: Generator, angle: f64) -> Mat4 {
    let mut m = Mat4::IDENTITY;
    let (i, j) = g.slots();
    if g.is_hyperbolic() {
        let (ch, sh) = (angle.cosh(), angle.sinh());
        m.0[i][i] = ch;
        m.0[i][j] = sh;
        m.0[j][i] = sh;
        m.0[j][j] = ch;
    } else {
        let (c, s) = (angle.cos(), angle.sin());
        m.0[i][i] = c;
        m.0[i][j] = s;
        m.0[j][i] = -s;
        m.0[j][j] = c;
    }
    m
}

/// Flat-space Lie derivative of the metric along a linear field with
/// Jacobian `jac`: `g J + (g J)^T`.
pub fn lie_derivative_of_linear_field(jac: &Mat4) -> SymMat4 {
    let gj = Mat4::metric().mul(jac);
    let mut out = Mat4::ZERO;
    for a in 0..4 {
        for b in 0..4 {
            out.0[a][b] = gj.0[a][b] + gj.0[b][a];
        }
    }
    out
}

/// Lie derivative of the ambient metric along the Killing field `k` at `p`.
/// `W` is linear, so the result does not depend on `p`.
pub fn lie_derivative_flat(k: &KillingCoefficients, _p: Vec4) -> SymMat4 {
    lie_derivative_of_linear_field(&killing_jacobian(k))
}
