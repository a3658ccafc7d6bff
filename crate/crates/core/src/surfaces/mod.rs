//! The three rotational families, their immersions, normal frames and
//! curvature.

mod curvature;
mod immersion;
mod mesh;
mod profile;

pub use curvature::{
    curvature_closed, curvature_numeric, curvature_numeric_chart, curvature_numeric_moved, form_terms, normal_frame,
    printed_curvature, printed_normal_frame, ChartCurvature, CurvatureSample, FormTerms,
    PrintedCurvature, DEGENERACY_TOL, FD_STEP_FIRST, FD_STEP_SECOND,
};
pub use crate::geodesics::{induced_metric3, NormalizationWarning};
pub use immersion::{immerse_curve_restricted, immerse_full, immerse_full_by_flows};
pub use mesh::{surface_mesh, MeshRow, MeshSummary, SurfaceGrid};
pub use profile::{AnglePath, Jet, PathJet, PlanarJet, ProfileCurve, ScalarFn, Wave};

use serde::{Deserialize, Serialize};

use crate::symmetry::Generator;

/// Rotational family, named after the pair of generators that sweep it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurfaceFamily {
    /// Hyperbolic rotations `Omega1`, `Omega4`; planar profile `(f1, 0, 0, f4)`.
    S14,
    /// Hyperbolic rotations `Omega2`, `Omega3`; planar profile `(f1, f2, 0, 0)`.
    S23,
    /// Elliptic rotations `Omega5`, `Omega6`; planar profile `(0, f2, 0, f4)`.
    S56,
}

impl SurfaceFamily {
    pub const ALL: [SurfaceFamily; 3] = [SurfaceFamily::S14, SurfaceFamily::S23, SurfaceFamily::S56];

    pub fn name(self) -> &'static str {
        match self {
            SurfaceFamily::S14 => "S14",
            SurfaceFamily::S23 => "S23",
            SurfaceFamily::S56 => "S56",
        }
    }

    pub fn generators(self) -> (Generator, Generator) {
        match self {
            SurfaceFamily::S14 => (Generator::Omega1, Generator::Omega4),
            SurfaceFamily::S23 => (Generator::Omega2, Generator::Omega3),
            SurfaceFamily::S56 => (Generator::Omega5, Generator::Omega6),
        }
    }

    /// Zero-based slots of the two nonzero profile components.
    pub fn profile_slots(self) -> (usize, usize) {
        match self {
            SurfaceFamily::S14 => (0, 3),
            SurfaceFamily::S23 => (0, 1),
            SurfaceFamily::S56 => (1, 3),
        }
    }
}

impl std::str::FromStr for SurfaceFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "S14" | "U1" => Ok(SurfaceFamily::S14),
            "S23" | "U2" => Ok(SurfaceFamily::S23),
            "S56" | "U3" => Ok(SurfaceFamily::S56),
            other => Err(format!("unknown surface family '{other}'")),
        }
    }
}
