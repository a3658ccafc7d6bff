//! Rotational surfaces in the pseudo-Euclidean space E(2,4): normal frames
//! and curvature, geodesic flow on the induced 3-metrics, Clairaut-type
//! conserved quantities and the specific energy relations.

pub mod error;
pub mod io;
pub mod geodesics;
pub mod linalg;
pub mod physics;
pub mod surfaces;
pub mod symmetry;
pub mod verify;

pub use error::{GeomError, Result};

use serde::{Deserialize, Serialize};

/// Which form of a closed-form expression to evaluate: as commonly printed,
/// or as confirmed by the numeric oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormulaVariant {
    Verbatim,
    #[default]
    Corrected,
}

impl std::str::FromStr for FormulaVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "verbatim" => Ok(FormulaVariant::Verbatim),
            "corrected" => Ok(FormulaVariant::Corrected),
            other => Err(format!("unknown formula variant '{other}'")),
        }
    }
}

impl FormulaVariant {
    pub fn name(self) -> &'static str {
        match self {
            FormulaVariant::Verbatim => "verbatim",
            FormulaVariant::Corrected => "corrected",
        }
    }
}
