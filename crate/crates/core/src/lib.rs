//! Exact integer engine for equivariant monopole Floer complexes.
//!
//! The input is a finite set of graded critical points with integer flowline
//! counts ([`data::MonopoleData`]). From it the crate builds the five flavors
//! of the equivariant complex ([`complex`]), computes their homology over ℤ
//! ([`homology`]) and checks the structural results relating them: the
//! u-action homotopy, both long exact sequences, the spectral sequence of the
//! index filtration and orientation-reversal duality.

pub mod actions;
pub mod canonical_json;
pub mod cli;
pub mod complex;
pub mod data;
pub mod duality;
pub mod homology;
pub mod linalg;
pub mod sequences;
pub mod spectral;
pub(crate) mod serde_int;
pub mod window;

pub use complex::{ChainMapSlice, DegreeSlice, Flavor, FloerComplex, Generator, GeneratorKind};
pub use data::MonopoleData;
pub use window::Window;

use data::DataError;
use linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("map does not commute with the differentials at degree {degree}")]
    NotChainMap { degree: i64 },
    #[error("window {window} is too small: {reason}")]
    WindowTooSmall { window: Window, reason: String },
    #[error("lift failed at degree {degree}: {detail}")]
    Lift { degree: i64, detail: String },
    #[error("{operation} is not defined on the {flavor} flavor")]
    Unsupported { operation: String, flavor: Flavor },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("{what} disagree at degree {degree}: {left} vs {right}")]
    Mismatch {
        what: String,
        degree: i64,
        left: String,
        right: String,
    },
}
