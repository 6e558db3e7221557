//! Exact ground states of the Tavis-Cummings model and the atomic
//! correlation measures used to track its superradiant transition.
//!
//! The Hamiltonian conserves the total excitation number `k`, so every
//! quantity here is built from small tridiagonal sector matrices of
//! dimension `min(k, M) + 1`. The reduced atomic state of any sector
//! eigenvector is diagonal in the Dicke basis, which keeps the correlation
//! and entanglement measures polynomial in `M`. The [`oracle`] module holds
//! dense brute-force counterparts used to cross-check all of that.

pub mod asymptotics;
pub mod correlations;
pub mod entanglement;
mod error;
pub mod model;
pub mod oracle;
pub mod spectral;
pub mod tridiag;

pub use error::{Error, Result};
pub use model::{ModelFamily, ModelParams, SectorBasis, SectorHamiltonian};
pub use spectral::{GroundState, SectorEigenpair};
