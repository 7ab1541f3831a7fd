//! Matroids, oriented matroids and positroids on small ordered ground sets,
//! with exact arithmetic and exhaustive verification campaigns.

pub mod chirotope;
pub mod enumerate;
pub mod io;
pub mod macp;
pub mod matroid;
pub mod poset;
pub mod positroid;
pub mod realization;
pub mod subset;
pub mod verify;

pub use matroid::{Matroid, MatroidError};
pub use subset::{CyclicInterval, Subset, MAX_N};
pub use chirotope::{Chirotope, ChirotopeError, GpWitness, Reorientation, SignedSet};
pub use realization::{moment_curve_matrix, realize_positroid_search, Rational, RationalMatrix, RealizationError};
