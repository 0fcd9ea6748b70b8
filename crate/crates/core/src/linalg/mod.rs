//! Dense complex linear algebra for small multipartite Hilbert spaces.

pub mod channel;
pub mod density;
pub mod eigen;
pub mod json;
pub mod matrix;
pub mod random;

pub use channel::{apply_local, gates, LocalOperation};
pub use density::{trace_distance, validate_density, DensityDiagnostics, DensityMatrix};
pub use eigen::{eig_hermitian, HermitianEigensystem};
pub use json::{parse_density, DensityJson};
pub use matrix::{tensor, ComplexMatrix, Ket};
pub use random::{sample_random, RandomSample, SampleKind};
