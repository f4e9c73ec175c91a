//! Exact-arithmetic toolkit for Hermitian sums-of-squares identities and the
//! rank/codimension combinatorics attached to proper holomorphic ball maps.
//!
//! Everything here is computed over the Gaussian rationals (complex numbers
//! with rational real and imaginary parts), so every verdict the crate emits
//! (divisibility, positive semidefiniteness, rank, interval membership) is
//! exact. Floating point appears only in [`float_oracle`], an optional
//! cross-check that is never authoritative.
//!
//! The main entry points:
//!
//! * [`poly`]: sparse multivariate polynomials and polynomial maps
//! * [`hermitian`]: Hermitian forms, Gram matrices, SOS certificates and
//!   signature decompositions
//! * [`rank`]: linear rank, tensor products and quotient-dimension bounds
//! * [`gaps`]: gap-interval tables and rank band classification
//! * [`degeneracy`]: degeneracy sequences and the affine-dimension bound
//! * [`sphere`]: proper polynomial ball maps and flatness reports
//! * [`search`]: seeded exhaustive and randomized falsification searches

pub mod degeneracy;
pub mod error;
pub mod float_oracle;
pub mod gaps;
pub mod gen;
pub mod hermitian;
pub mod instance;
pub mod matrix;
pub mod poly;
pub mod rank;
pub mod rational;
pub mod search;
pub mod sphere;

pub use degeneracy::{DegeneracySequence, KClaimReport, KReport, ReplayReport};
pub use error::Error;
pub use gaps::{GapTable, RankClass};
pub use hermitian::{
    GramMatrix, HermitianForm, NotSosWitness, PivotStrategy, SignatureDecomposition,
    SosCertificate, SosOutcome,
};
pub use matrix::Matrix;
pub use poly::{ExponentVector, PolyMap, Polynomial};
pub use rank::RankReport;
pub use rational::{GaussianRational, Rational};
pub use search::{InstanceReport, Mode, SearchConfig, Target, Verdict};
pub use sphere::BallMap;
