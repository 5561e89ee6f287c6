//! Exact computation with perfect dominating sets of the n-dimensional
//! discrete torus `Z_p^n` with `p = 2n+1`, where every vertex must be
//! dominated by exactly one code point under the `±e_i` adjacency.
//!
//! The crate covers construction of the linear (graph-type and hyperplane)
//! codes, verification of perfection and the axis-line property, exact
//! spectral analysis of `A + I` over the cyclotomic integers, exhaustive
//! enumeration of all perfect codes at small sizes, and defining-set
//! computation by greedy descent, exhaustive search, and an explicit
//! signed-binary construction with its recovery solver.
//!
//! Conventions, fixed once and used everywhere:
//!
//! - Residues are stored reduced to `0..p`; the canonical absolute value of
//!   a residue `r` is `min(r, p−r)`, and "centered" means the representative
//!   in `[−n, n]`.
//! - Coordinates are 0-based in storage. Vertex indices order `Z_p^n`
//!   lexicographically with coordinate 0 most significant.
//! - All arithmetic that decides a property is exact: integers, cyclotomic
//!   tallies, or fraction-free elimination. Floating point appears only in
//!   test cross-checks.

pub mod bits;
pub mod codeset;
pub mod cyclotomic;
pub mod defining;
pub mod enumerator;
pub mod error;
pub mod linalg;
pub mod linear;
pub mod spectral;
pub mod torus;
pub mod verify;

pub use codeset::CodeSet;
pub use defining::{
    floor_log2, greedy_defining, is_defining, min_defining, proposition_defining,
    recover_eq1_spec, signed_binary_solve, DefiningSet, MinDefining, SignedBinary,
};
pub use enumerator::{
    enumerate_all, eq1_family, orbit_decomposition, CodeFamily, EnumerateOptions, FamilyKind,
    OrbitReport, SymmetryGroup,
};
pub use error::{Error, Result};
pub use linear::{
    build_eq1, build_hyperplane, classify, dominator_of, eq1_normal, recover_eq1, Classification,
    Eq1Spec, HyperplaneSpec,
};
pub use spectral::{
    enumerate_kernel, fourier_support, is_kernel, rank_a_plus_i, FrequencyVector, KernelSet,
};
pub use torus::{TorusParams, TorusPoint};
pub use verify::{check_line_property, is_perfect, DominationReport, LineReport};

/// Cyclotomic tallies carry small integer counts; `i64` never overflows
/// here since total weight is bounded by the code size.
pub type CyclotomicElement = cyclotomic::Cyclotomic<i64>;

/// Exact elimination grows entries like minors, beyond any fixed-width
/// integer; matrices therefore carry arbitrary-precision integers.
pub type ExactMatrix = linalg::Matrix<num_bigint::BigInt>;
