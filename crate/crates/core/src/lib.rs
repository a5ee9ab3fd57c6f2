//! Trees with small adjacency spectral radius.
//!
//! * [`tree`]: tree representation, structural queries, canonical forms,
//!   JSON/DOT formats and constructors for the families used throughout.
//! * [`spectral`]: index and Perron vector, Rayleigh quotients, and the
//!   predicates (unimodality, pendant minima, trunk symmetry) used by the
//!   perturbation arguments.
//! * [`transforms`]: edge switching with valuation transport, branch
//!   reductions, reduction sequences to the caterpillar, the spiral
//!   rearrangement, and the replay that certifies a caterpillar has the
//!   smallest index among semiregular trees.
//! * [`enumeration`]: isomorph-free generation of trees with a given degree
//!   sequence and exhaustive minimizer search.

pub mod enumeration;
pub mod spectral;
pub mod transforms;
pub mod tree;

pub use spectral::{SpectralError, SpectralResult, VertexFunction};
pub use tree::{Branch, CanonicalForm, DegreeSequence, Tree, TreeError, Vertex};
