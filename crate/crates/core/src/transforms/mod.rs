//! Edge switching and the perturbations built from it.
//!
//! A [`SwitchMove`] moves the subtree hanging at `u2` from `v2` to `v1` while
//! the pendant vertex `u1` travels the other way. Valuations are carried
//! across with [`transport_valuation`], which never lowers the Rayleigh
//! quotient of a unimodal valuation when `f(v1) >= f(v2)`.

mod random;
mod reduction;
mod spiral;
mod switch;
mod witness;

use thiserror::Error;

use crate::spectral::SpectralError;
use crate::tree::{TreeError, Vertex};

pub use random::{
    lemma1_property_run, random_semiregular_tree, random_unimodal_valuation, random_valid_move,
    Lemma1Summary,
};
pub use reduction::{
    find_branch_reductions, minimal_branch_reduction, reduce_to_caterpillar, star_degree_surplus,
    Policy, ReductionSequence, ReductionStep, StepKind,
};
pub use spiral::{spiral_rearrangement, SpiralMethod, SpiralOutcome};
pub use switch::{
    apply_switch, lemma1_certificate, transport_valuation, validate_switch, Lemma1Certificate,
    SwitchMove,
};
pub use witness::{theorem1_witness, Theorem1Witness, TraceRow, WitnessRoute, WITNESS_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransformError {
    #[error("invalid switch {mv:?}: {clause}")]
    InvalidSwitch {
        mv: SwitchMove,
        clause: &'static str,
    },
    #[error("valuation is not unimodal with maximum at {0}")]
    NotUnimodal(Vertex),
    #[error("ordering violated: f({v1}) = {f1} < f({v2}) = {f2}")]
    Ordering {
        v1: Vertex,
        v2: Vertex,
        f1: f64,
        f2: f64,
    },
    #[error("the maximum {0} is the pendant vertex being moved")]
    MaximumMoved(Vertex),
    #[error("no branch reduction exists: the tree is a caterpillar")]
    NoReduction,
    #[error("tree is not d-semiregular for any d >= 3")]
    NotSemiregular,
    #[error("tree is a caterpillar")]
    IsCaterpillar,
    #[error("spiral precondition violated: {0}")]
    SpiralPrecondition(String),
    #[error("spiral step failed: {0}")]
    SpiralDiagnostic(String),
    #[error("maximum {v_hat} lies inside the fork of inverse step {step}")]
    MaximumInFork { step: usize, v_hat: Vertex },
    #[error("bookkeeping check failed: {0}")]
    Bookkeeping(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}
