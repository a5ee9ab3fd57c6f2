//! Certifying that a non-caterpillar semiregular tree has a larger index
//! than the caterpillar: build a unimodal valuation on the tree whose
//! Rayleigh quotient is at least `mu(C_{d,n})` by undoing a sequence of
//! minimal branch reductions.

use serde::Serialize;

use super::reduction::{reduce_to_caterpillar, Policy, ReductionSequence, StepKind};
use super::spiral::spiral_rearrangement;
use super::switch::{lemma1_certificate, SwitchMove};
use super::TransformError;
use crate::spectral::{perron, rayleigh_quotient, symmetrize_caterpillar, VertexFunction};
use crate::tree::{Tree, Vertex};

/// Slack allowed when comparing the witness quotient with either index.
pub const WITNESS_TOL: f64 = 1e-9;

/// How the valuation reached the tree one step above the caterpillar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessRoute {
    /// The spiral rearrangement, with maximum at the branching point.
    Spiral,
    /// A direct switch from the caterpillar's Perron vector, with a maximum
    /// chosen outside the fork.
    ForkAvoiding,
}

/// One inverse step of the replay.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRow {
    pub kind: StepKind,
    pub v_star: Vertex,
    #[serde(rename = "move")]
    pub mv: SwitchMove,
    pub fork_size: usize,
    pub rq_before: f64,
    pub rq_after: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem1Witness {
    pub f: VertexFunction,
    pub v_hat: Vertex,
    /// `R_g(f)`.
    pub rq: f64,
    pub mu_cat: f64,
    pub mu_g: f64,
    /// `mu_g >= rq >= mu_cat`, each within [`WITNESS_TOL`].
    pub gap_ok: bool,
    pub route: WitnessRoute,
    pub trace: Vec<TraceRow>,
    #[serde(skip)]
    pub sequence: ReductionSequence,
}

/// Replay the minimal reduction sequence of `g` backwards from the
/// caterpillar, carrying a unimodal valuation along.
///
/// The first inverse step uses the spiral rearrangement when the longest
/// branch at its reduction point is at most `ceil((k + 1) / 2)`; otherwise
/// the caterpillar's Perron vector is switched directly, with its maximum
/// taken outside the fork. Every later step requires the maximum to sit at
/// the reduction point or outside the fork, and fails otherwise.
pub fn theorem1_witness(g: &Tree) -> Result<Theorem1Witness, TransformError> {
    if g.is_caterpillar() {
        return Err(TransformError::IsCaterpillar);
    }
    let seq = reduce_to_caterpillar(g, Policy::Minimal)?;
    let d = seq.d;
    let n = g.vertex_count();
    let t = seq.steps.len();
    let g0 = seq.caterpillar();
    let k = g0.non_pendant_vertices().len();
    let g1 = &seq.trees[t - 1];
    let first = &seq.steps[t - 1];
    let v_star = first.reduction_point;
    let mut lengths: Vec<usize> = g1
        .neighbors(v_star)
        .iter()
        .filter(|&&u| !g1.is_pendant(u))
        .map(|&u| g1.branch(v_star, u).map(|b| b.length))
        .collect::<Result<_, _>>()?;
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    if lengths.len() != 3 {
        return Err(TransformError::Bookkeeping(format!(
            "tree above the caterpillar has {} branches at its reduction point",
            lengths.len()
        )));
    }
    let res0 = perron(g0)?;
    let mu_cat = res0.mu;
    let mut trace = Vec::with_capacity(t);
    let inv = first.inverse();

    let (mut f, v_hat, route) = if lengths[0] <= (k + 2) / 2 {
        let sp = spiral_rearrangement(d, n, [lengths[0], lengths[1], lengths[2]])?;
        let map = sp.tree.isomorphism_to(g1).ok_or_else(|| {
            TransformError::Bookkeeping("spiral result is not isomorphic to the target".into())
        })?;
        trace.push(TraceRow {
            kind: inv.kind,
            v_star,
            mv: inv.mv,
            fork_size: inv.fork_size,
            rq_before: sp.rq_trace[0],
            rq_after: *sp
                .rq_trace
                .last()
                .expect("trace starts with the caterpillar"),
        });
        (
            sp.valuation.push_forward(&map),
            map[sp.branching_point],
            WitnessRoute::Spiral,
        )
    } else {
        let f0 = symmetrize_caterpillar(g0, &res0.perron)?;
        let v_hat = f0
            .maximizers()
            .into_iter()
            .find(|&v| v == v_star || !first.fork.contains(&v))
            .ok_or(TransformError::MaximumInFork {
                step: 0,
                v_hat: f0.argmax(),
            })?;
        let cert = lemma1_certificate(g0, &f0, &inv.mv, v_hat)?;
        if &cert.tree != g1 {
            return Err(TransformError::Bookkeeping(
                "inverse step 0 missed its tree".into(),
            ));
        }
        trace.push(TraceRow {
            kind: inv.kind,
            v_star,
            mv: inv.mv,
            fork_size: inv.fork_size,
            rq_before: cert.rq_before,
            rq_after: cert.rq_after,
        });
        (cert.valuation, v_hat, WitnessRoute::ForkAvoiding)
    };

    for s in (0..t - 1).rev() {
        let step_no = t - 1 - s;
        let inv = seq.steps[s].inverse();
        if v_hat != inv.reduction_point && inv.fork.contains(&v_hat) {
            return Err(TransformError::MaximumInFork {
                step: step_no,
                v_hat,
            });
        }
        let cert = lemma1_certificate(&seq.trees[s + 1], &f, &inv.mv, v_hat)?;
        if cert.tree != seq.trees[s] {
            return Err(TransformError::Bookkeeping(format!(
                "inverse step {step_no} missed its tree"
            )));
        }
        if !cert.unimodal_after {
            return Err(TransformError::NotUnimodal(v_hat));
        }
        trace.push(TraceRow {
            kind: inv.kind,
            v_star: inv.reduction_point,
            mv: inv.mv,
            fork_size: inv.fork_size,
            rq_before: cert.rq_before,
            rq_after: cert.rq_after,
        });
        f = cert.valuation;
    }

    let rq = rayleigh_quotient(g, &f)?;
    let mu_g = perron(g)?.mu;
    Ok(Theorem1Witness {
        gap_ok: mu_g >= rq - WITNESS_TOL && rq >= mu_cat - WITNESS_TOL,
        f,
        v_hat,
        rq,
        mu_cat,
        mu_g,
        route,
        trace,
        sequence: seq,
    })
}
