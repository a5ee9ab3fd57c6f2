use serde::Serialize;

use super::switch::{apply_switch, SwitchMove};
use super::TransformError;
use crate::tree::families::caterpillar;
use crate::tree::{Tree, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    BranchReduction,
    InverseBranchReduction,
}

/// One branch reduction at `reduction_point`, or its inverse.
///
/// For a forward step the move takes a pendant vertex of `bud` to the
/// reduction point and hangs the other proper branch (entered at `mv.u2`)
/// from `bud`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub kind: StepKind,
    pub reduction_point: Vertex,
    pub bud: Vertex,
    #[serde(rename = "move")]
    pub mv: SwitchMove,
    /// Vertices of the two proper branches involved, sorted.
    pub fork: Vec<Vertex>,
    /// Non-pendant vertices in the fork.
    pub fork_size: usize,
}

impl ReductionStep {
    pub fn inverse(&self) -> ReductionStep {
        ReductionStep {
            kind: match self.kind {
                StepKind::BranchReduction => StepKind::InverseBranchReduction,
                StepKind::InverseBranchReduction => StepKind::BranchReduction,
            },
            mv: self.mv.inverse(),
            ..self.clone()
        }
    }

    fn order_key(&self) -> (Vertex, Vertex, Vertex) {
        (self.reduction_point, self.bud, self.mv.u2)
    }
}

/// All branch reductions of `t`, one per unordered pair of proper branches
/// at a branching point. The branch with the lower-id bud receives the
/// other. Sorted by `(reduction_point, bud, u2)`.
pub fn find_branch_reductions(t: &Tree) -> Result<Vec<ReductionStep>, TransformError> {
    let mut out = Vec::new();
    for v_star in t.branching_points() {
        let branches = t.proper_branches(v_star)?;
        let buds: Vec<Vertex> = branches
            .iter()
            .map(|b| b.bud(t).expect("a proper branch has one bud"))
            .collect();
        for i in 0..branches.len() {
            for j in i + 1..branches.len() {
                let (recv, moved) = if buds[i] < buds[j] { (i, j) } else { (j, i) };
                let bud = buds[recv];
                let u1 = t
                    .first_pendant_neighbor(bud)
                    .expect("a bud has a pendant neighbor");
                let mut fork = branches[recv].vertices.clone();
                fork.extend(&branches[moved].vertices);
                fork.sort_unstable();
                fork.dedup();
                let fork_size = fork.iter().filter(|&&x| !t.is_pendant(x)).count();
                out.push(ReductionStep {
                    kind: StepKind::BranchReduction,
                    reduction_point: v_star,
                    bud,
                    mv: SwitchMove {
                        u1,
                        v1: bud,
                        u2: branches[moved].gateway,
                        v2: v_star,
                    },
                    fork,
                    fork_size,
                });
            }
        }
    }
    out.sort_by_key(ReductionStep::order_key);
    Ok(out)
}

/// The reduction with the smallest fork; ties go to the smallest
/// `(reduction_point, bud, u2)`.
pub fn minimal_branch_reduction(t: &Tree) -> Result<ReductionStep, TransformError> {
    find_branch_reductions(t)?
        .into_iter()
        .min_by_key(|s| (s.fork_size, s.order_key()))
        .ok_or(TransformError::NoReduction)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    /// Always a minimal branch reduction.
    Minimal,
    /// The first reduction in [`find_branch_reductions`] order.
    Any,
}

/// Branch reductions from a tree down to the caterpillar.
///
/// `trees[0]` is the input and `trees[i + 1]` the result of `steps[i]`;
/// the last tree is the caterpillar in the input's labels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionSequence {
    pub d: usize,
    pub steps: Vec<ReductionStep>,
    #[serde(skip)]
    pub trees: Vec<Tree>,
}

impl ReductionSequence {
    pub fn caterpillar(&self) -> &Tree {
        self.trees
            .last()
            .expect("a sequence holds at least its input")
    }

    /// Undo every step, starting from the caterpillar.
    pub fn replay_inverse(&self) -> Result<Tree, TransformError> {
        let mut t = self.caterpillar().clone();
        for step in self.steps.iter().rev() {
            t = apply_switch(&t, &step.inverse().mv)?;
        }
        Ok(t)
    }
}

/// `sum (d*(v) - 2)` over branching points: the number of branch reductions
/// needed to reach a caterpillar.
pub fn star_degree_surplus(t: &Tree) -> usize {
    t.branching_points()
        .into_iter()
        .map(|v| t.star_degree(v) - 2)
        .sum()
}

fn check_bookkeeping(before: &Tree, after: &Tree, step: &ReductionStep) -> Result<(), String> {
    for v in before.vertices() {
        let (b, a) = (before.star_degree(v), after.star_degree(v));
        let expected = if v == step.reduction_point {
            b - 1
        } else if v == step.bud {
            2
        } else {
            b
        };
        if a != expected {
            return Err(format!(
                "d*({v}) is {a} after the step, expected {expected}"
            ));
        }
    }
    if after.buds().len() + 1 != before.buds().len() {
        return Err("bud count did not drop by one".into());
    }
    Ok(())
}

/// Repeated branch reductions from a d-semiregular tree (`d >= 3`) to the
/// caterpillar `C_{d,n}`.
pub fn reduce_to_caterpillar(
    t: &Tree,
    policy: Policy,
) -> Result<ReductionSequence, TransformError> {
    let d = match t.semiregular_degree() {
        Some(d) if d >= 3 => d,
        _ => return Err(TransformError::NotSemiregular),
    };
    let mut trees = vec![t.clone()];
    let mut steps = Vec::new();
    loop {
        let cur = trees.last().expect("non-empty");
        let candidates = find_branch_reductions(cur)?;
        let step = match policy {
            Policy::Minimal => candidates
                .into_iter()
                .min_by_key(|s| (s.fork_size, s.order_key())),
            Policy::Any => candidates.into_iter().next(),
        };
        let Some(step) = step else { break };
        let next = apply_switch(cur, &step.mv)?;
        check_bookkeeping(cur, &next, &step).map_err(TransformError::Bookkeeping)?;
        steps.push(step);
        trees.push(next);
    }
    let target = caterpillar(d, t.vertex_count())?;
    if !trees.last().expect("non-empty").is_isomorphic(&target) {
        return Err(TransformError::Bookkeeping(
            "reductions ended away from the caterpillar".into(),
        ));
    }
    Ok(ReductionSequence { d, steps, trees })
}
