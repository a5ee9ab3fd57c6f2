//! Rearranging the caterpillar into a tree with a single branching point.
//!
//! Trunk vertices of `C_{d,n}` are indexed `v_0, v_1, ..., v_{k-1}` by
//! decreasing Perron entry: `v_0` is the central trunk vertex (the lower end
//! of the central edge when `k` is even), odd indices walk out along the
//! longer side and even indices along the other. Every move is a switch
//! with a transported valuation, so the Rayleigh quotient never drops.

use std::collections::BTreeSet;

use serde::Serialize;

use super::switch::{lemma1_certificate, validate_switch, SwitchMove};
use super::TransformError;
use crate::spectral::{
    is_unimodal, perron, rayleigh_quotient, symmetrize_caterpillar, VertexFunction,
};
use crate::tree::families::caterpillar;
use crate::tree::{Tree, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpiralMethod {
    /// Least-index round robin over the three branches.
    Literal,
    /// Cut one side of the trunk onto `v_0`, then optionally graft the tail
    /// of the other side onto the new tip. Used when the round robin cannot
    /// reach the requested lengths.
    CutAndGraft,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpiralOutcome {
    #[serde(skip)]
    pub tree: Tree,
    pub valuation: VertexFunction,
    pub branching_point: Vertex,
    /// Rayleigh quotient before the first move and after each move.
    pub rq_trace: Vec<f64>,
    pub moves: Vec<SwitchMove>,
    pub method: SpiralMethod,
    /// Index of `C_{d,n}`.
    pub mu_cat: f64,
}

struct State {
    tree: Tree,
    g: VertexFunction,
    v_hat: Vertex,
    trace: Vec<f64>,
    moves: Vec<SwitchMove>,
}

impl State {
    fn switch(&mut self, mv: SwitchMove) -> Result<(), TransformError> {
        let cert = lemma1_certificate(&self.tree, &self.g, &mv, self.v_hat)?;
        self.trace.push(cert.rq_after);
        self.moves.push(mv);
        self.tree = cert.tree;
        self.g = cert.valuation;
        Ok(())
    }

    fn pendant_at(&self, v: Vertex) -> Result<Vertex, TransformError> {
        self.tree.first_pendant_neighbor(v).ok_or_else(|| {
            TransformError::SpiralDiagnostic(format!("vertex {v} has no pendant neighbor"))
        })
    }

    fn arm_lengths(&self, arms: &[Vertex; 3]) -> Result<[usize; 3], TransformError> {
        let mut out = [0; 3];
        for (slot, &a) in out.iter_mut().zip(arms) {
            *slot = self.tree.branch(self.v_hat, a)?.length;
        }
        Ok(out)
    }
}

fn sorted_desc(mut l: [usize; 3]) -> [usize; 3] {
    l.sort_unstable_by(|a, b| b.cmp(a));
    l
}

struct Setup {
    k: usize,
    target: [usize; 3],
    /// Trunk vertex with index `i`.
    vtx: Vec<Vertex>,
    start: State,
    mu_cat: f64,
}

fn setup(d: usize, n: usize, lengths: [usize; 3]) -> Result<Setup, TransformError> {
    let target = sorted_desc(lengths);
    let cat = caterpillar(d, n)?;
    let trunk = cat.trunk().expect("a caterpillar has a trunk");
    let k = trunk.len();
    if k < 4 {
        return Err(TransformError::SpiralPrecondition(format!(
            "need at least 4 trunk vertices, C_{{{d},{n}}} has {k}"
        )));
    }
    if target[2] < 2 || target.iter().sum::<usize>() != k + 2 {
        return Err(TransformError::SpiralPrecondition(format!(
            "lengths {target:?} must be at least 2 and sum to {}",
            k + 2
        )));
    }
    if target[0] > (k + 2) / 2 {
        return Err(TransformError::SpiralPrecondition(format!(
            "longest length {} exceeds {}",
            target[0],
            (k + 2) / 2
        )));
    }
    let res = perron(&cat)?;
    let f0 = symmetrize_caterpillar(&cat, &res.perron)?;
    let c = if k % 2 == 1 { k / 2 } else { k / 2 - 1 };
    let vtx: Vec<Vertex> = (0..k)
        .map(|i| match i {
            0 => trunk[c],
            _ if i % 2 == 1 => trunk[c + i.div_ceil(2)],
            _ => trunk[c - i / 2],
        })
        .collect();
    for i in 1..k {
        if f0[vtx[i - 1]] < f0[vtx[i]] {
            return Err(TransformError::SpiralDiagnostic(format!(
                "trunk values are not ordered at index {i}"
            )));
        }
    }
    let start = State {
        trace: vec![rayleigh_quotient(&cat, &f0)?],
        tree: cat,
        g: f0,
        v_hat: vtx[0],
        moves: Vec::new(),
    };
    Ok(Setup {
        k,
        target,
        vtx,
        start,
        mu_cat: res.mu,
    })
}

fn diag(msg: String) -> TransformError {
    TransformError::SpiralDiagnostic(msg)
}

fn literal(s: &Setup) -> Result<State, TransformError> {
    let v = &s.vtx;
    let k = s.k;
    let mut st = State {
        tree: s.start.tree.clone(),
        g: s.start.g.clone(),
        v_hat: s.start.v_hat,
        trace: s.start.trace.clone(),
        moves: Vec::new(),
    };
    let index_of = |x: Vertex| v.iter().position(|&y| y == x);
    let u0 = st.pendant_at(v[0])?;
    st.switch(SwitchMove {
        u1: u0,
        v1: v[0],
        u2: v[3],
        v2: v[1],
    })?;
    let arms = [v[1], v[2], v[3]];
    let mut live: BTreeSet<usize> = [1, 2, 3].into();
    let mut rest: BTreeSet<usize> = (4..k).collect();
    let mut frozen = [false; 3];
    for _ in 0..4 * k {
        let lengths = st.arm_lengths(&arms)?;
        if sorted_desc(lengths) == s.target {
            return Ok(st);
        }
        if let Some(b) = (0..3).find(|&b| !frozen[b] && lengths[b] == s.target[0]) {
            frozen[b] = true;
            for x in st.tree.branch(v[0], arms[b])?.vertices {
                if let Some(idx) = index_of(x).filter(|&idx| idx != 0) {
                    live.remove(&idx);
                    rest.remove(&idx);
                }
            }
            continue;
        }
        let mut it = live.iter().copied();
        let (Some(i), Some(j), Some(m)) = (it.next(), it.next(), rest.first().copied()) else {
            return Err(diag(format!(
                "no indices left with lengths {lengths:?}, target {:?}",
                s.target
            )));
        };
        if !st.tree.is_adjacent(v[j], v[m]) {
            return Err(diag(format!("v_{j} is not adjacent to v_{m}")));
        }
        if st.g[v[i]] < st.g[v[j]] {
            return Err(diag(format!("value at v_{i} is below value at v_{j}")));
        }
        let mv = SwitchMove {
            u1: st.pendant_at(v[i])?,
            v1: v[i],
            u2: v[m],
            v2: v[j],
        };
        validate_switch(&st.tree, &mv).map_err(|e| diag(e.to_string()))?;
        st.switch(mv)?;
        live.insert(m);
        live.remove(&i);
        rest.remove(&m);
    }
    Err(diag("round robin did not terminate".into()))
}

/// How the two trunk sides are cut: first cut a side after position `cut`
/// onto `v_0`, then optionally graft the other side's tail after position
/// `graft` onto the tip left by the cut.
#[derive(Debug, Clone, Copy)]
struct CutPlan {
    cut_odd: bool,
    cut: usize,
    graft: Option<usize>,
}

fn cut_plans(k: usize) -> Vec<(CutPlan, [usize; 3])> {
    let so = k / 2;
    let se = k - 1 - so;
    let mut out = Vec::new();
    for a in 1..so {
        out.push((
            CutPlan {
                cut_odd: true,
                cut: a,
                graft: None,
            },
            [a, se, so - a],
        ));
        for b in a..se {
            out.push((
                CutPlan {
                    cut_odd: true,
                    cut: a,
                    graft: Some(b),
                },
                [a + se - b, b, so - a],
            ));
        }
    }
    for b in 1..se {
        out.push((
            CutPlan {
                cut_odd: false,
                cut: b,
                graft: None,
            },
            [so, b, se - b],
        ));
        for a in b + 1..so {
            out.push((
                CutPlan {
                    cut_odd: false,
                    cut: b,
                    graft: Some(a),
                },
                [b + so - a, a, se - b],
            ));
        }
    }
    out
}

fn cut_and_graft(s: &Setup) -> Result<State, TransformError> {
    let v = &s.vtx;
    let sizes = s.target.map(|l| l - 1);
    let plan = cut_plans(s.k)
        .into_iter()
        .find(|(_, arms)| sorted_desc(*arms) == sizes)
        .map(|(p, _)| p)
        .ok_or_else(|| diag(format!("no cut reaches {:?}", s.target)))?;
    // Position p (1-based) on the odd side is v_{2p-1}, on the even side v_{2p}.
    let odd = |p: usize| v[2 * p - 1];
    let even = |p: usize| v[2 * p];
    let (cut_side, other): (&dyn Fn(usize) -> Vertex, &dyn Fn(usize) -> Vertex) = if plan.cut_odd {
        (&odd, &even)
    } else {
        (&even, &odd)
    };
    let mut st = State {
        tree: s.start.tree.clone(),
        g: s.start.g.clone(),
        v_hat: s.start.v_hat,
        trace: s.start.trace.clone(),
        moves: Vec::new(),
    };
    st.switch(SwitchMove {
        u1: st.pendant_at(v[0])?,
        v1: v[0],
        u2: cut_side(plan.cut + 1),
        v2: cut_side(plan.cut),
    })?;
    if let Some(p) = plan.graft {
        let tip = cut_side(plan.cut);
        st.switch(SwitchMove {
            u1: st.pendant_at(tip)?,
            v1: tip,
            u2: other(p + 1),
            v2: other(p),
        })?;
    }
    Ok(st)
}

/// Rearrange `C_{d,n}` into a tree with one branching point whose three
/// branches have the given lengths, carrying the caterpillar's Perron
/// vector along. Lengths must be at least 2, sum to `k + 2` and the longest
/// may not exceed `ceil((k + 1) / 2)`, where `k` is the trunk length.
pub fn spiral_rearrangement(
    d: usize,
    n: usize,
    lengths: [usize; 3],
) -> Result<SpiralOutcome, TransformError> {
    let s = setup(d, n, lengths)?;
    let (st, method) = match literal(&s) {
        Ok(st) => (st, SpiralMethod::Literal),
        Err(TransformError::SpiralDiagnostic(_)) => (cut_and_graft(&s)?, SpiralMethod::CutAndGraft),
        Err(e) => return Err(e),
    };
    let v0 = s.vtx[0];
    if st.tree.branching_points() != [v0] {
        return Err(diag("result does not branch exactly at v_0".into()));
    }
    let arms: Vec<Vertex> = st
        .tree
        .neighbors(v0)
        .iter()
        .copied()
        .filter(|&u| !st.tree.is_pendant(u))
        .collect();
    let mut got: Vec<usize> = arms
        .iter()
        .map(|&a| st.tree.branch(v0, a).map(|b| b.length))
        .collect::<Result<_, _>>()?;
    got.sort_unstable_by(|a, b| b.cmp(a));
    if got != s.target {
        return Err(diag(format!(
            "branch lengths {got:?}, requested {:?}",
            s.target
        )));
    }
    if !is_unimodal(&st.tree, &st.g, v0, 0.0) {
        return Err(TransformError::NotUnimodal(v0));
    }
    Ok(SpiralOutcome {
        tree: st.tree,
        valuation: st.g,
        branching_point: v0,
        rq_trace: st.trace,
        moves: st.moves,
        method,
        mu_cat: s.mu_cat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::families::spider;

    #[test]
    fn smallest_case_gives_the_spider() {
        let out = spiral_rearrangement(3, 10, [2, 2, 2]).unwrap();
        assert!(out.tree.is_isomorphic(&spider(3, &[1, 1, 1]).unwrap()));
        assert_eq!(out.method, SpiralMethod::Literal);
        assert_eq!(out.moves.len(), 1);
        assert!(out.rq_trace.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        assert!((out.rq_trace[0] - out.mu_cat).abs() < 1e-9);
    }

    #[test]
    fn round_robin_balances_long_trunks() {
        let out = spiral_rearrangement(3, 20, [5, 3, 3]).unwrap();
        assert_eq!(out.method, SpiralMethod::Literal);
        assert!(out.moves.len() >= 2);
    }

    #[test]
    fn unreachable_round_robin_falls_back() {
        // k = 8: the round robin strands the (4, 3, 3) request.
        let out = spiral_rearrangement(3, 18, [4, 3, 3]).unwrap();
        assert_eq!(out.method, SpiralMethod::CutAndGraft);
        let rq = *out.rq_trace.last().unwrap();
        assert!(rq >= out.mu_cat - 1e-9);
    }

    #[test]
    fn cut_plans_cover_every_admissible_triple() {
        for k in 4..=30 {
            let plans = cut_plans(k);
            for l1 in 2..=(k + 2) / 2 {
                for l2 in 2..=l1 {
                    let Some(l3) = (k + 2).checked_sub(l1 + l2) else {
                        continue;
                    };
                    if !(2..=l2).contains(&l3) {
                        continue;
                    }
                    let sizes = [l1 - 1, l2 - 1, l3 - 1];
                    assert!(
                        plans.iter().any(|(_, a)| sorted_desc(*a) == sizes),
                        "k = {k}, lengths ({l1}, {l2}, {l3})"
                    );
                }
            }
        }
    }

    #[test]
    fn preconditions() {
        let e = |r: Result<SpiralOutcome, TransformError>| {
            matches!(r, Err(TransformError::SpiralPrecondition(_)))
        };
        assert!(e(spiral_rearrangement(3, 18, [6, 2, 2])));
        assert!(e(spiral_rearrangement(3, 18, [4, 4, 1])));
        assert!(e(spiral_rearrangement(3, 18, [4, 4, 4])));
        assert!(e(spiral_rearrangement(3, 8, [2, 2, 1])));
        assert!(matches!(
            spiral_rearrangement(3, 9, [2, 2, 2]),
            Err(TransformError::Tree(_))
        ));
    }
}
