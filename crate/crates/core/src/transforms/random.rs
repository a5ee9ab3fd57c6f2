//! Random instances for checking the switch inequality.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::switch::{lemma1_certificate, SwitchMove};
use super::TransformError;
use crate::spectral::VertexFunction;
use crate::tree::{Tree, Vertex};

/// A uniformly grown d-semiregular tree with `k >= 1` non-pendant vertices:
/// each new non-pendant vertex attaches to a random earlier one that still
/// has room, then every non-pendant vertex is padded to degree `d`.
pub fn random_semiregular_tree<R: Rng>(rng: &mut R, d: usize, k: usize) -> Tree {
    assert!(d >= 2 && k >= 1);
    let mut degree = vec![0usize; k];
    let mut edges = Vec::new();
    for v in 1..k {
        let open: Vec<Vertex> = (0..v).filter(|&u| degree[u] < d).collect();
        let &p = open.choose(rng).expect("d >= 2 leaves room to grow");
        edges.push((p, v));
        degree[p] += 1;
        degree[v] += 1;
    }
    let mut next = k;
    for (v, &have) in degree.iter().enumerate().take(k) {
        for _ in have..d {
            edges.push((v, next));
            next += 1;
        }
    }
    Tree::from_edges(next, &edges).expect("grown tree is valid")
}

/// An integer-valued unimodal valuation with maximum at a random
/// non-pendant vertex. Values drop by 1 to 3 along each edge leaving the
/// maximum; with probability 1/2 one edge at the maximum is flat.
pub fn random_unimodal_valuation<R: Rng>(rng: &mut R, t: &Tree) -> (VertexFunction, Vertex) {
    let n = t.vertex_count();
    let internal = t.non_pendant_vertices();
    let v_hat = *internal.choose(rng).unwrap_or(&0);
    let mut f = vec![0.0; n];
    f[v_hat] = (3 * n + 1) as f64;
    let flat = if rng.gen_bool(0.5) {
        t.neighbors(v_hat).choose(rng).copied()
    } else {
        None
    };
    let parent = t.parents(v_hat);
    for v in t.bfs_order(v_hat) {
        if let Some(p) = parent[v] {
            let drop = if Some(v) == flat && p == v_hat {
                0
            } else {
                rng.gen_range(1..=3)
            };
            f[v] = f[p] - drop as f64;
        }
    }
    (VertexFunction(f), v_hat)
}

/// A uniformly chosen valid switch with `f(v1) >= f(v2)` and `u1 != v_hat`.
pub fn random_valid_move<R: Rng>(
    rng: &mut R,
    t: &Tree,
    f: &VertexFunction,
    v_hat: Vertex,
) -> Option<SwitchMove> {
    let mut moves = Vec::new();
    for u1 in t.pendant_vertices() {
        if u1 == v_hat {
            continue;
        }
        let v1 = t.neighbors(u1)[0];
        let parent = t.parents(v1);
        for u2 in t.non_pendant_vertices() {
            let Some(v2) = parent[u2] else { continue };
            if v2 == v1 || f[v1] < f[v2] {
                continue;
            }
            moves.push(SwitchMove { u1, v1, u2, v2 });
        }
    }
    moves.choose(rng).copied()
}

/// Aggregate of [`lemma1_property_run`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma1Summary {
    pub seed: u64,
    pub instances: usize,
    pub strict_instances: usize,
    pub min_delta: f64,
    /// Largest `|delta - closed_form|`.
    pub max_closed_form_error: f64,
    /// Instances where `delta > 1e-12` disagrees with the strictness rule.
    pub strictness_mismatches: usize,
    /// Instances whose transported valuation lost unimodality.
    pub unimodality_failures: usize,
}

impl Lemma1Summary {
    pub fn passed(&self) -> bool {
        self.min_delta >= -1e-12
            && self.max_closed_form_error <= 1e-12
            && self.strictness_mismatches == 0
            && self.unimodality_failures == 0
    }
}

/// Check the switch inequality on `count` random instances over
/// d-semiregular trees with `d` in {3, 4, 5} and at most 20 vertices.
pub fn lemma1_property_run(seed: u64, count: usize) -> Result<Lemma1Summary, TransformError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Lemma1Summary {
        seed,
        instances: 0,
        strict_instances: 0,
        min_delta: f64::INFINITY,
        max_closed_form_error: 0.0,
        strictness_mismatches: 0,
        unimodality_failures: 0,
    };
    while s.instances < count {
        let d = rng.gen_range(3..=5);
        let k_max = 18 / (d - 1);
        let k = rng.gen_range(3..=k_max);
        let t = random_semiregular_tree(&mut rng, d, k);
        let (f, v_hat) = random_unimodal_valuation(&mut rng, &t);
        let Some(mv) = random_valid_move(&mut rng, &t, &f, v_hat) else {
            continue;
        };
        let cert = lemma1_certificate(&t, &f, &mv, v_hat)?;
        s.instances += 1;
        s.strict_instances += usize::from(cert.strict);
        s.min_delta = s.min_delta.min(cert.delta);
        s.max_closed_form_error = s
            .max_closed_form_error
            .max((cert.delta - cert.closed_form).abs());
        if (cert.delta > 1e-12) != cert.strict {
            s.strictness_mismatches += 1;
        }
        if !cert.unimodal_after {
            s.unimodality_failures += 1;
        }
    }
    Ok(s)
}
