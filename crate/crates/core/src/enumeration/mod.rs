//! Isomorph-free generation of trees with a prescribed degree sequence, and
//! exhaustive search for the trees of smallest (or largest) index.
//!
//! A tree is built from its skeleton (the subtree on its non-pendant
//! vertices): skeletons are grown leaf by leaf with canonical deduplication,
//! each skeleton vertex receives a target degree no smaller than its
//! skeleton degree, and the slack is filled with pendant vertices.

mod search;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::spectral::SpectralError;
use crate::tree::{CanonicalForm, DegreeSequence, Tree, TreeError, Vertex};

pub use search::{
    find_minimizers, maximal_also, observe, Minimizer, Observations, SearchOptions, SearchReport,
    DEFAULT_MAX_ORDER, DEFAULT_TIE_TOL,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnumerationError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("order {n} exceeds the search limit {limit}; raise the limit to proceed")]
    ScaleGuard { n: usize, limit: usize },
    #[error("worker pool: {0}")]
    Pool(String),
}

/// `true` if some injection of `have` into `want` never decreases a value.
/// Both slices are sorted non-increasing.
fn dominated(have: &[usize], want: &[usize]) -> bool {
    have.len() <= want.len() && have.iter().zip(want).all(|(h, w)| h <= w)
}

fn sorted_degrees(t: &Tree) -> Vec<usize> {
    let mut d = t.degrees();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// Free trees on `k` vertices whose degrees fit under `caps` (sorted
/// non-increasing, one entry per vertex), in ascending canonical order.
fn skeletons(k: usize, caps: &[usize]) -> Vec<Tree> {
    if k == 0 {
        return Vec::new();
    }
    let mut level = vec![Tree::singleton()];
    for m in 1..k {
        let mut next: BTreeMap<CanonicalForm, Tree> = BTreeMap::new();
        for t in &level {
            for v in t.vertices() {
                let mut edges = t.edges();
                edges.push((v, m));
                let grown = Tree::from_edges(m + 1, &edges).expect("leaf attachment keeps a tree");
                if !dominated(&sorted_degrees(&grown), caps) {
                    continue;
                }
                next.entry(grown.canonical_form()).or_insert(grown);
            }
        }
        level = next.into_values().collect();
    }
    level
}

/// All non-isomorphic free trees on `k` vertices, in ascending canonical order.
pub fn free_trees(k: usize) -> Vec<Tree> {
    skeletons(k, &vec![usize::MAX; k])
}

/// Distinct arrangements of `counts` (value, multiplicity) over `slots`,
/// keeping `value >= floor[slot]`.
fn assignments(
    floor: &[usize],
    counts: &mut Vec<(usize, usize)>,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let slot = cur.len();
    if slot == floor.len() {
        out.push(cur.clone());
        return;
    }
    for i in 0..counts.len() {
        let (value, left) = counts[i];
        if left == 0 || value < floor[slot] {
            continue;
        }
        counts[i].1 -= 1;
        cur.push(value);
        assignments(floor, counts, cur, out);
        cur.pop();
        counts[i].1 += 1;
    }
}

fn attach_leaves(skeleton: &Tree, target: &[usize]) -> Tree {
    let k = skeleton.vertex_count();
    let mut edges: Vec<(Vertex, Vertex)> = skeleton.edges();
    let mut next = k;
    for (v, &want) in target.iter().enumerate().take(k) {
        for _ in skeleton.degree(v)..want {
            edges.push((v, next));
            next += 1;
        }
    }
    Tree::from_edges(next, &edges).expect("padding a skeleton keeps a tree")
}

/// Every tree with degree sequence `pi`, once per isomorphism class, in
/// ascending canonical order. Each tree is canonically labelled.
pub fn enumerate_trees(pi: &DegreeSequence) -> Vec<Tree> {
    let degrees = pi.degrees();
    if degrees == [0] {
        return vec![Tree::singleton()];
    }
    let internal = pi.internal_degrees();
    let k = internal.len();
    if k == 0 {
        return vec![crate::tree::families::path(2)];
    }
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &d in internal {
        match counts.last_mut() {
            Some((v, c)) if *v == d => *c += 1,
            _ => counts.push((d, 1)),
        }
    }
    let mut found: BTreeMap<CanonicalForm, Tree> = BTreeMap::new();
    for skel in skeletons(k, internal) {
        let floor = skel.degrees();
        let mut targets = Vec::new();
        assignments(
            &floor,
            &mut counts,
            &mut Vec::with_capacity(k),
            &mut targets,
        );
        for target in targets {
            let t = attach_leaves(&skel, &target);
            found
                .entry(t.canonical_form())
                .or_insert_with(|| t.canonical_relabel());
        }
    }
    found.into_values().collect()
}

/// The class of d-semiregular trees on `n` vertices.
pub fn enumerate_semiregular(d: usize, n: usize) -> Result<Vec<Tree>, EnumerationError> {
    Ok(enumerate_trees(&DegreeSequence::semiregular(d, n)?))
}

/// Every realizable degree sequence on `n >= 1` vertices.
pub fn degree_sequences(n: usize) -> Vec<DegreeSequence> {
    if n == 1 {
        return vec![DegreeSequence::new(vec![0]).expect("K_1")];
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<DegreeSequence>) {
        let slots = n - cur.len();
        if slots == 0 {
            if left == 0 {
                out.push(DegreeSequence::new(cur.clone()).expect("sum checked"));
            }
            return;
        }
        for d in (1..=max.min(left)).rev() {
            if left - d < slots - 1 || left - d > (slots - 1) * d {
                continue;
            }
            cur.push(d);
            rec(n, left - d, d, cur, out);
            cur.pop();
        }
    }
    rec(n, 2 * (n - 1), n - 1, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::families::{caterpillar, mixed_degree_minimizers, spider};

    #[test]
    fn free_tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|k| free_trees(k).len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn trivial_sequences() {
        let k2 = enumerate_trees(&"1,1".parse().unwrap());
        assert_eq!(k2.len(), 1);
        assert_eq!(k2[0].vertex_count(), 2);
        let k1 = enumerate_trees(&"0".parse().unwrap());
        assert_eq!(k1, vec![Tree::singleton()]);
        let star = enumerate_trees(&"4,1^4".parse().unwrap());
        assert_eq!(star.len(), 1);
    }

    #[test]
    fn small_semiregular_classes() {
        assert_eq!(enumerate_semiregular(3, 8).unwrap().len(), 1);
        let c10 = enumerate_semiregular(3, 10).unwrap();
        assert_eq!(c10.len(), 2);
        assert!(c10
            .iter()
            .any(|t| t.is_isomorphic(&caterpillar(3, 10).unwrap())));
        assert!(c10
            .iter()
            .any(|t| t.is_isomorphic(&spider(3, &[1, 1, 1]).unwrap())));
        assert_eq!(enumerate_semiregular(3, 12).unwrap().len(), 2);
        assert!(matches!(
            enumerate_semiregular(3, 7),
            Err(EnumerationError::Tree(TreeError::EmptyClass { d: 3, n: 7 }))
        ));
    }

    #[test]
    fn mixed_sequence_contains_the_known_trees() {
        let pi: DegreeSequence = "4^4,3^2,2,1^12".parse().unwrap();
        let all = enumerate_trees(&pi);
        for t in mixed_degree_minimizers() {
            assert!(all.iter().any(|u| u.is_isomorphic(&t)));
        }
        for w in all.windows(2) {
            assert!(w[0].canonical_form() < w[1].canonical_form());
        }
    }

    #[test]
    fn degree_sequences_cover_all_trees() {
        let totals: Vec<usize> = (1..=8)
            .map(|n| {
                degree_sequences(n)
                    .iter()
                    .map(|p| enumerate_trees(p).len())
                    .sum()
            })
            .collect();
        assert_eq!(totals, [1, 1, 1, 2, 3, 6, 11, 23]);
    }
}
