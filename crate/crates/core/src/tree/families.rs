//! Constructors for the tree families used across the crate.

use super::degree::semiregular_internal_count;
use super::{Tree, TreeError, Vertex};

/// The path `P_n` labelled `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Tree {
    assert!(n >= 1, "path needs at least one vertex");
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Tree::from_edges(n, &edges).expect("a path is a tree")
}

/// The star `K_{1,m}` with center 0.
pub fn star(m: usize) -> Tree {
    let edges: Vec<_> = (1..=m).map(|v| (0, v)).collect();
    Tree::from_edges(m + 1, &edges).expect("a star is a tree")
}

/// A caterpillar whose trunk is `0 - 1 - ... - (k-1)` where trunk vertex `i`
/// carries `leaves[i]` pendant vertices. Pendant ids follow the trunk in order.
pub fn caterpillar_with_leaves(leaves: &[usize]) -> Tree {
    let k = leaves.len();
    let mut edges: Vec<(Vertex, Vertex)> = (1..k).map(|v| (v - 1, v)).collect();
    let mut next = k;
    for (i, &count) in leaves.iter().enumerate() {
        for _ in 0..count {
            edges.push((i, next));
            next += 1;
        }
    }
    Tree::from_edges(next, &edges).expect("a caterpillar is a tree")
}

/// The d-semiregular caterpillar `C_{d,n}`.
///
/// Trunk vertices are `0..k` in path order with `k = (n-2)/(d-1)`; the two
/// trunk ends carry `d-1` pendant vertices, interior trunk vertices `d-2`.
/// `C_{d,2}` is `K_2` and `C_{d,d+1}` is the star `K_{1,d}`.
pub fn caterpillar(d: usize, n: usize) -> Result<Tree, TreeError> {
    let k = semiregular_internal_count(d, n)?;
    let leaves: Vec<usize> = match k {
        0 => return Ok(path(2)),
        1 => vec![d],
        _ => (0..k)
            .map(|i| if i == 0 || i == k - 1 { d - 1 } else { d - 2 })
            .collect(),
    };
    Ok(caterpillar_with_leaves(&leaves))
}

/// A d-semiregular spider: center 0 with one arm per entry of `arms`, the
/// entry giving the number of non-pendant vertices on that arm. Every
/// non-pendant vertex is padded with pendant vertices up to degree `d`.
pub fn spider(d: usize, arms: &[usize]) -> Result<Tree, TreeError> {
    if arms.len() > d || arms.contains(&0) || d < 2 {
        return Err(TreeError::Construction(format!(
            "spider with arms {arms:?} does not fit degree {d}"
        )));
    }
    let mut edges = Vec::new();
    let mut next = 1;
    let mut internal = vec![0];
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            internal.push(next);
            prev = next;
            next += 1;
        }
    }
    let mut degree = vec![0usize; next];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    for v in internal {
        for _ in degree[v]..d {
            edges.push((v, next));
            next += 1;
        }
    }
    Tree::from_edges(next, &edges)
}

/// Three pairwise non-isomorphic trees with degree sequence
/// `(4^4, 3^2, 2, 1^12)` and index `sqrt(6)`.
///
/// The first is the symmetric non-caterpillar: trunk `0 - 1 - 2`, with
/// vertices 0 and 2 each adjacent to two degree-4 buds. The other two are
/// caterpillars with trunk `0..7`; the third has non-monotone trunk degrees
/// `4, 3, 4, 2, 3, 4, 4`.
pub fn mixed_degree_minimizers() -> [Tree; 3] {
    let mut edges = vec![(0, 1), (1, 2), (0, 3), (0, 4), (2, 5), (2, 6)];
    let mut next = 7;
    for bud in 3..=6 {
        for _ in 0..3 {
            edges.push((bud, next));
            next += 1;
        }
    }
    let symmetric = Tree::from_edges(next, &edges).expect("valid tree");
    [
        symmetric,
        caterpillar_with_leaves(&[3, 2, 1, 0, 1, 2, 3]),
        caterpillar_with_leaves(&[3, 1, 2, 0, 1, 2, 3]),
    ]
}
