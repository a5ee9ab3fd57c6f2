//! Undirected trees over dense vertex ids and the structural vocabulary used
//! throughout the crate: pendant vertices, non-pendant degree `d*`, buds,
//! branching points and branches.

mod canonical;
mod degree;
pub mod families;
pub mod format;

use std::collections::VecDeque;

use thiserror::Error;

pub use canonical::{CanonicalForm, CanonicalLabeling};
pub use degree::DegreeSequence;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(Vertex, Vertex, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("a tree on {n} vertices has {expected} edges, got {got}")]
    EdgeCount {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("graph is not connected (vertex {0} unreachable from 0)")]
    Disconnected(Vertex),
    #[error("class T(d={d}, n={n}) is empty: need d >= 3 and n = 2 (mod d-1)")]
    EmptyClass { d: usize, n: usize },
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(Vertex, Vertex),
    #[error("vertex {0} is not a branching point")]
    NotBranchingPoint(Vertex),
    #[error("vertex {0} does not exist")]
    NoSuchVertex(Vertex),
    #[error("invalid degree sequence: {0}")]
    DegreeSequence(String),
    #[error("invalid construction: {0}")]
    Construction(String),
}

/// A finite tree with vertices `0..n` and sorted neighbor lists.
///
/// Construction always validates: `n - 1` edges, no loops or duplicates, and
/// every vertex reachable from vertex 0. Values are immutable afterwards.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adjacency: Vec<Vec<Vertex>>,
}

impl Tree {
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if edges.len() != n - 1 {
            return Err(TreeError::EdgeCount {
                n,
                expected: n - 1,
                got: edges.len(),
            });
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(TreeError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            if adjacency[u].contains(&v) {
                return Err(TreeError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let tree = Tree { adjacency };
        let seen = tree.bfs_order(0);
        if seen.len() != n {
            let mut reached = vec![false; n];
            for &v in &seen {
                reached[v] = true;
            }
            let missing = reached.iter().position(|r| !r).unwrap_or(0);
            return Err(TreeError::Disconnected(missing));
        }
        Ok(tree)
    }

    /// The single-vertex tree K_1.
    pub fn singleton() -> Self {
        Tree {
            adjacency: vec![Vec::new()],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.len() - 1
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::from_tree(self)
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut edges: Vec<_> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.adjacency.len()
    }

    pub fn is_pendant(&self, v: Vertex) -> bool {
        self.adjacency[v].len() == 1
    }

    pub fn pendant_vertices(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.is_pendant(v)).collect()
    }

    pub fn non_pendant_vertices(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.degree(v) >= 2).collect()
    }

    /// Number of non-pendant vertices adjacent to `v` (`d*`).
    pub fn star_degree(&self, v: Vertex) -> usize {
        self.adjacency[v]
            .iter()
            .filter(|&&u| !self.is_pendant(u))
            .count()
    }

    /// Non-pendant vertices with `d* >= 3`.
    pub fn branching_points(&self) -> Vec<Vertex> {
        self.vertices()
            .filter(|&v| !self.is_pendant(v) && self.star_degree(v) >= 3)
            .collect()
    }

    /// Non-pendant vertices with `d* = 1`.
    pub fn buds(&self) -> Vec<Vertex> {
        self.vertices()
            .filter(|&v| self.degree(v) >= 2 && self.star_degree(v) == 1)
            .collect()
    }

    /// Lowest-id pendant neighbor of `v`.
    pub fn first_pendant_neighbor(&self, v: Vertex) -> Option<Vertex> {
        self.adjacency[v]
            .iter()
            .copied()
            .find(|&u| self.is_pendant(u))
    }

    pub fn is_semiregular(&self, d: usize) -> bool {
        self.adjacency.iter().all(|l| l.len() == d || l.len() == 1)
    }

    /// The common degree of all non-pendant vertices, if there is exactly one.
    pub fn semiregular_degree(&self) -> Option<usize> {
        let mut internal = self.adjacency.iter().map(Vec::len).filter(|&d| d >= 2);
        let d = internal.next()?;
        internal.all(|e| e == d).then_some(d)
    }

    pub fn is_caterpillar(&self) -> bool {
        self.trunk().is_some()
    }

    /// Non-pendant vertices in path order when they induce a path (the trunk
    /// of a caterpillar). The path starts at its lower-id end; stars give a
    /// single vertex and K_1, K_2 give an empty trunk.
    pub fn trunk(&self) -> Option<Vec<Vertex>> {
        let internal = self.non_pendant_vertices();
        if internal.is_empty() {
            return Some(Vec::new());
        }
        if internal.iter().any(|&v| self.star_degree(v) > 2) {
            return None;
        }
        let start = internal
            .iter()
            .copied()
            .find(|&v| self.star_degree(v) <= 1)
            .expect("a finite tree skeleton has an end");
        let mut trunk = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = self.adjacency[cur]
                .iter()
                .copied()
                .find(|&u| u != prev && !self.is_pendant(u));
            match next {
                Some(u) => {
                    prev = cur;
                    cur = u;
                    trunk.push(u);
                }
                None => break,
            }
        }
        Some(trunk)
    }

    pub fn bfs_order(&self, root: Vertex) -> Vec<Vertex> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        order
    }

    /// Parent pointers of the tree rooted at `root` (`parent[root] = None`).
    pub fn parents(&self, root: Vertex) -> Vec<Option<Vertex>> {
        let mut parent = vec![None; self.vertex_count()];
        for v in self.bfs_order(root) {
            for &u in &self.adjacency[v] {
                if parent[v] != Some(u) {
                    parent[u] = Some(v);
                }
            }
        }
        parent
    }

    /// The unique path from `from` to `to`, both ends included.
    pub fn path(&self, from: Vertex, to: Vertex) -> Vec<Vertex> {
        let parent = self.parents(to);
        let mut path = vec![from];
        let mut cur = from;
        while let Some(p) = parent[cur] {
            path.push(p);
            cur = p;
        }
        path
    }

    pub fn distances(&self, root: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[root] = 0;
        for v in self.bfs_order(root) {
            for &u in &self.adjacency[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                }
            }
        }
        dist
    }

    /// One or two central vertices (minimum eccentricity), ascending.
    pub fn centers(&self) -> Vec<Vertex> {
        let n = self.vertex_count();
        if n <= 2 {
            return (0..n).collect();
        }
        let mut degree = self.degrees();
        let mut layer: Vec<Vertex> = self.vertices().filter(|&v| degree[v] == 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &leaf in &layer {
                for &u in &self.adjacency[leaf] {
                    if degree[u] > 1 {
                        degree[u] -= 1;
                        if degree[u] == 1 {
                            next.push(u);
                        }
                    }
                }
                degree[leaf] = 0;
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }

    /// Vertices of the component of `G - uv` containing `u` (sorted).
    pub fn side(&self, v: Vertex, u: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.vertex_count()];
        seen[v] = true;
        seen[u] = true;
        let mut stack = vec![u];
        let mut out = vec![u];
        while let Some(x) = stack.pop() {
            for &y in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The branch `B_{vu}`: `v` together with the side of `u` after cutting `vu`.
    pub fn branch(&self, v: Vertex, u: Vertex) -> Result<Branch, TreeError> {
        let n = self.vertex_count();
        if v >= n {
            return Err(TreeError::NoSuchVertex(v));
        }
        if u >= n {
            return Err(TreeError::NoSuchVertex(u));
        }
        if !self.is_adjacent(v, u) {
            return Err(TreeError::NotAdjacent(v, u));
        }
        let mut vertices = self.side(v, u);
        let pos = vertices.binary_search(&v).unwrap_err();
        vertices.insert(pos, v);
        let length = vertices.iter().filter(|&&x| !self.is_pendant(x)).count();
        Ok(Branch {
            root: v,
            gateway: u,
            vertices,
            length,
        })
    }

    /// Branches at `v_star` with exactly one branching point (`v_star`) and
    /// exactly one bud, ordered by gateway id.
    pub fn proper_branches(&self, v_star: Vertex) -> Result<Vec<Branch>, TreeError> {
        if v_star >= self.vertex_count() {
            return Err(TreeError::NoSuchVertex(v_star));
        }
        if self.is_pendant(v_star) || self.star_degree(v_star) < 3 {
            return Err(TreeError::NotBranchingPoint(v_star));
        }
        let mut out = Vec::new();
        for &u in &self.adjacency[v_star] {
            if self.is_pendant(u) {
                continue;
            }
            let b = self.branch(v_star, u)?;
            let mut branching = 0;
            let mut buds = 0;
            for &x in &b.vertices {
                if self.is_pendant(x) {
                    continue;
                }
                match self.star_degree(x) {
                    1 => buds += 1,
                    s if s >= 3 => branching += 1,
                    _ => {}
                }
            }
            if branching == 1 && buds == 1 {
                out.push(b);
            }
        }
        Ok(out)
    }

    /// Relabel by `new_id[old] = new`.
    pub fn relabel(&self, new_id: &[Vertex]) -> Tree {
        let n = self.vertex_count();
        let mut adjacency = vec![Vec::new(); n];
        for (old, list) in self.adjacency.iter().enumerate() {
            adjacency[new_id[old]] = list.iter().map(|&u| new_id[u]).collect();
            adjacency[new_id[old]].sort_unstable();
        }
        Tree { adjacency }
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical::canonical_form(self)
    }

    pub fn canonical_labeling(&self) -> CanonicalLabeling {
        canonical::canonical_labeling(self)
    }

    /// Isomorphic copy whose vertex ids follow the canonical traversal order.
    pub fn canonical_relabel(&self) -> Tree {
        let labeling = self.canonical_labeling();
        let mut new_id = vec![0; self.vertex_count()];
        for (pos, &v) in labeling.order.iter().enumerate() {
            new_id[v] = pos;
        }
        self.relabel(&new_id)
    }

    pub fn is_isomorphic(&self, other: &Tree) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.canonical_form() == other.canonical_form()
    }

    /// An isomorphism `self -> other` as a vertex map, if one exists.
    pub fn isomorphism_to(&self, other: &Tree) -> Option<Vec<Vertex>> {
        let a = self.canonical_labeling();
        let b = other.canonical_labeling();
        if a.form != b.form {
            return None;
        }
        let mut map = vec![0; self.vertex_count()];
        for (&x, &y) in a.order.iter().zip(&b.order) {
            map[x] = y;
        }
        Some(map)
    }

    /// Swap out edge `remove` for `add`, re-validating the result.
    pub(crate) fn with_edges_replaced(
        &self,
        remove: &[(Vertex, Vertex)],
        add: &[(Vertex, Vertex)],
    ) -> Result<Tree, TreeError> {
        let norm = |(a, b): (Vertex, Vertex)| (a.min(b), a.max(b));
        let drop: Vec<_> = remove.iter().copied().map(norm).collect();
        let mut edges: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|e| !drop.contains(e))
            .collect();
        edges.extend(add.iter().copied().map(norm));
        Tree::from_edges(self.vertex_count(), &edges)
    }
}

/// A branch `B_{vu}` of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub root: Vertex,
    pub gateway: Vertex,
    /// Sorted vertex ids, `root` included.
    pub vertices: Vec<Vertex>,
    /// Number of vertices in the branch that are non-pendant in the whole tree.
    pub length: usize,
}

impl Branch {
    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// The bud of the branch (the non-pendant vertex with `d* = 1`), if unique.
    pub fn bud(&self, tree: &Tree) -> Option<Vertex> {
        let mut buds = self
            .vertices
            .iter()
            .copied()
            .filter(|&x| tree.degree(x) >= 2 && tree.star_degree(x) == 1);
        let first = buds.next()?;
        buds.next().is_none().then_some(first)
    }

    /// Non-pendant vertices from the gateway out to the bud, for branches
    /// whose non-pendant part beyond the root is a path.
    pub fn arm(&self, tree: &Tree) -> Option<Vec<Vertex>> {
        let mut arm = vec![self.gateway];
        if tree.is_pendant(self.gateway) {
            return None;
        }
        let mut prev = self.root;
        let mut cur = self.gateway;
        loop {
            let mut next = tree
                .neighbors(cur)
                .iter()
                .copied()
                .filter(|&u| u != prev && !tree.is_pendant(u));
            match (next.next(), next.next()) {
                (None, _) => return Some(arm),
                (Some(u), None) => {
                    arm.push(u);
                    prev = cur;
                    cur = u;
                }
                _ => return None,
            }
        }
    }
}
