//! AHU encoding of free trees.
//!
//! A rooted tree is encoded as `1 <children codes, sorted> 0`; a free tree
//! takes the smaller code over its one or two centers. `K_1` encodes to
//! `[1, 0]`, which is the least code of any tree.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{Tree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bits(&self) -> &[u8] {
        &self.0
    }
}

/// `(` for 1, `)` for 0.
impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .0
            .iter()
            .map(|&b| if b == 1 { '(' } else { ')' })
            .collect();
        f.write_str(&s)
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A canonical code plus the traversal order that realizes it. Two trees
/// with equal forms are mapped onto each other by pairing `order` entries.
#[derive(Debug, Clone)]
pub struct CanonicalLabeling {
    pub form: CanonicalForm,
    pub root: Vertex,
    pub order: Vec<Vertex>,
}

pub(super) fn canonical_form(tree: &Tree) -> CanonicalForm {
    canonical_labeling(tree).form
}

pub(super) fn canonical_labeling(tree: &Tree) -> CanonicalLabeling {
    tree.centers()
        .into_iter()
        .map(|c| rooted_labeling(tree, c))
        .min_by(|a, b| a.form.cmp(&b.form))
        .expect("every tree has a center")
}

fn rooted_labeling(tree: &Tree, root: Vertex) -> CanonicalLabeling {
    let n = tree.vertex_count();
    let parent = tree.parents(root);
    let bfs = tree.bfs_order(root);
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
    let mut sorted_children: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &v in bfs.iter().rev() {
        let mut children: Vec<Vertex> = tree
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| parent[v] != Some(u))
            .collect();
        children.sort_by(|&a, &b| codes[a].cmp(&codes[b]).then(a.cmp(&b)));
        let mut code =
            Vec::with_capacity(2 + children.iter().map(|&c| codes[c].len()).sum::<usize>());
        code.push(1);
        for &c in &children {
            code.extend_from_slice(&codes[c]);
        }
        code.push(0);
        codes[v] = code;
        sorted_children[v] = children;
    }
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        order.push(v);
        stack.extend(sorted_children[v].iter().rev());
    }
    CanonicalLabeling {
        form: CanonicalForm(std::mem::take(&mut codes[root])),
        root,
        order,
    }
}
