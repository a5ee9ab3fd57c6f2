use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Tree, TreeError};

/// A degree sequence, stored non-increasing.
///
/// The single-vertex tree has the sequence `(0)`; every other realizable
/// sequence has positive entries summing to `2(n - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DegreeSequence {
    degrees: Vec<usize>,
}

impl DegreeSequence {
    /// Sorts and validates: non-empty, positive entries (except `(0)`), and
    /// a degree sum of `2(n - 1)`.
    pub fn new(mut degrees: Vec<usize>) -> Result<Self, TreeError> {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        if degrees.is_empty() {
            return Err(TreeError::DegreeSequence("empty sequence".into()));
        }
        if degrees == [0] {
            return Ok(DegreeSequence { degrees });
        }
        if degrees.contains(&0) {
            return Err(TreeError::DegreeSequence(
                "zero degree in a tree with more than one vertex".into(),
            ));
        }
        let n = degrees.len();
        let sum: usize = degrees.iter().sum();
        if sum != 2 * (n - 1) {
            return Err(TreeError::DegreeSequence(format!(
                "degree sum {sum} != 2(n-1) = {} for n = {n}",
                2 * (n - 1)
            )));
        }
        Ok(DegreeSequence { degrees })
    }

    /// `(d^k, 1^(n-k))` with `k = (n-2)/(d-1)`.
    pub fn semiregular(d: usize, n: usize) -> Result<Self, TreeError> {
        let k = semiregular_internal_count(d, n)?;
        let mut degrees = vec![d; k];
        degrees.resize(n, 1);
        if n == 2 {
            degrees = vec![1, 1];
        }
        Self::new(degrees)
    }

    pub(crate) fn from_tree(tree: &Tree) -> Self {
        let mut degrees = tree.degrees();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence { degrees }
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn order(&self) -> usize {
        self.degrees.len()
    }

    /// Degrees of the non-pendant vertices, non-increasing.
    pub fn internal_degrees(&self) -> &[usize] {
        let k = self.degrees.iter().take_while(|&&d| d >= 2).count();
        &self.degrees[..k]
    }

    pub fn leaf_count(&self) -> usize {
        self.degrees.iter().filter(|&&d| d == 1).count()
    }

    /// Every entry is `d` or `1`.
    pub fn is_semiregular(&self, d: usize) -> bool {
        self.degrees.iter().all(|&e| e == d || e == 1)
    }
}

/// Number of non-pendant vertices of a tree in T(d, n), or the class-empty error.
pub(crate) fn semiregular_internal_count(d: usize, n: usize) -> Result<usize, TreeError> {
    if d < 3 || n < 2 || !(n - 2).is_multiple_of(d - 1) {
        return Err(TreeError::EmptyClass { d, n });
    }
    Ok((n - 2) / (d - 1))
}

impl TryFrom<Vec<usize>> for DegreeSequence {
    type Error = TreeError;

    fn try_from(v: Vec<usize>) -> Result<Self, TreeError> {
        DegreeSequence::new(v)
    }
}

impl From<DegreeSequence> for Vec<usize> {
    fn from(d: DegreeSequence) -> Self {
        d.degrees
    }
}

/// Compact form: `4^4,3^2,2,1^12`.
impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.degrees.len() {
            let d = self.degrees[i];
            let run = self.degrees[i..].iter().take_while(|&&e| e == d).count();
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{d}")?;
            } else {
                write!(f, "{d}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Accepts expanded (`3,3,1,1,1,1`) and compact (`3^2,1^4`, also `1×4` or
/// `1x4`) forms, mixed freely.
impl FromStr for DegreeSequence {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, TreeError> {
        let bad = |tok: &str| TreeError::DegreeSequence(format!("cannot parse '{tok}'"));
        let mut degrees = Vec::new();
        for tok in s.split(',').map(str::trim) {
            let (base, count) = match tok.split_once(['^', '×', 'x']) {
                Some((b, c)) => (b.trim(), c.trim().parse::<usize>().map_err(|_| bad(tok))?),
                None => (tok, 1),
            };
            let base: usize = base.parse().map_err(|_| bad(tok))?;
            degrees.extend(std::iter::repeat_n(base, count));
        }
        DegreeSequence::new(degrees)
    }
}
