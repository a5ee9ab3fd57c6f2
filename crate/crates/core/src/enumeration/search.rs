use rayon::prelude::*;
use serde::Serialize;

use super::{enumerate_trees, EnumerationError};
use crate::spectral::{perron, refined_spectral_radius};
use crate::tree::format::sig17;
use crate::tree::{CanonicalForm, DegreeSequence, Tree};

/// First-stage window around the smallest index.
pub const DEFAULT_TIE_TOL: f64 = 1e-9;
/// Largest order searched unless the caller raises it.
pub const DEFAULT_MAX_ORDER: usize = 22;
/// Second-stage window, applied to refined indices.
const REFINED_TIE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub tie_tol: f64,
    /// Worker threads; 0 or 1 runs on the calling thread.
    pub jobs: usize,
    pub max_order: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            tie_tol: DEFAULT_TIE_TOL,
            jobs: 1,
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

/// Structural flags reported for each extremal tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Observations {
    pub is_caterpillar: bool,
    /// Caterpillar: both trunk ends have the largest trunk degree. Otherwise:
    /// in every proper branch the bud has the largest degree.
    pub buds_have_max_branch_degree: bool,
    /// Caterpillar: trunk degrees fall then rise. Otherwise: degrees never
    /// fall walking out along any proper branch.
    pub trunk_degrees_monotone: bool,
}

fn valley(degrees: &[usize]) -> bool {
    let mut rising = false;
    for w in degrees.windows(2) {
        if w[1] > w[0] {
            rising = true;
        } else if w[1] < w[0] && rising {
            return false;
        }
    }
    true
}

pub fn observe(t: &Tree) -> Observations {
    if let Some(trunk) = t.trunk() {
        let degrees: Vec<usize> = trunk.iter().map(|&v| t.degree(v)).collect();
        let max = degrees.iter().copied().max().unwrap_or(0);
        let ends_max =
            degrees.first().is_none_or(|&d| d == max) && degrees.last().is_none_or(|&d| d == max);
        return Observations {
            is_caterpillar: true,
            buds_have_max_branch_degree: ends_max,
            trunk_degrees_monotone: valley(&degrees),
        };
    }
    let mut buds_max = true;
    let mut monotone = true;
    for v in t.branching_points() {
        for b in t.proper_branches(v).expect("branching point") {
            let arm = b.arm(t).expect("a proper branch is a path beyond its root");
            let degrees: Vec<usize> = arm.iter().map(|&x| t.degree(x)).collect();
            let bud = *degrees.last().expect("non-empty arm");
            buds_max &= degrees.iter().all(|&d| d <= bud);
            monotone &= degrees.windows(2).all(|w| w[0] <= w[1]);
        }
    }
    Observations {
        is_caterpillar: false,
        buds_have_max_branch_degree: buds_max,
        trunk_degrees_monotone: monotone,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Minimizer {
    pub canonical: CanonicalForm,
    pub mu: f64,
    pub tree: Tree,
    pub observations: Observations,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub pi: DegreeSequence,
    pub tree_count: usize,
    pub min_mu: f64,
    pub minimizers: Vec<Minimizer>,
    /// Smallest index outside the minimizer set.
    pub runner_up_mu: Option<f64>,
    /// `runner_up_mu - min_mu`.
    pub gap: Option<f64>,
    pub all_caterpillars: bool,
    pub unique: bool,
}

impl SearchReport {
    /// One header line and one row per minimizer.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("canonical_code,mu,is_caterpillar,buds_max_degree,trunk_monotone\n");
        for m in &self.minimizers {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                m.canonical,
                sig17(m.mu),
                m.observations.is_caterpillar,
                m.observations.buds_have_max_branch_degree,
                m.observations.trunk_degrees_monotone
            ));
        }
        out
    }
}

fn with_pool<T: Send>(jobs: usize, work: impl FnOnce() -> T + Send) -> Result<T, EnumerationError> {
    if jobs <= 1 {
        return Ok(work());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| EnumerationError::Pool(e.to_string()))?;
    Ok(pool.install(work))
}

fn indices(trees: &[Tree], jobs: usize) -> Result<Vec<f64>, EnumerationError> {
    let one = |t: &Tree| perron(t).map(|r| r.mu);
    let mus: Result<Vec<f64>, _> = if jobs <= 1 {
        trees.iter().map(one).collect()
    } else {
        with_pool(jobs, || trees.par_iter().map(one).collect())?
    };
    Ok(mus?)
}

/// Indices of the extremal trees: a first pass keeps everything within
/// `tie_tol` of the extreme, a refined pass splits what float noise cannot.
/// `sign = 1` selects minima, `-1` maxima.
fn extremal(
    trees: &[Tree],
    mus: &[f64],
    tie_tol: f64,
    sign: f64,
) -> Result<Vec<(usize, f64)>, EnumerationError> {
    let best = mus.iter().map(|&m| sign * m).fold(f64::INFINITY, f64::min);
    let mut refined = Vec::new();
    for (i, &m) in mus.iter().enumerate() {
        if sign * m <= best + tie_tol {
            refined.push((i, refined_spectral_radius(&trees[i])?));
        }
    }
    let best = refined
        .iter()
        .map(|&(_, m)| sign * m)
        .fold(f64::INFINITY, f64::min);
    Ok(refined
        .into_iter()
        .filter(|&(_, m)| sign * m <= best + REFINED_TIE)
        .collect())
}

fn check_scale(pi: &DegreeSequence, options: &SearchOptions) -> Result<(), EnumerationError> {
    if pi.order() > options.max_order {
        return Err(EnumerationError::ScaleGuard {
            n: pi.order(),
            limit: options.max_order,
        });
    }
    Ok(())
}

/// All trees of smallest index with degree sequence `pi`.
pub fn find_minimizers(
    pi: &DegreeSequence,
    options: &SearchOptions,
) -> Result<SearchReport, EnumerationError> {
    check_scale(pi, options)?;
    let trees = enumerate_trees(pi);
    let mus = indices(&trees, options.jobs)?;
    let winners = extremal(&trees, &mus, options.tie_tol, 1.0)?;
    let min_mu = winners
        .iter()
        .map(|&(_, m)| m)
        .fold(f64::INFINITY, f64::min);
    let runner_up_mu = mus
        .iter()
        .enumerate()
        .filter(|(i, _)| !winners.iter().any(|(w, _)| w == i))
        .map(|(_, &m)| m)
        .reduce(f64::min);
    let minimizers: Vec<Minimizer> = winners
        .iter()
        .map(|&(i, mu)| Minimizer {
            canonical: trees[i].canonical_form(),
            mu,
            tree: trees[i].clone(),
            observations: observe(&trees[i]),
        })
        .collect();
    Ok(SearchReport {
        pi: pi.clone(),
        tree_count: trees.len(),
        min_mu,
        all_caterpillars: minimizers.iter().all(|m| m.observations.is_caterpillar),
        unique: minimizers.len() == 1,
        runner_up_mu,
        gap: runner_up_mu.map(|r| r - min_mu),
        minimizers,
    })
}

/// All trees of largest index with degree sequence `pi`.
pub fn maximal_also(
    pi: &DegreeSequence,
    options: &SearchOptions,
) -> Result<Vec<Tree>, EnumerationError> {
    check_scale(pi, options)?;
    let trees = enumerate_trees(pi);
    let mus = indices(&trees, options.jobs)?;
    Ok(extremal(&trees, &mus, options.tie_tol, -1.0)?
        .into_iter()
        .map(|(i, _)| trees[i].clone())
        .collect())
}
