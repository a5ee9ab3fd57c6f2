//! Index (adjacency spectral radius), Perron vector, Rayleigh quotients and
//! the valuation predicates used by the perturbation arguments.
//!
//! The Perron vector is found by power iteration on `A + cI` with `c` the
//! maximum degree. The shift matters: trees are bipartite, so `-mu` is an
//! eigenvalue with the same modulus as `mu`. If the residual has not dropped
//! below tolerance after half of the iteration budget, the solver switches
//! to shifted inverse iteration, solving `(sigma I - A) y = x` exactly on the
//! tree with `sigma` just above the Collatz-Wielandt upper bound.

mod precision;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{Tree, Vertex};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 100_000;
/// Residual target of [`refined_spectral_radius`].
pub const REFINED_TOL: f64 = 1e-14;
/// Tolerance for `sum f^2 = 1` checks.
pub const NORMALIZATION_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("valuation is identically zero")]
    ZeroVector,
    #[error("valuation has {got} entries but the tree has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("valuation is not normalized (sum of squares {0})")]
    NotNormalized(f64),
    #[error("valuation is not positive")]
    NotPositive,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("power iteration did not converge: residual {} after {} iterations", .last.residual, .last.iterations)]
    NotConverged { last: Box<SpectralResult> },
    #[error("tree is not a caterpillar")]
    NotCaterpillar,
    #[error("tree is not {0}-semiregular")]
    NotSemiregular(usize),
}

/// A real valuation of the vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexFunction(pub Vec<f64>);

impl VertexFunction {
    pub fn constant(n: usize, value: f64) -> Self {
        VertexFunction(vec![value; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x > 0.0)
    }

    pub fn is_normalized(&self) -> bool {
        (self.0.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() <= NORMALIZATION_TOL
    }

    pub fn normalized(&self) -> Result<Self, SpectralError> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(SpectralError::ZeroVector);
        }
        Ok(VertexFunction(self.0.iter().map(|x| x / norm).collect()))
    }

    pub fn scaled(&self, c: f64) -> Self {
        VertexFunction(self.0.iter().map(|x| c * x).collect())
    }

    /// Lowest-id vertex attaining the maximum.
    pub fn argmax(&self) -> Vertex {
        let mut best = 0;
        for (v, &x) in self.0.iter().enumerate() {
            if x > self.0[best] {
                best = v;
            }
        }
        best
    }

    /// All vertices attaining the maximum exactly.
    pub fn maximizers(&self) -> Vec<Vertex> {
        let max = self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (0..self.0.len()).filter(|&v| self.0[v] == max).collect()
    }

    /// Values sorted ascending (the multiset of values).
    pub fn sorted_values(&self) -> Vec<f64> {
        let mut v = self.0.clone();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Pull back along a vertex map: `result[x] = self[map[x]]`.
    pub fn pull_back(&self, map: &[Vertex]) -> Self {
        VertexFunction(map.iter().map(|&y| self.0[y]).collect())
    }

    /// Push forward along a bijection: `result[map[x]] = self[x]`.
    pub fn push_forward(&self, map: &[Vertex]) -> Self {
        let mut out = vec![0.0; self.0.len()];
        for (x, &y) in map.iter().enumerate() {
            out[y] = self.0[x];
        }
        VertexFunction(out)
    }
}

impl std::ops::Index<Vertex> for VertexFunction {
    type Output = f64;
    fn index(&self, v: Vertex) -> &f64 {
        &self.0[v]
    }
}

/// Index, Perron vector and convergence data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub mu: f64,
    pub perron: VertexFunction,
    pub residual: f64,
    pub iterations: usize,
}

fn check_len(tree: &Tree, f: &VertexFunction) -> Result<(), SpectralError> {
    if f.len() != tree.vertex_count() {
        return Err(SpectralError::LengthMismatch {
            expected: tree.vertex_count(),
            got: f.len(),
        });
    }
    Ok(())
}

fn adjacency_apply(tree: &Tree, x: &[f64]) -> Vec<f64> {
    tree.vertices()
        .map(|v| tree.neighbors(v).iter().map(|&u| x[u]).sum())
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize_in_place(x: &mut [f64]) {
    let norm = dot(x, x).sqrt();
    for v in x.iter_mut() {
        *v /= norm;
    }
}

/// `2 sum_{uv in E} f(u) f(v)`, the numerator of the Rayleigh quotient.
pub fn quadratic_form(tree: &Tree, f: &VertexFunction) -> f64 {
    2.0 * tree
        .edges()
        .into_iter()
        .map(|(u, v)| f[u] * f[v])
        .sum::<f64>()
}

/// `<Af, f> / <f, f>`.
pub fn rayleigh_quotient(tree: &Tree, f: &VertexFunction) -> Result<f64, SpectralError> {
    check_len(tree, f)?;
    let den = dot(&f.0, &f.0);
    if den == 0.0 {
        return Err(SpectralError::ZeroVector);
    }
    Ok(quadratic_form(tree, f) / den)
}

/// Max over vertices of `|mu f(v) - sum_{u~v} f(u)|`.
pub fn eigen_residual(tree: &Tree, mu: f64, f: &VertexFunction) -> f64 {
    let af = adjacency_apply(tree, &f.0);
    f.0.iter()
        .zip(&af)
        .map(|(x, y)| (mu * x - y).abs())
        .fold(0.0, f64::max)
}

/// Upper bound `max_v (Ax)_v / x_v >= mu` for positive `x`.
fn collatz_wielandt_upper(x: &[f64], ax: &[f64]) -> f64 {
    x.iter()
        .zip(ax)
        .map(|(a, b)| b / a)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Solves `(sigma I - A) y = rhs` by leaf-to-root elimination. Returns `None`
/// when a pivot is not positive, i.e. `sigma` is not above the index.
fn solve_shifted(
    order: &[Vertex],
    parent: &[Option<Vertex>],
    tree: &Tree,
    sigma: f64,
    rhs: &[f64],
) -> Option<Vec<f64>> {
    let n = order.len();
    let mut pivot = vec![sigma; n];
    let mut reduced = rhs.to_vec();
    for &v in order.iter().rev() {
        for &c in tree.neighbors(v) {
            if parent[v] == Some(c) {
                continue;
            }
            pivot[v] -= 1.0 / pivot[c];
            reduced[v] += reduced[c] / pivot[c];
        }
        if pivot[v].is_nan() || pivot[v] <= 0.0 || !pivot[v].is_finite() {
            return None;
        }
    }
    let mut y = vec![0.0; n];
    for &v in order {
        let up = parent[v].map_or(0.0, |p| y[p]);
        y[v] = (reduced[v] + up) / pivot[v];
    }
    y.iter().all(|x| x.is_finite() && *x > 0.0).then_some(y)
}

struct InverseStepper {
    order: Vec<Vertex>,
    parent: Vec<Option<Vertex>>,
}

impl InverseStepper {
    fn new(tree: &Tree) -> Self {
        InverseStepper {
            order: tree.bfs_order(0),
            parent: tree.parents(0),
        }
    }

    /// One inverse-iteration step from positive `x` with `ax = A x`.
    fn step(&self, tree: &Tree, x: &[f64], ax: &[f64], rel_margin: f64) -> Option<Vec<f64>> {
        let upper = collatz_wielandt_upper(x, ax);
        let mut margin = upper * rel_margin;
        for _ in 0..60 {
            if let Some(mut y) = solve_shifted(&self.order, &self.parent, tree, upper + margin, x) {
                normalize_in_place(&mut y);
                return Some(y);
            }
            margin *= 4.0;
        }
        None
    }
}

fn trivial_result(tree: &Tree) -> Option<SpectralResult> {
    match tree.vertex_count() {
        1 => Some(SpectralResult {
            mu: 0.0,
            perron: VertexFunction(vec![1.0]),
            residual: 0.0,
            iterations: 0,
        }),
        2 => Some(SpectralResult {
            mu: 1.0,
            perron: VertexFunction(vec![std::f64::consts::FRAC_1_SQRT_2; 2]),
            residual: 0.0,
            iterations: 0,
        }),
        _ => None,
    }
}

/// Index `mu(G)` and the Perron vector of a tree.
///
/// Converged means the eigenvalue-equation residual of the returned unit
/// vector is at most `tol`. `K_1` and `K_2` return `mu = 0` and `mu = 1`
/// without iterating.
pub fn spectral_radius(
    tree: &Tree,
    tol: f64,
    max_iter: usize,
) -> Result<SpectralResult, SpectralError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(SpectralError::BadTolerance(tol));
    }
    if let Some(r) = trivial_result(tree) {
        return Ok(r);
    }
    let n = tree.vertex_count();
    let shift = tree.max_degree() as f64;
    let switch_at = max_iter / 2;
    let mut stepper: Option<InverseStepper> = None;
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut last = None;
    for it in 1..=max_iter {
        let ax = adjacency_apply(tree, &x);
        let mu = dot(&x, &ax);
        let residual = x
            .iter()
            .zip(&ax)
            .map(|(a, b)| (mu * a - b).abs())
            .fold(0.0, f64::max);
        if residual <= tol {
            return Ok(SpectralResult {
                mu,
                perron: VertexFunction(x),
                residual,
                iterations: it,
            });
        }
        let next = if it <= switch_at {
            let mut y: Vec<f64> = ax.iter().zip(&x).map(|(a, b)| a + shift * b).collect();
            normalize_in_place(&mut y);
            Some(y)
        } else {
            let s = stepper.get_or_insert_with(|| InverseStepper::new(tree));
            s.step(tree, &x, &ax, 1e-12)
        };
        last = Some(SpectralResult {
            mu,
            perron: VertexFunction(x.clone()),
            residual,
            iterations: it,
        });
        match next {
            Some(y) => x = y,
            None => break,
        }
    }
    let last = last.unwrap_or(SpectralResult {
        mu: f64::NAN,
        perron: VertexFunction(x),
        residual: f64::INFINITY,
        iterations: 0,
    });
    Err(SpectralError::NotConverged {
        last: Box::new(last),
    })
}

/// [`spectral_radius`] with the default tolerance and iteration budget.
pub fn perron(tree: &Tree) -> Result<SpectralResult, SpectralError> {
    spectral_radius(tree, DEFAULT_TOL, DEFAULT_MAX_ITER)
}

/// The index resolved to near machine precision: the default solution is
/// polished by shifted inverse iteration until its residual is at most
/// [`REFINED_TOL`] (or stops improving), and the Rayleigh quotient is
/// evaluated with double-double accumulation.
pub fn refined_spectral_radius(tree: &Tree) -> Result<f64, SpectralError> {
    let base = perron(tree)?;
    if tree.vertex_count() <= 2 {
        return Ok(base.mu);
    }
    let stepper = InverseStepper::new(tree);
    let mut x = base.perron.0;
    let mut best = (base.residual, x.clone());
    for _ in 0..8 {
        let ax = adjacency_apply(tree, &x);
        let mu = dot(&x, &ax);
        let residual = x
            .iter()
            .zip(&ax)
            .map(|(a, b)| (mu * a - b).abs())
            .fold(0.0, f64::max);
        if residual < best.0 {
            best = (residual, x.clone());
        }
        if residual <= REFINED_TOL {
            break;
        }
        match stepper.step(tree, &x, &ax, 1e-13) {
            Some(y) => x = y,
            None => break,
        }
    }
    Ok(precision::rayleigh_dd(tree, &best.1))
}

/// Outcome of comparing `mu(G)` with `2 sum f(u) f(v)` for a unit positive `f`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerronBound {
    /// `2 sum_{uv} f(u) f(v)`.
    pub form: f64,
    /// `mu >= form - tol`.
    pub holds: bool,
    /// `|mu - form| <= tol`.
    pub equality: bool,
    /// Euclidean distance from `f` to the Perron vector.
    pub distance_to_perron: f64,
}

pub fn perron_bound_check(
    tree: &Tree,
    f: &VertexFunction,
    result: &SpectralResult,
    tol: f64,
) -> Result<PerronBound, SpectralError> {
    check_len(tree, f)?;
    if !f.is_positive() {
        return Err(SpectralError::NotPositive);
    }
    if !f.is_normalized() {
        return Err(SpectralError::NotNormalized(dot(&f.0, &f.0)));
    }
    let form = quadratic_form(tree, f);
    let distance_to_perron =
        f.0.iter()
            .zip(&result.perron.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
    Ok(PerronBound {
        form,
        holds: result.mu >= form - tol,
        equality: (result.mu - form).abs() <= tol,
        distance_to_perron,
    })
}

/// Unimodality with maximum `v_hat`: `f` positive, non-increasing along
/// every path leaving `v_hat`, and strictly decreasing on every edge except
/// possibly a single edge incident to `v_hat`. Values within `tol` count as
/// equal; `tol = 0` compares exactly.
pub fn is_unimodal(tree: &Tree, f: &VertexFunction, v_hat: Vertex, tol: f64) -> bool {
    if f.len() != tree.vertex_count() || v_hat >= f.len() || !f.is_positive() {
        return false;
    }
    let parent = tree.parents(v_hat);
    let mut flat = 0;
    for v in tree.vertices() {
        let Some(p) = parent[v] else { continue };
        let rise = f[v] - f[p];
        if rise > tol {
            return false;
        }
        if rise.abs() <= tol {
            if p != v_hat {
                return false;
            }
            flat += 1;
        }
    }
    flat <= 1
}

/// Every pendant vertex has a strictly smaller Perron entry than its neighbor.
/// Fails on `K_2`, whose two entries are equal.
pub fn pendant_minima_check(tree: &Tree, result: &SpectralResult) -> bool {
    tree.pendant_vertices().into_iter().all(|v| {
        let u = tree.neighbors(v)[0];
        result.perron[v] < result.perron[u]
    })
}

/// The symmetry center of a caterpillar's trunk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Center {
    Vertex(Vertex),
    Edge(Vertex, Vertex),
}

impl Center {
    /// Trunk vertices at the center: one for a central vertex, two for an edge.
    pub fn vertices(&self) -> Vec<Vertex> {
        match *self {
            Center::Vertex(v) => vec![v],
            Center::Edge(a, b) => vec![a, b],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaterpillarSymmetry {
    pub symmetric: bool,
    pub center: Center,
    /// Largest difference between mirrored values.
    pub max_deviation: f64,
}

/// Central vertex or edge of a caterpillar's trunk.
pub fn trunk_center(tree: &Tree) -> Result<Center, SpectralError> {
    let trunk = tree.trunk().ok_or(SpectralError::NotCaterpillar)?;
    let k = trunk.len();
    Ok(match k {
        0 if tree.vertex_count() == 1 => Center::Vertex(0),
        0 => Center::Edge(0, 1),
        _ if k % 2 == 1 => Center::Vertex(trunk[k / 2]),
        _ => Center::Edge(trunk[k / 2 - 1], trunk[k / 2]),
    })
}

fn pendant_values(tree: &Tree, f: &VertexFunction, v: Vertex) -> Vec<f64> {
    let mut vals: Vec<f64> = tree
        .neighbors(v)
        .iter()
        .filter(|&&u| tree.is_pendant(u))
        .map(|&u| f[u])
        .collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Whether the Perron vector is invariant (within `tol`) under reversing
/// the trunk, together with the trunk center.
pub fn caterpillar_symmetry_check(
    tree: &Tree,
    result: &SpectralResult,
    tol: f64,
) -> Result<CaterpillarSymmetry, SpectralError> {
    let center = trunk_center(tree)?;
    let trunk = tree.trunk().ok_or(SpectralError::NotCaterpillar)?;
    let f = &result.perron;
    let mut dev: f64 = 0.0;
    let mut shape_ok = true;
    if trunk.is_empty() {
        if tree.vertex_count() == 2 {
            dev = (f[0] - f[1]).abs();
        }
    } else {
        let k = trunk.len();
        for i in 0..k {
            let (a, b) = (trunk[i], trunk[k - 1 - i]);
            dev = dev.max((f[a] - f[b]).abs());
            let (pa, pb) = (pendant_values(tree, f, a), pendant_values(tree, f, b));
            if pa.len() != pb.len() {
                shape_ok = false;
                continue;
            }
            for (x, y) in pa.iter().zip(&pb) {
                dev = dev.max((x - y).abs());
            }
        }
    }
    Ok(CaterpillarSymmetry {
        symmetric: shape_ok && dev <= tol,
        center,
        max_deviation: dev,
    })
}

/// Averages `f` over the trunk reversal and over pendant vertices sharing a
/// trunk vertex, so that values related by these automorphisms are equal
/// bit for bit. Requires a caterpillar whose leaf counts are palindromic.
pub fn symmetrize_caterpillar(
    tree: &Tree,
    f: &VertexFunction,
) -> Result<VertexFunction, SpectralError> {
    check_len(tree, f)?;
    let trunk = tree.trunk().ok_or(SpectralError::NotCaterpillar)?;
    let mut out = f.clone();
    if trunk.is_empty() {
        let mean = f.0.iter().sum::<f64>() / f.len() as f64;
        return Ok(VertexFunction::constant(f.len(), mean));
    }
    let k = trunk.len();
    let pendants = |v: Vertex| -> Vec<Vertex> {
        tree.neighbors(v)
            .iter()
            .copied()
            .filter(|&u| tree.is_pendant(u))
            .collect()
    };
    for i in 0..k.div_ceil(2) {
        let (a, b) = (trunk[i], trunk[k - 1 - i]);
        let mean = 0.5 * (f[a] + f[b]);
        out.0[a] = mean;
        out.0[b] = mean;
        let mut orbit = pendants(a);
        if a != b {
            let other = pendants(b);
            if other.len() != orbit.len() {
                return Err(SpectralError::NotCaterpillar);
            }
            orbit.extend(other);
        }
        if !orbit.is_empty() {
            let pm = orbit.iter().map(|&p| f[p]).sum::<f64>() / orbit.len() as f64;
            for p in orbit {
                out.0[p] = pm;
            }
        }
    }
    Ok(out)
}

/// `mu - (d-2)/mu`, the coefficient of the trunk recurrence of `C_{d,n}`.
pub fn trunk_coefficient(mu: f64, d: usize) -> f64 {
    mu - (d as f64 - 2.0) / mu
}

/// Max over trunk vertices `v_i` of
/// `|(mu - (d-2)/mu) f(v_i) - f(v_{i-1}) - f(v_{i+1})|`, where the missing
/// neighbors of the two trunk ends are pendant vertices.
pub fn trunk_recurrence_residual(
    tree: &Tree,
    result: &SpectralResult,
    d: usize,
) -> Result<f64, SpectralError> {
    if !tree.is_semiregular(d) {
        return Err(SpectralError::NotSemiregular(d));
    }
    let trunk = tree.trunk().ok_or(SpectralError::NotCaterpillar)?;
    if trunk.is_empty() {
        return Err(SpectralError::NotCaterpillar);
    }
    let f = &result.perron;
    let coef = trunk_coefficient(result.mu, d);
    let k = trunk.len();
    let end_neighbor = |v: Vertex| {
        let p = tree
            .first_pendant_neighbor(v)
            .expect("trunk end has a pendant");
        f[p]
    };
    let mut worst: f64 = 0.0;
    for i in 0..k {
        let prev = if i > 0 {
            f[trunk[i - 1]]
        } else {
            end_neighbor(trunk[0])
        };
        let next = if i + 1 < k {
            f[trunk[i + 1]]
        } else {
            end_neighbor(trunk[k - 1])
        };
        worst = worst.max((coef * f[trunk[i]] - prev - next).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::families::{caterpillar, mixed_degree_minimizers, path, star};

    #[test]
    fn rayleigh_quotient_examples() {
        let k2 = path(2);
        assert_eq!(
            rayleigh_quotient(&k2, &VertexFunction(vec![1.0, 1.0])).unwrap(),
            1.0
        );
        let p3 = path(3);
        let r = rayleigh_quotient(&p3, &VertexFunction(vec![1.0; 3])).unwrap();
        assert!((r - 4.0 / 3.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let r = rayleigh_quotient(&p3, &VertexFunction(vec![0.5, h, 0.5])).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(
            rayleigh_quotient(&p3, &VertexFunction(vec![0.0; 3])),
            Err(SpectralError::ZeroVector)
        );
        assert!(matches!(
            rayleigh_quotient(&p3, &VertexFunction(vec![1.0; 2])),
            Err(SpectralError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn closed_forms() {
        let p4 = perron(&path(4)).unwrap();
        assert!((p4.mu - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((perron(&star(4)).unwrap().mu - 2.0).abs() < 1e-12);
        let g = perron(&mixed_degree_minimizers()[0]).unwrap();
        assert!((g.mu - 6f64.sqrt()).abs() < 1e-11);
        assert!(g.residual <= DEFAULT_TOL);
        assert!(g.perron.is_positive() && g.perron.is_normalized());
    }

    #[test]
    fn degenerate_trees() {
        let k1 = perron(&Tree::singleton()).unwrap();
        assert_eq!((k1.mu, k1.perron.0.clone()), (0.0, vec![1.0]));
        let k2 = perron(&path(2)).unwrap();
        assert_eq!(k2.mu, 1.0);
        assert!(!pendant_minima_check(&path(2), &k2));
        assert!(pendant_minima_check(&Tree::singleton(), &k1));
    }

    #[test]
    fn inverse_iteration_fallback() {
        // budget too small for power iteration alone on a long path
        let p = path(50);
        let exact = 2.0 * (std::f64::consts::PI / 51.0).cos();
        let r = spectral_radius(&p, 1e-12, 40).unwrap();
        assert!(r.iterations > 20);
        assert!((r.mu - exact).abs() < 1e-12);
        assert!(r.perron.is_positive());
        let err = spectral_radius(&p, 1e-12, 4).unwrap_err();
        match err {
            SpectralError::NotConverged { last } => {
                assert!(last.residual > 1e-12);
                assert_eq!(last.iterations, 4);
            }
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            spectral_radius(&p, 0.0, 10),
            Err(SpectralError::BadTolerance(_))
        ));
    }

    #[test]
    fn refined_radius_agrees() {
        let g = &mixed_degree_minimizers();
        for t in g {
            let r = refined_spectral_radius(t).unwrap();
            assert!((r - 6f64.sqrt()).abs() < 1e-15, "{r}");
        }
        let r = refined_spectral_radius(&path(7)).unwrap();
        assert!((r - 2.0 * (std::f64::consts::PI / 8.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn perron_bound() {
        let p3 = path(3);
        let res = perron(&p3).unwrap();
        let eq = perron_bound_check(&p3, &res.perron, &res, 1e-10).unwrap();
        assert!(eq.holds && eq.equality);
        assert!(eq.distance_to_perron < 1e-12);
        let ones = VertexFunction(vec![1.0; 3]).normalized().unwrap();
        let lt = perron_bound_check(&p3, &ones, &res, 1e-10).unwrap();
        assert!(lt.holds && !lt.equality);
        assert!((lt.form - 4.0 / 3.0).abs() < 1e-15);
        assert!(matches!(
            perron_bound_check(&p3, &VertexFunction(vec![1.0; 3]), &res, 1e-10),
            Err(SpectralError::NotNormalized(_))
        ));
        assert!(matches!(
            perron_bound_check(&p3, &VertexFunction(vec![1.0, 0.0, 0.0]), &res, 1e-10),
            Err(SpectralError::NotPositive)
        ));
    }

    #[test]
    fn unimodality() {
        let c = caterpillar(3, 10).unwrap();
        let res = perron(&c).unwrap();
        let Center::Edge(a, b) = trunk_center(&c).unwrap() else {
            panic!("even trunk has a central edge")
        };
        assert!(is_unimodal(&c, &res.perron, a, 1e-10));
        assert!(is_unimodal(&c, &res.perron, b, 1e-10));
        let p3 = path(3);
        assert!(!is_unimodal(&p3, &VertexFunction(vec![1.0; 3]), 1, 0.0));
        assert!(is_unimodal(
            &p3,
            &VertexFunction(vec![1.0, 2.0, 1.0]),
            1,
            0.0
        ));
        assert!(is_unimodal(
            &path(2),
            &VertexFunction(vec![1.0, 1.0]),
            0,
            0.0
        ));
        let p5 = perron(&path(5)).unwrap();
        assert!(!is_unimodal(&path(5), &p5.perron, 0, 1e-10));
        assert!(is_unimodal(&path(5), &p5.perron, 2, 1e-10));
        assert!(!is_unimodal(
            &p3,
            &VertexFunction(vec![-1.0, 2.0, 1.0]),
            1,
            0.0
        ));
    }

    #[test]
    fn caterpillar_symmetry() {
        let c = caterpillar(3, 8).unwrap();
        let s = caterpillar_symmetry_check(&c, &perron(&c).unwrap(), 1e-12).unwrap();
        assert!(s.symmetric);
        assert_eq!(s.center, Center::Vertex(1));
        let c = caterpillar(3, 10).unwrap();
        let s = caterpillar_symmetry_check(&c, &perron(&c).unwrap(), 1e-12).unwrap();
        assert!(s.symmetric);
        assert_eq!(s.center, Center::Edge(1, 2));
        let s = caterpillar_symmetry_check(&path(2), &perron(&path(2)).unwrap(), 0.0).unwrap();
        assert!(s.symmetric);
        let sp = crate::tree::families::spider(3, &[1, 1, 1]).unwrap();
        assert_eq!(
            caterpillar_symmetry_check(&sp, &perron(&sp).unwrap(), 1e-12),
            Err(SpectralError::NotCaterpillar)
        );
    }

    #[test]
    fn symmetrized_values_tie_exactly() {
        let c = caterpillar(4, 14).unwrap();
        let res = perron(&c).unwrap();
        let f = symmetrize_caterpillar(&c, &res.perron).unwrap();
        assert_eq!(f[1], f[2]);
        assert_eq!(f[0], f[3]);
        assert_eq!(f.maximizers(), vec![1, 2]);
        for i in 0..14 {
            assert!((f[i] - res.perron[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn trunk_recurrence_on_a_caterpillar() {
        let c = caterpillar(4, 17).unwrap();
        let res = perron(&c).unwrap();
        assert!(trunk_recurrence_residual(&c, &res, 4).unwrap() < 1e-10);
        assert!(trunk_coefficient(res.mu, 4) < 2.0);
        assert_eq!(
            trunk_recurrence_residual(&c, &res, 3),
            Err(SpectralError::NotSemiregular(3))
        );
    }
}
