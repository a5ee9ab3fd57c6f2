use serde::{Deserialize, Serialize};

use super::TransformError;
use crate::spectral::{is_unimodal, quadratic_form, SpectralError, VertexFunction};
use crate::tree::{Tree, Vertex};

/// Drop edges `v1 u1` and `v2 u2`, add `v1 u2` and `v2 u1`.
///
/// `u1` is a pendant vertex at `v1`, and the path from `u1` to `u2` runs
/// `u1, v1, ..., v2, u2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SwitchMove {
    pub u1: Vertex,
    pub v1: Vertex,
    pub u2: Vertex,
    pub v2: Vertex,
}

impl SwitchMove {
    /// The move that undoes `self` on the switched tree.
    pub fn inverse(&self) -> SwitchMove {
        SwitchMove {
            u1: self.u1,
            v1: self.v2,
            u2: self.u2,
            v2: self.v1,
        }
    }
}

pub fn validate_switch(t: &Tree, m: &SwitchMove) -> Result<(), TransformError> {
    let fail = |clause| Err(TransformError::InvalidSwitch { mv: *m, clause });
    let n = t.vertex_count();
    if [m.u1, m.v1, m.u2, m.v2].iter().any(|&x| x >= n) {
        return fail("vertex out of range");
    }
    if m.v1 == m.v2 {
        return fail("v1 = v2");
    }
    if !t.is_pendant(m.u1) {
        return fail("u1 is not pendant");
    }
    if !t.is_adjacent(m.u1, m.v1) {
        return fail("u1 is not adjacent to v1");
    }
    if !t.is_adjacent(m.v2, m.u2) {
        return fail("u2 is not adjacent to v2");
    }
    if t.is_pendant(m.u2) {
        return fail("u2 is pendant");
    }
    let p = t.path(m.u1, m.u2);
    if p.len() < 4 || p[p.len() - 2] != m.v2 {
        return fail("path from u1 to u2 does not run through v1 then v2");
    }
    Ok(())
}

pub fn apply_switch(t: &Tree, m: &SwitchMove) -> Result<Tree, TransformError> {
    validate_switch(t, m)?;
    Ok(t.with_edges_replaced(&[(m.v1, m.u1), (m.v2, m.u2)], &[(m.v1, m.u2), (m.v2, m.u1)])?)
}

fn check_transport(
    t: &Tree,
    f: &VertexFunction,
    m: &SwitchMove,
    v_hat: Vertex,
) -> Result<(), TransformError> {
    validate_switch(t, m)?;
    if f.len() != t.vertex_count() {
        return Err(SpectralError::LengthMismatch {
            expected: t.vertex_count(),
            got: f.len(),
        }
        .into());
    }
    if !is_unimodal(t, f, v_hat, 0.0) {
        return Err(TransformError::NotUnimodal(v_hat));
    }
    if v_hat == m.u1 {
        return Err(TransformError::MaximumMoved(v_hat));
    }
    if f[m.v1] < f[m.v2] {
        return Err(TransformError::Ordering {
            v1: m.v1,
            v2: m.v2,
            f1: f[m.v1],
            f2: f[m.v2],
        });
    }
    Ok(())
}

fn transported(f: &VertexFunction, m: &SwitchMove) -> VertexFunction {
    let mut out = f.clone();
    let (a, b) = (f[m.u1], f[m.u2]);
    out.0[m.u1] = a.min(b);
    out.0[m.u2] = a.max(b);
    out
}

/// Carry a unimodal valuation (maximum at `v_hat`) across the switch:
/// `u1` takes the smaller and `u2` the larger of their two values.
pub fn transport_valuation(
    t: &Tree,
    f: &VertexFunction,
    m: &SwitchMove,
    v_hat: Vertex,
) -> Result<VertexFunction, TransformError> {
    check_transport(t, f, m, v_hat)?;
    Ok(transported(f, m))
}

/// Outcome of a switch with transported valuation.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma1Certificate {
    pub tree: Tree,
    pub valuation: VertexFunction,
    pub rq_before: f64,
    pub rq_after: f64,
    /// `R_{t'}(f') - R_t(f)`.
    pub delta: f64,
    /// The delta predicted from the values around the switch alone.
    pub closed_form: f64,
    /// `(f(v1) > f(v2) and f(u1) < f(u2))` or `f(u1) > f(u2)`.
    pub strict: bool,
    /// `f'` is unimodal on `t'` with the same maximum.
    pub unimodal_after: bool,
}

pub fn lemma1_certificate(
    t: &Tree,
    f: &VertexFunction,
    m: &SwitchMove,
    v_hat: Vertex,
) -> Result<Lemma1Certificate, TransformError> {
    check_transport(t, f, m, v_hat)?;
    let tree = apply_switch(t, m)?;
    let valuation = transported(f, m);
    let norm2: f64 = f.values().iter().map(|x| x * x).sum();
    if norm2 == 0.0 {
        return Err(SpectralError::ZeroVector.into());
    }
    let before = quadratic_form(t, f);
    let after = quadratic_form(&tree, &valuation);
    let (fu1, fu2, fv1, fv2) = (f[m.u1], f[m.u2], f[m.v1], f[m.v2]);
    let closed = if fu1 <= fu2 {
        2.0 * (fu1 - fu2) * (fv2 - fv1)
    } else {
        let rest: f64 = t
            .neighbors(m.u2)
            .iter()
            .filter(|&&w| w != m.v2)
            .map(|&w| f[w])
            .sum();
        2.0 * (fu1 - fu2) * rest
    };
    Ok(Lemma1Certificate {
        unimodal_after: is_unimodal(&tree, &valuation, v_hat, 0.0),
        rq_before: before / norm2,
        rq_after: after / norm2,
        delta: (after - before) / norm2,
        closed_form: closed / norm2,
        strict: (fv1 > fv2 && fu1 < fu2) || fu1 > fu2,
        tree,
        valuation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{perron, rayleigh_quotient, symmetrize_caterpillar};
    use crate::tree::families::{caterpillar, spider};

    // C_{3,10}: trunk 0-1-2-3, pendants 4,5 at 0; 6 at 1; 7 at 2; 8,9 at 3.
    fn c310_spider_move() -> SwitchMove {
        SwitchMove {
            u1: 6,
            v1: 1,
            u2: 3,
            v2: 2,
        }
    }

    #[test]
    fn switch_builds_the_spider() {
        let c = caterpillar(3, 10).unwrap();
        let s = apply_switch(&c, &c310_spider_move()).unwrap();
        assert!(s.is_isomorphic(&spider(3, &[1, 1, 1]).unwrap()));
        assert_eq!(s.degree_sequence(), c.degree_sequence());
        let back = apply_switch(&s, &c310_spider_move().inverse()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn invalid_moves_name_the_clause() {
        let c = caterpillar(3, 10).unwrap();
        let clause = |m: SwitchMove| match validate_switch(&c, &m) {
            Err(TransformError::InvalidSwitch { clause, .. }) => clause,
            other => panic!("expected invalid switch, got {other:?}"),
        };
        assert_eq!(
            clause(SwitchMove {
                u1: 6,
                v1: 1,
                u2: 3,
                v2: 1
            }),
            "v1 = v2"
        );
        assert_eq!(
            clause(SwitchMove {
                u1: 1,
                v1: 0,
                u2: 3,
                v2: 2
            }),
            "u1 is not pendant"
        );
        assert_eq!(
            clause(SwitchMove {
                u1: 6,
                v1: 1,
                u2: 9,
                v2: 3
            }),
            "u2 is pendant"
        );
        assert_eq!(
            clause(SwitchMove {
                u1: 7,
                v1: 2,
                u2: 0,
                v2: 3
            }),
            "u2 is not adjacent to v2"
        );
        assert_eq!(
            clause(SwitchMove {
                u1: 7,
                v1: 2,
                u2: 1,
                v2: 0
            }),
            "path from u1 to u2 does not run through v1 then v2"
        );
    }

    #[test]
    fn perron_switch_to_spider_is_strict() {
        // C_{3,12}: trunk 0..5 with center 2; pendant 8 at 2.
        let c = caterpillar(3, 12).unwrap();
        let r = perron(&c).unwrap();
        let f = symmetrize_caterpillar(&c, &r.perron).unwrap();
        let m = SwitchMove {
            u1: 8,
            v1: 2,
            u2: 4,
            v2: 3,
        };
        assert!(f[2] > f[3]);
        let cert = lemma1_certificate(&c, &f, &m, 2).unwrap();
        assert!(cert.tree.is_isomorphic(&spider(3, &[2, 1, 1]).unwrap()));
        assert!(cert.strict);
        assert!(cert.delta > 0.0);
        assert!((cert.delta - cert.closed_form).abs() < 1e-12);
        assert!(cert.unimodal_after);
        let direct = rayleigh_quotient(&cert.tree, &cert.valuation).unwrap()
            - rayleigh_quotient(&c, &f).unwrap();
        assert!((direct - cert.delta).abs() < 1e-12);
    }

    #[test]
    fn transport_keeps_or_swaps_values() {
        let c = caterpillar(3, 10).unwrap();
        let m = c310_spider_move();
        // f(u1) <= f(u2): unchanged.
        let f = VertexFunction(vec![5.0, 6.0, 5.0, 4.0, 4.0, 4.0, 3.0, 4.0, 3.0, 3.0]);
        assert_eq!(transport_valuation(&c, &f, &m, 1).unwrap(), f);
        // f(u1) > f(u2): swapped.
        let f = VertexFunction(vec![5.0, 9.0, 4.0, 2.0, 4.0, 4.0, 8.0, 3.0, 1.0, 1.0]);
        let g = transport_valuation(&c, &f, &m, 1).unwrap();
        assert_eq!((g[6], g[3]), (2.0, 8.0));
        assert_eq!(g.sorted_values(), f.sorted_values());
        let cert = lemma1_certificate(&c, &f, &m, 1).unwrap();
        assert!(cert.strict && cert.delta > 0.0);
        assert!((cert.delta - cert.closed_form).abs() < 1e-12);
    }

    #[test]
    fn equal_values_give_zero_delta() {
        let c = caterpillar(3, 10).unwrap();
        let m = c310_spider_move();
        let f = VertexFunction(vec![5.0, 6.0, 5.0, 4.0, 4.0, 4.0, 4.0, 4.0, 3.0, 3.0]);
        let cert = lemma1_certificate(&c, &f, &m, 1).unwrap();
        assert!(!cert.strict);
        assert_eq!(cert.delta, 0.0);
    }

    #[test]
    fn transport_preconditions() {
        let c = caterpillar(3, 10).unwrap();
        let m = c310_spider_move();
        let f = VertexFunction(vec![3.0, 4.0, 6.0, 4.0, 2.0, 2.0, 3.0, 5.0, 3.0, 3.0]);
        assert!(matches!(
            transport_valuation(&c, &f, &m, 2),
            Err(TransformError::Ordering { v1: 1, v2: 2, .. })
        ));
        assert!(matches!(
            transport_valuation(&c, &f, &m, 0),
            Err(TransformError::NotUnimodal(0))
        ));
    }
}
