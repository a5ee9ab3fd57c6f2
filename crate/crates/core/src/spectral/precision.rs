//! Double-double accumulation for Rayleigh quotients that need to resolve
//! spectral radii beyond plain `f64` summation.

use crate::tree::Tree;

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct DoubleDouble {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub(crate) fn add_product(&mut self, a: f64, b: f64) {
        let (p, pe) = two_prod(a, b);
        let (s, se) = two_sum(self.hi, p);
        let lo = self.lo + pe + se;
        let (hi, lo) = two_sum(s, lo);
        self.hi = hi;
        self.lo = lo;
    }

    pub(crate) fn div(self, den: DoubleDouble) -> f64 {
        let q = self.hi / den.hi;
        let (p, pe) = two_prod(q, den.hi);
        let r = ((self.hi - p) - pe) + self.lo - q * den.lo;
        q + r / den.hi
    }

    #[cfg(test)]
    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// `2 sum_{uv} f(u) f(v) / sum_v f(v)^2` with double-double accumulation.
pub(crate) fn rayleigh_dd(tree: &Tree, f: &[f64]) -> f64 {
    let mut num = DoubleDouble::default();
    let mut den = DoubleDouble::default();
    for (u, v) in tree.edges() {
        num.add_product(2.0 * f[u], f[v]);
    }
    for &x in f {
        den.add_product(x, x);
    }
    num.div(den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accumulation_keeps_low_order_bits() {
        let mut acc = DoubleDouble::default();
        acc.add_product(1.0, 1.0);
        for _ in 0..10 {
            acc.add_product(1e-17, 1.0);
        }
        assert!((acc.lo - 1e-16).abs() < 1e-30);
        assert_eq!(acc.value(), 1.0 + 1e-16);
    }

    #[test]
    fn division_is_close_to_exact() {
        let mut a = DoubleDouble::default();
        a.add_product(1.0, 1.0);
        let mut b = DoubleDouble::default();
        b.add_product(3.0, 1.0);
        assert_eq!(a.div(b), 1.0 / 3.0);
    }
}
