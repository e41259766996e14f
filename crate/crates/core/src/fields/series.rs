use std::collections::BTreeMap;

/// Polynomial in `s = sech y` and `t = tanh y`, closed under `d/dy`
/// through `s' = -s t` and `t' = s²`.
///
/// Keeping explicit powers of `s` (rather than rewriting `s² = 1 - t²`)
/// keeps every derivative accurate in the tails where `t` rounds to ±1.
#[derive(Debug, Clone, PartialEq)]
pub struct SechTanhPoly {
    // (power of s, power of t) -> coefficient
    terms: BTreeMap<(u32, u32), f64>,
}

impl SechTanhPoly {
    pub fn monomial(sech_power: u32, tanh_power: u32, coeff: f64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((sech_power, tanh_power), coeff);
        Self { terms }
    }

    pub fn derivative(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (&(i, j), &c) in &self.terms {
            if i > 0 {
                *terms.entry((i, j + 1)).or_insert(0.0) -= i as f64 * c;
            }
            if j > 0 {
                *terms.entry((i + 2, j - 1)).or_insert(0.0) += j as f64 * c;
            }
        }
        terms.retain(|_, c| *c != 0.0);
        Self { terms }
    }

    /// The first `count` derivatives, starting with `self` itself.
    pub fn derivatives(&self, count: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(count);
        let mut cur = self.clone();
        for _ in 0..count {
            let next = cur.derivative();
            out.push(cur);
            cur = next;
        }
        out
    }

    pub fn eval(&self, y: f64) -> f64 {
        let s = 1.0 / y.cosh();
        let t = y.tanh();
        self.terms
            .iter()
            .map(|(&(i, j), &c)| c * s.powi(i as i32) * t.powi(j as i32))
            .sum()
    }
}

/// Evaluates `Σ c_n x^(2n)` by Horner's rule.
pub fn even_series(coeffs: &[f64], x: f64) -> f64 {
    let x2 = x * x;
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x2 + c)
}
