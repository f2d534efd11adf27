//! Symbolic carry polynomials `s_n(α_0..α_{n-1}, β_0..β_{n-1})` over F_3.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Trit;
use crate::error::{bail, Result};

/// Largest order accepted by [`carry_polynomial`]. `s_5` already has to
/// square a polynomial with a few thousand terms.
pub const MAX_CARRY_ORDER: usize = 5;

/// Reduces an exponent using `x^3 = x` on F_3.
fn reduce_exp(e: u8) -> u8 {
    match e {
        0 => 0,
        e if e % 2 == 1 => 1,
        _ => 2,
    }
}

fn f3_add(a: i8, b: i8) -> i8 {
    Trit::balanced_residue(a as i64 + b as i64).value()
}

/// Polynomial over F_3 in a fixed number of variables, exponents reduced to
/// at most 2. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, i8>,
}

impl Poly {
    fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    fn var(nvars: usize, idx: usize) -> Self {
        let mut exps = vec![0u8; nvars];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, 1);
        Poly { nvars, terms }
    }

    fn add_term(&mut self, exps: Vec<u8>, coeff: i8) {
        let c = f3_add(self.terms.get(&exps).copied().unwrap_or(0), coeff);
        if c == 0 {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, c);
        }
    }

    fn add_scaled(&mut self, other: &Poly, scale: i8) {
        for (exps, &c) in &other.terms {
            self.add_term(exps.clone(), c * scale);
        }
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut acc: BTreeMap<Vec<u8>, i8> = BTreeMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let exps: Vec<u8> = ea.iter().zip(eb).map(|(&x, &y)| reduce_exp(x + y)).collect();
                let entry = acc.entry(exps).or_insert(0);
                *entry = f3_add(*entry, ca * cb);
            }
        }
        acc.retain(|_, c| *c != 0);
        Poly { nvars: self.nvars, terms: acc }
    }

    fn len(&self) -> usize {
        self.terms.len()
    }
}

/// `σ(a,b,c)` computed symbolically.
fn sigma_poly(a: &Poly, b: &Poly, c: &Poly) -> Poly {
    let a2 = a.mul(a);
    let b2 = b.mul(b);
    let c2 = c.mul(c);
    let mut out = a.mul(b).mul(c);
    out.add_scaled(&a2.mul(b), -1);
    out.add_scaled(&a2.mul(c), -1);
    out.add_scaled(&a.mul(&b2), -1);
    out.add_scaled(&a.mul(&c2), -1);
    out.add_scaled(&b2.mul(c), -1);
    out.add_scaled(&b.mul(&c2), -1);
    out
}

/// One monomial of a carry polynomial: the exponent vector over
/// `(α_0..α_{n-1}, β_0..β_{n-1})` and a nonzero F_3 coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarryTerm {
    pub exponents: Vec<u8>,
    pub coeff: i8,
}

/// The reduced carry polynomial `s_n` in the `2n` variables
/// `α_0..α_{n-1}, β_0..β_{n-1}` (in that index order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarryPolynomial {
    order: usize,
    terms: BTreeMap<Vec<u8>, i8>,
}

impl CarryPolynomial {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_vars(&self) -> usize {
        2 * self.order
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of their exponent vectors.
    pub fn terms(&self) -> Vec<CarryTerm> {
        self.terms
            .iter()
            .map(|(e, &c)| CarryTerm { exponents: e.clone(), coeff: c })
            .collect()
    }

    pub fn from_terms(order: usize, terms: &[CarryTerm]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for t in terms {
            if t.exponents.len() != 2 * order {
                bail!(InvalidInput, "term has {} exponents, expected {}", t.exponents.len(), 2 * order);
            }
            if t.exponents.iter().any(|&e| e > 2) {
                bail!(InvalidInput, "exponent above 2 in a reduced polynomial");
            }
            if t.coeff != 1 && t.coeff != -1 {
                bail!(InvalidInput, "coefficient {} is not a nonzero element of F_3", t.coeff);
            }
            if map.insert(t.exponents.clone(), t.coeff).is_some() {
                bail!(InvalidInput, "repeated monomial");
            }
        }
        Ok(CarryPolynomial { order, terms: map })
    }

    /// Evaluates at `alpha`, `beta` (each of length `order`).
    pub fn evaluate(&self, alpha: &[Trit], beta: &[Trit]) -> Trit {
        assert_eq!(alpha.len(), self.order);
        assert_eq!(beta.len(), self.order);
        let point: Vec<i64> = alpha.iter().chain(beta).map(|t| t.value() as i64).collect();
        let mut acc = 0i64;
        for (exps, &c) in &self.terms {
            let mut m = c as i64;
            for (x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    m *= x;
                }
            }
            acc += m;
        }
        Trit::balanced_residue(acc)
    }

    fn var_name(&self, idx: usize) -> String {
        if idx < self.order {
            format!("a{idx}")
        } else {
            format!("b{}", idx - self.order)
        }
    }
}

impl fmt::Display for CarryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (exps, &c)) in self.terms.iter().enumerate() {
            match (k, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.var_name(i) } else { format!("{}^{e}", self.var_name(i)) })
                .collect();
            if factors.is_empty() {
                f.write_str("1")?;
            } else {
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for CarryPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.terms().serialize(serializer)
    }
}

/// `s_n` with the default order bound [`MAX_CARRY_ORDER`].
pub fn carry_polynomial(n: usize) -> Result<CarryPolynomial> {
    carry_polynomial_bounded(n, MAX_CARRY_ORDER)
}

/// `s_n` by the recursion `s_0 = 0`, `s_k = σ(α_{k-1}, β_{k-1}, s_{k-1})`,
/// reducing exponents after every product.
pub fn carry_polynomial_bounded(n: usize, max_order: usize) -> Result<CarryPolynomial> {
    if n == 0 {
        bail!(InvalidInput, "carry polynomial order must be at least 1");
    }
    if n > max_order {
        bail!(ResourceLimit, "carry polynomial order {n} exceeds the bound {max_order}");
    }
    let nvars = 2 * n;
    let mut s = Poly::zero(nvars);
    for k in 0..n {
        let alpha = Poly::var(nvars, k);
        let beta = Poly::var(nvars, n + k);
        s = sigma_poly(&alpha, &beta, &s);
    }
    debug_assert!(s.len() <= 3usize.pow(nvars as u32));
    Ok(CarryPolynomial { order: n, terms: s.terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s1_display() {
        let s1 = carry_polynomial(1).unwrap();
        assert_eq!(s1.to_string(), "-a0*b0^2 - a0^2*b0");
    }

    #[test]
    fn order_bounds() {
        assert!(matches!(carry_polynomial(0), Err(crate::Error::InvalidInput(_))));
        assert!(matches!(carry_polynomial_bounded(4, 3), Err(crate::Error::ResourceLimit(_))));
    }

    #[test]
    fn reduced_exponents() {
        for n in 1..=3 {
            let s = carry_polynomial(n).unwrap();
            assert!(s.terms().iter().all(|t| t.exponents.iter().all(|&e| e <= 2)));
            assert!(s.terms().iter().all(|t| t.coeff == 1 || t.coeff == -1));
        }
    }

    #[test]
    fn serializes_as_term_list() {
        let s1 = carry_polynomial(1).unwrap();
        let json = serde_json::to_string(&s1).unwrap();
        assert_eq!(json, r#"[{"exponents":[1,2],"coeff":-1},{"exponents":[2,1],"coeff":-1}]"#);
        let terms: Vec<CarryTerm> = serde_json::from_str(&json).unwrap();
        assert_eq!(CarryPolynomial::from_terms(1, &terms).unwrap(), s1);
    }
}
