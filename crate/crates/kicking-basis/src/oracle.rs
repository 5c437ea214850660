//! Independent ground truth at small `n`: the determinant `Delta_mu`, the span
//! of its iterated partial derivatives, and that space's bigraded Hilbert series.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::combinat::Shape;
use crate::linfactor::{Axis, FactorProduct, QTPoly, Rational};

pub const DEFAULT_ORACLE_CAP: usize = 5;

/// Hard ceiling even when the cap is raised.
pub const ORACLE_LIMIT: usize = 6;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("n = {n} exceeds the oracle cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// Exponent vector over `(x_1..x_n, y_1..y_n)`.
pub type Exponents = Vec<u32>;

/// Sparse polynomial in `x_1..x_n, y_1..y_n` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; 2 * n], c);
        p
    }

    /// `x_var` (1-based) or `y_var`.
    pub fn variable(n: usize, axis: Axis, var: usize) -> Self {
        let mut e = vec![0; 2 * n];
        match axis {
            Axis::X => e[var - 1] = 1,
            Axis::Y => e[n + var - 1] = 1,
        }
        let mut p = Self::zero(n);
        p.add_term(e, Rational::one());
        p
    }

    pub fn num_points(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, e: Exponents, c: Rational) {
        debug_assert_eq!(e.len(), 2 * self.n);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest monomial in lexicographic order of the exponent vector.
    pub fn leading(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    /// `(x-degree, y-degree)` of a monomial.
    pub fn monomial_bidegree(&self, e: &[u32]) -> (u32, u32) {
        (e[..self.n].iter().sum(), e[self.n..].iter().sum())
    }

    /// The common bidegree, if homogeneous and nonzero.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(|e| self.monomial_bidegree(e));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        MultiPoly { n: self.n, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Partial derivative by coordinate `var` of the concatenated vector (0-based).
    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut d = e.clone();
                d[var] -= 1;
                out.add_term(d, c * Rational::from_integer(e[var].into()));
            }
        }
        out
    }

    /// Simultaneously swaps `(x_i, y_i)` with `(x_j, y_j)` (1-based).
    pub fn swap_points(&self, i: usize, j: usize) -> MultiPoly {
        let n = self.n;
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            let mut d = e.clone();
            d.swap(i - 1, j - 1);
            d.swap(n + i - 1, n + j - 1);
            out.add_term(d, c.clone());
        }
        out
    }

    /// Component of largest total degree.
    pub fn top_component(&self) -> MultiPoly {
        let top = self.terms.keys().map(|e| e.iter().sum::<u32>()).max();
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            if Some(e.iter().sum::<u32>()) == top {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.n;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut vars = Vec::new();
                for (i, &k) in e.iter().enumerate() {
                    let name = if i < n { format!("x{}", i + 1) } else { format!("y{}", i - n + 1) };
                    match k {
                        0 => {}
                        1 => vars.push(name),
                        _ => vars.push(format!("{name}^{k}")),
                    }
                }
                match (vars.is_empty(), c.is_one(), (-c).is_one()) {
                    (true, _, _) => c.to_string(),
                    (false, true, _) => vars.join("*"),
                    (false, _, true) => format!("-{}", vars.join("*")),
                    _ => format!("{c}*{}", vars.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// Expands a product of linear factors into a polynomial in `n` points.
pub fn expand_factor_product(p: &FactorProduct, n: usize) -> MultiPoly {
    let mut out = MultiPoly::constant(n, Rational::one());
    for f in p.to_vec() {
        let lin = MultiPoly::variable(n, f.axis, f.var).sub(&MultiPoly::constant(n, f.shift.clone()));
        out = out.mul(&lin);
    }
    out
}

fn check_cap(shape: &Shape, cap: usize) -> Result<(), OracleError> {
    let n = shape.size();
    let cap = cap.min(ORACLE_LIMIT);
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    Ok(())
}

/// `det [x_c^{p_r} y_c^{q_r}]` over the cells `(p_r, q_r)` of the shape.
pub fn delta_mu(shape: &Shape) -> Result<MultiPoly, OracleError> {
    delta_mu_with_cap(shape, DEFAULT_ORACLE_CAP)
}

pub fn delta_mu_with_cap(shape: &Shape, cap: usize) -> Result<MultiPoly, OracleError> {
    check_cap(shape, cap)?;
    let cells = shape.cells();
    let n = cells.len();
    let mut out = MultiPoly::zero(n);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut e = vec![0u32; 2 * n];
        for (r, cell) in cells.iter().enumerate() {
            let c = perm[r];
            e[c] += cell.row as u32;
            e[n + c] += cell.col as u32;
        }
        let coeff = if inversions(&perm) % 2 == 0 { Rational::one() } else { -Rational::one() };
        out.add_term(e, coeff);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Echelon basis of one bidegree, keyed by leading monomial, leads normalized to 1.
#[derive(Default)]
struct PivotBasis {
    pivots: BTreeMap<Exponents, MultiPoly>,
}

impl PivotBasis {
    /// Reduces `v`; returns true (and keeps it) when independent.
    fn insert(&mut self, mut v: MultiPoly) -> bool {
        while let Some((lead, c)) = v.leading().map(|(e, c)| (e.clone(), c.clone())) {
            match self.pivots.get(&lead) {
                Some(p) => v = v.sub(&p.scale(&c)),
                None => {
                    let normalized = v.scale(&c.recip());
                    self.pivots.insert(lead, normalized);
                    return true;
                }
            }
        }
        false
    }
}

/// Dimensions of the derivative closure of `Delta_mu` by bidegree.
pub fn harmonic_dimensions(shape: &Shape, cap: usize) -> Result<BTreeMap<(u32, u32), usize>, OracleError> {
    let delta = delta_mu_with_cap(shape, cap)?;
    let vars = 2 * shape.size();
    let mut bases: HashMap<(u32, u32), PivotBasis> = HashMap::new();
    let mut frontier = Vec::new();
    let d0 = delta.bidegree().expect("Delta is homogeneous and nonzero");
    bases.entry(d0).or_default().insert(delta.clone());
    frontier.push(delta);
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for v in 0..vars {
                let g = f.derivative(v);
                let Some(d) = g.bidegree() else { continue };
                if bases.entry(d).or_default().insert(g.clone()) {
                    next.push(g);
                }
            }
        }
        frontier = next;
    }
    Ok(bases.into_iter().map(|(d, b)| (d, b.pivots.len())).filter(|(_, k)| *k > 0).collect())
}

/// `sum t^i q^j dim H_mu^{(i,j)}` with the default cap.
pub fn harmonic_hilbert(shape: &Shape) -> Result<QTPoly, OracleError> {
    harmonic_hilbert_with_cap(shape, DEFAULT_ORACLE_CAP)
}

pub fn harmonic_hilbert_with_cap(shape: &Shape, cap: usize) -> Result<QTPoly, OracleError> {
    let mut out = QTPoly::zero();
    for ((i, j), k) in harmonic_dimensions(shape, cap)? {
        out.add_term(i, j, BigInt::from(k));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{all_standard_fillings, Parameters};
    use crate::kicking::phi;

    #[test]
    fn small_deltas() {
        let col = Shape::TwoColumn { a: 2, b: 0 };
        assert_eq!(delta_mu(&col).unwrap().to_string(), "x2 - x1");
        let row = Shape::Hook { n: 2, m: 0 };
        assert_eq!(delta_mu(&row).unwrap().to_string(), "y2 - y1");
        let d = delta_mu(&Shape::TwoColumn { a: 2, b: 1 }).unwrap();
        assert_eq!(d.len(), 6);
        assert_eq!(d.bidegree(), Some((1, 1)));
        assert_eq!(d.swap_points(1, 3), d.scale(&-Rational::one()));
    }

    #[test]
    fn small_hilbert_series() {
        assert_eq!(harmonic_hilbert(&Shape::TwoColumn { a: 2, b: 0 }).unwrap().to_string(), "1 + t");
        assert_eq!(harmonic_hilbert(&Shape::TwoColumn { a: 2, b: 1 }).unwrap().to_string(), "1 + 2*q + 2*t + q*t");
        let h = harmonic_hilbert(&Shape::TwoColumn { a: 2, b: 2 }).unwrap();
        assert_eq!(h.at_one(), BigInt::from(24));
        assert!(h.is_qt_symmetric(2, 2));
        assert_eq!(harmonic_hilbert(&Shape::Hook { n: 2, m: 0 }).unwrap(), h_swap(&Shape::TwoColumn { a: 2, b: 0 }));
    }

    fn h_swap(s: &Shape) -> QTPoly {
        harmonic_hilbert(s).unwrap().swap_qt()
    }

    #[test]
    fn cap_guard() {
        assert!(delta_mu(&Shape::Hook { n: 6, m: 2 }).is_err());
        assert!(delta_mu_with_cap(&Shape::Hook { n: 7, m: 2 }, 9).is_err());
    }

    #[test]
    fn leading_form_of_basis_elements_is_a_monomial() {
        for shape in [Shape::TwoColumn { a: 2, b: 2 }, Shape::Hook { n: 4, m: 1 }, Shape::TwoColumn { a: 3, b: 1 }] {
            let params = Parameters::default_for(&shape);
            for s in all_standard_fillings(&shape) {
                let p = phi(&s, &params).unwrap();
                let top = expand_factor_product(&p, 4).top_component();
                assert_eq!(top.len(), 1);
                let (e, c) = top.leading().unwrap();
                assert!(c.is_one());
                assert_eq!(top.monomial_bidegree(e), p.bidegree());
            }
        }
    }
}
