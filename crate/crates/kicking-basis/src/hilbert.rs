//! Degree polynomials `F_mu(q,t)`, the refined family `J^m_{a,b}`, its two
//! recurrences, the normalized `J~`, and symmetry checks.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::combinat::{all_standard_fillings, Cell, Parameters, Shape};
use crate::kicking::{phi, KickingError};
use crate::linfactor::{t_factorial, t_integer, NonDivisible, QTPoly};

pub const DEFAULT_ENUMERATION_CAP: usize = 9;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HilbertError {
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error(transparent)]
    Kicking(#[from] KickingError),
    #[error("exact division failed for {what}: {source}")]
    NonDivisible { what: String, source: NonDivisible },
}

/// Index of `J^m_{a,b}`: `a` rows, `b` of them of length 2, `m` forced cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JIndex {
    pub a: usize,
    pub b: usize,
    pub m: usize,
}

impl JIndex {
    pub fn new(a: usize, b: usize, m: usize) -> Self {
        JIndex { a, b, m }
    }

    /// `a >= b >= m >= 0`; other indices give 0.
    pub fn is_valid(&self) -> bool {
        self.a >= self.b && self.b >= self.m
    }

    /// All valid indices with `a + b <= total`, in lexicographic order.
    pub fn up_to(total: usize) -> Vec<JIndex> {
        let mut out = Vec::new();
        for a in 0..=total {
            for b in 0..=a.min(total - a) {
                for m in 0..=b {
                    out.push(JIndex::new(a, b, m));
                }
            }
        }
        out
    }

    /// Largest `(t, q)` exponents of `J^m_{a,b}`.
    pub fn j_box(&self) -> (u32, u32) {
        ((choose2(self.a - self.m) + choose2(self.b)) as u32, (self.b - self.m) as u32)
    }

    /// `(a-1)(b-m) - C(b-m, 2)` and `b - m`, the bound stated for `J~`.
    pub fn stated_tilde_box(&self) -> (i64, u32) {
        let d = (self.b - self.m) as i64;
        ((self.a as i64 - 1) * d - d * (d - 1) / 2, d as u32)
    }
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn bidegree_weight(fillings: impl ParallelIterator<Item = (u32, u32)>) -> QTPoly {
    let counts: HashMap<(u32, u32), u64> = fillings
        .fold(HashMap::new, |mut h, d| {
            *h.entry(d).or_insert(0) += 1;
            h
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut out = QTPoly::zero();
    for ((dx, dy), c) in counts {
        out.add_term(dx, dy, BigInt::from(c));
    }
    out
}

/// `F_mu(q,t) = sum_S t^{deg_x phi_S} q^{deg_y phi_S}` with the default cap.
pub fn degree_polynomial(shape: &Shape, params: &Parameters) -> Result<QTPoly, HilbertError> {
    degree_polynomial_with_cap(shape, params, DEFAULT_ENUMERATION_CAP)
}

pub fn degree_polynomial_with_cap(shape: &Shape, params: &Parameters, cap: usize) -> Result<QTPoly, HilbertError> {
    if shape.size() > cap {
        return Err(HilbertError::CapExceeded { n: shape.size(), cap });
    }
    let degrees: Vec<(u32, u32)> = all_standard_fillings(shape)
        .par_iter()
        .map(|s| phi(s, params).map(|p| p.bidegree()))
        .collect::<Result<_, _>>()?;
    Ok(bidegree_weight(degrees.into_par_iter()))
}

/// `J^m_{a,b}` for `m = 0..=b` by enumeration over `(2^b, 1^(a-b))`.
pub fn j_enumerated_all(a: usize, b: usize, params: &Parameters) -> Result<Vec<QTPoly>, HilbertError> {
    if a < b {
        return Ok(Vec::new());
    }
    let shape = Shape::TwoColumn { a, b };
    let n = a + b;
    if n > DEFAULT_ENUMERATION_CAP {
        return Err(HilbertError::CapExceeded { n, cap: DEFAULT_ENUMERATION_CAP });
    }
    if n == 0 {
        return Ok(vec![QTPoly::one()]);
    }
    let tagged: Vec<(usize, (u32, u32))> = all_standard_fillings(&shape)
        .par_iter()
        .map(|s| {
            let forced = (0..b).take_while(|&j| s.cell_of(n - j) == Some(Cell::new(b - j - 1, 0))).count();
            phi(s, params).map(|p| (forced, p.bidegree()))
        })
        .collect::<Result<_, _>>()?;
    (0..=b)
        .map(|m| {
            let sum = bidegree_weight(tagged.par_iter().filter(|(f, _)| *f >= m).map(|(_, d)| *d));
            sum.div_exact(&QTPoly::q_pow(m as u32)).map_err(|source| HilbertError::NonDivisible {
                what: format!("J^{m}_{{{a},{b}}} by q^{m}"),
                source,
            })
        })
        .collect()
}

pub fn j_enumerated(idx: JIndex, params: &Parameters) -> Result<QTPoly, HilbertError> {
    if !idx.is_valid() {
        return Ok(QTPoly::zero());
    }
    Ok(j_enumerated_all(idx.a, idx.b, params)?.swap_remove(idx.m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Recurrence {
    First,
    Second,
}

/// `binom(a,b) [b]_t! [a-b]_t!`, the value of `J^b_{a,b}`.
pub fn j_initial(a: usize, b: usize) -> QTPoly {
    &t_factorial(b as u32).scale(&binomial(a, b)) * &t_factorial((a - b) as u32)
}

/// Memoized evaluation of `J^m_{a,b}` by one of the two recurrences.
///
/// Each instance owns its table, so two variants never share values.
#[derive(Debug, Clone)]
pub struct JRecurrence {
    variant: Recurrence,
    memo: HashMap<JIndex, QTPoly>,
}

impl JRecurrence {
    pub fn new(variant: Recurrence) -> Self {
        JRecurrence { variant, memo: HashMap::new() }
    }

    pub fn variant(&self) -> Recurrence {
        self.variant
    }

    pub fn get(&mut self, idx: JIndex) -> QTPoly {
        if !idx.is_valid() {
            return QTPoly::zero();
        }
        if let Some(v) = self.memo.get(&idx) {
            return v.clone();
        }
        let v = match boundary(idx) {
            Boundary::Value(v) => v,
            Boundary::Alias(other) => self.get(other),
            Boundary::Interior => {
                let variant = self.variant;
                self.step(idx, variant)
            }
        };
        self.memo.insert(idx, v.clone());
        v
    }

    /// One expansion by `outer`, children evaluated by this instance.
    pub fn step(&mut self, idx: JIndex, outer: Recurrence) -> QTPoly {
        let JIndex { a, b, m } = idx;
        let children = [
            a.checked_sub(1).zip(b.checked_sub(1)).zip(m.checked_sub(1)).map(|((a, b), m)| JIndex::new(a, b, m)),
            a.checked_sub(1).map(|a| JIndex::new(a, b, m)),
            b.checked_sub(1).map(|b| JIndex::new(a, b, m)),
            Some(JIndex::new(a, b, m + 1)),
        ];
        children
            .into_iter()
            .zip(recurrence_weights(idx, outer))
            .filter_map(|(c, w)| c.filter(|_| !w.is_zero()).map(|c| (c, w)))
            .map(|(c, w)| &w * &self.get(c))
            .sum()
    }
}

enum Boundary {
    Value(QTPoly),
    Alias(JIndex),
    Interior,
}

fn boundary(idx: JIndex) -> Boundary {
    let JIndex { a, b, m } = idx;
    if m == b {
        Boundary::Value(j_initial(a, b))
    } else if a == b && m >= 1 {
        Boundary::Alias(JIndex::new(b, b - m, 0))
    } else {
        Boundary::Interior
    }
}

fn recurrence_weights(idx: JIndex, variant: Recurrence) -> [QTPoly; 4] {
    let JIndex { a, b, m } = idx;
    let (tm, tab, tbm) = (t_integer(m as u32), t_integer((a - b) as u32), t_integer((b - m) as u32));
    let q = QTPoly::q();
    match variant {
        Recurrence::First => [
            tm,
            &QTPoly::t_pow((b - m) as u32) * &tab,
            &QTPoly::t_pow(m as u32) * &tbm,
            &q * &tbm,
        ],
        Recurrence::Second => [
            &QTPoly::t_pow((b - m) as u32) * &tm,
            tab,
            &q * &tbm,
            &QTPoly::t_pow((a - b) as u32) * &tbm,
        ],
    }
}

/// `J^m_{a,b}` by a fresh memo table for `variant`.
pub fn j_recurrence(idx: JIndex, variant: Recurrence) -> QTPoly {
    JRecurrence::new(variant).get(idx)
}

/// One step of `first` over children from `second` equals one step of
/// `second` over children from `first`.
pub fn check_order_independence(idx: JIndex) -> bool {
    if !idx.is_valid() || !matches!(boundary(idx), Boundary::Interior) {
        return true;
    }
    let mut first = JRecurrence::new(Recurrence::First);
    let mut second = JRecurrence::new(Recurrence::Second);
    second.step(idx, Recurrence::First) == first.step(idx, Recurrence::Second)
}

/// `[a-b]_t! [b-m]_t! [m]_t!`.
pub fn tilde_divisor(idx: JIndex) -> QTPoly {
    let JIndex { a, b, m } = idx;
    &(&t_factorial((a - b) as u32) * &t_factorial((b - m) as u32)) * &t_factorial(m as u32)
}

/// `J~^m_{a,b}`, the exact quotient of `J` by [`tilde_divisor`].
pub fn j_tilde(idx: JIndex) -> Result<QTPoly, HilbertError> {
    if !idx.is_valid() {
        return Ok(QTPoly::zero());
    }
    j_recurrence(idx, Recurrence::First)
        .div_exact(&tilde_divisor(idx))
        .map_err(|source| HilbertError::NonDivisible { what: format!("J~ at {idx:?}"), source })
}

/// `J~` computed directly by its own recurrences.
#[derive(Debug, Clone)]
pub struct JTildeRecurrence {
    variant: Recurrence,
    memo: HashMap<JIndex, QTPoly>,
}

impl JTildeRecurrence {
    pub fn new(variant: Recurrence) -> Self {
        JTildeRecurrence { variant, memo: HashMap::new() }
    }

    pub fn get(&mut self, idx: JIndex) -> QTPoly {
        if !idx.is_valid() {
            return QTPoly::zero();
        }
        if let Some(v) = self.memo.get(&idx) {
            return v.clone();
        }
        let JIndex { a, b, m } = idx;
        let v = if m == b {
            QTPoly::monomial(binomial(a, b), 0, 0)
        } else if a == b && m >= 1 {
            self.get(JIndex::new(b, b - m, 0))
        } else {
            let up = t_integer((a - b + 1) as u32);
            let next = t_integer((m + 1) as u32);
            let q = QTPoly::q();
            let tb = QTPoly::t_pow((b - m) as u32);
            let first = if m >= 1 && b >= 1 { self.get(JIndex::new(a - 1, b - 1, m - 1)) } else { QTPoly::zero() };
            let second = if a >= 1 { self.get(JIndex::new(a - 1, b, m)) } else { QTPoly::zero() };
            let third = if b >= 1 { self.get(JIndex::new(a, b - 1, m)) } else { QTPoly::zero() };
            let fourth = self.get(JIndex::new(a, b, m + 1));
            match self.variant {
                Recurrence::First => {
                    &(&first + &(&tb * &second)) + &(&(&(&QTPoly::t_pow(m as u32) * &up) * &third) + &(&(&q * &next) * &fourth))
                }
                Recurrence::Second => {
                    &(&(&tb * &first) + &second)
                        + &(&(&(&q * &up) * &third) + &(&(&QTPoly::t_pow((a - b) as u32) * &next) * &fourth))
                }
            }
        };
        self.memo.insert(idx, v.clone());
        v
    }
}

/// Outcome of a symmetry check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    /// Expected largest `(t, q)` exponents.
    pub expected: (u32, u32),
    /// Actual largest exponents, `None` for the zero polynomial.
    pub actual: Option<(u32, u32)>,
    pub symmetric: bool,
    /// Coefficient of `t^N q^M` is 1 and of `t^0 q^0` is 1.
    pub unit_extremes: bool,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.symmetric && self.actual == Some(self.expected)
    }
}

pub fn check_symmetry_in_box(f: &QTPoly, expected: (u32, u32)) -> SymmetryReport {
    let (n, m) = expected;
    SymmetryReport {
        expected,
        actual: f.max_degrees(),
        symmetric: f.is_qt_symmetric(n, m),
        unit_extremes: f.coefficient(n, m) == BigInt::one() && f.coefficient(0, 0) == BigInt::one(),
    }
}

/// Expected `(N, M)` of `F_mu`: `(n(mu), n(mu'))`.
pub fn shape_box(shape: &Shape) -> (u32, u32) {
    match *shape {
        Shape::Hook { n, m } => ((m * (m + 1) / 2) as u32, choose2(n - m) as u32),
        _ => (shape.n_mu(), shape.n_mu_conjugate()),
    }
}

pub fn check_shape_symmetry(shape: &Shape, f: &QTPoly) -> SymmetryReport {
    check_symmetry_in_box(f, shape_box(shape))
}

pub fn check_j_symmetry(idx: JIndex, j: &QTPoly) -> SymmetryReport {
    check_symmetry_in_box(j, idx.j_box())
}

/// Symmetry of `J~` at the box read from its own degrees.
pub fn check_j_tilde_symmetry(jt: &QTPoly) -> SymmetryReport {
    let b = jt.max_degrees().unwrap_or((0, 0));
    check_symmetry_in_box(jt, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(shape: Shape) -> QTPoly {
        degree_polynomial(&shape, &Parameters::default_for(&shape)).unwrap()
    }

    fn poly(s: &str) -> QTPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_degree_polynomials() {
        assert_eq!(f(Shape::TwoColumn { a: 2, b: 1 }), poly("1 + 2*q + 2*t + q*t"));
        assert_eq!(f(Shape::TwoColumn { a: 1, b: 0 }), QTPoly::one());
        assert_eq!(f(Shape::TwoColumn { a: 1, b: 1 }), poly("1 + q"));
        assert_eq!(f(Shape::TwoColumn { a: 2, b: 0 }), poly("1 + t"));
    }

    #[test]
    fn hook_degree_polynomial_symmetry() {
        let s = Shape::Hook { n: 4, m: 1 };
        let r = check_shape_symmetry(&s, &f(s));
        assert_eq!(r.expected, (1, 3));
        assert!(r.passed() && r.unit_extremes);
    }

    #[test]
    fn j_small_values() {
        let p = Parameters::default_for(&Shape::TwoColumn { a: 2, b: 1 });
        assert_eq!(j_enumerated(JIndex::new(2, 1, 0), &p).unwrap(), poly("1 + 2*q + 2*t + q*t"));
        assert_eq!(j_enumerated(JIndex::new(2, 1, 1), &p).unwrap(), QTPoly::from_int(2));
        assert!(j_enumerated(JIndex::new(1, 2, 0), &p).unwrap().is_zero());
        assert_eq!(j_recurrence(JIndex::new(1, 1, 1), Recurrence::First), QTPoly::one());
        assert_eq!(j_recurrence(JIndex::new(2, 1, 0), Recurrence::First), poly("1 + 2*q + 2*t + q*t"));
        assert_eq!(j_recurrence(JIndex::new(3, 2, 2), Recurrence::Second), poly("3 + 3*t"));
    }

    #[test]
    fn j_tilde_values() {
        assert_eq!(j_tilde(JIndex::new(2, 1, 1)).unwrap(), QTPoly::from_int(2));
        assert_eq!(j_tilde(JIndex::new(1, 1, 0)).unwrap(), poly("1 + q"));
        for idx in JIndex::up_to(5) {
            if idx.m == idx.b {
                assert_eq!(j_tilde(idx).unwrap(), QTPoly::monomial(binomial(idx.a, idx.b), 0, 0));
            }
        }
    }

    #[test]
    fn tilde_recurrences_match_quotient() {
        let mut r1 = JTildeRecurrence::new(Recurrence::First);
        let mut r2 = JTildeRecurrence::new(Recurrence::Second);
        for idx in JIndex::up_to(7) {
            let q = j_tilde(idx).unwrap();
            assert_eq!(r1.get(idx), q, "{idx:?}");
            assert_eq!(r2.get(idx), q, "{idx:?}");
        }
    }

    #[test]
    fn recurrences_agree_and_commute() {
        let mut r1 = JRecurrence::new(Recurrence::First);
        let mut r2 = JRecurrence::new(Recurrence::Second);
        for idx in JIndex::up_to(7) {
            assert_eq!(r1.get(idx), r2.get(idx), "{idx:?}");
            assert!(check_order_independence(idx), "{idx:?}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 3), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
    }
}
