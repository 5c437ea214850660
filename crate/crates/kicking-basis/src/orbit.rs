//! Evaluation matrices `(phi_S(p_T))`, exact nonsingularity certificates and
//! triangularity diagnostics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::combinat::{enumerate_standard_fillings, row_preference, Filling, Parameters, RowView, Shape, ShapeKind};
use crate::kicking::{phi, sort_in_order, FillingOrder, KickingError};
use crate::linfactor::{FactorProduct, Rational};

pub const DEFAULT_MATRIX_CAP: usize = 720;

/// Above this dimension nonsingularity is first tried modulo large primes.
pub const EXACT_ELIMINATION_LIMIT: usize = 120;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OrbitError {
    #[error("{size} fillings exceed the matrix cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("shape {0} is not a hook")]
    NotHook(Shape),
    #[error("shape {0} is not a two-column shape")]
    NotTwoColumn(Shape),
    #[error(transparent)]
    Kicking(#[from] KickingError),
}

/// Square matrix of exact rationals; rows are basis elements, columns orbit points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<Rational>,
    labels: Vec<Filling>,
}

impl RationalMatrix {
    /// Unlabelled matrix from rows; panics unless square.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        RationalMatrix { dim, entries: rows.into_iter().flatten().collect(), labels: Vec::new() }
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    /// Fillings labelling rows and columns, empty for hand-built matrices.
    pub fn labels(&self) -> &[Filling] {
        &self.labels
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).fold(Rational::zero(), |s, x| s + x))
            .collect()
    }

    /// Number of nonzero entries strictly below the diagonal.
    pub fn below_diagonal_nonzeros(&self) -> usize {
        (0..self.dim).map(|i| self.row(i)[..i].iter().filter(|v| !v.is_zero()).count()).sum()
    }
}

fn factorial_exceeds(n: usize, cap: usize) -> Option<usize> {
    let mut f: usize = 1;
    for i in 1..=n {
        f = match f.checked_mul(i) {
            Some(v) => v,
            None => return Some(usize::MAX),
        };
    }
    (f > cap).then_some(f)
}

fn ordered_fillings(shape: &Shape, order: FillingOrder, cap: usize) -> Result<Vec<Filling>, OrbitError> {
    if let Some(size) = factorial_exceeds(shape.size(), cap) {
        return Err(OrbitError::CapExceeded { size, cap });
    }
    let mut fillings = enumerate_standard_fillings(shape);
    if order != FillingOrder::Kicking {
        sort_in_order(shape, order, &mut fillings);
    }
    Ok(fillings)
}

fn basis_and_points(
    fillings: &[Filling],
    params: &Parameters,
) -> Result<(Vec<FactorProduct>, Vec<Vec<Rational>>), OrbitError> {
    let basis: Vec<FactorProduct> =
        fillings.par_iter().map(|s| phi(s, params)).collect::<Result<_, _>>()?;
    let points = fillings.iter().map(|s| s.orbit_point(params)).collect();
    Ok((basis, points))
}

/// `(phi_S(p_T))` in kicking order with the default cap.
pub fn evaluation_matrix(shape: &Shape, params: &Parameters) -> Result<RationalMatrix, OrbitError> {
    evaluation_matrix_with(shape, params, FillingOrder::Kicking, DEFAULT_MATRIX_CAP)
}

pub fn evaluation_matrix_with(
    shape: &Shape,
    params: &Parameters,
    order: FillingOrder,
    cap: usize,
) -> Result<RationalMatrix, OrbitError> {
    let fillings = ordered_fillings(shape, order, cap)?;
    let (basis, points) = basis_and_points(&fillings, params)?;
    let dim = fillings.len();
    let entries: Vec<Rational> = basis
        .par_iter()
        .flat_map_iter(|f| points.iter().map(move |p| f.evaluate(p)))
        .collect();
    Ok(RationalMatrix { dim, entries, labels: fillings })
}

/// Evidence that a matrix is nonsingular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonsingularWitness {
    /// Exact determinant from fraction-free elimination.
    Determinant(Rational),
    /// Nonzero determinant modulo a prime not dividing any denominator.
    Modular { prime: u64, residue: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Nonsingular(NonsingularWitness),
    /// `kernel` is a nonzero vector with `m * kernel = 0`.
    Singular { rank: usize, kernel: Vec<Rational> },
}

impl Certificate {
    pub fn is_nonsingular(&self) -> bool {
        matches!(self, Certificate::Nonsingular(_))
    }

    /// Re-checks the certificate against `m`.
    pub fn verify(&self, m: &RationalMatrix) -> bool {
        match self {
            Certificate::Nonsingular(NonsingularWitness::Determinant(d)) => !d.is_zero() && *d == determinant(m),
            Certificate::Nonsingular(NonsingularWitness::Modular { prime, residue }) => {
                *residue != 0 && modular_determinant(m, *prime) == Some(*residue)
            }
            Certificate::Singular { kernel, .. } => {
                kernel.iter().any(|v| !v.is_zero()) && m.mul_vec(kernel).iter().all(Zero::is_zero)
            }
        }
    }

    pub fn method(&self) -> &'static str {
        match self {
            Certificate::Nonsingular(NonsingularWitness::Determinant(_)) => "bareiss",
            Certificate::Nonsingular(NonsingularWitness::Modular { .. }) => "modular",
            Certificate::Singular { .. } => "kernel",
        }
    }
}

pub fn certify_nonsingular(m: &RationalMatrix) -> Certificate {
    certify_nonsingular_with(m, EXACT_ELIMINATION_LIMIT)
}

/// Exact Bareiss up to `exact_limit`, modular determinants above it, and a
/// rational kernel vector whenever the matrix turns out singular.
pub fn certify_nonsingular_with(m: &RationalMatrix, exact_limit: usize) -> Certificate {
    if m.dim() == 0 {
        return Certificate::Nonsingular(NonsingularWitness::Determinant(Rational::one()));
    }
    if m.dim() > exact_limit {
        for prime in large_primes().take(4) {
            if let Some(residue) = modular_determinant(m, prime) {
                if residue != 0 {
                    return Certificate::Nonsingular(NonsingularWitness::Modular { prime, residue });
                }
            }
        }
    } else {
        let d = determinant(m);
        if !d.is_zero() {
            return Certificate::Nonsingular(NonsingularWitness::Determinant(d));
        }
    }
    match kernel_vector(m) {
        Some((rank, kernel)) => Certificate::Singular { rank, kernel },
        None => Certificate::Nonsingular(NonsingularWitness::Determinant(determinant(m))),
    }
}

/// Determinant by fraction-free elimination after clearing denominators row by row.
pub fn determinant(m: &RationalMatrix) -> Rational {
    let n = m.dim();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            scale *= &l;
            row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        rest.par_iter_mut().for_each(|row| {
            let lead = row[k].clone();
            for j in k + 1..n {
                let v = &row[j] * &pivot_row[k] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        });
        prev = a[k][k].clone();
    }
    let d = Rational::new(a[n - 1][n - 1].clone(), scale);
    if negate {
        -d
    } else {
        d
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes descending from `2^61 - 1`.
pub fn large_primes() -> impl Iterator<Item = u64> {
    (0..).map(|i| (1u64 << 61) - 1 - 2 * i).filter(|&c| is_prime(c))
}

fn reduce_mod(v: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = v.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let num = v.numer().mod_floor(&pb);
    let to_u64 = |b: BigInt| b.to_u64_digits().1.first().copied().unwrap_or(0);
    let (num, den) = (to_u64(num), to_u64(den));
    Some(mul_mod(num, pow_mod(den, p - 2, p), p))
}

/// Determinant modulo `p`, or `None` when `p` divides a denominator.
pub fn modular_determinant(m: &RationalMatrix, p: u64) -> Option<u64> {
    let n = m.dim();
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|i| m.row(i).iter().map(|v| reduce_mod(v, p)).collect::<Option<Vec<u64>>>())
        .collect::<Option<_>>()?;
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i][k] != 0) else {
            return Some(0);
        };
        if piv != k {
            a.swap(piv, k);
            det = (p - det) % p;
        }
        det = mul_mod(det, a[k][k], p);
        let inv = pow_mod(a[k][k], p - 2, p);
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        rest.par_iter_mut().for_each(|row| {
            if row[k] == 0 {
                return;
            }
            let f = mul_mod(row[k], inv, p);
            for j in k..n {
                let sub = mul_mod(f, pivot_row[j], p);
                row[j] = (row[j] + p - sub) % p;
            }
        });
    }
    Some(det)
}

/// Rank and a nonzero kernel vector, or `None` if the matrix has full rank.
pub fn kernel_vector(m: &RationalMatrix) -> Option<(usize, Vec<Rational>)> {
    let n = m.dim();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for j in c..n {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..n {
                    let sub = &f * &a[r][j];
                    a[i][j] -= sub;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    if r == n {
        return None;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free = (0..n).find(|c| !pivot_cols.contains(c)).expect("rank deficient");
    let mut v = vec![Rational::zero(); n];
    v[free] = Rational::one();
    for &(row, col) in &pivots {
        v[col] = -a[row][free].clone();
    }
    Some((r, v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// `phi_S(p_T) != 0` although `T` comes first.
    NonzeroBelowDiagonal,
    /// `phi_S(p_S) = 0`.
    ZeroDiagonal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub basis: Filling,
    pub point: Filling,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularityReport {
    pub shape: Shape,
    pub dimension: usize,
    pub pairs_checked: usize,
    pub violation_count: usize,
    /// The first few violations in matrix order.
    pub violations: Vec<Violation>,
    /// Block sizes in block order; a single block for the full triangular check.
    pub blocks: Vec<usize>,
}

impl TriangularityReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

const REPORTED_VIOLATIONS: usize = 8;

fn scan(
    shape: &Shape,
    fillings: &[Filling],
    params: &Parameters,
    must_vanish: impl Fn(usize, usize) -> bool + Sync,
    check_diagonal: bool,
    blocks: Vec<usize>,
) -> Result<TriangularityReport, OrbitError> {
    let (basis, points) = basis_and_points(fillings, params)?;
    let per_row: Vec<(usize, Vec<(usize, ViolationKind)>)> = (0..fillings.len())
        .into_par_iter()
        .map(|s| {
            let mut checked = 0;
            let mut bad = Vec::new();
            for t in 0..fillings.len() {
                if must_vanish(s, t) {
                    checked += 1;
                    if !basis[s].vanishes_at(&points[t]) {
                        bad.push((t, ViolationKind::NonzeroBelowDiagonal));
                    }
                } else if check_diagonal && s == t {
                    checked += 1;
                    if basis[s].vanishes_at(&points[t]) {
                        bad.push((t, ViolationKind::ZeroDiagonal));
                    }
                }
            }
            (checked, bad)
        })
        .collect();
    let pairs_checked = per_row.iter().map(|(c, _)| c).sum();
    let violation_count = per_row.iter().map(|(_, b)| b.len()).sum();
    let violations = per_row
        .iter()
        .enumerate()
        .flat_map(|(s, (_, bad))| bad.iter().map(move |&(t, kind)| (s, t, kind)))
        .take(REPORTED_VIOLATIONS)
        .map(|(s, t, kind)| Violation { kind, basis: fillings[s].clone(), point: fillings[t].clone() })
        .collect();
    Ok(TriangularityReport {
        shape: *shape,
        dimension: fillings.len(),
        pairs_checked,
        violation_count,
        violations,
        blocks,
    })
}

/// Checks that the hook evaluation matrix in kicking order is upper triangular
/// with nonzero diagonal, factor by factor.
pub fn check_hook_triangularity(shape: &Shape, params: &Parameters) -> Result<TriangularityReport, OrbitError> {
    if shape.kind() != ShapeKind::Hook {
        return Err(OrbitError::NotHook(*shape));
    }
    let fillings = ordered_fillings(shape, FillingOrder::Kicking, DEFAULT_MATRIX_CAP)?;
    let dim = fillings.len();
    scan(shape, &fillings, params, |s, t| t < s, true, vec![dim])
}

/// Groups fillings by the row of `n` (in preference order) and checks that
/// `phi_S` vanishes on every point of an earlier group.
pub fn check_block_triangular_by_largest(
    shape: &Shape,
    params: &Parameters,
) -> Result<TriangularityReport, OrbitError> {
    if shape.kind() != ShapeKind::TwoColumn {
        return Err(OrbitError::NotTwoColumn(*shape));
    }
    let fillings = ordered_fillings(shape, FillingOrder::Kicking, DEFAULT_MATRIX_CAP)?;
    let n = shape.size();
    let rows: Vec<RowView> =
        shape.row_lengths().iter().map(|&len| RowView { len, occupants: Vec::new() }).collect();
    let pref = row_preference(&rows, ShapeKind::TwoColumn, n);
    let block_of: Vec<usize> = fillings
        .iter()
        .map(|s| {
            let r = s.row_of(n).expect("standard filling");
            pref.iter().position(|&p| p == r).expect("every row is eligible for n")
        })
        .collect();
    let mut blocks = vec![0; pref.len()];
    for &b in &block_of {
        blocks[b] += 1;
    }
    blocks.retain(|&b| b > 0);
    scan(shape, &fillings, params, |s, t| block_of[t] < block_of[s], false, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linfactor::rat;

    #[test]
    fn trivial_matrices() {
        let one = RationalMatrix::from_integers(&[vec![1]]);
        assert_eq!(certify_nonsingular(&one), Certificate::Nonsingular(NonsingularWitness::Determinant(rat(1))));
        let flat = RationalMatrix::from_integers(&[vec![1, 1], vec![1, 1]]);
        match certify_nonsingular(&flat) {
            Certificate::Singular { rank, kernel } => {
                assert_eq!(rank, 1);
                assert_eq!(kernel, vec![rat(-1), rat(1)]);
            }
            c => panic!("expected singular, got {c:?}"),
        }
    }

    #[test]
    fn modular_path_agrees() {
        let m = RationalMatrix::from_rows(vec![
            vec![Rational::new(1.into(), 2.into()), rat(3), rat(0)],
            vec![rat(4), rat(-1), Rational::new(2.into(), 7.into())],
            vec![rat(0), rat(5), rat(9)],
        ]);
        let exact = certify_nonsingular(&m);
        let modular = certify_nonsingular_with(&m, 0);
        assert!(exact.is_nonsingular() && modular.is_nonsingular());
        assert_eq!(modular.method(), "modular");
        assert!(exact.verify(&m) && modular.verify(&m));
        let sing = RationalMatrix::from_integers(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        let c = certify_nonsingular_with(&sing, 0);
        assert!(!c.is_nonsingular() && c.verify(&sing));
    }

    #[test]
    fn primes_are_large() {
        let p: Vec<u64> = large_primes().take(2).collect();
        assert_eq!(p[0], (1 << 61) - 1);
        assert!(p[1] < p[0] && p[1] > 1 << 60);
    }

    #[test]
    fn small_evaluation_matrices() {
        let one = Shape::TwoColumn { a: 1, b: 0 };
        let m = evaluation_matrix(&one, &Parameters::default_for(&one)).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(*m.get(0, 0), rat(1));
        let s21 = Shape::TwoColumn { a: 2, b: 1 };
        let params = Parameters::new(vec![rat(1), rat(2), rat(3)], vec![rat(1), rat(2)]).unwrap();
        let m = evaluation_matrix(&s21, &params).unwrap();
        assert_eq!(m.dim(), 6);
        assert!((0..6).all(|i| !m.get(i, i).is_zero()));
        assert!(certify_nonsingular(&m).is_nonsingular());
        let s22 = Shape::TwoColumn { a: 2, b: 2 };
        assert!(certify_nonsingular(&evaluation_matrix(&s22, &Parameters::default_for(&s22)).unwrap()).is_nonsingular());
    }

    #[test]
    fn cap_is_enforced() {
        let s = Shape::Hook { n: 7, m: 2 };
        assert!(matches!(evaluation_matrix(&s, &Parameters::default_for(&s)), Err(OrbitError::CapExceeded { .. })));
    }

    #[test]
    fn hook_triangularity_small() {
        for s in [Shape::Hook { n: 1, m: 0 }, Shape::Hook { n: 3, m: 1 }, Shape::Hook { n: 4, m: 0 }] {
            let r = check_hook_triangularity(&s, &Parameters::default_for(&s)).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.violations);
        }
    }

    #[test]
    fn block_structure_small() {
        let s = Shape::TwoColumn { a: 2, b: 1 };
        let r = check_block_triangular_by_largest(&s, &Parameters::default_for(&s)).unwrap();
        assert!(r.passed());
        assert_eq!(r.blocks, vec![4, 2]);
        let s = Shape::TwoColumn { a: 2, b: 0 };
        let r = check_block_triangular_by_largest(&s, &Parameters::default_for(&s)).unwrap();
        assert!(r.passed());
        assert_eq!(r.blocks, vec![1, 1]);
        assert_eq!(r.pairs_checked, 1);
    }
}
