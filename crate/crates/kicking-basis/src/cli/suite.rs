//! The ten-criterion verification suite behind `verify-all`.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::combinat::{all_standard_fillings, Filling, Parameters, Shape};
use crate::hilbert::{
    check_j_symmetry, check_j_tilde_symmetry, check_shape_symmetry, degree_polynomial, j_enumerated_all,
    j_initial, tilde_divisor, JIndex, JRecurrence, Recurrence,
};
use crate::kicking::{build_kicking_tree, phi_hook, phi_two_column};
use crate::linfactor::QTPoly;
use crate::oracle::harmonic_hilbert;
use crate::orbit::{certify_nonsingular, check_hook_triangularity, evaluation_matrix};

/// Upper bounds on `n` (or `a + b`) for each family of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteBounds {
    pub tree: usize,
    pub matrix: usize,
    pub symmetry: usize,
    pub recurrence: usize,
    pub oracle: usize,
    pub overlap: usize,
    pub seeds: [u64; 3],
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds { tree: 6, matrix: 6, symmetry: 8, recurrence: 7, oracle: 5, overlap: 6, seeds: [1, 2, 3] }
    }
}

impl SuiteBounds {
    /// Caps every bound at `nmax`.
    pub fn capped(nmax: usize) -> Self {
        let d = Self::default();
        SuiteBounds {
            tree: d.tree.min(nmax),
            matrix: d.matrix.min(nmax),
            symmetry: d.symmetry.min(nmax),
            recurrence: d.recurrence.min(nmax),
            oracle: d.oracle.min(nmax),
            overlap: d.overlap.min(nmax),
            seeds: d.seeds,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seeds = [seed, seed.wrapping_add(1), seed.wrapping_add(2)];
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2} {}: {}", self.id, self.title, self.detail)
    }
}

/// Two-column shapes `(2^b, 1^(a-b))` with `a + b = n`.
pub fn two_column_shapes(n: usize) -> Vec<Shape> {
    (0..=n / 2).filter(|&b| n >= 2 * b).map(|b| Shape::TwoColumn { a: n - b, b }).filter(|s| s.size() > 0).collect()
}

/// Hooks `(n - m, 1^m)`.
pub fn hook_shapes(n: usize) -> Vec<Shape> {
    (0..n).map(|m| Shape::Hook { n, m }).collect()
}

/// Both families for `1 <= n <= nmax`, two-column shapes first.
pub fn in_scope_shapes(nmax: usize) -> Vec<Shape> {
    (1..=nmax).flat_map(|n| two_column_shapes(n).into_iter().chain(hook_shapes(n))).collect()
}

fn result(id: u8, title: &'static str, failures: Vec<String>, ok_detail: String) -> CriterionResult {
    let passed = failures.is_empty();
    let detail = if passed {
        ok_detail
    } else {
        let shown: Vec<String> = failures.iter().take(5).cloned().collect();
        format!("{} failure(s): {}", failures.len(), shown.join("; "))
    };
    CriterionResult { id, title, passed, detail }
}

fn multiset(p: &crate::linfactor::FactorProduct) -> Vec<String> {
    let mut v: Vec<String> = p.to_vec().iter().map(|f| f.to_string()).collect();
    v.sort();
    v
}

pub fn criterion_1() -> CriterionResult {
    let shape = Shape::TwoColumn { a: 2, b: 1 };
    let want: QTPoly = "1 + 2*q + 2*t + q*t".parse().expect("literal");
    let mut failures = Vec::new();
    match degree_polynomial(&shape, &Parameters::default_for(&shape)) {
        Ok(f) if f == want => {}
        Ok(f) => failures.push(format!("got {f}")),
        Err(e) => failures.push(e.to_string()),
    }
    result(1, "F of (2,1)", failures, format!("{want}"))
}

pub fn criterion_2() -> CriterionResult {
    let mut failures = Vec::new();
    let cases = [
        ("2,4/6,1/5,3", false, vec!["(x6-a3)", "(y1-b1)", "(y3-b1)", "(x3-a1)", "(x2-a2)"]),
        ("5,3,6,2/4/1", true, vec!["(y2-b3)", "(y3-b1)", "(y2-b2)", "(x4-a3)", "(y2-b1)"]),
    ];
    for (text, hook, want) in cases {
        let s = Filling::parse(text).expect("literal filling");
        let params = Parameters::default_for(&s.shape());
        let got = if hook { phi_hook(&s, &params) } else { phi_two_column(&s, &params) };
        let mut want: Vec<String> = want.iter().map(|s| s.to_string()).collect();
        want.sort();
        match got {
            Ok(p) if multiset(&p) == want => {}
            Ok(p) => failures.push(format!("{text}: got {p}")),
            Err(e) => failures.push(format!("{text}: {e}")),
        }
    }
    result(2, "worked examples", failures, "both factor multisets match".into())
}

pub fn criterion_3(nmax: usize) -> CriterionResult {
    let shapes: Vec<Shape> = (1..=nmax).flat_map(two_column_shapes).collect();
    let checked: Vec<(usize, Vec<String>)> = shapes
        .par_iter()
        .map(|shape| {
            let params = Parameters::default_for(shape);
            let mut bad = Vec::new();
            let leaves = match build_kicking_tree(shape, &params) {
                Ok(t) => t.leaves(),
                Err(e) => return (0, vec![format!("{shape}: {e}")]),
            };
            let count = leaves.len();
            for (f, prod) in leaves {
                match phi_two_column(&f, &params) {
                    Ok(p) if p == prod => {}
                    Ok(p) => bad.push(format!("{shape} {f}: tree {prod} vs {p}")),
                    Err(e) => bad.push(format!("{shape} {f}: {e}")),
                }
            }
            (count, bad)
        })
        .collect();
    let total: usize = checked.iter().map(|(c, _)| c).sum();
    let failures = checked.into_iter().flat_map(|(_, b)| b).collect();
    result(3, "tree = recursion", failures, format!("{} shapes, {total} leaves, n <= {nmax}", shapes.len()))
}

pub fn criterion_4(nmax: usize, seeds: [u64; 3]) -> CriterionResult {
    let shapes = in_scope_shapes(nmax);
    let jobs: Vec<(Shape, Option<u64>)> = shapes
        .iter()
        .flat_map(|s| std::iter::once((*s, None)).chain(seeds.iter().map(move |&k| (*s, Some(k)))))
        .collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|(shape, seed)| {
            let params = match seed {
                None => Parameters::default_for(shape),
                Some(k) => Parameters::random(shape, *k),
            };
            let label = match seed {
                None => format!("{} {shape} default", kind_name(shape)),
                Some(k) => format!("{} {shape} seed {k}", kind_name(shape)),
            };
            match evaluation_matrix(shape, &params) {
                Ok(m) if certify_nonsingular(&m).is_nonsingular() => None,
                Ok(_) => Some(format!("{label}: singular")),
                Err(e) => Some(format!("{label}: {e}")),
            }
        })
        .collect();
    result(4, "nonsingular", failures, format!("{} matrices, n <= {nmax}", jobs.len()))
}

fn kind_name(shape: &Shape) -> &'static str {
    match shape {
        Shape::TwoColumn { .. } => "two-column",
        Shape::Hook { .. } => "hook",
    }
}

pub fn criterion_5(nmax: usize) -> CriterionResult {
    let shapes: Vec<Shape> = (1..=nmax).flat_map(hook_shapes).collect();
    let failures: Vec<String> = shapes
        .iter()
        .filter_map(|shape| match check_hook_triangularity(shape, &Parameters::default_for(shape)) {
            Ok(r) if r.passed() => None,
            Ok(r) => Some(format!("{shape}: {} violation(s), first {:?}", r.violation_count, r.violations.first())),
            Err(e) => Some(format!("{shape}: {e}")),
        })
        .collect();
    result(5, "hook triangular", failures, format!("{} hooks, n <= {nmax}", shapes.len()))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |a, i| a * i)
}

pub fn criterion_6(nmax: usize) -> CriterionResult {
    let shapes = in_scope_shapes(nmax);
    let failures: Vec<String> = shapes
        .iter()
        .filter_map(|shape| {
            let f = match degree_polynomial(shape, &Parameters::default_for(shape)) {
                Ok(f) => f,
                Err(e) => return Some(format!("{shape}: {e}")),
            };
            let r = check_shape_symmetry(shape, &f);
            let total = f.at_one();
            if r.passed() && r.unit_extremes && total == factorial(shape.size()) {
                None
            } else {
                Some(format!("{} {shape}: {r:?}, F(1,1) = {total}", kind_name(shape)))
            }
        })
        .collect();
    result(6, "F symmetric", failures, format!("{} shapes, n <= {nmax}", shapes.len()))
}

fn enumerated_table(total: usize) -> Vec<(JIndex, QTPoly)> {
    let pairs: Vec<(usize, usize)> =
        (0..=total).flat_map(|a| (0..=a.min(total - a)).map(move |b| (a, b))).collect();
    pairs
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            let shape = Shape::TwoColumn { a, b };
            let params = Parameters::default_for(&shape);
            let vals = j_enumerated_all(a, b, &params).expect("enumeration within cap");
            vals.into_iter().enumerate().map(move |(m, v)| (JIndex::new(a, b, m), v))
        })
        .collect()
}

pub fn criterion_7(total: usize) -> CriterionResult {
    let mut first = JRecurrence::new(Recurrence::First);
    let mut second = JRecurrence::new(Recurrence::Second);
    let table = enumerated_table(total);
    let mut failures = Vec::new();
    for (idx, e) in &table {
        let r1 = first.get(*idx);
        let r2 = second.get(*idx);
        if *e != r1 || *e != r2 {
            failures.push(format!("J^{}_{{{},{}}}: enum {e}, first {r1}, second {r2}", idx.m, idx.a, idx.b));
        }
        if idx.m == idx.b && *e != j_initial(idx.a, idx.b) {
            failures.push(format!("initial condition J^{}_{{{},{}}}", idx.m, idx.a, idx.b));
        }
        if idx.a == idx.b && idx.m >= 1 {
            let alias = table.iter().find(|(j, _)| *j == JIndex::new(idx.b, idx.b - idx.m, 0));
            if alias.map(|(_, v)| v) != Some(e) {
                failures.push(format!("boundary J^{}_{{{},{}}}", idx.m, idx.a, idx.b));
            }
        }
        let sym = check_j_symmetry(*idx, e);
        if !sym.passed() {
            failures.push(format!("J^{}_{{{},{}}} not symmetric: {sym:?}", idx.m, idx.a, idx.b));
        }
    }
    result(7, "J recurrences", failures, format!("{} indices, a + b <= {total}", table.len()))
}

pub fn criterion_8(total: usize) -> CriterionResult {
    let mut first = JRecurrence::new(Recurrence::First);
    let indices = JIndex::up_to(total);
    let mut failures = Vec::new();
    for idx in &indices {
        let j = first.get(*idx);
        match j.div_exact(&tilde_divisor(*idx)) {
            Ok(jt) => {
                let r = check_j_tilde_symmetry(&jt);
                if !r.passed() {
                    failures.push(format!("J~^{}_{{{},{}}}: {r:?}", idx.m, idx.a, idx.b));
                }
            }
            Err(e) => failures.push(format!("J^{}_{{{},{}}}: {e}", idx.m, idx.a, idx.b)),
        }
    }
    result(8, "J~ divisible and symmetric", failures, format!("{} indices, a + b <= {total}", indices.len()))
}

pub fn criterion_9(nmax: usize) -> CriterionResult {
    let shapes = in_scope_shapes(nmax);
    let failures: Vec<String> = shapes
        .par_iter()
        .filter_map(|shape| {
            let h = match harmonic_hilbert(shape) {
                Ok(h) => h,
                Err(e) => return Some(format!("{shape}: {e}")),
            };
            let f = match degree_polynomial(shape, &Parameters::default_for(shape)) {
                Ok(f) => f,
                Err(e) => return Some(format!("{shape}: {e}")),
            };
            if h == f && h.at_one() == factorial(shape.size()) {
                None
            } else {
                Some(format!("{} {shape}: oracle {h} vs degree {f}", kind_name(shape)))
            }
        })
        .collect();
    result(9, "oracle = F", failures, format!("{} shapes, n <= {nmax}", shapes.len()))
}

pub fn criterion_10(nmax: usize) -> CriterionResult {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 2..=nmax {
        let two = Shape::TwoColumn { a: n - 1, b: 1 };
        let hook = Shape::Hook { n, m: n - 2 };
        let params = Parameters::default_for(&two);
        for s in all_standard_fillings(&two) {
            count += 1;
            let h = Filling::parse_on(hook, &s.to_string()).expect("same diagram");
            match (phi_two_column(&s, &params), phi_hook(&h, &params)) {
                (Ok(a), Ok(b)) if a == b => {}
                (a, b) => failures.push(format!("{s}: {a:?} vs {b:?}")),
            }
        }
    }
    result(10, "two-column = hook on overlap", failures, format!("{count} fillings, n <= {nmax}"))
}

/// Runs every criterion in order.
pub fn run_all(bounds: &SuiteBounds) -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(bounds.tree),
        criterion_4(bounds.matrix, bounds.seeds),
        criterion_5(bounds.matrix),
        criterion_6(bounds.symmetry),
        criterion_7(bounds.recurrence),
        criterion_8(bounds.recurrence),
        criterion_9(bounds.oracle),
        criterion_10(bounds.overlap),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_lists() {
        assert_eq!(two_column_shapes(4), vec![Shape::TwoColumn { a: 4, b: 0 }, Shape::TwoColumn { a: 3, b: 1 }, Shape::TwoColumn { a: 2, b: 2 }]);
        assert_eq!(hook_shapes(3).len(), 3);
        assert_eq!(in_scope_shapes(3).len(), 1 + 1 + 2 + 2 + 2 + 3);
    }

    #[test]
    fn tiny_suite_passes() {
        for r in run_all(&SuiteBounds::capped(3)) {
            assert!(r.passed, "{r}");
        }
    }
}
