//! One line per acceptance criterion, each checked exactly and timed.

use std::time::{Duration, Instant};

use kicking_basis::combinat::{all_standard_fillings, Filling, Parameters, Shape};
use kicking_basis::hilbert::{
    check_j_tilde_symmetry, check_shape_symmetry, degree_polynomial, j_enumerated_all, j_initial, tilde_divisor,
    JIndex, JRecurrence, Recurrence,
};
use kicking_basis::kicking::{build_kicking_tree, phi_hook, phi_two_column};
use kicking_basis::linfactor::{FactorProduct, QTPoly};
use kicking_basis::oracle::harmonic_hilbert;
use kicking_basis::orbit::{certify_nonsingular, check_hook_triangularity, evaluation_matrix};
use num_bigint::BigInt;

fn two_column(n: usize) -> Vec<Shape> {
    (0..=n / 2).map(|b| Shape::TwoColumn { a: n - b, b }).collect()
}

fn hooks(n: usize) -> Vec<Shape> {
    (0..n).map(|m| Shape::Hook { n, m }).collect()
}

fn both(nmax: usize) -> Vec<Shape> {
    (1..=nmax).flat_map(|n| two_column(n).into_iter().chain(hooks(n))).collect()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |a, i| a * i)
}

fn sorted_factors(p: &FactorProduct) -> Vec<String> {
    let mut v: Vec<String> = p.to_vec().iter().map(|f| f.to_string()).collect();
    v.sort();
    v
}

fn strings(v: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

fn regression_f21() -> Result<String, String> {
    let shape = Shape::TwoColumn { a: 2, b: 1 };
    let f = degree_polynomial(&shape, &Parameters::default_for(&shape)).map_err(|e| e.to_string())?;
    let want: QTPoly = "1 + 2*q + 2*t + q*t".parse().unwrap();
    (f == want).then(|| f.to_string()).ok_or(format!("got {f}"))
}

fn worked_examples() -> Result<String, String> {
    let s = Filling::parse("2,4/6,1/5,3").unwrap();
    let p = phi_two_column(&s, &Parameters::default_for(&s.shape())).map_err(|e| e.to_string())?;
    if sorted_factors(&p) != strings(&["(x6-a3)", "(y1-b1)", "(y3-b1)", "(x3-a1)", "(x2-a2)"]) {
        return Err(format!("two-column example gave {p}"));
    }
    let h = Filling::parse("5,3,6,2/4/1").unwrap();
    let p = phi_hook(&h, &Parameters::default_for(&h.shape())).map_err(|e| e.to_string())?;
    if sorted_factors(&p) != strings(&["(y2-b3)", "(y3-b1)", "(y2-b2)", "(x4-a3)", "(y2-b1)"]) {
        return Err(format!("hook example gave {p}"));
    }
    Ok("both multisets equal".into())
}

fn tree_equals_recursion() -> Result<String, String> {
    let mut leaves = 0;
    for shape in (1..=6).flat_map(two_column) {
        let params = Parameters::default_for(&shape);
        let tree = build_kicking_tree(&shape, &params).map_err(|e| e.to_string())?;
        for (f, prod) in tree.leaves() {
            leaves += 1;
            let p = phi_two_column(&f, &params).map_err(|e| e.to_string())?;
            if p != prod {
                return Err(format!("{shape} {f}: tree {prod}, recursion {p}"));
            }
        }
    }
    Ok(format!("{leaves} leaves"))
}

fn nonsingular() -> Result<String, String> {
    let mut count = 0;
    for shape in both(6) {
        let choices = std::iter::once(Parameters::default_for(&shape))
            .chain([11u64, 12, 13].map(|seed| Parameters::random(&shape, seed)));
        for params in choices {
            count += 1;
            let m = evaluation_matrix(&shape, &params).map_err(|e| e.to_string())?;
            if !certify_nonsingular(&m).is_nonsingular() {
                return Err(format!("{shape} singular with {params:?}"));
            }
        }
    }
    Ok(format!("{count} matrices"))
}

fn hook_triangular() -> Result<String, String> {
    let mut pairs = 0;
    for shape in (1..=6).flat_map(hooks) {
        let r = check_hook_triangularity(&shape, &Parameters::default_for(&shape)).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("{shape}: {:?}", r.violations.first()));
        }
        pairs += r.pairs_checked;
    }
    Ok(format!("{pairs} entries checked"))
}

fn symmetric() -> Result<String, String> {
    let shapes = both(8);
    for shape in &shapes {
        let f = degree_polynomial(shape, &Parameters::default_for(shape)).map_err(|e| e.to_string())?;
        let r = check_shape_symmetry(shape, &f);
        if !(r.passed() && r.unit_extremes) || f.at_one() != factorial(shape.size()) {
            return Err(format!("{shape}: {r:?}"));
        }
    }
    Ok(format!("{} shapes", shapes.len()))
}

fn recurrences() -> Result<String, String> {
    let mut first = JRecurrence::new(Recurrence::First);
    let mut second = JRecurrence::new(Recurrence::Second);
    let mut count = 0;
    for a in 0..=7usize {
        for b in 0..=a.min(7 - a) {
            let shape = Shape::TwoColumn { a, b };
            let vals = j_enumerated_all(a, b, &Parameters::default_for(&shape)).map_err(|e| e.to_string())?;
            for (m, e) in vals.iter().enumerate() {
                count += 1;
                let idx = JIndex::new(a, b, m);
                if *e != first.get(idx) || *e != second.get(idx) {
                    return Err(format!("{idx:?}"));
                }
                if m == b && *e != j_initial(a, b) {
                    return Err(format!("initial condition at {idx:?}"));
                }
                if a == b && m >= 1 && *e != first.get(JIndex::new(b, b - m, 0)) {
                    return Err(format!("boundary at {idx:?}"));
                }
            }
        }
    }
    Ok(format!("{count} indices"))
}

fn divisibility() -> Result<String, String> {
    let mut first = JRecurrence::new(Recurrence::First);
    let indices = JIndex::up_to(7);
    for idx in &indices {
        let jt = first.get(*idx).div_exact(&tilde_divisor(*idx)).map_err(|e| format!("{idx:?}: {e}"))?;
        if !check_j_tilde_symmetry(&jt).passed() {
            return Err(format!("{idx:?} not symmetric"));
        }
    }
    Ok(format!("{} indices", indices.len()))
}

fn oracle_equivalence() -> Result<String, String> {
    let shapes = both(5);
    for shape in &shapes {
        let h = harmonic_hilbert(shape).map_err(|e| e.to_string())?;
        let f = degree_polynomial(shape, &Parameters::default_for(shape)).map_err(|e| e.to_string())?;
        if h != f || h.at_one() != factorial(shape.size()) {
            return Err(format!("{shape}: {h} vs {f}"));
        }
    }
    Ok(format!("{} shapes", shapes.len()))
}

fn overlap() -> Result<String, String> {
    let mut count = 0;
    for n in 2..=6 {
        let two = Shape::TwoColumn { a: n - 1, b: 1 };
        let hook = Shape::Hook { n, m: n - 2 };
        let params = Parameters::default_for(&two);
        for s in all_standard_fillings(&two) {
            count += 1;
            let h = Filling::parse_on(hook, &s.to_string()).unwrap();
            let a = phi_two_column(&s, &params).map_err(|e| e.to_string())?;
            let b = phi_hook(&h, &params).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("{s}: {a} vs {b}"));
            }
        }
    }
    Ok(format!("{count} fillings"))
}

#[test]
fn acceptance_criteria() {
    type Check = fn() -> Result<String, String>;
    let criteria: [(u8, &str, Check, u64); 10] = [
        (1, "F of (2,1) printed value", regression_f21, 1),
        (2, "worked phi examples", worked_examples, 1),
        (3, "tree equals recursion, n <= 6", tree_equals_recursion, 120),
        (4, "nonsingular, n <= 6, default + 3 seeds", nonsingular, 600),
        (5, "hook triangularity, n <= 6", hook_triangular, 300),
        (6, "F symmetric with top term, n <= 8", symmetric, 600),
        (7, "J enumeration = both recurrences, a + b <= 7", recurrences, 120),
        (8, "J~ divisibility and symmetry, a + b <= 7", divisibility, 60),
        (9, "oracle Hilbert series = F, n <= 5", oracle_equivalence, 300),
        (10, "two-column = hook on (2,1^(n-2)), n <= 6", overlap, 60),
    ];
    let mut failed = Vec::new();
    for (id, title, check, budget) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let ok = outcome.is_ok() && in_time;
        let detail = match &outcome {
            Ok(d) => d.clone(),
            Err(e) => e.clone(),
        };
        println!(
            "criterion {id:>2} {}: {title} ({detail}; {:.2}s of {budget}s)",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        if !ok {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
