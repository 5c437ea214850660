//! Degree polynomials, their symmetry, and the two-column J recurrences.

use kicking_basis::combinat::{Parameters, Shape};
use kicking_basis::hilbert::{check_shape_symmetry, degree_polynomial, j_enumerated, j_tilde, JIndex, JRecurrence, Recurrence};

fn main() {
    for spec in ["2,1", "2,2", "3,1,1", "2,2,1,1"] {
        let shape: Shape = spec.parse().unwrap();
        let f = degree_polynomial(&shape, &Parameters::default_for(&shape)).unwrap();
        let sym = check_shape_symmetry(&shape, &f);
        println!("F[{shape}] = {f}  (symmetric: {}, F(1,1) = {})", sym.passed(), f.at_one());
    }

    let mut first = JRecurrence::new(Recurrence::First);
    let mut second = JRecurrence::new(Recurrence::Second);
    for idx in [JIndex::new(2, 2, 1), JIndex::new(3, 2, 1), JIndex::new(4, 2, 0)] {
        let counted = j_enumerated(idx, &Parameters::default_for(&Shape::TwoColumn { a: idx.a, b: idx.b })).unwrap();
        let r = first.get(idx);
        println!("J^{}_{{{},{}}} = {r}  agrees: {}", idx.m, idx.a, idx.b, r == counted && r == second.get(idx));
        println!("  reduced: {}", j_tilde(idx).unwrap());
    }
}
