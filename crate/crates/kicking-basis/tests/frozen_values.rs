//! Values computed by an independent script and frozen here.

use kicking_basis::combinat::{Filling, Parameters, Shape};
use kicking_basis::hilbert::{degree_polynomial, j_enumerated, j_recurrence, JIndex, Recurrence};
use kicking_basis::kicking::{kicking_basis, phi};
use kicking_basis::linfactor::QTPoly;
use kicking_basis::oracle::{delta_mu, harmonic_hilbert};
use kicking_basis::orbit::{certify_nonsingular, evaluation_matrix, Certificate};

fn poly(s: &str) -> QTPoly {
    s.parse().unwrap()
}

const HILBERT: [(&str, bool, &str); 6] = [
    ("2,2", false, "1 + 3*q + 2*q^2 + 3*t + 6*q*t + 3*q^2*t + 2*t^2 + 3*q*t^2 + q^2*t^2"),
    ("2,1,1", false, "1 + 3*q + 3*t + 5*q*t + 5*t^2 + 3*q*t^2 + 3*t^3 + q*t^3"),
    ("2,2,1", false, "1 + 4*q + 5*q^2 + 4*t + 15*q*t + 11*q^2*t + 9*t^2 + 22*q*t^2 + 9*q^2*t^2 + 11*t^3 + 15*q*t^3 + 4*q^2*t^3 + 5*t^4 + 4*q*t^4 + q^2*t^4"),
    ("3,1", true, "1 + 3*q + 5*q^2 + 3*q^3 + 3*t + 5*q*t + 3*q^2*t + q^3*t"),
    ("4,1", true, "1 + 4*q + 9*q^2 + 15*q^3 + 16*q^4 + 11*q^5 + 4*q^6 + 4*t + 11*q*t + 16*q^2*t + 15*q^3*t + 9*q^4*t + 4*q^5*t + q^6*t"),
    ("3,1,1", true, "1 + 4*q + 9*q^2 + 6*q^3 + 4*t + 11*q*t + 16*q^2*t + 9*q^3*t + 9*t^2 + 16*q*t^2 + 11*q^2*t^2 + 4*q^3*t^2 + 6*t^3 + 9*q*t^3 + 4*q^2*t^3 + q^3*t^3"),
];

fn shape(spec: &str, hook: bool) -> Shape {
    let s: Shape = spec.parse().unwrap();
    if hook {
        s.as_hook().unwrap()
    } else {
        s
    }
}

#[test]
fn harmonic_series_match_frozen_values() {
    for (spec, hook, want) in HILBERT {
        let s = shape(spec, hook);
        assert_eq!(harmonic_hilbert(&s).unwrap(), poly(want), "{spec}");
    }
}

#[test]
fn degree_polynomials_match_frozen_values() {
    for (spec, hook, want) in HILBERT {
        let s = shape(spec, hook);
        assert_eq!(degree_polynomial(&s, &Parameters::default_for(&s)).unwrap(), poly(want), "{spec}");
    }
}

#[test]
fn conjugate_shapes_swap_q_and_t() {
    let col = Shape::TwoColumn { a: 2, b: 0 };
    let row = Shape::Hook { n: 2, m: 0 };
    assert_eq!(harmonic_hilbert(&col).unwrap().swap_qt(), harmonic_hilbert(&row).unwrap());
    let col = Shape::TwoColumn { a: 3, b: 0 };
    let row = Shape::Hook { n: 3, m: 0 };
    assert_eq!(harmonic_hilbert(&col).unwrap().swap_qt(), harmonic_hilbert(&row).unwrap());
    let f = harmonic_hilbert(&Shape::TwoColumn { a: 2, b: 1 }).unwrap();
    assert_eq!(f.swap_qt(), f);
}

#[test]
fn refined_j_values() {
    let cases = [
        (JIndex::new(2, 2, 1), "1 + 2*q + 2*t + q*t"),
        (JIndex::new(3, 2, 1), "1 + 5*q + 6*t + 6*q*t + 5*t^2 + q*t^2"),
        (JIndex::new(3, 1, 1), "3 + 3*t"),
        (JIndex::new(4, 2, 1), "1 + 9*q + 8*t + 22*q*t + 20*t^2 + 20*q*t^2 + 22*t^3 + 8*q*t^3 + 9*t^4 + q*t^4"),
    ];
    for (idx, want) in cases {
        let shape = Shape::TwoColumn { a: idx.a, b: idx.b };
        assert_eq!(j_enumerated(idx, &Parameters::default_for(&shape)).unwrap(), poly(want), "{idx:?}");
        assert_eq!(j_recurrence(idx, Recurrence::Second), poly(want), "{idx:?}");
    }
}

#[test]
fn delta_for_2_1_is_alternating() {
    let d = delta_mu(&Shape::TwoColumn { a: 2, b: 1 }).unwrap();
    assert_eq!(d.len(), 6);
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        assert_eq!(d.swap_points(i, j), d.scale(&-kicking_basis::linfactor::rat(1)));
    }
}

#[test]
fn rectangle_and_near_rectangle_matrices() {
    for spec in ["2,2", "2,2,1"] {
        let s: Shape = spec.parse().unwrap();
        let m = evaluation_matrix(&s, &Parameters::default_for(&s)).unwrap();
        let c = certify_nonsingular(&m);
        assert!(matches!(c, Certificate::Nonsingular(_)), "{spec}");
        assert!(c.verify(&m));
    }
}

#[test]
fn basis_of_2_2_is_distinct() {
    let s = Shape::TwoColumn { a: 2, b: 2 };
    let basis = kicking_basis(&s, &Parameters::default_for(&s)).unwrap();
    let mut polys: Vec<String> = basis.iter().map(|(_, p)| p.to_string()).collect();
    polys.sort();
    polys.dedup();
    assert_eq!(polys.len(), 24);
}

#[test]
fn phi_dispatches_on_shape_kind() {
    let s = Filling::parse("1,2,3").unwrap();
    assert!(phi(&s, &Parameters::default_for(&s.shape())).unwrap().is_one());
    let s = Filling::parse("3,2,1").unwrap();
    assert_eq!(phi(&s, &Parameters::default_for(&s.shape())).unwrap().to_string(), "(y1-b1)(y1-b2)(y2-b1)");
}
