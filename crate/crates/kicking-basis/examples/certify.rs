//! Evaluates the basis on the orbit and certifies the matrix nonsingular.

use kicking_basis::combinat::{Parameters, Shape};
use kicking_basis::orbit::{certify_nonsingular, check_hook_triangularity, evaluation_matrix};

fn main() {
    for spec in ["2,2", "2,2,1", "4,1,1"] {
        let shape: Shape = spec.parse().unwrap();
        for params in [Parameters::default_for(&shape), Parameters::random(&shape, 7)] {
            let m = evaluation_matrix(&shape, &params).unwrap();
            let cert = certify_nonsingular(&m);
            println!(
                "{shape} dim {}: nonsingular={} via {} (checked: {})",
                m.dim(),
                cert.is_nonsingular(),
                cert.method(),
                cert.verify(&m)
            );
        }
    }

    // hook matrices are lower triangular in kicking order
    let hook = Shape::Hook { n: 4, m: 2 };
    let report = check_hook_triangularity(&hook, &Parameters::default_for(&hook)).unwrap();
    println!("{hook}: {} entries above the diagonal checked, {} nonzero", report.pairs_checked, report.violation_count);
}
