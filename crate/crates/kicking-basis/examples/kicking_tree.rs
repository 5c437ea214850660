//! Builds the kicking tree of a two-column shape and checks its leaves.

use kicking_basis::combinat::{Parameters, Shape};
use kicking_basis::kicking::{build_kicking_tree, phi_two_column};

fn main() {
    let shape = Shape::TwoColumn { a: 2, b: 1 };
    let params = Parameters::default_for(&shape);
    let tree = build_kicking_tree(&shape, &params).unwrap();
    print!("{}", tree.render());

    let leaves = tree.leaves();
    let agree = leaves.iter().all(|(s, p)| phi_two_column(s, &params).as_ref() == Ok(p));
    println!("{} leaves, recursion agrees: {agree}", leaves.len());
}
