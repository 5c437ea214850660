//! The kicking basis of a shape: one product of linear factors per filling.
//!
//! `cargo run --example basis -- 3,1,1`

use kicking_basis::combinat::{Parameters, Shape};
use kicking_basis::kicking::kicking_basis;

fn main() {
    let shape: Shape = std::env::args().nth(1).as_deref().unwrap_or("2,1,1").parse().expect("shape");
    let params = Parameters::default_for(&shape);
    let basis = kicking_basis(&shape, &params).expect("basis");
    println!("{shape}: {} elements", basis.len());
    for (s, p) in &basis {
        let (t, q) = p.bidegree();
        println!("{s:>16}  {p}  t^{t} q^{q}");
    }
}
