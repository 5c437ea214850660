//! Shapes, standard fillings, row preference and the straightening chain.
//!
//! `cargo run --example shapes_and_fillings`

use kicking_basis::combinat::{straightening_chain, Filling, Parameters, Shape};

fn main() {
    let shape: Shape = "2^2,1^2".parse().unwrap();
    println!("shape {shape}: {} cells, n(mu) = {}", shape.size(), shape.n_mu());

    let s = Filling::parse("2,4/6,1/5,3").unwrap();
    println!("filling {s} on {}", s.shape());
    for k in (1..=s.shape().size()).rev() {
        let pref: Vec<String> = s.row_preference(k).iter().map(|r| r.0.to_string()).collect();
        println!("  row preference for {k}: {}", pref.join(" "));
    }

    println!("straightening:");
    for t in straightening_chain(&s) {
        println!("  {t}");
    }

    let params = Parameters::default_for(&s.shape());
    let point: Vec<String> = s.orbit_point(&params).iter().map(|v| v.to_string()).collect();
    println!("orbit point ({})", point.join(", "));
}
