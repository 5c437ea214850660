//! Independent check: the Hilbert series of the derivative closure of the
//! alternant equals the degree polynomial of the kicking basis.

use kicking_basis::combinat::{Parameters, Shape};
use kicking_basis::hilbert::degree_polynomial;
use kicking_basis::oracle::{delta_mu, harmonic_hilbert};

fn main() {
    let shape: Shape = "2,1".parse().unwrap();
    println!("Delta[{shape}] = {}", delta_mu(&shape).unwrap());

    for spec in ["2,1,1", "2,2", "3,1", "2,2,1"] {
        let shape: Shape = spec.parse().unwrap();
        let h = harmonic_hilbert(&shape).unwrap();
        let f = degree_polynomial(&shape, &Parameters::default_for(&shape)).unwrap();
        println!("{shape}: {h}  {}", if h == f { "MATCH" } else { "MISMATCH" });
    }
}
