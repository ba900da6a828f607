//! Closed formulas for [L_c(τ)] at arbitrary parameters, obtained by
//! transporting the base tables along c ↦ c + n and the Galois twist.

use h3::characters::{finite_dim_and_dimension, phi, theorem_formula};
use h3::reps::Label;
use h3::scalar::Rat;

fn main() {
    for c in ["7/10", "11/6", "-2/5", "5/2"] {
        let c: Rat = c.parse().unwrap();
        for tau in [Label::ONE_PLUS, Label::THREE_MINUS, Label::FOUR_PLUS] {
            let v = theorem_formula(&c, tau);
            let f = finite_dim_and_dimension(&v);
            let fin = f.dim.map_or("infinite".to_string(), |d| format!("dim {d}"));
            println!("L_{c}({tau}) = {v}  [{fin}]");
        }
    }
    // relabelling used for denominator 5
    let f = phi(2, 5);
    let moved: Vec<String> = Label::ALL.iter().map(|&l| format!("{l}->{}", f(l))).collect();
    println!("φ(2/5): {}", moved.join(" "));
}
