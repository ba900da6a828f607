//! Lowest weights h_c(τ) of standard modules for a few parameters, with the
//! degree gaps that allow a singular copy of σ inside M(τ).

use h3::characters::{context, degree_gap, weights};
use h3::reps::Label;
use h3::scalar::Rat;

fn main() {
    let ctx = context();
    println!("central constants: {:?}", ctx.central_constants().iter().map(|x| x.to_string()).collect::<Vec<_>>());
    for c in ["1/10", "1/3", "1/2", "3/2"] {
        let c: Rat = c.parse().unwrap();
        let h = weights(&c);
        let row: Vec<String> = Label::ALL.iter().map(|l| format!("{}:{}", l.name(), h[l.0])).collect();
        println!("c={c:<5} {}", row.join(" "));
        let gaps: Vec<String> = Label::ALL
            .iter()
            .filter_map(|&s| degree_gap(&c, Label::ONE_PLUS, s).map(|d| format!("{}@{d}", s.name())))
            .collect();
        println!("        above 1+: {}", gaps.join(" "));
    }
}
