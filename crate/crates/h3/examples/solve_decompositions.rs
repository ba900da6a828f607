//! Determines [L_c(τ)] in terms of standard modules for every τ at one
//! parameter, then prints the constraint certificate for a single row.

use h3::characters::{solve_all, Budget, VermaOracle};
use h3::scalar::Rat;

fn main() {
    let c: Rat = std::env::args().nth(1).unwrap_or_else(|| "1/3".into()).parse().expect("c as a fraction");
    let mut oracle = VermaOracle::new();
    let rows = solve_all(&c, &mut oracle, Budget::from_env()).expect("solver runs");
    for s in &rows {
        match &s.coeffs {
            Some(v) => {
                let fin = match s.dim {
                    Some(d) if s.finite == Some(true) => format!("finite, dim {d}"),
                    _ => "infinite".into(),
                };
                println!("L_{c}({}) = {v}  [{fin}]", s.tau);
            }
            None => println!("L_{c}({}) unresolved: {:?}", s.tau, s.unresolved.as_ref().map(|u| &u.reason)),
        }
    }
    if let Some(s) = rows.iter().find(|s| s.certificate.len() > 1) {
        println!("\ncertificate for τ={}:", s.tau);
        for r in &s.certificate {
            let pinned: Vec<&str> = r.pinned.iter().map(|l| l.name()).collect();
            println!("  {:<10} {}  (fixes {})", r.kind.name(), r.detail, pinned.join(" "));
        }
    }
}
