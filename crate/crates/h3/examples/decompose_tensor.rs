//! Decomposes symmetric powers of the reflection representation and a
//! tensor product into irreducibles.

use h3::characters::context;
use h3::reps::{Label, SymPowers};

fn show(name: &str, m: [i64; 10]) {
    let parts: Vec<String> = Label::ALL
        .iter()
        .filter(|l| m[l.0] != 0)
        .map(|l| if m[l.0] == 1 { l.name().to_string() } else { format!("{}·{}", m[l.0], l.name()) })
        .collect();
    println!("{name:>12} = {}", parts.join(" + "));
}

fn main() {
    let ctx = context();
    let mut sym = SymPowers::new(&ctx.group, &ctx.reps);
    for k in 0..=6 {
        let m = ctx.reps.decompose(&sym.get(k)).expect("genuine character");
        show(&format!("S^{k}"), m);
    }
    let t = ctx.reps.chi(Label::THREE_MINUS).mul(ctx.reps.chi(Label::THREE_T_MINUS));
    show("3- ⊗ 3~-", ctx.reps.decompose(&t).unwrap());
    let t = ctx.reps.chi(Label::FOUR_PLUS).mul(ctx.reps.chi(Label::FIVE_MINUS));
    show("4+ ⊗ 5-", ctx.reps.decompose(&t).unwrap());
}
