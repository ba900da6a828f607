//! Builds the group, lists its conjugacy classes and prints the character
//! table of the ten irreducible representations.

use h3::characters::context;
use h3::reps::Label;

fn main() {
    let ctx = context();
    let g = &ctx.group;
    println!("|W| = {}, {} reflections, center {:?}", g.order(), g.reflections.len(), g.center());
    for c in &g.classes {
        println!("{:>12}  size {:>2}  order {}", c.label, c.size, g.elements[c.representative].order);
    }
    println!();
    for l in Label::ALL {
        let row: Vec<String> = ctx.reps.chi(l).0.iter().map(|x| x.to_string()).collect();
        println!("{:>4}  {}", l.name(), row.join("  "));
    }
    // every irreducible has norm one
    let sizes: Vec<usize> = g.classes.iter().map(|c| c.size).collect();
    for l in Label::ALL {
        assert!(ctx.reps.chi(l).inner(ctx.reps.chi(l), &sizes).is_one());
    }
}
