//! Support dimension of the spherical irreducible and induction of
//! modules from rank-two parabolic subgroups.

use h3::characters::{kgroup_induct, kgroup_restrict, parabolic_trivial_module, support_dim, theorem_formula};
use h3::group::ParabolicKind;
use h3::reps::Label;
use h3::scalar::Rat;

fn main() {
    for c in ["1/10", "1/6", "1/5", "1/4", "1/3", "1/2", "2/3"] {
        let c: Rat = c.parse().unwrap();
        println!("dim supp L_{c}(1+) = {}", support_dim(&c).unwrap());
    }
    for (kind, c) in [(ParabolicKind::Z2xZ2, "1/2"), (ParabolicKind::S3, "1/2"), (ParabolicKind::Z2xZ2, "3/2")] {
        let c: Rat = c.parse().unwrap();
        let Some(triv) = parabolic_trivial_module(kind, &c) else { continue };
        let ind = kgroup_induct(kind, &triv, &c);
        println!("Ind_{} {:?} at c={c}: {ind}", kind.name(), triv);
    }
    let c: Rat = "1/2".parse().unwrap();
    let v = theorem_formula(&c, Label::ONE_PLUS);
    println!("Res_S3 L_{c}(1+) = {:?}", kgroup_restrict(&v, ParabolicKind::S3));
}
