//! Rank and kernel character of the contravariant form on a graded piece of
//! a standard module, computed by the exact and modular routes.

use h3::characters::context;
use h3::linalg::rank_bareiss;
use h3::reps::Label;
use h3::scalar::Rat;
use h3::verma::{certified_kernel, modular_ranks, Verma};

fn main() {
    let ctx = context();
    let cases = [("1/2", Label::ONE_PLUS, 2), ("1/2", Label::ONE_PLUS, 5), ("1/3", Label::THREE_MINUS, 3), ("3/2", Label::ONE_PLUS, 4)];
    for (c, tau, k) in cases {
        let c: Rat = c.parse().unwrap();
        let mut v = Verma::new(&ctx.group, &ctx.reps, tau, &c);
        let b = v.form(k).unwrap().clone();
        let exact = rank_bareiss(&b);
        let modular = modular_ranks(&ctx.group, &ctx.reps, tau, &c, k).unwrap();
        let (info, route) = certified_kernel(&mut v, &ctx.group, &ctx.reps, k).unwrap();
        let kernel: Vec<&str> = info.labels().iter().map(|l| l.name()).collect();
        println!(
            "c={c} τ={} k={k}: dim {} rank {exact} (mod p {:?}) kernel [{}] via {route:?}",
            tau.name(),
            info.dim,
            modular,
            kernel.join(" ")
        );
        assert_eq!(exact, info.rank);
    }
}
