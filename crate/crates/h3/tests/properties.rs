use proptest::prelude::*;

use h3::characters::{
    context, finite_dim_and_dimension, parity_allowed, theorem_formula, weights, Budget, VirtualCharacter,
};
use h3::linalg::rank_bareiss;
use h3::reps::{Label, Model, Reps, SymPowers};
use h3::scalar::{Embedding, Field, Qs5, Rat, PRIME_A};
use h3::verify::{dunkl_defects, emit_report, run_suite, Format, SuiteOptions};
use h3::verma::{sl2_check, Options, Verma};

const BASE_C: [(i64, i64); 6] = [(1, 10), (1, 6), (1, 5), (1, 3), (1, 2), (3, 2)];

fn small_rat() -> impl Strategy<Value = Rat> {
    (-40i64..40, 1i64..30).prop_map(|(n, d)| Rat::new(n, d))
}

fn qs5() -> impl Strategy<Value = Qs5> {
    (small_rat(), small_rat()).prop_map(|(a, b)| Qs5::new(a, b))
}

fn label() -> impl Strategy<Value = Label> {
    (0usize..10).prop_map(Label)
}

fn base_c() -> impl Strategy<Value = Rat> {
    (0usize..6).prop_map(|i| Rat::new(BASE_C[i].0, BASE_C[i].1))
}

proptest! {
    #[test]
    fn field_axioms(a in qs5(), b in qs5(), c in qs5()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn galois_is_a_field_automorphism(a in qs5(), b in qs5()) {
        prop_assert_eq!((&a * &b).galois(), &a.galois() * &b.galois());
        prop_assert_eq!((&a + &b).galois(), &a.galois() + &b.galois());
        prop_assert_eq!(a.galois().galois(), a.clone());
        prop_assert_eq!(Qs5::from_rat(a.norm()), &a * &a.galois());
    }

    #[test]
    fn text_round_trip(a in qs5()) {
        let back: Qs5 = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rationals_are_canonical(n in -500i64..500, d in 1i64..200, k in 1i64..50) {
        let x = Rat::new(n * k, d * k);
        prop_assert_eq!(&x, &Rat::new(n, d));
        prop_assert!(x.denom() > &0.into());
        prop_assert_eq!(num_integer::Integer::gcd(x.numer(), x.denom()), if n == 0 { x.denom().clone() } else { 1.into() });
        let back: Rat = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn modular_embedding_is_a_ring_map(a in qs5(), b in qs5()) {
        let e = Embedding::<PRIME_A>::new(false);
        if let (Some(x), Some(y), Some(s), Some(p)) = (e.map(&a), e.map(&b), e.map(&(&a + &b)), e.map(&(&a * &b))) {
            prop_assert_eq!(Field::add(&x, &y), s);
            prop_assert_eq!(Field::mul(&x, &y), p);
        }
    }

    #[test]
    fn lowest_weights_are_affine(c in small_rat(), d in small_rat()) {
        let (wc, wd, ws) = (weights(&c), weights(&d), weights(&(&c + &d)));
        let base = weights(&Rat::zero());
        for i in 0..10 {
            // h_{c+d} - h_0 = (h_c - h_0) + (h_d - h_0)
            prop_assert_eq!(&ws[i] - &base[i], &(&wc[i] - &base[i]) + &(&wd[i] - &base[i]));
        }
    }

    #[test]
    fn closed_forms_respect_parity_and_sign_twist(n in 1i64..40, d in prop::sample::select(vec![2i64, 3, 5, 6, 10]), tau in label()) {
        let c = Rat::new(n, d);
        if num_integer::Integer::gcd(&n, &d) != 1 || (d == 2 && n % 2 == 0) {
            return Ok(());
        }
        let v = theorem_formula(&c, tau);
        prop_assert_eq!(v.get(tau), 1);
        for s in Label::ALL {
            if s != tau && v.get(s) != 0 {
                prop_assert!(parity_allowed(&c, tau, s), "{} at c={} has M({})", tau, c, s);
            }
        }
        let w = theorem_formula(&-&c, tau.sign_twist());
        prop_assert_eq!(w, v.sign_twist());
        let f = finite_dim_and_dimension(&v);
        if let Some(dim) = f.dim {
            prop_assert!(dim > 0);
        }
    }

    #[test]
    fn virtual_character_text_round_trip(coeffs in prop::array::uniform10(-3i64..4), c in base_c()) {
        let v = VirtualCharacter::new(&c, coeffs);
        prop_assert_eq!(VirtualCharacter::parse(&c, &v.to_string()).unwrap(), v);
    }
}

#[test]
fn symmetric_power_dimensions() {
    let ctx = context();
    let mut sym = SymPowers::new(&ctx.group, &ctx.reps);
    for k in 0..30 {
        let dim = sym.get(k).0[0].to_i64().unwrap();
        assert_eq!(dim, ((k + 1) * (k + 2) / 2) as i64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dunkl_operators_commute(c in base_c(), tau in label(), k in 2usize..=6) {
        let ctx = context();
        let opts = Options { keep_all: true, ..Options::default() };
        let mut v = Verma::with_options(&ctx.group, &ctx.reps, tau, &c, opts);
        v.advance_to(k).unwrap();
        prop_assert_eq!(dunkl_defects(&v, k), 0);
    }

    #[test]
    fn sl2_relations(c in base_c(), tau in label()) {
        let ctx = context();
        let rep = sl2_check(&ctx.group, &ctx.reps, tau, &c, 4).unwrap();
        prop_assert!(rep.relations_hold);
    }

    #[test]
    fn form_is_symmetric_and_invariant(c in base_c(), tau in label(), k in 1usize..=3, w in 0usize..120) {
        let ctx = context();
        let mut v = Verma::new(&ctx.group, &ctx.reps, tau, &c);
        let b = v.form(k).unwrap().clone();
        prop_assert!(b == b.transpose());
        let a = v.slice_action(w, k);
        prop_assert!(a.transpose().mul(&b).mul(&a) == b);
    }

    #[test]
    fn dunkl_matrices_ignore_root_scaling(c in base_c(), tau in label(), scales in prop::collection::vec((1i64..9, 1i64..5, -2i64..3), 15)) {
        let ctx = context();
        let scales: Vec<Qs5> = scales.iter().map(|&(n, d, b)| Qs5::from_frac(n, d, b, 1)).filter(|x| !x.is_zero()).collect();
        prop_assume!(scales.len() == 15);
        let plain = Options { keep_all: true, ..Options::default() };
        let scaled = Options { keep_all: true, root_scales: scales, ..Options::default() };
        let mut a = Verma::with_options(&ctx.group, &ctx.reps, tau, &c, plain);
        let mut b = Verma::with_options(&ctx.group, &ctx.reps, tau, &c, scaled);
        for k in 1..=3 {
            for i in 0..3 {
                let x = a.dunkl(k, i).unwrap().clone();
                prop_assert!(&x == b.dunkl(k, i).unwrap());
            }
        }
    }

    #[test]
    fn ranks_do_not_depend_on_the_model(c in base_c(), tau in prop::sample::select(vec![Label::FOUR_PLUS, Label::FOUR_MINUS, Label::FIVE_PLUS, Label::FIVE_MINUS]), k in 1usize..=3) {
        let ctx = context();
        let alt = Reps::build_with(&ctx.group, Model::Alternate).unwrap();
        let mut a = Verma::new(&ctx.group, &ctx.reps, tau, &c);
        let mut b = Verma::new(&ctx.group, &alt, tau, &c);
        prop_assert_eq!(rank_bareiss(a.form(k).unwrap()), rank_bareiss(b.form(k).unwrap()));
    }
}

#[test]
fn report_is_deterministic() {
    let opts = SuiteOptions {
        filter: Some("transport".into()),
        budget: Budget::default(),
        extended: false,
    };
    let a = emit_report(&run_suite(&opts), Format::Json, false);
    let b = emit_report(&run_suite(&opts), Format::Json, false);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c.get("elapsed").is_none()));
}
