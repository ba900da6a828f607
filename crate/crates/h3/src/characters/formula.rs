//! Closed-form decompositions of irreducibles into standard modules, and
//! their transport to other parameters.

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::VirtualCharacter;
use crate::reps::Label;
use crate::scalar::Rat;

type Row = (&'static str, &'static str);

const ONE_TENTH: &[Row] = &[
    ("1+", "M(1+) - M(3-) + M(3+) - M(1-)"),
    ("3+", "M(3+) - M(1-)"),
    ("3-", "M(3-) - M(3+) + M(1-)"),
];

const ONE_SIXTH: &[Row] = &[
    ("1+", "M(1+) - M(5+) + M(5-) - M(1-)"),
    ("5+", "M(5+) - M(5-) + M(1-)"),
    ("5-", "M(5-) - M(1-)"),
];

const ONE_FIFTH: &[Row] = &[
    ("1+", "M(1+) - M(4-) + M(3~+)"),
    ("3~-", "M(3~-) - M(4+) + M(1-)"),
    ("4+", "M(4+) - M(1-)"),
    ("4-", "M(4-) - M(3~+)"),
];

const ONE_THIRD: &[Row] = &[
    ("1+", "M(1+) - M(5+) + M(4-)"),
    ("4+", "M(4+) - M(5-) + M(1-)"),
    ("5-", "M(5-) - M(1-)"),
    ("5+", "M(5+) - M(4-)"),
];

const HALF: &[Row] = &[
    ("1+", "M(1+) - M(3-) - M(3~-) + M(5+) - M(5-) + M(3+) + M(3~+) - M(1-)"),
    ("3+", "M(3+) - M(1-)"),
    ("3-", "M(3-) - M(5+) + M(5-) - M(3+)"),
    ("3~+", "M(3~+) - M(1-)"),
    ("3~-", "M(3~-) - M(5+) + M(5-) - M(3~+)"),
    ("5+", "M(5+) - 2M(5-) + M(3+) + M(3~+) - M(1-)"),
    ("5-", "M(5-) - M(3+) - M(3~+) + M(1-)"),
];

// Composition series: [M(τ)] as a sum of irreducibles.
const COMP_ONE_TENTH: &[Row] = &[
    ("1+", "L(1+) + L(3-)"),
    ("3+", "L(3+) + L(1-)"),
    ("3-", "L(3-) + L(3+)"),
];

const COMP_ONE_SIXTH: &[Row] = &[
    ("1+", "L(1+) + L(5+)"),
    ("5+", "L(5+) + L(5-)"),
    ("5-", "L(5-) + L(1-)"),
];

const COMP_ONE_FIFTH: &[Row] = &[
    ("1+", "L(1+) + L(4-)"),
    ("3~-", "L(3~-) + L(4+)"),
    ("4+", "L(4+) + L(1-)"),
    ("4-", "L(4-) + L(3~+)"),
];

const COMP_ONE_THIRD: &[Row] = &[
    ("1+", "L(1+) + L(5+)"),
    ("4+", "L(4+) + L(5-)"),
    ("5-", "L(5-) + L(1-)"),
    ("5+", "L(5+) + L(4-)"),
];

const COMP_HALF: &[Row] = &[
    ("1+", "L(1+) + L(3-) + L(3~-) + L(5+) + L(5-) + L(1-)"),
    ("3+", "L(3+) + L(1-)"),
    ("3-", "L(3-) + L(5+) + L(5-) + L(3+) + L(1-)"),
    ("3~+", "L(3~+) + L(1-)"),
    ("3~-", "L(3~-) + L(5+) + L(5-) + L(3~+) + L(1-)"),
    ("5+", "L(5+) + 2L(5-) + L(3+) + L(3~+) + L(1-)"),
    ("5-", "L(5-) + L(3+) + L(3~+) + L(1-)"),
];

fn base_rows(d: i64) -> Option<&'static [Row]> {
    match d {
        10 => Some(ONE_TENTH),
        6 => Some(ONE_SIXTH),
        5 => Some(ONE_FIFTH),
        3 => Some(ONE_THIRD),
        2 => Some(HALF),
        _ => None,
    }
}

fn comp_rows(d: i64) -> Option<&'static [Row]> {
    match d {
        10 => Some(COMP_ONE_TENTH),
        6 => Some(COMP_ONE_SIXTH),
        5 => Some(COMP_ONE_FIFTH),
        3 => Some(COMP_ONE_THIRD),
        2 => Some(COMP_HALF),
        _ => None,
    }
}

fn table(c: &Rat, rows: &[Row]) -> [[i64; 10]; 10] {
    let mut out: [[i64; 10]; 10] = std::array::from_fn(|i| {
        let mut e = [0; 10];
        e[i] = 1;
        e
    });
    for (tau, expr) in rows {
        let l: Label = tau.parse().expect("table label");
        let expr = expr.replace("L(", "M(");
        out[l.0] = VirtualCharacter::parse(c, &expr).expect("table row").coeffs;
    }
    out
}

/// Reduced `(r, d)` with `d > 0`.
fn split(c: &Rat) -> (i64, i64) {
    let r = c.numer().to_i64().expect("small numerator");
    let d = c.denom().to_i64().expect("small denominator");
    (r, d)
}

/// Relabelling that carries the decompositions at `1/d` to `r/d`, for
/// `d ∈ {3, 5, 6, 10}` and `r > 0` coprime to `d`.
pub fn phi(r: i64, d: i64) -> impl Fn(Label) -> Label {
    let swap4 = r.is_even();
    let swap3 = (d == 5 && matches!(r.rem_euclid(5), 2 | 3)) || (d == 10 && matches!(r.rem_euclid(10), 3 | 7));
    move |l: Label| {
        let s = l.name();
        let t = match s {
            "4+" if swap4 => "4-",
            "4-" if swap4 => "4+",
            "3+" if swap3 => "3~+",
            "3-" if swap3 => "3~-",
            "3~+" if swap3 => "3+",
            "3~-" if swap3 => "3-",
            _ => s,
        };
        t.parse().expect("label")
    }
}

/// `[n_{τσ}]` for every τ at parameter `c`: row τ holds the coefficients
/// of `L_c(τ)` over standard modules.
pub fn theorem_table(c: &Rat) -> [[i64; 10]; 10] {
    if c.is_negative() {
        let pos = theorem_table(&-c);
        let mut out = [[0i64; 10]; 10];
        for t in Label::ALL {
            let row = VirtualCharacter::new(&-c, pos[t.0]).sign_twist();
            out[t.sign_twist().0] = row.coeffs;
        }
        return out;
    }
    let id = table(c, &[]);
    if c.is_zero() {
        return id;
    }
    let (r, d) = split(c);
    let Some(rows) = base_rows(d) else { return id };
    if d == 2 {
        return table(c, rows);
    }
    let base = table(c, rows);
    let f = phi(r, d);
    let mut out = id;
    for t in Label::ALL {
        let row = VirtualCharacter::new(c, base[t.0]).permute(&f);
        out[f(t).0] = row.coeffs;
    }
    out
}

/// Closed-form class of `L_c(τ)`.
pub fn theorem_formula(c: &Rat, tau: Label) -> VirtualCharacter {
    VirtualCharacter::new(c, theorem_table(c)[tau.0])
}

/// `[n'_{τσ}]` at a base parameter `1/d` (and `3/2`): row τ holds the
/// multiplicities of `L(σ)` in `M(τ)`. `None` away from these values.
pub fn composition_table(c: &Rat) -> Option<[[i64; 10]; 10]> {
    let (r, d) = split(c);
    let ok = r.is_one() || (d == 2 && r.is_positive() && r.is_odd());
    if !ok {
        return None;
    }
    comp_rows(d).map(|rows| table(c, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(c: &str, tau: &str) -> String {
        theorem_formula(&c.parse().unwrap(), tau.parse().unwrap()).to_string()
    }

    fn same(c: &str, got: String, want: &str) {
        let c: Rat = c.parse().unwrap();
        assert_eq!(got, VirtualCharacter::parse(&c, want).unwrap().to_string());
    }

    #[test]
    fn transported_examples() {
        same("7/10", f("7/10", "1+"), "M(1+) - M(3~-) + M(3~+) - M(1-)");
        same("-1/6", f("-1/6", "1-"), "M(1-) - M(5-) + M(5+) - M(1+)");
        same("4/5", f("4/5", "1+"), "M(1+) - M(4+) + M(3~+)");
        for l in Label::ALL {
            assert_eq!(theorem_formula(&Rat::new(2, 7), l), VirtualCharacter::standard(&Rat::new(2, 7), l));
            assert_eq!(theorem_formula(&Rat::zero(), l), VirtualCharacter::standard(&Rat::zero(), l));
        }
    }

    #[test]
    fn phi_is_an_involution() {
        for (r, d) in [(2, 5), (3, 10), (4, 3), (7, 6)] {
            let p = phi(r, d);
            for l in Label::ALL {
                assert_eq!(p(p(l)), l);
            }
        }
    }

    #[test]
    fn composition_inverts_decomposition() {
        for c in ["1/10", "1/6", "1/5", "1/3", "1/2", "3/2"] {
            let c: Rat = c.parse().unwrap();
            let n = theorem_table(&c);
            let m = composition_table(&c).unwrap();
            for i in 0..10 {
                for j in 0..10 {
                    let s: i64 = (0..10).map(|k| n[i][k] * m[k][j]).sum();
                    assert_eq!(s, i64::from(i == j), "c={c} ({i},{j})");
                }
            }
        }
    }
}
