//! The ten irreducible representations of H3 as explicit matrices, with
//! invariant forms, and the character calculus on the ten classes.
//!
//! Construction: the reflection representation `3-`, its determinant
//! `1-`, twists by `1-`, the entrywise Galois conjugate `3~-`, and
//! isotypic projections `P = (dim/120) Σ χ(w) w` inside `S²(3-)` and
//! `3- ⊗ 3~-` for the 5- and 4-dimensional ones.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::group::{H3, Parabolic};
use crate::linalg::{column_echelon, Mat};
use crate::scalar::{Qs5, Rat};

pub const LABELS: [&str; 10] = ["1+", "1-", "3+", "3-", "3~+", "3~-", "4+", "4-", "5+", "5-"];
pub const DIMS: [usize; 10] = [1, 1, 3, 3, 3, 3, 4, 4, 5, 5];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("unknown irrep label {0:?}")]
    BadLabel(String),
    #[error("multiplicity of {label} is not an integer ({value})")]
    NonInteger { label: &'static str, value: String },
    #[error("negative multiplicity {value} of {label} in a genuine character")]
    Negative { label: &'static str, value: i64 },
    #[error("isotypic extraction found {found} independent vectors for {label}, expected {expected}")]
    Extraction { label: &'static str, found: usize, expected: usize },
    #[error("cannot parse character expression {0:?}")]
    Expr(String),
}

/// Irrep label, stored as its index in [`LABELS`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Label(pub usize);

impl Label {
    pub const ALL: [Label; 10] = [
        Label(0),
        Label(1),
        Label(2),
        Label(3),
        Label(4),
        Label(5),
        Label(6),
        Label(7),
        Label(8),
        Label(9),
    ];
    pub const ONE_PLUS: Label = Label(0);
    pub const ONE_MINUS: Label = Label(1);
    pub const THREE_PLUS: Label = Label(2);
    pub const THREE_MINUS: Label = Label(3);
    pub const THREE_T_PLUS: Label = Label(4);
    pub const THREE_T_MINUS: Label = Label(5);
    pub const FOUR_PLUS: Label = Label(6);
    pub const FOUR_MINUS: Label = Label(7);
    pub const FIVE_PLUS: Label = Label(8);
    pub const FIVE_MINUS: Label = Label(9);

    pub fn name(self) -> &'static str {
        LABELS[self.0]
    }

    pub fn dim(self) -> usize {
        DIMS[self.0]
    }

    /// Tensoring with the sign character flips the subscript.
    pub fn sign_twist(self) -> Label {
        Label(self.0 ^ 1)
    }

    /// √5 ↦ −√5 exchanges 3 and 3~ and fixes everything else.
    pub fn galois_twist(self) -> Label {
        match self.0 {
            2 => Label(4),
            3 => Label(5),
            4 => Label(2),
            5 => Label(3),
            i => Label(i),
        }
    }

    /// Eigenvalue of −Id on the representation.
    pub fn central_sign(self) -> i64 {
        if self.0 % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Label {
    type Err = RepError;
    fn from_str(s: &str) -> Result<Label, RepError> {
        let t: String = s
            .trim()
            .replace(['_', ' '], "")
            .replace('−', "-")
            .replace("~3", "3~")
            .replace("t3", "3~");
        LABELS
            .iter()
            .position(|l| *l == t)
            .map(Label)
            .ok_or_else(|| RepError::BadLabel(s.to_string()))
    }
}

/// Values on the ten classes, in the group's class order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassFunction(pub Vec<Qs5>);

impl ClassFunction {
    pub fn zero() -> Self {
        ClassFunction(vec![Qs5::zero(); 10])
    }

    pub fn constant(v: i64) -> Self {
        ClassFunction(vec![Qs5::from_int(v); 10])
    }

    pub fn add(&self, o: &Self) -> Self {
        ClassFunction(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        ClassFunction(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        ClassFunction(self.0.iter().zip(&o.0).map(|(a, b)| a * b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        let s = Qs5::from_int(k);
        ClassFunction(self.0.iter().map(|a| a * &s).collect())
    }

    pub fn galois(&self) -> Self {
        ClassFunction(self.0.iter().map(Qs5::galois).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Qs5::is_zero)
    }

    /// `(1/120) Σ_classes size · a · b` (characters of H3 are real).
    pub fn inner(&self, o: &Self, sizes: &[usize]) -> Qs5 {
        let mut acc = Qs5::zero();
        for ((a, b), &s) in self.0.iter().zip(&o.0).zip(sizes) {
            acc += &(&(a * b) * &Qs5::from_int(s as i64));
        }
        let n: usize = sizes.iter().sum();
        acc.scale(&Rat::new(1, n as i64))
    }

    pub fn degree(&self) -> &Qs5 {
        &self.0[0]
    }
}

#[derive(Clone, Debug)]
pub struct Irrep {
    pub label: Label,
    pub dim: usize,
    pub gens: [Mat<Qs5>; 3],
    pub char_vec: ClassFunction,
    pub inv_form: Mat<Qs5>,
    /// Matrices of all 120 elements, indexed like `H3::elements`.
    pub mats: Vec<Mat<Qs5>>,
}

/// Which extraction recipe produces the 4- and 5-dimensional models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// `5+` from S²(3-), `4+` from 3-⊗3~-, first independent columns.
    Standard,
    /// Both from 3+⊗3~+ (isomorphic ambient, different matrices), using
    /// the last independent columns.
    Alternate,
}

#[derive(Clone, Debug)]
pub struct Reps {
    pub irreps: Vec<Irrep>,
    pub class_sizes: Vec<usize>,
    pub model: Model,
}

fn galois_mat(m: &Mat<Qs5>) -> Mat<Qs5> {
    m.map(Qs5::galois)
}

fn class_traces(g: &H3, mats: &[Mat<Qs5>]) -> ClassFunction {
    ClassFunction(g.classes.iter().map(|c| mats[c.representative].trace()).collect())
}

/// Matrices of S²(V) on the monomial basis `e_i e_j` (i ≤ j) and the
/// form induced from `form ⊗ form` on symmetric tensors.
fn sym_square(gens: &[Mat<Qs5>; 3], form: &Mat<Qs5>) -> ([Mat<Qs5>; 3], Mat<Qs5>) {
    let n = form.rows;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let idx = |i: usize, j: usize| {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    let act = |g: &Mat<Qs5>| {
        let mut m: Mat<Qs5> = Mat::zeros(pairs.len(), pairs.len());
        for (col, &(i, j)) in pairs.iter().enumerate() {
            for k in 0..n {
                for l in 0..n {
                    let v = g.get(k, i) * g.get(l, j);
                    if v.is_zero() {
                        continue;
                    }
                    // e_k e_l; the unordered monomial gets both orders
                    let r = idx(k, l);
                    let cur = m.get(r, col).clone();
                    m.set(r, col, &cur + &v);
                }
            }
        }
        m
    };
    // embed monomial e_i e_j as the symmetric tensor (e_i⊗e_j + e_j⊗e_i)/2
    let mut t = Mat::zeros(n * n, pairs.len());
    let half = Qs5::from_frac(1, 2, 0, 1);
    for (col, &(i, j)) in pairs.iter().enumerate() {
        if i == j {
            t.set(i * n + i, col, Qs5::one());
        } else {
            t.set(i * n + j, col, half.clone());
            t.set(j * n + i, col, half.clone());
        }
    }
    let ff = form.kron(form);
    let sform = t.transpose().mul(&ff).mul(&t);
    let sg = [act(&gens[0]), act(&gens[1]), act(&gens[2])];
    (sg, sform)
}

/// Restrict a representation to the image of the isotypic projector for
/// `target`; `reverse` takes the last independent columns instead of the
/// first.
fn extract(
    g: &H3,
    label: Label,
    target: &ClassFunction,
    ambient: &[Mat<Qs5>],
    form: &Mat<Qs5>,
    reverse: bool,
) -> Result<([Mat<Qs5>; 3], Mat<Qs5>), RepError> {
    let n = ambient[0].rows;
    let mut p = Mat::zeros(n, n);
    for (e, m) in ambient.iter().enumerate() {
        let c = &target.0[g.elements[e].class_id];
        if c.is_zero() {
            continue;
        }
        p = p.add(&m.scale(c));
    }
    let mut cols: Vec<usize> = (0..n).collect();
    if reverse {
        cols.reverse();
    }
    let pcols = p.select_cols(&cols);
    let (basis, key) = column_echelon(&pcols);
    if basis.cols != label.dim() {
        return Err(RepError::Extraction {
            label: label.name(),
            found: basis.cols,
            expected: label.dim(),
        });
    }
    let restrict = |m: &Mat<Qs5>| m.mul(&basis).select_rows(&key);
    let gens = [
        restrict(&ambient[g.generators[0]]),
        restrict(&ambient[g.generators[1]]),
        restrict(&ambient[g.generators[2]]),
    ];
    let f = basis.transpose().mul(form).mul(&basis);
    Ok((gens, f))
}

impl Reps {
    pub fn build(g: &H3) -> Result<Reps, RepError> {
        Reps::build_with(g, Model::Standard)
    }

    pub fn build_with(g: &H3, model: Model) -> Result<Reps, RepError> {
        let sgen = |i: usize| g.elements[g.generators[i]].matrix.clone();
        let refl = [sgen(0), sgen(1), sgen(2)];
        let one = |v: i64| Mat::from_rows(vec![vec![Qs5::from_int(v)]]);
        let mk = |label: Label, gens: [Mat<Qs5>; 3], form: Mat<Qs5>| {
            let mats = g.represent(&gens);
            let char_vec = class_traces(g, &mats);
            Irrep {
                label,
                dim: label.dim(),
                gens,
                char_vec,
                inv_form: form,
                mats,
            }
        };
        let neg3 = |gs: &[Mat<Qs5>; 3]| [gs[0].neg(), gs[1].neg(), gs[2].neg()];

        let r1p = mk(Label::ONE_PLUS, [one(1), one(1), one(1)], one(1));
        let r1m = mk(Label::ONE_MINUS, [one(-1), one(-1), one(-1)], one(1));
        let r3m = mk(Label::THREE_MINUS, refl.clone(), g.gram.clone());
        let r3p = mk(Label::THREE_PLUS, neg3(&refl), g.gram.clone());
        let grefl = [galois_mat(&refl[0]), galois_mat(&refl[1]), galois_mat(&refl[2])];
        let ggram = galois_mat(&g.gram);
        let r3tm = mk(Label::THREE_T_MINUS, grefl.clone(), ggram.clone());
        let r3tp = mk(Label::THREE_T_PLUS, neg3(&grefl), ggram.clone());

        let (sgens, sform) = sym_square(&refl, &g.gram);
        let smats = g.represent(&sgens);
        let chi_s2 = class_traces(g, &smats);
        let chi5 = chi_s2.sub(&r1p.char_vec);
        let tens_gens = |a: &[Mat<Qs5>; 3], b: &[Mat<Qs5>; 3]| {
            [a[0].kron(&b[0]), a[1].kron(&b[1]), a[2].kron(&b[2])]
        };
        let (tgens, tform) = match model {
            Model::Standard => (tens_gens(&refl, &grefl), g.gram.kron(&ggram)),
            Model::Alternate => (tens_gens(&neg3(&refl), &neg3(&grefl)), g.gram.kron(&ggram)),
        };
        let tmats = g.represent(&tgens);
        let chi_t = class_traces(g, &tmats);
        let chi4 = chi_t.sub(&chi5);

        let proj = |chi: &ClassFunction, d: usize| {
            ClassFunction(chi.0.iter().map(|x| x.scale(&Rat::new(d as i64, 120))).collect())
        };
        let (g5, f5) = match model {
            Model::Standard => extract(g, Label::FIVE_PLUS, &proj(&chi5, 5), &smats, &sform, false)?,
            Model::Alternate => extract(g, Label::FIVE_PLUS, &proj(&chi5, 5), &tmats, &tform, true)?,
        };
        let rev = model == Model::Alternate;
        let (g4, f4) = extract(g, Label::FOUR_PLUS, &proj(&chi4, 4), &tmats, &tform, rev)?;
        let r5p = mk(Label::FIVE_PLUS, g5.clone(), f5.clone());
        let r5m = mk(Label::FIVE_MINUS, neg3(&g5), f5);
        let r4p = mk(Label::FOUR_PLUS, g4.clone(), f4.clone());
        let r4m = mk(Label::FOUR_MINUS, neg3(&g4), f4);

        let irreps = vec![r1p, r1m, r3p, r3m, r3tp, r3tm, r4p, r4m, r5p, r5m];
        Ok(Reps {
            irreps,
            class_sizes: g.classes.iter().map(|c| c.size).collect(),
            model,
        })
    }

    pub fn get(&self, l: Label) -> &Irrep {
        &self.irreps[l.0]
    }

    pub fn chi(&self, l: Label) -> &ClassFunction {
        &self.irreps[l.0].char_vec
    }

    /// Character of h* = `3-`.
    pub fn reflection_char(&self) -> &ClassFunction {
        self.chi(Label::THREE_MINUS)
    }

    /// Multiplicities `⟨cf, χ_σ⟩` for every label; must be integers.
    pub fn decompose(&self, cf: &ClassFunction) -> Result<[i64; 10], RepError> {
        let mut out = [0i64; 10];
        for l in Label::ALL {
            let m = cf.inner(self.chi(l), &self.class_sizes);
            match m.to_i64() {
                Some(v) => out[l.0] = v,
                None => {
                    return Err(RepError::NonInteger {
                        label: l.name(),
                        value: m.to_string(),
                    })
                }
            }
        }
        Ok(out)
    }

    /// As [`Reps::decompose`], additionally rejecting negative entries.
    pub fn decompose_genuine(&self, cf: &ClassFunction) -> Result<[i64; 10], RepError> {
        let m = self.decompose(cf)?;
        for l in Label::ALL {
            if m[l.0] < 0 {
                return Err(RepError::Negative {
                    label: l.name(),
                    value: m[l.0],
                });
            }
        }
        Ok(m)
    }

    pub fn tensor_decompose(&self, a: &ClassFunction, b: &ClassFunction) -> Result<[i64; 10], RepError> {
        self.decompose_genuine(&a.mul(b))
    }

    /// Class function from integer multiplicities.
    pub fn compose(&self, mult: &[i64; 10]) -> ClassFunction {
        let mut acc = ClassFunction::zero();
        for l in Label::ALL {
            if mult[l.0] != 0 {
                acc = acc.add(&self.chi(l).scale(mult[l.0]));
            }
        }
        acc
    }

    /// Restriction multiplicities to a parabolic subgroup.
    pub fn branching(&self, g: &H3, l: Label, p: &Parabolic) -> Vec<i64> {
        let chi = self.chi(l);
        p.chars
            .iter()
            .map(|psi| {
                let mut acc = Qs5::zero();
                for (ci, cls) in p.classes.iter().enumerate() {
                    for &e in cls {
                        let v = &chi.0[g.elements[e].class_id] * &Qs5::from_int(psi[ci]);
                        acc += &v;
                    }
                }
                let m = acc.scale(&Rat::new(1, p.order() as i64));
                m.to_i64().expect("restriction multiplicities are integers")
            })
            .collect()
    }

    /// Trace of `Σ_s s` divided by the dimension: the scalar by which the
    /// sum of reflections acts.
    pub fn central_constant(&self, g: &H3, l: Label) -> Rat {
        let chi = self.chi(l);
        let refl_class = g.elements[g.reflections[0].element].class_id;
        let tr = chi.0[refl_class].scale(&Rat::from_int(g.reflections.len() as i64));
        let v = tr.scale(&Rat::new(1, l.dim() as i64));
        v.as_rat().expect("rational central constant").clone()
    }
}

/// Characters of symmetric powers S^k h*, by the Newton recurrence
/// `χ_{S^k}(g) = (1/k) Σ_{j=1..k} χ(g^j) χ_{S^{k-j}}(g)`.
#[derive(Clone, Debug)]
pub struct SymPowers {
    /// `pw[c][j]` = χ_{h*}(g^j) for g in class c.
    pw: Vec<Vec<Qs5>>,
    cache: Vec<ClassFunction>,
}

impl SymPowers {
    pub fn new(g: &H3, reps: &Reps) -> SymPowers {
        let chi = reps.reflection_char();
        let pw = (0..10)
            .map(|c| (0..60).map(|j| chi.0[g.power_class(c, j)].clone()).collect())
            .collect();
        SymPowers {
            pw,
            cache: vec![ClassFunction::constant(1)],
        }
    }

    pub fn get(&mut self, k: usize) -> ClassFunction {
        while self.cache.len() <= k {
            let n = self.cache.len();
            let mut vals = Vec::with_capacity(10);
            for c in 0..10 {
                let mut acc = Qs5::zero();
                for j in 1..=n {
                    acc += &(&self.pw[c][j % 60] * &self.cache[n - j].0[c]);
                }
                vals.push(acc.scale(&Rat::new(1, n as i64)));
            }
            self.cache.push(ClassFunction(vals));
        }
        self.cache[k].clone()
    }
}

/// Character of an expression such as `S^4 x 5-`, `3- x 3~+`, or `S^2`.
/// Factors are separated by `x` or `*`; `S^k` is a symmetric power of h*
/// and `h` stands for h* itself.
pub fn parse_char_expr(expr: &str, sym: &mut SymPowers, reps: &Reps) -> Result<ClassFunction, RepError> {
    let bad = || RepError::Expr(expr.to_string());
    let mut acc = ClassFunction::constant(1);
    let mut any = false;
    for raw in expr.split([' ', '*', '⊗']) {
        let t = raw.trim();
        if t.is_empty() || t == "x" {
            continue;
        }
        any = true;
        let f = if let Some(k) = t.strip_prefix("S^").or_else(|| t.strip_prefix("s^")) {
            let k: usize = k.parse().map_err(|_| bad())?;
            sym.get(k)
        } else if t == "h" || t == "h*" {
            reps.reflection_char().clone()
        } else {
            reps.chi(t.parse::<Label>().map_err(|_| bad())?).clone()
        };
        acc = acc.mul(&f);
    }
    if any {
        Ok(acc)
    } else {
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (H3, Reps) {
        let g = H3::build();
        let r = Reps::build(&g).unwrap();
        (g, r)
    }

    #[test]
    fn label_round_trip_and_twists() {
        for l in Label::ALL {
            assert_eq!(l.name().parse::<Label>().unwrap(), l);
            assert_eq!(l.sign_twist().sign_twist(), l);
            assert_eq!(l.galois_twist().galois_twist(), l);
        }
        assert_eq!(Label::FIVE_PLUS.sign_twist(), Label::FIVE_MINUS);
        assert_eq!(Label::THREE_MINUS.galois_twist(), Label::THREE_T_MINUS);
        assert_eq!(Label::FOUR_PLUS.galois_twist(), Label::FOUR_PLUS);
        assert!("7+".parse::<Label>().is_err());
    }

    #[test]
    fn representations_are_homomorphisms_with_invariant_forms() {
        let (g, r) = setup();
        for ir in &r.irreps {
            assert_eq!(ir.mats.len(), 120);
            assert!(ir.inv_form.is_symmetric());
            assert!(!crate::linalg::det(&ir.inv_form).is_zero(), "{}", ir.label);
            for m in &ir.mats {
                assert_eq!(m.transpose().mul(&ir.inv_form).mul(m), ir.inv_form, "{}", ir.label);
            }
            // multiplicativity spot check on a product of two elements
            let a = 17;
            let b = 93;
            let ab = g.mul(a, b);
            assert_eq!(ir.mats[a].mul(&ir.mats[b]), ir.mats[ab]);
            let norm = ir.char_vec.inner(&ir.char_vec, &r.class_sizes);
            assert!(norm.is_one(), "{} not irreducible", ir.label);
        }
    }

    #[test]
    fn sym_power_dims() {
        let (g, r) = setup();
        let mut s = SymPowers::new(&g, &r);
        for k in 0..=50 {
            let d = s.get(k).0[0].to_i64().unwrap();
            assert_eq!(d as usize, (k + 1) * (k + 2) / 2);
        }
        let s2 = r.decompose(&s.get(2)).unwrap();
        assert_eq!(s2, [1, 0, 0, 0, 0, 0, 0, 0, 1, 0]);
    }

    #[test]
    fn alternate_model_same_characters() {
        let g = H3::build();
        let a = Reps::build(&g).unwrap();
        let b = Reps::build_with(&g, Model::Alternate).unwrap();
        for l in Label::ALL {
            assert_eq!(a.chi(l), b.chi(l));
        }
        assert_ne!(a.get(Label::FIVE_PLUS).gens[0], b.get(Label::FIVE_PLUS).gens[0]);
    }
}
