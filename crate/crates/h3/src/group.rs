//! The icosahedral reflection group H3 as 3×3 matrices over Q(√5).
//!
//! Vectors of h* are written in the basis of simple roots; the invariant
//! form there has Gram matrix
//!
//! ```text
//!   1      -1/2          0
//!  -1/2     1     -(1+√5)/4
//!   0  -(1+√5)/4         1
//! ```
//!
//! and the simple reflection along α_i is `v ↦ v − 2B(α_i, v) α_i`.
//! Conjugacy classes are recognised by (order, trace) on h*, which
//! separates all ten classes.

use std::collections::HashMap;

use crate::linalg::Mat;
use crate::scalar::{Field, Qs5, Rat};

/// Class names in the fixed display order.
pub const CLASS_LABELS: [&str; 10] = [
    "Id", "-Id", "(123)", "-(123)", "(12)(34)", "-(12)(34)", "(12345)", "-(12345)", "(13245)", "-(13245)",
];

pub const CLASS_SIZES: [usize; 10] = [1, 1, 20, 20, 15, 15, 12, 12, 12, 12];

/// (order, trace on h*) for each class, in `CLASS_LABELS` order.
fn class_signatures() -> Vec<(u32, Qs5)> {
    let phi = Qs5::phi();
    let phic = Qs5::phi_conj();
    vec![
        (1, Qs5::from_int(3)),
        (2, Qs5::from_int(-3)),
        (3, Qs5::zero()),
        (6, Qs5::zero()),
        (2, Qs5::from_int(-1)),
        (2, Qs5::from_int(1)),
        (5, phi.clone()),
        (10, -phi),
        (5, phic.clone()),
        (10, -phic),
    ]
}

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub matrix: Mat<Qs5>,
    pub order: u32,
    pub class_id: usize,
}

#[derive(Clone, Debug)]
pub struct Reflection {
    /// Index into [`H3::elements`].
    pub element: usize,
    /// Root in h* (simple-root coordinates), normalised to B(α, α) = 1.
    pub alpha: [Qs5; 3],
    /// Coroot in h, as its pairings `(x_j, α^∨)` with the basis of h*.
    pub alpha_check: [Qs5; 3],
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub id: usize,
    pub size: usize,
    pub representative: usize,
    pub label: &'static str,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassifyError {
    UnknownSignature,
}

/// Parabolic types with their degrees of basic invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParabolicType {
    H3,
    A2,
    I2_5,
    A1xA1,
    A1,
    Trivial,
}

impl ParabolicType {
    pub const ALL: [ParabolicType; 6] = [
        ParabolicType::H3,
        ParabolicType::A2,
        ParabolicType::I2_5,
        ParabolicType::A1xA1,
        ParabolicType::A1,
        ParabolicType::Trivial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ParabolicType::H3 => "H3",
            ParabolicType::A2 => "A2",
            ParabolicType::I2_5 => "I2(5)",
            ParabolicType::A1xA1 => "A1xA1",
            ParabolicType::A1 => "A1",
            ParabolicType::Trivial => "trivial",
        }
    }

    pub fn degrees(self) -> &'static [u32] {
        match self {
            ParabolicType::H3 => &[2, 6, 10],
            ParabolicType::A2 => &[2, 3],
            ParabolicType::I2_5 => &[2, 5],
            ParabolicType::A1xA1 => &[2, 2],
            ParabolicType::A1 => &[2],
            ParabolicType::Trivial => &[],
        }
    }

    pub fn rank(self) -> usize {
        self.degrees().len()
    }
}

#[derive(Clone, Debug)]
pub struct H3 {
    pub elements: Vec<GroupElement>,
    /// Element indices of s1, s2, s3.
    pub generators: [usize; 3],
    pub classes: Vec<ConjClass>,
    pub reflections: Vec<Reflection>,
    /// Invariant form on h* in simple-root coordinates.
    pub gram: Mat<Qs5>,
    /// `elements[i] = generator(g) · elements[p]` for `word[i] = Some((g, p))`.
    pub word: Vec<Option<(usize, usize)>>,
    index: HashMap<Vec<Qs5>, usize>,
    /// `power[c][j]` = class of g^j for g in class c, 0 ≤ j < 60.
    power: Vec<Vec<usize>>,
}

pub fn gram_matrix() -> Mat<Qs5> {
    let h = Qs5::from_frac(-1, 2, 0, 1);
    let f = Qs5::from_frac(-1, 4, -1, 4);
    let one = Qs5::one();
    let z = Qs5::zero();
    Mat::from_rows(vec![
        vec![one.clone(), h.clone(), z.clone()],
        vec![h, one.clone(), f.clone()],
        vec![z, f, one],
    ])
}

/// Reflection matrix in the given basis for the root `alpha` with
/// respect to `gram`: `v ↦ v − 2 B(α, v)/B(α, α) · α`.
pub fn reflection_matrix(gram: &Mat<Qs5>, alpha: &[Qs5]) -> Mat<Qs5> {
    let n = alpha.len();
    let ga = gram.mul_vec(alpha);
    let aa = dot(alpha, &ga);
    let two_over = (&Qs5::from_int(2) / &aa).clone();
    let mut m = Mat::identity(n);
    for i in 0..n {
        for j in 0..n {
            // column j = image of e_j; B(α, e_j) = (Gα)_j
            let d = &(&alpha[i] * &ga[j]) * &two_over;
            let v = m.get(i, j) - &d;
            m.set(i, j, v);
        }
    }
    m
}

pub fn dot(a: &[Qs5], b: &[Qs5]) -> Qs5 {
    let mut acc = Qs5::zero();
    for (x, y) in a.iter().zip(b) {
        acc.add_mul(x, y);
    }
    acc
}

fn key(m: &Mat<Qs5>) -> Vec<Qs5> {
    m.entries().to_vec()
}

fn element_order(m: &Mat<Qs5>) -> u32 {
    let id = Mat::<Qs5>::identity(m.rows);
    let mut p = m.clone();
    for k in 1..=60 {
        if p == id {
            return k;
        }
        p = p.mul(m);
    }
    panic!("element of infinite order in a finite group");
}

/// Class id from (order, trace) on h*.
pub fn classify_signature(order: u32, trace: &Qs5) -> Result<usize, ClassifyError> {
    class_signatures()
        .iter()
        .position(|(o, t)| *o == order && t == trace)
        .ok_or(ClassifyError::UnknownSignature)
}

/// Positive-root normalisation: first nonzero coordinate positive in the
/// real embedding √5 ≈ 2.236.
fn normalize_root(v: Vec<Qs5>) -> Vec<Qs5> {
    let first = v.iter().find(|x| !x.is_zero()).expect("nonzero root");
    if first.to_f64() < 0.0 {
        v.iter().map(|x| -x).collect()
    } else {
        v
    }
}

impl H3 {
    /// Breadth-first closure of the three simple reflections.
    pub fn build() -> H3 {
        let gram = gram_matrix();
        let simple: Vec<Mat<Qs5>> = (0..3)
            .map(|i| {
                let mut e = vec![Qs5::zero(); 3];
                e[i] = Qs5::one();
                reflection_matrix(&gram, &e)
            })
            .collect();
        let id = Mat::<Qs5>::identity(3);
        let mut mats = vec![id.clone()];
        let mut word = vec![None];
        let mut index = HashMap::new();
        index.insert(key(&id), 0usize);
        let mut head = 0;
        while head < mats.len() {
            for (g, s) in simple.iter().enumerate() {
                let m = s.mul(&mats[head]);
                let k = key(&m);
                if !index.contains_key(&k) {
                    index.insert(k, mats.len());
                    mats.push(m);
                    word.push(Some((g, head)));
                }
            }
            head += 1;
        }
        let elements: Vec<GroupElement> = mats
            .into_iter()
            .map(|m| {
                let order = element_order(&m);
                let class_id =
                    classify_signature(order, &m.trace()).expect("every element has a known signature");
                GroupElement {
                    matrix: m,
                    order,
                    class_id,
                }
            })
            .collect();
        let generators = [1, 2, 3].map(|g| {
            let m = &simple[g - 1];
            index[&key(m)]
        });
        let mut classes: Vec<ConjClass> = (0..10)
            .map(|id| ConjClass {
                id,
                size: 0,
                representative: usize::MAX,
                label: CLASS_LABELS[id],
                members: Vec::new(),
            })
            .collect();
        for (i, e) in elements.iter().enumerate() {
            let c = &mut classes[e.class_id];
            c.size += 1;
            c.members.push(i);
            if c.representative == usize::MAX {
                c.representative = i;
            }
        }
        let mut group = H3 {
            elements,
            generators,
            classes,
            reflections: Vec::new(),
            gram,
            word,
            index,
            power: Vec::new(),
        };
        group.reflections = group.find_reflections();
        group.power = (0..10)
            .map(|c| {
                let rep = &group.elements[group.classes[c].representative].matrix;
                let mut p = Mat::<Qs5>::identity(3);
                (0..60)
                    .map(|_| {
                        let cid = group.class_of_matrix(&p);
                        p = p.mul(rep);
                        cid
                    })
                    .collect()
            })
            .collect();
        group
    }

    fn find_reflections(&self) -> Vec<Reflection> {
        // roots: W-orbit of the simple roots
        let mut out: Vec<Reflection> = Vec::new();
        for e in &self.elements {
            for i in 0..3 {
                let root = normalize_root(e.matrix.col(i));
                let s = reflection_matrix(&self.gram, &root);
                let idx = self.index[&key(&s)];
                if out.iter().any(|r| r.element == idx) {
                    continue;
                }
                let ga = self.gram.mul_vec(&root);
                let two = Qs5::from_int(2);
                let check: Vec<Qs5> = ga.iter().map(|x| &two * x).collect();
                out.push(Reflection {
                    element: idx,
                    alpha: [root[0].clone(), root[1].clone(), root[2].clone()],
                    alpha_check: [check[0].clone(), check[1].clone(), check[2].clone()],
                });
            }
        }
        out.sort_by_key(|r| r.element);
        out
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, m: &Mat<Qs5>) -> Option<usize> {
        self.index.get(&key(m)).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a].matrix.mul(&self.elements[b].matrix);
        self.index_of(&m).expect("closed under products")
    }

    pub fn inverse(&self, a: usize) -> usize {
        let m = &self.elements[a].matrix;
        // orthogonal w.r.t. the Gram form: g⁻¹ = G⁻¹ gᵀ G; cheaper to power
        let o = self.elements[a].order;
        let mut p = Mat::<Qs5>::identity(3);
        for _ in 0..(o - 1) {
            p = p.mul(m);
        }
        self.index_of(&p).expect("inverse in group")
    }

    pub fn class_of_matrix(&self, m: &Mat<Qs5>) -> usize {
        classify_signature(element_order(m), &m.trace()).expect("element of H3")
    }

    /// Class of g^j for g in class `c`.
    pub fn power_class(&self, c: usize, j: usize) -> usize {
        self.power[c][j % 60]
    }

    pub fn minus_identity(&self) -> usize {
        self.classes[1].representative
    }

    /// Orbit partition by conjugation under the generators (independent of
    /// the signature table).
    pub fn conjugacy_orbits(&self) -> Vec<Vec<usize>> {
        let gens: Vec<usize> = self.generators.to_vec();
        let mut seen = vec![false; self.order()];
        let mut orbits = Vec::new();
        for start in 0..self.order() {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for &g in &gens {
                    // generators are involutions
                    let y = self.mul(self.mul(g, x), g);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Center: elements commuting with every generator.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&x| self.generators.iter().all(|&g| self.mul(g, x) == self.mul(x, g)))
            .collect()
    }

    /// Matrices of all elements in a representation given by the images
    /// of s1, s2, s3, following the breadth-first words.
    pub fn represent<F: Field>(&self, gens: &[Mat<F>; 3]) -> Vec<Mat<F>> {
        let n = gens[0].rows;
        let mut out: Vec<Mat<F>> = Vec::with_capacity(self.order());
        for w in &self.word {
            match w {
                None => out.push(Mat::identity(n)),
                Some((g, p)) => {
                    let m = gens[*g].mul(&out[*p]);
                    out.push(m);
                }
            }
        }
        out
    }

    /// The parabolic subgroup generated by the listed simple reflections.
    pub fn parabolic(&self, kind: ParabolicKind) -> Parabolic {
        Parabolic::build(self, kind)
    }
}

/// The two parabolic subgroups used for induction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParabolicKind {
    /// ⟨s1, s3⟩ ≅ Z2×Z2.
    Z2xZ2,
    /// ⟨s1, s2⟩ ≅ S3.
    S3,
}

impl ParabolicKind {
    pub fn name(self) -> &'static str {
        match self {
            ParabolicKind::Z2xZ2 => "Z2xZ2",
            ParabolicKind::S3 => "S3",
        }
    }

    pub fn parse(s: &str) -> Option<ParabolicKind> {
        match s.to_ascii_lowercase().replace(['×', '*'], "x").as_str() {
            "z2xz2" | "a1xa1" => Some(ParabolicKind::Z2xZ2),
            "s3" | "a2" => Some(ParabolicKind::S3),
            _ => None,
        }
    }

    pub fn parabolic_type(self) -> ParabolicType {
        match self {
            ParabolicKind::Z2xZ2 => ParabolicType::A1xA1,
            ParabolicKind::S3 => ParabolicType::A2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Parabolic {
    pub kind: ParabolicKind,
    pub elements: Vec<usize>,
    pub generators: Vec<usize>,
    pub class_labels: Vec<&'static str>,
    /// Element indices (into H3) per class.
    pub classes: Vec<Vec<usize>>,
    pub irrep_labels: Vec<&'static str>,
    /// Integer characters, `chars[irrep][class]`.
    pub chars: Vec<Vec<i64>>,
}

impl Parabolic {
    fn build(g: &H3, kind: ParabolicKind) -> Parabolic {
        let [s1, s2, s3] = g.generators;
        let generators = match kind {
            ParabolicKind::Z2xZ2 => vec![s1, s3],
            ParabolicKind::S3 => vec![s1, s2],
        };
        let mut elements = vec![g.identity()];
        let mut k = 0;
        while k < elements.len() {
            for &s in &generators {
                let y = g.mul(s, elements[k]);
                if !elements.contains(&y) {
                    elements.push(y);
                }
            }
            k += 1;
        }
        let refl: Vec<usize> = elements
            .iter()
            .copied()
            .filter(|&e| g.reflections.iter().any(|r| r.element == e))
            .collect();
        let det = |e: usize| -> i64 {
            // reflections have det −1; det = (−1)^(word length)
            crate::linalg::det(&g.elements[e].matrix).to_i64().expect("det ±1")
        };
        match kind {
            ParabolicKind::Z2xZ2 => {
                let a = s1;
                let b = s3;
                let ab = g.mul(a, b);
                let classes = vec![vec![g.identity()], vec![a], vec![b], vec![ab]];
                let labels = vec!["1++", "1+-", "1-+", "1--"];
                let chars = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
                    .iter()
                    .map(|&(x, y)| vec![1, x, y, x * y])
                    .collect();
                Parabolic {
                    kind,
                    elements,
                    generators,
                    class_labels: vec!["Id", "-(12)(34)", "-(13)(24)", "(14)(23)"],
                    classes,
                    irrep_labels: labels,
                    chars,
                }
            }
            ParabolicKind::S3 => {
                let rot: Vec<usize> = elements
                    .iter()
                    .copied()
                    .filter(|&e| e != g.identity() && !refl.contains(&e))
                    .collect();
                let classes = vec![vec![g.identity()], refl.clone(), rot];
                let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
                // the 2-dim irrep is h modulo the fixed line: trace − 1
                let two: Vec<i64> = reps
                    .iter()
                    .map(|&e| g.elements[e].matrix.trace().to_i64().expect("rational trace") - 1)
                    .collect();
                let sign: Vec<i64> = reps.iter().map(|&e| det(e)).collect();
                Parabolic {
                    kind,
                    elements,
                    generators,
                    class_labels: vec!["Id", "s1", "(125)"],
                    classes,
                    irrep_labels: vec!["1+", "1-", "2"],
                    chars: vec![vec![1, 1, 1], sign, two],
                }
            }
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn rank(&self) -> usize {
        self.kind.parabolic_type().rank()
    }

    /// Lowest weights `rank/2 − c·Σ_{s∈W'} s|_σ` of the parabolic
    /// Cherednik algebra on its own reflection representation.
    pub fn lowest_weights(&self, g: &H3, c: &Rat) -> Vec<Rat> {
        let refl_total = |chi: &Vec<i64>| -> Rat {
            let mut s = 0i64;
            for (ci, cls) in self.classes.iter().enumerate() {
                let nrefl = cls
                    .iter()
                    .filter(|&&e| g.reflections.iter().any(|r| r.element == e))
                    .count() as i64;
                s += nrefl * chi[ci];
            }
            Rat::new(s, chi[0])
        };
        self.chars
            .iter()
            .map(|chi| &Rat::new(self.rank() as i64, 2) - &(c * &refl_total(chi)))
            .collect()
    }

    pub fn irrep_index(&self, label: &str) -> Option<usize> {
        self.irrep_labels.iter().position(|l| *l == label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coxeter_relations() {
        let g = H3::build();
        let [a, b, c] = g.generators.map(|i| g.elements[i].matrix.clone());
        let id = Mat::<Qs5>::identity(3);
        let pw = |m: &Mat<Qs5>, k: u32| (0..k).fold(id.clone(), |acc, _| acc.mul(m));
        assert_eq!(pw(&a, 2), id);
        assert_eq!(pw(&a.mul(&b), 3), id);
        assert_eq!(pw(&b.mul(&c), 5), id);
        assert_eq!(pw(&a.mul(&c), 2), id);
        assert_ne!(a.mul(&b), id);
    }

    #[test]
    fn sizes() {
        let g = H3::build();
        assert_eq!(g.order(), 120);
        assert_eq!(g.reflections.len(), 15);
        let sizes: Vec<usize> = g.classes.iter().map(|c| c.size).collect();
        assert_eq!(sizes, CLASS_SIZES.to_vec());
    }

    #[test]
    fn signature_classes_match_orbits() {
        let g = H3::build();
        let mut orbits = g.conjugacy_orbits();
        orbits.sort();
        let mut by_sig: Vec<Vec<usize>> = g.classes.iter().map(|c| c.members.clone()).collect();
        by_sig.sort();
        assert_eq!(orbits, by_sig);
    }

    #[test]
    fn roots_and_coroots() {
        let g = H3::build();
        for r in &g.reflections {
            let m = &g.elements[r.element].matrix;
            assert_eq!(g.elements[r.element].class_id, 5);
            assert_eq!(m.mul_vec(&r.alpha), r.alpha.iter().map(|x| -x).collect::<Vec<_>>());
            assert_eq!(dot(&r.alpha, &r.alpha_check), Qs5::from_int(2));
            let rank = crate::linalg::rank_gauss(&m.sub(&Mat::identity(3)));
            assert_eq!(rank, 1);
        }
    }

    #[test]
    fn center_is_plus_minus_identity() {
        let g = H3::build();
        let z = g.center();
        assert_eq!(z.len(), 2);
        assert!(z.contains(&g.minus_identity()));
        assert_eq!(g.elements[g.minus_identity()].matrix, Mat::<Qs5>::identity(3).neg());
    }

    #[test]
    fn parabolics() {
        let g = H3::build();
        let z = g.parabolic(ParabolicKind::Z2xZ2);
        assert_eq!(z.order(), 4);
        let s = g.parabolic(ParabolicKind::S3);
        assert_eq!(s.order(), 6);
        assert_eq!(s.class_sizes(), vec![1, 3, 2]);
        assert_eq!(s.chars[2], vec![2, 0, -1]);
        let half = Rat::new(1, 2);
        let hw: Vec<String> = s.lowest_weights(&g, &half).iter().map(|r| r.to_string()).collect();
        assert_eq!(hw, vec!["-1/2", "5/2", "1"]);
        let hz: Vec<String> = z.lowest_weights(&g, &half).iter().map(|r| r.to_string()).collect();
        assert_eq!(hz, vec!["0", "1", "1", "2"]);
    }
}
