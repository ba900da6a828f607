//! Graded pieces of standard modules `M_c(τ) = S(h*) ⊗ τ`, Dunkl operators
//! on them, and the contravariant form computed degree by degree.
//!
//! Polynomial variables `x_1, x_2, x_3` are the simple roots; `y_j` is the
//! dual basis of h, so `∂_{y_j} = ∂/∂x_j`. The slice of degree `k` has
//! basis `monomial ⊗ e_u` indexed by `monomial_index * dim τ + u`.

use thiserror::Error;

use crate::group::H3;
use crate::linalg::{kernel_basis, rank_bareiss, rref, Mat};
use crate::reps::{Label, Reps};
use crate::scalar::{Embedding, Field, Fp, Qs5, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VermaError {
    #[error("(1-s)f is not divisible by the root of reflection {refl} in degree {degree}")]
    NotDivisible { refl: usize, degree: usize },
    #[error("two liftings of a degree {degree} monomial give different form rows")]
    Lifting { degree: usize },
    #[error("a scalar has no image modulo the chosen prime")]
    Reduction,
    #[error("group action does not preserve the kernel in degree {degree}")]
    KernelNotInvariant { degree: usize },
    #[error("kernel trace does not decompose into integer multiplicities")]
    KernelCharacter,
}

pub fn mono_dim(k: usize) -> usize {
    (k + 1) * (k + 2) / 2
}

/// Exponent vectors of degree `k`, ordered by decreasing `x1` then `x2`.
pub fn monomials(k: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(mono_dim(k));
    for a in (0..=k).rev() {
        for b in (0..=k - a).rev() {
            out.push([a, b, k - a - b]);
        }
    }
    out
}

pub fn mono_index(e: [usize; 3]) -> usize {
    let k = e[0] + e[1] + e[2];
    let t = k - e[0];
    t * (t + 1) / 2 + (t - e[1])
}

fn bump(mut e: [usize; 3], i: usize) -> [usize; 3] {
    e[i] += 1;
    e
}

fn first_var(e: &[usize; 3]) -> usize {
    (0..3).find(|&i| e[i] > 0).expect("positive degree")
}

/// Column-major polynomial map: `cols[e]` is the image of monomial `e`.
type Cols<F> = Vec<Vec<F>>;

/// Degree `k` action of a linear substitution, given degree `k-1`.
/// Column `j` of `m` is the image of `x_j`.
fn next_action<F: Field>(m: &Mat<F>, prev: &Cols<F>, k: usize) -> Cols<F> {
    let n = mono_dim(k);
    let mut out = Vec::with_capacity(n);
    for e in monomials(k) {
        let j = first_var(&e);
        let mut lower = e;
        lower[j] -= 1;
        let src = &prev[mono_index(lower)];
        let lower_monos = monomials(k - 1);
        let mut col = vec![F::zero(); n];
        for (fi, v) in src.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for i in 0..3 {
                let mij = m.get(i, j);
                if mij.is_zero() {
                    continue;
                }
                col[mono_index(bump(lower_monos[fi], i))].add_mul(mij, v);
            }
        }
        out.push(col);
    }
    out
}

fn identity_cols<F: Field>() -> Cols<F> {
    vec![vec![F::one()]]
}

/// Full action matrix of a substitution on degree `k` polynomials.
pub fn poly_action<F: Field>(m: &Mat<F>, k: usize) -> Mat<F> {
    let mut cur = identity_cols::<F>();
    for d in 1..=k {
        cur = next_action(m, &cur, d);
    }
    Mat::from_cols(mono_dim(k), &cur)
}

/// Coefficients of the polynomial part: the working field, or Z[φ] with
/// overflow detection.
trait Coef: Clone + PartialEq {
    fn c_zero() -> Self;
    fn c_one() -> Self;
    fn c_is_zero(&self) -> bool;
    fn c_mul(&self, o: &Self) -> Option<Self>;
    fn c_add(&self, o: &Self) -> Option<Self>;
    fn c_neg(&self) -> Option<Self>;
}

impl<F: Field> Coef for F {
    fn c_zero() -> F {
        F::zero()
    }
    fn c_one() -> F {
        F::one()
    }
    fn c_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn c_mul(&self, o: &F) -> Option<F> {
        Some(self.mul(o))
    }
    fn c_add(&self, o: &F) -> Option<F> {
        Some(self.add(o))
    }
    fn c_neg(&self) -> Option<F> {
        Some(self.neg())
    }
}

/// `a + bφ` with `φ² = φ + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct ZPhi {
    a: i64,
    b: i64,
}

impl Coef for ZPhi {
    fn c_zero() -> ZPhi {
        ZPhi { a: 0, b: 0 }
    }
    fn c_one() -> ZPhi {
        ZPhi { a: 1, b: 0 }
    }
    fn c_is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
    fn c_mul(&self, o: &ZPhi) -> Option<ZPhi> {
        let ac = self.a.checked_mul(o.a)?;
        let bd = self.b.checked_mul(o.b)?;
        let ad = self.a.checked_mul(o.b)?;
        let bc = self.b.checked_mul(o.a)?;
        Some(ZPhi {
            a: ac.checked_add(bd)?,
            b: ad.checked_add(bc)?.checked_add(bd)?,
        })
    }
    fn c_add(&self, o: &ZPhi) -> Option<ZPhi> {
        Some(ZPhi {
            a: self.a.checked_add(o.a)?,
            b: self.b.checked_add(o.b)?,
        })
    }
    fn c_neg(&self) -> Option<ZPhi> {
        Some(ZPhi {
            a: self.a.checked_neg()?,
            b: self.b.checked_neg()?,
        })
    }
}

impl ZPhi {
    /// Coordinates `(p - q, 2q)` of `p + q√5` in the basis `1, φ`.
    fn phi_coords(x: &Qs5) -> (Rat, Rat) {
        (&x.a - &x.b, &x.b * &Rat::from_int(2))
    }

    fn from_qs5(x: &Qs5) -> Option<ZPhi> {
        let (a, b) = ZPhi::phi_coords(x);
        Some(ZPhi {
            a: a.to_i64()?,
            b: b.to_i64()?,
        })
    }

    fn to_field<F: Field>(self, phi: &F) -> F {
        let a = F::from_int(self.a);
        if self.b == 0 {
            a
        } else {
            a.add(&F::from_int(self.b).mul(phi))
        }
    }
}

enum Fail {
    Overflow,
    Bad(VermaError),
}

fn ck<T>(o: Option<T>) -> Result<T, Fail> {
    o.ok_or(Fail::Overflow)
}

fn add_mul_c<C: Coef>(acc: &mut C, a: &C, b: &C) -> Result<(), Fail> {
    *acc = ck(acc.c_add(&ck(a.c_mul(b))?))?;
    Ok(())
}

/// Root data of one reflection, in the coordinates of the slices.
#[derive(Clone, Debug)]
struct PolyRoot<C> {
    /// `(α_s, y_i)`: coefficients of the root in the `x` basis.
    alpha: [C; 3],
    /// `(x_j, α_s^∨)`.
    check: [C; 3],
    /// `mat[i][j]`: coefficient of `x_i` in the image of `x_j`.
    mat: [[C; 3]; 3],
}

/// Polynomial action `s` and divided difference `q_s` of every reflection
/// on one degree.
#[derive(Clone, Debug)]
struct Level<C> {
    sact: Vec<Cols<C>>,
    quot: Vec<Cols<C>>,
}

impl<C: Coef> Level<C> {
    fn base(n: usize) -> Level<C> {
        Level {
            sact: vec![vec![vec![C::c_one()]]; n],
            quot: vec![Vec::new(); n],
        }
    }

    fn map<G>(&self, f: &dyn Fn(&C) -> G) -> Level<G> {
        let m = |v: &Vec<Cols<C>>| v.iter().map(|cols| cols.iter().map(|c| c.iter().map(f).collect()).collect()).collect();
        Level {
            sact: m(&self.sact),
            quot: m(&self.quot),
        }
    }
}

fn next_action_c<C: Coef>(m: &[[C; 3]; 3], prev: &Cols<C>, k: usize) -> Result<Cols<C>, Fail> {
    let n = mono_dim(k);
    let lower_monos = monomials(k - 1);
    let mut out = Vec::with_capacity(n);
    for e in monomials(k) {
        let j = first_var(&e);
        let mut lower = e;
        lower[j] -= 1;
        let src = &prev[mono_index(lower)];
        let mut col = vec![C::c_zero(); n];
        for (fi, v) in src.iter().enumerate() {
            if v.c_is_zero() {
                continue;
            }
            for i in 0..3 {
                if m[i][j].c_is_zero() {
                    continue;
                }
                add_mul_c(&mut col[mono_index(bump(lower_monos[fi], i))], &m[i][j], v)?;
            }
        }
        out.push(col);
    }
    Ok(out)
}

/// Degree `k` level from degree `k-1`, using
/// `q(x_j m) = x_j q(m) + (x_j, α^∨) s(m)` and checking `α q(f) = f - s f`.
fn level_next<C: Coef>(roots: &[PolyRoot<C>], prev: &Level<C>, k: usize) -> Result<Level<C>, Fail> {
    let n_lo = mono_dim(k - 1);
    let lo_monos = monomials(k - 1);
    let hi_monos = monomials(k);
    let mm = if k >= 2 { monomials(k - 2) } else { Vec::new() };
    let mut out = Level {
        sact: Vec::with_capacity(roots.len()),
        quot: Vec::with_capacity(roots.len()),
    };
    for (si, r) in roots.iter().enumerate() {
        let s_prev = &prev.sact[si];
        let q_prev = &prev.quot[si];
        let mut q_cols = Vec::with_capacity(hi_monos.len());
        for e in &hi_monos {
            let j = first_var(e);
            let mut m = *e;
            m[j] -= 1;
            let mi = mono_index(m);
            let mut col = vec![C::c_zero(); n_lo];
            if k >= 2 {
                for (fi, v) in q_prev[mi].iter().enumerate() {
                    if !v.c_is_zero() {
                        let t = &mut col[mono_index(bump(mm[fi], j))];
                        *t = ck(t.c_add(v))?;
                    }
                }
            }
            if !r.check[j].c_is_zero() {
                for (fi, v) in s_prev[mi].iter().enumerate() {
                    if !v.c_is_zero() {
                        add_mul_c(&mut col[fi], &r.check[j], v)?;
                    }
                }
            }
            q_cols.push(col);
        }
        let s_cols = next_action_c(&r.mat, s_prev, k)?;
        for (ei, e) in hi_monos.iter().enumerate() {
            let mut lhs = vec![C::c_zero(); hi_monos.len()];
            for (fi, v) in q_cols[ei].iter().enumerate() {
                if v.c_is_zero() {
                    continue;
                }
                for i in 0..3 {
                    if !r.alpha[i].c_is_zero() {
                        add_mul_c(&mut lhs[mono_index(bump(lo_monos[fi], i))], &r.alpha[i], v)?;
                    }
                }
            }
            let mut rhs = s_cols[ei].iter().map(|v| ck(v.c_neg())).collect::<Result<Vec<C>, Fail>>()?;
            let t = &mut rhs[mono_index(*e)];
            *t = ck(t.c_add(&C::c_one()))?;
            if lhs != rhs {
                return Err(Fail::Bad(VermaError::NotDivisible { refl: si, degree: k }));
            }
        }
        out.sact.push(s_cols);
        out.quot.push(q_cols);
    }
    Ok(out)
}

/// `W_i = Σ_s (α_s, y_i) q_s ⊗ T_s` as dense row-major arrays
/// (slice `k-1` by slice `k`).
fn dunkl_sums<C: Coef>(roots: &[PolyRoot<C>], taus: &[Vec<C>], level: &Level<C>, k: usize, d: usize) -> Result<[Vec<C>; 3], Fail> {
    let rows = mono_dim(k - 1) * d;
    let cols = mono_dim(k) * d;
    let mut w = [vec![C::c_zero(); rows * cols], vec![C::c_zero(); rows * cols], vec![C::c_zero(); rows * cols]];
    for (si, r) in roots.iter().enumerate() {
        let t = &taus[si];
        for (ei, qcol) in level.quot[si].iter().enumerate() {
            for (mi, qv) in qcol.iter().enumerate() {
                if qv.c_is_zero() {
                    continue;
                }
                for i in 0..3 {
                    if r.alpha[i].c_is_zero() {
                        continue;
                    }
                    let aq = ck(r.alpha[i].c_mul(qv))?;
                    for up in 0..d {
                        for u in 0..d {
                            let tv = &t[up * d + u];
                            if tv.c_is_zero() {
                                continue;
                            }
                            add_mul_c(&mut w[i][(mi * d + up) * cols + ei * d + u], &aq, tv)?;
                        }
                    }
                }
            }
        }
    }
    Ok(w)
}

/// Polynomial data either in exact small integers or in the field itself.
enum Poly<F: Field> {
    Fast {
        roots: Vec<PolyRoot<ZPhi>>,
        /// τ(s) scaled by a common denominator.
        taus: Vec<Vec<ZPhi>>,
        /// `c` divided by that denominator.
        scale: F,
        phi: F,
        level: Level<ZPhi>,
    },
    Generic {
        level: Level<F>,
    },
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Per-reflection factors multiplying `α_s` (and dividing `α_s^∨`).
    pub root_scales: Vec<Qs5>,
    /// Recompute each form row from every available lifting and compare.
    pub check_liftings: bool,
    /// Keep every Dunkl matrix and form instead of only the latest two.
    pub keep_all: bool,
    /// Skip the small-integer arithmetic and work in the field throughout.
    pub force_generic: bool,
}

/// Incrementally built graded data of `M_c(τ)` over a field `F`.
pub struct Verma<F: Field> {
    pub c: Rat,
    pub tau: Label,
    pub dim_tau: usize,
    c_f: F,
    gram: Mat<F>,
    roots: Vec<PolyRoot<F>>,
    taus: Vec<Vec<F>>,
    poly: Poly<F>,
    opts: Options,
    top: usize,
    dunkl: Vec<Option<[Mat<F>; 3]>>,
    forms: Vec<Option<Mat<F>>>,
    /// Matrices of τ for all 120 elements.
    tau_all: Vec<Mat<F>>,
    /// Matrices of the 120 elements on h* (root coordinates).
    group_all: Vec<Mat<F>>,
}

impl Verma<Qs5> {
    pub fn new(g: &H3, reps: &Reps, tau: Label, c: &Rat) -> Verma<Qs5> {
        Verma::with_options(g, reps, tau, c, Options::default())
    }

    pub fn with_options(g: &H3, reps: &Reps, tau: Label, c: &Rat, opts: Options) -> Verma<Qs5> {
        Verma::build(g, reps, tau, c, opts, &|x: &Qs5| Some(x.clone())).expect("exact embedding")
    }
}

impl<const P: u64> Verma<Fp<P>> {
    pub fn modular(
        g: &H3,
        reps: &Reps,
        tau: Label,
        c: &Rat,
        emb: &Embedding<P>,
    ) -> Result<Verma<Fp<P>>, VermaError> {
        Verma::build(g, reps, tau, c, Options::default(), &|x: &Qs5| emb.map(x))
    }
}

fn map_mat<F: Field>(m: &Mat<Qs5>, emb: &dyn Fn(&Qs5) -> Option<F>) -> Result<Mat<F>, VermaError> {
    m.try_map(|x| emb(x)).ok_or(VermaError::Reduction)
}

impl<F: Field> Verma<F> {
    pub fn build(
        g: &H3,
        reps: &Reps,
        tau: Label,
        c: &Rat,
        opts: Options,
        emb: &dyn Fn(&Qs5) -> Option<F>,
    ) -> Result<Verma<F>, VermaError> {
        let ir = reps.get(tau);
        let e = |x: &Qs5| emb(x).ok_or(VermaError::Reduction);
        let mat3 = |m: &Mat<Qs5>| -> [[Qs5; 3]; 3] {
            std::array::from_fn(|i| std::array::from_fn(|j| m.get(i, j).clone()))
        };
        let mut exact_roots = Vec::with_capacity(g.reflections.len());
        for (si, r) in g.reflections.iter().enumerate() {
            let lam = opts.root_scales.get(si).cloned().unwrap_or_else(Qs5::one);
            let lam_inv = lam.inv().map_err(|_| VermaError::Reduction)?;
            exact_roots.push(PolyRoot {
                alpha: std::array::from_fn(|i| &r.alpha[i] * &lam),
                check: std::array::from_fn(|i| &r.alpha_check[i] * &lam_inv),
                mat: mat3(&g.elements[r.element].matrix),
            });
        }
        let exact_taus: Vec<Vec<Qs5>> = g
            .reflections
            .iter()
            .map(|r| ir.mats[r.element].entries().to_vec())
            .collect();
        let lift = |x: &Qs5| e(x);
        let roots = exact_roots
            .iter()
            .map(|r| {
                Ok(PolyRoot {
                    alpha: [lift(&r.alpha[0])?, lift(&r.alpha[1])?, lift(&r.alpha[2])?],
                    check: [lift(&r.check[0])?, lift(&r.check[1])?, lift(&r.check[2])?],
                    mat: [
                        [lift(&r.mat[0][0])?, lift(&r.mat[0][1])?, lift(&r.mat[0][2])?],
                        [lift(&r.mat[1][0])?, lift(&r.mat[1][1])?, lift(&r.mat[1][2])?],
                        [lift(&r.mat[2][0])?, lift(&r.mat[2][1])?, lift(&r.mat[2][2])?],
                    ],
                })
            })
            .collect::<Result<Vec<_>, VermaError>>()?;
        let taus = exact_taus
            .iter()
            .map(|t| t.iter().map(lift).collect::<Result<Vec<F>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let c_f = e(&Qs5::from_rat(c.clone()))?;
        let n = roots.len();

        let fast = if opts.force_generic || !opts.root_scales.is_empty() {
            None
        } else {
            Verma::<F>::fast_data(&exact_roots, &exact_taus, c, emb)
        };
        let poly = match fast {
            Some((roots, taus, scale, phi)) => Poly::Fast {
                roots,
                taus,
                scale,
                phi,
                level: Level::base(n),
            },
            None => Poly::Generic { level: Level::base(n) },
        };
        let tau_all = ir.mats.iter().map(|m| map_mat(m, emb)).collect::<Result<Vec<_>, _>>()?;
        let group_all = g
            .elements
            .iter()
            .map(|el| map_mat(&el.matrix, emb))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Verma {
            c: c.clone(),
            tau,
            dim_tau: ir.dim,
            c_f,
            gram: map_mat(&g.gram, emb)?,
            roots,
            taus,
            poly,
            opts,
            top: 0,
            dunkl: vec![None],
            forms: vec![Some(map_mat(&ir.inv_form, emb)?)],
            tau_all,
            group_all,
        })
    }

    /// Integral Z[φ] versions of the root data and of τ(s) (after clearing
    /// one common denominator), when they exist.
    #[allow(clippy::type_complexity)]
    fn fast_data(
        roots: &[PolyRoot<Qs5>],
        taus: &[Vec<Qs5>],
        c: &Rat,
        emb: &dyn Fn(&Qs5) -> Option<F>,
    ) -> Option<(Vec<PolyRoot<ZPhi>>, Vec<Vec<ZPhi>>, F, F)> {
        let z = |x: &Qs5| ZPhi::from_qs5(x);
        let zroots = roots
            .iter()
            .map(|r| {
                Some(PolyRoot {
                    alpha: [z(&r.alpha[0])?, z(&r.alpha[1])?, z(&r.alpha[2])?],
                    check: [z(&r.check[0])?, z(&r.check[1])?, z(&r.check[2])?],
                    mat: [
                        [z(&r.mat[0][0])?, z(&r.mat[0][1])?, z(&r.mat[0][2])?],
                        [z(&r.mat[1][0])?, z(&r.mat[1][1])?, z(&r.mat[1][2])?],
                        [z(&r.mat[2][0])?, z(&r.mat[2][1])?, z(&r.mat[2][2])?],
                    ],
                })
            })
            .collect::<Option<Vec<_>>>()?;
        let mut den = num_bigint::BigInt::from(1);
        for t in taus {
            for x in t {
                let (a, b) = ZPhi::phi_coords(x);
                den = num_integer::Integer::lcm(&den, a.denom());
                den = num_integer::Integer::lcm(&den, b.denom());
            }
        }
        let den = Rat::from_big_int(den);
        let ztaus = taus
            .iter()
            .map(|t| t.iter().map(|x| z(&x.scale(&den))).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        let scale = emb(&Qs5::from_rat(c.checked_div(&den).ok()?))?;
        let phi = emb(&Qs5::phi())?;
        Some((zroots, ztaus, scale, phi))
    }

    /// True while the polynomial data is carried in small integers.
    pub fn uses_integer_path(&self) -> bool {
        matches!(self.poly, Poly::Fast { .. })
    }

    /// Dunkl matrices from slice `k` to slice `k-1`, advancing the
    /// polynomial data by one degree.
    fn next_dunkl(&mut self, k: usize) -> Result<[Mat<F>; 3], VermaError> {
        let d = self.dim_tau;
        let rows = mono_dim(k - 1) * d;
        let cols = mono_dim(k) * d;
        let mut fallback = None;
        let sums: [Vec<F>; 3] = match &mut self.poly {
            Poly::Fast {
                roots,
                taus,
                scale,
                phi,
                level,
            } => {
                let attempt = level_next(roots, level, k).and_then(|next| {
                    let w = dunkl_sums(roots, taus, &next, k, d)?;
                    Ok((next, w))
                });
                match attempt {
                    Ok((next, w)) => {
                        *level = next;
                        let conv = |v: &Vec<ZPhi>| -> Vec<F> {
                            v.iter()
                                .map(|x| if x.c_is_zero() { F::zero() } else { x.to_field(phi).mul(scale) })
                                .collect()
                        };
                        [conv(&w[0]), conv(&w[1]), conv(&w[2])]
                    }
                    Err(Fail::Bad(e)) => return Err(e),
                    Err(Fail::Overflow) => {
                        let p = phi.clone();
                        fallback = Some(level.map(&|x: &ZPhi| x.to_field(&p)));
                        [Vec::new(), Vec::new(), Vec::new()]
                    }
                }
            }
            Poly::Generic { .. } => [Vec::new(), Vec::new(), Vec::new()],
        };
        if let Some(level) = fallback {
            self.poly = Poly::Generic { level };
        }
        let sums = if let Poly::Generic { level } = &mut self.poly {
            let next = match level_next(&self.roots, level, k) {
                Ok(n) => n,
                Err(Fail::Bad(e)) => return Err(e),
                Err(Fail::Overflow) => unreachable!("field arithmetic does not overflow"),
            };
            let w = match dunkl_sums(&self.roots, &self.taus, &next, k, d) {
                Ok(w) => w,
                Err(Fail::Bad(e)) => return Err(e),
                Err(Fail::Overflow) => unreachable!("field arithmetic does not overflow"),
            };
            *level = next;
            let c = self.c_f.clone();
            w.map(|v| v.iter().map(|x| if x.is_zero() { F::zero() } else { x.mul(&c) }).collect())
        } else {
            sums
        };
        // D_i = ∂_i ⊗ 1 - c W_i
        let mut out: [Mat<F>; 3] = std::array::from_fn(|_| Mat::zeros(rows, cols));
        for i in 0..3 {
            for (idx, v) in sums[i].iter().enumerate() {
                if !v.is_zero() {
                    out[i].set(idx / cols, idx % cols, v.neg());
                }
            }
        }
        for (ei, e) in monomials(k).iter().enumerate() {
            for i in 0..3 {
                if e[i] == 0 {
                    continue;
                }
                let mut m = *e;
                m[i] -= 1;
                let mi = mono_index(m);
                let coef = F::from_int(e[i] as i64);
                for u in 0..d {
                    out[i].get_mut(mi * d + u, ei * d + u).add_assign(&coef);
                }
            }
        }
        Ok(out)
    }

    pub fn slice_dim(&self, k: usize) -> usize {
        mono_dim(k) * self.dim_tau
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Whether `form(k)` can be served without rebuilding.
    pub fn has_form(&self, k: usize) -> bool {
        k > self.top || self.forms[k].is_some()
    }

    /// Compute everything up to degree `k`.
    pub fn advance_to(&mut self, k: usize) -> Result<(), VermaError> {
        while self.top < k {
            self.step()?;
        }
        Ok(())
    }

    fn step(&mut self) -> Result<(), VermaError> {
        let k = self.top + 1;
        let hi_monos = monomials(k);
        let d = self.dim_tau;
        let cols = hi_monos.len() * d;
        let dk = self.next_dunkl(k)?;

        // B_k(x_i m ⊗ u, n) = Σ_j G_ij B_{k-1}(m ⊗ u, D_j n)
        let b_prev = self.forms[k - 1].as_ref().expect("previous form kept");
        let p: Vec<Option<Mat<F>>> = (0..3).map(|j| Some(b_prev.mul(&dk[j]))).collect();
        let row_from = |e: &[usize; 3], i: usize, u: usize| -> Vec<F> {
            let mut m = *e;
            m[i] -= 1;
            let src = mono_index(m) * d + u;
            let mut row = vec![F::zero(); cols];
            for j in 0..3 {
                let gij = self.gram.get(i, j);
                if gij.is_zero() {
                    continue;
                }
                let pj = p[j].as_ref().unwrap();
                for (c, v) in pj.row(src).iter().enumerate() {
                    if !v.is_zero() {
                        row[c].add_mul(gij, v);
                    }
                }
            }
            row
        };
        let mut bk = Mat::zeros(cols, cols);
        for (ei, e) in hi_monos.iter().enumerate() {
            let i = first_var(e);
            for u in 0..d {
                let row = row_from(e, i, u);
                if self.opts.check_liftings {
                    for i2 in (i + 1)..3 {
                        if e[i2] > 0 && row_from(e, i2, u) != row {
                            return Err(VermaError::Lifting { degree: k });
                        }
                    }
                }
                bk.row_mut(ei * d + u).clone_from_slice(&row);
            }
        }

        if !self.opts.keep_all {
            if k >= 2 {
                self.forms[k - 2] = None;
                self.dunkl[k - 2] = None;
            }
        }
        self.forms.push(Some(bk));
        self.dunkl.push(Some(dk));
        self.top = k;
        Ok(())
    }

    /// Matrix of the contravariant form on slice `k` (must be retained).
    pub fn form(&mut self, k: usize) -> Result<&Mat<F>, VermaError> {
        self.advance_to(k)?;
        Ok(self.forms[k].as_ref().expect("form not retained; use keep_all"))
    }

    /// Matrix of `D_{y_i}` from slice `k` to slice `k-1` (`k ≥ 1`).
    pub fn dunkl(&mut self, k: usize, i: usize) -> Result<&Mat<F>, VermaError> {
        self.advance_to(k)?;
        Ok(self.dunkl_at(k, i))
    }

    /// Already computed Dunkl matrix; panics if it was not retained.
    pub fn dunkl_at(&self, k: usize, i: usize) -> &Mat<F> {
        &self.dunkl[k].as_ref().expect("Dunkl matrix not retained; use keep_all")[i]
    }

    /// Multiplication by `x_i` from slice `k` to slice `k+1`.
    pub fn x_mul(&self, k: usize, i: usize) -> Mat<F> {
        let d = self.dim_tau;
        let mut m = Mat::zeros(mono_dim(k + 1) * d, mono_dim(k) * d);
        for (ei, e) in monomials(k).iter().enumerate() {
            let t = mono_index(bump(*e, i));
            for u in 0..d {
                m.set(t * d + u, ei * d + u, F::one());
            }
        }
        m
    }

    /// Action of group element `w` on slice `k`.
    pub fn slice_action(&self, w: usize, k: usize) -> Mat<F> {
        poly_action(&self.group_all[w], k).kron(&self.tau_all[w])
    }

    /// `Σ_s s` acting on slice `k`.
    pub fn reflection_sum(&self, g: &H3, k: usize) -> Mat<F> {
        let n = self.slice_dim(k);
        let mut acc = Mat::zeros(n, n);
        for r in &g.reflections {
            acc = acc.add(&self.slice_action(r.element, k));
        }
        acc
    }

    /// Multiplicities of irreps in the kernel of the form on slice `k`,
    /// read off from traces of class representatives on a kernel basis.
    /// `to_int` recovers an integer from a field element.
    pub fn kernel_multiplicities(
        &mut self,
        g: &H3,
        reps: &Reps,
        k: usize,
        emb: &dyn Fn(&Qs5) -> Option<F>,
        to_int: &dyn Fn(&F) -> Option<i64>,
    ) -> Result<KernelInfo, VermaError> {
        let b = self.form(k)?.clone();
        let (n, free) = kernel_basis(&b);
        let dim = b.rows;
        let mult = kernel_mult(g, reps, k, &n, &free, &|w| Ok(self.slice_action(w, k)), emb, to_int)?;
        Ok(KernelInfo {
            degree: k,
            dim,
            rank: dim - free.len(),
            mult,
        })
    }

    /// Trace of group element `w` on slice `k`.
    pub fn slice_trace(&self, w: usize, k: usize) -> F {
        poly_action(&self.group_all[w], k).trace().mul(&self.tau_all[w].trace())
    }
}

/// Irrep multiplicities of the span of the columns of `n`, which must be a
/// kernel basis in reduced form (identity on the rows `free`).
#[allow(clippy::too_many_arguments)]
fn kernel_mult<F: Field>(
    g: &H3,
    reps: &Reps,
    k: usize,
    n: &Mat<F>,
    free: &[usize],
    action: &dyn Fn(usize) -> Result<Mat<F>, VermaError>,
    emb: &dyn Fn(&Qs5) -> Option<F>,
    to_int: &dyn Fn(&F) -> Option<i64>,
) -> Result<[i64; 10], VermaError> {
    let nullity = free.len();
    let mut traces = Vec::with_capacity(g.classes.len());
    for cls in &g.classes {
        if nullity == 0 {
            traces.push(F::zero());
            continue;
        }
        let w = action(cls.representative)?;
        let wn = w.mul(n);
        let a = wn.select_rows(free);
        if n.mul(&a) != wn {
            return Err(VermaError::KernelNotInvariant { degree: k });
        }
        traces.push(a.trace());
    }
    mult_from_traces(g, reps, &traces, nullity, emb, to_int)
}

fn mult_from_traces<F: Field>(
    g: &H3,
    reps: &Reps,
    traces: &[F],
    dim: usize,
    emb: &dyn Fn(&Qs5) -> Option<F>,
    to_int: &dyn Fn(&F) -> Option<i64>,
) -> Result<[i64; 10], VermaError> {
    let mut mult = [0i64; 10];
    let order = F::from_int(g.order() as i64).inv().expect("120 invertible");
    for l in Label::ALL {
        let mut acc = F::zero();
        for (ci, cls) in g.classes.iter().enumerate() {
            let chi = emb(&reps.chi(l).0[ci]).ok_or(VermaError::Reduction)?;
            let sz = F::from_int(cls.size as i64);
            acc.add_assign(&traces[ci].mul(&chi).mul(&sz));
        }
        let m = to_int(&acc.mul(&order)).ok_or(VermaError::KernelCharacter)?;
        if m < 0 {
            return Err(VermaError::KernelCharacter);
        }
        mult[l.0] = m;
    }
    let weighted: i64 = Label::ALL.iter().map(|l| mult[l.0] * l.dim() as i64).sum();
    if weighted as usize != dim {
        return Err(VermaError::KernelCharacter);
    }
    Ok(mult)
}

/// How a kernel character was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelRoute {
    /// The form matrix is identically zero.
    ZeroForm,
    /// Exact rank in Z[√5] matched by the rank modulo a prime; traces taken
    /// on the modular kernel.
    RankPlusModular,
    /// Kernel basis and traces computed over Q(√5).
    Exact,
}

/// Kernel character of the form on slice `k`, exact.
///
/// When the fraction-free rank over Z[√5] equals the rank modulo a prime
/// above p, the modular kernel is the reduction of the exact kernel, so
/// its traces are reductions of the exact (integral) traces and the
/// small multiplicities lift uniquely. Otherwise falls back to a kernel
/// basis over the field.
pub fn certified_kernel(
    v: &mut Verma<Qs5>,
    g: &H3,
    reps: &Reps,
    k: usize,
) -> Result<(KernelInfo, KernelRoute), VermaError> {
    let b = v.form(k)?.clone();
    let dim = b.rows;
    let exact = |x: &Qs5| Some(x.clone());
    let exact_int = |x: &Qs5| x.to_i64();
    if b.is_zero() {
        let traces: Vec<Qs5> = g.classes.iter().map(|cls| v.slice_trace(cls.representative, k)).collect();
        let mult = mult_from_traces(g, reps, &traces, dim, &exact, &exact_int)?;
        let info = KernelInfo {
            degree: k,
            dim,
            rank: 0,
            mult,
        };
        return Ok((info, KernelRoute::ZeroForm));
    }
    let r = rank_bareiss(&b);
    const P: u64 = crate::scalar::PRIME_A;
    let emb = Embedding::<P>::new(false);
    if let Some(bp) = b.try_map(|x| emb.map(x)) {
        let (n, free) = kernel_basis(&bp);
        if free.len() == dim - r {
            let to_int = |x: &Fp<P>| {
                let l = x.lift();
                (l.abs() < 1 << 40).then_some(l)
            };
            let act = |w: usize| v.slice_action(w, k).try_map(|x| emb.map(x)).ok_or(VermaError::Reduction);
            let mult = kernel_mult(g, reps, k, &n, &free, &act, &|x| emb.map(x), &to_int)?;
            let info = KernelInfo {
                degree: k,
                dim,
                rank: r,
                mult,
            };
            return Ok((info, KernelRoute::RankPlusModular));
        }
    }
    let info = v.kernel_multiplicities(g, reps, k, &exact, &exact_int)?;
    if info.rank != r {
        return Err(VermaError::KernelCharacter);
    }
    Ok((info, KernelRoute::Exact))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelInfo {
    pub degree: usize,
    pub dim: usize,
    pub rank: usize,
    pub mult: [i64; 10],
}

impl KernelInfo {
    pub fn nullity(&self) -> usize {
        self.dim - self.rank
    }

    pub fn labels(&self) -> Vec<Label> {
        let mut out = Vec::new();
        for l in Label::ALL {
            for _ in 0..self.mult[l.0] {
                out.push(l);
            }
        }
        out
    }
}

/// Exact form matrix on slice `k`.
pub fn form_matrix(g: &H3, reps: &Reps, tau: Label, c: &Rat, k: usize) -> Result<Mat<Qs5>, VermaError> {
    let mut v = Verma::new(g, reps, tau, c);
    Ok(v.form(k)?.clone())
}

/// Exact rank (fraction-free) and a kernel basis (Gauss–Jordan).
pub fn rank_and_kernel(b: &Mat<Qs5>) -> (usize, Mat<Qs5>) {
    let r = rank_bareiss(b);
    let (k, _) = kernel_basis(b);
    (r, k)
}

/// Exact kernel character of the form on slice `k`.
pub fn kernel_character(g: &H3, reps: &Reps, tau: Label, c: &Rat, k: usize) -> Result<KernelInfo, VermaError> {
    let mut v = Verma::new(g, reps, tau, c);
    v.kernel_multiplicities(g, reps, k, &|x| Some(x.clone()), &|x: &Qs5| x.to_i64())
}

/// Kernel character computed modulo one large prime. The rank found this
/// way never exceeds the exact rank.
pub fn kernel_character_modular(
    g: &H3,
    reps: &Reps,
    tau: Label,
    c: &Rat,
    k: usize,
) -> Result<KernelInfo, VermaError> {
    const P: u64 = crate::scalar::PRIME_A;
    let emb = Embedding::<P>::new(false);
    let mut v = Verma::<Fp<P>>::modular(g, reps, tau, c, &emb)?;
    let to_int = |x: &Fp<P>| {
        let l = x.lift();
        if l.abs() < 1 << 40 {
            Some(l)
        } else {
            None
        }
    };
    v.kernel_multiplicities(g, reps, k, &|x| emb.map(x), &to_int)
}

/// Rank of the form on slice `k` reduced modulo each of the three primes.
pub fn modular_ranks(g: &H3, reps: &Reps, tau: Label, c: &Rat, k: usize) -> Result<[usize; 3], VermaError> {
    fn one<const P: u64>(
        g: &H3,
        reps: &Reps,
        tau: Label,
        c: &Rat,
        k: usize,
        conj: bool,
    ) -> Result<usize, VermaError> {
        let emb = Embedding::<P>::new(conj);
        let mut v = Verma::<Fp<P>>::modular(g, reps, tau, c, &emb)?;
        Ok(rref(v.form(k)?).1.len())
    }
    Ok([
        one::<{ crate::scalar::PRIME_A }>(g, reps, tau, c, k, false)?,
        one::<{ crate::scalar::PRIME_B }>(g, reps, tau, c, k, true)?,
        one::<{ crate::scalar::PRIME_C }>(g, reps, tau, c, k, false)?,
    ])
}

/// Lowest weight `h_c(τ) = 3/2 - c Σ_s χ_τ(s)/dim τ`.
pub fn lowest_weight(g: &H3, reps: &Reps, tau: Label, c: &Rat) -> Rat {
    let cc = reps.central_constant(g, tau);
    &Rat::new(3, 2) - &(c * &cc)
}

#[derive(Clone, Debug)]
pub struct Sl2Report {
    pub max_degree: usize,
    pub h_scalars: Vec<Rat>,
    pub relations_hold: bool,
}

fn inverse3(m: &Mat<Qs5>) -> Mat<Qs5> {
    let n = m.rows;
    let mut aug = Mat::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, Qs5::one());
    }
    let (r, _) = rref(&aug);
    r.select_cols(&(n..2 * n).collect::<Vec<_>>())
}

/// Checks `[h,E] = 2E`, `[h,F] = -2F`, `[E,F] = h` on slices up to
/// `max_k`, and that `h` is the scalar `k + h_c(τ)` on slice `k`.
pub fn sl2_check(g: &H3, reps: &Reps, tau: Label, c: &Rat, max_k: usize) -> Result<Sl2Report, VermaError> {
    let opts = Options {
        keep_all: true,
        ..Options::default()
    };
    let mut v = Verma::with_options(g, reps, tau, c, opts);
    v.advance_to(max_k + 2)?;
    let ginv = inverse3(&g.gram);
    let half = Qs5::from_frac(1, 2, 0, 1);
    let cq = Qs5::from_rat(c.clone());
    let x: Vec<[Mat<Qs5>; 3]> = (0..=max_k + 1).map(|k| [v.x_mul(k, 0), v.x_mul(k, 1), v.x_mul(k, 2)]).collect();
    let e_op = |k: usize| {
        let mut acc = Mat::zeros(v.slice_dim(k + 2), v.slice_dim(k));
        for i in 0..3 {
            for j in 0..3 {
                let gij = ginv.get(i, j);
                if !gij.is_zero() {
                    acc = acc.add(&x[k + 1][i].mul(&x[k][j]).scale(&(gij * &half)));
                }
            }
        }
        acc
    };
    let mut f_ops = Vec::new();
    let mut h_ops = Vec::new();
    for k in 0..=max_k + 2 {
        let n = v.slice_dim(k);
        let mut f = Mat::zeros(if k >= 2 { v.slice_dim(k - 2) } else { 0 }, n);
        if k >= 2 {
            for i in 0..3 {
                for j in 0..3 {
                    let gij = g.gram.get(i, j).clone();
                    if !gij.is_zero() {
                        let t = v.dunkl_at(k - 1, i).mul(v.dunkl_at(k, j));
                        f = f.sub(&t.scale(&(&gij * &half)));
                    }
                }
            }
        }
        f_ops.push(f);
        let mut h = Mat::identity(n).scale(&Qs5::from_frac(3, 2, 0, 1));
        if k >= 1 {
            for i in 0..3 {
                h = h.add(&x[k - 1][i].mul(v.dunkl_at(k, i)));
            }
        }
        h = h.sub(&v.reflection_sum(g, k).scale(&cq));
        h_ops.push(h);
    }
    let hc = lowest_weight(g, reps, tau, c);
    let mut ok = true;
    let mut scalars = Vec::new();
    for k in 0..=max_k {
        let n = v.slice_dim(k);
        let expect = Qs5::from_rat(&Rat::from_int(k as i64) + &hc);
        ok &= h_ops[k] == Mat::identity(n).scale(&expect);
        scalars.push(h_ops[k].get(0, 0).as_rat().cloned().unwrap_or_else(Rat::zero));
        let e = e_op(k);
        let he = h_ops[k + 2].mul(&e).sub(&e.mul(&h_ops[k]));
        ok &= he == e.scale(&Qs5::from_int(2));
        if k >= 2 {
            let f = &f_ops[k];
            let hf = h_ops[k - 2].mul(f).sub(&f.mul(&h_ops[k]));
            ok &= hf == f.scale(&Qs5::from_int(-2));
        }
        let fe = f_ops[k + 2].mul(&e);
        let ef = if k >= 2 { e_op(k - 2).mul(&f_ops[k]) } else { Mat::zeros(n, n) };
        ok &= ef.sub(&fe) == h_ops[k];
    }
    Ok(Sl2Report {
        max_degree: max_k,
        h_scalars: scalars,
        relations_hold: ok,
    })
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
    fn monomial_indexing() {
        for k in 0..8 {
            for (i, e) in monomials(k).iter().enumerate() {
                assert_eq!(mono_index(*e), i);
            }
        }
    }

    #[test]
    fn degree_one_dunkl_matches_commutator() {
        let (g, r) = setup();
        let c = Rat::new(1, 2);
        let mut v = Verma::new(&g, &r, Label::THREE_MINUS, &c);
        let d = 3;
        for i in 0..3 {
            let dm = v.dunkl(1, i).unwrap().clone();
            for j in 0..3 {
                // δ_ij - c Σ_s α_s[i] (x_j, α_s^∨) τ(s)
                let mut expect = Mat::identity(d).scale(&Qs5::from_int(if i == j { 1 } else { 0 }));
                for s in &g.reflections {
                    let t = r.get(Label::THREE_MINUS).mats[s.element].clone();
                    let coef = &(&s.alpha[i] * &s.alpha_check[j]) * &Qs5::from_rat(c.clone());
                    expect = expect.sub(&t.scale(&coef));
                }
                let block = dm.select_cols(&(j * d..j * d + d).collect::<Vec<_>>());
                assert_eq!(block, expect);
            }
        }
    }

    #[test]
    fn integer_path_matches_field_path() {
        let (g, r) = setup();
        for (tau, c) in [(Label::FIVE_MINUS, Rat::new(1, 3)), (Label::FOUR_PLUS, Rat::new(2, 5)), (Label::THREE_T_PLUS, Rat::new(-1, 6))] {
            let mut fast = Verma::new(&g, &r, tau, &c);
            assert!(fast.uses_integer_path());
            let opts = Options {
                force_generic: true,
                ..Options::default()
            };
            let mut slow = Verma::with_options(&g, &r, tau, &c, opts);
            for k in 1..=3 {
                assert_eq!(fast.form(k).unwrap(), slow.form(k).unwrap(), "{tau} degree {k}");
            }
        }
    }

    #[test]
    fn c_zero_form_is_standard_pairing() {
        let (g, r) = setup();
        let b = form_matrix(&g, &r, Label::ONE_PLUS, &Rat::zero(), 2).unwrap();
        assert_eq!(rank_bareiss(&b), 6);
    }
}
