//! Dense matrices over a [`Field`], plus the exact rank kernels.
//!
//! Three independent rank routes exist for Q(√5) matrices:
//! fraction-free elimination in Z[√5] ([`rank_bareiss`]), plain
//! Gauss–Jordan over the field ([`rank_gauss`]), and reduction modulo
//! several primes ([`rank_modular`], a lower bound that is exact for all
//! but finitely many primes).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::scalar::{Embedding, Field, Fp, Qs5, Rat, PRIME_A, PRIME_B, PRIME_C};

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<F> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut F {
        &mut self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        if let Some(m) = F::mat_mul_fast(self, o) {
            return m;
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.data[i * o.cols + j].add_mul(a, b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(s)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Field::neg).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> F {
        let mut acc = F::zero();
        for i in 0..self.rows.min(self.cols) {
            acc.add_assign(self.get(i, i));
        }
        acc
    }

    /// Kronecker product `self ⊗ o` (row index `i*o.rows + k`).
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out.set(i * o.rows + k, j * o.cols + l, a.mul(o.get(k, l)));
                    }
                }
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(idx.len(), self.cols);
        for (r, &i) in idx.iter().enumerate() {
            out.row_mut(r).clone_from_slice(self.row(i));
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                out.set(i, c, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<Mat<G>> {
        let data: Option<Vec<G>> = self.data.iter().map(f).collect();
        Some(Mat {
            rows: self.rows,
            cols: self.cols,
            data: data?,
        })
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }
}

/// Reduced row echelon form by Gauss–Jordan; returns the pivot columns.
pub fn rref<F: Field>(m: &Mat<F>) -> (Mat<F>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a.get(r, c).inv().expect("nonzero pivot");
        for j in c..a.cols {
            let v = a.get(r, j).mul(&inv);
            a.set(r, j, v);
        }
        let pivot_row: Vec<F> = a.row(r).to_vec();
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            let row = a.row_mut(i);
            for j in c..row.len() {
                if !pivot_row[j].is_zero() {
                    let d = f.mul(&pivot_row[j]);
                    row[j] = row[j].sub(&d);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank by plain Gauss–Jordan over the field (first-nonzero pivoting).
pub fn rank_gauss<F: Field>(m: &Mat<F>) -> usize {
    rref(m).1.len()
}

/// Basis of the right null space, as columns of an `n × nullity` matrix
/// in reduced form (identity on the free coordinates).
pub fn kernel_basis<F: Field>(m: &Mat<F>) -> (Mat<F>, Vec<usize>) {
    if let Some(k) = F::kernel_fast(m) {
        return k;
    }
    kernel_gauss(m)
}

/// [`kernel_basis`] by plain Gauss–Jordan, whatever the scalar type.
pub fn kernel_gauss<F: Field>(m: &Mat<F>) -> (Mat<F>, Vec<usize>) {
    let (r, pivots) = rref(m);
    let n = m.cols;
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut k = Mat::zeros(n, free.len());
    for (col, &f) in free.iter().enumerate() {
        k.set(f, col, F::one());
        for (row, &p) in pivots.iter().enumerate() {
            let v = r.get(row, f);
            if !v.is_zero() {
                k.set(p, col, v.neg());
            }
        }
    }
    (k, free)
}

/// Coordinates of the columns of `v` in the column basis `basis`, where
/// `basis` restricted to `key_rows` is the identity (as produced by
/// [`kernel_basis`] and [`column_echelon`]). Returns `None` if some column
/// of `v` is not in the span.
pub fn coords_in_basis<F: Field>(basis: &Mat<F>, key_rows: &[usize], v: &Mat<F>) -> Option<Mat<F>> {
    let coords = v.select_rows(key_rows);
    if basis.mul(&coords) == *v {
        Some(coords)
    } else {
        None
    }
}

/// Column-echelon basis of the span of the columns of `m`: returns a
/// matrix whose columns span the same space and that is the identity on
/// the returned key rows.
pub fn column_echelon<F: Field>(m: &Mat<F>) -> (Mat<F>, Vec<usize>) {
    let (r, pivots) = rref(&m.transpose());
    let basis = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>()).transpose();
    (basis, pivots)
}

/// Element of Z[√5] used by the fraction-free kernel.
#[derive(Clone, Debug, PartialEq)]
struct Zs5 {
    a: BigInt,
    b: BigInt,
}

impl Zs5 {
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn mul(&self, o: &Zs5) -> Zs5 {
        match (self.b.is_zero(), o.b.is_zero()) {
            (true, true) => Zs5 {
                a: &self.a * &o.a,
                b: BigInt::zero(),
            },
            (true, false) => Zs5 {
                a: &self.a * &o.a,
                b: &self.a * &o.b,
            },
            (false, true) => Zs5 {
                a: &self.a * &o.a,
                b: &self.b * &o.a,
            },
            (false, false) => Zs5 {
                a: &self.a * &o.a + BigInt::from(5) * (&self.b * &o.b),
                b: &self.a * &o.b + &self.b * &o.a,
            },
        }
    }

    fn sub(&self, o: &Zs5) -> Zs5 {
        Zs5 {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    fn size(&self) -> u64 {
        self.a.bits() + self.b.bits()
    }

    /// Exact quotient; panics if the division is not exact.
    fn div_exact(&self, d: &Zs5) -> Zs5 {
        if d.b.is_zero() {
            let (qa, ra) = self.a.div_rem(&d.a);
            let (qb, rb) = self.b.div_rem(&d.a);
            assert!(ra.is_zero() && rb.is_zero(), "inexact division in fraction-free elimination");
            return Zs5 { a: qa, b: qb };
        }
        let n = &d.a * &d.a - BigInt::from(5) * (&d.b * &d.b);
        let conj = Zs5 {
            a: d.a.clone(),
            b: -&d.b,
        };
        let p = self.mul(&conj);
        let (qa, ra) = p.a.div_rem(&n);
        let (qb, rb) = p.b.div_rem(&n);
        assert!(ra.is_zero() && rb.is_zero(), "inexact division in fraction-free elimination");
        Zs5 { a: qa, b: qb }
    }
}

fn zs5_zero() -> Zs5 {
    Zs5 {
        a: BigInt::zero(),
        b: BigInt::zero(),
    }
}

/// Rows scaled to Z[√5] entries, with the scaling factor of each row.
fn integral_rows(m: &Mat<Qs5>) -> (Vec<Vec<Zs5>>, Vec<BigInt>) {
    let mut dens = Vec::with_capacity(m.rows);
    let rows = (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let mut l = BigInt::one();
            for x in row {
                if !x.is_zero() {
                    l = l.lcm(&x.denom_lcm());
                }
            }
            let out = row
                .iter()
                .map(|x| {
                    if x.is_zero() {
                        return zs5_zero();
                    }
                    let sa = x.a.numer() * (&l / x.a.denom());
                    let sb = x.b.numer() * (&l / x.b.denom());
                    Zs5 { a: sa, b: sb }
                })
                .collect();
            dens.push(l);
            out
        })
        .collect();
    (rows, dens)
}

fn to_integral_rows(m: &Mat<Qs5>) -> Vec<Vec<Zs5>> {
    integral_rows(m).0
}

fn zs5_to_qs5(z: &Zs5, den: &BigInt) -> Qs5 {
    let r = |n: &BigInt| Rat::from_bigs(n.clone(), den.clone()).expect("nonzero denominator");
    Qs5::new(r(&z.a), r(&z.b))
}

fn small(z: &Zs5) -> Option<(i128, i128)> {
    Some((z.a.to_i64()? as i128, z.b.to_i64()? as i128))
}

fn dot_small(a: &[(usize, (i128, i128))], col: &[Option<(i128, i128)>]) -> Option<(i128, i128)> {
    let mut sa: i128 = 0;
    let mut sb: i128 = 0;
    for &(l, (x, y)) in a {
        let Some((u, v)) = col[l] else { continue };
        let xu = x.checked_mul(u)?;
        let yv = y.checked_mul(v)?.checked_mul(5)?;
        let xv = x.checked_mul(v)?;
        let yu = y.checked_mul(u)?;
        sa = sa.checked_add(xu)?.checked_add(yv)?;
        sb = sb.checked_add(xv)?.checked_add(yu)?;
    }
    Some((sa, sb))
}

/// Product of two Q(√5) matrices through integral rows and columns: all
/// inner products are taken in Z[√5] and reduced once per entry.
pub fn mul_integral(a: &Mat<Qs5>, b: &Mat<Qs5>) -> Mat<Qs5> {
    assert_eq!(a.cols, b.rows, "shape mismatch in product");
    let (ra, la) = integral_rows(a);
    let (cb, lb) = integral_rows(&b.transpose());
    let cb_small: Vec<Vec<Option<(i128, i128)>>> = cb
        .iter()
        .map(|c| c.iter().map(|z| if z.is_zero() { None } else { small(z) }).collect())
        .collect();
    let cb_all_small: Vec<bool> = cb
        .iter()
        .zip(&cb_small)
        .map(|(c, s)| c.iter().zip(s).all(|(z, t)| z.is_zero() || t.is_some()))
        .collect();
    let mut out = Mat::zeros(a.rows, b.cols);
    for (i, row) in ra.iter().enumerate() {
        let nz: Vec<usize> = (0..row.len()).filter(|&l| !row[l].is_zero()).collect();
        if nz.is_empty() {
            continue;
        }
        let row_small: Option<Vec<(usize, (i128, i128))>> = nz.iter().map(|&l| Some((l, small(&row[l])?))).collect();
        for j in 0..b.cols {
            let fast = match (&row_small, cb_all_small[j]) {
                (Some(rs), true) => dot_small(rs, &cb_small[j]),
                _ => None,
            };
            let acc = match fast {
                Some((sa, sb)) => Zs5 {
                    a: BigInt::from(sa),
                    b: BigInt::from(sb),
                },
                None => {
                    let col = &cb[j];
                    let mut acc = zs5_zero();
                    for &l in &nz {
                        let y = &col[l];
                        if y.is_zero() {
                            continue;
                        }
                        let x = &row[l];
                        acc.a += &x.a * &y.a;
                        if !x.b.is_zero() && !y.b.is_zero() {
                            acc.a += BigInt::from(5) * (&x.b * &y.b);
                        }
                        if !y.b.is_zero() {
                            acc.b += &x.a * &y.b;
                        }
                        if !x.b.is_zero() {
                            acc.b += &x.b * &y.a;
                        }
                    }
                    acc
                }
            };
            if !acc.is_zero() {
                out.set(i, j, zs5_to_qs5(&acc, &(&la[i] * &lb[j])));
            }
        }
    }
    out
}

/// Null space by fraction-free Gauss–Jordan in Z[√5]. Output matches
/// [`kernel_gauss`]: columns are the identity on the free coordinates.
pub fn kernel_fraction_free(m: &Mat<Qs5>) -> (Mat<Qs5>, Vec<usize>) {
    let mut a = to_integral_rows(m);
    let rows = m.rows;
    let cols = m.cols;
    let mut prev = Zs5 {
        a: BigInt::one(),
        b: BigInt::zero(),
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut best: Option<(usize, u64)> = None;
        for (i, row) in a.iter().enumerate().skip(r) {
            if row[c].is_zero() {
                continue;
            }
            let size = row[c].size();
            if best.map_or(true, |(_, z)| size < z) {
                best = Some((i, size));
            }
        }
        let Some((p, _)) = best else { continue };
        a.swap(p, r);
        let prow = a[r].clone();
        let piv = prow[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let t = if f.is_zero() || prow[j].is_zero() {
                    if row[j].is_zero() {
                        continue;
                    }
                    row[j].mul(&piv)
                } else {
                    row[j].mul(&piv).sub(&f.mul(&prow[j]))
                };
                row[j] = if t.is_zero() { t } else { t.div_exact(&prev) };
            }
            row[c] = zs5_zero();
        }
        pivots.push(c);
        prev = piv;
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut k = Mat::zeros(cols, free.len());
    if free.is_empty() {
        return (k, free);
    }
    // every pivot row now has the last pivot `prev` on its diagonal
    let d_inv = zs5_to_qs5(&prev, &BigInt::one()).inv().expect("nonzero pivot").neg();
    for (col, &f) in free.iter().enumerate() {
        k.set(f, col, Qs5::one());
        for (row, &p) in pivots.iter().enumerate() {
            let v = &a[row][f];
            if !v.is_zero() {
                k.set(p, col, &zs5_to_qs5(v, &BigInt::one()) * &d_inv);
            }
        }
    }
    (k, free)
}

/// Rank by fraction-free (Bareiss) elimination in Z[√5] after clearing
/// row denominators. Each column picks, among candidate pivots, the entry
/// whose row has the largest support, breaking ties by smallest size.
pub fn rank_bareiss(m: &Mat<Qs5>) -> usize {
    let mut a = to_integral_rows(m);
    let rows = m.rows;
    let cols = m.cols;
    let mut prev = Zs5 {
        a: BigInt::one(),
        b: BigInt::zero(),
    };
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut best: Option<(usize, usize, u64)> = None;
        for (i, row) in a.iter().enumerate().skip(r) {
            if row[c].is_zero() {
                continue;
            }
            let support = row[c..].iter().filter(|x| !x.is_zero()).count();
            let size = row[c].size();
            let better = match best {
                None => true,
                Some((_, s, z)) => support > s || (support == s && size < z),
            };
            if better {
                best = Some((i, support, size));
            }
        }
        let Some((p, _, _)) = best else { continue };
        a.swap(p, r);
        let (head, tail) = a.split_at_mut(r + 1);
        let prow = &head[r];
        let piv = prow[c].clone();
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in (c + 1)..cols {
                let t = if f.is_zero() {
                    row[j].mul(&piv)
                } else if prow[j].is_zero() {
                    row[j].mul(&piv)
                } else {
                    row[j].mul(&piv).sub(&f.mul(&prow[j]))
                };
                row[j] = if t.is_zero() { t } else { t.div_exact(&prev) };
            }
            row[c] = Zs5 {
                a: BigInt::zero(),
                b: BigInt::zero(),
            };
        }
        prev = piv;
        r += 1;
    }
    r
}

fn rank_mod<const P: u64>(m: &Mat<Qs5>, conjugate: bool) -> Option<usize> {
    let e = Embedding::<P>::new(conjugate);
    let mp: Mat<Fp<P>> = m.try_map(|x| e.map(x))?;
    Some(rank_gauss(&mp))
}

/// Largest rank over three prime reductions (both root choices). Never
/// exceeds the exact rank; equals it unless every prime divides a
/// maximal nonzero minor.
pub fn rank_modular(m: &Mat<Qs5>) -> usize {
    [
        rank_mod::<PRIME_A>(m, false),
        rank_mod::<PRIME_B>(m, true),
        rank_mod::<PRIME_C>(m, false),
    ]
    .into_iter()
    .flatten()
    .max()
    .unwrap_or(0)
}

/// Determinant by Gaussian elimination over the field.
pub fn det(m: &Mat<Qs5>) -> Qs5 {
    assert_eq!(m.rows, m.cols);
    let mut a = m.clone();
    let n = m.rows;
    let mut d = Qs5::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return Qs5::zero();
        };
        if p != c {
            for j in 0..n {
                let t = a.get(p, j).clone();
                let u = a.get(c, j).clone();
                a.set(p, j, u);
                a.set(c, j, t);
            }
            d = -d;
        }
        let pv = a.get(c, c).clone();
        d = &d * &pv;
        let inv = pv.inv().unwrap();
        for i in (c + 1)..n {
            let f = a.get(i, c) * &inv;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = a.get(i, j) - &(&f * a.get(c, j));
                a.set(i, j, v);
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn q(a: i64, b: i64) -> Qs5 {
        Qs5::new(Rat::from_int(a), Rat::from_int(b))
    }

    #[test]
    fn ranks_agree_on_small_cases() {
        let m = Mat::from_rows(vec![
            vec![q(1, 1), q(2, 0), q(3, -1)],
            vec![q(2, 2), q(4, 0), q(6, -2)],
            vec![q(0, 1), q(1, 0), Qs5::phi()],
        ]);
        assert_eq!(rank_bareiss(&m), 2);
        assert_eq!(rank_gauss(&m), 2);
        assert_eq!(rank_modular(&m), 2);
        // row 2 = (1+√5)/... scaled copy: rank over Q(√5) differs from Q
        let m2 = Mat::from_rows(vec![vec![q(1, 0), q(0, 1)], vec![q(0, 1), q(5, 0)]]);
        assert_eq!(rank_bareiss(&m2), 1);
        assert_eq!(rank_gauss(&m2), 1);
    }

    #[test]
    fn kernel_spans_null_space() {
        let m = Mat::from_rows(vec![
            vec![q(1, 0), q(1, 1), q(0, 0), q(2, 0)],
            vec![q(2, 0), q(2, 2), q(1, 0), q(1, 0)],
        ]);
        let (k, free) = kernel_basis(&m);
        assert_eq!(k.cols, 2);
        assert!(m.mul(&k).is_zero());
        assert_eq!(free.len(), 2);
    }

    #[test]
    fn fast_paths_agree_with_plain_routes() {
        // deterministic pseudo-random entries with mixed denominators
        let mut seed: i64 = 7;
        let mut next = || {
            seed = (seed * 1103515245 + 12345) % 2147483648;
            seed
        };
        let mut rows = Vec::new();
        for _ in 0..9 {
            let mut row = Vec::new();
            for _ in 0..12 {
                let v = next();
                row.push(if v % 3 == 0 {
                    Qs5::zero()
                } else {
                    Qs5::from_frac(v % 17 - 8, 1 + v % 5, (v / 7) % 5 - 2, 2)
                });
            }
            rows.push(row);
        }
        let mut m = Mat::from_rows(rows);
        // force a dependency
        let r3: Vec<Qs5> = (0..12).map(|j| m.get(0, j) + &(m.get(1, j) * &Qs5::phi())).collect();
        m.row_mut(3).clone_from_slice(&r3);
        let t = m.transpose();
        let plain = {
            let mut out = Mat::zeros(9, 9);
            for i in 0..9 {
                for j in 0..9 {
                    let mut acc = Qs5::zero();
                    for l in 0..12 {
                        acc += &(m.get(i, l) * t.get(l, j));
                    }
                    out.set(i, j, acc);
                }
            }
            out
        };
        assert_eq!(mul_integral(&m, &t), plain);
        assert_eq!(kernel_fraction_free(&m), kernel_gauss(&m));
        assert_eq!(kernel_fraction_free(&t), kernel_gauss(&t));
    }

    #[test]
    fn determinant_small() {
        let m = Mat::from_rows(vec![vec![q(1, 1), q(2, 0)], vec![q(0, 1), q(1, 0)]]);
        // (1+√5)·1 − 2√5 = 1 − √5
        assert_eq!(det(&m), q(1, -1));
    }
}
