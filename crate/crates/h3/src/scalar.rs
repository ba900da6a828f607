//! Exact scalars: big rationals, the golden-ratio field Q(√5) with its
//! Galois involution, and prime fields used for modular cross-checks.
//!
//! Text format for [`Qs5`] is `a + b*r5` with `a`, `b` written as `p/q`
//! (for example `1/2 + 1/2*r5`, `-3`, `r5`, `1/2 - 1/2*r5`).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::Mat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
}

/// Arbitrary-precision rational in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigs(num: BigInt, den: BigInt) -> Result<Rat, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    pub fn from_big_int(n: BigInt) -> Rat {
        Rat(BigRational::from_integer(n))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// Integer value if the rational is integral and fits in an `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn inv(&self) -> Result<Rat, ScalarError> {
        if self.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(Rat(self.0.recip()))
        }
    }

    pub fn checked_div(&self, other: &Rat) -> Result<Rat, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Rat {
        let mut acc = Rat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Rat, ScalarError> {
        let t = s.trim();
        let bad = || ScalarError::Parse(s.to_string());
        if t.is_empty() {
            return Err(bad());
        }
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rat(BigRational::new(n, d)))
            }
            None => {
                let n: BigInt = t.parse().map_err(|_| bad())?;
                Ok(Rat::from_big_int(n))
            }
        }
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl<'a> $tr<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $m(self, o: &'a Rat) -> Rat {
                Rat(&self.0 $op &o.0)
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat(self.0 $op o.0)
            }
        }
        impl<'a> $tr<&'a Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: &'a Rat) -> Rat {
                Rat(self.0 $op &o.0)
            }
        }
    };
}

rat_binop!(Add, add, +);
rat_binop!(Sub, sub, -);
rat_binop!(Mul, mul, *);

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    /// Panics on a zero divisor; use [`Rat::checked_div`] for a `Result`.
    fn div(self, o: &'a Rat) -> Rat {
        self.checked_div(o).expect("rational division by zero")
    }
}

impl Div<Rat> for Rat {
    type Output = Rat;
    fn div(self, o: Rat) -> Rat {
        &self / &o
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl<'a> Neg for &'a Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, o: &Rat) {
        self.0 += &o.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, o: &Rat) {
        self.0 -= &o.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, o: &Rat) {
        self.0 *= &o.0;
    }
}

/// Element `a + b√5` of Q(√5).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Qs5 {
    pub a: Rat,
    pub b: Rat,
}

impl Qs5 {
    pub fn new(a: Rat, b: Rat) -> Qs5 {
        Qs5 { a, b }
    }

    pub fn from_rat(a: Rat) -> Qs5 {
        Qs5 { a, b: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Qs5 {
        Qs5::from_rat(Rat::from_int(n))
    }

    /// `(a_num/a_den) + (b_num/b_den)√5`.
    pub fn from_frac(a_num: i64, a_den: i64, b_num: i64, b_den: i64) -> Qs5 {
        Qs5 {
            a: Rat::new(a_num, a_den),
            b: Rat::new(b_num, b_den),
        }
    }

    pub fn zero() -> Qs5 {
        Qs5::default()
    }

    pub fn one() -> Qs5 {
        Qs5::from_int(1)
    }

    pub fn sqrt5() -> Qs5 {
        Qs5 {
            a: Rat::zero(),
            b: Rat::one(),
        }
    }

    /// The golden ratio (1+√5)/2.
    pub fn phi() -> Qs5 {
        Qs5::from_frac(1, 2, 1, 2)
    }

    /// Its conjugate (1−√5)/2.
    pub fn phi_conj() -> Qs5 {
        Qs5::from_frac(1, 2, -1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a == Rat::one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Rational value when `b = 0`.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Integer value when the element is a rational integer fitting `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        self.as_rat().and_then(Rat::to_i64)
    }

    /// √5 ↦ −√5.
    pub fn galois(&self) -> Qs5 {
        Qs5 {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// Field norm `a² − 5b²`.
    pub fn norm(&self) -> Rat {
        &(&self.a * &self.a) - &(&Rat::from_int(5) * &(&self.b * &self.b))
    }

    pub fn inv(&self) -> Result<Qs5, ScalarError> {
        let n = self.norm();
        let ninv = n.inv()?;
        let g = self.galois();
        Ok(Qs5 {
            a: &g.a * &ninv,
            b: &g.b * &ninv,
        })
    }

    pub fn checked_div(&self, other: &Qs5) -> Result<Qs5, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, r: &Rat) -> Qs5 {
        Qs5 {
            a: &self.a * r,
            b: &self.b * r,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * 5f64.sqrt()
    }

    pub fn pow(&self, e: u32) -> Qs5 {
        let mut acc = Qs5::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Least common multiple of the denominators of `a` and `b`.
    pub fn denom_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }
}

impl From<i64> for Qs5 {
    fn from(n: i64) -> Qs5 {
        Qs5::from_int(n)
    }
}

impl From<Rat> for Qs5 {
    fn from(r: Rat) -> Qs5 {
        Qs5::from_rat(r)
    }
}

impl fmt::Display for Qs5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let bpart = |f: &mut fmt::Formatter<'_>, b: &Rat| {
            if *b == Rat::one() {
                write!(f, "r5")
            } else {
                write!(f, "{}*r5", b)
            }
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-")?;
                return bpart(f, &self.b.abs());
            }
            return bpart(f, &self.b);
        }
        write!(f, "{}", self.a)?;
        if self.b.is_negative() {
            write!(f, " - ")?;
            bpart(f, &self.b.abs())
        } else {
            write!(f, " + ")?;
            bpart(f, &self.b)
        }
    }
}

impl fmt::Debug for Qs5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_term(t: &str, orig: &str) -> Result<Qs5, ScalarError> {
    let bad = || ScalarError::Parse(orig.to_string());
    let t = t.trim();
    if t.is_empty() {
        return Err(bad());
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t.strip_prefix('+').unwrap_or(t).trim()),
    };
    let val = if let Some(coef) = body.strip_suffix("r5") {
        let coef = coef.trim().trim_end_matches('*').trim();
        let b = if coef.is_empty() {
            Rat::one()
        } else {
            coef.parse::<Rat>().map_err(|_| bad())?
        };
        Qs5::new(Rat::zero(), b)
    } else {
        Qs5::from_rat(body.parse::<Rat>().map_err(|_| bad())?)
    };
    Ok(if neg { -val } else { val })
}

impl FromStr for Qs5 {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Qs5, ScalarError> {
        // split on top-level + / - that follow a term (not a leading sign)
        let bytes: Vec<char> = s.chars().collect();
        let mut terms = Vec::new();
        let mut start = 0;
        let mut seen_body = false;
        for (i, &ch) in bytes.iter().enumerate() {
            if (ch == '+' || ch == '-') && seen_body {
                let prev = bytes[..i].iter().rev().find(|c| !c.is_whitespace());
                if prev != Some(&'/') && prev != Some(&'*') {
                    terms.push(bytes[start..i].iter().collect::<String>());
                    start = i;
                    seen_body = false;
                    continue;
                }
            }
            if ch.is_ascii_alphanumeric() {
                seen_body = true;
            }
        }
        terms.push(bytes[start..].iter().collect::<String>());
        let mut acc = Qs5::zero();
        for t in &terms {
            acc = &acc + &parse_term(t, s)?;
        }
        Ok(acc)
    }
}

impl<'a> Add<&'a Qs5> for &'a Qs5 {
    type Output = Qs5;
    fn add(self, o: &'a Qs5) -> Qs5 {
        Qs5 {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl<'a> Sub<&'a Qs5> for &'a Qs5 {
    type Output = Qs5;
    fn sub(self, o: &'a Qs5) -> Qs5 {
        Qs5 {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl<'a> Mul<&'a Qs5> for &'a Qs5 {
    type Output = Qs5;
    fn mul(self, o: &'a Qs5) -> Qs5 {
        if self.b.is_zero() && o.b.is_zero() {
            return Qs5::from_rat(&self.a * &o.a);
        }
        let five = Rat::from_int(5);
        Qs5 {
            a: &(&self.a * &o.a) + &(&five * &(&self.b * &o.b)),
            b: &(&self.a * &o.b) + &(&self.b * &o.a),
        }
    }
}

impl<'a> Div<&'a Qs5> for &'a Qs5 {
    type Output = Qs5;
    /// Panics on a zero divisor; use [`Qs5::checked_div`] for a `Result`.
    fn div(self, o: &'a Qs5) -> Qs5 {
        self.checked_div(o).expect("division by zero in Q(sqrt5)")
    }
}

macro_rules! qs5_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Qs5> for Qs5 {
            type Output = Qs5;
            fn $m(self, o: Qs5) -> Qs5 {
                $tr::$m(&self, &o)
            }
        }
        impl<'a> $tr<&'a Qs5> for Qs5 {
            type Output = Qs5;
            fn $m(self, o: &'a Qs5) -> Qs5 {
                $tr::$m(&self, o)
            }
        }
    };
}

qs5_owned!(Add, add);
qs5_owned!(Sub, sub);
qs5_owned!(Mul, mul);
qs5_owned!(Div, div);

impl Neg for Qs5 {
    type Output = Qs5;
    fn neg(self) -> Qs5 {
        Qs5 {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl<'a> Neg for &'a Qs5 {
    type Output = Qs5;
    fn neg(self) -> Qs5 {
        Qs5 {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl AddAssign<&Qs5> for Qs5 {
    fn add_assign(&mut self, o: &Qs5) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&Qs5> for Qs5 {
    fn sub_assign(&mut self, o: &Qs5) {
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

/// Minimal field interface shared by the exact and modular linear algebra.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_int(v: i64) -> Self;
    fn add_assign(&mut self, o: &Self) {
        *self = Field::add(self, o);
    }
    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let p = Field::mul(a, b);
        Field::add_assign(self, &p);
    }
    /// A faster product for this scalar type, if one exists.
    fn mat_mul_fast(_a: &Mat<Self>, _b: &Mat<Self>) -> Option<Mat<Self>> {
        None
    }
    /// A faster null space routine, same output contract as
    /// [`crate::linalg::kernel_basis`].
    fn kernel_fast(_m: &Mat<Self>) -> Option<(Mat<Self>, Vec<usize>)> {
        None
    }
}

impl Field for Qs5 {
    fn zero() -> Self {
        Qs5::zero()
    }
    fn from_int(v: i64) -> Self {
        Qs5::from_int(v)
    }
    fn one() -> Self {
        Qs5::one()
    }
    fn is_zero(&self) -> bool {
        Qs5::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mat_mul_fast(a: &Mat<Qs5>, b: &Mat<Qs5>) -> Option<Mat<Qs5>> {
        if a.rows * a.cols * b.cols >= 4096 {
            Some(crate::linalg::mul_integral(a, b))
        } else {
            None
        }
    }
    fn kernel_fast(m: &Mat<Qs5>) -> Option<(Mat<Qs5>, Vec<usize>)> {
        Some(crate::linalg::kernel_fraction_free(m))
    }
    fn inv(&self) -> Option<Self> {
        Qs5::inv(self).ok()
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += &(a * b);
    }
}

/// Residue modulo the prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn from_i64(v: i64) -> Self {
        let m = v.rem_euclid(P as i64) as u64;
        Fp(m)
    }

    pub fn from_big(v: &BigInt) -> Self {
        let m = v.mod_floor(&BigInt::from(P));
        Fp(m.to_u64().expect("residue fits"))
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Centered lift into `(-P/2, P/2]`.
    pub fn lift(self) -> i64 {
        if self.0 > P / 2 {
            -((P - self.0) as i64)
        } else {
            self.0 as i64
        }
    }

    /// A square root, if one exists (Tonelli–Shanks).
    pub fn sqrt(self) -> Option<Self> {
        if self.0 == 0 {
            return Some(self);
        }
        if self.pow((P - 1) / 2).0 != 1 {
            return None;
        }
        let mut q = P - 1;
        let mut s = 0;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = Fp::<P>(2);
        while z.pow((P - 1) / 2).0 == 1 {
            z = Fp(z.0 + 1);
        }
        let mut m = s;
        let mut c = z.pow(q);
        let mut t = self.pow(q);
        let mut r = self.pow((q + 1) / 2);
        while t.0 != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt.0 != 1 {
                tt = Field::mul(&tt, &tt);
                i += 1;
            }
            let b = c.pow(1u64 << (m - i - 1));
            m = i;
            c = Field::mul(&b, &b);
            t = Field::mul(&t, &c);
            r = Field::mul(&r, &b);
        }
        Some(r)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn from_int(v: i64) -> Self {
        Fp::from_i64(v)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
}

/// Primes below 2^62 in which 5 is a square, so Q(√5) embeds after
/// choosing a root.
pub const PRIME_A: u64 = 4611686018427387761;
pub const PRIME_B: u64 = 4611686018427387751;
pub const PRIME_C: u64 = 4611686018427387709;

/// Ring map Q(√5) → F_P determined by a chosen square root of 5.
#[derive(Clone, Copy, Debug)]
pub struct Embedding<const P: u64> {
    pub root5: Fp<P>,
}

impl<const P: u64> Embedding<P> {
    /// `conjugate` picks the other root, which composes with the Galois map.
    pub fn new(conjugate: bool) -> Self {
        let r = Fp::<P>::from_i64(5).sqrt().expect("5 is a square mod P");
        let r = if conjugate { Field::neg(&r) } else { r };
        Embedding { root5: r }
    }

    pub fn rat(&self, x: &Rat) -> Option<Fp<P>> {
        let d = Fp::<P>::from_big(x.denom());
        let n = Fp::<P>::from_big(x.numer());
        d.inv().map(|di| Field::mul(&n, &di))
    }

    pub fn map(&self, x: &Qs5) -> Option<Fp<P>> {
        let a = self.rat(&x.a)?;
        if x.b.is_zero() {
            return Some(a);
        }
        let b = self.rat(&x.b)?;
        Some(Field::add(&a, &Field::mul(&b, &self.root5)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_identities() {
        let phi = Qs5::phi();
        assert_eq!(&phi * &Qs5::phi_conj(), Qs5::from_int(-1));
        assert_eq!(&phi * &phi, Qs5::from_frac(3, 2, 1, 2));
        assert_eq!(Qs5::sqrt5().inv().unwrap(), Qs5::from_frac(0, 1, 1, 5));
        assert_eq!(&Qs5::sqrt5() * &Qs5::sqrt5(), Qs5::from_int(5));
    }

    #[test]
    fn galois_swaps_golden_pair() {
        assert_eq!(Qs5::phi().galois(), Qs5::phi_conj());
        assert_eq!(Qs5::from_int(7).galois(), Qs5::from_int(7));
    }

    #[test]
    fn zero_division_is_an_error() {
        assert_eq!(Qs5::zero().inv(), Err(ScalarError::DivisionByZero));
        assert_eq!(Rat::zero().inv(), Err(ScalarError::DivisionByZero));
        assert!(Rat::from_bigs(BigInt::from(1), BigInt::from(0)).is_err());
    }

    #[test]
    fn rat_canonical() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(3, -6), Rat::new(-1, 2));
        assert_eq!(Rat::new(-1, 2).denom(), &BigInt::from(2));
    }

    #[test]
    fn text_round_trip() {
        for s in ["1/2 + 1/2*r5", "-3", "r5", "-r5", "1/2 - 1/2*r5", "0", "-7/3*r5", "5/4 + 3*r5"] {
            let x: Qs5 = s.parse().unwrap();
            assert_eq!(x.to_string(), s, "render of {s}");
            assert_eq!(x.to_string().parse::<Qs5>().unwrap(), x);
        }
        assert_eq!("1/2+1/2*r5".parse::<Qs5>().unwrap(), Qs5::phi());
        assert_eq!("-1/2 + -1/2*r5".parse::<Qs5>().unwrap(), -Qs5::phi());
        assert!("1/0".parse::<Qs5>().is_err());
        assert!("x".parse::<Qs5>().is_err());
        assert!("".parse::<Rat>().is_err());
    }

    #[test]
    fn modular_embedding_is_a_ring_map() {
        let e = Embedding::<PRIME_A>::new(false);
        let x = Qs5::from_frac(3, 7, -2, 9);
        let y = Qs5::from_frac(-5, 4, 1, 3);
        let lhs = e.map(&(&x * &y)).unwrap();
        let rhs = Field::mul(&e.map(&x).unwrap(), &e.map(&y).unwrap());
        assert_eq!(lhs, rhs);
        let r = e.root5;
        assert_eq!(Field::mul(&r, &r), Fp::<PRIME_A>::from_i64(5));
        let eg = Embedding::<PRIME_A>::new(true);
        assert_eq!(eg.map(&x.galois()).unwrap(), e.map(&x).unwrap());
    }
}
