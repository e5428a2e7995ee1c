//! Exact coefficient field.
//!
//! A [`Scalar`] is an element of `Q(√m)(i)`: a rational base layer, an
//! optional real quadratic layer `a + b·√m` and an optional imaginary layer
//! over it. The radicand `m` is not global state; each value carries it and
//! combining two values with different radicals panics. Values that never
//! touch a radical or `i` stay on a single-rational fast path.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand {0} is not a squarefree integer greater than 1")]
    BadRadicand(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("values over sqrt({0}) and sqrt({1}) cannot be combined")]
    MixedRadicals(u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Ext {
    /// Radicand; 0 when both radical coefficients vanish.
    m: u32,
    rad: BigRational,
    im: BigRational,
    im_rad: BigRational,
}

/// Exact element of `Q(√m)(i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    rat: BigRational,
    ext: Option<Box<Ext>>,
}

/// Four rational coordinates `a + b√m + (c + d√m) i`.
#[derive(Clone)]
struct Parts {
    m: u32,
    c: [BigRational; 4],
}

fn join_radicand(m1: u32, m2: u32) -> u32 {
    match (m1, m2) {
        (0, m) | (m, 0) => m,
        (a, b) if a == b => a,
        (a, b) => panic!("{}", ScalarError::MixedRadicals(a, b)),
    }
}

fn is_squarefree(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= m {
        if m.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    let n = int_sqrt(q.numer())?;
    let d = int_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}

impl Parts {
    fn into_scalar(self) -> Scalar {
        let [a, b, c, d] = self.c;
        if b.is_zero() && c.is_zero() && d.is_zero() {
            return Scalar { rat: a, ext: None };
        }
        let m = if b.is_zero() && d.is_zero() { 0 } else { self.m };
        Scalar {
            rat: a,
            ext: Some(Box::new(Ext {
                m,
                rad: b,
                im: c,
                im_rad: d,
            })),
        }
    }
}

/// `(a + b√m)(c + d√m)` on real quadratic pairs.
fn quad_mul(m: u32, x: (&BigRational, &BigRational), y: (&BigRational, &BigRational)) -> (BigRational, BigRational) {
    let mut re = BigRational::zero();
    let mut rad = BigRational::zero();
    if !x.0.is_zero() && !y.0.is_zero() {
        re += x.0 * y.0;
    }
    if !x.1.is_zero() && !y.1.is_zero() {
        re += x.1 * y.1 * BigRational::from_integer(BigInt::from(m));
    }
    if !x.0.is_zero() && !y.1.is_zero() {
        rad += x.0 * y.1;
    }
    if !x.1.is_zero() && !y.0.is_zero() {
        rad += x.1 * y.0;
    }
    (re, rad)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { rat: BigRational::zero(), ext: None }
    }

    pub fn one() -> Self {
        Scalar { rat: BigRational::one(), ext: None }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { rat: BigRational::from_integer(BigInt::from(n)), ext: None }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Scalar { rat: BigRational::new(BigInt::from(n), BigInt::from(d)), ext: None }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar { rat: q, ext: None }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Parts {
            m: 0,
            c: [BigRational::zero(), BigRational::zero(), BigRational::one(), BigRational::zero()],
        }
        .into_scalar()
    }

    /// `√m` for a squarefree `m > 1`.
    pub fn sqrt_of(m: u64) -> Result<Self, ScalarError> {
        if !is_squarefree(m) || m > u32::MAX as u64 {
            return Err(ScalarError::BadRadicand(m));
        }
        Ok(Parts {
            m: m as u32,
            c: [BigRational::zero(), BigRational::one(), BigRational::zero(), BigRational::zero()],
        }
        .into_scalar())
    }

    /// Square root of a non-negative rational inside `Q(√m)`, if it exists there.
    /// With `radicand == None` only perfect squares succeed.
    pub fn sqrt_rational(q: &BigRational, radicand: Option<u32>) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        if let Some(r) = rational_sqrt(q) {
            return Some(Scalar::from_rational(r));
        }
        let m = radicand?;
        let mq = BigRational::from_integer(BigInt::from(m));
        let r = rational_sqrt(&(q / &mq))?;
        Some(Scalar::from_rational(r) * Scalar::sqrt_of(m as u64).ok()?)
    }

    fn parts(&self) -> Parts {
        match &self.ext {
            None => Parts {
                m: 0,
                c: [self.rat.clone(), BigRational::zero(), BigRational::zero(), BigRational::zero()],
            },
            Some(e) => Parts {
                m: e.m,
                c: [self.rat.clone(), e.rad.clone(), e.im.clone(), e.im_rad.clone()],
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ext.is_none() && self.rat.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.ext.is_none() && self.rat.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.ext.is_none()
    }

    pub fn to_rational(&self) -> Option<&BigRational> {
        self.ext.is_none().then_some(&self.rat)
    }

    /// True when the imaginary layer vanishes.
    pub fn is_real(&self) -> bool {
        match &self.ext {
            None => true,
            Some(e) => e.im.is_zero() && e.im_rad.is_zero(),
        }
    }

    /// Radicand in use, if any radical coefficient is nonzero.
    pub fn radicand(&self) -> Option<u32> {
        self.ext.as_ref().and_then(|e| (e.m != 0).then_some(e.m))
    }

    /// Sign of a real value (via the positive embedding of `√m`).
    pub fn real_cmp_zero(&self) -> Option<Ordering> {
        if !self.is_real() {
            return None;
        }
        let (a, b, m) = match &self.ext {
            None => return Some(self.rat.cmp(&BigRational::zero())),
            Some(e) => (&self.rat, &e.rad, e.m),
        };
        let sa = a.cmp(&BigRational::zero());
        let sb = b.cmp(&BigRational::zero());
        if sa == sb || sb == Ordering::Equal {
            return Some(sa);
        }
        if sa == Ordering::Equal {
            return Some(sb);
        }
        // opposite signs: compare a² against b²m
        let a2 = a * a;
        let b2m = b * b * BigRational::from_integer(BigInt::from(m));
        Some(match a2.cmp(&b2m) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        })
    }

    pub fn conj(&self) -> Self {
        let mut p = self.parts();
        p.c[2] = -p.c[2].clone();
        p.c[3] = -p.c[3].clone();
        p.into_scalar()
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.ext.is_none() {
            return Ok(Scalar { rat: self.rat.recip(), ext: None });
        }
        // 1/z = conj(z) / |z|², then invert the real quadratic |z|².
        let p = self.parts();
        let m = p.m;
        let (u2, u2r) = quad_mul(m, (&p.c[0], &p.c[1]), (&p.c[0], &p.c[1]));
        let (v2, v2r) = quad_mul(m, (&p.c[2], &p.c[3]), (&p.c[2], &p.c[3]));
        let (na, nb) = (u2 + v2, u2r + v2r);
        // (na + nb√m)^-1 = (na − nb√m)/(na² − nb²m)
        let den = &na * &na - &nb * &nb * BigRational::from_integer(BigInt::from(m));
        let inv_norm = Parts {
            m,
            c: [&na / &den, -(&nb / &den), BigRational::zero(), BigRational::zero()],
        }
        .into_scalar();
        Ok(self.conj() * inv_norm)
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `(-1)^n` as a scalar.
    pub fn sign_pow(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Scalar::one()
        } else {
            Scalar::from_int(-1)
        }
    }
}

/// Rising factorial `(a)_n = a(a+1)···(a+n−1)`, `(a)_0 = 1`.
pub fn pochhammer(a: &Scalar, n: usize) -> Scalar {
    let mut acc = Scalar::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc = &acc * &term;
        term = &term + &Scalar::one();
    }
    acc
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.ext.is_none() && rhs.ext.is_none() {
            return Scalar { rat: &self.rat + &rhs.rat, ext: None };
        }
        let (a, b) = (self.parts(), rhs.parts());
        let m = join_radicand(a.m, b.m);
        let [a0, a1, a2, a3] = a.c;
        let [b0, b1, b2, b3] = b.c;
        Parts { m, c: [a0 + b0, a1 + b1, a2 + b2, a3 + b3] }.into_scalar()
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if self.ext.is_none() && rhs.ext.is_none() {
            return Scalar { rat: &self.rat - &rhs.rat, ext: None };
        }
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.ext.is_none() && rhs.ext.is_none() {
            if self.rat.is_zero() || rhs.rat.is_zero() {
                return Scalar::zero();
            }
            return Scalar { rat: &self.rat * &rhs.rat, ext: None };
        }
        let (x, y) = (self.parts(), rhs.parts());
        let m = join_radicand(x.m, y.m);
        // (u + v i)(w + z i) = (uw − vz) + (uz + vw) i over quadratic u, v, w, z
        let uw = quad_mul(m, (&x.c[0], &x.c[1]), (&y.c[0], &y.c[1]));
        let vz = quad_mul(m, (&x.c[2], &x.c[3]), (&y.c[2], &y.c[3]));
        let uz = quad_mul(m, (&x.c[0], &x.c[1]), (&y.c[2], &y.c[3]));
        let vw = quad_mul(m, (&x.c[2], &x.c[3]), (&y.c[0], &y.c[1]));
        Parts {
            m,
            c: [uw.0 - vz.0, uw.1 - vz.1, uz.0 + vw.0, uz.1 + vw.1],
        }
        .into_scalar()
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            rat: -&self.rat,
            ext: self.ext.as_ref().map(|e| {
                Box::new(Ext {
                    m: e.m,
                    rad: -&e.rad,
                    im: -&e.im,
                    im_rad: -&e.im_rad,
                })
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar { (&self).$f(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar { self.$f(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if self.ext.is_none() && rhs.ext.is_none() {
            self.rat += &rhs.rat;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if self.ext.is_none() && rhs.ext.is_none() {
            self.rat -= &rhs.rat;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    /// Terms in the order rational, `*sqrt(m)`, `*i`, `*sqrt(m)*i`, e.g.
    /// `1/2-3*sqrt(2)+1/4*i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.parts();
        let suffixes = [
            String::new(),
            format!("*sqrt({})", p.m),
            "*i".to_string(),
            format!("*sqrt({})*i", p.m),
        ];
        let mut out = String::new();
        for (coef, suffix) in p.c.iter().zip(suffixes.iter()) {
            if coef.is_zero() {
                continue;
            }
            let body = fmt_rational(&coef.abs());
            if out.is_empty() {
                if coef.is_negative() {
                    out.push('-');
                }
            } else {
                out.push(if coef.is_negative() { '-' } else { '+' });
            }
            out.push_str(&body);
            out.push_str(suffix);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl Scalar {
    /// LaTeX form, e.g. `-\frac{1}{2} + 3\sqrt{2}i`.
    pub fn to_latex(&self) -> String {
        let p = self.parts();
        let suffixes = [String::new(), format!("\\sqrt{{{}}}", p.m), "i".to_string(), format!("\\sqrt{{{}}}i", p.m)];
        let mut out = String::new();
        for (coef, suffix) in p.c.iter().zip(suffixes.iter()) {
            if coef.is_zero() {
                continue;
            }
            let a = coef.abs();
            let body = match (a.denom().is_one(), a.is_one() && !suffix.is_empty()) {
                (_, true) => String::new(),
                (true, false) => a.numer().to_string(),
                (false, false) => format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom()),
            };
            if out.is_empty() {
                if coef.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if coef.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
            out.push_str(suffix);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Parse one signless term such as `3/4`, `2*sqrt(2)`, `sqrt(3)*i`, `i`.
fn parse_term(term: &str) -> Option<Scalar> {
    let mut coef = Scalar::one();
    let mut saw_number = false;
    for factor in term.split('*') {
        let factor = factor.trim();
        if factor == "i" {
            coef = coef * Scalar::i();
        } else if let Some(inner) = factor.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
            let m: u64 = inner.trim().parse().ok()?;
            let root = Scalar::sqrt_of(m).ok()?;
            if coef.radicand().is_some() {
                return None;
            }
            coef = coef * root;
        } else {
            if saw_number {
                return None;
            }
            saw_number = true;
            coef = coef * Scalar::from_rational(parse_rational(factor)?);
        }
    }
    Some(coef)
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse(s.to_string());
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(err());
        }
        // split at top-level signs (never inside a sqrt(...) group)
        let mut terms = Vec::new();
        let mut depth = 0i32;
        let mut start = 0usize;
        let bytes = text.as_bytes();
        for (idx, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && idx > 0 && bytes[idx - 1] != b'/' => {
                    terms.push(&text[start..idx]);
                    start = idx;
                }
                _ => {}
            }
        }
        terms.push(&text[start..]);
        let mut total = Scalar::zero();
        for t in terms {
            let (neg, body) = match t.as_bytes().first() {
                Some(b'-') => (true, &t[1..]),
                Some(b'+') => (false, &t[1..]),
                _ => (false, t),
            };
            if body.is_empty() {
                return Err(err());
            }
            let mut v = parse_term(body).ok_or_else(err)?;
            if neg {
                v = -v;
            }
            if let (Some(a), Some(b)) = (total.radicand(), v.radicand()) {
                if a != b {
                    return Err(ScalarError::MixedRadicals(a, b));
                }
            }
            total += &v;
        }
        Ok(total)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn latex_forms() {
        assert_eq!(Scalar::zero().to_latex(), "0");
        assert_eq!(q(-3, 4).to_latex(), "-\\frac{3}{4}");
        assert_eq!(Scalar::i().to_latex(), "i");
        let r2 = Scalar::sqrt_of(2).unwrap();
        assert_eq!((&q(1, 2) + &(&r2 * &Scalar::from_int(-3))).to_latex(), "\\frac{1}{2} - 3\\sqrt{2}");
        assert_eq!((&r2 * &Scalar::i()).to_latex(), "\\sqrt{2}i");
    }

    #[test]
    fn pochhammer_values() {
        assert!(pochhammer(&q(-7, 3), 0).is_one());
        assert_eq!(pochhammer(&Scalar::from_int(3), 2), Scalar::from_int(12));
        assert_eq!(pochhammer(&q(1, 2), 3), q(15, 8));
    }

    #[test]
    fn canonical_rationals() {
        assert_eq!(q(2, 4), q(-1, -2));
        assert_eq!(q(6, -4).to_string(), "-3/2");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn quadratic_and_imaginary_layers() {
        let r2 = Scalar::sqrt_of(2).unwrap();
        assert_eq!(&r2 * &r2, Scalar::from_int(2));
        let i = Scalar::i();
        assert_eq!(&i * &i, Scalar::from_int(-1));
        let z = q(1, 2) + &r2 * q(3, 4) + &i * (q(-1, 3) + &r2);
        let back = &z * &z.inv().unwrap();
        assert!(back.is_one());
        assert_eq!(Scalar::sqrt_of(4), Err(ScalarError::BadRadicand(4)));
    }

    #[test]
    #[should_panic]
    fn mixed_radicals_rejected() {
        let _ = Scalar::sqrt_of(2).unwrap() + Scalar::sqrt_of(3).unwrap();
    }

    #[test]
    fn sqrt_of_rationals() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(Scalar::sqrt_rational(&half, None), None);
        let s = Scalar::sqrt_rational(&half, Some(2)).unwrap();
        assert_eq!(&s * &s, q(1, 2));
        let nine_fourths = BigRational::new(9.into(), 4.into());
        assert_eq!(Scalar::sqrt_rational(&nine_fourths, None), Some(q(3, 2)));
    }

    #[test]
    fn real_sign() {
        let r2 = Scalar::sqrt_of(2).unwrap();
        assert_eq!((Scalar::from_int(1) - &r2).real_cmp_zero(), Some(Ordering::Less));
        assert_eq!((q(3, 2) - &r2).real_cmp_zero(), Some(Ordering::Greater));
        assert_eq!(Scalar::i().real_cmp_zero(), None);
    }

    #[test]
    fn text_round_trip() {
        for text in ["0", "-3/2", "1/2+3/4*sqrt(2)", "-sqrt(2)", "1/4*i", "2-sqrt(3)+5*i-1/7*sqrt(3)*i"] {
            let v: Scalar = text.parse().unwrap();
            let again: Scalar = v.to_string().parse().unwrap();
            assert_eq!(v, again, "{text}");
        }
        assert_eq!("1/2+3/4*sqrt(2)".parse::<Scalar>().unwrap().to_string(), "1/2+3/4*sqrt(2)");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("sqrt(2)+sqrt(3)".parse::<Scalar>().is_err());
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-20i64..20, 1i64..9, -5i64..5, 1i64..5, -3i64..3, -3i64..3).prop_map(|(a, b, c, d, e, f)| {
            let r2 = Scalar::sqrt_of(2).unwrap();
            q(a, b) + &r2 * q(c, d) + Scalar::i() * (Scalar::from_int(e) + &r2 * Scalar::from_int(f))
        })
    }

    proptest! {
        #[test]
        fn pochhammer_splits(a in -30i64..30, den in 1i64..7, m in 0usize..=8, n in 0usize..=8) {
            let a = q(a, den);
            let lhs = pochhammer(&a, m + n);
            let rhs = pochhammer(&a, m) * pochhammer(&(&a + &Scalar::from_int(m as i64)), n);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn field_axioms(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
            prop_assert_eq!((&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!((&x + &y) * &z, &x * &z + &y * &z);
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
            prop_assert!((&x - &x).is_zero());
        }
    }
}
