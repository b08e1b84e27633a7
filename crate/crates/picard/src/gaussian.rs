//! Exact arithmetic in the Gaussian integers Z[i] and on integral 3-vectors.
//!
//! Entries are unbounded (`BigInt`): matrix words of moderate length can
//! exceed 64-bit norms, and nothing here is allowed to round.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A Gaussian integer a + bi with unbounded integer parts.
///
/// The derived `Ord` is lexicographic on (re, im); it is the total order used
/// everywhere a canonical arrangement of values is needed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: i64, im: i64) -> Self {
        GaussInt {
            re: BigInt::from(re),
            im: BigInt::from(im),
        }
    }

    pub fn from_bigints(re: BigInt, im: BigInt) -> Self {
        GaussInt { re, im }
    }

    pub fn zero() -> Self {
        GaussInt::new(0, 0)
    }

    pub fn one() -> Self {
        GaussInt::new(1, 0)
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Units of Z[i] are exactly the elements of norm 1: {1, i, -1, -i}.
    pub fn is_unit(&self) -> bool {
        self.norm() == BigInt::from(1)
    }

    pub fn conj(&self) -> Self {
        GaussInt {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// norm(a + bi) = a^2 + b^2; multiplicative, and 0 only at 0.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplication by i: (a + bi) * i = -b + ai.
    pub fn mul_i(&self) -> Self {
        GaussInt {
            re: -self.im.clone(),
            im: self.re.clone(),
        }
    }

    /// The four unit multiples v, iv, -v, -iv in that order.
    pub fn unit_multiples(&self) -> [GaussInt; 4] {
        let a = self.clone();
        let b = self.mul_i();
        let c = -&a;
        let d = -&b;
        [a, b, c, d]
    }

    /// Exact division: Some(self / d) when d divides self in Z[i].
    pub fn exact_div(&self, d: &GaussInt) -> Option<GaussInt> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        let num = self * &d.conj();
        if (&num.re % &n).is_zero() && (&num.im % &n).is_zero() {
            Some(GaussInt {
                re: num.re / &n,
                im: num.im / &n,
            })
        } else {
            None
        }
    }

    /// Euclidean division by the nearest Gaussian integer: self = q*d + r with
    /// norm(r) <= norm(d)/2. Quotient coordinates are rounded half-to-even.
    pub fn div_rem_nearest(&self, d: &GaussInt) -> (GaussInt, GaussInt) {
        debug_assert!(!d.is_zero());
        let n = d.norm();
        let num = self * &d.conj();
        let q = GaussInt {
            re: round_half_even_div(&num.re, &n),
            im: round_half_even_div(&num.im, &n),
        };
        let r = self - &(&q * d);
        (q, r)
    }

    /// A greatest common divisor (unique up to unit), by the Euclidean
    /// algorithm with nearest-integer rounding; remainder norms strictly
    /// decrease. gcd(a, 0) = a; gcd(0, 0) is rejected.
    pub fn gcd(&self, other: &GaussInt) -> Result<GaussInt> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdZero);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem_nearest(&b);
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// True when `other` is an associate (unit multiple) of `self`.
    pub fn is_associate(&self, other: &GaussInt) -> bool {
        self.unit_multiples().iter().any(|u| u == other)
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::INFINITY),
            self.im.to_f64().unwrap_or(f64::INFINITY),
        )
    }

    /// Parses the text format "a", "bi", "a+bi", "a-bi" (with "i" for 1i).
    pub fn parse(s: &str) -> Result<GaussInt> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::parse(s, 0, "empty Gaussian integer"));
        }
        let bytes = t.as_bytes();
        let mut pos = 0;

        // first signed term
        let first = parse_term(t, &mut pos)?;
        if pos == t.len() {
            return Ok(match first {
                Term::Real(v) => GaussInt::from_bigints(v, BigInt::zero()),
                Term::Imag(v) => GaussInt::from_bigints(BigInt::zero(), v),
            });
        }
        // second term must start with an explicit sign
        if bytes[pos] != b'+' && bytes[pos] != b'-' {
            return Err(Error::parse(t, pos, "expected '+' or '-'"));
        }
        let second = parse_term(t, &mut pos)?;
        if pos != t.len() {
            return Err(Error::parse(t, pos, "trailing characters"));
        }
        match (first, second) {
            (Term::Real(re), Term::Imag(im)) => Ok(GaussInt::from_bigints(re, im)),
            (Term::Imag(_), _) => Err(Error::parse(t, 0, "imaginary part must come second")),
            (Term::Real(_), Term::Real(_)) => {
                Err(Error::parse(t, pos, "two real terms; expected bi"))
            }
        }
    }
}

enum Term {
    Real(BigInt),
    Imag(BigInt),
}

fn parse_term(s: &str, pos: &mut usize) -> Result<Term> {
    let bytes = s.as_bytes();
    let start = *pos;
    let mut p = *pos;
    let neg = match bytes.get(p) {
        Some(b'-') => {
            p += 1;
            true
        }
        Some(b'+') => {
            p += 1;
            false
        }
        _ => false,
    };
    let digits_start = p;
    while p < bytes.len() && bytes[p].is_ascii_digit() {
        p += 1;
    }
    let has_digits = p > digits_start;
    let is_imag = p < bytes.len() && bytes[p] == b'i';
    if !has_digits && !is_imag {
        return Err(Error::parse(s, start, "expected digits or 'i'"));
    }
    let mut v: BigInt = if has_digits {
        s[digits_start..p].parse().expect("digits")
    } else {
        BigInt::from(1) // bare "i" or "-i"
    };
    if neg {
        v = -v;
    }
    if is_imag {
        p += 1;
        *pos = p;
        Ok(Term::Imag(v))
    } else {
        *pos = p;
        Ok(Term::Real(v))
    }
}

/// round(n / d) with ties to even, for d > 0.
fn round_half_even_div(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(d.is_positive());
    // floor division first
    let mut q = n / d;
    let mut r = n - &q * d;
    if r < BigInt::zero() {
        q -= 1;
        r += d;
    }
    let twice: BigInt = &r * 2;
    match twice.cmp(d) {
        std::cmp::Ordering::Greater => q += 1,
        std::cmp::Ordering::Equal => {
            // tie: round to the even quotient
            if (&q % 2) != BigInt::zero() {
                q += 1;
            }
        }
        std::cmp::Ordering::Less => {}
    }
    q
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = BigInt::from(1);
        let m_one = BigInt::from(-1);
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let imag = |f: &mut fmt::Formatter<'_>, im: &BigInt, leading: bool| -> fmt::Result {
            if *im == one {
                write!(f, "{}i", if leading { "" } else { "+" })
            } else if *im == m_one {
                write!(f, "-i")
            } else if im.is_positive() && !leading {
                write!(f, "+{}i", im)
            } else {
                write!(f, "{}i", im)
            }
        };
        if self.re.is_zero() {
            imag(f, &self.im, true)
        } else {
            write!(f, "{}", self.re)?;
            imag(f, &self.im, false)
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a, 'b> $trait<&'b GaussInt> for &'a GaussInt {
            type Output = GaussInt;
            fn $method(self, rhs: &'b GaussInt) -> GaussInt {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait<GaussInt> for GaussInt {
            type Output = GaussInt;
            fn $method(self, rhs: GaussInt) -> GaussInt {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussInt {
    re: &a.re + &b.re,
    im: &a.im + &b.im,
});
forward_binop!(Sub, sub, |a, b| GaussInt {
    re: &a.re - &b.re,
    im: &a.im - &b.im,
});
forward_binop!(Mul, mul, |a, b| GaussInt {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});

impl Neg for &GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}
impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        -&self
    }
}

/// A column vector (n, p, q)^t over Z[i]. Exact; no rounding ever occurs here.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GaussVec3 {
    pub n: GaussInt,
    pub p: GaussInt,
    pub q: GaussInt,
}

impl GaussVec3 {
    pub fn new(n: GaussInt, p: GaussInt, q: GaussInt) -> Self {
        GaussVec3 { n, p, q }
    }

    pub fn from_i64(n: (i64, i64), p: (i64, i64), q: (i64, i64)) -> Self {
        GaussVec3 {
            n: GaussInt::new(n.0, n.1),
            p: GaussInt::new(p.0, p.1),
            q: GaussInt::new(q.0, q.1),
        }
    }

    pub fn entries(&self) -> [&GaussInt; 3] {
        [&self.n, &self.p, &self.q]
    }

    pub fn is_zero(&self) -> bool {
        self.n.is_zero() && self.p.is_zero() && self.q.is_zero()
    }

    /// gcd of the three entries; rejects the zero vector.
    pub fn content(&self) -> Result<GaussInt> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let mut g = GaussInt::zero();
        for e in self.entries() {
            if e.is_zero() {
                continue;
            }
            g = if g.is_zero() { e.clone() } else { g.gcd(e)? };
        }
        Ok(g)
    }

    /// True iff (n, p, q) generate Z[i] as an ideal, i.e. their gcd is a unit.
    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.content()?.is_unit())
    }

    /// The unique representative of {v, iv, -v, -iv} that is lexicographically
    /// greatest under entrywise (re, im) comparison.
    ///
    /// Equivalent description: the first nonzero entry gets re > 0 (or re = 0
    /// and im > 0), and the remaining tie between v and -iv is broken by the
    /// larger subsequent entries. Constant on unit orbits and idempotent.
    pub fn canonical_unit_rep(&self) -> Result<GaussVec3> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let mut best: Option<GaussVec3> = None;
        let mut v = self.clone();
        for _ in 0..4 {
            v = GaussVec3 {
                n: v.n.mul_i(),
                p: v.p.mul_i(),
                q: v.q.mul_i(),
            };
            if best.as_ref().is_none_or(|b| v > *b) {
                best = Some(v.clone());
            }
        }
        Ok(best.unwrap())
    }

    pub fn to_complex(&self) -> [Complex64; 3] {
        [
            self.n.to_complex64(),
            self.p.to_complex64(),
            self.q.to_complex64(),
        ]
    }

    /// Parses "n,p,q" with each entry in Gaussian-integer text form.
    pub fn parse(s: &str) -> Result<GaussVec3> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::parse(s, 0, "expected three comma-separated entries"));
        }
        Ok(GaussVec3 {
            n: GaussInt::parse(parts[0])?,
            p: GaussInt::parse(parts[1])?,
            q: GaussInt::parse(parts[2])?,
        })
    }
}

impl fmt::Display for GaussVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.n, self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    #[test]
    fn ring_basics() {
        assert_eq!(g(1, 1).norm(), BigInt::from(2));
        assert_eq!(g(2, -3).conj(), g(2, 3));
        assert_eq!(&g(1, 1) * &g(1, -1), g(2, 0));
    }

    #[test]
    fn gcd_examples() {
        // 2 = -i (1+i)^2
        let d = g(1, 1).gcd(&g(2, 0)).unwrap();
        assert!(d.is_associate(&g(1, 1)));
        assert_eq!(g(3, 0).gcd(&g(0, 0)).unwrap(), g(3, 0));
        // 5 = (1+2i)(1-2i)
        let d = g(5, 0).gcd(&g(1, 2)).unwrap();
        assert!(d.is_associate(&g(1, 2)));
        assert!(matches!(g(0, 0).gcd(&g(0, 0)), Err(Error::GcdZero)));
    }

    #[test]
    fn gcd_divides_both() {
        let a = g(7, 3);
        let b = g(4, -9);
        let d = a.gcd(&b).unwrap();
        assert!(a.exact_div(&d).is_some());
        assert!(b.exact_div(&d).is_some());
    }

    #[test]
    fn primitivity() {
        assert!(GaussVec3::from_i64((1, 0), (0, 0), (0, 0))
            .is_primitive()
            .unwrap());
        // 1-i = -i(1+i): both entries divisible by 1+i
        assert!(!GaussVec3::from_i64((1, 1), (0, 0), (1, -1))
            .is_primitive()
            .unwrap());
        assert!(GaussVec3::from_i64((2, 0), (1, 1), (0, 1))
            .is_primitive()
            .unwrap());
    }

    #[test]
    fn canonical_rep_spec_examples() {
        let c = |v: GaussVec3| v.canonical_unit_rep().unwrap();
        assert_eq!(
            c(GaussVec3::from_i64((-1, 0), (0, 0), (0, 0))),
            GaussVec3::from_i64((1, 0), (0, 0), (0, 0))
        );
        assert_eq!(
            c(GaussVec3::from_i64((0, 0), (0, 0), (0, 1))),
            GaussVec3::from_i64((0, 0), (0, 0), (1, 0))
        );
        assert_eq!(
            c(GaussVec3::from_i64((0, 1), (0, 0), (1, 0))),
            GaussVec3::from_i64((1, 0), (0, 0), (0, -1))
        );
    }

    #[test]
    fn canonical_rep_constant_on_orbits() {
        let v = GaussVec3::from_i64((2, 1), (0, -3), (1, 1));
        let c = v.canonical_unit_rep().unwrap();
        let mut u = v;
        for _ in 0..4 {
            u = GaussVec3 {
                n: u.n.mul_i(),
                p: u.p.mul_i(),
                q: u.q.mul_i(),
            };
            assert_eq!(u.canonical_unit_rep().unwrap(), c);
        }
        assert_eq!(c.canonical_unit_rep().unwrap(), c);
    }

    #[test]
    fn parse_roundtrip() {
        for s in [
            "0", "1", "-1", "i", "-i", "2i", "-3i", "1+i", "1-i", "-1+2i", "12-34i",
        ] {
            let v = GaussInt::parse(s).unwrap();
            assert_eq!(v.to_string(), s, "round-trip of {s}");
        }
        assert!(GaussInt::parse("").is_err());
        assert!(GaussInt::parse("1+").is_err());
        assert!(GaussInt::parse("i+1").is_err());
        assert!(GaussInt::parse("1x").is_err());
    }

    #[test]
    fn nearest_division_reduces_norm() {
        let a = g(29, -17);
        let b = g(3, 4);
        let (q, r) = a.div_rem_nearest(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.norm() <= b.norm() / 2);
    }

    #[test]
    fn half_even_rounding() {
        // 1/2 rounds to 0, 3/2 rounds to 2
        assert_eq!(
            round_half_even_div(&BigInt::from(1), &BigInt::from(2)),
            BigInt::from(0)
        );
        assert_eq!(
            round_half_even_div(&BigInt::from(3), &BigInt::from(2)),
            BigInt::from(2)
        );
        assert_eq!(
            round_half_even_div(&BigInt::from(-1), &BigInt::from(2)),
            BigInt::from(0)
        );
        assert_eq!(
            round_half_even_div(&BigInt::from(-3), &BigInt::from(2)),
            BigInt::from(-2)
        );
    }
}
