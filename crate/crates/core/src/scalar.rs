//! Exact arithmetic in the golden ring Z[tau] and its fraction field.
//!
//! `tau` is the golden ratio (1 + sqrt(5))/2, so tau^2 = tau + 1. Every
//! element is stored as `a + b*tau` with 64-bit integer components; all
//! operations are overflow-checked and panic rather than wrap. Ordinary
//! integers embed as `b = 0`, which is how the crystallographic types get
//! away with using the same scalar type as H3, H4 and I2(5).
//!
//! The derived `Ord` is the structural order on `(a, b)` used for canonical
//! sorting. It is *not* the order of the real embedding; use [`GoldenInt::sign`]
//! or [`GoldenInt::cmp_real`] for that.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GoldenInt {
    pub a: i64,
    pub b: i64,
}

pub const ZERO: GoldenInt = GoldenInt { a: 0, b: 0 };
pub const ONE: GoldenInt = GoldenInt { a: 1, b: 0 };
pub const TAU: GoldenInt = GoldenInt { a: 0, b: 1 };

#[inline]
fn ck_add(x: i64, y: i64) -> i64 {
    x.checked_add(y).expect("golden arithmetic overflow (add)")
}

#[inline]
fn ck_sub(x: i64, y: i64) -> i64 {
    x.checked_sub(y).expect("golden arithmetic overflow (sub)")
}

#[inline]
fn ck_mul(x: i64, y: i64) -> i64 {
    x.checked_mul(y).expect("golden arithmetic overflow (mul)")
}

impl GoldenInt {
    #[inline]
    pub const fn new(a: i64, b: i64) -> Self {
        GoldenInt { a, b }
    }

    #[inline]
    pub const fn from_int(n: i64) -> Self {
        GoldenInt { a: n, b: 0 }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// True when the element lies in Z, i.e. has no tau component.
    #[inline]
    pub fn is_int(self) -> bool {
        self.b == 0
    }

    /// Drops the tau component: theta(a + b*tau) = a. Z-linear, and the
    /// identity on Z.
    #[inline]
    pub fn theta(self) -> i64 {
        self.a
    }

    /// Galois conjugate, sending tau to 1 - tau.
    #[inline]
    pub fn conj(self) -> Self {
        GoldenInt::new(ck_add(self.a, self.b), -self.b)
    }

    /// Field norm a^2 + ab - b^2 (product with the conjugate).
    pub fn norm(self) -> i64 {
        let n = (self.a as i128) * (self.a as i128) + (self.a as i128) * (self.b as i128)
            - (self.b as i128) * (self.b as i128);
        i64::try_from(n).expect("golden arithmetic overflow (norm)")
    }

    /// Sign of the real embedding a + b*(1+sqrt(5))/2, exactly.
    ///
    /// Writing 2(a + b*tau) = p + q*sqrt(5) with p = 2a + b, q = b, the sign
    /// follows from integer comparisons of p^2 against 5 q^2.
    pub fn sign(self) -> i8 {
        let p = (self.a as i128) * 2 + self.b as i128;
        let q = self.b as i128;
        if q == 0 {
            return p.signum() as i8;
        }
        if p == 0 {
            return q.signum() as i8;
        }
        if p > 0 && q > 0 {
            return 1;
        }
        if p < 0 && q < 0 {
            return -1;
        }
        // Opposite signs: |p| vs |q|*sqrt(5) decides.
        let p2 = p * p;
        let q2 = 5 * q * q;
        if p > 0 {
            match p2.cmp(&q2) {
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => unreachable!("sqrt(5) is irrational"),
            }
        } else {
            match p2.cmp(&q2) {
                std::cmp::Ordering::Greater => -1,
                std::cmp::Ordering::Less => 1,
                std::cmp::Ordering::Equal => unreachable!("sqrt(5) is irrational"),
            }
        }
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.sign() > 0
    }

    #[inline]
    pub fn is_negative(self) -> bool {
        self.sign() < 0
    }

    /// Order of the real embeddings.
    pub fn cmp_real(self, other: Self) -> std::cmp::Ordering {
        match (self - other).sign() {
            1 => std::cmp::Ordering::Greater,
            -1 => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Equal,
        }
    }

    /// Exact division by an integer; `None` unless both components divide.
    pub fn div_exact_int(self, d: i64) -> Option<Self> {
        debug_assert!(d != 0);
        if self.a % d != 0 || self.b % d != 0 {
            return None;
        }
        Some(GoldenInt::new(self.a / d, self.b / d))
    }

    /// Exact division in Z[tau]; `None` when `self` is not a multiple of `d`.
    pub fn div_exact(self, d: Self) -> Option<Self> {
        debug_assert!(!d.is_zero());
        let n = d.norm();
        (self * d.conj()).div_exact_int(n)
    }
}

impl Neg for GoldenInt {
    type Output = GoldenInt;
    #[inline]
    fn neg(self) -> GoldenInt {
        GoldenInt::new(
            self.a.checked_neg().expect("golden arithmetic overflow (neg)"),
            self.b.checked_neg().expect("golden arithmetic overflow (neg)"),
        )
    }
}

impl Add for GoldenInt {
    type Output = GoldenInt;
    #[inline]
    fn add(self, rhs: GoldenInt) -> GoldenInt {
        GoldenInt::new(ck_add(self.a, rhs.a), ck_add(self.b, rhs.b))
    }
}

impl Sub for GoldenInt {
    type Output = GoldenInt;
    #[inline]
    fn sub(self, rhs: GoldenInt) -> GoldenInt {
        GoldenInt::new(ck_sub(self.a, rhs.a), ck_sub(self.b, rhs.b))
    }
}

impl Mul for GoldenInt {
    type Output = GoldenInt;
    /// (a + b*tau)(c + d*tau) = (ac + bd) + (ad + bc + bd) tau, using
    /// tau^2 = tau + 1.
    #[inline]
    fn mul(self, rhs: GoldenInt) -> GoldenInt {
        let (a, b, c, d) = (self.a, self.b, rhs.a, rhs.b);
        let bd = ck_mul(b, d);
        GoldenInt::new(
            ck_add(ck_mul(a, c), bd),
            ck_add(ck_add(ck_mul(a, d), ck_mul(b, c)), bd),
        )
    }
}

impl Mul<i64> for GoldenInt {
    type Output = GoldenInt;
    #[inline]
    fn mul(self, rhs: i64) -> GoldenInt {
        GoldenInt::new(ck_mul(self.a, rhs), ck_mul(self.b, rhs))
    }
}

impl AddAssign for GoldenInt {
    #[inline]
    fn add_assign(&mut self, rhs: GoldenInt) {
        *self = *self + rhs;
    }
}

impl SubAssign for GoldenInt {
    #[inline]
    fn sub_assign(&mut self, rhs: GoldenInt) {
        *self = *self - rhs;
    }
}

impl MulAssign for GoldenInt {
    #[inline]
    fn mul_assign(&mut self, rhs: GoldenInt) {
        *self = *self * rhs;
    }
}

impl From<i64> for GoldenInt {
    fn from(n: i64) -> Self {
        GoldenInt::from_int(n)
    }
}

impl fmt::Debug for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "t"),
            (0, -1) => write!(f, "-t"),
            (0, b) => write!(f, "{b}t"),
            (a, 1) => write!(f, "{a}+t"),
            (a, -1) => write!(f, "{a}-t"),
            (a, b) if b > 0 => write!(f, "{a}+{b}t"),
            (a, b) => write!(f, "{a}{b}t"),
        }
    }
}

pub fn gcd(mut x: i64, mut y: i64) -> i64 {
    x = x.abs();
    y = y.abs();
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

/// Element of Q(tau) in lowest terms: `num / den` with `den > 0` and
/// gcd(num.a, num.b, den) = 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GoldenRational {
    num: GoldenInt,
    den: i64,
}

impl GoldenRational {
    pub fn new(num: GoldenInt, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let mut num = num;
        let mut den = den;
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = gcd(gcd(num.a, num.b), den);
        if g > 1 {
            num = GoldenInt::new(num.a / g, num.b / g);
            den /= g;
        }
        GoldenRational { num, den }
    }

    pub fn from_int(n: i64) -> Self {
        GoldenRational { num: GoldenInt::from_int(n), den: 1 }
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        GoldenRational::new(GoldenInt::from_int(p), q)
    }

    #[inline]
    pub fn num(self) -> GoldenInt {
        self.num
    }

    #[inline]
    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num.is_zero()
    }

    /// The element of Z[tau] this equals, if the denominator is 1.
    pub fn as_golden_int(self) -> Option<GoldenInt> {
        (self.den == 1).then_some(self.num)
    }

    /// True for elements of Q with no tau component.
    pub fn is_rational(self) -> bool {
        self.num.is_int()
    }

    pub fn sign(self) -> i8 {
        self.num.sign()
    }

    pub fn recip(self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        // 1/(x/d) = d * conj(x) / norm(x)
        GoldenRational::new(self.num.conj() * self.den, self.num.norm())
    }
}

impl From<GoldenInt> for GoldenRational {
    fn from(x: GoldenInt) -> Self {
        GoldenRational { num: x, den: 1 }
    }
}

impl Neg for GoldenRational {
    type Output = GoldenRational;
    fn neg(self) -> GoldenRational {
        GoldenRational { num: -self.num, den: self.den }
    }
}

impl Add for GoldenRational {
    type Output = GoldenRational;
    fn add(self, rhs: GoldenRational) -> GoldenRational {
        GoldenRational::new(
            self.num * rhs.den + rhs.num * self.den,
            ck_mul(self.den, rhs.den),
        )
    }
}

impl Sub for GoldenRational {
    type Output = GoldenRational;
    fn sub(self, rhs: GoldenRational) -> GoldenRational {
        self + (-rhs)
    }
}

impl Mul for GoldenRational {
    type Output = GoldenRational;
    fn mul(self, rhs: GoldenRational) -> GoldenRational {
        GoldenRational::new(self.num * rhs.num, ck_mul(self.den, rhs.den))
    }
}

impl fmt::Debug for GoldenRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GoldenRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}
