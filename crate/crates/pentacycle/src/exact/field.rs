//! Field abstraction with element-carried context.
//!
//! Constants are derived from an existing element (`zero_like`, `one_like`)
//! so that dynamic-modulus fields need no global state.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::num::{invmod, mulmod, powmod, rat_sqrt, sqrt_mod_p, Rat};

pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// None exactly when self is zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// Exact square root in the field, when one exists.
    fn sqrt(&self) -> Option<Self>;
    /// Image of a small integer in the same context as self.
    fn from_i64(&self, n: i64) -> Self;
}

impl Field for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            None
        } else {
            rat_sqrt(self)
        }
    }
    fn from_i64(&self, n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }
}

/// Prime-field element with dynamic modulus.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        Fp {
            v: v.rem_euclid(p as i64) as u64,
            p,
        }
    }
    pub fn from_u64(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }
    pub fn pow(&self, e: u64) -> Self {
        Fp {
            v: powmod(self.v, e, self.p),
            p: self.p,
        }
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1 % self.p, p: self.p }
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            v: (self.v + rhs.v) % self.p,
            p: self.p,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            v: (self.v + self.p - rhs.v) % self.p,
            p: self.p,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            v: mulmod(self.v, rhs.v, self.p),
            p: self.p,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
    fn inv(&self) -> Option<Self> {
        invmod(self.v, self.p).map(|v| Fp { v, p: self.p })
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn sqrt(&self) -> Option<Self> {
        if self.p == 2 {
            return Some(*self);
        }
        sqrt_mod_p(self.v, self.p).map(|v| Fp { v, p: self.p })
    }
    fn from_i64(&self, n: i64) -> Self {
        Fp::new(n, self.p)
    }
}

/// Quadratic extension F_{p^2} = F_p[w]/(w^2 - nr), nr a nonresidue.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
    pub p: u64,
    pub nr: u64,
}

impl Fp2 {
    /// Least quadratic nonresidue mod p.
    pub fn nonresidue(p: u64) -> u64 {
        let mut n = 2;
        while powmod(n, (p - 1) / 2, p) != p - 1 {
            n += 1;
        }
        n
    }
    pub fn new(a: u64, b: u64, p: u64, nr: u64) -> Self {
        Fp2 { a: a % p, b: b % p, p, nr }
    }
    pub fn base(a: u64, p: u64, nr: u64) -> Self {
        Fp2 { a: a % p, b: 0, p, nr }
    }
    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Fp2 { a: 1, b: 0, p: self.p, nr: self.nr };
        let mut b = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }
}

impl Field for Fp2 {
    fn zero_like(&self) -> Self {
        Fp2 { a: 0, b: 0, ..*self }
    }
    fn one_like(&self) -> Self {
        Fp2 { a: 1 % self.p, b: 0, ..*self }
    }
    fn add(&self, rhs: &Self) -> Self {
        Fp2 {
            a: (self.a + rhs.a) % self.p,
            b: (self.b + rhs.b) % self.p,
            ..*self
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp2 {
            a: (self.a + self.p - rhs.a) % self.p,
            b: (self.b + self.p - rhs.b) % self.p,
            ..*self
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let p = self.p;
        let ac = mulmod(self.a, rhs.a, p);
        let bd = mulmod(self.b, rhs.b, p);
        let ad_bc = (mulmod(self.a, rhs.b, p) + mulmod(self.b, rhs.a, p)) % p;
        Fp2 {
            a: (ac + mulmod(bd, self.nr, p)) % p,
            b: ad_bc,
            ..*self
        }
    }
    fn neg(&self) -> Self {
        Fp2 {
            a: if self.a == 0 { 0 } else { self.p - self.a },
            b: if self.b == 0 { 0 } else { self.p - self.b },
            ..*self
        }
    }
    fn inv(&self) -> Option<Self> {
        // (a + bw)^-1 = (a - bw)/(a^2 - nr b^2)
        let p = self.p;
        let n = (mulmod(self.a, self.a, p) + p - mulmod(mulmod(self.b, self.b, p), self.nr, p)) % p;
        let ninv = invmod(n, p)?;
        Some(Fp2 {
            a: mulmod(self.a, ninv, p),
            b: mulmod(if self.b == 0 { 0 } else { p - self.b }, ninv, p),
            ..*self
        })
    }
    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
    fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(*self);
        }
        // p is tiny wherever F_{p^2} appears (point counts), brute force
        for a in 0..self.p {
            for b in 0..self.p {
                let y = Fp2 { a, b, p: self.p, nr: self.nr };
                if y.mul(&y) == *self {
                    return Some(y);
                }
            }
        }
        None
    }
    fn from_i64(&self, n: i64) -> Self {
        Fp2 {
            a: n.rem_euclid(self.p as i64) as u64,
            b: 0,
            ..*self
        }
    }
}

/// Quadratic extension of Q: a + b*sqrt(d), d a non-square rational.
#[derive(Clone, PartialEq, Debug)]
pub struct QuadExt {
    pub a: Rat,
    pub b: Rat,
    pub d: Rat,
}

impl QuadExt {
    pub fn new(a: Rat, b: Rat, d: Rat) -> Self {
        QuadExt { a, b, d }
    }
    pub fn from_base(a: Rat, d: Rat) -> Self {
        QuadExt { a, b: Rat::zero(), d }
    }
    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }
    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.b)
    }
}

impl Field for QuadExt {
    fn zero_like(&self) -> Self {
        QuadExt {
            a: Rat::zero(),
            b: Rat::zero(),
            d: self.d.clone(),
        }
    }
    fn one_like(&self) -> Self {
        QuadExt {
            a: Rat::one(),
            b: Rat::zero(),
            d: self.d.clone(),
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        QuadExt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d: self.d.clone(),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        QuadExt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            d: self.d.clone(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        QuadExt {
            a: &self.a * &rhs.a + &self.b * &rhs.b * &self.d,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d.clone(),
        }
    }
    fn neg(&self) -> Self {
        QuadExt {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        let n = &self.a * &self.a - &self.b * &self.b * &self.d;
        if Zero::is_zero(&n) {
            return None;
        }
        let ninv = n.recip();
        Some(QuadExt {
            a: &self.a * &ninv,
            b: -(&self.b * &ninv),
            d: self.d.clone(),
        })
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn sqrt(&self) -> Option<Self> {
        // only the base-field cases are ever needed
        if Zero::is_zero(&self.b) {
            if let Some(r) = rat_sqrt(&self.a) {
                return Some(QuadExt::from_base(r, self.d.clone()));
            }
            let q = &self.a / &self.d;
            if let Some(r) = rat_sqrt(&q) {
                return Some(QuadExt {
                    a: Rat::zero(),
                    b: r,
                    d: self.d.clone(),
                });
            }
        }
        None
    }
    fn from_i64(&self, n: i64) -> Self {
        QuadExt::from_base(super::num::rat(n), self.d.clone())
    }
}
