//! Dense univariate polynomials over a [`Field`], plus the rational-specific
//! machinery: subresultant gcd/resultant over Z, Sturm chains, rational and
//! modular root finding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Field, Fp};
use super::intfactor;
use super::num::{rat, Rat};
use crate::{Error, Result};

/// Dense polynomial, ascending coefficients, no trailing zero; the zero
/// polynomial is the empty list (degree "minus infinity").
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F> {
    pub c: Vec<F>,
}

pub type QPoly = Poly<Rat>;

impl<F: Field> Poly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(x: F) -> Self {
        Poly::new(vec![x])
    }

    /// x^n with the context of `sample`.
    pub fn monomial(sample: &F, n: usize) -> Self {
        let mut c = vec![sample.zero_like(); n + 1];
        c[n] = sample.one_like();
        Poly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("nonzero polynomial")
    }

    pub fn lead(&self) -> &F {
        self.c.last().expect("nonzero polynomial")
    }

    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.c.get(i)
    }

    /// Coefficient with a zero default in the context of `sample`.
    pub fn coeff_or_zero(&self, i: usize, sample: &F) -> F {
        self.c.get(i).cloned().unwrap_or_else(|| sample.zero_like())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let v = match (self.c.get(i), rhs.c.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            c.push(v);
        }
        Poly::new(c)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            c: self.c.iter().map(|x| x.neg()).collect(),
        }
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.c.iter().map(|x| x.mul(k)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let z = self.c[0].zero_like();
        let mut c = vec![z; self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Poly::new(c)
    }

    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![self.c[0].zero_like(); n];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn pow(&self, mut e: usize) -> Self {
        if e == 0 {
            let one = self
                .c
                .first()
                .map(|x| x.one_like())
                .expect("pow(0) of zero polynomial needs context");
            return Poly::constant(one);
        }
        let mut base = self.clone();
        let mut acc: Option<Poly<F>> = None;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.unwrap()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Poly::zero();
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.mul(&a.from_i64(i as i64)))
            .collect();
        Poly::new(c)
    }

    /// Substitute another polynomial: self(g(x)).
    pub fn compose(&self, g: &Self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut acc = Poly::constant(self.c.last().unwrap().clone());
        for a in self.c.iter().rev().skip(1) {
            acc = acc.mul(g).add(&Poly::constant(a.clone()));
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let li = self.lead().inv().expect("leading coefficient invertible");
        self.scale(&li)
    }

    /// Quotient and remainder; the divisor's leading coefficient must be a
    /// unit.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() || self.deg() < d.deg() {
            return (Poly::zero(), self.clone());
        }
        let dl = d.lead().inv().expect("divisor leading coefficient a unit");
        let mut rem = self.c.clone();
        let dd = d.deg();
        let nd = self.deg();
        let z = self.c[0].zero_like();
        let mut quot = vec![z; nd - dd + 1];
        for i in (dd..=nd).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].mul(&dl);
            quot[i - dd] = q.clone();
            for (j, dc) in d.c.iter().enumerate() {
                rem[i - dd + j] = rem[i - dd + j].sub(&q.mul(dc));
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn divides_exactly(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd over a field by the Euclidean algorithm.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended gcd: (g, s, t) with s*self + t*rhs = g, g monic or zero.
    pub fn xgcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = rhs.clone();
        let one = Poly::constant(
            self.c
                .first()
                .or(rhs.c.first())
                .expect("xgcd needs a nonzero input")
                .one_like(),
        );
        let mut s0 = one.clone();
        let mut s1 = Poly::zero();
        let mut t0 = Poly::zero();
        let mut t1 = one;
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let li = r0.lead().inv().unwrap();
        (r0.scale(&li), s0.scale(&li), t0.scale(&li))
    }

    /// Resultant over a field via the Euclidean remainder recurrence.
    pub fn resultant_field(&self, rhs: &Self) -> F {
        assert!(!self.is_zero() && !rhs.is_zero());
        let one = self.c[0].one_like();
        let mut a = self.clone();
        let mut b = rhs.clone();
        let mut acc = one.clone();
        loop {
            let (da, db) = (a.deg(), b.deg());
            if db == 0 {
                // Res(a, const) = const^deg(a)
                let mut p = one.clone();
                let l = b.lead();
                for _ in 0..da {
                    p = p.mul(l);
                }
                return acc.mul(&p);
            }
            if da < db {
                // swap introduces sign (-1)^(da db)
                if da % 2 == 1 && db % 2 == 1 {
                    acc = acc.neg();
                }
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return one.zero_like();
            }
            // Res(a,b) = lc(b)^(da - dr) * (-1)^(da db) * Res(b, r)
            let dr = r.deg();
            let mut p = one.clone();
            for _ in 0..(da - dr) {
                p = p.mul(b.lead());
            }
            if da % 2 == 1 && db % 2 == 1 {
                acc = acc.neg();
            }
            acc = acc.mul(&p);
            a = b;
            b = r;
        }
    }

    /// x^e mod m by repeated squaring.
    pub fn pow_mod(sample: &F, e: &BigInt, m: &Self) -> Self {
        let x = Poly::monomial(sample, 1).rem(m);
        let mut acc = Poly::constant(sample.one_like()).rem(m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&x).rem(m);
            }
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// integer-polynomial internals for the rational layer
// ---------------------------------------------------------------------------

/// Content/primitive split: p = content * primitive with primitive in Z[x]
/// of content 1 and positive leading coefficient.
pub fn content_primitive(p: &QPoly) -> (Rat, Vec<BigInt>) {
    assert!(!p.is_zero());
    let mut den = BigInt::one();
    for c in &p.c {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.c.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    if ints.last().unwrap().is_negative() {
        g = -g;
    }
    let prim: Vec<BigInt> = ints.iter().map(|v| v / &g).collect();
    (Rat::new(g, den), prim)
}

fn zp_deg(p: &[BigInt]) -> usize {
    p.len() - 1
}

fn zp_normalize(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().map_or(false, |x| x.is_zero()) {
        p.pop();
    }
    p
}

fn zp_mul_scalar(p: &[BigInt], k: &BigInt) -> Vec<BigInt> {
    p.iter().map(|x| x * k).collect()
}

fn zp_exact_div_scalar(p: &[BigInt], k: &BigInt) -> Vec<BigInt> {
    p.iter()
        .map(|x| {
            let (q, r) = x.div_rem(k);
            debug_assert!(r.is_zero());
            q
        })
        .collect()
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r.
fn zp_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let da = zp_deg(a);
    let db = zp_deg(b);
    assert!(da >= db);
    let lb = b.last().unwrap();
    let mut r: Vec<BigInt> = a.to_vec();
    let mut e = (da - db + 1) as u32;
    while !r.is_empty() && zp_deg(&r) >= db {
        let d = zp_deg(&r);
        let lr = r.last().unwrap().clone();
        // r <- lb*r - lr*x^(d-db)*b
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[d - db + j] -= &lr * bc;
        }
        r = zp_normalize(r);
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        let f = lb.pow(e);
        r = zp_mul_scalar(&r, &f);
    }
    r
}

fn big_pow(x: &BigInt, e: usize) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Subresultant PRS resultant of nonzero integer polynomials.
fn zp_resultant(a: Vec<BigInt>, b: Vec<BigInt>) -> BigInt {
    let mut a = zp_normalize(a);
    let mut b = zp_normalize(b);
    assert!(!a.is_empty() && !b.is_empty());
    let mut s = 1i32;
    if zp_deg(&a) < zp_deg(&b) {
        if zp_deg(&a) % 2 == 1 && zp_deg(&b) % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if zp_deg(&b) == 0 {
        let r = big_pow(&b[0], zp_deg(&a));
        return if s < 0 { -r } else { r };
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = zp_deg(&a);
        let db = zp_deg(&b);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = zp_pseudo_rem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        let divisor = &g * big_pow(&h, delta);
        let rr = zp_exact_div_scalar(&r, &divisor);
        a = b;
        b = rr;
        g = a.last().unwrap().clone();
        // h <- h^(1-delta) g^delta, exact
        h = if delta == 0 {
            h
        } else {
            let num = big_pow(&g, delta);
            let den = big_pow(&h, delta - 1);
            let (q, rem) = num.div_rem(&den);
            debug_assert!(rem.is_zero());
            q
        };
        if zp_deg(&b) == 0 {
            // res = s * lc(B)^(deg A) / h^(deg A - 1)
            let da = zp_deg(&a);
            let num = big_pow(&b[0], da);
            let den = big_pow(&h, da.saturating_sub(1));
            let (q, rem) = num.div_rem(&den);
            debug_assert!(rem.is_zero());
            return if s < 0 { -q } else { q };
        }
    }
}

impl QPoly {
    pub fn from_i64(v: &[i64]) -> Self {
        Poly::new(v.iter().map(|&x| rat(x)).collect())
    }

    /// Reduce mod p (denominators must be coprime to p).
    pub fn reduce_mod(&self, p: u64) -> Poly<Fp> {
        let c = self
            .c
            .iter()
            .map(|x| {
                let v = super::num::rat_mod_pk(x, p, 1);
                Fp::from_u64(v, p)
            })
            .collect();
        Poly::new(c)
    }

    /// Resultant with the Sylvester sign/scale convention, computed by a
    /// subresultant PRS over Z to avoid coefficient blowup.
    pub fn resultant(&self, rhs: &Self) -> Result<Rat> {
        if self.is_zero() || rhs.is_zero() {
            return Err(Error::ZeroPolynomial("resultant"));
        }
        if self.deg() == 0 {
            return Ok(pow_rat(&self.c[0], rhs.deg()));
        }
        if rhs.deg() == 0 {
            return Ok(pow_rat(&rhs.c[0], self.deg()));
        }
        let (ca, pa) = content_primitive(self);
        let (cb, pb) = content_primitive(rhs);
        let r = zp_resultant(pa, pb);
        Ok(pow_rat(&ca, rhs.deg()) * pow_rat(&cb, self.deg()) * Rat::from_integer(r))
    }

    /// disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f).
    pub fn discriminant(&self) -> Result<Rat> {
        let n = self.degree().ok_or(Error::ZeroPolynomial("discriminant"))?;
        if n == 0 {
            return Err(Error::ZeroPolynomial("discriminant of a constant"));
        }
        let d = self.derivative();
        if d.is_zero() {
            return Ok(Rat::zero());
        }
        let r = self.resultant(&d)?;
        let sign = if (n * (n - 1) / 2) % 2 == 1 { -Rat::one() } else { Rat::one() };
        Ok(sign * r / self.lead().clone())
    }

    /// Squarefree part self / gcd(self, self').
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) || g.is_zero() {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        let g = self.gcd(&self.derivative());
        g.degree() == Some(0)
    }

    /// All rational roots with multiplicity, by divisor enumeration of the
    /// cleared leading/constant coefficients.
    pub fn rational_roots(&self) -> Vec<Rat> {
        assert!(!self.is_zero(), "rational roots of the zero polynomial");
        let mut out = Vec::new();
        let (_, mut prim) = content_primitive(self);
        // strip roots at zero
        while prim[0].is_zero() {
            out.push(Rat::zero());
            prim.remove(0);
        }
        if prim.len() <= 1 {
            return out;
        }
        let a0 = prim[0].clone();
        let an = prim.last().unwrap().clone();
        let at1: BigInt = prim.iter().sum();
        let atm1: BigInt = prim
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c.clone() })
            .sum();
        let ps = intfactor::divisors(&a0);
        let qs = intfactor::divisors(&an);
        let qpoly = QPoly::new(prim.iter().map(|x| Rat::from_integer(x.clone())).collect());
        let mut roots = Vec::new();
        for q in &qs {
            for p in &ps {
                if !p.gcd(q).is_one() {
                    continue;
                }
                for sign in [1i64, -1] {
                    let pp = if sign == 1 { p.clone() } else { -p.clone() };
                    // p/q filters: (p - q) | f(1), (p + q) | f(-1)
                    let d1 = &pp - q;
                    if !at1.is_zero() && !d1.is_zero() && !(&at1 % &d1).is_zero() {
                        continue;
                    }
                    let d2 = &pp + q;
                    if !atm1.is_zero() && !d2.is_zero() && !(&atm1 % &d2).is_zero() {
                        continue;
                    }
                    let cand = Rat::new(pp, q.clone());
                    if Zero::is_zero(&qpoly.eval(&cand)) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        // multiplicities by repeated exact division
        let mut rem = qpoly;
        for r in roots {
            let lin = QPoly::new(vec![-r.clone(), Rat::one()]);
            loop {
                match rem.divides_exactly(&lin) {
                    Some(q) => {
                        out.push(r.clone());
                        rem = q;
                    }
                    None => break,
                }
            }
        }
        out.sort();
        out
    }

    /// Exact real-root count of a squarefree polynomial via Sturm chains.
    pub fn sturm_real_root_count(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("sturm"));
        }
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        if self.deg() == 0 {
            return Ok(0);
        }
        let chain = self.sturm_chain();
        let at = |plus: bool| -> usize {
            let mut signs = Vec::new();
            for q in &chain {
                let l = q.lead();
                let s = if plus || q.deg() % 2 == 0 {
                    l.signum()
                } else {
                    -l.signum()
                };
                if !Zero::is_zero(&s) {
                    signs.push(s > Rat::zero());
                }
            }
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        Ok(at(false) - at(true))
    }

    pub fn sturm_chain(&self) -> Vec<QPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                return chain;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                return chain;
            }
            chain.push(r);
        }
    }

    /// Sign variations of the Sturm chain at a rational point.
    pub fn sturm_variations_at(chain: &[QPoly], x: &Rat) -> usize {
        let mut signs = Vec::new();
        for q in chain {
            let v = q.eval(x);
            if !Zero::is_zero(&v) {
                signs.push(v > Rat::zero());
            }
        }
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

fn pow_rat(x: &Rat, e: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc = acc * x;
    }
    acc
}

/// Existence of a root in the coefficient field, for the fields this crate
/// computes over.
pub trait RootProbe: Field {
    fn poly_has_root(f: &Poly<Self>) -> bool;
}

impl RootProbe for Rat {
    fn poly_has_root(f: &Poly<Rat>) -> bool {
        !f.rational_roots().is_empty()
    }
}

impl RootProbe for Fp {
    fn poly_has_root(f: &Poly<Fp>) -> bool {
        let p = f.c[0].p;
        !roots_mod_p(f, p).is_empty()
    }
}

impl RootProbe for crate::exact::Fp2 {
    fn poly_has_root(f: &Poly<crate::exact::Fp2>) -> bool {
        let s = f.c[0];
        let p = s.p;
        for a in 0..p {
            for b in 0..p {
                let x = crate::exact::Fp2 { a, b, p, nr: s.nr };
                if f.eval(&x).is_zero() {
                    return true;
                }
            }
        }
        false
    }
}

// ---------------------------------------------------------------------------
// F_p polynomial utilities (distinct-degree patterns, root extraction)
// ---------------------------------------------------------------------------

/// Degrees of irreducible factors of a squarefree monic polynomial mod p,
/// by distinct-degree factorization. Returns the multiset, ascending.
pub fn ddf_pattern(f: &Poly<Fp>, p: u64) -> Vec<usize> {
    let mut f = f.monic();
    let sample = Fp::new(0, p);
    let mut pattern = Vec::new();
    let mut d = 1usize;
    let mut xq = Poly::pow_mod(&sample, &BigInt::from(p), &f); // x^p mod f
    let x = Poly::monomial(&sample, 1);
    while f.deg() >= 1 {
        if 2 * d > f.deg() {
            pattern.push(f.deg());
            break;
        }
        // gcd(x^(p^d) - x, f)
        let g = f.gcd(&xq.sub(&x.rem(&f)));
        if !g.is_zero() && g.deg() >= 1 {
            let factors = g.deg() / d;
            for _ in 0..factors {
                pattern.push(d);
            }
            f = f.div_rem(&g).0;
            if f.deg() == 0 {
                break;
            }
            xq = xq.rem(&f);
        }
        d += 1;
        if f.deg() >= 1 {
            xq = frob_step(&xq, p, &f);
        }
    }
    pattern.sort();
    pattern
}

fn frob_step(xq: &Poly<Fp>, p: u64, f: &Poly<Fp>) -> Poly<Fp> {
    // xq^p mod f
    let sample = Fp::new(0, p);
    let mut acc = Poly::constant(sample.one_like());
    let e = BigInt::from(p);
    let bits = e.bits();
    for i in (0..bits).rev() {
        acc = acc.mul(&acc).rem(f);
        if e.bit(i) {
            acc = acc.mul(xq).rem(f);
        }
    }
    acc
}

pub fn is_irreducible_mod_p(f: &Poly<Fp>, p: u64) -> bool {
    if f.deg() == 0 {
        return false;
    }
    let sf = f.monic();
    if sf.gcd(&sf.derivative()).deg() != 0 {
        return false;
    }
    ddf_pattern(&sf, p) == vec![sf.deg()]
}

/// Roots in F_p of a nonzero polynomial (without multiplicity).
pub fn roots_mod_p(f: &Poly<Fp>, p: u64) -> Vec<u64> {
    if f.is_zero() {
        panic!("roots of zero polynomial");
    }
    if p < 600 {
        return (0..p)
            .filter(|&x| f.eval(&Fp::from_u64(x, p)).is_zero())
            .collect();
    }
    // gcd with x^p - x, then split linear factors
    let sample = Fp::new(0, p);
    let monic = f.monic();
    let xq = Poly::pow_mod(&sample, &BigInt::from(p), &monic);
    let x = Poly::monomial(&sample, 1).rem(&monic);
    let mut g = monic.gcd(&xq.sub(&x));
    let mut roots = Vec::new();
    if g.deg() == 0 {
        return roots;
    }
    // strip a root at 0
    if g.c[0].is_zero() {
        roots.push(0);
        g = g.div_rem(&Poly::monomial(&sample, 1)).0;
    }
    let mut stack = vec![g];
    let mut seed = 1u64;
    while let Some(h) = stack.pop() {
        if h.deg() == 0 {
            continue;
        }
        if h.deg() == 1 {
            let r = h.c[0].neg().mul(&h.c[1].inv().unwrap());
            roots.push(r.v);
            continue;
        }
        // equal-degree splitting with (x + a)^((p-1)/2) - 1
        loop {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = Fp::from_u64(seed % p, p);
            let shifted = Poly::new(vec![a, Fp::from_u64(1, p)]);
            let pw = poly_powmod(&shifted, (p - 1) / 2, &h);
            let g1 = h.gcd(&pw.sub(&Poly::constant(Fp::from_u64(1, p))));
            if g1.deg() >= 1 && g1.deg() < h.deg() {
                let g2 = h.div_rem(&g1).0;
                stack.push(g1);
                stack.push(g2);
                break;
            }
        }
    }
    roots.sort();
    roots
}

fn poly_powmod(b: &Poly<Fp>, e: u64, m: &Poly<Fp>) -> Poly<Fp> {
    let sample = b.c[0].zero_like();
    let mut acc = Poly::constant(sample.one_like());
    let mut base = b.rem(m);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base).rem(m);
        }
        base = base.mul(&base).rem(m);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::num::ratio;

    fn sextic() -> QPoly {
        QPoly::from_i64(&[1, 6, 5, 22, 22, 8, 1])
    }

    #[test]
    fn gcd_shared_root() {
        let a = QPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = QPoly::from_i64(&[-1, 1]); // x - 1
        assert_eq!(a.gcd(&b), b.monic());
    }

    #[test]
    fn gcd_of_f_and_derivative_is_one() {
        let f = sextic();
        let g = f.gcd(&f.derivative());
        assert_eq!(g.degree(), Some(0));
    }

    #[test]
    fn gcd_mod_3701_double_root() {
        let f = sextic().reduce_mod(3701);
        let g = f.gcd(&f.derivative());
        // x - 1727
        assert_eq!(g.deg(), 1);
        assert_eq!(g.c[1].v, 1);
        assert_eq!(g.c[0].neg().v, 1727);
    }

    #[test]
    fn resultant_linear() {
        let a = QPoly::from_i64(&[-2, 1]);
        let b = QPoly::from_i64(&[-3, 1]);
        assert_eq!(a.resultant(&b).unwrap(), rat(-1));
    }

    #[test]
    fn disc_of_f() {
        let d = sextic().discriminant().unwrap();
        assert_eq!(d, rat(15_159_296)); // 2^12 * 3701
    }

    #[test]
    fn resultant_random_products() {
        // Res(a,b) = 0 iff deg gcd >= 1, on pairs with planted common factors
        let mut lcg = 12345u64;
        let mut next = || {
            lcg = lcg.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((lcg >> 33) % 11) as i64 - 5
        };
        for trial in 0..40 {
            let common = QPoly::new(vec![rat(next()), rat(1)]);
            let a0 = QPoly::new(vec![rat(next()), rat(next()), rat(1)]);
            let b0 = QPoly::new(vec![rat(next()), rat(1)]);
            let planted = trial % 2 == 0;
            let (a, b) = if planted {
                (a0.mul(&common), b0.mul(&common))
            } else {
                (a0.clone(), b0.clone())
            };
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let r = a.resultant(&b).unwrap();
            let g = a.gcd(&b);
            assert_eq!(Zero::is_zero(&r), g.deg() >= 1, "trial {trial}");
        }
    }

    #[test]
    fn rational_roots_basic() {
        let p = QPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(p.rational_roots(), vec![rat(-1), rat(1)]);
        // multiplicity
        let q = QPoly::from_i64(&[1, 2, 1]); // (x+1)^2
        assert_eq!(q.rational_roots(), vec![rat(-1), rat(-1)]);
        // denominator roots
        let r = QPoly::from_i64(&[-1, 2]); // 2x - 1
        assert_eq!(r.rational_roots(), vec![ratio(1, 2)]);
    }

    #[test]
    fn rational_root_division_property() {
        let p = QPoly::from_i64(&[6, -5, 1]); // (x-2)(x-3)
        for r in p.rational_roots() {
            assert!(Zero::is_zero(&p.eval(&r)));
            let lin = QPoly::new(vec![-r, Rat::one()]);
            assert_eq!(p.divides_exactly(&lin).unwrap().deg(), p.deg() - 1);
        }
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(QPoly::from_i64(&[1, 0, 1]).sturm_real_root_count().unwrap(), 0);
        assert_eq!(QPoly::from_i64(&[-2, 0, 1]).sturm_real_root_count().unwrap(), 2);
        assert_eq!(sextic().sturm_real_root_count().unwrap(), 2);
        assert!(QPoly::from_i64(&[1, 2, 1]).sturm_real_root_count().is_err());
    }

    #[test]
    fn ddf_pattern_of_f_mod2() {
        // f mod 2 = (x^3+x+1)^2 with the cubic irreducible
        let f2 = sextic().reduce_mod(2);
        let cubic = QPoly::from_i64(&[1, 1, 0, 1]).reduce_mod(2);
        assert_eq!(f2, cubic.mul(&cubic));
        assert!(is_irreducible_mod_p(&cubic, 2));
    }

    #[test]
    fn roots_mod_p_matches_bruteforce() {
        let f = QPoly::from_i64(&[2, 0, 3, 1, 1]);
        for p in [5u64, 13, 1009, 10007] {
            let fp = f.reduce_mod(p);
            let fast = roots_mod_p(&fp, p);
            let slow: Vec<u64> = (0..p.min(20000))
                .filter(|&x| fp.eval(&Fp::from_u64(x, p)).is_zero())
                .collect();
            assert_eq!(fast, slow, "p={p}");
        }
    }
}
