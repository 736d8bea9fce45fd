//! Rational scalar type and small integer helpers.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always stored reduced with positive
/// denominator (enforced by `num_rational`).
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_big(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// Parse "a/b" or "a" into a rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let num: BigInt = a.trim().parse().ok()?;
        let den: BigInt = b.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Rat::new(num, den))
    } else {
        let num: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(num))
    }
}

/// v_p of a nonzero integer.
pub fn int_val_p(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if r.is_zero() {
            v += 1;
            n = q;
        } else {
            return v;
        }
    }
}

/// v_p of a nonzero rational (can be negative).
pub fn rat_val_p(x: &Rat, p: u64) -> i64 {
    assert!(!x.is_zero());
    int_val_p(x.numer(), p) as i64 - int_val_p(x.denom(), p) as i64
}

/// Reduce a rational with p-coprime denominator to a residue mod p^k.
pub fn rat_mod_pk(x: &Rat, p: u64, k: u32) -> u64 {
    let m = p.checked_pow(k).expect("modulus fits u64");
    let mb = BigInt::from(m);
    let num = x.numer().mod_floor(&mb).to_u64().unwrap();
    let den = x.denom().mod_floor(&mb).to_u64().unwrap();
    assert!(den % p != 0, "denominator not coprime to {p}");
    mulmod(num, invmod(den, m).expect("unit"), m)
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Inverse of a mod m when gcd(a, m) = 1.
pub fn invmod(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// Euler-criterion Legendre symbol (a/p) for odd prime p.
pub fn legendre(a: &BigInt, p: u64) -> i32 {
    let pb = BigInt::from(p);
    let r = a.mod_floor(&pb).to_u64().unwrap();
    if r == 0 {
        return 0;
    }
    let e = powmod(r, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

/// Tonelli–Shanks square root mod an odd prime.
pub fn sqrt_mod_p(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(powmod(a, (p + 1) / 4, p));
    }
    // write p-1 = q 2^s with q odd
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while powmod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt, p);
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

/// Exact integer square root test.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact rational square root test.
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    let n = exact_sqrt(x.numer())?;
    let d = exact_sqrt(x.denom())?;
    Some(Rat::new(n, d))
}

/// Squarefree kernel of a nonzero integer, sign preserved.
pub fn squarefree_kernel(n: &BigInt) -> BigInt {
    let fac = crate::exact::intfactor::factor(&n.abs());
    let mut k = BigInt::one();
    for (p, e) in fac {
        if e % 2 == 1 {
            k *= p;
        }
    }
    if n.is_negative() {
        -k
    } else {
        k
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Multiplicative order of a mod n, gcd(a, n) = 1.
pub fn order_mod(a: u64, n: u64) -> u64 {
    assert!(gcd_u64(a % n, n) == 1);
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = mulmod(x, a, n);
        k += 1;
    }
    k
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut phi = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut pk = 1;
            while n % p == 0 {
                n /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        p += 1;
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

/// Möbius function of n >= 1.
pub fn moebius(mut n: u64) -> i64 {
    let mut mu = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Divisors of n in ascending order.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tonelli_odd_primes() {
        for p in [3u64, 5, 13, 1009, 3701] {
            for a in 1..30u64 {
                if let Some(r) = sqrt_mod_p(a % p, p) {
                    assert_eq!(mulmod(r, r, p), a % p);
                } else {
                    assert_eq!(powmod(a % p, (p - 1) / 2, p), p - 1);
                }
            }
        }
    }

    #[test]
    fn legendre_fixtures() {
        assert_eq!(legendre(&BigInt::from(185), 3701), 1);
        assert_eq!(legendre(&BigInt::from(-1375), 3701), 1);
        assert_eq!(legendre(&BigInt::from(-1731), 3701), -1);
        assert_eq!(legendre(&BigInt::from(2), 3701), -1);
    }

    #[test]
    fn moebius_and_phi() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(12), 0);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(41), 40);
        assert_eq!(order_mod(2, 9), 6);
    }
}
