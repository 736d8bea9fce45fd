//! Integer factorization: trial division, Miller–Rabin, Brent's rho.
//!
//! Sizes here stay well under 40 digits (polynomial discriminants, cleared
//! coefficients of the trace curves), so rho is plenty.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::num::{mulmod, powmod};

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin bases for u64
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_big(n: &BigInt) -> bool {
    if let Some(u) = n.to_u64() {
        return is_prime_u64(u);
    }
    let one = BigInt::one();
    let two = BigInt::from(2);
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap();
    let d = &nm1 >> s;
    for a in SMALL_PRIMES {
        let a = BigInt::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        let mut composite = true;
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                composite = false;
                break;
            }
        }
        if composite {
            return false;
        }
    }
    true
}

fn rho_u64(n: u64) -> u64 {
    // Brent's cycle detection
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut x, mut ys);
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g;
        loop {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            loop {
                ys = y;
                let m = 128.min(r - k);
                for _ in 0..m {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = super::num::gcd_u64(q, n);
                k += m;
                if k >= r || g > 1 {
                    break;
                }
            }
            r *= 2;
            if g > 1 {
                break;
            }
        }
        if g == n {
            g = 1;
            while g == 1 {
                ys = f(ys);
                g = super::num::gcd_u64(x.abs_diff(ys), n);
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn rho_big(n: &BigInt) -> BigInt {
    if let Some(u) = n.to_u64() {
        return BigInt::from(rho_u64(u));
    }
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c).mod_floor(n);
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        loop {
            x = f(&x);
            y = f(&f(&y));
            let g = (&x - &y).abs().gcd(n);
            if g.is_one() {
                continue;
            }
            if &g != n {
                return g;
            }
            break;
        }
        c += 1;
    }
}

/// Prime factorization of |n| for n != 0, sorted, as (prime, exponent).
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero());
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut push = |p: BigInt, out: &mut Vec<(BigInt, u32)>| {
        if let Some(e) = out.iter_mut().find(|(q, _)| *q == p) {
            e.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for p in SMALL_PRIMES {
        let pb = BigInt::from(p);
        while (&n % &pb).is_zero() {
            n /= &pb;
            push(pb.clone(), &mut out);
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime_big(&m) {
            push(m, &mut out);
            continue;
        }
        let d = rho_big(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort();
    out
}

/// All positive divisors of |n|; caller should keep n modest.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let fac = factor(n);
    let mut divs = vec![BigInt::one()];
    for (p, e) in fac {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pe = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pe);
                pe *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// The set of primes dividing |n|, as u64 when they fit.
pub fn prime_support(n: &BigInt) -> Vec<BigInt> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_disc() {
        // 2^12 * 3701
        let n = BigInt::from(15_159_296u64);
        let f = factor(&n);
        assert_eq!(f, vec![(BigInt::from(2), 12), (BigInt::from(3701), 1)]);
    }

    #[test]
    fn factor_big_semiprime() {
        let n = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        let f = factor(&n);
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn divisor_list() {
        let d = divisors(&BigInt::from(12));
        let expect: Vec<BigInt> = [1, 2, 3, 4, 6, 12].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(d, expect);
    }
}
