//! Dynatomic polynomials of z^2 + c, the degree and genus formulas for the
//! period curves, the trace-polynomial fixtures, and the cyclotomic cycle
//! constructions for the power maps z^2 and z^2 - 2.

use num_traits::One;
use num_traits::Zero;
use serde::Serialize;

use crate::exact::bipoly::Dense;
use crate::exact::num::{divisors_u64, euler_phi, moebius, order_mod, rat, ratio, Rat};
use crate::exact::poly::QPoly;
use crate::exact::BiPoly;
use crate::{Error, Result};

/// z-degree of Phi_N: nu_2(N) = sum_{d|N} 2^d mu(N/d).
pub fn nu2(n: u64) -> i64 {
    divisors_u64(n)
        .into_iter()
        .map(|d| moebius(n / d) * (1i64 << d))
        .sum()
}

/// Genus of the curve classifying (map, periodic point) pairs.
pub fn genus_c1(n: u64) -> Result<i64> {
    let nu = |m: u64| ratio(nu2(m), 2);
    let mut g = rat(1) + (ratio(n as i64 - 3, 2)) * nu(n);
    let mut s = Rat::zero();
    for d in divisors_u64(n) {
        if d != n {
            s += rat(d as i64) * nu(d) * rat(euler_phi(n / d) as i64);
        }
    }
    g -= s / rat(2);
    rat_to_int(&g, "genus_c1")
}

/// Genus of the quotient curve classifying (map, stable cycle) pairs.
pub fn genus_c0(n: u64) -> Result<i64> {
    let nu = |m: u64| ratio(nu2(m), 2);
    let mut g = rat(1) + (ratio(1, 2) - ratio(3, 2) / rat(n as i64)) * nu(n);
    let mut s = Rat::zero();
    for d in divisors_u64(n) {
        if d != n {
            s += nu(d) * rat(euler_phi(n / d) as i64);
        }
    }
    g -= s / rat(2);
    if n % 2 == 0 {
        let mut corr = Rat::zero();
        for r in divisors_u64(n) {
            if r % 2 == 0 && (n / r) % 2 == 1 {
                corr += rat(moebius(n / r)) * rat(1i64 << (r / 2));
            }
        }
        g -= corr / (rat(4) * rat(n as i64));
    }
    rat_to_int(&g, "genus_c0")
}

fn rat_to_int(x: &Rat, what: &str) -> Result<i64> {
    if !x.denom().is_one() {
        return Err(Error::Certificate(format!(
            "{what} evaluated to the non-integer {x}"
        )));
    }
    Ok(num_traits::ToPrimitive::to_i64(&x.to_integer()).expect("genus fits i64"))
}

#[derive(Debug, Clone, Serialize)]
pub struct DynatomicTable {
    pub n: u64,
    pub nu2: i64,
    pub genus_c0: i64,
    pub genus_c1: i64,
}

pub fn genus_table(max_n: u64) -> Result<Vec<DynatomicTable>> {
    (1..=max_n)
        .map(|n| {
            Ok(DynatomicTable {
                n,
                nu2: nu2(n),
                genus_c0: genus_c0(n)?,
                genus_c1: genus_c1(n)?,
            })
        })
        .collect()
}

/// g^(m)(z) - z for g = z^2 + c, in the dense z-major representation.
fn iterate_minus_z(m: u64) -> Dense {
    let mut g = Dense {
        rows: vec![QPoly::zero(), QPoly::from_i64(&[1])], // z
    };
    for _ in 0..m {
        let mut sq = g.mul(&g);
        if sq.rows.is_empty() {
            sq.rows.push(QPoly::zero());
        }
        sq.rows[0] = sq.rows[0].add(&QPoly::from_i64(&[0, 1])); // + c
        g = sq;
    }
    g.rows[1] = g.rows[1].sub(&QPoly::from_i64(&[1])); // - z
    g
}

/// The polynomial whose roots (for generic c) are points of exact period n,
/// computed as the Moebius quotient prod_m (g^(m)(z) - z)^{mu(n/m)} with the
/// division certified exact.
pub fn dynatomic_poly(n: u64) -> Result<BiPoly> {
    assert!(n >= 1);
    let mut num: Option<Dense> = None;
    let mut den: Option<Dense> = None;
    for m in divisors_u64(n) {
        match moebius(n / m) {
            1 => {
                let t = iterate_minus_z(m);
                num = Some(match num {
                    None => t,
                    Some(a) => a.mul(&t),
                });
            }
            -1 => {
                let t = iterate_minus_z(m);
                den = Some(match den {
                    None => t,
                    Some(a) => a.mul(&t),
                });
            }
            _ => {}
        }
    }
    let num = num.expect("numerator nonempty");
    let phi = match den {
        None => num,
        Some(d) => {
            let (q, r) = num.div_rem_monic_z(&d)?;
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            q
        }
    };
    let out = phi.to_sparse();
    for v in out.terms.values() {
        if !v.denom().is_one() {
            return Err(Error::Certificate(
                "dynatomic coefficients not integral".into(),
            ));
        }
    }
    if out.deg_z() as i64 != nu2(n) {
        return Err(Error::Certificate(format!(
            "z-degree of Phi_{n} is {} but nu2 = {}",
            out.deg_z(),
            nu2(n)
        )));
    }
    Ok(out)
}

/// Exact product identity prod_{d|N} Phi_d = g^(N) - z.
pub fn phi_product_identity(n: u64) -> Result<bool> {
    let mut prod: Option<Dense> = None;
    for d in divisors_u64(n) {
        let phi = Dense::from_sparse(&dynatomic_poly(d)?);
        prod = Some(match prod {
            None => phi,
            Some(p) => p.mul(&phi),
        });
    }
    let lhs = prod.unwrap().to_sparse();
    let rhs = iterate_minus_z(n).to_sparse();
    Ok(lhs == rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PowerMapKind {
    /// z^2 acting on roots of unity.
    Square,
    /// z^2 - 2 acting on zeta + 1/zeta.
    SquareMinusTwo,
}

/// Conductor/length pairs (n, N) of stable cycles of the power maps, for
/// n <= n_max: for z^2 the image of 2 must generate (Z/n)^*, for z^2 - 2
/// it must generate (Z/n)^*/<-1>.
pub fn power_map_stable_cycles(kind: PowerMapKind, n_max: u64) -> Vec<(u64, u64)> {
    assert!(n_max >= 3);
    let mut out = Vec::new();
    for n in (3..=n_max).filter(|n| n % 2 == 1) {
        let phi = euler_phi(n);
        let ord = order_mod(2, n);
        match kind {
            PowerMapKind::Square => {
                if ord == phi {
                    debug_assert!(
                        is_odd_prime_power(n),
                        "a primitive root forces an odd prime power"
                    );
                    out.push((n, phi));
                }
            }
            PowerMapKind::SquareMinusTwo => {
                // order of the image of 2 in (Z/n)^*/<-1>
                let half = phi / 2;
                let ord_q = if ord % 2 == 0 && crate::exact::num::powmod(2, ord / 2, n) == n - 1 {
                    ord / 2
                } else {
                    ord
                };
                if ord_q == half {
                    out.push((n, half));
                }
            }
        }
    }
    out
}

fn is_odd_prime_power(mut n: u64) -> bool {
    let mut p = 3;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return n == 1;
        }
        p += 2;
    }
    n > 1
}

/// Trace polynomial of the 5-cycles (first variable = trace z, second = c).
pub fn tau5() -> BiPoly {
    BiPoly::from_i64_terms(&[
        (0, 0, 32),
        (0, 1, 28),
        (0, 2, 40),
        (0, 3, 9),
        (1, 0, 36),
        (1, 1, -24),
        (1, 2, 17),
        (2, 0, 44),
        (2, 1, 19),
        (2, 2, 19),
        (3, 0, 11),
        (3, 1, 18),
        (4, 0, 3),
        (4, 1, 11),
        (5, 0, 1),
        (6, 0, 1),
    ])
}

/// Trace polynomial of the 6-cycles (first variable = trace x, second = c).
pub fn tau6() -> BiPoly {
    BiPoly::from_i64_terms(&[
        (0, 1, -384),
        (0, 2, -592),
        (0, 3, -256),
        (1, 0, 448),
        (1, 1, 416),
        (1, 2, -304),
        (1, 3, -256),
        (2, 0, 196),
        (2, 1, 552),
        (2, 2, 480),
        (2, 3, 256),
        (3, 0, 140),
        (3, 1, -136),
        (3, 2, 160),
        (3, 3, 256),
        (4, 0, 175),
        (4, 1, 16),
        (4, 2, 112),
        (5, 0, 49),
        (5, 1, 16),
        (5, 2, 144),
        (6, 0, 14),
        (6, 1, 8),
        (7, 0, 2),
        (7, 1, 24),
        (8, 0, -1),
        (9, 0, 1),
    ])
}

pub fn tau_fixture(n: u64) -> Result<BiPoly> {
    match n {
        5 => Ok(tau5()),
        6 => Ok(tau6()),
        _ => Err(Error::Precondition(format!("no trace fixture for N = {n}"))),
    }
}

/// Minimal polynomial of zeta_11 + zeta_11^{-1}, via exact arithmetic in
/// the 11th cyclotomic field (oracle for the c = -2 quintic).
pub fn minpoly_zeta11_plus_inverse() -> QPoly {
    let phi11 = QPoly::new(vec![Rat::one(); 11]);
    // polynomials in an outer variable with coefficients in Q[x]/Phi11
    let mut acc: Vec<QPoly> = vec![QPoly::from_i64(&[1])];
    for i in 1..=5u32 {
        let mut root = QPoly::monomial(&Rat::zero(), i as usize);
        root = root.add(&QPoly::monomial(&Rat::zero(), (11 - i) as usize));
        let root = root.rem(&phi11);
        let mut next = vec![QPoly::zero(); acc.len() + 1];
        for (k, coeff) in acc.iter().enumerate() {
            next[k + 1] = next[k + 1].add(coeff);
            next[k] = next[k].sub(&coeff.mul(&root).rem(&phi11));
        }
        acc = next;
    }
    let coeffs: Vec<Rat> = acc
        .iter()
        .map(|c| {
            let r = c.rem(&phi11);
            assert!(
                r.degree().map_or(true, |d| d == 0),
                "coefficient not rational"
            );
            r.coeff_or_zero(0, &Rat::zero())
        })
        .collect();
    QPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_table_matches_printed_values() {
        let expect_c0 = [0, 0, 0, 0, 2, 4, 16, 32, 79, 162];
        let expect_c1 = [0, 0, 0, 2, 14, 34, 124, 285, 745, 1690];
        for n in 1..=10u64 {
            assert_eq!(genus_c0(n).unwrap(), expect_c0[n as usize - 1], "c0({n})");
            assert_eq!(genus_c1(n).unwrap(), expect_c1[n as usize - 1], "c1({n})");
        }
    }

    #[test]
    fn nu2_values_and_sum() {
        assert_eq!(nu2(1), 2);
        assert_eq!(nu2(5), 30);
        for n in 1..=12u64 {
            let s: i64 = divisors_u64(n).into_iter().map(nu2).sum();
            assert_eq!(s, 1i64 << n, "N = {n}");
        }
    }

    #[test]
    fn small_dynatomic_polys() {
        let p1 = dynatomic_poly(1).unwrap();
        assert_eq!(
            p1,
            BiPoly::from_i64_terms(&[(2, 0, 1), (1, 0, -1), (0, 1, 1)])
        );
        let p2 = dynatomic_poly(2).unwrap();
        assert_eq!(
            p2,
            BiPoly::from_i64_terms(&[(2, 0, 1), (1, 0, 1), (0, 1, 1), (0, 0, 1)])
        );
        let p5 = dynatomic_poly(5).unwrap();
        assert_eq!(p5.deg_z(), 30);
    }

    #[test]
    fn phi_product_small() {
        for n in 1..=6u64 {
            assert!(phi_product_identity(n).unwrap(), "N = {n}");
        }
    }

    #[test]
    fn phi5_vanishes_on_the_cyclotomic_cycle() {
        let minpoly = minpoly_zeta11_plus_inverse();
        assert_eq!(minpoly, QPoly::from_i64(&[1, 3, -3, -4, 1, 1]));
        let p5_at_m2 = dynatomic_poly(5).unwrap().eval_c(&rat(-2));
        assert!(p5_at_m2.rem(&minpoly).is_zero());
    }

    #[test]
    fn stable_cycles_of_power_maps() {
        let sq = power_map_stable_cycles(PowerMapKind::Square, 30);
        assert!(sq.contains(&(9, 6)));
        assert!(sq.contains(&(27, 18)));
        assert!(sq.iter().all(|&(n, _)| is_odd_prime_power(n)));
        let sm2 = power_map_stable_cycles(PowerMapKind::SquareMinusTwo, 30);
        assert!(sm2.contains(&(11, 5)));
    }

    #[test]
    fn tau_fixture_coefficients() {
        let t5 = tau5();
        assert_eq!(t5.coeff(6, 0), rat(1));
        assert_eq!(t5.coeff(0, 3), rat(9));
        let t6 = tau6();
        assert_eq!(t6.coeff(9, 0), rat(1));
        assert_eq!(t6.coeff(8, 0), rat(-1));
        assert!(tau_fixture(7).is_err());
    }
}
