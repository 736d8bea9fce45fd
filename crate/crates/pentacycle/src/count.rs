//! Point counts of the sextic model over small fields, Jacobian orders,
//! Frobenius characteristic polynomials, the torsion bound, and the
//! Hasse-interval screen against split Jacobians.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::exact::num::{powmod, rat_mod_pk, rat_val_p, Rat};
use crate::exact::poly::QPoly;
use crate::exact::{Fp, Fp2};
use crate::model::SexticCurve;
use crate::{Error, Result};

fn good_reduction(curve: &SexticCurve, p: u64) -> Result<()> {
    let disc = curve.poly().discriminant()?;
    if Zero::is_zero(&disc) || rat_val_p(&disc, p) != 0 {
        return Err(Error::BadReduction(p));
    }
    Ok(())
}

/// #C(F_q) for q = p or p^2: affine points by the quadratic character,
/// plus the two rational points at infinity (the leading coefficient is a
/// square in every field).
pub fn point_count(curve: &SexticCurve, p: u64, square: bool) -> Result<u64> {
    if p == 2 {
        return Err(Error::BadReduction(2));
    }
    good_reduction(curve, p)?;
    let mut count = 2; // infinity
    if !square {
        let f: Vec<u64> = curve.f.iter().map(|c| rat_mod_pk(c, p, 1)).collect();
        for x in 0..p {
            let mut v = 0u64;
            for c in f.iter().rev() {
                v = (crate::exact::num::mulmod(v, x, p) + c) % p;
            }
            if v == 0 {
                count += 1;
            } else if powmod(v, (p - 1) / 2, p) == 1 {
                count += 2;
            }
        }
    } else {
        let nr = Fp2::nonresidue(p);
        let f: Vec<Fp2> = curve
            .f
            .iter()
            .map(|c| Fp2::base(rat_mod_pk(c, p, 1), p, nr))
            .collect();
        let q = p * p;
        for a in 0..p {
            for b in 0..p {
                let x = Fp2 { a, b, p, nr };
                let mut v = Fp2::base(0, p, nr);
                for c in f.iter().rev() {
                    v = crate::exact::Field::add(&crate::exact::Field::mul(&v, &x), c);
                }
                if crate::exact::Field::is_zero(&v) {
                    count += 1;
                } else if crate::exact::Field::is_zero(
                    &crate::exact::Field::sub(&v.pow((q - 1) / 2), &Fp2::base(1, p, nr)),
                ) {
                    count += 2;
                }
            }
        }
    }
    Ok(count)
}

/// #J(F_p) = #C(F_{p^2})/2 + #C(F_p)^2/2 - p.
pub fn jacobian_order(curve: &SexticCurve, p: u64) -> Result<u64> {
    let n1 = point_count(curve, p, false)?;
    let n2 = point_count(curve, p, true)?;
    Ok((n2 + n1 * n1) / 2 - p)
}

#[derive(Debug, Clone, Serialize)]
pub struct FrobData {
    pub p: u64,
    pub count_p: u64,
    pub count_p2: u64,
    pub t: i64,
    pub s: i64,
    /// X^4 - t X^3 + s X^2 - p t X + p^2, ascending coefficients.
    pub charpoly: Vec<i64>,
}

impl FrobData {
    pub fn charpoly_qpoly(&self) -> QPoly {
        QPoly::new(
            self.charpoly
                .iter()
                .map(|&c| Rat::from_integer(BigInt::from(c)))
                .collect(),
        )
    }
}

/// Frobenius characteristic polynomial from the two point counts, with the
/// Weil bound and the functional equation checked.
pub fn frobenius_charpoly(curve: &SexticCurve, p: u64) -> Result<FrobData> {
    let n1 = point_count(curve, p, false)?;
    let n2 = point_count(curve, p, true)?;
    let t = p as i64 + 1 - n1 as i64;
    let s = ((n1 * n1 + n2) / 2) as i64 + p as i64 - ((p + 1) * n1) as i64;
    let charpoly = vec![(p * p) as i64, -(p as i64) * t, s, -t, 1];
    let data = FrobData {
        p,
        count_p: n1,
        count_p2: n2,
        t,
        s,
        charpoly,
    };
    // Weil bounds
    let tt = (t as f64).abs();
    if tt > 4.0 * (p as f64).sqrt() {
        return Err(Error::Certificate(format!("Weil bound violated at {p}")));
    }
    for (q, n) in [(p, n1), (p * p, n2)] {
        let dev = n as f64 - (q as f64 + 1.0);
        if dev.abs() > 4.0 * (q as f64).sqrt() + 1e-9 {
            return Err(Error::Certificate(format!("Weil bound violated at q={q}")));
        }
    }
    // functional equation X^4 charpoly(p/X) / p^2 = charpoly(X)
    let c = &data.charpoly;
    if c[0] != (p * p) as i64 || c[1] != (p as i64) * c[3] {
        return Err(Error::Certificate("functional equation broken".into()));
    }
    // charpoly(1) = #J(F_p)
    let at1: i64 = c.iter().sum();
    if at1 != jacobian_order(curve, p)? as i64 {
        return Err(Error::Certificate(
            "charpoly(1) does not match the Jacobian order".into(),
        ));
    }
    Ok(data)
}

/// gcd of Jacobian orders: an upper bound for the rational torsion by
/// injectivity of reduction.
pub fn torsion_bound(curve: &SexticCurve, primes: &[u64]) -> Result<u64> {
    if primes.is_empty() {
        return Err(Error::Precondition("empty prime list".into()));
    }
    let mut g = 0u64;
    for &p in primes {
        g = crate::exact::num::gcd_u64(g, jacobian_order(curve, p)?);
    }
    Ok(g)
}

/// True when #J(F_p) = n1 * n2 with both factors inside the Hasse interval
/// [p + 1 - 2 sqrt(p), p + 1 + 2 sqrt(p)]; false certifies that J cannot
/// split into elliptic curves compatibly with reduction at p.
pub fn elliptic_split_screen(curve: &SexticCurve, p: u64) -> Result<bool> {
    let n = jacobian_order(curve, p)?;
    let in_hasse = |m: u64| {
        // (m - p - 1)^2 <= 4p, exact in integers
        let d = m as i64 - p as i64 - 1;
        d * d <= 4 * p as i64
    };
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 && in_hasse(d) && in_hasse(n / d) {
            return Ok(true);
        }
        d += 1;
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve() -> SexticCurve {
        SexticCurve::pentacycle_curve()
    }

    #[test]
    fn point_counts_small() {
        assert_eq!(point_count(&curve(), 3, false).unwrap(), 4);
        assert_eq!(point_count(&curve(), 3, true).unwrap(), 8);
    }

    #[test]
    fn jacobian_orders() {
        assert_eq!(jacobian_order(&curve(), 3).unwrap(), 9);
        assert_eq!(jacobian_order(&curve(), 5).unwrap(), 41);
        // p = 7: charpoly evaluates to 70 at 1
        assert_eq!(jacobian_order(&curve(), 7).unwrap(), 70);
    }

    #[test]
    fn frobenius_charpolys() {
        let f3 = frobenius_charpoly(&curve(), 3).unwrap();
        assert_eq!(f3.charpoly, vec![9, 0, -1, 0, 1]);
        let f5 = frobenius_charpoly(&curve(), 5).unwrap();
        assert_eq!(f5.charpoly, vec![25, 5, 9, 1, 1]);
        let f7 = frobenius_charpoly(&curve(), 7).unwrap();
        assert_eq!(f7.charpoly, vec![49, 14, 4, 2, 1]);
    }

    #[test]
    fn charpoly_consistency_up_to_23() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let d = frobenius_charpoly(&curve(), p).unwrap();
            let at1: i64 = d.charpoly.iter().sum();
            assert_eq!(at1, jacobian_order(&curve(), p).unwrap() as i64, "p={p}");
            assert!(d.count_p2 >= d.count_p);
        }
    }

    #[test]
    fn torsion_is_trivial() {
        assert_eq!(torsion_bound(&curve(), &[3, 5]).unwrap(), 1);
        assert_eq!(torsion_bound(&curve(), &[3]).unwrap(), 9);
        assert_eq!(torsion_bound(&curve(), &[5]).unwrap(), 41);
        assert!(torsion_bound(&curve(), &[]).is_err());
    }

    #[test]
    fn split_screen() {
        assert!(!elliptic_split_screen(&curve(), 5).unwrap());
        assert!(elliptic_split_screen(&curve(), 3).unwrap());
        // p = 7: 70 = 7 * 10 with both factors inside [2.71, 13.29]
        assert!(elliptic_split_screen(&curve(), 7).unwrap());
    }

    #[test]
    fn bad_reduction_rejected() {
        assert!(point_count(&curve(), 3701, false).is_err());
        assert!(point_count(&curve(), 2, false).is_err());
    }
}
