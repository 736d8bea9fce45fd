//! Polynomial gcd over Q[c]/(m(c)) with dynamic splitting of the modulus
//! (the D5 / dynamic-evaluation trick): whenever a leading coefficient is a
//! zero divisor the modulus splits and both branches are pursued.  This
//! certifies common-root structure over every root of m without factoring
//! m into irreducibles.

use super::num::Rat;
use super::poly::QPoly;
use num_traits::One;

/// Polynomial in z with coefficients in Q[c]/(m): ascending, reduced mod m.
pub type ZPolyOverQuot = Vec<QPoly>;

fn reduce(coeffs: &[QPoly], m: &QPoly) -> ZPolyOverQuot {
    let mut out: Vec<QPoly> = coeffs.iter().map(|c| c.rem(m)).collect();
    while out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    out
}

fn inv_mod(x: &QPoly, m: &QPoly) -> Option<QPoly> {
    let (g, s, _) = x.xgcd(m);
    if g.degree() == Some(0) {
        Some(s.rem(m))
    } else {
        None
    }
}

/// Branches of gcd computation: (branch modulus, monic gcd over the branch).
pub fn quotient_gcd(m: &QPoly, a: &[QPoly], b: &[QPoly]) -> Vec<(QPoly, ZPolyOverQuot)> {
    let mut results = Vec::new();
    let mut stack = vec![(m.monic(), a.to_vec(), b.to_vec())];
    while let Some((m, a, b)) = stack.pop() {
        let a = reduce(&a, &m);
        let b = reduce(&b, &m);
        if b.is_empty() {
            match monicize(&m, &a) {
                Ok(g) => results.push((m, g)),
                Err((d1, d2)) => {
                    stack.push((d1, a.clone(), b.clone()));
                    stack.push((d2, a, b));
                }
            }
            continue;
        }
        if a.len() < b.len() {
            stack.push((m, b, a));
            continue;
        }
        // examine the leading coefficient of b
        let lead = b.last().unwrap();
        let d = lead.gcd(&m);
        if d.degree() == Some(0) {
            // invertible: one pseudo-division step
            let linv = inv_mod(lead, &m).expect("unit leading coefficient");
            let da = a.len() - 1;
            let db = b.len() - 1;
            let mut r = a.clone();
            for i in (db..=da).rev() {
                if i >= r.len() {
                    continue;
                }
                if r[i].is_zero() {
                    continue;
                }
                let q = r[i].mul(&linv).rem(&m);
                for (j, bc) in b.iter().enumerate() {
                    let t = q.mul(bc).rem(&m);
                    r[i - db + j] = r[i - db + j].sub(&t);
                }
            }
            let r = reduce(&r, &m);
            stack.push((m, b, r));
        } else if d.deg() == m.deg() {
            // leading coefficient is 0 mod m: drop it
            let mut b2 = b.clone();
            b2.pop();
            stack.push((m, a, b2));
        } else {
            // zero divisor: split the modulus
            let m2 = m.div_rem(&d).0.monic();
            stack.push((d.monic(), a.clone(), b.clone()));
            stack.push((m2, a, b));
        }
    }
    results
}

/// Make the gcd monic over the branch; on a zero-divisor leading
/// coefficient, report the split (d, m/d).
fn monicize(m: &QPoly, g: &[QPoly]) -> Result<ZPolyOverQuot, (QPoly, QPoly)> {
    let g = reduce(g, m);
    if g.is_empty() {
        return Ok(g);
    }
    let lead = g.last().unwrap();
    let d = lead.gcd(m);
    if d.degree() == Some(0) {
        let linv = inv_mod(lead, m).unwrap();
        Ok(g.iter().map(|c| c.mul(&linv).rem(m)).collect())
    } else if d.deg() == m.deg() {
        let mut g2 = g.clone();
        g2.pop();
        monicize(m, &g2)
    } else {
        let m2 = m.div_rem(&d).0.monic();
        Err((d.monic(), m2))
    }
}

/// Convenience: z-polynomial with rational coefficients viewed over the
/// quotient.
pub fn lift_scalar_poly(p: &QPoly) -> ZPolyOverQuot {
    p.c.iter()
        .map(|v| QPoly::new(vec![v.clone()]))
        .collect()
}

/// Reduce a bivariate polynomial (z, c) to a z-polynomial over Q[c]/(m).
pub fn bipoly_over_quot(b: &crate::exact::BiPoly, m: &QPoly) -> ZPolyOverQuot {
    reduce(&b.z_coefficients(), m)
}

#[allow(dead_code)]
fn one() -> Rat {
    Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::num::rat;

    #[test]
    fn gcd_splits_on_zero_divisor() {
        // m = c(c-1); over c=0 the gcd of (z - c, z) is z, over c=1 it is 1
        let m = QPoly::from_i64(&[0, -1, 1]);
        let a = vec![
            QPoly::from_i64(&[0, -1]), // -c
            QPoly::from_i64(&[1]),     // 1
        ]; // z - c
        let b = vec![QPoly::zero(), QPoly::from_i64(&[1])]; // z
        let branches = quotient_gcd(&m, &a, &b);
        assert_eq!(branches.len(), 2);
        for (bm, g) in branches {
            if bm == QPoly::from_i64(&[0, 1]).monic() {
                // c = 0: gcd(z - 0, z) = z
                assert_eq!(g.len(), 2);
            } else {
                // c = 1: gcd(z - 1, z) = 1
                assert_eq!(g.len(), 1);
            }
        }
    }

    #[test]
    fn gcd_over_irreducible_modulus() {
        // m = c^2 - 2; gcd(z^2 - c^2, z - c) = z - c over the quotient field
        let m = QPoly::from_i64(&[-2, 0, 1]);
        let a = vec![
            QPoly::from_i64(&[0, 0, -1]), // -c^2
            QPoly::zero(),
            QPoly::from_i64(&[1]),
        ];
        let b = vec![QPoly::from_i64(&[0, -1]), QPoly::from_i64(&[1])];
        let branches = quotient_gcd(&m, &a, &b);
        assert_eq!(branches.len(), 1);
        let (bm, g) = &branches[0];
        assert_eq!(bm, &m.monic());
        assert_eq!(g.len(), 2); // degree 1 in z
        assert_eq!(g[1], QPoly::from_i64(&[1]));
        assert_eq!(g[0], QPoly::from_i64(&[0, -1]));
        let _ = rat(0);
    }
}
