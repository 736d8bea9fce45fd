//! Certified complex root enclosures.
//!
//! Approximations come from float Durand-Kerner iteration plus dyadic
//! Newton polishing; certification is exact: the roots of a monic p lie in
//! the Gerschgorin disks of the Lagrange companion matrix
//! diag(z_i) - W e^T, i.e. disks centered at z_i - W_i of radius
//! (n-1)|W_i|, with W_i = p(z_i) / prod_{j != i} (z_i - z_j).  Pairwise
//! disjoint disks each contain exactly one root.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::num::Rat;
use super::poly::QPoly;
use crate::{Error, Result};

/// Complex number with exact rational parts.
#[derive(Clone, Debug)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        CRat { re, im }
    }
    pub fn zero() -> Self {
        CRat {
            re: Rat::zero(),
            im: Rat::zero(),
        }
    }
    pub fn add(&self, o: &CRat) -> CRat {
        CRat::new(&self.re + &o.re, &self.im + &o.im)
    }
    pub fn sub(&self, o: &CRat) -> CRat {
        CRat::new(&self.re - &o.re, &self.im - &o.im)
    }
    pub fn mul(&self, o: &CRat) -> CRat {
        CRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    pub fn inv(&self) -> CRat {
        let n = &self.re * &self.re + &self.im * &self.im;
        CRat::new(&self.re / &n, -(&self.im / &n))
    }
    pub fn norm2(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
    /// |z| <= |re| + |im| (exact upper bound avoiding square roots).
    pub fn abs_upper(&self) -> Rat {
        self.re.abs() + self.im.abs()
    }
    /// Round both parts to denominator 2^bits.
    pub fn round_dyadic(&self, bits: u32) -> CRat {
        CRat::new(round_dyadic(&self.re, bits), round_dyadic(&self.im, bits))
    }
}

fn round_dyadic(x: &Rat, bits: u32) -> Rat {
    let scale = BigInt::one() << bits;
    let scaled = x * Rat::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    Rat::new(rounded, scale)
}

/// Closed disk with exact rational center and radius.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: CRat,
    pub radius: Rat,
}

impl Ball {
    pub fn exact(c: CRat) -> Ball {
        Ball {
            center: c,
            radius: Rat::zero(),
        }
    }
    pub fn add(&self, o: &Ball) -> Ball {
        Ball {
            center: self.center.add(&o.center),
            radius: &self.radius + &o.radius,
        }
    }
    pub fn mul(&self, o: &Ball) -> Ball {
        let r = &self.center.abs_upper() * &o.radius
            + &o.center.abs_upper() * &self.radius
            + &self.radius * &o.radius;
        Ball {
            center: self.center.mul(&o.center),
            radius: r,
        }
    }
    pub fn neg(&self) -> Ball {
        Ball {
            center: CRat::new(-self.center.re.clone(), -self.center.im.clone()),
            radius: self.radius.clone(),
        }
    }
    /// Compress exact rational data, padding the radius by the rounding
    /// error; keeps the representation small through long products.
    pub fn round(&self, bits: u32) -> Ball {
        let c = self.center.round_dyadic(bits);
        let err = c.sub(&self.center).abs_upper();
        Ball {
            center: c,
            radius: round_up(&(&self.radius + &err), bits),
        }
    }
    /// The unique integer contained in the ball, if exactly one exists
    /// (checking the real line and requiring |im| <= radius).
    pub fn unique_integer(&self) -> Option<BigInt> {
        if self.center.im.abs() > self.radius {
            return None;
        }
        let lo = &self.center.re - &self.radius;
        let hi = &self.center.re + &self.radius;
        let n = self.center.re.round().to_integer();
        let nr = Rat::from_integer(n.clone());
        if nr >= lo && nr <= hi {
            let prev = Rat::from_integer(&n - 1);
            let next = Rat::from_integer(&n + 1);
            if prev < lo && next > hi {
                return Some(n);
            }
        }
        None
    }
}

fn round_up(x: &Rat, bits: u32) -> Rat {
    let scale = BigInt::one() << bits;
    let scaled = x * Rat::from_integer(scale.clone());
    let c = scaled.ceil().to_integer();
    Rat::new(c, scale)
}

/// Certified enclosures of all complex roots of a squarefree polynomial.
pub struct RootEnclosures {
    pub balls: Vec<Ball>,
}

/// float Durand-Kerner to seed the dyadic Newton polishing.
fn durand_kerner_f64(coeffs: &[f64]) -> Vec<(f64, f64)> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = 1.0
        + monic[..n]
            .iter()
            .fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            (0.7 * radius * ang.cos(), 0.7 * radius * ang.sin())
        })
        .collect();
    let eval = |x: (f64, f64)| -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for &c in monic.iter().rev() {
            acc = (acc.0 * x.0 - acc.1 * x.1 + c, acc.0 * x.1 + acc.1 * x.0);
        }
        acc
    };
    for _ in 0..200 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut denom = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    let d = (z[i].0 - z[j].0, z[i].1 - z[j].1);
                    denom = (denom.0 * d.0 - denom.1 * d.1, denom.0 * d.1 + denom.1 * d.0);
                }
            }
            let p = eval(z[i]);
            let dn = denom.0 * denom.0 + denom.1 * denom.1;
            if dn == 0.0 {
                continue;
            }
            let w = (
                (p.0 * denom.0 + p.1 * denom.1) / dn,
                (p.1 * denom.0 - p.0 * denom.1) / dn,
            );
            z[i] = (z[i].0 - w.0, z[i].1 - w.1);
            moved = moved.max(w.0.abs() + w.1.abs());
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

impl RootEnclosures {
    /// Compute disjoint certified enclosures; `bits` is the working dyadic
    /// precision, doubled up to 4 times on failure.
    pub fn compute(p: &QPoly, mut bits: u32) -> Result<RootEnclosures> {
        if !p.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let n = p.deg();
        let coeffs_f64: Vec<f64> = p
            .c
            .iter()
            .map(|c| c.numer().to_f64().unwrap_or(f64::MAX) / c.denom().to_f64().unwrap_or(1.0))
            .collect();
        let seeds = durand_kerner_f64(&coeffs_f64);
        let monic = p.monic();
        let dmonic = monic.derivative();
        for _attempt in 0..5 {
            // dyadic Newton polishing
            let mut zs: Vec<CRat> = seeds
                .iter()
                .map(|&(re, im)| {
                    CRat::new(
                        Rat::from_float(re).unwrap_or_else(Rat::zero),
                        Rat::from_float(im).unwrap_or_else(Rat::zero),
                    )
                })
                .collect();
            let steps = 3 + (bits / 40);
            for _ in 0..steps {
                for z in zs.iter_mut() {
                    let pv = eval_crat(&monic, z);
                    let dv = eval_crat(&dmonic, z);
                    if dv.norm2().is_zero() {
                        continue;
                    }
                    let corr = pv.mul(&dv.inv());
                    *z = z.sub(&corr).round_dyadic(bits);
                }
            }
            // exact Weierstrass corrections and Gerschgorin disks
            let mut balls = Vec::with_capacity(n);
            let mut ok = true;
            for i in 0..n {
                let mut denom = CRat::new(Rat::one(), Rat::zero());
                for j in 0..n {
                    if i != j {
                        denom = denom.mul(&zs[i].sub(&zs[j]));
                    }
                }
                if denom.norm2().is_zero() {
                    ok = false;
                    break;
                }
                let w = eval_crat(&monic, &zs[i]).mul(&denom.inv());
                let center = zs[i].sub(&w);
                let radius = w.abs_upper() * Rat::from_integer(BigInt::from((n - 1).max(1)));
                balls.push(
                    Ball {
                        center,
                        radius,
                    }
                    .round(bits),
                );
            }
            if ok && disks_disjoint(&balls) {
                return Ok(RootEnclosures { balls });
            }
            bits *= 2;
        }
        Err(Error::Precision("root enclosure refinement stalled".into()))
    }
}

fn eval_crat(p: &QPoly, z: &CRat) -> CRat {
    let mut acc = CRat::zero();
    for c in p.c.iter().rev() {
        acc = acc.mul(z).add(&CRat::new(c.clone(), Rat::zero()));
    }
    acc
}

fn disks_disjoint(balls: &[Ball]) -> bool {
    for i in 0..balls.len() {
        for j in (i + 1)..balls.len() {
            let d = balls[i].center.sub(&balls[j].center);
            let rr = &balls[i].radius + &balls[j].radius;
            // |d| > r1 + r2, certified via |d|^2 > (r1+r2)^2 exactly
            if d.norm2() <= &rr * &rr {
                return false;
            }
        }
    }
    true
}

/// Expand prod (x - b_i) over balls into ball coefficients (ascending).
pub fn poly_from_ball_roots(roots: &[Ball], bits: u32) -> Vec<Ball> {
    let mut coeffs = vec![Ball::exact(CRat::new(Rat::one(), Rat::zero()))];
    for r in roots {
        let neg = r.neg();
        let mut next = vec![Ball::exact(CRat::zero()); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].add(&c.mul(&neg));
        }
        coeffs = next.into_iter().map(|b| b.round(bits)).collect();
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::num::rat;

    fn sextic() -> QPoly {
        QPoly::from_i64(&[1, 6, 5, 22, 22, 8, 1])
    }

    #[test]
    fn enclosures_are_disjoint_and_recover_disc() {
        let f = sextic();
        let enc = RootEnclosures::compute(&f, 192).unwrap();
        assert_eq!(enc.balls.len(), 6);
        // disc via prod_{i<j} (z_i - z_j)^2 must trap the Sylvester value
        let mut prod = Ball::exact(CRat::new(Rat::one(), Rat::zero()));
        for i in 0..6 {
            for j in (i + 1)..6 {
                let d = enc.balls[i].center.sub(&enc.balls[j].center);
                let db = Ball {
                    center: d,
                    radius: &enc.balls[i].radius + &enc.balls[j].radius,
                };
                prod = prod.mul(&db.mul(&db)).round(192);
            }
        }
        let n = prod.unique_integer().expect("disc interval must isolate an integer");
        assert_eq!(Rat::from_integer(n), f.discriminant().unwrap());
    }

    #[test]
    fn quadratic_roots() {
        let p = QPoly::from_i64(&[-2, 0, 1]); // x^2 - 2
        let enc = RootEnclosures::compute(&p, 128).unwrap();
        let sum = enc.balls[0].center.re.clone() + enc.balls[1].center.re.clone();
        assert!(sum.abs() < crate::exact::num::ratio(1, 1000));
        let _ = rat(0);
    }
}
