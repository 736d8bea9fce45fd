//! The bounded-height scan of the 6-cycle trace curve and the quintic
//! fields generated by the stable 5-cycles.
//!
//! The scan solves tau_6(x, c) = 0 for one rational coordinate at a time.
//! Rational roots of the specialized integer polynomials are found by a
//! big-prime method: roots mod pi, Newton lifts mod pi^3, rational
//! reconstruction, and exact verification.  Completeness holds because a
//! rational root p/q has q dividing the leading coefficient (which the
//! prime is chosen not to divide), so it reduces to a simple root mod pi
//! once pi avoids the discriminant.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynatomic::{dynatomic_poly, tau5, tau6};
use crate::exact::intfactor;
use crate::exact::num::{gcd_u64, mulmod, rat, Rat};
use crate::exact::poly::{ddf_pattern, is_irreducible_mod_p, roots_mod_p, QPoly};
use crate::exact::Fp;
use crate::{Error, Result};

// primes just under 2^62 so products fit in u128 arithmetic
const SCAN_PRIMES: [u64; 6] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387731,
    4611686018427387709,
];

/// Rational roots of an integer polynomial via the big-prime method.
/// Returns the set of roots (no multiplicities).
pub fn rational_root_set(coeffs: &[BigInt]) -> Vec<Rat> {
    let mut c: Vec<BigInt> = coeffs.to_vec();
    while c.last().map_or(false, |x| x.is_zero()) {
        c.pop();
    }
    let mut out = Vec::new();
    if c.is_empty() {
        panic!("zero polynomial in the scan");
    }
    let mut low = 0usize;
    while c[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        out.push(Rat::zero());
        c.drain(..low);
    }
    if c.len() <= 1 {
        return out;
    }
    let qpoly = QPoly::new(c.iter().map(|v| Rat::from_integer(v.clone())).collect());
    'prime: for &p in SCAN_PRIMES.iter() {
        let pb = BigInt::from(p);
        if (c.last().unwrap() % &pb).is_zero() {
            continue 'prime;
        }
        let fp: crate::exact::poly::Poly<Fp> = crate::exact::poly::Poly::new(
            c.iter()
                .map(|v| Fp::from_u64(v.mod_floor(&pb).to_u64().unwrap(), p))
                .collect(),
        );
        // simple roots only: pi must avoid the discriminant
        let deriv = fp.derivative();
        if deriv.is_zero() || fp.gcd(&deriv).deg() != 0 {
            continue 'prime;
        }
        let roots = roots_mod_p(&fp, p);
        let m3 = pb.pow(3);
        for r in roots {
            // two Newton lifts to mod pi^3
            let mut t = BigInt::from(r);
            for k in [2u32, 3] {
                let mk = pb.pow(k);
                let ft = eval_big(&c, &t, &mk);
                let dt = eval_big_deriv(&c, &t, &mk);
                let dinv = match modinv(&dt, &mk) {
                    Some(v) => v,
                    None => continue 'prime,
                };
                t = (&t - ft * dinv).mod_floor(&mk);
            }
            // balanced rational reconstruction mod pi^3
            if let Some((num, den)) = rational_reconstruct(&t, &m3) {
                let cand = Rat::new(num, den);
                if Zero::is_zero(&qpoly.eval(&cand)) {
                    out.push(cand);
                }
            }
        }
        out.sort();
        out.dedup();
        return out;
    }
    // all primes hit the discriminant: fall back to the squarefree part
    let sf = qpoly.squarefree_part();
    let (_, prim) = crate::exact::poly::content_primitive(&sf);
    let mut roots = rational_root_set(&prim);
    roots.extend(out);
    roots.sort();
    roots.dedup();
    roots
}

fn eval_big(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for v in c.iter().rev() {
        acc = (acc * x + v).mod_floor(m);
    }
    acc
}

fn eval_big_deriv(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for (i, v) in c.iter().enumerate().skip(1).rev() {
        acc = (acc * x + v * BigInt::from(i)).mod_floor(m);
    }
    acc
}

fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Balanced rational reconstruction: p/q = t mod m with |p|, q <= sqrt(m/2).
fn rational_reconstruct(t: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), t.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if s1.is_zero() || s1.abs() > bound {
        return None;
    }
    let (num, den) = if s1.is_negative() {
        (-r1, -s1)
    } else {
        (r1, s1)
    };
    if den.is_zero() {
        return None;
    }
    Some((num, den))
}

// ---------------------------------------------------------------------------
// the scan
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct Checkpoint {
    pub bound: i64,
    /// last completed numerator in the x-first direction, if any
    pub x_done: Option<i64>,
    /// last completed numerator in the c-first direction, if any
    pub c_done: Option<i64>,
    pub points: Vec<(String, String)>,
}

#[derive(Debug, Clone)]
pub struct ScanResult {
    pub points: Vec<(Rat, Rat)>,
    pub bound: i64,
    pub both_directions: bool,
}

impl ScanResult {
    pub fn points_as_strings(&self) -> Vec<(String, String)> {
        self.points
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }
}

/// tau6 coefficient grid: rows tau6[i][j] = coefficient of x^i c^j.
fn tau6_grid() -> [[i64; 4]; 10] {
    let t = tau6();
    let mut g = [[0i64; 4]; 10];
    for (&(i, j), v) in &t.terms {
        g[i as usize][j as usize] = v.to_integer().to_i64().unwrap();
    }
    g
}

/// Roots in c of tau6(r/s, c) (an integer cubic after clearing s^9).
fn roots_in_c(grid: &[[i64; 4]; 10], r: i64, s: i64) -> Vec<Rat> {
    // A_j = sum_i grid[i][j] r^i s^(9-i)
    let mut coeffs = vec![BigInt::zero(); 4];
    let rb = BigInt::from(r);
    let sb = BigInt::from(s);
    let mut rpow = vec![BigInt::one()];
    let mut spow = vec![BigInt::one()];
    for i in 1..=9usize {
        rpow.push(&rpow[i - 1] * &rb);
        spow.push(&spow[i - 1] * &sb);
    }
    for i in 0..10usize {
        for (j, cj) in coeffs.iter_mut().enumerate() {
            let g = grid[i][j];
            if g != 0 {
                *cj += BigInt::from(g) * &rpow[i] * &spow[9 - i];
            }
        }
    }
    rational_root_set(&coeffs)
}

/// Roots in x of tau6(x, r/s) (an integer nonic after clearing s^3).
fn roots_in_x(grid: &[[i64; 4]; 10], r: i64, s: i64) -> Vec<Rat> {
    let mut coeffs = vec![BigInt::zero(); 10];
    let rb = BigInt::from(r);
    let sb = BigInt::from(s);
    let mut rpow = vec![BigInt::one()];
    let mut spow = vec![BigInt::one()];
    for i in 1..=3usize {
        rpow.push(&rpow[i - 1] * &rb);
        spow.push(&spow[i - 1] * &sb);
    }
    for (i, ci) in coeffs.iter_mut().enumerate() {
        for j in 0..4usize {
            let g = grid[i][j];
            if g != 0 {
                *ci += BigInt::from(g) * &rpow[j] * &spow[3 - j];
            }
        }
    }
    rational_root_set(&coeffs)
}

/// Scan both directions for rational points of tau6 with one coordinate of
/// height at most `bound`; optionally resumable through a checkpoint file.
pub fn tau6_scan(bound: i64, jobs: usize, checkpoint: Option<&Path>) -> Result<ScanResult> {
    assert!(bound >= 1);
    let grid = tau6_grid();
    let tau = tau6();
    let mut state: Checkpoint = match checkpoint {
        Some(p) if p.exists() => {
            let s: Checkpoint = serde_json::from_str(&std::fs::read_to_string(p)?)?;
            if s.bound == bound {
                s
            } else {
                Checkpoint {
                    bound,
                    ..Default::default()
                }
            }
        }
        _ => Checkpoint {
            bound,
            ..Default::default()
        },
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let mut points: BTreeSet<(Rat, Rat)> = state
        .points
        .iter()
        .filter_map(|(a, b)| {
            Some((
                crate::exact::num::parse_rat(a)?,
                crate::exact::num::parse_rat(b)?,
            ))
        })
        .collect();

    let fractions = |r: i64, bound: i64| -> Vec<(i64, i64)> {
        if r == 0 {
            return vec![(0, 1)];
        }
        (1..=bound)
            .filter(|&s| gcd_u64(r.unsigned_abs(), s as u64) == 1)
            .map(|s| (r, s))
            .collect()
    };

    for direction in ["x", "c"] {
        let done = if direction == "x" {
            state.x_done
        } else {
            state.c_done
        };
        let start = done.map_or(-bound, |d| d + 1);
        let mut r = start;
        while r <= bound {
            let chunk_end = (r + 7).min(bound);
            let rs: Vec<i64> = (r..=chunk_end).collect();
            let found: Vec<(Rat, Rat)> = pool.install(|| {
                rs.par_iter()
                    .flat_map(|&rr| {
                        let mut local = Vec::new();
                        for (num, den) in fractions(rr, bound) {
                            if direction == "x" {
                                let x = Rat::new(BigInt::from(num), BigInt::from(den));
                                for c in roots_in_c(&grid, num, den) {
                                    local.push((x.clone(), c));
                                }
                            } else {
                                let c = Rat::new(BigInt::from(num), BigInt::from(den));
                                for x in roots_in_x(&grid, num, den) {
                                    local.push((x, c.clone()));
                                }
                            }
                        }
                        local
                    })
                    .collect()
            });
            for (x, c) in found {
                // exact re-substitution guard
                if !Zero::is_zero(&tau.eval(&x, &c)) {
                    return Err(Error::Certificate(format!(
                        "scan produced a non-root ({x}, {c})"
                    )));
                }
                points.insert((x, c));
            }
            r = chunk_end + 1;
            if direction == "x" {
                state.x_done = Some(chunk_end);
            } else {
                state.c_done = Some(chunk_end);
            }
            state.points = points
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect();
            if let Some(p) = checkpoint {
                let mut f = std::fs::File::create(p)?;
                f.write_all(serde_json::to_string(&state)?.as_bytes())?;
            }
        }
    }
    Ok(ScanResult {
        points: points.into_iter().collect(),
        bound,
        both_directions: true,
    })
}

/// Both directional hit-sets at a bound, sequentially (used by the
/// acceptance suite to assert the x-first/c-first symmetry).
pub fn directional_sets(
    bound: i64,
) -> Result<(BTreeSet<(Rat, Rat)>, BTreeSet<(Rat, Rat)>)> {
    let grid = tau6_grid();
    let tau = tau6();
    let mut from_x = BTreeSet::new();
    let mut from_c = BTreeSet::new();
    for r in -bound..=bound {
        let fracs: Vec<(i64, i64)> = if r == 0 {
            vec![(0, 1)]
        } else {
            (1..=bound)
                .filter(|&s| gcd_u64(r.unsigned_abs(), s as u64) == 1)
                .map(|s| (r, s))
                .collect()
        };
        for (num, den) in fracs {
            let x = Rat::new(BigInt::from(num), BigInt::from(den));
            for c in roots_in_c(&grid, num, den) {
                if !Zero::is_zero(&tau.eval(&x, &c)) {
                    return Err(Error::Certificate("non-root from the x direction".into()));
                }
                from_x.insert((x.clone(), c));
            }
            let c = Rat::new(BigInt::from(num), BigInt::from(den));
            for x2 in roots_in_x(&grid, num, den) {
                if !Zero::is_zero(&tau.eval(&x2, &c)) {
                    return Err(Error::Certificate("non-root from the c direction".into()));
                }
                from_c.insert((x2, c.clone()));
            }
        }
    }
    Ok((from_x, from_c))
}

/// The five points of the printed table.
pub fn expected_tau6_points() -> Vec<(Rat, Rat)> {
    vec![
        (rat(0), rat(0)),
        (rat(-1), rat(-2)),
        (rat(1), rat(-2)),
        (rat(-3), rat(-4)),
        (
            crate::exact::num::ratio(-7, 2),
            crate::exact::num::ratio(-71, 48),
        ),
    ]
}

// ---------------------------------------------------------------------------
// quintic cycle fields
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct CycleFieldReport {
    pub c: String,
    pub quintic: Vec<String>,
    pub poly_disc: String,
    pub disc_support_numerator: Vec<String>,
    pub disc_support_denominator: Vec<String>,
    pub ddf_patterns: Vec<(u64, Vec<usize>)>,
    pub conductor_fixture: u64,
    pub cyclic_signature: bool,
}

/// The quintic factor of Phi_5(z, c) carrying the stable 5-cycle: the gcd
/// of the specialized dynatomic polynomial with the trace polynomial
/// sum_i g^(i)(z) - x0, where x0 is the rational trace.
pub fn cycle_quintic(c: &Rat) -> Result<QPoly> {
    let tau = tau5();
    let tau_at_c = tau.eval_c(c);
    let trace_roots = tau_at_c.rational_roots();
    if trace_roots.is_empty() {
        return Err(Error::Precondition(format!(
            "tau5(., {c}) has no rational root"
        )));
    }
    let phi5 = dynatomic_poly(5)?.eval_c(c);
    for x0 in trace_roots {
        // sum_{i=0}^4 g^i(z) - x0 for g = z^2 + c
        let mut iter = QPoly::from_i64(&[0, 1]);
        let mut sum = iter.clone();
        for _ in 0..4 {
            iter = iter.mul(&iter).add(&QPoly::new(vec![c.clone()]));
            sum = sum.add(&iter);
        }
        sum = sum.sub(&QPoly::new(vec![x0.clone()]));
        let g = phi5.gcd(&sum);
        if g.degree() == Some(5) {
            if phi5.divides_exactly(&g).is_none() {
                return Err(Error::Certificate("quintic does not divide".into()));
            }
            // irreducibility witnessed by one inert prime <= 50
            let witness = (2u64..=50)
                .filter(|&p| intfactor::is_prime_u64(p))
                .find(|&p| reduces_irreducibly(&g, p));
            if witness.is_none() {
                return Err(Error::Certificate(
                    "no irreducibility witness below 50".into(),
                ));
            }
            return Ok(g);
        }
    }
    Err(Error::Certificate("no quintic gcd of degree 5".into()))
}

fn reduces_irreducibly(g: &QPoly, p: u64) -> bool {
    // denominators must be units mod p
    for c in &g.c {
        if (c.denom() % BigInt::from(p)).is_zero() {
            return false;
        }
    }
    is_irreducible_mod_p(&g.reduce_mod(p), p)
}

/// Rescale z -> z/l with l minimal so that l * (roots) are integral,
/// giving a monic integer model of the same field: l = prod p^(m_p) with
/// m_p = max_k ceil(v_p(denominator of the z^(deg-k) coefficient) / k).
fn integral_model(g: &QPoly) -> QPoly {
    let deg = g.deg();
    let mut den_primes: Vec<BigInt> = Vec::new();
    for c in &g.c {
        for p in intfactor::prime_support(c.denom()) {
            if !den_primes.contains(&p) {
                den_primes.push(p);
            }
        }
    }
    let mut l = BigInt::one();
    for p in den_primes {
        let pu = p.to_u64().unwrap();
        let mut m = 0u64;
        for (i, c) in g.c.iter().enumerate() {
            if i == deg {
                continue;
            }
            let k = (deg - i) as u64;
            let v = crate::exact::num::int_val_p(c.denom(), pu);
            m = m.max(v.div_ceil(k));
        }
        for _ in 0..m {
            l = &l * &p;
        }
    }
    let coeffs: Vec<Rat> = g
        .c
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut f = BigInt::one();
            for _ in 0..(deg - i) {
                f = &f * &l;
            }
            c * Rat::from_integer(f)
        })
        .collect();
    let out = QPoly::new(coeffs);
    debug_assert!(out.c.iter().all(|c| c.denom().is_one()));
    out
}

/// Splitting data of the quintic: polynomial discriminant with support,
/// distinct-degree patterns at primes up to 50, and the conductor fixture.
pub fn stable_cycle_field_report(c: &Rat) -> Result<CycleFieldReport> {
    let quintic = cycle_quintic(c)?;
    let disc = quintic.discriminant()?;
    let num_support = intfactor::prime_support(disc.numer());
    let den_support = intfactor::prime_support(disc.denom());
    let model = integral_model(&quintic);
    let model_disc = model.discriminant()?;
    let mut patterns = Vec::new();
    let mut cyclic = true;
    for p in (2u64..=50).filter(|&p| intfactor::is_prime_u64(p)) {
        let pat = if crate::exact::num::rat_val_p(&model_disc, p) == 0 {
            // the equation order is p-regular: plain distinct-degree data
            ddf_pattern(&model.reduce_mod(p).monic(), p)
        } else {
            // p divides the model discriminant: decide on the p-maximal
            // order (p may divide the index rather than ramify)
            let order = crate::exact::orders::POrder::p_maximal(&model, p)?;
            if order.disc_val_p() != 0 {
                continue; // genuinely ramified, not a signature prime
            }
            order.unramified_splitting()?
        };
        if !(pat == vec![5] || pat == vec![1, 1, 1, 1, 1]) {
            cyclic = false;
        }
        patterns.push((p, pat));
    }
    let conductor_fixture = conductor_fixture_for(c)?;
    Ok(CycleFieldReport {
        c: c.to_string(),
        quintic: quintic.c.iter().map(|x| x.to_string()).collect(),
        poly_disc: disc.to_string(),
        disc_support_numerator: num_support.iter().map(|x| x.to_string()).collect(),
        disc_support_denominator: den_support.iter().map(|x| x.to_string()).collect(),
        ddf_patterns: patterns,
        conductor_fixture,
        cyclic_signature: cyclic,
    })
}

fn conductor_fixture_for(c: &Rat) -> Result<u64> {
    let m2 = rat(-2);
    let m169 = crate::exact::num::ratio(-16, 9);
    let m649 = crate::exact::num::ratio(-64, 9);
    if *c == m2 {
        Ok(11)
    } else if *c == m169 {
        Ok(41)
    } else if *c == m649 {
        Ok(275)
    } else {
        Err(Error::Precondition(format!("no conductor fixture for c = {c}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::num::ratio;

    #[test]
    fn scan_small_bound_finds_all_five() {
        let res = tau6_scan(7, 1, None).unwrap();
        let mut expect = expected_tau6_points();
        expect.sort();
        assert_eq!(res.points, expect);
    }

    #[test]
    fn directions_and_union_at_small_bound() {
        // at bound 7 the x-first direction already finds all five points
        // (each printed point has its x-coordinate of height <= 7), while
        // the c-first direction finds the four whose c also has height
        // <= 7; set equality of the two directions holds at bound 100 and
        // is asserted by the acceptance suite
        let grid = tau6_grid();
        let mut from_x = BTreeSet::new();
        for r in -7i64..=7 {
            let fracs: Vec<(i64, i64)> = if r == 0 {
                vec![(0, 1)]
            } else {
                (1..=7)
                    .filter(|&s| gcd_u64(r.unsigned_abs(), s as u64) == 1)
                    .map(|s| (r, s))
                    .collect()
            };
            for (num, den) in fracs {
                let x = Rat::new(BigInt::from(num), BigInt::from(den));
                for c in roots_in_c(&grid, num, den) {
                    from_x.insert((x.clone(), c));
                }
            }
        }
        let expect: BTreeSet<(Rat, Rat)> = expected_tau6_points().into_iter().collect();
        assert_eq!(from_x, expect);
    }

    #[test]
    fn scan_checkpoint_roundtrip() {
        let dir = std::env::temp_dir().join("pentacycle_ckpt_test");
        let _ = std::fs::remove_file(&dir);
        let r1 = tau6_scan(3, 1, Some(&dir)).unwrap();
        // resume from the finished checkpoint: same result
        let r2 = tau6_scan(3, 1, Some(&dir)).unwrap();
        assert_eq!(r1.points, r2.points);
        let _ = std::fs::remove_file(&dir);
    }

    #[test]
    fn origin_is_on_the_curve() {
        assert!(Zero::is_zero(&tau6().eval(&rat(0), &rat(0))));
        // and (-7/2, -71/48) satisfies tau6 exactly
        assert!(Zero::is_zero(&tau6().eval(&ratio(-7, 2), &ratio(-71, 48))));
        // tau6(-7/2, c) has -71/48 among its roots
        let grid = tau6_grid();
        let roots = roots_in_c(&grid, -7, 2);
        assert!(roots.contains(&ratio(-71, 48)));
    }

    #[test]
    fn quintic_for_c_minus_two() {
        let q = cycle_quintic(&rat(-2)).unwrap();
        assert_eq!(q, crate::dynatomic::minpoly_zeta11_plus_inverse());
        // disc support {11}
        let rep = stable_cycle_field_report(&rat(-2)).unwrap();
        assert_eq!(rep.disc_support_numerator, vec!["11".to_string()]);
        assert!(rep.disc_support_denominator.is_empty());
        assert_eq!(rep.conductor_fixture, 11);
        assert!(rep.cyclic_signature);
    }

    #[test]
    fn quintic_for_minus_sixteen_ninths() {
        let rep = stable_cycle_field_report(&ratio(-16, 9)).unwrap();
        // polynomial disc support in {3, 41}, with 41 present
        assert!(rep
            .disc_support_numerator
            .iter()
            .any(|p| p == "41"));
        for p in &rep.disc_support_numerator {
            assert!(p == "3" || p == "41", "unexpected prime {p}");
        }
        assert_eq!(rep.conductor_fixture, 41);
        assert!(rep.cyclic_signature);
    }

    #[test]
    fn quintic_for_minus_sixtyfour_ninths() {
        let rep = stable_cycle_field_report(&ratio(-64, 9)).unwrap();
        assert_eq!(rep.conductor_fixture, 275);
        assert!(rep.cyclic_signature);
        // the prime 3 splits completely (visible on the 3-maximal order;
        // every equation order from the cycle points has index divisible
        // by 3)
        let pat = rep
            .ddf_patterns
            .iter()
            .find(|(p, _)| *p == 3)
            .map(|(_, pat)| pat.clone())
            .expect("pattern at 3");
        assert_eq!(pat, vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn quintic_divides_phi5_and_quotient_has_no_rational_quintic() {
        for c in [rat(-2), ratio(-16, 9), ratio(-64, 9)] {
            let q = cycle_quintic(&c).unwrap();
            let phi5 = dynatomic_poly(5).unwrap().eval_c(&c);
            let quot = phi5.divides_exactly(&q).unwrap();
            assert_eq!(quot.deg(), 25);
            assert!(quot.rational_roots().is_empty());
            // no further rational quintic factor with a rational trace:
            // every remaining rational trace root yields no quintic gcd
            let tau_at = tau5().eval_c(&c);
            for x0 in tau_at.rational_roots() {
                let mut iter = QPoly::from_i64(&[0, 1]);
                let mut sum = iter.clone();
                for _ in 0..4 {
                    iter = iter.mul(&iter).add(&QPoly::new(vec![c.clone()]));
                    sum = sum.add(&iter);
                }
                sum = sum.sub(&QPoly::new(vec![x0.clone()]));
                let g = quot.gcd(&sum);
                assert!(g.degree() != Some(5), "second rational quintic at {c}");
            }
        }
    }

    #[test]
    fn reconstruction_roundtrip() {
        // planted rational roots come back exactly
        let p = QPoly::new(vec![ratio(71, 48), rat(1)])
            .mul(&QPoly::from_i64(&[3, 0, 1]))
            .mul(&QPoly::from_i64(&[7, 5]));
        let (_, prim) = crate::exact::poly::content_primitive(&p);
        let roots = rational_root_set(&prim);
        assert!(roots.contains(&ratio(-71, 48)));
        assert!(roots.contains(&ratio(-7, 5)));
        assert_eq!(roots.len(), 2);
    }
}
