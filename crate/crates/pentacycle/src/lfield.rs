//! The sextic algebra L = Q[T]/(f(T)) and its completions at 2 and 3701:
//! element arithmetic, norms, the table of distinguished elements, a
//! 2-maximal order by radical/multiplier saturation, Hensel-lifted local
//! factorizations, valuations, residues, and square-class tests in
//! L_p^* / L_p^{*2} Q_p^*.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::num::{int_val_p, legendre, parse_rat, rat, rat_val_p, Rat};
use crate::exact::poly::{is_irreducible_mod_p, roots_mod_p, QPoly};
use crate::model::SexticCurve;
use crate::{Error, Result};

/// Element of L, represented by its reduction of degree <= 5.
#[derive(Clone, Debug, PartialEq)]
pub struct LElem {
    pub rep: QPoly,
}

/// The algebra context.
pub struct LField {
    pub f: QPoly,
}

impl LField {
    pub fn new() -> Self {
        let f = SexticCurve::pentacycle_curve().poly();
        // irreducibility certificate: f is irreducible modulo some prime
        let p = (3..200)
            .filter(|&p| crate::exact::intfactor::is_prime_u64(p))
            .find(|&p| {
                rat_val_p(&f.discriminant().unwrap(), p) == 0
                    && is_irreducible_mod_p(&f.reduce_mod(p), p)
            })
            .expect("an inert prime certifies irreducibility");
        debug_assert!(p > 0);
        LField { f }
    }

    pub fn elem(&self, rep: QPoly) -> LElem {
        LElem {
            rep: rep.rem(&self.f),
        }
    }

    pub fn from_coeffs(&self, c: &[Rat]) -> LElem {
        self.elem(QPoly::new(c.to_vec()))
    }

    pub fn t(&self) -> LElem {
        self.elem(QPoly::from_i64(&[0, 1]))
    }

    pub fn one(&self) -> LElem {
        self.elem(QPoly::from_i64(&[1]))
    }

    pub fn constant(&self, v: Rat) -> LElem {
        self.elem(QPoly::new(vec![v]))
    }

    pub fn add(&self, a: &LElem, b: &LElem) -> LElem {
        self.elem(a.rep.add(&b.rep))
    }

    pub fn sub(&self, a: &LElem, b: &LElem) -> LElem {
        self.elem(a.rep.sub(&b.rep))
    }

    pub fn mul(&self, a: &LElem, b: &LElem) -> LElem {
        self.elem(a.rep.mul(&b.rep))
    }

    pub fn neg(&self, a: &LElem) -> LElem {
        LElem { rep: a.rep.neg() }
    }

    pub fn inv(&self, a: &LElem) -> Result<LElem> {
        if a.rep.is_zero() {
            return Err(Error::ZeroPolynomial("inverse in L"));
        }
        let (g, s, _) = a.rep.xgcd(&self.f);
        if g.degree() != Some(0) {
            return Err(Error::Certificate(
                "zero divisor in L (f reducible?)".into(),
            ));
        }
        Ok(self.elem(s))
    }

    pub fn pow(&self, a: &LElem, e: i64) -> Result<LElem> {
        if e < 0 {
            return self.pow(&self.inv(a)?, -e);
        }
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Norm via the resultant against the monic modulus.
    pub fn norm(&self, a: &LElem) -> Result<Rat> {
        if a.rep.is_zero() {
            return Err(Error::ZeroPolynomial("norm"));
        }
        self.f.resultant(&a.rep)
    }

    /// Trace via power sums of the modulus.
    pub fn trace(&self, a: &LElem) -> Rat {
        let ps = self.power_sums(6);
        a.rep
            .c
            .iter()
            .enumerate()
            .map(|(k, c)| c * &ps[k])
            .sum()
    }

    /// Newton power sums p_0..p_n of the roots of f.
    pub fn power_sums(&self, n: usize) -> Vec<Rat> {
        let d = self.f.deg();
        let a = |i: usize| self.f.c[i].clone(); // ascending
        let mut p = vec![rat(0); n + 1];
        p[0] = rat(d as i64);
        for k in 1..=n {
            // p_k + sum_{i=1}^{k-1} a_{d-i} p_{k-i} + k a_{d-k} = 0 (k <= d)
            let mut s = Rat::zero();
            for i in 1..k.min(d + 1) {
                if k - i <= n {
                    s += a(d - i) * p[k - i].clone();
                }
            }
            if k <= d {
                s += rat(k as i64) * a(d - k);
            }
            p[k] = -s;
        }
        p
    }
}

impl Default for LField {
    fn default() -> Self {
        LField::new()
    }
}

// ---------------------------------------------------------------------------
// fixture elements
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixtureElement {
    pub name: String,
    /// ascending coefficients, exact fractions as strings
    pub poly: Vec<String>,
    pub norm: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementsFile {
    pub modulus: Vec<String>,
    pub elements: Vec<FixtureElement>,
}

/// The distinguished elements with verified norms.
pub struct DescentFixture {
    pub l: LField,
    pub by_name: BTreeMap<String, LElem>,
    pub norms: BTreeMap<String, Rat>,
}

pub const EMBEDDED_ELEMENTS_JSON: &str = include_str!("../tables/elements_of_L.json");

/// Locate the fixture file: $PENTACYCLE_FIXTURES/elements_of_L.json, then
/// ./tables/elements_of_L.json, then the embedded copy.
pub fn elements_json() -> String {
    if let Ok(dir) = std::env::var("PENTACYCLE_FIXTURES") {
        let p = std::path::Path::new(&dir).join("elements_of_L.json");
        if let Ok(s) = std::fs::read_to_string(p) {
            return s;
        }
    }
    if let Ok(s) = std::fs::read_to_string("tables/elements_of_L.json") {
        return s;
    }
    EMBEDDED_ELEMENTS_JSON.to_string()
}

pub fn load_fixture() -> Result<DescentFixture> {
    let file: ElementsFile = serde_json::from_str(&elements_json())?;
    let l = LField::new();
    let modulus: Vec<Rat> = file
        .modulus
        .iter()
        .map(|s| parse_rat(s).ok_or_else(|| Error::Fixture(format!("bad modulus entry {s}"))))
        .collect::<Result<_>>()?;
    if QPoly::new(modulus) != l.f {
        return Err(Error::Fixture("fixture modulus differs from f".into()));
    }
    let mut by_name = BTreeMap::new();
    let mut norms = BTreeMap::new();
    for e in &file.elements {
        let coeffs: Vec<Rat> = e
            .poly
            .iter()
            .map(|s| parse_rat(s).ok_or_else(|| Error::Fixture(format!("bad coefficient {s}"))))
            .collect::<Result<_>>()?;
        let el = l.from_coeffs(&coeffs);
        let claimed =
            parse_rat(&e.norm).ok_or_else(|| Error::Fixture(format!("bad norm {}", e.norm)))?;
        let computed = l.norm(&el)?;
        if computed != claimed {
            return Err(Error::Fixture(format!(
                "norm of {} is {computed}, claimed {claimed}",
                e.name
            )));
        }
        by_name.insert(e.name.clone(), el);
        norms.insert(e.name.clone(), claimed);
    }
    for required in ["u1", "u2", "u3", "minus_one", "alpha", "beta1", "beta2", "beta3"] {
        if !by_name.contains_key(required) {
            return Err(Error::Fixture(format!("missing element {required}")));
        }
    }
    Ok(DescentFixture {
        l,
        by_name,
        norms,
    })
}

/// Exact identities 2 ~ alpha^2 u2 and 3701 ~ beta1 beta2^2 beta3 up to a
/// unit from the fixture set; the adjusting unit is returned by name.
pub fn verify_element_factorizations(fx: &DescentFixture) -> Result<Vec<(String, String)>> {
    let l = &fx.l;
    let get = |n: &str| fx.by_name.get(n).unwrap().clone();
    let mut transcript = Vec::new();
    let unit_pool = unit_candidates(fx);
    for (label, product, target) in [
        (
            "2 = alpha^2 u2 (up to a unit)",
            l.mul(&l.mul(&get("alpha"), &get("alpha")), &get("u2")),
            l.constant(rat(2)),
        ),
        (
            "3701 = beta1 beta2^2 beta3 (up to a unit)",
            l.mul(
                &l.mul(&get("beta1"), &l.mul(&get("beta2"), &get("beta2"))),
                &get("beta3"),
            ),
            l.constant(rat(3701)),
        ),
    ] {
        let ratio = l.mul(&product, &l.inv(&target)?);
        let mut found = None;
        for (uname, u) in &unit_pool {
            if &ratio == u {
                found = Some(uname.clone());
                break;
            }
        }
        let uname = found.ok_or_else(|| {
            Error::Fixture(format!("{label}: adjusting unit not in the fixture span"))
        })?;
        transcript.push((label.to_string(), uname));
    }
    // inverse sanity: u1 * u1^-1 = 1
    let u1 = get("u1");
    let one = l.mul(&u1, &l.inv(&u1)?);
    if one != l.one() {
        return Err(Error::Fixture("u1 inverse broken".into()));
    }
    Ok(transcript)
}

/// Small products of fixture units (with signs), used to recognize the
/// adjusting unit in the factorization identities.
fn unit_candidates(fx: &DescentFixture) -> Vec<(String, LElem)> {
    let l = &fx.l;
    let u1 = fx.by_name.get("u1").unwrap();
    let u2 = fx.by_name.get("u2").unwrap();
    let u3 = fx.by_name.get("u3").unwrap();
    let mut out = Vec::new();
    for e1 in -2i64..=2 {
        for e2 in -2i64..=2 {
            for e3 in -2i64..=2 {
                let mut v = l.one();
                v = l.mul(&v, &l.pow(u1, e1).unwrap());
                v = l.mul(&v, &l.pow(u2, e2).unwrap());
                v = l.mul(&v, &l.pow(u3, e3).unwrap());
                for sign in [1i64, -1] {
                    let s = if sign == 1 {
                        v.clone()
                    } else {
                        l.neg(&v)
                    };
                    out.push((format!("(-1)^{} u1^{e1} u2^{e2} u3^{e3}", (1 - sign) / 2), s));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// the 2-maximal order
// ---------------------------------------------------------------------------

pub use crate::exact::orders::POrder as Order;

/// 2-saturation of Z[T] inside L by radical/multiplier enlargement.
pub fn two_maximal_order(l: &LField) -> Result<Order> {
    crate::exact::orders::POrder::p_maximal(&l.f, 2)
}

// ---------------------------------------------------------------------------
// completions
// ---------------------------------------------------------------------------

/// Z/p^K polynomial helpers (dense, BigInt residues).
#[derive(Clone, Debug, PartialEq)]
struct ZkPoly {
    c: Vec<BigInt>,
}

fn zk_norm(mut c: Vec<BigInt>, m: &BigInt) -> ZkPoly {
    for v in c.iter_mut() {
        *v = v.mod_floor(m);
    }
    while c.last().map_or(false, |x| x.is_zero()) {
        c.pop();
    }
    ZkPoly { c }
}

impl ZkPoly {
    fn mul(&self, o: &ZkPoly, m: &BigInt) -> ZkPoly {
        if self.c.is_empty() || o.c.is_empty() {
            return ZkPoly { c: vec![] };
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        zk_norm(c, m)
    }
    fn sub(&self, o: &ZkPoly, m: &BigInt) -> ZkPoly {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![BigInt::zero(); n];
        for i in 0..n {
            let a = self.c.get(i).cloned().unwrap_or_default();
            let b = o.c.get(i).cloned().unwrap_or_default();
            c[i] = a - b;
        }
        zk_norm(c, m)
    }
    /// Division by a monic divisor.
    fn div_rem_monic(&self, d: &ZkPoly, m: &BigInt) -> (ZkPoly, ZkPoly) {
        assert!(d.c.last().map_or(false, |x| x.is_one()));
        let dd = d.c.len() - 1;
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return (ZkPoly { c: vec![] }, zk_norm(rem, m));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = rem[i].mod_floor(m);
            if q.is_zero() {
                continue;
            }
            quot[i - dd] = q.clone();
            for (j, dc) in d.c.iter().enumerate() {
                let t = &q * dc;
                rem[i - dd + j] -= t;
            }
            rem[i] = BigInt::zero();
        }
        (zk_norm(quot, m), zk_norm(rem, m))
    }
}

/// Hensel lift a factorization f = g h mod p to mod p^K (all monic,
/// g and h coprime mod p), by linear lifting: corrections are solved over
/// F_p where the Bezout identity is exact.
fn hensel_lift_pair(
    f: &ZkPoly,
    g0: &ZkPoly,
    h0: &ZkPoly,
    p: u64,
    cap_k: u32,
) -> Result<(ZkPoly, ZkPoly)> {
    let pb = BigInt::from(p);
    let fp = |z: &ZkPoly| -> crate::exact::poly::Poly<crate::exact::Fp> {
        crate::exact::poly::Poly::new(
            z.c.iter()
                .map(|v| crate::exact::Fp::from_u64(v.mod_floor(&pb).to_u64().unwrap(), p))
                .collect(),
        )
    };
    let gbar = fp(g0);
    let hbar = fp(h0);
    let (one, s, t) = gbar.xgcd(&hbar);
    if one.degree() != Some(0) {
        return Err(Error::Precondition("factors not coprime mod p".into()));
    }
    let lift = |q: &crate::exact::poly::Poly<crate::exact::Fp>| -> ZkPoly {
        ZkPoly {
            c: q.c.iter().map(|x| BigInt::from(x.v)).collect(),
        }
    };
    let mut g = g0.clone();
    let mut h = h0.clone();
    for m in 1..cap_k {
        let mm = pb.pow(m + 1);
        let gh = g.mul(&h, &mm);
        let mut e = f.sub(&gh, &mm);
        for v in e.c.iter_mut() {
            let (q, r) = v.div_rem(&pb.pow(m));
            debug_assert!(r.is_zero(), "error term not divisible by p^m");
            *v = q;
        }
        let ebar = fp(&zk_norm(e.c, &pb));
        if ebar.is_zero() {
            continue;
        }
        // solve G hbar + H gbar = ebar over F_p, deg G < deg gbar
        let te = t.mul(&ebar);
        let (q1, gcorr) = te.div_rem(&gbar);
        let hcorr = s.mul(&ebar).add(&q1.mul(&hbar));
        if hcorr.degree().map_or(false, |d| d >= hbar.deg()) {
            return Err(Error::Precision("hensel correction degree overflow".into()));
        }
        let pk = pb.pow(m);
        let apply = |base: &ZkPoly, delta: &ZkPoly| -> ZkPoly {
            let n = base.c.len().max(delta.c.len());
            let mut c = vec![BigInt::zero(); n];
            for i in 0..n {
                c[i] = base.c.get(i).cloned().unwrap_or_default()
                    + delta.c.get(i).cloned().unwrap_or_default() * &pk;
            }
            zk_norm(c, &mm)
        };
        g = apply(&g, &lift(&gcorr));
        h = apply(&h, &lift(&hcorr));
    }
    // verify
    let m = pb.pow(cap_k);
    if f.sub(&g.mul(&h, &m), &m).c.iter().any(|v| !v.is_zero()) {
        return Err(Error::Precision("hensel lift verification failed".into()));
    }
    Ok((g, h))
}

/// Local structure of L at 3701: the split into a rational root component,
/// a ramified quadratic, and an unramified cubic, Hensel lifted mod p^K.
pub struct Split3701 {
    pub p: u64,
    pub k: u32,
    /// root of the linear factor mod p^K (reduces to 1371)
    pub root: BigInt,
    /// monic quadratic factor mod p^K (reduces to (x - 1727)^2)
    pub quad: Vec<BigInt>,
    /// monic cubic factor mod p^K, irreducible mod p
    pub cubic: Vec<BigInt>,
}

static SPLIT_3701: OnceLock<Split3701> = OnceLock::new();

pub fn split_3701() -> &'static Split3701 {
    SPLIT_3701.get_or_init(|| build_split_3701(24).expect("3701 splitting"))
}

fn build_split_3701(k: u32) -> Result<Split3701> {
    let p = 3701u64;
    let l = LField::new();
    let fp = l.f.reduce_mod(p);
    let roots = roots_mod_p(&fp, p);
    if roots != vec![1371, 1727] {
        return Err(Error::Fixture(format!("unexpected roots mod 3701: {roots:?}")));
    }
    // multiplicities: 1371 simple, 1727 double
    let pb = BigInt::from(p);
    let m = pb.pow(k);
    let fzk = ZkPoly {
        c: l.f.c.iter().map(|c| c.to_integer().mod_floor(&m)).collect(),
    };
    let lin = ZkPoly {
        c: vec![BigInt::from(p - 1371), BigInt::one()],
    };
    let quad0 = {
        let a = ZkPoly {
            c: vec![BigInt::from(p - 1727), BigInt::one()],
        };
        a.mul(&a, &m)
    };
    // cubic = f / (lin quad) mod p
    let fp_lin = ZkPoly {
        c: vec![BigInt::from(p - 1371), BigInt::one()],
    };
    let prod0 = fp_lin.mul(&quad0, &pb);
    let f_modp = ZkPoly {
        c: fzk.c.iter().map(|v| v.mod_floor(&pb)).collect(),
    };
    let (cubic0, r0) = f_modp.div_rem_monic(&prod0, &pb);
    if !r0.c.is_empty() {
        return Err(Error::Fixture("mod-p factorization inconsistent".into()));
    }
    {
        let cubic_fp = crate::exact::poly::Poly::new(
            cubic0
                .c
                .iter()
                .map(|v| crate::exact::Fp::from_u64(v.to_u64().unwrap() % p, p))
                .collect(),
        );
        if !is_irreducible_mod_p(&cubic_fp, p) {
            return Err(Error::Fixture("cubic factor reducible mod 3701".into()));
        }
    }
    // lift (linear) against (quad*cubic), then split the cofactor
    let rest0 = quad0.mul(&cubic0, &pb);
    let (lin_lift, rest_lift) = hensel_lift_pair(&fzk, &lin, &rest0, p, k)?;
    let (quad_lift, cubic_lift) = hensel_lift_pair(&rest_lift, &quad0, &cubic0, p, k)?;
    // final verification: product reproduces f mod p^K
    let prod = lin_lift.mul(&quad_lift.mul(&cubic_lift, &m), &m);
    if prod != fzk {
        return Err(Error::Precision("lifted factorization mismatch".into()));
    }
    let root = (&m - &lin_lift.c[0]).mod_floor(&m);
    if root.mod_floor(&pb).to_u64() != Some(1371) {
        return Err(Error::Fixture("lifted root does not reduce to 1371".into()));
    }
    // the quadratic is ramified: v_p of its discriminant is odd
    let b = quad_lift.c[1].clone();
    let c = quad_lift.c[0].clone();
    let disc = (&b * &b - BigInt::from(4) * &c).mod_floor(&m);
    let dval = if disc.is_zero() {
        u64::MAX
    } else {
        int_val_p(&disc, p)
    };
    if dval % 2 != 1 {
        return Err(Error::Certificate(
            "quadratic factor not ramified (even disc valuation)".into(),
        ));
    }
    Ok(Split3701 {
        p,
        k,
        root,
        quad: quad_lift.c,
        cubic: cubic_lift.c,
    })
}

/// Places of L over 3701 and the single place over 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Place {
    /// the rational component of L_3701
    Rational3701,
    /// the ramified quadratic component
    RamifiedE,
    /// the unramified cubic component
    UnramifiedF,
    /// the single place over 2 (e = 2, f = 3)
    TwoAdic,
}

/// Valuation and residue data at a place.
#[derive(Debug, Clone)]
pub struct LocalValuation {
    pub valuation: i64,
    /// residue datum mod p for valuation-0 elements (component-specific)
    pub residue: Option<BigInt>,
}

/// p-adic valuation of the resultant of a lifted factor with the
/// representative (valid while clearly below the working precision).
fn factor_resultant_val(factor: &[BigInt], x: &LElem, p: u64, k: u32) -> Result<i64> {
    let mut den = BigInt::one();
    for c in &x.rep.c {
        den = den.lcm(c.denom());
    }
    if int_val_p(&den, p) != 0 {
        return Err(Error::Precondition(
            "representative has p in the denominator".into(),
        ));
    }
    let m = BigInt::from(p).pow(k);
    let xc: Vec<BigInt> = x
        .rep
        .c
        .iter()
        .map(|c| (c.numer() * (&den / c.denom())).mod_floor(&m))
        .collect();
    let g = QPoly::new(factor.iter().map(|v| Rat::from_integer(v.clone())).collect());
    let xpoly = QPoly::new(xc.iter().map(|v| Rat::from_integer(v.clone())).collect());
    if xpoly.is_zero() {
        return Err(Error::Precision("representative vanished mod p^K".into()));
    }
    // den is a p-unit, so clearing it does not move the valuation
    let res = g.resultant(&xpoly)?;
    let r = res.to_integer();
    if r.is_zero() {
        return Err(Error::Precision(
            "resultant vanished at working precision".into(),
        ));
    }
    let v = int_val_p(&r, p) as i64;
    if v >= (k as i64) - 2 {
        return Err(Error::Precision(
            "valuation too close to the working precision".into(),
        ));
    }
    Ok(v)
}

/// Valuation (normalized per place) plus residue datum.
pub fn local_valuation(l: &LField, x: &LElem, place: Place) -> Result<LocalValuation> {
    if x.rep.is_zero() {
        return Err(Error::ZeroPolynomial("local valuation"));
    }
    match place {
        Place::Rational3701 => {
            let s = split_3701();
            let m = BigInt::from(s.p).pow(s.k);
            // evaluate at the lifted root
            let mut acc = Rat::zero();
            let rootr = Rat::from_integer(s.root.clone());
            for c in x.rep.c.iter().rev() {
                acc = acc * &rootr + c;
            }
            let v = rat_val_p(&acc, s.p);
            if v as u32 >= s.k - 2 {
                return Err(Error::Precision("raise the 3701 lift precision".into()));
            }
            let unit = &acc / Rat::from_integer(BigInt::from(s.p).pow(v.unsigned_abs() as u32));
            let residue = if v == 0 {
                Some(
                    (unit.numer().mod_floor(&m)
                        * modinv_or_err(&unit.denom().mod_floor(&m), &BigInt::from(s.p))?)
                    .mod_floor(&BigInt::from(s.p)),
                )
            } else {
                None
            };
            Ok(LocalValuation {
                valuation: v,
                residue,
            })
        }
        Place::RamifiedE => {
            let s = split_3701();
            let v = factor_resultant_val(&s.quad, x, s.p, s.k)?;
            // e = 2, f = 1: v_E = v_p(Res(quad, x)) since f = 1
            let residue = if v == 0 {
                // residue field F_p: evaluate at the residue root 1727
                let r1727 = Rat::from_integer(BigInt::from(1727));
                let mut acc = Rat::zero();
                for c in x.rep.c.iter().rev() {
                    acc = acc * &r1727 + c;
                }
                let p = BigInt::from(s.p);
                Some(
                    (acc.numer().mod_floor(&p) * modinv_or_err(&acc.denom().mod_floor(&p), &p)?)
                        .mod_floor(&p),
                )
            } else {
                None
            };
            Ok(LocalValuation {
                valuation: v,
                residue,
            })
        }
        Place::UnramifiedF => {
            let s = split_3701();
            let v = factor_resultant_val(&s.cubic, x, s.p, s.k)?;
            if v % 3 != 0 {
                return Err(Error::Certificate(
                    "norm valuation not divisible by the residue degree".into(),
                ));
            }
            Ok(LocalValuation {
                valuation: v / 3,
                residue: None,
            })
        }
        Place::TwoAdic => {
            let n = l.norm(x)?;
            let v = rat_val_p(&n, 2);
            if v % 3 != 0 {
                return Err(Error::Certificate(
                    "2-adic norm valuation not divisible by f = 3".into(),
                ));
            }
            Ok(LocalValuation {
                valuation: v / 3,
                residue: None,
            })
        }
    }
}

fn modinv_or_err(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Ok(e.x.mod_floor(m))
    } else {
        Err(Error::Precondition("non-invertible residue".into()))
    }
}

// ---------------------------------------------------------------------------
// local square classes
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SquareClass {
    /// r x is a square in L_p for some rational representative r
    Trivial,
    /// no rational multiple of x is a local square
    Nontrivial,
}

/// Componentwise square test of an element of L inside
/// L_3701 = Q_p x E x F.  Each component is normalized to valuation 0 with
/// its own co-unit (beta1, beta2, beta3 have valuation vectors (1,0,0),
/// (0,1,0), (0,0,1)), after which the residue decides squareness: Legendre
/// in the two F_p residue fields, a character in F_{p^3}.
fn is_square_3701(fx: &DescentFixture, x: &LElem) -> Result<bool> {
    let l = &fx.l;
    let s = split_3701();
    let p = s.p;
    let pb = BigInt::from(p);
    let beta1 = fx.by_name.get("beta1").unwrap();
    let beta2 = fx.by_name.get("beta2").unwrap();
    let beta3 = fx.by_name.get("beta3").unwrap();
    let vq = q_component_val(l, x)?;
    let ve = factor_resultant_val(&s.quad, &integralize_3701(l, x)?, p, s.k)?
        - 2 * integralize_shift(l, x)?;
    let vf3 = factor_resultant_val(&s.cubic, &integralize_3701(l, x)?, p, s.k)?;
    let vf = vf3 / 3 - integralize_shift(l, x)?;
    if vf3 % 3 != 0 {
        return Err(Error::Certificate(
            "F-component valuation not divisible by the residue degree".into(),
        ));
    }
    if vq % 2 != 0 || ve % 2 != 0 || vf % 2 != 0 {
        return Ok(false);
    }
    // normalize all components to valuation zero
    let mut y = x.clone();
    y = l.mul(&y, &l.pow(beta1, -vq)?);
    y = l.mul(&y, &l.pow(beta2, -ve)?);
    y = l.mul(&y, &l.pow(beta3, -vf)?);
    // after normalization every component valuation vanishes, so the
    // representative is p-integral (Z[T] is maximal at 3701)
    for c in &y.rep.c {
        if int_val_p(c.denom(), p) != 0 {
            return Err(Error::Certificate(
                "normalized element not p-integral".into(),
            ));
        }
    }
    // Q component: Legendre of the residue at the lifted root
    let rootr = Rat::from_integer(s.root.clone());
    let mut acc = Rat::zero();
    for c in y.rep.c.iter().rev() {
        acc = acc * &rootr + c;
    }
    let resq = (acc.numer().mod_floor(&pb)
        * modinv_or_err(&acc.denom().mod_floor(&pb), &pb)?)
    .mod_floor(&pb);
    if legendre(&resq, p) != 1 {
        return Ok(false);
    }
    // E component: residue at 1727
    let r1727 = Rat::from_integer(BigInt::from(1727));
    let mut acce = Rat::zero();
    for c in y.rep.c.iter().rev() {
        acce = acce * &r1727 + c;
    }
    let rese = (acce.numer().mod_floor(&pb)
        * modinv_or_err(&acce.denom().mod_floor(&pb), &pb)?)
    .mod_floor(&pb);
    if legendre(&rese, p) != 1 {
        return Ok(false);
    }
    // F component: character of the residue in F_{p^3}
    let cubic_fp = crate::exact::poly::Poly::new(
        s.cubic
            .iter()
            .map(|v| crate::exact::Fp::from_u64(v.mod_floor(&pb).to_u64().unwrap(), p))
            .collect(),
    );
    let mut den = BigInt::one();
    for c in &y.rep.c {
        den = den.lcm(c.denom());
    }
    let yfp = crate::exact::poly::Poly::new(
        y.rep
            .c
            .iter()
            .map(|c| {
                let n = (c.numer() * (&den / c.denom())).mod_floor(&pb);
                crate::exact::Fp::from_u64(n.to_u64().unwrap(), p)
            })
            .collect(),
    )
    .rem(&cubic_fp);
    let den_chi = legendre(&den.mod_floor(&pb), p);
    let q3 = (p as u128).pow(3);
    let e = ((q3 - 1) / 2) as u64;
    let mut accp = crate::exact::poly::Poly::constant(crate::exact::Fp::from_u64(1, p));
    let mut base = yfp.clone();
    let mut ee = e;
    while ee > 0 {
        if ee & 1 == 1 {
            accp = accp.mul(&base).rem(&cubic_fp);
        }
        base = base.mul(&base).rem(&cubic_fp);
        ee >>= 1;
    }
    let chi = if accp == crate::exact::poly::Poly::constant(crate::exact::Fp::from_u64(1, p)) {
        1i32
    } else {
        -1
    };
    Ok(chi * den_chi == 1)
}

/// Valuation of the rational component (evaluation at the lifted root).
fn q_component_val(l: &LField, x: &LElem) -> Result<i64> {
    let _ = l;
    let s = split_3701();
    let rootr = Rat::from_integer(s.root.clone());
    let mut acc = Rat::zero();
    for c in x.rep.c.iter().rev() {
        acc = acc * &rootr + c;
    }
    if Zero::is_zero(&acc) {
        return Err(Error::Precision("component vanished at precision".into()));
    }
    let v = rat_val_p(&acc, s.p);
    if v.unsigned_abs() as u32 >= s.k - 2 {
        return Err(Error::Precision("raise the 3701 lift precision".into()));
    }
    Ok(v)
}

/// x * p^a with a chosen so the representative clears p-denominators.
fn integralize_3701(l: &LField, x: &LElem) -> Result<LElem> {
    let a = integralize_shift(l, x)?;
    Ok(l.mul(
        x,
        &l.constant(Rat::from_integer(BigInt::from(3701u64).pow(a as u32))),
    ))
}

fn integralize_shift(l: &LField, x: &LElem) -> Result<i64> {
    let _ = l;
    let mut a = 0i64;
    for c in &x.rep.c {
        a = a.max(int_val_p(c.denom(), 3701) as i64);
    }
    Ok(a)
}

/// Square-class test in L_p^* / L_p^{*2} Q_p^* for p in {2, 3701}.
pub fn local_square_class_test(fx: &DescentFixture, x: &LElem, p: u64) -> Result<SquareClass> {
    let l = &fx.l;
    if x.rep.is_zero() {
        return Err(Error::ZeroPolynomial("square class"));
    }
    match p {
        3701 => {
            for r in [rat(1), rat(2), rat(3701), rat(2 * 3701)] {
                let candidate = l.mul(x, &l.constant(r));
                if is_square_3701(fx, &candidate)? {
                    return Ok(SquareClass::Trivial);
                }
            }
            Ok(SquareClass::Nontrivial)
        }
        2 => {
            let alpha = fx.by_name.get("alpha").unwrap();
            // representatives of O/pi^3, O the 2-maximal order:
            // z = c0 + c1 alpha + c2 alpha^2 with c_i ranging over lifts of
            // F_8 = F_2[t]/(t^3 + t + 1), t the image of T
            let reps: Vec<LElem> = {
                let mut reps = Vec::new();
                let one = l.one();
                let t = l.t();
                let t2 = l.mul(&t, &t);
                let f8: Vec<LElem> = (0..8u8)
                    .map(|bits| {
                        let mut acc = l.constant(Rat::zero());
                        if bits & 1 != 0 {
                            acc = l.add(&acc, &one);
                        }
                        if bits & 2 != 0 {
                            acc = l.add(&acc, &t);
                        }
                        if bits & 4 != 0 {
                            acc = l.add(&acc, &t2);
                        }
                        acc
                    })
                    .collect();
                let a1 = alpha.clone();
                let a2 = l.mul(alpha, alpha);
                for c0 in &f8 {
                    for c1 in &f8 {
                        for c2 in &f8 {
                            let z =
                                l.add(c0, &l.add(&l.mul(c1, &a1), &l.mul(c2, &a2)));
                            reps.push(z);
                        }
                    }
                }
                reps
            };
            for r in [1i64, -1, 2, -2, 3, -3, 6, -6] {
                let candidate = l.mul(x, &l.constant(rat(r)));
                let v = local_valuation(l, &candidate, Place::TwoAdic)?.valuation;
                if v % 2 != 0 {
                    continue;
                }
                // normalize to a unit by alpha powers; z^2 = unit mod pi^5
                // decides squareness (Hensel: 2 v(2) + 1 = 5 since e = 2)
                let unit = l.mul(&candidate, &l.pow(alpha, -v)?);
                let mut square = false;
                for z in &reps {
                    let diff = l.sub(&l.mul(z, z), &unit);
                    if diff.rep.is_zero() {
                        square = true;
                        break;
                    }
                    let vd = local_valuation(l, &diff, Place::TwoAdic)?.valuation;
                    if vd >= 5 {
                        square = true;
                        break;
                    }
                }
                if square {
                    return Ok(SquareClass::Trivial);
                }
            }
            Ok(SquareClass::Nontrivial)
        }
        _ => Err(Error::Precondition(format!("unsupported place {p}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_norms() {
        let fx = load_fixture().unwrap();
        assert_eq!(fx.norms.get("alpha").unwrap(), &rat(8));
        assert_eq!(fx.norms.get("u3").unwrap(), &rat(-1));
        assert_eq!(
            fx.norms.get("beta3").unwrap(),
            &Rat::from_integer(BigInt::from(3701u64).pow(3))
        );
    }

    #[test]
    fn norm_is_multiplicative() {
        let fx = load_fixture().unwrap();
        let l = &fx.l;
        let mut lcg = 3u64;
        let mut next = || {
            lcg = lcg.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((lcg >> 40) % 9) as i64 - 4
        };
        for _ in 0..100 {
            let a = l.from_coeffs(&(0..6).map(|_| rat(next())).collect::<Vec<_>>());
            let b = l.from_coeffs(&(0..6).map(|_| rat(next())).collect::<Vec<_>>());
            if a.rep.is_zero() || b.rep.is_zero() {
                continue;
            }
            let nab = l.norm(&l.mul(&a, &b)).unwrap();
            assert_eq!(nab, l.norm(&a).unwrap() * l.norm(&b).unwrap());
        }
        // norm(q x) = q^6 norm(x)
        let x = l.t();
        let q = rat(7);
        assert_eq!(
            l.norm(&l.mul(&x, &l.constant(q.clone()))).unwrap(),
            l.norm(&x).unwrap() * q.pow(6)
        );
    }

    #[test]
    fn element_factorizations() {
        let fx = load_fixture().unwrap();
        let transcript = verify_element_factorizations(&fx).unwrap();
        assert_eq!(transcript.len(), 2);
    }

    #[test]
    fn two_maximal_order_certificates() {
        let fx = load_fixture().unwrap();
        let l = &fx.l;
        let order = two_maximal_order(l).unwrap();
        // all fixture elements lie in the order
        for (name, el) in &fx.by_name {
            assert!(order.contains(&el.rep), "{name} not in the 2-maximal order");
        }
        // index is a power of 2
        let idx = order.index();
        let mut n = idx.clone();
        while (&n % BigInt::from(2)).is_zero() {
            n /= 2;
        }
        assert!(n.is_one(), "index {idx} is not a 2-power");
        // v2(disc O) < 12 and congruent to 12 mod 2
        let v = order.disc_val_p();
        assert!(v < 12);
        assert_eq!((12 - v) % 2, 0);
        // alpha is a uniformizer: v2(norm) = 3
        let alpha = fx.by_name.get("alpha").unwrap();
        assert_eq!(rat_val_p(&l.norm(alpha).unwrap(), 2), 3);
        assert_eq!(
            local_valuation(l, alpha, Place::TwoAdic).unwrap().valuation,
            1
        );
    }

    #[test]
    fn split_at_3701_structure() {
        let l = LField::new();
        let s = split_3701();
        // residues
        let pb = BigInt::from(s.p);
        assert_eq!(s.root.mod_floor(&pb), BigInt::from(1371));
        assert_eq!(
            s.quad[1].mod_floor(&pb),
            BigInt::from(-2 * 1727i64).mod_floor(&pb)
        );
        // (-4 - T) has residue -1375 in the rational component
        let x = l.from_coeffs(&[rat(-4), rat(-1)]);
        let v = local_valuation(&l, &x, Place::Rational3701).unwrap();
        assert_eq!(v.valuation, 0);
        assert_eq!(
            v.residue.unwrap(),
            BigInt::from(-1375i64).mod_floor(&pb)
        );
        // and residue -1731 in E
        let ve = local_valuation(&l, &x, Place::RamifiedE).unwrap();
        assert_eq!(ve.valuation, 0);
        assert_eq!(ve.residue.unwrap(), BigInt::from(-1731i64).mod_floor(&pb));
    }

    #[test]
    fn beta2_uniformizes_e() {
        let fx = load_fixture().unwrap();
        let l = &fx.l;
        let b2 = fx.by_name.get("beta2").unwrap();
        assert_eq!(
            local_valuation(l, b2, Place::RamifiedE).unwrap().valuation,
            1
        );
        let b1 = fx.by_name.get("beta1").unwrap();
        assert_eq!(
            local_valuation(l, b1, Place::RamifiedE).unwrap().valuation,
            0
        );
        assert_eq!(
            local_valuation(l, b1, Place::Rational3701)
                .unwrap()
                .valuation,
            1
        );
    }

    #[test]
    fn square_classes_at_3701() {
        let fx = load_fixture().unwrap();
        let l = &fx.l;
        // -4 - T is nontrivial (square in the rational component, not in E)
        let x = l.from_coeffs(&[rat(-4), rat(-1)]);
        assert_eq!(
            local_square_class_test(&fx, &x, 3701).unwrap(),
            SquareClass::Nontrivial
        );
        // squares act trivially: u1 (-4-T)^2 has the class of u1
        let u1 = fx.by_name.get("u1").unwrap();
        let y = l.mul(u1, &l.mul(&x, &x));
        let cls_y = local_square_class_test(&fx, &y, 3701).unwrap();
        let cls_u1 = local_square_class_test(&fx, u1, 3701).unwrap();
        assert_eq!(cls_y, cls_u1);
    }

    #[test]
    fn square_classes_at_2() {
        let fx = load_fixture().unwrap();
        let l = &fx.l;
        // 2 - T generates the local image: nontrivial
        let x = l.from_coeffs(&[rat(2), rat(-1)]);
        assert_eq!(
            local_square_class_test(&fx, &x, 2).unwrap(),
            SquareClass::Nontrivial
        );
        // a declared square: (1 + alpha)^2 is trivial
        let alpha = fx.by_name.get("alpha").unwrap();
        let s = l.add(&l.one(), alpha);
        let s2 = l.mul(&s, &s);
        assert_eq!(
            local_square_class_test(&fx, &s2, 2).unwrap(),
            SquareClass::Trivial
        );
    }
}
