//! Reduction of the 5-cycle trace curve to its sextic hyperelliptic model,
//! and the c-value map on that model.
//!
//! The chain is data: each step carries its substitution and the expected
//! intermediate polynomial, so the executor certifies every stage before
//! moving on.  The composed backward map is kept as a pair of curve
//! functions so the chain can be checked to be birational by pulling the
//! trace polynomial back and reducing modulo y^2 - f(x).

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::dynatomic::tau5;
use crate::exact::num::{rat, ratio, Rat};
use crate::exact::poly::QPoly;
use crate::exact::quot::{bipoly_over_quot, quotient_gcd};
use crate::exact::BiPoly;
use crate::{Error, Result};

/// y^2 = f(x) with deg f = 6 and f squarefree.
#[derive(Clone, Debug, PartialEq)]
pub struct SexticCurve {
    pub f: [Rat; 7],
}

impl SexticCurve {
    pub fn new(f: [Rat; 7]) -> Result<Self> {
        let c = SexticCurve { f };
        let fp = c.poly();
        if fp.degree() != Some(6) {
            return Err(Error::Precondition(
                "curve polynomial must have degree 6".into(),
            ));
        }
        if Zero::is_zero(&fp.discriminant()?) {
            return Err(Error::NotSquarefree);
        }
        Ok(c)
    }

    /// The specific sextic this crate studies.
    pub fn pentacycle_curve() -> Self {
        SexticCurve {
            f: [rat(1), rat(6), rat(5), rat(22), rat(22), rat(8), rat(1)],
        }
    }

    pub fn poly(&self) -> QPoly {
        QPoly::new(self.f.to_vec())
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.f[i]
    }

    pub fn is_on_curve(&self, x: &Rat, y: &Rat) -> bool {
        y * y == self.poly().eval(x)
    }

    /// Coefficients e_j of the branch of y at infinity with y/x^3 -> +1:
    /// y = sum e_j x^(3-j).
    pub fn infinity_series(&self, terms: usize) -> Vec<Rat> {
        let mut e = vec![Rat::zero(); terms];
        e[0] = Rat::from_integer(1.into()); // lead coefficient 1 is a square
        for j in 1..terms {
            let g = if j <= 6 {
                self.f[6 - j].clone()
            } else {
                Rat::zero()
            };
            let mut s = Rat::zero();
            for i in 1..j {
                s += &e[i] * &e[j - i];
            }
            e[j] = (g - s) / rat(2);
        }
        e
    }
}

/// Truncated expansion of y around infinity on one branch.
pub fn infinity_expansion(curve: &SexticCurve, branch_plus: bool, k: usize) -> Vec<Rat> {
    let e = curve.infinity_series(k);
    if branch_plus {
        e
    } else {
        e.into_iter().map(|v| -v).collect()
    }
}

// ---------------------------------------------------------------------------
// birational chain
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepKind {
    Translate,
    Blowup,
    AxisShift,
    QuadraticDiscriminant,
    Rescale,
}

/// One certified step of the chain; `after` is the expected intermediate.
#[derive(Debug, Clone, Serialize)]
pub struct BirationalStep {
    pub kind: StepKind,
    pub substitution: String,
    pub divisor_cleared: String,
    #[serde(skip)]
    pub after: BiPoly,
}

fn check(step: &BirationalStep, got: &BiPoly) -> Result<()> {
    if got != &step.after {
        return Err(Error::Fixture(format!(
            "intermediate mismatch at step {:?}",
            step.kind
        )));
    }
    Ok(())
}

fn t1_fixture() -> BiPoly {
    BiPoly::from_i64_terms(&[
        (2, 0, 238),
        (3, 0, 213),
        (4, 0, -15),
        (5, 0, -45),
        (6, 0, 9),
        (1, 1, 36),
        (2, 1, -177),
        (3, 1, -234),
        (4, 1, 99),
        (0, 2, 54),
        (1, 2, -189),
        (2, 2, 171),
        (0, 3, 81),
    ])
}

fn t2_fixture() -> BiPoly {
    BiPoly::from_i64_terms(&[
        (0, 0, 238),
        (1, 0, 213),
        (2, 0, -15),
        (3, 0, -45),
        (4, 0, 9),
        (0, 1, 36),
        (1, 1, -177),
        (2, 1, -234),
        (3, 1, 99),
        (0, 2, 54),
        (1, 2, -189),
        (2, 2, 171),
        (1, 3, 81),
    ])
}

fn t3_fixture() -> BiPoly {
    BiPoly::from_i64_terms(&[
        (0, 0, 238),
        (1, 0, 213),
        (2, 0, -15),
        (3, 0, -45),
        (4, 0, 9),
        (0, 1, -177),
        (1, 1, -147),
        (2, 1, -99),
        (3, 1, 63),
        (0, 2, 216),
        (1, 2, 144),
        (2, 2, -72),
    ])
}

fn t4_fixture() -> QPoly {
    QPoly::from_i64(&[-174303, -269082, 15471, 115668, 5103, -30618, 6561])
}

/// Run the whole chain from a trace polynomial.  Every intermediate is
/// compared against its fixture; any mismatch aborts.
pub fn hyperelliptic_chain_from(tau: &BiPoly) -> Result<(SexticCurve, Vec<BirationalStep>)> {
    let mut steps = Vec::new();

    // 1. move the node to the origin: z = r - 1, c = s - 4/3, clear 27
    let pz = BiPoly::from_i64_terms(&[(1, 0, 1), (0, 0, -1)]);
    let mut pc = BiPoly::from_i64_terms(&[(0, 1, 1)]);
    pc.add_term(0, 0, ratio(-4, 3));
    let t1 = tau.compose(&pz, &pc).scale(&rat(9));
    let step = BirationalStep {
        kind: StepKind::Translate,
        substitution: "z = r - 1, c = s - 4/3".into(),
        divisor_cleared: "1/9".into(),
        after: t1_fixture(),
    };
    check(&step, &t1)?;
    steps.push(step);

    // 2. blow up the node: s = r t, divide by r^2
    let pr = BiPoly::from_i64_terms(&[(1, 0, 1)]);
    let prt = BiPoly::from_i64_terms(&[(1, 1, 1)]);
    let t2 = t1.compose(&pr, &prt).div_monomial(2, 0)?;
    let step = BirationalStep {
        kind: StepKind::Blowup,
        substitution: "s = r t".into(),
        divisor_cleared: "r^2".into(),
        after: t2_fixture(),
    };
    check(&step, &t2)?;
    steps.push(step);

    // 3. move the singularity at infinity onto an axis: r = q - t
    let pq_minus_t = BiPoly::from_i64_terms(&[(1, 0, 1), (0, 1, -1)]);
    let pt = BiPoly::from_i64_terms(&[(0, 1, 1)]);
    let t3 = t2.compose(&pq_minus_t, &pt);
    let step = BirationalStep {
        kind: StepKind::AxisShift,
        substitution: "r = q - t".into(),
        divisor_cleared: "1".into(),
        after: t3_fixture(),
    };
    check(&step, &t3)?;
    steps.push(step);

    // 4. the curve is quadratic in t: p^2 = disc_t
    let (a, b, c) = quadratic_in_t(&t3)?;
    let disc = b.mul(&b).sub(&a.mul(&c).scale(&rat(4)));
    if disc != t4_fixture() {
        return Err(Error::Fixture("discriminant sextic mismatch".into()));
    }
    let step = BirationalStep {
        kind: StepKind::QuadraticDiscriminant,
        substitution: "p = 2 A(q) t + B(q)".into(),
        divisor_cleared: "1".into(),
        after: univariate_as_bipoly(&disc),
    };
    steps.push(step);

    // 5. normalize: p = 192 y, q = -1 - 4x/3, cancel 192^2
    let sub = QPoly::new(vec![rat(-1), ratio(-4, 3)]);
    let rescaled = disc.compose(&sub).scale(&ratio(1, 36864));
    let f: Vec<Rat> = (0..=6)
        .map(|i| rescaled.coeff_or_zero(i, &Rat::zero()))
        .collect();
    let curve = SexticCurve::new(f.clone().try_into().expect("seven coefficients"))?;
    let expect = SexticCurve::pentacycle_curve();
    if curve != expect {
        return Err(Error::Fixture("final sextic mismatch".into()));
    }
    let step = BirationalStep {
        kind: StepKind::Rescale,
        substitution: "p = 192 y, q = -1 - 4x/3".into(),
        divisor_cleared: "36864".into(),
        after: univariate_as_bipoly(&rescaled),
    };
    steps.push(step);

    Ok((curve, steps))
}

pub fn hyperelliptic_chain() -> Result<(SexticCurve, Vec<BirationalStep>)> {
    hyperelliptic_chain_from(&tau5())
}

fn univariate_as_bipoly(p: &QPoly) -> BiPoly {
    let mut out = BiPoly::zero();
    for (i, v) in p.c.iter().enumerate() {
        out.add_term(i as u32, 0, v.clone());
    }
    out
}

/// Coefficients (A, B, C) of a curve equation seen as A t^2 + B t + C,
/// with t the second variable.
fn quadratic_in_t(p: &BiPoly) -> Result<(QPoly, QPoly, QPoly)> {
    if p.deg_c() != 2 {
        return Err(Error::Precondition("not quadratic in t".into()));
    }
    let mut rows = vec![vec![Rat::zero(); p.deg_z() as usize + 1]; 3];
    for (&(i, j), v) in &p.terms {
        rows[j as usize][i as usize] = v.clone();
    }
    let mut it = rows.into_iter().map(QPoly::new);
    let c = it.next().unwrap();
    let b = it.next().unwrap();
    let a = it.next().unwrap();
    Ok((a, b, c))
}

// ---------------------------------------------------------------------------
// singular points
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct SingularBranch {
    /// Branch modulus in the c variable.
    pub modulus: String,
    pub gcd_degree_in_z: usize,
    pub singular_above: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularAnalysis {
    pub rational_points: Vec<(String, String)>,
    pub nonrational_exist: bool,
    pub branches: Vec<SingularBranch>,
}

/// All affine singular points with rational coordinates, plus a certificate
/// covering the algebraic closure: the gcd of the two eliminants is
/// analyzed over every branch of its squarefree part.
pub fn singular_points(f: &BiPoly) -> Result<(Vec<(Rat, Rat)>, SingularAnalysis)> {
    let fz = f.d_z();
    let fc = f.d_c();
    if fz.is_zero() && fc.is_zero() {
        return Err(Error::Precondition("constant curve".into()));
    }
    let lead_rows = f.z_coefficients();
    let lead = lead_rows.last().unwrap();
    if lead.degree() != Some(0) {
        return Err(Error::Precondition(
            "curve must have constant leading coefficient in the first variable".into(),
        ));
    }
    if fz.is_zero() {
        return Err(Error::Precondition(
            "curve independent of first variable".into(),
        ));
    }
    let r1 = f.resultant_z(&fz)?;
    let r2 = if fc.is_zero() {
        QPoly::zero()
    } else {
        f.resultant_z(&fc)?
    };
    if r1.is_zero() {
        return Err(Error::Precondition(
            "elimination degenerates: common component".into(),
        ));
    }
    let g = if r2.is_zero() { r1.clone() } else { r1.gcd(&r2) };
    let mut points = Vec::new();
    let mut branches = Vec::new();
    let mut nonrational = false;
    if g.degree() == Some(0) {
        return Ok((
            points,
            SingularAnalysis {
                rational_points: vec![],
                nonrational_exist: false,
                branches: vec![],
            },
        ));
    }
    let gsq = g.squarefree_part();
    let mut rest = gsq.clone();
    for c0 in gsq.rational_roots() {
        let lin = QPoly::new(vec![-c0.clone(), Rat::from_integer(1.into())]);
        while let Some(q) = rest.divides_exactly(&lin) {
            rest = q;
        }
        let g1 = f.eval_c(&c0).gcd(&fz.eval_c(&c0));
        let g2 = if fc.is_zero() {
            g1.clone()
        } else {
            g1.gcd(&fc.eval_c(&c0))
        };
        if g2.degree().map_or(false, |d| d >= 1) {
            let mut found = 0usize;
            for z0 in g2.rational_roots() {
                if Zero::is_zero(&f.eval(&z0, &c0))
                    && Zero::is_zero(&fz.eval(&z0, &c0))
                    && Zero::is_zero(&fc.eval(&z0, &c0))
                {
                    points.push((z0, c0.clone()));
                    found += 1;
                }
            }
            let deg = g2.squarefree_part().deg();
            if deg > found {
                nonrational = true;
            }
            branches.push(SingularBranch {
                modulus: format!("c - ({c0})"),
                gcd_degree_in_z: deg,
                singular_above: deg > 0,
            });
        } else {
            branches.push(SingularBranch {
                modulus: format!("c - ({c0})"),
                gcd_degree_in_z: 0,
                singular_above: false,
            });
        }
    }
    if rest.degree().map_or(false, |d| d >= 1) {
        let fq = bipoly_over_quot(f, &rest);
        let fzq = bipoly_over_quot(&fz, &rest);
        for (m, g1) in quotient_gcd(&rest, &fq, &fzq) {
            if g1.len() <= 1 {
                branches.push(SingularBranch {
                    modulus: fmt_poly(&m),
                    gcd_degree_in_z: 0,
                    singular_above: false,
                });
                continue;
            }
            let fcq = bipoly_over_quot(&fc, &m);
            for (m2, g2) in quotient_gcd(&m, &g1, &fcq) {
                let deg = g2.len().saturating_sub(1);
                if deg > 0 {
                    nonrational = true;
                }
                branches.push(SingularBranch {
                    modulus: fmt_poly(&m2),
                    gcd_degree_in_z: deg,
                    singular_above: deg > 0,
                });
            }
        }
    }
    points.sort();
    points.dedup();
    let analysis = SingularAnalysis {
        rational_points: points
            .iter()
            .map(|(z, c)| (z.to_string(), c.to_string()))
            .collect(),
        nonrational_exist: nonrational,
        branches,
    };
    Ok((points, analysis))
}

fn fmt_poly(p: &QPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = p
        .c
        .iter()
        .enumerate()
        .filter(|(_, v)| !Zero::is_zero(*v))
        .map(|(i, v)| match i {
            0 => format!("{v}"),
            1 => format!("({v})c"),
            _ => format!("({v})c^{i}"),
        })
        .collect();
    parts.join(" + ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NodeKind {
    Node,
    NotNode,
}

/// A singular point is a node exactly when its quadratic part is a binary
/// quadratic with two distinct roots.
pub fn node_check(f: &BiPoly, z0: &Rat, c0: &Rat) -> Result<NodeKind> {
    let mut pz = BiPoly::from_i64_terms(&[(1, 0, 1)]);
    pz.add_term(0, 0, z0.clone());
    let mut pc = BiPoly::from_i64_terms(&[(0, 1, 1)]);
    pc.add_term(0, 0, c0.clone());
    let shifted = f.compose(&pz, &pc);
    if !Zero::is_zero(&shifted.coeff(0, 0))
        || !Zero::is_zero(&shifted.coeff(1, 0))
        || !Zero::is_zero(&shifted.coeff(0, 1))
    {
        return Err(Error::Precondition("point is not singular".into()));
    }
    let a = shifted.coeff(2, 0);
    let b = shifted.coeff(1, 1);
    let c = shifted.coeff(0, 2);
    let disc = &b * &b - rat(4) * &a * &c;
    Ok(if Zero::is_zero(&disc) {
        NodeKind::NotNode
    } else {
        NodeKind::Node
    })
}

// ---------------------------------------------------------------------------
// curve functions and the c-map
// ---------------------------------------------------------------------------

/// Element (a(x) + b(x) y) / den(x) of the function field of y^2 = f(x).
#[derive(Clone, Debug)]
pub struct CurveFn {
    pub a: QPoly,
    pub b: QPoly,
    pub den: QPoly,
    f: QPoly,
}

impl CurveFn {
    pub fn from_poly(p: QPoly, f: &QPoly) -> Self {
        CurveFn {
            a: p,
            b: QPoly::zero(),
            den: QPoly::from_i64(&[1]),
            f: f.clone(),
        }
    }
    pub fn from_rat(v: &Rat, f: &QPoly) -> Self {
        CurveFn::from_poly(QPoly::new(vec![v.clone()]), f)
    }
    pub fn y(f: &QPoly) -> Self {
        CurveFn {
            a: QPoly::zero(),
            b: QPoly::from_i64(&[1]),
            den: QPoly::from_i64(&[1]),
            f: f.clone(),
        }
    }
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    pub fn add(&self, o: &CurveFn) -> CurveFn {
        let a = self.a.mul(&o.den).add(&o.a.mul(&self.den));
        let b = self.b.mul(&o.den).add(&o.b.mul(&self.den));
        CurveFn {
            a,
            b,
            den: self.den.mul(&o.den),
            f: self.f.clone(),
        }
        .reduced()
    }
    pub fn mul(&self, o: &CurveFn) -> CurveFn {
        let a = self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(&self.f));
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        CurveFn {
            a,
            b,
            den: self.den.mul(&o.den),
            f: self.f.clone(),
        }
        .reduced()
    }
    pub fn neg(&self) -> CurveFn {
        CurveFn {
            a: self.a.neg(),
            b: self.b.neg(),
            den: self.den.clone(),
            f: self.f.clone(),
        }
    }
    pub fn inv(&self) -> CurveFn {
        let n = self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&self.f));
        assert!(!n.is_zero(), "inverting the zero function");
        CurveFn {
            a: self.a.mul(&self.den),
            b: self.b.neg().mul(&self.den),
            den: n,
            f: self.f.clone(),
        }
        .reduced()
    }
    fn reduced(self) -> CurveFn {
        let g = self.a.gcd(&self.b).gcd(&self.den);
        if g.degree().map_or(true, |d| d == 0) {
            return self;
        }
        CurveFn {
            a: self.a.div_rem(&g).0,
            b: self.b.div_rem(&g).0,
            den: self.den.div_rem(&g).0,
            f: self.f,
        }
    }
}

/// Value of the c-map at a point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum CValue {
    Finite(String),
    Infinite,
}

pub fn c_value_to_rat(v: &CValue) -> Option<Rat> {
    match v {
        CValue::Finite(s) => crate::exact::num::parse_rat(s),
        CValue::Infinite => None,
    }
}

pub fn p0_poly() -> QPoly {
    QPoly::from_i64(&[-9, -24, -95, -104, -46, -10, -1])
}

pub fn p1_poly() -> QPoly {
    QPoly::from_i64(&[-9, 3, 6, 1])
}

pub fn s_poly() -> QPoly {
    QPoly::from_i64(&[64, 110, 325, 452, 271, 74, 8])
}

/// Exact identity relating the two c-formulas:
/// P0^2 - P1^2 f = k x^2 (3+x)^2 S; returns the constant k.
pub fn c_formula_identity(curve: &SexticCurve) -> Result<Rat> {
    let p0 = p0_poly();
    let p1 = p1_poly();
    let lhs = p0.mul(&p0).sub(&p1.mul(&p1).mul(&curve.poly()));
    let xfac = QPoly::from_i64(&[0, 0, 1]).mul(&QPoly::from_i64(&[9, 6, 1]));
    let q = lhs
        .divides_exactly(&xfac.mul(&s_poly()))
        .ok_or_else(|| Error::Certificate("c-formula identity fails".into()))?;
    if q.degree() != Some(0) {
        return Err(Error::Certificate(
            "c-formula quotient not constant".into(),
        ));
    }
    Ok(q.c[0].clone())
}

/// Point of the curve in the c-map's domain.
#[derive(Debug, Clone, PartialEq)]
pub enum CurvePoint {
    Affine(Rat, Rat),
    InfPlus,
    InfMinus,
}

/// c as a function of a point of the sextic model, using whichever of the
/// two printed formulas is determinate; infinities go through the Laurent
/// expansion of y.
pub fn c_map(curve: &SexticCurve, pt: &CurvePoint) -> Result<CValue> {
    match pt {
        CurvePoint::Affine(x, y) => {
            if !curve.is_on_curve(x, y) {
                return Err(Error::PointNotOnCurve);
            }
            let p0 = p0_poly().eval(x);
            let p1 = p1_poly().eval(x);
            let n1 = &p0 + &p1 * y;
            let d1 = rat(8) * x * x * {
                let t = rat(3) + x;
                &t * &t
            };
            let n2 = s_poly().eval(x);
            let d2 = rat(2) * (&p0 - &p1 * y);
            if !Zero::is_zero(&d1) {
                let v1 = &n1 / &d1;
                if !Zero::is_zero(&d2) {
                    debug_assert_eq!(v1, &n2 / &d2);
                }
                return Ok(CValue::Finite(v1.to_string()));
            }
            if !Zero::is_zero(&d2) {
                return Ok(CValue::Finite((&n2 / &d2).to_string()));
            }
            if Zero::is_zero(&n1) && Zero::is_zero(&n2) {
                unreachable!("both c-formulas indeterminate on the curve");
            }
            Ok(CValue::Infinite)
        }
        // the c-values at the two infinite points: the pole sits on the
        // y/x^3 -> -1 branch of the orientation fixed by the affine rows,
        // and the labels follow the printed table
        CurvePoint::InfPlus => match c_series_at_infinity(curve, false)? {
            SeriesValue::Pole { order, lead } => {
                if order != 2 || lead.abs() != ratio(1, 4) {
                    return Err(Error::Certificate(
                        "c does not have the expected double pole at infinity(+)".into(),
                    ));
                }
                Ok(CValue::Infinite)
            }
            SeriesValue::Finite(_) => {
                Err(Error::Certificate("expected a pole at infinity(+)".into()))
            }
        },
        CurvePoint::InfMinus => match c_series_at_infinity(curve, true)? {
            SeriesValue::Finite(v) => Ok(CValue::Finite(v.to_string())),
            SeriesValue::Pole { .. } => Err(Error::Certificate(
                "expected a finite value at infinity(-)".into(),
            )),
        },
    }
}

enum SeriesValue {
    Finite(Rat),
    Pole { order: i64, lead: Rat },
}

/// Truncated Laurent data: sum c[i] x^(lead - i).
#[derive(Clone, Debug)]
struct Laurent {
    lead: i64,
    c: Vec<Rat>,
}

impl Laurent {
    fn from_poly(p: &QPoly, terms: usize) -> Laurent {
        assert!(!p.is_zero());
        let d = p.deg();
        let mut c = Vec::with_capacity(terms);
        for i in 0..terms {
            c.push(if i <= d {
                p.c[d - i].clone()
            } else {
                Rat::zero()
            });
        }
        Laurent { lead: d as i64, c }
    }
    fn normalize(mut self) -> Laurent {
        while !self.c.is_empty() && Zero::is_zero(&self.c[0]) {
            self.c.remove(0);
            self.c.push(Rat::zero()); // accuracy lost at the tail
            self.lead -= 1;
        }
        self
    }
    fn at(&self, e: i64) -> Rat {
        let idx = self.lead - e;
        if idx < 0 || idx as usize >= self.c.len() {
            Rat::zero()
        } else {
            self.c[idx as usize].clone()
        }
    }
    fn add(&self, o: &Laurent) -> Laurent {
        let lead = self.lead.max(o.lead);
        let n = self.c.len().min(o.c.len());
        let mut c = vec![Rat::zero(); n];
        for (i, v) in c.iter_mut().enumerate() {
            let e = lead - i as i64;
            *v = self.at(e) + o.at(e);
        }
        Laurent { lead, c }.normalize()
    }
    fn mul(&self, o: &Laurent) -> Laurent {
        let n = self.c.len().min(o.c.len());
        let mut c = vec![Rat::zero(); n];
        for i in 0..n {
            if Zero::is_zero(&self.c[i]) {
                continue;
            }
            for j in 0..n - i {
                let t = &self.c[i] * &o.c[j];
                c[i + j] += t;
            }
        }
        Laurent {
            lead: self.lead + o.lead,
            c,
        }
        .normalize()
    }
    fn inv(&self) -> Laurent {
        let s = self.clone().normalize();
        assert!(!Zero::is_zero(&s.c[0]), "inverting a zero series");
        let n = s.c.len();
        let mut c = vec![Rat::zero(); n];
        let l0 = s.c[0].recip();
        c[0] = l0.clone();
        for i in 1..n {
            let mut acc = Rat::zero();
            for j in 0..i {
                acc += &c[j] * &s.c[i - j];
            }
            c[i] = -acc * &l0;
        }
        Laurent { lead: -s.lead, c }
    }
    fn scale(&self, k: &Rat) -> Laurent {
        Laurent {
            lead: self.lead,
            c: self.c.iter().map(|v| v * k).collect(),
        }
    }
}

fn c_series_at_infinity(curve: &SexticCurve, branch_plus: bool) -> Result<SeriesValue> {
    let terms = 12usize;
    let e = infinity_expansion(curve, branch_plus, terms);
    let y = Laurent { lead: 3, c: e };
    let p0 = Laurent::from_poly(&p0_poly(), terms);
    let p1 = Laurent::from_poly(&p1_poly(), terms);
    let num1 = p0.add(&p1.mul(&y));
    let den1 = Laurent::from_poly(
        &QPoly::from_i64(&[0, 0, 8]).mul(&QPoly::from_i64(&[9, 6, 1])),
        terms,
    );
    let num1n = num1.clone().normalize();
    let c_series = if num1n.lead - den1.lead >= 0 {
        num1.mul(&den1.inv())
    } else {
        let s = Laurent::from_poly(&s_poly(), terms);
        let den2 = p0.add(&p1.mul(&y).scale(&rat(-1))).scale(&rat(2));
        s.mul(&den2.inv())
    }
    .normalize();
    if c_series.lead > 0 && !Zero::is_zero(&c_series.c[0]) {
        return Ok(SeriesValue::Pole {
            order: c_series.lead,
            lead: c_series.c[0].clone(),
        });
    }
    Ok(SeriesValue::Finite(c_series.at(0)))
}

/// The composed backward map (x, y) -> (z, c) of the chain, as curve
/// functions.
pub fn backward_map(curve: &SexticCurve) -> Result<(CurveFn, CurveFn)> {
    let f = curve.poly();
    let q_poly = QPoly::new(vec![rat(-1), ratio(-4, 3)]);
    let (a3, b3, _c3) = quadratic_in_t(&t3_fixture())?;
    let a_x = a3.compose(&q_poly);
    let b_x = b3.compose(&q_poly);
    let y_fn = CurveFn::y(&f);
    let p_fn = y_fn.mul(&CurveFn::from_rat(&rat(192), &f));
    // t = (p - B)/(2A)
    let t_fn = p_fn
        .add(&CurveFn::from_poly(b_x.neg(), &f))
        .mul(&CurveFn::from_poly(a_x.scale(&rat(2)), &f).inv());
    let q_fn = CurveFn::from_poly(q_poly, &f);
    let r_fn = q_fn.add(&t_fn.neg());
    let s_fn = r_fn.mul(&t_fn);
    let z_fn = r_fn.add(&CurveFn::from_rat(&rat(-1), &f));
    let c_fn = s_fn.add(&CurveFn::from_rat(&ratio(-4, 3), &f));
    Ok((z_fn, c_fn))
}

/// Pull the trace polynomial back along the chain and verify it vanishes
/// identically on the curve.
pub fn chain_pullback_vanishes(curve: &SexticCurve) -> Result<bool> {
    let f = curve.poly();
    let (z_fn, c_fn) = backward_map(curve)?;
    let tau = tau5();
    let pulled = tau.eval_generic(
        &z_fn,
        &c_fn,
        &|a, b| a.add(b),
        &|a, b| a.mul(b),
        &|r| CurveFn::from_rat(r, &f),
    );
    Ok(pulled.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_reproduces_all_intermediates() {
        let (curve, steps) = hyperelliptic_chain().unwrap();
        assert_eq!(curve, SexticCurve::pentacycle_curve());
        assert_eq!(steps.len(), 5);
        assert_eq!(t2_fixture().coeff(0, 0), rat(238));
        assert_eq!(t4_fixture().c[6], rat(6561));
        assert_eq!(curve.coeff(5), &rat(8));
    }

    #[test]
    fn chain_rejects_corrupted_trace_fixture() {
        let mut bad = tau5();
        bad.add_term(0, 0, rat(1));
        assert!(hyperelliptic_chain_from(&bad).is_err());
    }

    #[test]
    fn trace_curve_has_exactly_one_node() {
        let (pts, analysis) = singular_points(&tau5()).unwrap();
        assert_eq!(pts, vec![(rat(-1), ratio(-4, 3))]);
        assert!(!analysis.nonrational_exist);
        assert_eq!(
            node_check(&tau5(), &rat(-1), &ratio(-4, 3)).unwrap(),
            NodeKind::Node
        );
    }

    #[test]
    fn cusp_and_smooth_examples() {
        let cusp = BiPoly::from_i64_terms(&[(2, 0, 1), (0, 3, -1)]);
        let (pts, _) = singular_points(&cusp).unwrap();
        assert_eq!(pts, vec![(rat(0), rat(0))]);
        assert_eq!(
            node_check(&cusp, &rat(0), &rat(0)).unwrap(),
            NodeKind::NotNode
        );
        let conic = BiPoly::from_i64_terms(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]);
        let (pts, a) = singular_points(&conic).unwrap();
        assert!(pts.is_empty());
        assert!(!a.nonrational_exist);
        let axes = BiPoly::from_i64_terms(&[(1, 1, 1)]);
        assert_eq!(
            node_check(&axes, &rat(0), &rat(0)).unwrap(),
            NodeKind::Node
        );
    }

    #[test]
    fn c_map_table_values() {
        let curve = SexticCurve::pentacycle_curve();
        let cases = [
            (CurvePoint::Affine(rat(0), rat(1)), CValue::Infinite),
            (
                CurvePoint::Affine(rat(0), rat(-1)),
                CValue::Finite(ratio(-16, 9).to_string()),
            ),
            (
                CurvePoint::Affine(rat(-3), rat(1)),
                CValue::Finite(ratio(-64, 9).to_string()),
            ),
            (CurvePoint::Affine(rat(-3), rat(-1)), CValue::Infinite),
            (CurvePoint::InfPlus, CValue::Infinite),
            (CurvePoint::InfMinus, CValue::Finite(rat(-2).to_string())),
        ];
        for (pt, expect) in cases {
            assert_eq!(c_map(&curve, &pt).unwrap(), expect, "{pt:?}");
        }
    }

    #[test]
    fn infinity_expansion_leading_terms() {
        let curve = SexticCurve::pentacycle_curve();
        let e = infinity_expansion(&curve, true, 5);
        assert_eq!(e, vec![rat(1), rat(4), rat(3), rat(-1), rat(2)]);
        let m = infinity_expansion(&curve, false, 1);
        assert_eq!(m[0], rat(-1));
        // square consistency: truncations of y^2 agree with f down to the
        // truncation order
        let k = 9usize;
        let e = infinity_expansion(&curve, true, k);
        let mut approx = QPoly::zero();
        for (j, v) in e.iter().enumerate() {
            approx = approx.add(&QPoly::monomial(&Rat::zero(), k - 1 - j).scale(v));
        }
        // approx ~ y * x^(k-4); compare square against f * x^(2k-8)
        let diff = approx
            .mul(&approx)
            .sub(&curve.poly().mul(&QPoly::monomial(&Rat::zero(), 2 * k - 8)));
        // all terms of exponent > (k - 4) + (3 - k + 1) + ... must cancel:
        // remaining degree is at most 2k - 8 + 6 - k = k - 2 ... conservative:
        assert!(diff.degree().unwrap() < (k - 1) as usize);
    }

    #[test]
    fn c_formula_identity_holds() {
        let curve = SexticCurve::pentacycle_curve();
        let k = c_formula_identity(&curve).unwrap();
        assert_eq!(k, rat(4));
    }

    #[test]
    fn pullback_of_trace_polynomial_vanishes() {
        let curve = SexticCurve::pentacycle_curve();
        assert!(chain_pullback_vanishes(&curve).unwrap());
    }

    #[test]
    fn disc_is_two_to_twelve_times_3701() {
        let curve = SexticCurve::pentacycle_curve();
        assert_eq!(curve.poly().discriminant().unwrap(), rat(15_159_296));
    }
}
