//! Sparse bivariate polynomials over Q, with a dense z-major layer used by
//! the heavier products and exact divisions.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::num::Rat;
use super::poly::QPoly;
use crate::{Error, Result};

/// Sparse bivariate polynomial: (i, j) -> coefficient of z^i c^j.
/// The variable names are generic; `z` is the first slot, `c` the second.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct BiPoly {
    pub terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn from_terms(terms: &[(u32, u32, Rat)]) -> Self {
        let mut b = BiPoly::zero();
        for (i, j, v) in terms {
            b.add_term(*i, *j, v.clone());
        }
        b
    }

    pub fn from_i64_terms(terms: &[(u32, u32, i64)]) -> Self {
        let mut b = BiPoly::zero();
        for &(i, j, v) in terms {
            b.add_term(i, j, super::num::rat(v));
        }
        b
    }

    pub fn constant(v: Rat) -> Self {
        let mut b = BiPoly::zero();
        b.add_term(0, 0, v);
        b
    }

    pub fn add_term(&mut self, i: u32, j: u32, v: Rat) {
        if v.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *e += v;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn deg_z(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn deg_c(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.terms {
            out.add_term(i, j, v.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.terms {
            out.add_term(i, j, -v.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, -v.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(&key, v)| (key, v * k)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // route through the dense layer when both operands are large
        if self.terms.len() > 40 && rhs.terms.len() > 40 {
            return Dense::from_sparse(self).mul(&Dense::from_sparse(rhs)).to_sparse();
        }
        let mut out = BiPoly::zero();
        for (&(i1, j1), v1) in &self.terms {
            for (&(i2, j2), v2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, v1 * v2);
            }
        }
        out
    }

    /// Partial derivative in the first (z) variable.
    pub fn d_z(&self) -> Self {
        let mut out = BiPoly::zero();
        for (&(i, j), v) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, v * super::num::rat(i as i64));
            }
        }
        out
    }

    /// Partial derivative in the second (c) variable.
    pub fn d_c(&self) -> Self {
        let mut out = BiPoly::zero();
        for (&(i, j), v) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, v * super::num::rat(j as i64));
            }
        }
        out
    }

    /// Specialize c to a rational, leaving a polynomial in z.
    pub fn eval_c(&self, c: &Rat) -> QPoly {
        let mut coeffs = vec![Rat::zero(); self.deg_z() as usize + 1];
        for (&(i, j), v) in &self.terms {
            let mut t = v.clone();
            for _ in 0..j {
                t *= c;
            }
            coeffs[i as usize] += t;
        }
        QPoly::new(coeffs)
    }

    /// Specialize z to a rational, leaving a polynomial in c.
    pub fn eval_z(&self, z: &Rat) -> QPoly {
        let mut coeffs = vec![Rat::zero(); self.deg_c() as usize + 1];
        for (&(i, j), v) in &self.terms {
            let mut t = v.clone();
            for _ in 0..i {
                t *= z;
            }
            coeffs[j as usize] += t;
        }
        QPoly::new(coeffs)
    }

    pub fn eval(&self, z: &Rat, c: &Rat) -> Rat {
        self.eval_c(c).eval(z)
    }

    /// Evaluate with both variables in an arbitrary commutative context via
    /// caller-provided operations (used for function-field pullbacks).
    pub fn eval_generic<T: Clone>(
        &self,
        z: &T,
        c: &T,
        add: &dyn Fn(&T, &T) -> T,
        mul: &dyn Fn(&T, &T) -> T,
        from_rat: &dyn Fn(&Rat) -> T,
    ) -> T {
        // Horner in z of polynomials Horner-evaluated in c
        let dz = self.deg_z();
        let mut acc: Option<T> = None;
        for i in (0..=dz).rev() {
            // coefficient of z^i as value in T
            let dc = self.deg_c();
            let mut cacc: Option<T> = None;
            for j in (0..=dc).rev() {
                let coef = self.coeff(i, j);
                let term = from_rat(&coef);
                cacc = Some(match cacc {
                    None => term,
                    Some(a) => add(&mul(&a, c), &term),
                });
            }
            let ci = cacc.unwrap();
            acc = Some(match acc {
                None => ci,
                Some(a) => add(&mul(&a, z), &ci),
            });
        }
        acc.unwrap_or_else(|| from_rat(&Rat::zero()))
    }

    /// Substitute polynomials for both variables: self(pz, pc).
    pub fn compose(&self, pz: &BiPoly, pc: &BiPoly) -> BiPoly {
        self.eval_generic(
            pz,
            pc,
            &|a, b| a.add(b),
            &|a, b| a.mul(b),
            &|r| BiPoly::constant(r.clone()),
        )
    }

    /// View as a polynomial in z with QPoly (in c) coefficients.
    pub fn z_coefficients(&self) -> Vec<QPoly> {
        let dz = self.deg_z() as usize;
        let dc = self.deg_c() as usize;
        let mut rows = vec![vec![Rat::zero(); dc + 1]; dz + 1];
        for (&(i, j), v) in &self.terms {
            rows[i as usize][j as usize] = v.clone();
        }
        rows.into_iter().map(QPoly::new).collect()
    }

    pub fn from_z_coefficients(rows: &[QPoly]) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.c.iter().enumerate() {
                out.add_term(i as u32, j as u32, v.clone());
            }
        }
        out
    }

    /// Exact division by a monomial z^i c^j.
    pub fn div_monomial(&self, i: u32, j: u32) -> Result<BiPoly> {
        let mut out = BiPoly::zero();
        for (&(a, b), v) in &self.terms {
            if a < i || b < j {
                return Err(Error::InexactDivision);
            }
            out.add_term(a - i, b - j, v.clone());
        }
        Ok(out)
    }

    /// Exact division by a divisor monic in z (no remainder allowed).
    pub fn div_exact_in_z(&self, divisor: &BiPoly) -> Result<BiPoly> {
        let num = Dense::from_sparse(self);
        let den = Dense::from_sparse(divisor);
        let (q, r) = num.div_rem_monic_z(&den)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q.to_sparse())
    }

    /// Resultant in the z variable, by evaluation/interpolation at rational
    /// points where neither leading coefficient vanishes.
    pub fn resultant_z(&self, rhs: &Self) -> Result<QPoly> {
        if self.is_zero() || rhs.is_zero() {
            return Err(Error::ZeroPolynomial("bivariate resultant"));
        }
        let a_rows = self.z_coefficients();
        let b_rows = rhs.z_coefficients();
        let da = a_rows.len() - 1;
        let db = b_rows.len() - 1;
        if da == 0 {
            // Res_z(const(c), g) = const(c)^deg_z(g)
            return Ok(a_rows[0].pow(db));
        }
        if db == 0 {
            return Ok(b_rows[0].pow(da));
        }
        let lead_a = a_rows.last().unwrap();
        let lead_b = b_rows.last().unwrap();
        let bound = da * (self.deg_c().max(rhs.deg_c()) as usize)
            + db * (self.deg_c().max(rhs.deg_c()) as usize)
            + 1;
        let mut xs = Vec::with_capacity(bound);
        let mut ys = Vec::with_capacity(bound);
        let mut t = 0i64;
        while xs.len() < bound {
            let x = super::num::rat(t);
            t += 1;
            if lead_a.eval(&x).is_zero() || lead_b.eval(&x).is_zero() {
                continue;
            }
            let fa = self.eval_c(&x);
            let fb = rhs.eval_c(&x);
            let r = fa.resultant(&fb)?;
            xs.push(x);
            ys.push(r);
        }
        Ok(lagrange_interpolate(&xs, &ys))
    }
}

/// Lagrange interpolation through exact points.
pub fn lagrange_interpolate(xs: &[Rat], ys: &[Rat]) -> QPoly {
    let n = xs.len();
    let mut acc = QPoly::zero();
    for i in 0..n {
        let mut basis = QPoly::new(vec![Rat::from_integer(1.into())]);
        let mut denom = Rat::from_integer(1.into());
        for j in 0..n {
            if i == j {
                continue;
            }
            basis = basis.mul(&QPoly::new(vec![-xs[j].clone(), Rat::from_integer(1.into())]));
            denom *= &xs[i] - &xs[j];
        }
        acc = acc.add(&basis.scale(&(&ys[i] / &denom)));
    }
    acc
}

/// Dense z-major representation: coefficient of z^i is a QPoly in c.
pub struct Dense {
    pub rows: Vec<QPoly>,
}

impl Dense {
    pub fn from_sparse(b: &BiPoly) -> Self {
        Dense {
            rows: b.z_coefficients(),
        }
    }

    pub fn to_sparse(&self) -> BiPoly {
        BiPoly::from_z_coefficients(&self.rows)
    }

    fn normalize(mut rows: Vec<QPoly>) -> Vec<QPoly> {
        while rows.last().map_or(false, |r| r.is_zero()) {
            rows.pop();
        }
        rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Dense { rows: Vec::new() };
        }
        let mut rows = vec![QPoly::zero(); self.rows.len() + rhs.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.rows.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                rows[i + j] = rows[i + j].add(&a.mul(b));
            }
        }
        Dense {
            rows: Dense::normalize(rows),
        }
    }

    /// Division by a divisor whose z-leading coefficient is a nonzero
    /// constant.
    pub fn div_rem_monic_z(&self, d: &Dense) -> Result<(Dense, Dense)> {
        let drows = Dense::normalize(d.rows.clone());
        if drows.is_empty() {
            return Err(Error::ZeroPolynomial("bivariate division"));
        }
        let lead = drows.last().unwrap();
        if lead.degree() != Some(0) {
            return Err(Error::Precondition(
                "divisor must have constant z-leading coefficient".into(),
            ));
        }
        let linv = QPoly::new(vec![lead.c[0].recip()]);
        let mut rem = Dense::normalize(self.rows.clone());
        let dd = drows.len() - 1;
        if rem.len() <= dd {
            return Ok((
                Dense { rows: Vec::new() },
                Dense { rows: rem },
            ));
        }
        let nd = rem.len() - 1;
        let mut quot = vec![QPoly::zero(); nd - dd + 1];
        for i in (dd..=nd).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].mul(&linv);
            for (j, dc) in drows.iter().enumerate() {
                let t = q.mul(dc);
                rem[i - dd + j] = rem[i - dd + j].sub(&t);
            }
            quot[i - dd] = q;
        }
        Ok((
            Dense {
                rows: Dense::normalize(quot),
            },
            Dense {
                rows: Dense::normalize(rem),
            },
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::num::rat;

    #[test]
    fn compose_and_eval() {
        // F = z^2 + c ; z -> r - 1, c -> s - 4/3
        let f = BiPoly::from_i64_terms(&[(2, 0, 1), (0, 1, 1)]);
        let pz = BiPoly::from_i64_terms(&[(1, 0, 1), (0, 0, -1)]);
        let pc = BiPoly::from_terms(&[(0, 1, rat(1)), (0, 0, crate::exact::num::ratio(-4, 3))]);
        let g = f.compose(&pz, &pc);
        // (r-1)^2 + s - 4/3 at (r,s) = (2, 1): 1 + 1 - 4/3 = 2/3
        assert_eq!(g.eval(&rat(2), &rat(1)), crate::exact::num::ratio(2, 3));
    }

    #[test]
    fn resultant_z_cusp() {
        // F = z^2 - c^3, F_z = 2z: Res_z = 4*(-c^3)... = -4c^3 up to sign
        let f = BiPoly::from_i64_terms(&[(2, 0, 1), (0, 3, -1)]);
        let fz = f.d_z();
        let r = f.resultant_z(&fz).unwrap();
        // Res(z^2 - c^3, 2z) = 4(z^2-c^3) at z=0 ... = -4c^3
        assert_eq!(r, QPoly::from_i64(&[0, 0, 0, -4]));
    }

    #[test]
    fn exact_division_in_z() {
        let a = BiPoly::from_i64_terms(&[(1, 0, 1), (0, 1, 1)]); // z + c
        let b = BiPoly::from_i64_terms(&[(1, 1, 1), (2, 0, 1), (0, 2, 1), (1, 0, 0)]);
        let prod = a.mul(&b);
        let q = prod.div_exact_in_z(&a).unwrap();
        assert_eq!(q, b);
    }
}
