//! Orders in Q[T]/(m(T)) saturated at one prime: radical/multiplier-ring
//! enlargement rounds, p-valuation of the discriminant, and the splitting
//! pattern of p read off the Frobenius fixed spaces of O/pO.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Fp;
use super::linalg::{kernel_basis, rref};
use super::num::{rat_val_p, Rat};
use super::poly::QPoly;
use crate::{Error, Result};

/// Order with Z-basis rows mat[i]/den in the power basis of a monic
/// integer modulus; den is a power of p.
#[derive(Clone, Debug)]
pub struct POrder {
    pub modulus: QPoly,
    pub p: u64,
    pub mat: Vec<Vec<BigInt>>,
    pub den: BigInt,
}

impl POrder {
    pub fn equation_order(modulus: &QPoly, p: u64) -> Result<POrder> {
        let n = modulus
            .degree()
            .ok_or(Error::ZeroPolynomial("order modulus"))?;
        if !modulus.lead().is_one() || modulus.c.iter().any(|c| !c.denom().is_one()) {
            return Err(Error::Precondition(
                "order modulus must be monic with integer coefficients".into(),
            ));
        }
        let mut mat = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in mat.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        Ok(POrder {
            modulus: modulus.clone(),
            p,
            mat,
            den: BigInt::one(),
        })
    }

    /// Saturate at p: iterate radical/multiplier enlargement to a fixpoint.
    pub fn p_maximal(modulus: &QPoly, p: u64) -> Result<POrder> {
        let mut order = POrder::equation_order(modulus, p)?;
        let disc = modulus.discriminant()?;
        if Zero::is_zero(&disc) {
            return Err(Error::NotSquarefree);
        }
        let rounds = rat_val_p(&disc, p).unsigned_abs() / 2 + 2;
        for _ in 0..rounds {
            let next = order.enlarge()?;
            if next.mat == order.mat && next.den == order.den {
                return Ok(order);
            }
            order = next;
        }
        Err(Error::Certificate(
            "order enlargement did not terminate".into(),
        ))
    }

    fn dim(&self) -> usize {
        self.mat.len()
    }

    pub fn basis_reps(&self) -> Vec<QPoly> {
        self.mat
            .iter()
            .map(|row| {
                QPoly::new(
                    row.iter()
                        .map(|v| Rat::new(v.clone(), self.den.clone()))
                        .collect(),
                )
            })
            .collect()
    }

    /// Coordinates of a reduced representative w.r.t. the basis.
    pub fn coordinates(&self, rep: &QPoly) -> Vec<Rat> {
        let n = self.dim();
        let mut aug: Vec<Vec<Rat>> = (0..n)
            .map(|j| {
                let mut row: Vec<Rat> = (0..n)
                    .map(|i| Rat::new(self.mat[i][j].clone(), self.den.clone()))
                    .collect();
                row.push(rep.coeff_or_zero(j, &Rat::zero()));
                row
            })
            .collect();
        let piv = rref(&mut aug);
        let mut coords = vec![Rat::zero(); n];
        for (r, &c) in piv.iter().enumerate() {
            coords[c] = aug[r][n].clone();
        }
        coords
    }

    pub fn contains(&self, rep: &QPoly) -> bool {
        self.coordinates(rep).iter().all(|c| c.denom().is_one())
    }

    /// Newton power sums of the modulus roots, degrees 0..=n.
    fn power_sums(&self, n: usize) -> Vec<Rat> {
        let d = self.modulus.deg();
        let a = |i: usize| self.modulus.c[i].clone();
        let mut p = vec![Rat::zero(); n + 1];
        p[0] = Rat::from_integer(BigInt::from(d as i64));
        for k in 1..=n {
            let mut s = Rat::zero();
            for i in 1..k.min(d + 1) {
                s += a(d - i) * p[k - i].clone();
            }
            if k <= d {
                s += Rat::from_integer(BigInt::from(k as i64)) * a(d - k);
            }
            p[k] = -s;
        }
        p
    }

    /// v_p of the discriminant of the order.
    pub fn disc_val_p(&self) -> i64 {
        let n = self.dim();
        let basis = self.basis_reps();
        let ps = self.power_sums(2 * n);
        let tr = |x: &QPoly| -> Rat {
            x.c.iter().enumerate().map(|(k, c)| c * &ps[k]).sum()
        };
        let mut gram = Vec::new();
        for i in 0..n {
            let mut row = Vec::new();
            for j in 0..n {
                let prod = basis[i].mul(&basis[j]).rem(&self.modulus);
                row.push(tr(&prod));
            }
            gram.push(row);
        }
        let det = det_rat(gram);
        rat_val_p(&det, self.p)
    }

    /// [O : Z[T]], a power of p.
    pub fn index(&self) -> BigInt {
        let det = det_big(&self.mat);
        let idx = Rat::new(self.den.pow(self.dim() as u32), det.abs());
        assert!(idx.denom().is_one());
        idx.to_integer()
    }

    /// One radical/multiplier round.
    fn enlarge(&self) -> Result<POrder> {
        let n = self.dim();
        let p = self.p;
        let pb = BigInt::from(p);
        let basis = self.basis_reps();
        let sample = Fp::from_u64(0, p);
        // q-power map x -> x^(p^m) with p^m >= n, linear on O/pO
        let mut q = 1u64;
        let mut e = 0u32;
        while q < n as u64 {
            q *= p;
            e += 1;
        }
        let mut frob_rows: Vec<Vec<Fp>> = Vec::new();
        for b in &basis {
            let mut acc = b.clone();
            for _ in 0..e {
                let mut powed = QPoly::from_i64(&[1]);
                for _ in 0..p {
                    powed = powed.mul(&acc).rem(&self.modulus);
                }
                acc = powed;
            }
            let coords = self.coordinates(&acc);
            let row: Vec<Fp> = coords
                .iter()
                .map(|v| {
                    assert!(v.denom().is_one(), "power left the order");
                    Fp::from_u64(v.numer().mod_floor(&pb).to_u64().unwrap(), p)
                })
                .collect();
            frob_rows.push(row);
        }
        let mut eqs: Vec<Vec<Fp>> = Vec::new();
        for j in 0..n {
            eqs.push((0..n).map(|i| frob_rows[i][j]).collect());
        }
        let radical = kernel_basis(eqs, n, &sample);
        // I = pO + radical lifts (an O-ideal), HNF basis in O-coordinates
        let mut gen_rows: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..n {
            let mut r = vec![BigInt::zero(); n];
            r[i] = pb.clone();
            gen_rows.push(r);
        }
        for v in &radical {
            gen_rows.push(v.iter().map(|x| BigInt::from(x.v)).collect());
        }
        let ideal = hnf(gen_rows, n);
        let ideal_reps: Vec<QPoly> = ideal
            .iter()
            .map(|row| {
                let mut acc = QPoly::zero();
                for (i, v) in row.iter().enumerate() {
                    acc = acc.add(&basis[i].scale(&Rat::from_integer(v.clone())));
                }
                acc.rem(&self.modulus)
            })
            .collect();
        let ideal_inv = invert_rat(
            ideal
                .iter()
                .map(|r| r.iter().map(|v| Rat::from_integer(v.clone())).collect())
                .collect(),
        );
        // multiplier condition x I <= p I over F_p
        let mut eqs2: Vec<Vec<Fp>> = Vec::new();
        for m in &ideal_reps {
            let mut cols: Vec<Vec<Rat>> = Vec::new();
            for b in &basis {
                let prod = b.mul(m).rem(&self.modulus);
                let oc = self.coordinates(&prod);
                let ic = mat_vec(&ideal_inv, &oc);
                cols.push(ic);
            }
            for slot in 0..n {
                let mut row = Vec::new();
                for col in cols.iter() {
                    let v = &col[slot];
                    assert!(v.denom().is_one(), "ideal is not an O-module");
                    row.push(Fp::from_u64(v.numer().mod_floor(&pb).to_u64().unwrap(), p));
                }
                eqs2.push(row);
            }
        }
        let mult = kernel_basis(eqs2, n, &sample);
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..n {
            rows.push(self.mat[i].iter().map(|v| v * &pb).collect());
        }
        for v in &mult {
            let mut acc = vec![BigInt::zero(); n];
            for (i, x) in v.iter().enumerate() {
                if x.v != 0 {
                    for j in 0..n {
                        acc[j] += &self.mat[i][j] * BigInt::from(x.v);
                    }
                }
            }
            rows.push(acc);
        }
        let mat = hnf(rows, n);
        Ok(normalize(POrder {
            modulus: self.modulus.clone(),
            p,
            mat,
            den: &self.den * &pb,
        }))
    }

    /// Residue degrees of the primes above p when p is unramified in the
    /// order: the radical of O/pO must vanish, and the number of primes of
    /// residue degree d comes from the fixed spaces of Frobenius powers.
    pub fn unramified_splitting(&self) -> Result<Vec<usize>> {
        let n = self.dim();
        let p = self.p;
        let pb = BigInt::from(p);
        let basis = self.basis_reps();
        let sample = Fp::from_u64(0, p);
        // Frobenius x -> x^p
        let mut frob_rows: Vec<Vec<Fp>> = Vec::new();
        for b in &basis {
            let mut powed = QPoly::from_i64(&[1]);
            for _ in 0..p {
                powed = powed.mul(b).rem(&self.modulus);
            }
            let coords = self.coordinates(&powed);
            frob_rows.push(
                coords
                    .iter()
                    .map(|v| {
                        assert!(v.denom().is_one());
                        Fp::from_u64(v.numer().mod_floor(&pb).to_u64().unwrap(), p)
                    })
                    .collect(),
            );
        }
        // radical check: kernel of x -> x^(p^e), p^e >= n
        let mut q = 1u64;
        let mut e = 0u32;
        while q < n as u64 {
            q *= p;
            e += 1;
        }
        let pow_matrix = |m: &Vec<Vec<Fp>>, times: u32| -> Vec<Vec<Fp>> {
            let mut acc: Vec<Vec<Fp>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| Fp::from_u64(u64::from(i == j), p))
                        .collect()
                })
                .collect();
            for _ in 0..times {
                // acc = acc * m (row-vector convention: x_{k+1} = x_k m)
                let mut next = vec![vec![Fp::from_u64(0, p); n]; n];
                for i in 0..n {
                    for k in 0..n {
                        if acc[i][k].v == 0 {
                            continue;
                        }
                        for j in 0..n {
                            next[i][j] = crate::exact::Field::add(
                                &next[i][j],
                                &crate::exact::Field::mul(&acc[i][k], &m[k][j]),
                            );
                        }
                    }
                }
                acc = next;
            }
            acc
        };
        let frob_e = pow_matrix(&frob_rows, e);
        let rad_eqs: Vec<Vec<Fp>> = (0..n)
            .map(|j| (0..n).map(|i| frob_e[i][j]).collect())
            .collect();
        if !kernel_basis(rad_eqs, n, &sample).is_empty() {
            return Err(Error::Precondition("p ramifies in the order".into()));
        }
        // fixed(d) = dim ker(frob^d - id) = sum_f n_f gcd(d, f): each
        // residue-field factor F_{p^f} meets the fixed space of frob^d in
        // the subfield F_{p^gcd(d,f)}
        let mut fixed = vec![0usize; n + 1];
        for d in 1..=n {
            let fd = pow_matrix(&frob_rows, d as u32);
            let eqs: Vec<Vec<Fp>> = (0..n)
                .map(|j| {
                    (0..n)
                        .map(|i| {
                            let idv = Fp::from_u64(u64::from(i == j), p);
                            crate::exact::Field::sub(&fd[i][j], &idv)
                        })
                        .collect()
                })
                .collect();
            fixed[d] = kernel_basis(eqs, n, &sample).len();
        }
        // solve the gcd-matrix system for the factor counts n_f
        let gmat: Vec<Vec<Rat>> = (1..=n)
            .map(|d| {
                (1..=n)
                    .map(|ff| {
                        Rat::from_integer(BigInt::from(super::num::gcd_u64(
                            d as u64, ff as u64,
                        )))
                    })
                    .collect()
            })
            .collect();
        let ginv = invert_rat(gmat);
        let rhs: Vec<Rat> = (1..=n)
            .map(|d| Rat::from_integer(BigInt::from(fixed[d] as i64)))
            .collect();
        let sol = mat_vec(&ginv, &rhs);
        let mut counts = vec![0usize; n + 1];
        for d in 1..=n {
            let v = &sol[d - 1];
            if !v.denom().is_one() || v.is_negative() {
                return Err(Error::Certificate(
                    "splitting count inconsistency".into(),
                ));
            }
            counts[d] = v.to_integer().to_usize().unwrap();
        }
        let mut pattern = Vec::new();
        for d in 1..=n {
            for _ in 0..counts[d] {
                pattern.push(d);
            }
        }
        if pattern.iter().sum::<usize>() != n {
            return Err(Error::Certificate("splitting degrees do not sum".into()));
        }
        Ok(pattern)
    }
}

fn normalize(mut o: POrder) -> POrder {
    let pb = BigInt::from(o.p);
    loop {
        if (&o.den % &pb).is_zero()
            && o.mat.iter().all(|r| r.iter().all(|v| (v % &pb).is_zero()))
        {
            o.den = &o.den / &pb;
            for r in o.mat.iter_mut() {
                for v in r.iter_mut() {
                    *v = &*v / &pb;
                }
            }
        } else {
            return o;
        }
    }
}

pub fn det_rat(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !Zero::is_zero(&m[r][c])) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        let inv = m[c][c].recip();
        for r in (c + 1)..n {
            if Zero::is_zero(&m[r][c]) {
                continue;
            }
            let factor = &m[r][c] * &inv;
            for k in c..n {
                let t = &m[c][k] * &factor;
                m[r][k] -= t;
            }
        }
    }
    det
}

pub fn det_big(m: &[Vec<BigInt>]) -> BigInt {
    let rat_m: Vec<Vec<Rat>> = m
        .iter()
        .map(|r| r.iter().map(|v| Rat::from_integer(v.clone())).collect())
        .collect();
    let d = det_rat(rat_m);
    assert!(d.denom().is_one());
    d.to_integer()
}

/// Row Hermite form of integer rows spanning a finite-index sublattice of
/// Z^n; returns an n x n upper-triangular basis.
pub fn hnf(rows: Vec<Vec<BigInt>>, n: usize) -> Vec<Vec<BigInt>> {
    let mut rows = rows;
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..n {
        loop {
            let mut idxs: Vec<usize> = (0..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .collect();
            if idxs.is_empty() {
                panic!("matrix not of full rank");
            }
            if idxs.len() == 1 {
                let r = idxs[0];
                let mut row = rows.swap_remove(r);
                if row[col].is_negative() {
                    for v in row.iter_mut() {
                        *v = -v.clone();
                    }
                }
                out.push(row);
                break;
            }
            idxs.sort_by_key(|&r| rows[r][col].abs());
            let (a, b) = (idxs[0], idxs[1]);
            let q = (&rows[b][col] / &rows[a][col]).clone();
            for j in 0..n {
                let t = &rows[a][j] * &q;
                rows[b][j] -= t;
            }
        }
    }
    for i in (0..out.len()).rev() {
        for k in 0..i {
            let (head, tail) = out.split_at_mut(i);
            let pivot = &tail[0];
            let q = head[k][i].div_floor(&pivot[i]);
            if !q.is_zero() {
                for j in 0..n {
                    let t = &pivot[j] * &q;
                    head[k][j] -= t;
                }
            }
        }
    }
    out
}

pub fn invert_rat(m: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rat>> = m
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            for j in 0..n {
                row.push(if i == j {
                    Rat::from_integer(1.into())
                } else {
                    Rat::zero()
                });
            }
            row
        })
        .collect();
    let piv = rref(&mut aug);
    assert_eq!(piv.len(), n, "singular matrix");
    let mut out = vec![vec![Rat::zero(); n]; n];
    for (r, &c) in piv.iter().enumerate() {
        for j in 0..n {
            out[c][j] = aug[r][n + j].clone();
        }
    }
    out
}

pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    (0..m[0].len())
        .map(|j| (0..m.len()).map(|i| &v[i] * &m[i][j]).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_maximal_order_of_the_sextic_at_2() {
        let f = QPoly::from_i64(&[1, 6, 5, 22, 22, 8, 1]);
        let o = POrder::p_maximal(&f, 2).unwrap();
        assert_eq!(o.disc_val_p(), 6);
        assert_eq!(o.index(), BigInt::from(8));
    }

    #[test]
    fn splitting_of_unramified_primes() {
        // x^2 + 1 at p = 5 splits, at p = 3 is inert
        let m = QPoly::from_i64(&[1, 0, 1]);
        let o5 = POrder::p_maximal(&m, 5).unwrap();
        assert_eq!(o5.unramified_splitting().unwrap(), vec![1, 1]);
        let o3 = POrder::p_maximal(&m, 3).unwrap();
        assert_eq!(o3.unramified_splitting().unwrap(), vec![2]);
        // ramified prime rejected
        let o2 = POrder::p_maximal(&m, 2).unwrap();
        assert!(o2.unramified_splitting().is_err());
    }

    #[test]
    fn index_detection_on_a_classic_example() {
        // Z[sqrt(5)] is not 2-maximal inside Q(sqrt(5)): the maximal order
        // contains (1 + sqrt(5))/2
        let m = QPoly::from_i64(&[-5, 0, 1]);
        let o = POrder::p_maximal(&m, 2).unwrap();
        assert_eq!(o.index(), BigInt::from(2));
        assert_eq!(o.disc_val_p(), 0);
        // 2 is inert in Q(sqrt(5))
        assert_eq!(o.unramified_splitting().unwrap(), vec![2]);
    }
}
