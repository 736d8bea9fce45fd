//! Tiny exact linear algebra over a [`Field`]: row reduction, kernels,
//! and solving, for the interpolation systems of the group law.

use super::field::Field;

/// Reduced row echelon form in place; returns pivot column per row.
pub fn rref<F: Field>(m: &mut Vec<Vec<F>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().unwrap();
        for j in c..cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let s = m[r][j].mul(&f);
                    m[i][j] = m[i][j].sub(&s);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the kernel of the matrix (rows are equations).
pub fn kernel_basis<F: Field>(mut m: Vec<Vec<F>>, cols: usize, sample: &F) -> Vec<Vec<F>> {
    for row in &m {
        debug_assert_eq!(row.len(), cols);
    }
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    let is_pivot = |c: usize| pivots.contains(&c);
    for free in 0..cols {
        if is_pivot(free) {
            continue;
        }
        let mut v = vec![sample.zero_like(); cols];
        v[free] = sample.one_like();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = m[ri][free].neg();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::num::{rat, Rat};

    #[test]
    fn kernel_of_simple_system() {
        // x + y = 0 ; y + z = 0  => kernel spanned by (1, -1, 1)
        let m = vec![
            vec![rat(1), rat(1), rat(0)],
            vec![rat(0), rat(1), rat(1)],
        ];
        let k = kernel_basis(m, 3, &Rat::from_integer(0.into()));
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[0], -v[1].clone());
        assert_eq!(v[2], -v[1].clone());
    }
}
