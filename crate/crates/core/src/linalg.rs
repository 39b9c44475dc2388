//! Exact dense linear algebra over a [`FieldSpec`].
//!
//! Elimination is Gauss-Jordan with the first nonzero entry (in row order) as
//! pivot, so reduced row echelon forms and the kernel bases read off from
//! them are canonical.

use crate::fields::{FieldSpec, Scalar};

pub type Vector = Vec<Scalar>;
pub type Matrix = Vec<Vec<Scalar>>;

pub fn zeros(n: usize, field: FieldSpec) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(n: usize, i: usize, field: FieldSpec) -> Vector {
    let mut v = zeros(n, field);
    v[i] = field.one();
    v
}

pub fn identity(n: usize, field: FieldSpec) -> Matrix {
    (0..n).map(|i| unit_vector(n, i, field)).collect()
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn neg(v: &[Scalar]) -> Vector {
    v.iter().map(|x| -x).collect()
}

/// `sum_i coeffs[i] * vectors[i]`.
pub fn combination(coeffs: &[Scalar], vectors: &[Vector], field: FieldSpec) -> Vector {
    let n = vectors.first().map_or(0, Vec::len);
    let mut acc = zeros(n, field);
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (a, x) in acc.iter_mut().zip(v) {
            *a = &*a + &(c * x);
        }
    }
    acc
}

pub fn mat_vec(m: &Matrix, v: &[Scalar], field: FieldSpec) -> Vector {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(field.zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, field: FieldSpec) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(field.zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let t = &f * &m[r][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    rref(&mut m.clone()).len()
}

/// Basis of `{x : m x = 0}` for an `_ x ncols` matrix, one vector per free
/// column in increasing order, each with a 1 in its free coordinate.
pub fn kernel(m: &Matrix, ncols: usize, field: FieldSpec) -> Vec<Vector> {
    let mut r = m.clone();
    let pivots = rref(&mut r);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = unit_vector(ncols, free, field);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[row][free];
            }
            v
        })
        .collect()
}

pub fn inverse(m: &Matrix, field: FieldSpec) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .zip(identity(n, field))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Coordinates of `v` in the (independent) family `basis`, if `v` lies in
/// its span.
pub fn coordinates(basis: &[Vector], v: &[Scalar], field: FieldSpec) -> Option<Vector> {
    let k = basis.len();
    let n = v.len();
    let mut aug: Matrix = (0..n)
        .map(|i| {
            basis
                .iter()
                .map(|b| b[i].clone())
                .chain(std::iter::once(v[i].clone()))
                .collect()
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&k) {
        return None;
    }
    let mut out = zeros(k, field);
    for (row, &pc) in pivots.iter().enumerate() {
        out[pc] = aug[row][k].clone();
    }
    Some(out)
}

pub fn in_span(basis: &[Vector], v: &[Scalar], field: FieldSpec) -> bool {
    coordinates(basis, v, field).is_some()
}

pub fn is_independent(vectors: &[Vector]) -> bool {
    rank(&vectors.to_vec()) == vectors.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Matrix {
        let f = FieldSpec::Rationals;
        rows.iter().map(|r| r.iter().map(|&x| f.int(x)).collect()).collect()
    }

    #[test]
    fn kernel_basis_is_canonical() {
        let f = FieldSpec::Rationals;
        let m = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&m, 3, f);
        assert_eq!(k, q(&[&[-2, 1, 0], &[-3, 0, 1]]));
        for v in &k {
            assert!(is_zero(&mat_vec(&m, v, f)));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = FieldSpec::Rationals;
        let m = q(&[&[2, 1], &[7, 4]]);
        let inv = inverse(&m, f).unwrap();
        assert_eq!(mat_mul(&m, &inv, f), identity(2, f));
        assert!(inverse(&q(&[&[1, 2], &[2, 4]]), f).is_none());
    }

    #[test]
    fn coordinates_in_span() {
        let f = FieldSpec::PrimeField(5);
        let basis = vec![vec![f.int(1), f.int(1), f.int(0)], vec![f.int(0), f.int(1), f.int(1)]];
        let v = vec![f.int(2), f.int(0), f.int(3)];
        let c = coordinates(&basis, &v, f).unwrap();
        assert_eq!(combination(&c, &basis, f), v);
        assert!(!in_span(&basis, &[f.int(1), f.int(0), f.int(0)], f));
    }
}
