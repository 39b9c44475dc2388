//! Seeded random elements for property suites and probes.

use rand::Rng;

use crate::composition::{Algebra, SplitOctonions};
use crate::fields::{FieldSpec, Scalar};
use crate::linalg::Vector;

/// An integer in `-bound..=bound`, read in the field.
pub fn scalar(rng: &mut impl Rng, field: FieldSpec, bound: i64) -> Scalar {
    field.int(rng.gen_range(-bound..=bound))
}

/// A nonzero element `n/d` with `|n|, d <= bound`.
pub fn nonzero_fraction(rng: &mut impl Rng, field: FieldSpec, bound: i64) -> Scalar {
    loop {
        let n = rng.gen_range(-bound..=bound);
        let d = rng.gen_range(1..=bound);
        if let Ok(x) = field.fraction(n, d) {
            if !x.is_zero() {
                return x;
            }
        }
    }
}

pub fn vector(rng: &mut impl Rng, field: FieldSpec, n: usize, bound: i64) -> Vector {
    (0..n).map(|_| scalar(rng, field, bound)).collect()
}

pub fn octonion(rng: &mut impl Rng, field: FieldSpec, bound: i64) -> Vector {
    vector(rng, field, 8, bound)
}

/// A combination of `basis` with small integer coefficients and nonzero
/// norm.
pub fn invertible_in(rng: &mut impl Rng, basis: &[Vector], field: FieldSpec, bound: i64) -> Vector {
    let alg = SplitOctonions::new(field);
    loop {
        let c = vector(rng, field, basis.len(), bound);
        let v = crate::linalg::combination(&c, basis, field);
        if !alg.norm(&v).is_zero() {
            return v;
        }
    }
}

/// A norm-one element `q^2 / N(q)` of the quaternion algebra spanned by
/// `basis`.
pub fn norm_one_in(rng: &mut impl Rng, basis: &[Vector], field: FieldSpec, bound: i64) -> Vector {
    let alg = SplitOctonions::new(field);
    let q = invertible_in(rng, basis, field, bound);
    let n = alg.norm(&q).inv().expect("invertible");
    crate::linalg::scale(&n, &alg.mul(&q, &q))
}
