use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};

/// A 2x2 matrix over an exact field; the split quaternions M2(k).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Mat2(pub [[Scalar; 2]; 2]);

impl Mat2 {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Mat2 {
        Mat2([[a, b], [c, d]])
    }

    pub fn from_ints(field: FieldSpec, m: [[i64; 2]; 2]) -> Mat2 {
        Mat2::new(
            field.int(m[0][0]),
            field.int(m[0][1]),
            field.int(m[1][0]),
            field.int(m[1][1]),
        )
    }

    pub fn zero(field: FieldSpec) -> Mat2 {
        Mat2::from_ints(field, [[0, 0], [0, 0]])
    }

    pub fn identity(field: FieldSpec) -> Mat2 {
        Mat2::from_ints(field, [[1, 0], [0, 1]])
    }

    /// `E_ij` with `i, j` in `{0, 1}`.
    pub fn unit(field: FieldSpec, i: usize, j: usize) -> Mat2 {
        let mut m = Mat2::zero(field);
        m.0[i][j] = field.one();
        m
    }

    pub fn det(&self) -> Scalar {
        let [[a, b], [c, d]] = &self.0;
        a * d - b * c
    }

    pub fn trace(&self) -> Scalar {
        &self.0[0][0] + &self.0[1][1]
    }

    /// The bar involution `[[a,b],[c,d]] -> [[d,-b],[-c,a]]`.
    pub fn bar(&self) -> Mat2 {
        let [[a, b], [c, d]] = &self.0;
        Mat2::new(d.clone(), -b, -c, a.clone())
    }

    pub fn scale(&self, s: &Scalar) -> Mat2 {
        Mat2(self.0.clone().map(|row| row.map(|x| s * &x)))
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.0.iter().flatten()
    }
}

impl Add for &Mat2 {
    type Output = Mat2;
    fn add(self, o: &Mat2) -> Mat2 {
        let [[a, b], [c, d]] = &self.0;
        let [[e, f], [g, h]] = &o.0;
        Mat2::new(a + e, b + f, c + g, d + h)
    }
}

impl Sub for &Mat2 {
    type Output = Mat2;
    fn sub(self, o: &Mat2) -> Mat2 {
        let [[a, b], [c, d]] = &self.0;
        let [[e, f], [g, h]] = &o.0;
        Mat2::new(a - e, b - f, c - g, d - h)
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, o: &Mat2) -> Mat2 {
        let [[a, b], [c, d]] = &self.0;
        let [[e, f], [g, h]] = &o.0;
        Mat2::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2(self.0.clone().map(|row| row.map(|x| -x)))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.0;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

/// A split octonion `(x, y)` with `x, y` in M2(k).
///
/// Coordinates follow the basis
/// `[(E11,0), (E12,0), (E21,0), (E22,0), (0,E11), (0,E12), (0,E21), (0,E22)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Octonion {
    pub left: Mat2,
    pub right: Mat2,
}

impl Octonion {
    pub fn new(left: Mat2, right: Mat2) -> Octonion {
        Octonion { left, right }
    }

    pub fn zero(field: FieldSpec) -> Octonion {
        Octonion::new(Mat2::zero(field), Mat2::zero(field))
    }

    /// The identity `e = (E11 + E22, 0)`.
    pub fn identity(field: FieldSpec) -> Octonion {
        Octonion::new(Mat2::identity(field), Mat2::zero(field))
    }

    pub fn basis(field: FieldSpec, i: usize) -> Octonion {
        let mut c = vec![field.zero(); 8];
        c[i] = field.one();
        Octonion::from_coords(&c)
    }

    pub fn from_coords(c: &[Scalar]) -> Octonion {
        assert_eq!(c.len(), 8, "octonions have 8 coordinates");
        Octonion::new(
            Mat2::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()),
            Mat2::new(c[4].clone(), c[5].clone(), c[6].clone(), c[7].clone()),
        )
    }

    pub fn coords(&self) -> Vec<Scalar> {
        self.left.entries().chain(self.right.entries()).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.left.entries().chain(self.right.entries()).all(Scalar::is_zero)
    }

    /// `(x,y)(u,v) = (xu + v̄y, vx + yū)`.
    pub fn mul(&self, other: &Octonion) -> Octonion {
        let (x, y) = (&self.left, &self.right);
        let (u, v) = (&other.left, &other.right);
        Octonion::new(&(x * u) + &(&v.bar() * y), &(v * x) + &(y * &u.bar()))
    }

    /// Multiplication that refuses operands from different fields.
    pub fn checked_mul(&self, other: &Octonion) -> Result<Octonion> {
        let a = &self.left.0[0][0];
        let b = &other.left.0[0][0];
        if !a.compatible(b) {
            return Err(Error::InvalidArgument(
                "octonion operands live over different fields".into(),
            ));
        }
        Ok(self.mul(other))
    }

    /// `N((x,y)) = det(x) - det(y)`.
    pub fn norm(&self) -> Scalar {
        self.left.det() - self.right.det()
    }

    /// `(x̄, -y)`.
    pub fn conj(&self) -> Octonion {
        Octonion::new(self.left.bar(), -&self.right)
    }

    /// Polarization `N(a+b) - N(a) - N(b)`.
    pub fn bilinear(&self, other: &Octonion) -> Scalar {
        (self + other).norm() - self.norm() - other.norm()
    }

    pub fn scale(&self, s: &Scalar) -> Octonion {
        Octonion::new(self.left.scale(s), self.right.scale(s))
    }

    /// Parses `[[a,b],[c,d]];[[e,f],[g,h]]`.
    pub fn parse(s: &str, field: FieldSpec) -> Result<Octonion> {
        let bad = || Error::Parse {
            what: "octonion",
            input: s.to_string(),
        };
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (l, r) = cleaned.split_once(';').ok_or_else(bad)?;
        let parse_mat = |t: &str| -> Result<Vec<Scalar>> {
            let inner = t
                .strip_prefix("[[")
                .and_then(|t| t.strip_suffix("]]"))
                .ok_or_else(bad)?;
            let (r0, r1) = inner.split_once("],[").ok_or_else(bad)?;
            let vals: Vec<&str> = r0.split(',').chain(r1.split(',')).collect();
            if vals.len() != 4 {
                return Err(bad());
            }
            vals.into_iter().map(|v| field.parse_scalar(v)).collect()
        };
        let mut c = parse_mat(l)?;
        c.extend(parse_mat(r)?);
        Ok(Octonion::from_coords(&c))
    }
}

impl Add for &Octonion {
    type Output = Octonion;
    fn add(self, o: &Octonion) -> Octonion {
        Octonion::new(&self.left + &o.left, &self.right + &o.right)
    }
}

impl Sub for &Octonion {
    type Output = Octonion;
    fn sub(self, o: &Octonion) -> Octonion {
        Octonion::new(&self.left - &o.left, &self.right - &o.right)
    }
}

impl Mul for &Octonion {
    type Output = Octonion;
    fn mul(self, o: &Octonion) -> Octonion {
        Octonion::mul(self, o)
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion::new(-&self.left, -&self.right)
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.left, self.right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn oct(l: [[i64; 2]; 2], r: [[i64; 2]; 2]) -> Octonion {
        Octonion::new(Mat2::from_ints(Q, l), Mat2::from_ints(Q, r))
    }

    #[test]
    fn products_from_the_fixed_algebras() {
        let minus_e = oct([[-1, 0], [0, -1]], [[0, 0], [0, 0]]);
        let v = oct([[0, 0], [0, 0]], [[1, 0], [0, -1]]);
        assert_eq!(&v * &v, minus_e);
        let w = oct([[0, 0], [0, 0]], [[0, 1], [1, 0]]);
        assert_eq!(&w * &w, minus_e);
        for p in [2, 3, 7, 11] {
            let b = oct([[0, p], [1, 0]], [[0, 0], [0, 0]]);
            assert_eq!(&b * &b, oct([[p, 0], [0, p]], [[0, 0], [0, 0]]));
        }
    }

    #[test]
    fn norms() {
        assert_eq!(Octonion::identity(Q).norm(), Q.one());
        assert_eq!(oct([[0, 0], [0, 0]], [[1, 0], [0, 1]]).norm(), Q.int(-1));
        assert_eq!(oct([[1, 2], [3, 4]], [[0, 1], [1, 0]]).norm(), Q.int(-1));
    }

    #[test]
    fn conjugation() {
        let e = Octonion::identity(Q);
        assert_eq!(e.conj(), e);
        assert_eq!(Octonion::basis(Q, 0).conj(), Octonion::basis(Q, 3));
    }

    #[test]
    fn bilinear_examples() {
        let e = Octonion::identity(Q);
        assert_eq!(e.bilinear(&e), Q.int(2));
        assert_eq!(Octonion::basis(Q, 0).bilinear(&Octonion::basis(Q, 3)), Q.one());
        assert_eq!(Octonion::basis(Q, 1).bilinear(&Octonion::basis(Q, 0)), Q.zero());
    }

    #[test]
    fn literal_roundtrip() {
        let o = Octonion::parse("[[1,-2/3],[0,4]];[[5,6],[7,-8]]", Q).unwrap();
        assert_eq!(o.to_string(), "[[1,-2/3],[0,4]];[[5,6],[7,-8]]");
        assert_eq!(Octonion::parse(&o.to_string(), Q).unwrap(), o);
        assert!(Octonion::parse("[[1,2],[3,4]]", Q).is_err());
        assert!(Octonion::parse("[[1,2],[3]];[[1,2],[3,4]]", Q).is_err());
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let a = Octonion::identity(Q);
        let b = Octonion::identity(FieldSpec::PrimeField(5));
        assert!(a.checked_mul(&b).is_err());
        assert!(a.checked_mul(&a).is_ok());
    }
}
