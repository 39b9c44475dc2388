use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::arith::{inv_mod, mul_mod};

/// An exact field element.
///
/// Characteristic-zero fields (Q, formal R and C, Q_p) carry rationals;
/// prime fields carry a residue together with its modulus. Mixing the two
/// kinds, or residues with different moduli, is a programming error and
/// panics; the field-aware entry points check compatibility first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn rational(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn integer(n: i64) -> Scalar {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn residue(n: i64, modulus: u64) -> Scalar {
        let m = modulus as i64;
        Scalar::Residue {
            value: n.rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    /// The zero of the same field as `self`.
    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::zero()),
            Scalar::Residue { modulus, .. } => Scalar::Residue {
                value: 0,
                modulus: *modulus,
            },
        }
    }

    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::one()),
            Scalar::Residue { modulus, .. } => Scalar::Residue {
                value: 1,
                modulus: *modulus,
            },
        }
    }

    /// Same kind and, for residues, same modulus.
    pub fn compatible(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) => true,
            (Scalar::Residue { modulus: a, .. }, Scalar::Residue { modulus: b, .. }) => a == b,
            _ => false,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self * &i)
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    pub fn pow(&self, exp: i64) -> Scalar {
        let (base, mut e) = if exp < 0 {
            (self.inv().expect("negative power of zero"), exp.unsigned_abs())
        } else {
            (self.clone(), exp as u64)
        };
        let mut acc = self.one_like();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    fn binary(
        &self,
        other: &Scalar,
        q: impl Fn(&BigRational, &BigRational) -> BigRational,
        r: impl Fn(u64, u64, u64) -> u64,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(q(a, b)),
            (
                Scalar::Residue { value: a, modulus },
                Scalar::Residue {
                    value: b,
                    modulus: m2,
                },
            ) => {
                assert_eq!(modulus, m2, "residues with different moduli");
                Scalar::Residue {
                    value: r(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => panic!("mixed rational and residue scalars"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $q:expr, $r:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, other: &Scalar) -> Scalar {
                self.binary(other, $q, $r)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, other: Scalar) -> Scalar {
                (&self).$method(&other)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, other: &Scalar) -> Scalar {
                (&self).$method(other)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, other: Scalar) -> Scalar {
                self.$method(&other)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a + b, |a, b, m| (a + b) % m);
forward_binop!(Sub, sub, |a, b| a - b, |a, b, m| (a + m - b) % m);
forward_binop!(Mul, mul, |a, b| a * b, mul_mod);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero, like integer division.
    fn div(self, other: &Scalar) -> Scalar {
        self.checked_div(other).expect("division by zero scalar")
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, other: Scalar) -> Scalar {
        &self / &other
    }
}

impl Scalar {
    /// Sign of a rational scalar; residues have no sign and report `None`.
    pub fn sign(&self) -> Option<i8> {
        match self {
            Scalar::Rational(q) if q.is_positive() => Some(1),
            Scalar::Rational(q) if q.is_negative() => Some(-1),
            Scalar::Rational(_) => Some(0),
            Scalar::Residue { .. } => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_arithmetic() {
        let a = Scalar::residue(3, 7);
        let b = Scalar::residue(5, 7);
        assert_eq!(&a + &b, Scalar::residue(1, 7));
        assert_eq!(&a - &b, Scalar::residue(5, 7));
        assert_eq!(&a * &b, Scalar::residue(1, 7));
        assert_eq!(a.inv().unwrap(), b);
        assert_eq!(-&a, Scalar::residue(4, 7));
        assert!(Scalar::residue(0, 7).inv().is_none());
    }

    #[test]
    fn rational_display() {
        assert_eq!(Scalar::rational(6, -4).to_string(), "-3/2");
        assert_eq!(Scalar::integer(-7).to_string(), "-7");
        assert_eq!(Scalar::rational(2, 3).pow(-2), Scalar::rational(9, 4));
    }

    #[test]
    #[should_panic(expected = "different moduli")]
    fn moduli_mismatch_panics() {
        let _ = Scalar::residue(1, 5) + Scalar::residue(1, 7);
    }
}
