//! Exact base fields: Q, formal R and C, Q_p and prime fields F_p.

pub mod arith;
mod scalar;
mod symbols;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use scalar::Scalar;
pub use symbols::{
    hilbert_symbol, hilbert_symbol_at_place, padic_valuation, quadratic_nonresidue,
    relevant_places, square_class, Place, SquareClass,
};

/// Largest modulus accepted for prime fields; products of residues stay in `u64`.
pub const MAX_PRIME_FIELD: u64 = 1 << 31;

/// The base field a computation lives over.
///
/// `Reals` and `Complex` are formal: their elements are rationals and only
/// the square-class oracle differs (sign for R, trivial for C).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Reals,
    Complex,
    Padic(u64),
    PrimeField(u64),
}

impl FieldSpec {
    pub fn padic(p: u64) -> Result<FieldSpec> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Padic(p))
    }

    pub fn prime_field(p: u64) -> Result<FieldSpec> {
        if p == 2 || !arith::is_prime(p) || p >= MAX_PRIME_FIELD {
            return Err(Error::NotOddPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn is_characteristic_zero(&self) -> bool {
        !matches!(self, FieldSpec::PrimeField(_))
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::PrimeField(p) => Scalar::residue(n, *p),
            _ => Scalar::integer(n),
        }
    }

    pub fn big_int(&self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::PrimeField(p) => Scalar::Residue {
                value: arith::big_mod(n, *p),
                modulus: *p,
            },
            _ => Scalar::Rational(BigRational::from_integer(n.clone())),
        }
    }

    /// `n/d` in this field; fails when `d` vanishes in the field.
    pub fn fraction(&self, n: i64, d: i64) -> Result<Scalar> {
        self.int(n)
            .checked_div(&self.int(d))
            .ok_or_else(|| Error::BadScalar(format!("{n}/{d}")))
    }

    /// Brings a rational into this field (reducing mod p for prime fields).
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        self.big_int(q.numer())
            .checked_div(&self.big_int(q.denom()))
            .ok_or_else(|| Error::BadScalar(q.to_string()))
    }

    /// Whether `x` is an element of this field's representation.
    pub fn contains(&self, x: &Scalar) -> bool {
        match (self, x) {
            (FieldSpec::PrimeField(p), Scalar::Residue { modulus, .. }) => p == modulus,
            (FieldSpec::PrimeField(_), _) => false,
            (_, Scalar::Rational(_)) => true,
            _ => false,
        }
    }

    pub fn check(&self, x: &Scalar) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::ForeignScalar(x.to_string(), *self))
        }
    }

    /// Parses `n` or `n/d` (base 10, optional sign) into this field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::BadScalar(s.to_string());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        self.from_rational(&BigRational::new(n, d)).map_err(|_| bad())
    }

    /// A square root of `x` inside the representation, if there is one: an
    /// exact rational root for characteristic-zero kinds, a residue root for
    /// prime fields.
    pub fn exact_sqrt(&self, x: &Scalar) -> Option<Scalar> {
        match x {
            Scalar::Rational(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
                    Some(Scalar::Rational(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            Scalar::Residue { value, modulus } => {
                arith::sqrt_mod(*value, *modulus).map(|r| Scalar::Residue {
                    value: r,
                    modulus: *modulus,
                })
            }
        }
    }

    /// Enumerates all elements of a prime field; `None` for infinite fields.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        match *self {
            FieldSpec::PrimeField(p) => Some((0..p).map(move |v| Scalar::Residue {
                value: v,
                modulus: p,
            })),
            _ => None,
        }
    }

    pub fn short_name(&self) -> String {
        match self {
            FieldSpec::Rationals => "Q".into(),
            FieldSpec::Reals => "R".into(),
            FieldSpec::Complex => "C".into(),
            FieldSpec::Padic(p) => format!("Q{p}"),
            FieldSpec::PrimeField(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Reals => write!(f, "R"),
            FieldSpec::Complex => write!(f, "C"),
            FieldSpec::Padic(p) => write!(f, "Qp:{p}"),
            FieldSpec::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FieldSpec> {
        let prime = |t: &str| -> Result<u64> {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::BadFieldSpec(s.to_string()))
        };
        match s.trim() {
            "Q" => Ok(FieldSpec::Rationals),
            "R" => Ok(FieldSpec::Reals),
            "C" => Ok(FieldSpec::Complex),
            t => match t.split_once(':') {
                Some(("Qp", p)) => FieldSpec::padic(prime(p)?),
                Some(("Fp", p)) => FieldSpec::prime_field(prime(p)?),
                _ => Err(Error::BadFieldSpec(s.to_string())),
            },
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
