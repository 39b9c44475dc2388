//! Square classes and Hilbert symbols.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::arith::{big_mod, factor, is_prime, legendre, pow_mod, strip_prime};
use super::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// A place of Q: a finite prime or the real place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Place> {
        match s.trim() {
            "inf" | "oo" | "∞" => Ok(Place::Infinity),
            t => {
                let p: u64 = t.parse().map_err(|_| Error::Parse {
                    what: "place",
                    input: s.to_string(),
                })?;
                if is_prime(p) {
                    Ok(Place::Prime(p))
                } else {
                    Err(Error::NotPrime(p))
                }
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Canonical representative of a square class, as an integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass(pub BigInt);

impl SquareClass {
    pub fn is_trivial(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<i64> for SquareClass {
    fn from(n: i64) -> SquareClass {
        SquareClass(BigInt::from(n))
    }
}

/// `v` with `x = p^v * u`, `u` a p-unit.
pub fn padic_valuation(x: &BigRational, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let (vn, _) = strip_prime(x.numer(), p);
    let (vd, _) = strip_prime(x.denom(), p);
    Ok(vn - vd)
}

/// Smallest positive integer that is not a square mod the odd prime `p`.
pub fn quadratic_nonresidue(p: u64) -> Result<u64> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok((2..p)
        .find(|&n| pow_mod(n, (p - 1) / 2, p) == p - 1)
        .expect("odd primes have non-residues"))
}

/// Splits a nonzero rational as `p^v * n/d` with `n, d` prime to `p`.
fn unit_part(x: &BigRational, p: u64) -> (i64, BigInt, BigInt) {
    let (vn, n) = strip_prime(x.numer(), p);
    let (vd, d) = strip_prime(x.denom(), p);
    (vn - vd, n, d)
}

fn rational_of(x: &Scalar, field: FieldSpec) -> Result<&BigRational> {
    x.as_rational()
        .ok_or_else(|| Error::ForeignScalar(x.to_string(), field))
}

fn squarefree_kernel(n: &BigInt) -> Result<BigInt> {
    let mut k = BigInt::one();
    for (p, e) in factor(n)? {
        if e % 2 == 1 {
            k *= BigInt::from(p);
        }
    }
    Ok(k)
}

/// Canonical square-class representative of the nonzero scalar `x`.
pub fn square_class(x: &Scalar, field: FieldSpec) -> Result<SquareClass> {
    if x.is_zero() {
        return Err(Error::ZeroInput("square_class"));
    }
    field.check(x)?;
    let class = match field {
        FieldSpec::Complex => BigInt::one(),
        FieldSpec::Reals => BigInt::from(x.sign().expect("rational")),
        FieldSpec::PrimeField(p) => {
            let Scalar::Residue { value, .. } = x else {
                unreachable!("checked above")
            };
            if pow_mod(*value, (p - 1) / 2, p) == 1 {
                BigInt::one()
            } else {
                BigInt::from(quadratic_nonresidue(p)?)
            }
        }
        FieldSpec::Rationals => {
            let q = rational_of(x, field)?;
            let k = squarefree_kernel(&(q.numer() * q.denom()))?;
            if q.is_negative() {
                -k
            } else {
                k
            }
        }
        FieldSpec::Padic(2) => {
            let (v, n, d) = unit_part(rational_of(x, field)?, 2);
            let unit = match big_mod(&(n * d), 8) {
                1 => 1,
                3 => -5,
                5 => 5,
                7 => -1,
                _ => unreachable!("2-adic unit is odd"),
            };
            BigInt::from(if v.is_odd() { 2 * unit } else { unit })
        }
        FieldSpec::Padic(p) => {
            let (v, n, d) = unit_part(rational_of(x, field)?, p);
            let unit = if legendre(&n, p) * legendre(&d, p) == 1 {
                1
            } else {
                quadratic_nonresidue(p)?
            };
            BigInt::from(if v.is_odd() { p * unit } else { unit })
        }
    };
    Ok(SquareClass(class))
}

/// Local Hilbert symbol at a finite prime, by the classical closed formulas.
fn padic_symbol(a: &BigRational, b: &BigRational, p: u64) -> i8 {
    let (va, na, da) = unit_part(a, p);
    let (vb, nb, db) = unit_part(b, p);
    if p == 2 {
        let u = big_mod(&(na * da), 8);
        let v = big_mod(&(nb * db), 8);
        let eps = |x: u64| ((x - 1) / 2) % 2;
        let omega = |x: u64| ((x * x - 1) / 8) % 2;
        let e = eps(u) * eps(v) + (va.rem_euclid(2) as u64) * omega(v) + (vb.rem_euclid(2) as u64) * omega(u);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let leg_u = legendre(&na, p) * legendre(&da, p);
    let leg_v = legendre(&nb, p) * legendre(&db, p);
    let mut s: i8 = 1;
    if (va * vb).rem_euclid(2) == 1 && ((p - 1) / 2) % 2 == 1 {
        s = -s;
    }
    if vb.rem_euclid(2) == 1 {
        s *= leg_u;
    }
    if va.rem_euclid(2) == 1 {
        s *= leg_v;
    }
    s
}

/// Hilbert symbol `(a, b)` over a local or formal field.
///
/// Over Q there is no single symbol; use [`hilbert_symbol_at_place`].
pub fn hilbert_symbol(a: &Scalar, b: &Scalar, field: FieldSpec) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("hilbert_symbol"));
    }
    field.check(a)?;
    field.check(b)?;
    match field {
        FieldSpec::Rationals => Err(Error::WrongEntryPoint),
        FieldSpec::Complex | FieldSpec::PrimeField(_) => Ok(1),
        FieldSpec::Reals => Ok(if a.sign() == Some(-1) && b.sign() == Some(-1) {
            -1
        } else {
            1
        }),
        FieldSpec::Padic(p) => Ok(padic_symbol(
            rational_of(a, field)?,
            rational_of(b, field)?,
            p,
        )),
    }
}

/// Local symbol of two nonzero rationals at a place of Q.
pub fn hilbert_symbol_at_place(a: &BigRational, b: &BigRational, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("hilbert_symbol_at_place"));
    }
    Ok(match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) => padic_symbol(a, b, p),
    })
}

/// The places where local symbols of the given rationals can be nontrivial:
/// 2, every prime dividing a numerator or denominator, and infinity.
pub fn relevant_places(values: &[&BigRational]) -> Result<Vec<Place>> {
    let mut primes = vec![2u64];
    for q in values {
        if q.is_zero() {
            return Err(Error::ZeroInput("relevant_places"));
        }
        for n in [q.numer(), q.denom()] {
            primes.extend(factor(n)?.into_iter().map(|(p, _)| p));
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let mut places: Vec<Place> = primes.into_iter().map(Place::Prime).collect();
    places.push(Place::Infinity);
    Ok(places)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&q(1, 1), 5), Ok(0));
        assert_eq!(padic_valuation(&q(50, 1), 5), Ok(2));
        assert_eq!(padic_valuation(&q(3, 25), 5), Ok(-2));
        assert_eq!(padic_valuation(&q(0, 1), 5), Err(Error::ZeroValuation));
    }

    #[test]
    fn nonresidues() {
        assert_eq!(quadratic_nonresidue(3), Ok(2));
        assert_eq!(quadratic_nonresidue(5), Ok(2));
        assert_eq!(quadratic_nonresidue(7), Ok(3));
        assert_eq!(quadratic_nonresidue(2), Err(Error::EvenPrime));
    }

    #[test]
    fn square_class_examples() {
        let r = FieldSpec::Reals;
        assert_eq!(square_class(&r.int(-7), r).unwrap(), SquareClass::from(-1));
        let q3 = FieldSpec::Padic(3);
        // 18 = 3^2 * 2 and 2 is the non-residue mod 3.
        assert_eq!(square_class(&q3.int(18), q3).unwrap(), SquareClass::from(2));
        let q = FieldSpec::Rationals;
        assert_eq!(square_class(&q.int(12), q).unwrap(), SquareClass::from(3));
        assert_eq!(square_class(&Scalar::rational(-8, 27), q).unwrap(), SquareClass::from(-6));
        let c = FieldSpec::Complex;
        assert_eq!(square_class(&c.int(-3), c).unwrap(), SquareClass::from(1));
        assert!(square_class(&q.int(0), q).is_err());
    }

    #[test]
    fn two_adic_classes_cover_eight() {
        let q2 = FieldSpec::Padic(2);
        let mut seen: Vec<BigInt> = (1..=64)
            .flat_map(|n| [n, -n])
            .map(|n| square_class(&q2.int(n), q2).unwrap().0)
            .collect();
        seen.sort();
        seen.dedup();
        let expected: Vec<BigInt> = [-10, -5, -2, -1, 1, 2, 5, 10].into_iter().map(BigInt::from).collect();
        assert_eq!(seen, expected);
    }

    #[test]
    fn hilbert_examples() {
        let r = FieldSpec::Reals;
        assert_eq!(hilbert_symbol(&r.int(-1), &r.int(-1), r), Ok(-1));
        for p in [3u64, 5, 7, 11] {
            let f = FieldSpec::Padic(p);
            let n = quadratic_nonresidue(p).unwrap() as i64;
            assert_eq!(hilbert_symbol(&f.int(p as i64), &f.int(n), f), Ok(-1), "p={p}");
            assert_eq!(hilbert_symbol(&f.int(1), &f.int(n), f), Ok(1));
        }
        let f7 = FieldSpec::PrimeField(7);
        assert_eq!(hilbert_symbol(&f7.int(3), &f7.int(5), f7), Ok(1));
        let q = FieldSpec::Rationals;
        assert_eq!(hilbert_symbol(&q.int(1), &q.int(2), q), Err(Error::WrongEntryPoint));
        assert!(hilbert_symbol(&r.int(0), &r.int(2), r).is_err());
    }

    #[test]
    fn symbols_at_places() {
        assert_eq!(hilbert_symbol_at_place(&q(-1, 1), &q(3, 1), Place::Infinity), Ok(1));
        assert_eq!(hilbert_symbol_at_place(&q(-1, 1), &q(3, 1), Place::Prime(3)), Ok(-1));
        assert_eq!(hilbert_symbol_at_place(&q(-1, 1), &q(3, 1), Place::Prime(5)), Ok(1));
        assert_eq!(hilbert_symbol_at_place(&q(-1, 1), &q(-1, 1), Place::Prime(2)), Ok(-1));
    }

    #[test]
    fn place_grammar() {
        assert_eq!("inf".parse::<Place>(), Ok(Place::Infinity));
        assert_eq!("7".parse::<Place>(), Ok(Place::Prime(7)));
        assert!("8".parse::<Place>().is_err());
        assert!(Place::Prime(1_000_003) < Place::Infinity);
    }
}
