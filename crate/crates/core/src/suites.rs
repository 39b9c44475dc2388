//! Seeded property suites: algebra axioms, automorphism certification,
//! symbol/oracle agreement and the stabilizer equivalence.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::automorphism::{
    anisotropic_complement_vector, aut_fixing_subalgebra, commutes_with, fixed_subalgebra, is_automorphism,
    leaves_invariant, s_element, s_times_torus, torus_element, LinearMap,
};
use crate::composition::{
    doubling_chain, hurwitz_flags, quaternion_presentation, Algebra, Octonion, SplitOctonions, SubalgebraBasis,
};
use crate::error::Result;
use crate::fields::{hilbert_symbol, hilbert_symbol_at_place, relevant_places, FieldSpec};
use crate::forms::{self, integer_rational, DiagonalForm};
use crate::linalg::{self, Vector};
use crate::sample;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl SuiteResult {
    fn new(name: impl Into<String>, cases: usize, failure: Option<String>) -> SuiteResult {
        SuiteResult {
            name: name.into(),
            passed: failure.is_none(),
            cases,
            detail: failure,
        }
    }

    fn with_note(mut self, note: String) -> SuiteResult {
        if self.detail.is_none() {
            self.detail = Some(note);
        }
        self
    }
}

fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_pairs(seed: u64, salt: u64, n: usize) -> Vec<(Octonion, Octonion)> {
    let q = FieldSpec::Rationals;
    let mut r = rng(seed, salt);
    (0..n)
        .map(|_| {
            let x = Octonion::from_coords(&sample::octonion(&mut r, q, 9));
            let y = Octonion::from_coords(&sample::octonion(&mut r, q, 9));
            (x, y)
        })
        .collect()
}

/// `N(xy) = N(x)N(y)` over Q.
pub fn norm_multiplicativity(seed: u64, n: usize) -> SuiteResult {
    let bad = random_pairs(seed, 1, n)
        .into_iter()
        .find(|(x, y)| (x * y).norm() != x.norm() * y.norm())
        .map(|(x, y)| format!("x = {x}, y = {y}"));
    SuiteResult::new("norm multiplicativity", n, bad)
}

/// `conj(xy) = conj(y) conj(x)`.
pub fn conjugation_anti_automorphism(seed: u64, n: usize) -> SuiteResult {
    let bad = random_pairs(seed, 2, n)
        .into_iter()
        .find(|(x, y)| (x * y).conj() != &y.conj() * &x.conj())
        .map(|(x, y)| format!("x = {x}, y = {y}"));
    SuiteResult::new("conjugation anti-automorphism", n, bad)
}

/// `x(xy) = (xx)y` and `(yx)x = y(xx)`.
pub fn alternativity(seed: u64, n: usize) -> SuiteResult {
    let bad = random_pairs(seed, 3, n)
        .into_iter()
        .find(|(x, y)| {
            let xx = x * x;
            &(x * &(x * y)) != &(&xx * y) || &(&(y * x) * x) != &(y * &xx)
        })
        .map(|(x, y)| format!("x = {x}, y = {y}"));
    SuiteResult::new("alternativity", n, bad)
}

/// `x^2 = -N(x) e` whenever `<x, e> = 0`.
pub fn pure_square_law(seed: u64, n: usize) -> SuiteResult {
    let q = FieldSpec::Rationals;
    let alg = SplitOctonions::new(q);
    let e = alg.unit();
    let mut r = rng(seed, 4);
    let mut bad = None;
    for _ in 0..n {
        let x = sample::octonion(&mut r, q, 9);
        let pure = linalg::sub(&x, &linalg::scale(&(alg.bilinear(&x, &e) * q.fraction(1, 2).unwrap()), &e));
        if alg.mul(&pure, &pure) != linalg::scale(&-alg.norm(&pure), &e) {
            bad = Some(format!("{}", Octonion::from_coords(&pure)));
            break;
        }
    }
    SuiteResult::new("pure-element square law", n, bad)
}

/// Doubling `k e` three times with α = 1: commutativity fails from dimension
/// 4 and associativity at dimension 8.
pub fn hurwitz_chain() -> SuiteResult {
    let q = FieldSpec::Rationals;
    let chain = match doubling_chain(q, &[q.one(), q.one(), q.one()]) {
        Ok(c) => c,
        Err(e) => return SuiteResult::new("Hurwitz flags", 0, Some(e.to_string())),
    };
    let flags: Vec<_> = chain.iter().map(hurwitz_flags).collect();
    let got: Vec<(usize, bool, bool)> = flags.iter().map(|h| (h.dim, h.commutative, h.associative)).collect();
    let want = vec![(1, true, true), (2, true, true), (4, false, true), (8, false, false)];
    let composition = chain.iter().all(|a| a.composition_check().holds);
    let failure = (got != want || !composition).then(|| format!("flags {got:?}, composition {composition}"));
    let witnesses = flags
        .iter()
        .map(|h| {
            format!(
                "dim {}: commutativity witness {:?}, associativity witness {:?}",
                h.dim, h.commutativity_witness, h.associativity_witness
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    SuiteResult::new("Hurwitz flags", chain.len(), failure).with_note(witnesses)
}

/// The concrete zero divisors exhibited for `t(1,-1)`, `s` and `t(-1,1)`,
/// recomputed by multiplication and located in the fixed algebras.
pub fn explicit_zero_divisors(field: FieldSpec) -> SuiteResult {
    let lit = |s: &str| Octonion::parse(s, field).expect("literal");
    let e = Octonion::identity(field);
    let mut failures = Vec::new();
    let mut check = |name: &str, m: &LinearMap, u: &Octonion, w: &Octonion| {
        let fixed = match fixed_subalgebra(m) {
            Ok(d) => d,
            Err(err) => {
                failures.push(format!("{name}: {err}"));
                return;
            }
        };
        let inside = fixed.contains(&u.coords()) && fixed.contains(&w.coords());
        if u.is_zero() || w.is_zero() || !(u * w).is_zero() || !inside {
            failures.push(name.to_string());
        }
    };
    let one = field.one();
    let minus = field.int(-1);
    // t(1,-1): a = (0,[[0,1],[-1,0]]), b = (0,[[0,1],[1,0]])
    let (a, b) = (lit("[[0,0],[0,0]];[[0,1],[-1,0]]"), lit("[[0,0],[0,0]];[[0,1],[1,0]]"));
    let ab = &a * &b;
    let t1 = torus_element(&one, &minus, field).unwrap();
    check("(b-a)(e+ab) for t(1,-1)", &t1, &(&b - &a), &(&e + &ab));
    // s: a = ([[0,1],[1,0]],0), b = (0,[[1,0],[0,1]])
    let (a, b) = (lit("[[0,1],[1,0]];[[0,0],[0,0]]"), lit("[[0,0],[0,0]];[[1,0],[0,1]]"));
    let ab = &a * &b;
    let sum = &(&(&e + &a) + &b) + &ab;
    check("(b+ab)(e+a+b+ab) for s", &s_element(field), &(&b + &ab), &sum);
    // t(-1,1): a = (diag(1,-1),0), b = (0,I)
    let (a, b) = (lit("[[1,0],[0,-1]];[[0,0],[0,0]]"), lit("[[0,0],[0,0]];[[1,0],[0,1]]"));
    let ab = &a * &b;
    let t2 = torus_element(&minus, &one, field).unwrap();
    check("(ab+b)(e+a) for t(-1,1)", &t2, &(&ab + &b), &(&e + &a));
    let failure = (!failures.is_empty()).then(|| failures.join("; "));
    SuiteResult::new(format!("explicit zero divisors over {field}"), 3, failure)
}

/// `s`, random torus elements and random `s_{dp}` are automorphisms, `s`
/// inverts the torus, and random products of these stay in the group.
pub fn automorphism_certification(field: FieldSpec, seed: u64, torus: usize, stabilizers: usize) -> SuiteResult {
    let mut r = rng(seed, 5);
    let mut failures = Vec::new();
    let s = s_element(field);
    if !is_automorphism(&s).holds {
        failures.push("s".to_string());
    }
    let mut generators = vec![s.clone()];
    for _ in 0..torus {
        let (b, g) = (sample::nonzero_fraction(&mut r, field, 9), sample::nonzero_fraction(&mut r, field, 9));
        let t = torus_element(&b, &g, field).unwrap();
        if !is_automorphism(&t).holds {
            failures.push(format!("t({b},{g})"));
        }
        let inverted = s.compose(&t).unwrap().compose(&s).unwrap();
        if inverted != t.inverse().unwrap() {
            failures.push(format!("s t({b},{g}) s != t^-1"));
        }
        generators.push(t);
    }
    let pool = involution_pool(field);
    for i in 0..stabilizers {
        let (_, _, d, a) = &pool[i % pool.len()];
        let basis = d.vectors();
        let dv = sample::invertible_in(&mut r, basis, field, 3);
        let pv = sample::norm_one_in(&mut r, basis, field, 3);
        match aut_fixing_subalgebra(&dv, &pv, d, a) {
            Ok(f) => generators.push(f),
            Err(e) => failures.push(format!("s_dp: {e}")),
        }
    }
    let mut products = 0;
    for _ in 0..stabilizers.min(50) {
        let i = r.gen_range(0..generators.len());
        let j = r.gen_range(0..generators.len());
        let g = generators[i].compose(&generators[j]).unwrap();
        products += 1;
        if !is_automorphism(&g).holds || !is_automorphism(&g.inverse().unwrap()).holds {
            failures.push(format!("product {i}*{j}"));
        }
    }
    failures.truncate(5);
    let failure = (!failures.is_empty()).then(|| failures.join("; "));
    SuiteResult::new(
        format!("automorphism certification over {field}"),
        1 + torus + stabilizers + products,
        failure,
    )
}

type PoolEntry = (String, LinearMap, SubalgebraBasis, Vector);

/// Involutions with their fixed algebras and an anisotropic complement
/// vector.
fn involution_pool(field: FieldSpec) -> Vec<PoolEntry> {
    let one = field.one();
    let minus = field.int(-1);
    let maps = vec![
        ("t(1,-1)", torus_element(&one, &minus, field).unwrap()),
        ("t(-1,1)", torus_element(&minus, &one, field).unwrap()),
        ("t(-1,-1)", torus_element(&minus, &minus, field).unwrap()),
        ("s", s_element(field)),
        ("s t(1,-1)", s_times_torus(&one, &minus, field).unwrap()),
    ];
    maps.into_iter()
        .map(|(name, m)| {
            let d = fixed_subalgebra(&m).expect("involution");
            let a = anisotropic_complement_vector(&d).expect("nondegenerate");
            (name.to_string(), m, d, a)
        })
        .collect()
}

/// `f` commutes with `t` iff `f` leaves the fixed algebra of `t` invariant,
/// over generated `f`: stabilizer maps of the same or another involution,
/// their products, and torus elements.
pub fn stabilizer_equivalence(field: FieldSpec, seed: u64, n: usize) -> SuiteResult {
    let mut r = rng(seed, 6);
    let pool = involution_pool(field);
    let (mut yes, mut no) = (0, 0);
    let mut failure = None;
    let stab = |r: &mut ChaCha8Rng, k: usize| -> Result<LinearMap> {
        let (_, _, d, a) = &pool[k];
        let dv = sample::invertible_in(r, d.vectors(), field, 3);
        let pv = sample::norm_one_in(r, d.vectors(), field, 3);
        aut_fixing_subalgebra(&dv, &pv, d, a)
    };
    for i in 0..n {
        let k = i % pool.len();
        let other = (k + 1 + r.gen_range(0..pool.len() - 1)) % pool.len();
        let f = match (i / pool.len()) % 4 {
            0 => stab(&mut r, k),
            1 => stab(&mut r, other),
            2 => stab(&mut r, k).and_then(|f| f.compose(&stab(&mut r, other)?)),
            _ => {
                let (b, g) = (sample::nonzero_fraction(&mut r, field, 5), sample::nonzero_fraction(&mut r, field, 5));
                torus_element(&b, &g, field)
            }
        };
        let f = match f {
            Ok(f) => f,
            Err(e) => {
                failure = Some(format!("case {i}: {e}"));
                break;
            }
        };
        let (_, t, d, _) = &pool[k];
        let c = commutes_with(&f, t);
        if c != leaves_invariant(&f, d) {
            failure = Some(format!("case {i} against {}", pool[k].0));
            break;
        }
        if c {
            yes += 1;
        } else {
            no += 1;
        }
    }
    if failure.is_none() && (yes == 0 || no == 0) {
        failure = Some(format!("only one truth value generated ({yes} true, {no} false)"));
    }
    SuiteResult::new(format!("commutes iff leaves D invariant over {field}"), n, failure)
        .with_note(format!("{yes} commuting, {no} non-commuting"))
}

/// `ax^2 + by^2` takes a nonnegative value somewhere on the unit box.
fn real_oracle(a: i64, b: i64) -> bool {
    (-2i64..=2).any(|x| (-2i64..=2).any(|y| (x, y) != (0, 0) && a * x * x + b * y * y >= 0))
}

/// Exhaustive `z^2 = ax^2 + by^2` over F_p.
fn prime_field_oracle(a: i64, b: i64, p: i64) -> bool {
    (0..p).any(|x| {
        (0..p).any(|y| {
            (0..p).any(|z| (x, y, z) != (0, 0, 0) && (z * z - a * x * x - b * y * y).rem_euclid(p) == 0)
        })
    })
}

/// Hilbert symbols against brute-force solvability of `z^2 = ax^2 + by^2`
/// for `1 <= |a|, |b| <= bound`, and against [`forms::is_isotropic`].
pub fn symbol_oracle_agreement(bound: i64) -> SuiteResult {
    let mut cases = 0;
    let mut failures = Vec::new();
    let values: Vec<i64> = (-bound..=bound).filter(|&x| x != 0).collect();
    let mut fields = vec![FieldSpec::Reals];
    fields.extend([2, 3, 5, 7].map(FieldSpec::Padic));
    fields.extend([3, 5, 7, 11, 13].map(FieldSpec::PrimeField));
    for field in fields {
        for &a in &values {
            for &b in &values {
                if let FieldSpec::PrimeField(p) = field {
                    if a % p as i64 == 0 || b % p as i64 == 0 {
                        continue;
                    }
                }
                let (sa, sb) = (field.int(a), field.int(b));
                let symbol = match hilbert_symbol(&sa, &sb, field) {
                    Ok(s) => s,
                    Err(e) => {
                        failures.push(format!("{field} ({a},{b}): {e}"));
                        continue;
                    }
                };
                let oracle = match field {
                    FieldSpec::Reals => Ok(real_oracle(a, b)),
                    FieldSpec::PrimeField(p) => Ok(prime_field_oracle(a, b, p as i64)),
                    FieldSpec::Padic(p) => forms::padic_isotropy_by_lifting(
                        &[integer_rational(1), integer_rational(-a), integer_rational(-b)],
                        p,
                    ),
                    _ => unreachable!(),
                };
                let decided = DiagonalForm::new(vec![field.one(), -&sa, -&sb], field)
                    .and_then(|f| forms::is_isotropic(&f))
                    .map(|i| i.isotropic);
                cases += 1;
                match (oracle, decided) {
                    (Ok(o), Ok(d)) if o == (symbol == 1) && d == o => {}
                    (o, d) => failures.push(format!("{field} ({a},{b}): symbol {symbol}, oracle {o:?}, decision {d:?}")),
                }
            }
        }
    }
    failures.truncate(5);
    let failure = (!failures.is_empty()).then(|| failures.join("; "));
    SuiteResult::new(format!("Hilbert symbol vs brute force, |a|,|b| <= {bound}"), cases, failure)
}

/// `prod_v (a,b)_v = 1` and an even number of ramified places.
pub fn product_formula(seed: u64, n: usize) -> SuiteResult {
    let mut r = rng(seed, 7);
    let q = FieldSpec::Rationals;
    let mut failure = None;
    for _ in 0..n {
        let a = sample::nonzero_fraction(&mut r, q, 60);
        let b = sample::nonzero_fraction(&mut r, q, 60);
        let (ra, rb): (&BigRational, &BigRational) = (a.as_rational().unwrap(), b.as_rational().unwrap());
        let result = relevant_places(&[ra, rb]).and_then(|places| {
            places
                .into_iter()
                .map(|v| hilbert_symbol_at_place(ra, rb, v))
                .collect::<Result<Vec<i8>>>()
        });
        match result {
            Ok(symbols) if symbols.iter().map(|&s| s as i64).product::<i64>() == 1 => {}
            other => {
                failure = Some(format!("({a},{b}): {other:?}"));
                break;
            }
        }
    }
    SuiteResult::new("Hilbert product formula", n, failure)
}

/// The presentation of every pool fixed algebra reproduces its products.
pub fn presentation_soundness(field: FieldSpec) -> SuiteResult {
    let alg = SplitOctonions::new(field);
    let pool = involution_pool(field);
    let failure = pool.iter().find_map(|(name, _, d, _)| {
        match quaternion_presentation(d, &alg).and_then(|p| p.table_is_sound(&alg)) {
            Ok(true) => None,
            Ok(false) => Some(format!("{name}: table mismatch")),
            Err(e) => Some(format!("{name}: {e}")),
        }
    });
    SuiteResult::new(format!("presentation soundness over {field}"), pool.len(), failure)
}

/// Everything `verify-paper` runs besides the per-field classification.
pub fn default_suites(seed: u64) -> Vec<SuiteResult> {
    let q = FieldSpec::Rationals;
    let f5 = FieldSpec::PrimeField(5);
    vec![
        norm_multiplicativity(seed, 1000),
        conjugation_anti_automorphism(seed, 500),
        alternativity(seed, 500),
        pure_square_law(seed, 200),
        hurwitz_chain(),
        explicit_zero_divisors(q),
        explicit_zero_divisors(f5),
        presentation_soundness(q),
        presentation_soundness(f5),
        automorphism_certification(q, seed, 50, 60),
        automorphism_certification(f5, seed, 50, 60),
        symbol_oracle_agreement(10),
        product_formula(seed, 500),
        stabilizer_equivalence(f5, seed, 100),
        stabilizer_equivalence(q, seed, 100),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for s in [
            norm_multiplicativity(0, 50),
            conjugation_anti_automorphism(0, 50),
            alternativity(0, 50),
            pure_square_law(0, 50),
            hurwitz_chain(),
            explicit_zero_divisors(FieldSpec::Rationals),
            explicit_zero_divisors(FieldSpec::PrimeField(7)),
            presentation_soundness(FieldSpec::Padic(3)),
            automorphism_certification(FieldSpec::PrimeField(5), 0, 5, 10),
            symbol_oracle_agreement(4),
            product_formula(0, 50),
            stabilizer_equivalence(FieldSpec::PrimeField(5), 0, 40),
        ] {
            assert!(s.passed, "{s:?}");
        }
    }

    #[test]
    fn oracles_on_definite_forms() {
        // (-1,-1) is anisotropic over R and Q_2 but split over F_p
        assert!(!real_oracle(-1, -1));
        assert!(prime_field_oracle(-1, -1, 7));
        let one = integer_rational(1);
        assert!(!forms::padic_isotropy_by_lifting(&[one.clone(), one.clone(), one], 2).unwrap());
    }
}
