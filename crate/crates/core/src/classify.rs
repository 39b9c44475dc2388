//! Classification of involutions of split G2 over a field by the quaternion
//! algebra each one fixes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::automorphism::{
    self, anisotropic_complement_vector, aut_fixing_subalgebra, commutes_with, fixed_subalgebra,
    LinearMap, Order,
};
use crate::composition::{
    find_zero_divisor, quaternion_presentation, Algebra, QuaternionPresentation, SplitOctonions,
    SubalgebraBasis, ZeroDivisorSearch,
};
use crate::error::{Error, Result};
use crate::fields::{quadratic_nonresidue, FieldSpec, Scalar};
use crate::forms::{quaternion_is_split, quaternion_isomorphic, LocalSymbol, QuaternionInvariant, Verdict};
use crate::linalg::{self, Vector};
use crate::sample;

pub const SCHEMA: &str = "octo-involutions/1";

/// Evidence behind a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    ZeroDivisor { u: Vector, w: Vector },
    /// Split in the formal model, with zero divisors only over an extension
    /// of Q.
    FormallySplit { symbols: Vec<LocalSymbol> },
    Anisotropic { symbols: Vec<LocalSymbol> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionClass {
    pub label: String,
    pub representative: LinearMap,
    pub fixed_basis: Vec<Vector>,
    pub presentation: QuaternionPresentation,
    pub invariant: QuaternionInvariant,
    pub certificate: Certificate,
}

impl InvolutionClass {
    pub fn field(&self) -> FieldSpec {
        self.representative.field()
    }

    pub fn fixed_subalgebra(&self) -> Result<SubalgebraBasis> {
        SubalgebraBasis::new(&SplitOctonions::new(self.field()), self.fixed_basis.clone())
    }
}

/// fixed subalgebra -> presentation -> split/division, with the verdict
/// cross-checked against a zero divisor or the symbol values.
pub fn classify_involution(m: &LinearMap, label: &str) -> Result<InvolutionClass> {
    if m.order(2) != Order::Finite(2) {
        return Err(Error::NotInvolution(label.to_string()));
    }
    let field = m.field();
    let alg = SplitOctonions::new(field);
    let d = fixed_subalgebra(m)?;
    let presentation = quaternion_presentation(&d, &alg)?;
    let invariant = quaternion_is_split(&presentation.alpha, &presentation.beta, field)?;
    let certificate = match (invariant.verdict, find_zero_divisor(&d, &alg)?) {
        (Verdict::Split, ZeroDivisorSearch::Pair { u, w }) => {
            if linalg::is_zero(&u) || linalg::is_zero(&w) || !linalg::is_zero(&alg.mul(&u, &w)) {
                return Err(Error::Engine(format!("{label}: invalid zero divisor")));
            }
            Certificate::ZeroDivisor { u, w }
        }
        (Verdict::Split, ZeroDivisorSearch::NoRationalWitness) => Certificate::FormallySplit {
            symbols: invariant.symbols()?,
        },
        (Verdict::Division, ZeroDivisorSearch::Anisotropic) => {
            let symbols = invariant.symbols()?;
            if symbols.iter().all(|s| s.symbol == 1) {
                return Err(Error::Engine(format!("{label}: division verdict with trivial symbols")));
            }
            Certificate::Anisotropic { symbols }
        }
        (verdict, search) => {
            return Err(Error::Engine(format!(
                "{label}: verdict {verdict:?} contradicts zero-divisor search {search:?}"
            )))
        }
    };
    Ok(InvolutionClass {
        label: label.to_string(),
        representative: m.clone(),
        fixed_basis: d.vectors().to_vec(),
        presentation,
        invariant,
        certificate,
    })
}

pub fn same_class(c1: &InvolutionClass, c2: &InvolutionClass) -> Result<bool> {
    quaternion_isomorphic(&c1.invariant, &c2.invariant)
}

fn torus_label(b: &Scalar, g: &Scalar) -> String {
    format!("I_t({b},{g})")
}

/// The labelled maps whose classes the theorem describes for `field`.
pub fn standard_representatives(field: FieldSpec, q_primes: &[u64]) -> Result<Vec<(String, LinearMap)>> {
    let mut reps = Vec::new();
    for t in automorphism::involutive_torus_elements(field) {
        reps.push((torus_label(&t.beta, &t.gamma), t.to_map(field)?));
    }
    reps.push(("I_s".to_string(), automorphism::s_element(field)));
    let composite = |b: Scalar, g: Scalar| -> Result<(String, LinearMap)> {
        let m = automorphism::s_times_torus(&b, &g, field)?;
        Ok((format!("I_s ∘ {}", torus_label(&b, &g)), m))
    };
    match field {
        FieldSpec::Reals | FieldSpec::Rationals | FieldSpec::Padic(2) => {
            reps.push(composite(field.one(), field.int(-1))?);
        }
        FieldSpec::Padic(p) => {
            let n = field.int(quadratic_nonresidue(p)? as i64);
            let g = -(field.int(p as i64) / n.clone());
            reps.push(composite(-n, g)?);
        }
        _ => {}
    }
    if field == FieldSpec::Rationals {
        for &p in q_primes {
            if p % 4 != 3 || !crate::fields::arith::is_prime(p) {
                return Err(Error::InvalidArgument(format!(
                    "configured prime {p} must be a prime congruent to 3 mod 4"
                )));
            }
            let pq = field.int(p as i64);
            reps.push((format!("I_s_{p}"), automorphism::s_p(&pq, field)?));
        }
    }
    Ok(reps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassCount {
    Exact(usize),
    NonExhaustive,
}

impl Serialize for ClassCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ClassCount::Exact(n) => s.serialize_u64(*n as u64),
            ClassCount::NonExhaustive => s.serialize_str("≥2, non-exhaustive"),
        }
    }
}

impl std::fmt::Display for ClassCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassCount::Exact(n) => write!(f, "{n}"),
            ClassCount::NonExhaustive => write!(f, "≥2, non-exhaustive"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &str, passed: bool) -> Check {
        Check {
            name: name.to_string(),
            passed,
            detail: None,
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Check {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub members: Vec<String>,
    #[serde(flatten)]
    pub class: InvolutionClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub schema: &'static str,
    pub field: FieldSpec,
    pub count: ClassCount,
    pub classes_found: usize,
    pub exhaustive: bool,
    pub classes: Vec<ClassEntry>,
    pub checks: Vec<Check>,
}

impl ClassificationReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions {
    pub q_primes: Vec<u64>,
    pub probe_samples: usize,
    pub seed: u64,
}

fn expected_count(field: FieldSpec, q_primes: &[u64]) -> usize {
    match field {
        FieldSpec::Complex | FieldSpec::PrimeField(_) => 1,
        FieldSpec::Reals | FieldSpec::Padic(_) => 2,
        FieldSpec::Rationals => 2 + q_primes.len(),
    }
}

pub fn classify_field(field: FieldSpec, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let reps = standard_representatives(field, &opts.q_primes)?;
    let classified: Vec<InvolutionClass> = reps
        .iter()
        .map(|(label, m)| classify_involution(m, label))
        .collect::<Result<_>>()?;

    let mut blocks: Vec<(usize, Vec<String>)> = Vec::new();
    for (i, c) in classified.iter().enumerate() {
        let mut placed = false;
        for (rep, members) in blocks.iter_mut() {
            if same_class(&classified[*rep], c)? {
                members.push(c.label.clone());
                placed = true;
                break;
            }
        }
        if !placed {
            blocks.push((i, vec![c.label.clone()]));
        }
    }

    let mut checks = Vec::new();
    let torus_split = classified[..3].iter().all(|c| c.invariant.verdict == Verdict::Split);
    checks.push(Check::new("torus involutions fix split quaternion algebras", torus_split));
    let torus_merge = blocks.iter().any(|(_, m)| classified[..3].iter().all(|c| m.contains(&c.label)));
    checks.push(Check::new("torus involutions form one class", torus_merge));
    checks.push(Check::new(
        "off-diagonal negation equals t(-1,1)",
        automorphism::offdiagonal_negation(field)
            == automorphism::torus_element(&field.int(-1), &field.one(), field)?,
    ));
    let mut distinct = true;
    for (i, (a, _)) in blocks.iter().enumerate() {
        for (b, _) in &blocks[i + 1..] {
            distinct &= !same_class(&classified[*a], &classified[*b])?;
        }
    }
    checks.push(Check::new("classes pairwise non-isomorphic", distinct));
    field_specific_checks(field, &opts.q_primes, &classified, &blocks, &mut checks)?;

    let found = blocks.len();
    let expected = expected_count(field, &opts.q_primes);
    checks.push(Check::new("class count", found == expected).with_detail(format!("expected {expected}, found {found}")));
    let count = if field == FieldSpec::Rationals {
        ClassCount::NonExhaustive
    } else {
        ClassCount::Exact(found)
    };
    if found != expected {
        return Err(Error::ClassCountMismatch {
            field,
            expected: expected.to_string(),
            found,
            diagnostic: blocks
                .iter()
                .map(|(_, m)| format!("[{}]", m.join(", ")))
                .collect::<Vec<_>>()
                .join(" "),
        });
    }

    let mut classes = Vec::new();
    for (i, (rep, members)) in blocks.into_iter().enumerate() {
        let class = classified[rep].clone();
        let probe = if opts.probe_samples > 0 {
            Some(fixed_group_probe(&class, opts.probe_samples, opts.seed.wrapping_add(i as u64))?)
        } else {
            None
        };
        if let Some(p) = &probe {
            checks.push(Check::new(&format!("fixed-point group probe for {}", class.label), p.passed()));
        }
        classes.push(ClassEntry { members, class, probe });
    }
    Ok(ClassificationReport {
        schema: SCHEMA,
        field,
        count,
        classes_found: found,
        exhaustive: field != FieldSpec::Rationals,
        classes,
        checks,
    })
}

fn field_specific_checks(
    field: FieldSpec,
    q_primes: &[u64],
    classified: &[InvolutionClass],
    blocks: &[(usize, Vec<String>)],
    checks: &mut Vec<Check>,
) -> Result<()> {
    let find = |prefix: &str| classified.iter().find(|c| c.label.starts_with(prefix));
    match field {
        FieldSpec::Reals | FieldSpec::Rationals | FieldSpec::Padic(2) => {
            let c = find("I_s ∘").expect("composite representative");
            let minus = field.int(-1);
            let reference = quaternion_is_split(&minus, &minus, field)?;
            let ok = c.invariant.verdict == Verdict::Division && quaternion_isomorphic(&c.invariant, &reference)?;
            checks.push(Check::new("s·t(1,-1) fixes the division algebra (-1,-1)", ok));
        }
        FieldSpec::Padic(p) => {
            let c = find("I_s ∘").expect("composite representative");
            let n = field.int(quadratic_nonresidue(p)? as i64);
            let reference = quaternion_is_split(&field.int(p as i64), &n, field)?;
            let ok = c.invariant.verdict == Verdict::Division && quaternion_isomorphic(&c.invariant, &reference)?;
            checks.push(Check::new(&format!("division representative is (p, N_p) = ({p}, {n})"), ok));
        }
        _ => {}
    }
    if field == FieldSpec::Rationals {
        let even = classified
            .iter()
            .all(|c| c.invariant.ramified_places.as_ref().map_or(false, |r| r.len() % 2 == 0));
        checks.push(Check::new("ramified place sets have even size", even));
        for &p in q_primes {
            let label = format!("I_s_{p}");
            let own = blocks.iter().any(|(_, m)| m == &vec![label.clone()]);
            let c = find(&label).expect("configured prime representative");
            let minus = field.int(-1);
            let reference = quaternion_is_split(&minus, &field.int(p as i64), field)?;
            let iso = quaternion_isomorphic(&c.invariant, &reference)?;
            checks.push(Check::new(&format!("{label} fixes (-1,{p}) in a class of its own"), own && iso));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub samples: usize,
    pub verdict: Verdict,
    pub all_automorphisms: bool,
    pub all_commute: bool,
    pub homomorphism_pairs: usize,
    pub homomorphism_holds: bool,
    pub kernel_hits: usize,
    pub kernel_exactly_scalar: bool,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.all_automorphisms && self.all_commute && self.homomorphism_holds && self.kernel_exactly_scalar
    }
}

/// Samples maps `s_{dp}` (`d` invertible in the fixed algebra `D`, `N(p) = 1`)
/// and checks that they commute with the representative, compose like
/// `(d1, p1)(d2, p2) = (d1 d2, p1 d1 p2 d1⁻¹)`, and are trivial exactly for
/// `(λe, e)`.
pub fn fixed_group_probe(c: &InvolutionClass, samples: usize, seed: u64) -> Result<ProbeReport> {
    if c.representative.order(2) != Order::Finite(2) {
        return Err(Error::NotInvolution(c.label.clone()));
    }
    let field = c.field();
    let alg = SplitOctonions::new(field);
    let d = c.fixed_subalgebra()?;
    let a = anisotropic_complement_vector(&d)?;
    let basis = c.presentation.basis();
    let e = alg.unit();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ProbeReport {
        samples,
        verdict: c.invariant.verdict,
        all_automorphisms: true,
        all_commute: true,
        homomorphism_pairs: 0,
        homomorphism_holds: true,
        kernel_hits: 0,
        kernel_exactly_scalar: true,
    };
    let mut previous: Option<(Vector, Vector, LinearMap)> = None;
    for i in 0..samples {
        // every fourth sample is a scalar pair, every eighth a scalar d with
        // a random p
        let dv = if i % 4 == 0 {
            linalg::scale(&sample::nonzero_fraction(&mut rng, field, 9), &e)
        } else {
            sample::invertible_in(&mut rng, &basis, field, 3)
        };
        let pv = if i % 4 == 0 && i % 8 != 0 {
            e.clone()
        } else {
            sample::norm_one_in(&mut rng, &basis, field, 3)
        };
        let f = match aut_fixing_subalgebra(&dv, &pv, &d, &a) {
            Ok(f) => f,
            Err(Error::Engine(_)) => {
                report.all_automorphisms = false;
                continue;
            }
            Err(e) => return Err(e),
        };
        if !commutes_with(&f, &c.representative) {
            report.all_commute = false;
        }
        let scalar_pair = linalg::in_span(&[e.clone()], &dv, field) && pv == e;
        if f.is_identity() {
            report.kernel_hits += 1;
        }
        if f.is_identity() != scalar_pair {
            report.kernel_exactly_scalar = false;
        }
        if let Some((d1, p1, f1)) = &previous {
            let d1_inv = linalg::scale(&alg.norm(d1).inv().expect("invertible"), &alg.conj(d1));
            let prod_d = alg.mul(d1, &dv);
            let prod_p = alg.mul(p1, &alg.mul(&alg.mul(d1, &pv), &d1_inv));
            let direct = aut_fixing_subalgebra(&prod_d, &prod_p, &d, &a)?;
            report.homomorphism_pairs += 1;
            if f1.compose(&f)? != direct {
                report.homomorphism_holds = false;
            }
        }
        previous = Some((dv, pv, f));
    }
    if report.samples > 0 && report.kernel_hits == 0 {
        report.kernel_exactly_scalar = false;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::{s_element, s_times_torus, torus_element};

    #[test]
    fn pipeline_examples() {
        for field in [FieldSpec::Rationals, FieldSpec::Reals, FieldSpec::Padic(3), FieldSpec::PrimeField(7)] {
            let t = torus_element(&field.one(), &field.int(-1), field).unwrap();
            assert_eq!(classify_involution(&t, "t").unwrap().invariant.verdict, Verdict::Split);
        }
        let r = FieldSpec::Reals;
        let st = s_times_torus(&r.one(), &r.int(-1), r).unwrap();
        let c = classify_involution(&st, "st").unwrap();
        assert_eq!(c.invariant.verdict, Verdict::Division);
        assert!(matches!(c.certificate, Certificate::Anisotropic { .. }));
        let q = FieldSpec::Rationals;
        assert_eq!(classify_involution(&s_element(q), "s").unwrap().invariant.verdict, Verdict::Split);
        assert!(classify_involution(&LinearMap::identity(q), "id").is_err());
    }

    #[test]
    fn same_class_examples() {
        let q = FieldSpec::Rationals;
        let c1 = classify_involution(&torus_element(&q.one(), &q.int(-1), q).unwrap(), "a").unwrap();
        let c2 = classify_involution(&torus_element(&q.int(-1), &q.one(), q).unwrap(), "b").unwrap();
        assert!(same_class(&c1, &c2).unwrap());
        let f7 = FieldSpec::PrimeField(7);
        let s = classify_involution(&s_element(f7), "s").unwrap();
        let t = classify_involution(&torus_element(&f7.int(-1), &f7.int(-1), f7).unwrap(), "t").unwrap();
        assert!(same_class(&s, &t).unwrap());
        assert!(same_class(&s, &c1).is_err());
    }

    #[test]
    fn representative_lists() {
        assert_eq!(standard_representatives(FieldSpec::Complex, &[]).unwrap().len(), 4);
        let q5 = standard_representatives(FieldSpec::Padic(5), &[]).unwrap();
        assert_eq!(q5.len(), 5);
        assert_eq!(q5[4].0, "I_s ∘ I_t(-2,-5/2)");
        assert_eq!(standard_representatives(FieldSpec::Rationals, &[3, 7, 11]).unwrap().len(), 8);
        assert!(standard_representatives(FieldSpec::Rationals, &[5]).is_err());
    }

    #[test]
    fn counts() {
        let opts = ClassifyOptions::default();
        assert_eq!(classify_field(FieldSpec::Reals, &opts).unwrap().count, ClassCount::Exact(2));
        assert_eq!(classify_field(FieldSpec::PrimeField(11), &opts).unwrap().count, ClassCount::Exact(1));
        let q = classify_field(
            FieldSpec::Rationals,
            &ClassifyOptions {
                q_primes: vec![3, 7],
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!((q.count.clone(), q.classes_found, q.exhaustive), (ClassCount::NonExhaustive, 4, false));
        assert!(q.all_checks_pass());
    }

    #[test]
    fn probe_split_and_division() {
        let f5 = FieldSpec::PrimeField(5);
        let c = classify_involution(&torus_element(&f5.one(), &f5.int(-1), f5).unwrap(), "t").unwrap();
        let p = fixed_group_probe(&c, 40, 0).unwrap();
        assert!(p.passed(), "{p:?}");
        let q = FieldSpec::Rationals;
        let c = classify_involution(&s_times_torus(&q.one(), &q.int(-1), q).unwrap(), "st").unwrap();
        let p = fixed_group_probe(&c, 24, 1).unwrap();
        assert!(p.passed(), "{p:?}");
    }
}
