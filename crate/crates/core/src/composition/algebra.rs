use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::octonion::{Mat2, Octonion};
use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::linalg::{self, Matrix, Vector};

/// A finite-dimensional unital algebra with a quadratic form, in coordinates.
pub trait Algebra {
    fn field(&self) -> FieldSpec;
    fn dim(&self) -> usize;
    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector;
    fn norm(&self, x: &[Scalar]) -> Scalar;
    fn unit(&self) -> Vector;

    fn basis(&self, i: usize) -> Vector {
        linalg::unit_vector(self.dim(), i, self.field())
    }

    /// `<x,y> = N(x+y) - N(x) - N(y)`.
    fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.norm(&linalg::add(x, y)) - self.norm(x) - self.norm(y)
    }

    /// `x̄ = <x,e> e - x`.
    fn conj(&self, x: &[Scalar]) -> Vector {
        let t = self.bilinear(x, &self.unit());
        linalg::sub(&linalg::scale(&t, &self.unit()), x)
    }

    fn gram(&self) -> Matrix {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.bilinear(&self.basis(i), &self.basis(j)))
                    .collect()
            })
            .collect()
    }
}

/// The concrete split octonions `(M2(k), M2(k))` as an [`Algebra`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitOctonions {
    pub field: FieldSpec,
}

impl SplitOctonions {
    pub fn new(field: FieldSpec) -> SplitOctonions {
        SplitOctonions { field }
    }
}

impl Algebra for SplitOctonions {
    fn field(&self) -> FieldSpec {
        self.field
    }
    fn dim(&self) -> usize {
        8
    }
    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        Octonion::from_coords(x).mul(&Octonion::from_coords(y)).coords()
    }
    fn norm(&self, x: &[Scalar]) -> Scalar {
        Octonion::from_coords(x).norm()
    }
    fn unit(&self) -> Vector {
        Octonion::identity(self.field).coords()
    }
    fn conj(&self, x: &[Scalar]) -> Vector {
        Octonion::from_coords(x).conj().coords()
    }
}

/// An algebra given by its multiplication table and quadratic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    field: FieldSpec,
    labels: Vec<String>,
    /// `table[i][j]` holds the coordinates of `b_i b_j`.
    table: Vec<Vec<Vector>>,
    norms: Vec<Scalar>,
    gram: Matrix,
    unit: Vector,
}

impl StructureAlgebra {
    /// Tabulates any coordinate algebra.
    pub fn tabulate(alg: &impl Algebra, labels: Vec<String>) -> StructureAlgebra {
        let n = alg.dim();
        assert_eq!(labels.len(), n);
        let table = (0..n)
            .map(|i| (0..n).map(|j| alg.mul(&alg.basis(i), &alg.basis(j))).collect())
            .collect();
        StructureAlgebra {
            field: alg.field(),
            labels,
            table,
            norms: (0..n).map(|i| alg.norm(&alg.basis(i))).collect(),
            gram: alg.gram(),
            unit: alg.unit(),
        }
    }

    /// `k e`.
    pub fn ground(field: FieldSpec) -> StructureAlgebra {
        StructureAlgebra {
            field,
            labels: vec!["e".into()],
            table: vec![vec![vec![field.one()]]],
            norms: vec![field.one()],
            gram: vec![vec![field.int(2)]],
            unit: vec![field.one()],
        }
    }

    /// M2(k) with basis E11, E12, E21, E22 and the determinant as norm.
    pub fn split_quaternions(field: FieldSpec) -> StructureAlgebra {
        struct M2(FieldSpec);
        impl Algebra for M2 {
            fn field(&self) -> FieldSpec {
                self.0
            }
            fn dim(&self) -> usize {
                4
            }
            fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
                let m = |c: &[Scalar]| Mat2::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone());
                (&m(x) * &m(y)).entries().cloned().collect()
            }
            fn norm(&self, x: &[Scalar]) -> Scalar {
                &x[0] * &x[3] - &x[1] * &x[2]
            }
            fn unit(&self) -> Vector {
                vec![self.0.one(), self.0.zero(), self.0.zero(), self.0.one()]
            }
        }
        let labels = ["E11", "E12", "E21", "E22"].map(String::from).to_vec();
        StructureAlgebra::tabulate(&M2(field), labels)
    }

    pub fn split_octonions(field: FieldSpec) -> StructureAlgebra {
        let labels = ["(E11,0)", "(E12,0)", "(E21,0)", "(E22,0)", "(0,E11)", "(0,E12)", "(0,E21)", "(0,E22)"]
            .map(String::from)
            .to_vec();
        StructureAlgebra::tabulate(&SplitOctonions::new(field), labels)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<Vector>] {
        &self.table
    }

    pub fn norms(&self) -> &[Scalar] {
        &self.norms
    }

    /// Overwrites one structure constant; used to build corrupted fixtures.
    pub fn set_structure_constant(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        self.table[i][j][k] = value;
    }

    /// Doubling `D ⊕ Da` with `(x+ya)(u+va) = (xu + α v̄ y) + (vx + y ū)a` and
    /// `N(x+ya) = N(x) - αN(y)`.
    pub fn double(&self, alpha: &Scalar) -> Result<StructureAlgebra> {
        let n = self.dim();
        if n >= 8 {
            return Err(Error::HurwitzBound(n));
        }
        if alpha.is_zero() {
            return Err(Error::ZeroInput("doubling parameter"));
        }
        self.field.check(alpha)?;
        if let Some((i, j, k)) = associativity_witness(self) {
            return Err(Error::NotAssociative(i, j, k));
        }
        let f = self.field;
        let split = |v: &Vector| (v[..n].to_vec(), v[n..].to_vec());
        let product = |p: &Vector, q: &Vector| -> Vector {
            let (x, y) = split(p);
            let (u, v) = split(q);
            let first = linalg::add(&self.mul(&x, &u), &linalg::scale(alpha, &self.mul(&self.conj(&v), &y)));
            let second = linalg::add(&self.mul(&v, &x), &self.mul(&y, &self.conj(&u)));
            first.into_iter().chain(second).collect()
        };
        let basis: Vec<Vector> = (0..2 * n).map(|i| linalg::unit_vector(2 * n, i, f)).collect();
        let table = basis
            .iter()
            .map(|p| basis.iter().map(|q| product(p, q)).collect())
            .collect();
        let level = n.trailing_zeros() + 1;
        let labels = self
            .labels
            .iter()
            .cloned()
            .chain(self.labels.iter().map(|l| {
                if l == "e" {
                    format!("a{level}")
                } else {
                    format!("{l}a{level}")
                }
            }))
            .collect();
        let norms = self
            .norms
            .iter()
            .cloned()
            .chain(self.norms.iter().map(|x| -(alpha * x)))
            .collect();
        let mut gram = vec![linalg::zeros(2 * n, f); 2 * n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = self.gram[i][j].clone();
                gram[n + i][n + j] = -(alpha * &self.gram[i][j]);
            }
        }
        let unit = self.unit.iter().cloned().chain(linalg::zeros(n, f)).collect();
        Ok(StructureAlgebra {
            field: f,
            labels,
            table,
            norms,
            gram,
            unit,
        })
    }

    /// Checks the unit laws, polarization consistency and `N(xy) = N(x)N(y)`
    /// on all basis pairs and on 50 seeded random combinations.
    pub fn composition_check(&self) -> CompositionReport {
        let n = self.dim();
        let f = self.field;
        let e = self.unit();
        for i in 0..n {
            let b = self.basis(i);
            if self.mul(&e, &b) != b || self.mul(&b, &e) != b {
                return CompositionReport::fail(CompositionWitness::UnitLaw { basis: i });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let consistent = if i == j {
                    self.gram[i][i] == f.int(2) * &self.norms[i]
                } else {
                    self.gram[i][j] == self.gram[j][i]
                };
                if !consistent {
                    return CompositionReport::fail(CompositionWitness::Polarization { i, j });
                }
            }
        }
        let composes = |x: &Vector, y: &Vector| self.norm(&self.mul(x, y)) == self.norm(x) * self.norm(y);
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (self.basis(i), self.basis(j));
                if !composes(&x, &y) {
                    return CompositionReport::fail(CompositionWitness::Composition { x, y });
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut random = || -> Vector { (0..n).map(|_| f.int(rng.gen_range(-3..=3))).collect() };
        for _ in 0..50 {
            let (x, y) = (random(), random());
            if !composes(&x, &y) {
                return CompositionReport::fail(CompositionWitness::Composition { x, y });
            }
        }
        CompositionReport {
            holds: true,
            witness: None,
        }
    }

    pub fn to_document(&self) -> StructureAlgebraDoc {
        let s = |v: &[Scalar]| v.iter().map(Scalar::to_string).collect::<Vec<_>>();
        StructureAlgebraDoc {
            field: self.field.to_string(),
            dim: self.dim(),
            basis: self.labels.clone(),
            table: self.table.iter().map(|row| row.iter().map(|v| s(v)).collect()).collect(),
            gram: self.gram.iter().map(|r| s(r)).collect(),
            unit: s(&self.unit),
        }
    }

    pub fn from_document(doc: &StructureAlgebraDoc) -> Result<StructureAlgebra> {
        let field: FieldSpec = doc.field.parse()?;
        let n = doc.dim;
        let bad = |what: &str| Error::InvalidArgument(format!("structure algebra document: {what}"));
        let parse = |v: &[String]| -> Result<Vector> { v.iter().map(|x| field.parse_scalar(x)).collect() };
        if doc.basis.len() != n || doc.unit.len() != n || doc.gram.len() != n || doc.table.len() != n {
            return Err(bad("dimension mismatch"));
        }
        let table = doc
            .table
            .iter()
            .map(|row| {
                if row.len() != n {
                    return Err(bad("table row length"));
                }
                row.iter()
                    .map(|v| if v.len() == n { parse(v) } else { Err(bad("table entry length")) })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let gram = doc
            .gram
            .iter()
            .map(|r| if r.len() == n { parse(r) } else { Err(bad("gram row length")) })
            .collect::<Result<Matrix>>()?;
        let half = field.fraction(1, 2)?;
        let norms = (0..n).map(|i| &gram[i][i] * &half).collect();
        Ok(StructureAlgebra {
            field,
            labels: doc.basis.clone(),
            table,
            norms,
            gram,
            unit: parse(&doc.unit)?,
        })
    }
}

impl Algebra for StructureAlgebra {
    fn field(&self) -> FieldSpec {
        self.field
    }
    fn dim(&self) -> usize {
        self.labels.len()
    }
    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut acc = linalg::zeros(n, self.field);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (a, t) in acc.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *a = &*a + &(&c * t);
                    }
                }
            }
        }
        acc
    }
    /// `N(x) = sum N(b_i) x_i^2 + sum_{i<j} <b_i,b_j> x_i x_j`.
    fn norm(&self, x: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for i in 0..x.len() {
            if x[i].is_zero() {
                continue;
            }
            acc = acc + &self.norms[i] * &x[i].square();
            for j in i + 1..x.len() {
                acc = acc + &self.gram[i][j] * &(&x[i] * &x[j]);
            }
        }
        acc
    }
    fn unit(&self) -> Vector {
        self.unit.clone()
    }
    fn gram(&self) -> Matrix {
        self.gram.clone()
    }
}

/// Serialized form `{dim, basis, table, gram, unit}` plus the field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureAlgebraDoc {
    pub field: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub table: Vec<Vec<Vec<String>>>,
    pub gram: Vec<Vec<String>>,
    pub unit: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CompositionWitness {
    UnitLaw { basis: usize },
    Polarization { i: usize, j: usize },
    Composition { x: Vector, y: Vector },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionReport {
    pub holds: bool,
    pub witness: Option<CompositionWitness>,
}

impl CompositionReport {
    fn fail(w: CompositionWitness) -> CompositionReport {
        CompositionReport {
            holds: false,
            witness: Some(w),
        }
    }
}

/// First basis pair with `b_i b_j != b_j b_i`.
pub fn commutativity_witness(alg: &impl Algebra) -> Option<(usize, usize)> {
    let n = alg.dim();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| {
            let (x, y) = (alg.basis(i), alg.basis(j));
            alg.mul(&x, &y) != alg.mul(&y, &x)
        })
}

/// First basis triple with `(b_i b_j) b_k != b_i (b_j b_k)`.
pub fn associativity_witness(alg: &impl Algebra) -> Option<(usize, usize, usize)> {
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            let ij = alg.mul(&alg.basis(i), &alg.basis(j));
            for k in 0..n {
                let left = alg.mul(&ij, &alg.basis(k));
                let right = alg.mul(&alg.basis(i), &alg.mul(&alg.basis(j), &alg.basis(k)));
                if left != right {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Dimension, commutativity and associativity of one algebra in a doubling
/// chain, with witnesses where the laws fail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HurwitzFlags {
    pub dim: usize,
    pub commutative: bool,
    pub associative: bool,
    pub commutativity_witness: Option<(usize, usize)>,
    pub associativity_witness: Option<(usize, usize, usize)>,
}

pub fn hurwitz_flags(alg: &impl Algebra) -> HurwitzFlags {
    let cw = commutativity_witness(alg);
    let aw = associativity_witness(alg);
    HurwitzFlags {
        dim: alg.dim(),
        commutative: cw.is_none(),
        associative: aw.is_none(),
        commutativity_witness: cw,
        associativity_witness: aw,
    }
}

/// `k e` doubled once per entry of `alphas`.
pub fn doubling_chain(field: FieldSpec, alphas: &[Scalar]) -> Result<Vec<StructureAlgebra>> {
    let mut chain = vec![StructureAlgebra::ground(field)];
    for a in alphas {
        let next = chain.last().expect("nonempty").double(a)?;
        chain.push(next);
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn hurwitz_chain() {
        let one = Q.one();
        let chain = doubling_chain(Q, &[one.clone(), one.clone(), one]).unwrap();
        let flags: Vec<(usize, bool, bool)> = chain
            .iter()
            .map(|a| {
                let h = hurwitz_flags(a);
                (h.dim, h.commutative, h.associative)
            })
            .collect();
        assert_eq!(
            flags,
            vec![(1, true, true), (2, true, true), (4, false, true), (8, false, false)]
        );
        for a in &chain {
            assert!(a.composition_check().holds);
        }
        assert_eq!(chain[3].labels()[7], "a1a2a3");
    }

    #[test]
    fn doubling_rejects_bad_input() {
        let o = StructureAlgebra::split_octonions(Q);
        assert_eq!(o.double(&Q.one()), Err(Error::HurwitzBound(8)));
        assert_eq!(
            StructureAlgebra::ground(Q).double(&Q.zero()),
            Err(Error::ZeroInput("doubling parameter"))
        );
    }

    #[test]
    fn doubling_norm_law() {
        for alpha in [1, -1, 3, -7] {
            let a = Q.int(alpha);
            let d = StructureAlgebra::split_quaternions(Q);
            let c = d.double(&a).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let x = d.basis(i);
                    let y = d.basis(j);
                    let xy: Vector = x.iter().chain(y.iter()).cloned().collect();
                    assert_eq!(c.norm(&xy), d.norm(&x) - &a * &d.norm(&y));
                }
            }
        }
    }

    #[test]
    fn doubled_split_quaternions_are_the_concrete_octonions() {
        let doubled = StructureAlgebra::split_quaternions(Q).double(&Q.one()).unwrap();
        let concrete = StructureAlgebra::split_octonions(Q);
        assert_eq!(doubled.table(), concrete.table());
        assert_eq!(doubled.gram(), concrete.gram());
        assert_eq!(doubled.unit(), concrete.unit());
    }

    #[test]
    fn corrupted_table_is_caught() {
        let mut o = StructureAlgebra::split_octonions(Q);
        o.set_structure_constant(1, 2, 0, Q.int(5));
        let report = o.composition_check();
        assert!(!report.holds);
        assert!(report.witness.is_some());
    }

    #[test]
    fn document_roundtrip() {
        let h = StructureAlgebra::split_quaternions(FieldSpec::PrimeField(7));
        let doc = h.to_document();
        let json = serde_json::to_string(&doc).unwrap();
        let back: StructureAlgebraDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(StructureAlgebra::from_document(&back).unwrap(), h);
    }
}
