use serde::Serialize;

use super::algebra::{Algebra, StructureAlgebra};
use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::forms::{self, DiagonalForm};
use crate::linalg::{self, Matrix, Vector};

/// A unital, multiplicatively closed subspace of an ambient algebra, held as
/// ambient coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraBasis {
    #[serde(skip)]
    field: FieldSpec,
    vectors: Vec<Vector>,
}

impl SubalgebraBasis {
    /// Checks independence, that the unit lies in the span, and closure.
    pub fn new(alg: &impl Algebra, vectors: Vec<Vector>) -> Result<SubalgebraBasis> {
        let n = alg.dim();
        if vectors.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidSubalgebra("coordinate length".into()));
        }
        if !linalg::is_independent(&vectors) {
            return Err(Error::InvalidSubalgebra("vectors are dependent".into()));
        }
        let sub = SubalgebraBasis {
            field: alg.field(),
            vectors,
        };
        if !sub.contains(&alg.unit()) {
            return Err(Error::InvalidSubalgebra("identity not in span".into()));
        }
        for (i, x) in sub.vectors.iter().enumerate() {
            for (j, y) in sub.vectors.iter().enumerate() {
                if !sub.contains(&alg.mul(x, y)) {
                    return Err(Error::InvalidSubalgebra(format!(
                        "product of basis vectors {i} and {j} leaves the span"
                    )));
                }
            }
        }
        Ok(sub)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        linalg::in_span(&self.vectors, v, self.field)
    }

    /// Coordinates of an element with respect to this basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        linalg::coordinates(&self.vectors, v, self.field)
    }

    pub fn gram(&self, alg: &impl Algebra) -> Matrix {
        self.vectors
            .iter()
            .map(|x| self.vectors.iter().map(|y| alg.bilinear(x, y)).collect())
            .collect()
    }

    /// The subalgebra as a standalone structure algebra in this basis.
    pub fn structure(&self, alg: &impl Algebra, labels: Vec<String>) -> StructureAlgebra {
        StructureAlgebra::tabulate(&Restricted { alg, sub: self }, labels)
    }

    /// Basis of the elements of `self` annihilated by the functionals
    /// `<·, w>` for `w` in `against`, as ambient vectors.
    fn perp_within(&self, alg: &impl Algebra, against: &[Vector]) -> Vec<Vector> {
        let rows: Matrix = against
            .iter()
            .map(|w| self.vectors.iter().map(|b| alg.bilinear(b, w)).collect())
            .collect();
        linalg::kernel(&rows, self.dim(), self.field)
            .iter()
            .map(|c| linalg::combination(c, &self.vectors, self.field))
            .collect()
    }
}

/// `D` viewed in its own coordinates.
struct Restricted<'a, A: Algebra> {
    alg: &'a A,
    sub: &'a SubalgebraBasis,
}

impl<A: Algebra> Algebra for Restricted<'_, A> {
    fn field(&self) -> FieldSpec {
        self.sub.field
    }
    fn dim(&self) -> usize {
        self.sub.dim()
    }
    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let f = self.sub.field;
        let p = self.alg.mul(
            &linalg::combination(x, &self.sub.vectors, f),
            &linalg::combination(y, &self.sub.vectors, f),
        );
        self.sub.coordinates(&p).expect("subalgebra is closed")
    }
    fn norm(&self, x: &[Scalar]) -> Scalar {
        self.alg.norm(&linalg::combination(x, &self.sub.vectors, self.sub.field))
    }
    fn unit(&self) -> Vector {
        self.sub.coordinates(&self.alg.unit()).expect("subalgebra is unital")
    }
}

/// Basis of `D^⊥` in the ambient algebra.
pub fn orthogonal_complement(d: &SubalgebraBasis, alg: &impl Algebra) -> Result<Vec<Vector>> {
    let field = alg.field();
    if linalg::rank(&alg.gram()) < alg.dim() {
        return Err(Error::DegenerateForm);
    }
    let rows: Matrix = d
        .vectors
        .iter()
        .map(|v| (0..alg.dim()).map(|j| alg.bilinear(v, &alg.basis(j))).collect())
        .collect();
    Ok(linalg::kernel(&rows, alg.dim(), field))
}

/// `D = span{e, a, b, ab}` with `a^2 = αe`, `b^2 = βe`, `ab = -ba`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuaternionPresentation {
    pub e: Vector,
    pub a: Vector,
    pub b: Vector,
    pub ab: Vector,
    pub alpha: Scalar,
    pub beta: Scalar,
}

impl QuaternionPresentation {
    pub fn basis(&self) -> Vec<Vector> {
        vec![self.e.clone(), self.a.clone(), self.b.clone(), self.ab.clone()]
    }

    /// `ze + xa + yb + w(ab)`.
    pub fn element(&self, c: &[Scalar]) -> Vector {
        let basis = self.basis();
        c.iter()
            .zip(&basis)
            .skip(1)
            .fold(linalg::scale(&c[0], &basis[0]), |acc, (x, v)| linalg::add(&acc, &linalg::scale(x, v)))
    }

    /// The multiplication table of `(α, β)` in the basis `1, i, j, ij`,
    /// derived from the defining relations alone.
    pub fn abstract_table(&self) -> Vec<Vec<Vector>> {
        let z = self.alpha.zero_like();
        let o = self.alpha.one_like();
        let (al, be) = (&self.alpha, &self.beta);
        let v = |c: [&Scalar; 4]| c.iter().map(|x| (*x).clone()).collect::<Vector>();
        let ab = al * be;
        let (nal, nbe, nab) = (-al, -be, -&ab);
        let no = -&o;
        vec![
            vec![v([&o, &z, &z, &z]), v([&z, &o, &z, &z]), v([&z, &z, &o, &z]), v([&z, &z, &z, &o])],
            vec![v([&z, &o, &z, &z]), v([al, &z, &z, &z]), v([&z, &z, &z, &o]), v([&z, &z, al, &z])],
            vec![v([&z, &z, &o, &z]), v([&z, &z, &z, &no]), v([be, &z, &z, &z]), v([&z, &nbe, &z, &z])],
            vec![v([&z, &z, &z, &o]), v([&z, &z, &nal, &z]), v([&z, be, &z, &z]), v([&nab, &z, &z, &z])],
        ]
    }

    /// Recomputes the products of `e, a, b, ab` in the ambient algebra and
    /// compares them with [`Self::abstract_table`].
    pub fn table_is_sound(&self, alg: &impl Algebra) -> Result<bool> {
        let sub = SubalgebraBasis::new(alg, self.basis())?;
        let labels = ["e", "a", "b", "ab"].map(String::from).to_vec();
        Ok(sub.structure(alg, labels).table() == self.abstract_table().as_slice())
    }
}

/// First anisotropic vector among single basis vectors, then pairwise sums,
/// then triple sums, in index order.
fn first_anisotropic(alg: &impl Algebra, basis: &[Vector]) -> Option<Vector> {
    let n = basis.len();
    let singles = (0..n).map(|i| vec![i]);
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j]));
    let triples =
        (0..n).flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| vec![i, j, k])));
    singles.chain(pairs).chain(triples).find_map(|idx| {
        let v = idx
            .iter()
            .skip(1)
            .fold(basis[idx[0]].clone(), |acc, &i| linalg::add(&acc, &basis[i]));
        (!alg.norm(&v).is_zero()).then_some(v)
    })
}

/// Finds `a ∈ D ∩ e^⊥` and `b ∈ D ∩ {e,a}^⊥` with nonzero norms and checks
/// every presentation relation.
pub fn quaternion_presentation(d: &SubalgebraBasis, alg: &impl Algebra) -> Result<QuaternionPresentation> {
    if d.dim() != 4 {
        return Err(Error::NotQuaternion(d.dim()));
    }
    if linalg::rank(&d.gram(alg)) < 4 {
        return Err(Error::DegenerateForm);
    }
    let e = alg.unit();
    let pure = d.perp_within(alg, &[e.clone()]);
    let a = first_anisotropic(alg, &pure).ok_or(Error::PresentationSearchExhausted)?;
    let rest = d.perp_within(alg, &[e.clone(), a.clone()]);
    let b = first_anisotropic(alg, &rest).ok_or(Error::PresentationSearchExhausted)?;
    let ab = alg.mul(&a, &b);
    let p = QuaternionPresentation {
        alpha: -alg.norm(&a),
        beta: -alg.norm(&b),
        e,
        a,
        b,
        ab,
    };
    let scaled = |s: &Scalar| linalg::scale(s, &p.e);
    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::PresentationInvariant(what.to_string()))
        }
    };
    check(alg.bilinear(&p.a, &p.e).is_zero(), "a ⊥ e")?;
    check(alg.bilinear(&p.b, &p.e).is_zero(), "b ⊥ e")?;
    check(alg.bilinear(&p.a, &p.b).is_zero(), "a ⊥ b")?;
    check(alg.mul(&p.a, &p.a) == scaled(&p.alpha), "a^2 = αe")?;
    check(alg.mul(&p.b, &p.b) == scaled(&p.beta), "b^2 = βe")?;
    check(alg.mul(&p.b, &p.a) == linalg::neg(&p.ab), "ab = -ba")?;
    check(linalg::is_independent(&p.basis()) && p.basis().iter().all(|v| d.contains(v)), "span is D")?;
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ZeroDivisorSearch {
    /// `u w = 0` with both factors nonzero.
    Pair { u: Vector, w: Vector },
    /// The norm form is anisotropic: `D` is a division algebra.
    Anisotropic,
    /// Isotropic in the formal model, but no rational point was found; the
    /// zero divisors need irrational coordinates (e.g. `(-1,-1)` over C).
    NoRationalWitness,
}

const WITNESS_HEIGHT: i64 = 12;

/// Converts an isotropic vector of `<1, -α, -β, αβ>` into the pair
/// `(u, ū)`, which multiplies to `N(u) e = 0`.
pub fn find_zero_divisor(d: &SubalgebraBasis, alg: &impl Algebra) -> Result<ZeroDivisorSearch> {
    let p = quaternion_presentation(d, alg)?;
    let field = alg.field();
    let form = forms::quaternion_norm_form(&p.alpha, &p.beta, field)?;
    let iso = forms::is_isotropic(&DiagonalForm::new(form.coeffs()[..3].to_vec(), field)?)?;
    if !iso.isotropic {
        return Ok(ZeroDivisorSearch::Anisotropic);
    }
    let witness = match iso.witness {
        Some(mut w) => {
            w.push(field.zero());
            Some(w)
        }
        None => small_height_witness(&form),
    };
    let Some(c) = witness else {
        return Ok(ZeroDivisorSearch::NoRationalWitness);
    };
    let u = p.element(&c);
    let w = alg.conj(&u);
    debug_assert!(linalg::is_zero(&alg.mul(&u, &w)));
    Ok(ZeroDivisorSearch::Pair { u, w })
}

/// Integer points `(z, x, y, w)` with `x, y, w` bounded by
/// [`WITNESS_HEIGHT`] and `z` an exact square root.
fn small_height_witness(form: &DiagonalForm) -> Option<Vector> {
    let field = form.field();
    let c = form.coeffs();
    let h = WITNESS_HEIGHT;
    for x in -h..=h {
        for y in -h..=h {
            for w in 0..=h {
                if x == 0 && y == 0 && w == 0 {
                    continue;
                }
                let tail = [field.int(x), field.int(y), field.int(w)];
                let rest = c[1..]
                    .iter()
                    .zip(&tail)
                    .fold(field.zero(), |acc, (ci, t)| acc + ci * &t.square());
                if let Some(z) = field.exact_sqrt(&-rest) {
                    let mut v = vec![z];
                    v.extend(tail);
                    return Some(v);
                }
            }
        }
    }
    None
}
