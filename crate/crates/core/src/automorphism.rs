//! 8x8 linear maps on the split octonions: named elements, automorphism
//! checks, fixed subalgebras and the stabilizer maps `s_{dp}`.

use serde::{Serialize, Serializer};

use crate::composition::{
    orthogonal_complement, quaternion_presentation, Algebra, Octonion, QuaternionPresentation, SplitOctonions,
    SubalgebraBasis,
};
use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::linalg::{self, Matrix, Vector};

pub const DEFAULT_ORDER_CAP: usize = 12;

/// A linear endomorphism of the octonions; column `j` is the image of basis
/// vector `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearMap {
    field: FieldSpec,
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(field: FieldSpec, matrix: Matrix) -> Result<LinearMap> {
        if matrix.len() != 8 || matrix.iter().any(|r| r.len() != 8) {
            return Err(Error::InvalidArgument("linear maps are 8x8".into()));
        }
        for x in matrix.iter().flatten() {
            field.check(x)?;
        }
        Ok(LinearMap { field, matrix })
    }

    pub fn identity(field: FieldSpec) -> LinearMap {
        LinearMap {
            field,
            matrix: linalg::identity(8, field),
        }
    }

    fn diagonal(field: FieldSpec, d: Vec<Scalar>) -> LinearMap {
        let mut m = linalg::identity(8, field);
        for (i, x) in d.into_iter().enumerate() {
            m[i][i] = x;
        }
        LinearMap { field, matrix: m }
    }

    /// The permutation matrix sending basis vector `j` to `perm[j]`.
    fn permutation(field: FieldSpec, perm: [usize; 8]) -> LinearMap {
        let mut m = vec![linalg::zeros(8, field); 8];
        for (j, &i) in perm.iter().enumerate() {
            m[i][j] = field.one();
        }
        LinearMap { field, matrix: m }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        linalg::mat_vec(&self.matrix, v, self.field)
    }

    pub fn apply_octonion(&self, x: &Octonion) -> Octonion {
        Octonion::from_coords(&self.apply(&x.coords()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(LinearMap {
            field: self.field,
            matrix: linalg::mat_mul(&self.matrix, &other.matrix, self.field),
        })
    }

    fn then(&self, other: &LinearMap) -> LinearMap {
        self.compose(other).expect("same field")
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        linalg::inverse(&self.matrix, self.field)
            .map(|matrix| LinearMap {
                field: self.field,
                matrix,
            })
            .ok_or(Error::Singular)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == linalg::identity(8, self.field)
    }

    /// Least `n <= cap` with `self^n = id`.
    pub fn order(&self, cap: usize) -> Order {
        let mut power = self.clone();
        for n in 1..=cap {
            if power.is_identity() {
                return Order::Finite(n);
            }
            power = power.then(self);
        }
        Order::ExceedsCap
    }

    /// Images of all basis vectors, as octonions.
    pub fn columns(&self) -> Vec<Vector> {
        linalg::transpose(&self.matrix)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    ExceedsCap,
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(n) => s.serialize_u64(*n as u64),
            Order::ExceedsCap => s.serialize_str("exceeds cap"),
        }
    }
}

/// `t(β, γ)`, acting as `diag(1, βγ, 1/(βγ), 1, 1/γ, β, 1/β, γ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusElement {
    pub beta: Scalar,
    pub gamma: Scalar,
}

impl TorusElement {
    pub fn new(beta: Scalar, gamma: Scalar) -> Result<TorusElement> {
        if beta.is_zero() || gamma.is_zero() {
            return Err(Error::ZeroInput("torus_element"));
        }
        Ok(TorusElement { beta, gamma })
    }

    pub fn to_map(&self, field: FieldSpec) -> Result<LinearMap> {
        field.check(&self.beta)?;
        field.check(&self.gamma)?;
        let (b, g) = (&self.beta, &self.gamma);
        let bg = b * g;
        let inv = |x: &Scalar| x.inv().expect("nonzero");
        Ok(LinearMap::diagonal(
            field,
            vec![field.one(), bg.clone(), inv(&bg), field.one(), inv(g), b.clone(), inv(b), g.clone()],
        ))
    }
}

pub fn torus_element(beta: &Scalar, gamma: &Scalar, field: FieldSpec) -> Result<LinearMap> {
    TorusElement::new(beta.clone(), gamma.clone())?.to_map(field)
}

/// The two-block antidiagonal permutation: swaps coordinates 0↔3, 1↔2, 4↔7
/// and 5↔6.
pub fn s_element(field: FieldSpec) -> LinearMap {
    LinearMap::permutation(field, [3, 2, 1, 0, 7, 6, 5, 4])
}

/// `s · t(β, γ)`, the matrix product with `s` on the left.
pub fn s_times_torus(beta: &Scalar, gamma: &Scalar, field: FieldSpec) -> Result<LinearMap> {
    Ok(s_element(field).then(&torus_element(beta, gamma, field)?))
}

/// The map written out for the rational prime examples: the permutation `s`
/// scaled so that `(E12,0) -> (1/p)(E21,0)`, `(E21,0) -> p (E12,0)`,
/// `(0,E11) -> p (0,E22)` and `(0,E22) -> (1/p)(0,E11)`. It fixes
/// `([[0,p],[1,0]], 0)`. As a product this is `s · t(1, 1/p)`.
pub fn s_p(p: &Scalar, field: FieldSpec) -> Result<LinearMap> {
    let inv = p.inv().ok_or(Error::ZeroInput("s_p"))?;
    s_times_torus(&field.one(), &inv, field)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AutomorphismWitness {
    Singular,
    MovesIdentity,
    Product { i: usize, j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismCheck {
    pub holds: bool,
    pub witness: Option<AutomorphismWitness>,
}

/// Invertible, fixes `e`, and multiplicative on all 64 basis pairs.
pub fn is_automorphism(m: &LinearMap) -> AutomorphismCheck {
    let fail = |w| AutomorphismCheck {
        holds: false,
        witness: Some(w),
    };
    let alg = SplitOctonions::new(m.field);
    if linalg::rank(&m.matrix) < 8 {
        return fail(AutomorphismWitness::Singular);
    }
    if m.apply(&alg.unit()) != alg.unit() {
        return fail(AutomorphismWitness::MovesIdentity);
    }
    let images = m.columns();
    for i in 0..8 {
        for j in 0..8 {
            let lhs = m.apply(&alg.mul(&alg.basis(i), &alg.basis(j)));
            if lhs != alg.mul(&images[i], &images[j]) {
                return fail(AutomorphismWitness::Product { i, j });
            }
        }
    }
    AutomorphismCheck {
        holds: true,
        witness: None,
    }
}

/// Solutions of `t(β,γ)^2 = id` other than the identity: `β, γ` range over
/// the square roots of 1 in the field.
pub fn involutive_torus_elements(field: FieldSpec) -> Vec<TorusElement> {
    let one = field.one();
    let root = field.exact_sqrt(&one).expect("1 is a square");
    let roots = if root == -&root {
        vec![root]
    } else {
        let mut r = vec![root.clone(), -&root];
        r.sort_by_key(|x| !x.is_one());
        r
    };
    let mut out = Vec::new();
    for b in &roots {
        for g in &roots {
            let t = TorusElement::new(b.clone(), g.clone()).expect("roots are nonzero");
            let m = t.to_map(field).expect("field elements");
            if !m.is_identity() && m.then(&m).is_identity() {
                out.push(t);
            }
        }
    }
    out
}

/// Basis of `ker(m - λ id)`.
pub fn eigenspace(m: &LinearMap, lambda: &Scalar) -> Vec<Vector> {
    let mut shifted = m.matrix.clone();
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] = &row[i] - lambda;
    }
    linalg::kernel(&shifted, 8, m.field)
}

/// The subalgebra fixed elementwise by an automorphism of order at most 2.
pub fn fixed_subalgebra(m: &LinearMap) -> Result<SubalgebraBasis> {
    let check = is_automorphism(m);
    if !check.holds {
        return Err(Error::NotAutomorphism(format!("{:?}", check.witness)));
    }
    if !m.then(m).is_identity() {
        return Err(Error::NotInvolution("square is not the identity".into()));
    }
    let alg = SplitOctonions::new(m.field);
    let fixed = eigenspace(m, &m.field.one());
    let d = SubalgebraBasis::new(&alg, fixed)
        .map_err(|e| Error::Engine(format!("fixed vectors do not form a subalgebra: {e}")))?;
    let expected = if m.is_identity() { 8 } else { 4 };
    if d.dim() != expected {
        return Err(Error::Engine(format!(
            "fixed subalgebra has dimension {}, expected {expected}",
            d.dim()
        )));
    }
    Ok(d)
}

/// Presentation of the quaternion algebra fixed by an involution.
pub fn fixed_presentation(m: &LinearMap) -> Result<QuaternionPresentation> {
    quaternion_presentation(&fixed_subalgebra(m)?, &SplitOctonions::new(m.field))
}

fn octonion_inverse(alg: &SplitOctonions, x: &[Scalar]) -> Option<Vector> {
    let n = alg.norm(x).inv()?;
    Some(linalg::scale(&n, &alg.conj(x)))
}

/// `s_{dp}(x + ya) = dxd⁻¹ + (p d y d⁻¹) a` for the decomposition
/// `C = D ⊕ Da`.
pub fn aut_fixing_subalgebra(
    d_elem: &[Scalar],
    p_elem: &[Scalar],
    d: &SubalgebraBasis,
    a: &[Scalar],
) -> Result<LinearMap> {
    let field = d.field();
    let alg = SplitOctonions::new(field);
    if d.dim() != 4 {
        return Err(Error::NotQuaternion(d.dim()));
    }
    if !d.contains(d_elem) || !d.contains(p_elem) {
        return Err(Error::InvalidArgument("d and p must lie in D".into()));
    }
    let d_inv = octonion_inverse(&alg, d_elem)
        .ok_or_else(|| Error::InvalidArgument("N(d) = 0".into()))?;
    if !alg.norm(p_elem).is_one() {
        return Err(Error::InvalidArgument("N(p) must be 1".into()));
    }
    if alg.norm(a).is_zero() || d.vectors().iter().any(|v| !alg.bilinear(v, a).is_zero()) {
        return Err(Error::InvalidArgument("a must be anisotropic and orthogonal to D".into()));
    }
    let mut frame: Vec<Vector> = d.vectors().to_vec();
    frame.extend(d.vectors().iter().map(|v| alg.mul(v, a)));
    let conj = |x: &[Scalar]| alg.mul(&alg.mul(d_elem, x), &d_inv);
    let columns: Vec<Vector> = (0..8)
        .map(|j| {
            let c = linalg::coordinates(&frame, &alg.basis(j), field).expect("D + Da spans C");
            let x = linalg::combination(&c[..4], d.vectors(), field);
            let y = linalg::combination(&c[4..], d.vectors(), field);
            let y_image = alg.mul(&alg.mul(p_elem, &conj(&y)), a);
            linalg::add(&conj(&x), &y_image)
        })
        .collect();
    let map = LinearMap {
        field,
        matrix: linalg::transpose(&columns),
    };
    let check = is_automorphism(&map);
    if !check.holds {
        return Err(Error::Engine(format!("s_dp is not an automorphism: {:?}", check.witness)));
    }
    Ok(map)
}

/// A convenient anisotropic `a ∈ D^⊥`: the first complement basis vector or
/// pairwise sum with nonzero norm.
pub fn anisotropic_complement_vector(d: &SubalgebraBasis) -> Result<Vector> {
    let alg = SplitOctonions::new(d.field());
    let perp = orthogonal_complement(d, &alg)?;
    let n = perp.len();
    let pairs = (0..n).flat_map(|i| (i..n).map(move |j| (i, j)));
    pairs
        .map(|(i, j)| if i == j { perp[i].clone() } else { linalg::add(&perp[i], &perp[j]) })
        .find(|v| !alg.norm(v).is_zero())
        .ok_or(Error::DegenerateForm)
}

pub fn commutes_with(f: &LinearMap, t: &LinearMap) -> bool {
    f.then(t) == t.then(f)
}

pub fn leaves_invariant(f: &LinearMap, d: &SubalgebraBasis) -> bool {
    d.vectors().iter().all(|v| d.contains(&f.apply(v)))
}

/// `(u, v) -> (u', v')` where `'` negates the off-diagonal entries.
pub fn offdiagonal_negation(field: FieldSpec) -> LinearMap {
    let mut d = vec![field.one(); 8];
    for i in [1, 2, 5, 6] {
        d[i] = field.int(-1);
    }
    LinearMap::diagonal(field, d)
}

/// Parses `s`, `t:<β>,<γ>`, `st:<β>,<γ>` or `sp:<p>`.
pub fn named_element(name: &str, field: FieldSpec) -> Result<LinearMap> {
    let bad = || Error::Parse {
        what: "element name",
        input: name.to_string(),
    };
    let pair = |args: &str| -> Result<(Scalar, Scalar)> {
        let (b, g) = args.split_once(',').ok_or_else(bad)?;
        Ok((field.parse_scalar(b.trim())?, field.parse_scalar(g.trim())?))
    };
    match name.split_once(':') {
        None if name == "s" => Ok(s_element(field)),
        Some(("t", args)) => {
            let (b, g) = pair(args)?;
            torus_element(&b, &g, field)
        }
        Some(("st", args)) => {
            let (b, g) = pair(args)?;
            s_times_torus(&b, &g, field)
        }
        Some(("sp", args)) => s_p(&field.parse_scalar(args.trim())?, field),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::Mat2;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn t(b: i64, g: i64) -> LinearMap {
        torus_element(&Q.int(b), &Q.int(g), Q).unwrap()
    }

    fn diag(m: &LinearMap) -> Vec<Scalar> {
        (0..8).map(|i| m.matrix()[i][i].clone()).collect()
    }

    #[test]
    fn torus_diagonals() {
        assert!(t(1, 1).is_identity());
        let ints = |v: &[i64]| v.iter().map(|&x| Q.int(x)).collect::<Vec<_>>();
        assert_eq!(diag(&t(1, -1)), ints(&[1, -1, -1, 1, -1, 1, 1, -1]));
        assert_eq!(diag(&t(-1, 1)), ints(&[1, -1, -1, 1, 1, -1, -1, 1]));
        assert!(torus_element(&Q.int(0), &Q.int(1), Q).is_err());
    }

    #[test]
    fn yokota_map_is_a_torus_element() {
        let off = |m: &Mat2| Mat2::new(m.0[0][0].clone(), -&m.0[0][1], -&m.0[1][0], m.0[1][1].clone());
        let columns: Vec<Vector> = (0..8)
            .map(|j| {
                let x = Octonion::basis(Q, j);
                Octonion::new(off(&x.left), off(&x.right)).coords()
            })
            .collect();
        let gamma = LinearMap::new(Q, linalg::transpose(&columns)).unwrap();
        assert_eq!(gamma, t(-1, 1));
        assert_eq!(offdiagonal_negation(Q), gamma);
    }

    #[test]
    fn named_elements_are_automorphisms() {
        for m in [s_element(Q), t(2, 3), t(1, -1), s_times_torus(&Q.int(1), &Q.int(-1), Q).unwrap()] {
            assert!(is_automorphism(&m).holds);
        }
        let s = s_element(Q);
        assert!(s.then(&s).is_identity());
        for p in [3, 7, 11] {
            let sp = s_p(&Q.int(p), Q).unwrap();
            assert!(is_automorphism(&sp).holds);
            assert_eq!(sp.order(DEFAULT_ORDER_CAP), Order::Finite(2));
        }
    }

    #[test]
    fn s_p_matches_the_written_matrix() {
        let sp = s_p(&Q.int(7), Q).unwrap();
        let col = |j: usize| sp.apply(&linalg::unit_vector(8, j, Q));
        let e = |i: usize, c: Scalar| linalg::scale(&c, &linalg::unit_vector(8, i, Q));
        assert_eq!(col(0), e(3, Q.one()));
        assert_eq!(col(1), e(2, Q.fraction(1, 7).unwrap()));
        assert_eq!(col(2), e(1, Q.int(7)));
        assert_eq!(col(4), e(7, Q.int(7)));
        assert_eq!(col(7), e(4, Q.fraction(1, 7).unwrap()));
        let b = Octonion::parse("[[0,7],[1,0]];[[0,0],[0,0]]", Q).unwrap();
        assert_eq!(sp.apply_octonion(&b), b);
    }

    #[test]
    fn sign_flip_is_not_an_automorphism() {
        let mut m = linalg::identity(8, Q);
        m[1][1] = Q.int(-1);
        let check = is_automorphism(&LinearMap::new(Q, m).unwrap());
        assert!(!check.holds);
        assert!(matches!(check.witness, Some(AutomorphismWitness::Product { .. })));
    }

    #[test]
    fn orders() {
        assert_eq!(t(1, -1).order(8), Order::Finite(2));
        assert_eq!(LinearMap::identity(Q).order(8), Order::Finite(1));
        assert_eq!(t(2, 1).order(8), Order::ExceedsCap);
    }

    #[test]
    fn involutive_torus_solutions() {
        for field in [Q, FieldSpec::PrimeField(5), FieldSpec::Complex, FieldSpec::Padic(3)] {
            let sols: Vec<(Scalar, Scalar)> = involutive_torus_elements(field)
                .into_iter()
                .map(|t| (t.beta, t.gamma))
                .collect();
            let (p, m) = (field.one(), field.int(-1));
            assert_eq!(sols, vec![(p.clone(), m.clone()), (m.clone(), p), (m.clone(), m)]);
        }
    }

    #[test]
    fn fixed_subalgebras() {
        let d = fixed_subalgebra(&t(-1, -1)).unwrap();
        let first: Vec<Vector> = (0..4).map(|i| linalg::unit_vector(8, i, Q)).collect();
        assert_eq!(d.vectors(), first.as_slice());
        assert_eq!(fixed_subalgebra(&LinearMap::identity(Q)).unwrap().dim(), 8);
        assert!(matches!(fixed_subalgebra(&t(2, 1)), Err(Error::NotInvolution(_))));
        let s_fixed = fixed_subalgebra(&s_element(Q)).unwrap();
        let alg = SplitOctonions::new(Q);
        for lit in ["[[1,0],[0,1]];[[0,0],[0,0]]", "[[0,1],[1,0]];[[0,0],[0,0]]", "[[0,0],[0,0]];[[1,0],[0,1]]", "[[0,0],[0,0]];[[0,1],[1,0]]"] {
            assert!(s_fixed.contains(&Octonion::parse(lit, Q).unwrap().coords()));
        }
        let minus = eigenspace(&s_element(Q), &Q.int(-1));
        assert_eq!(minus.len(), 4);
        for v in &minus {
            assert!(s_fixed.vectors().iter().all(|x| alg.bilinear(x, v).is_zero()));
        }
    }

    #[test]
    fn fixed_algebra_of_st_is_definite() {
        let m = s_times_torus(&Q.int(1), &Q.int(-1), Q).unwrap();
        let d = fixed_subalgebra(&m).unwrap();
        let p = quaternion_presentation(&d, &SplitOctonions::new(Q)).unwrap();
        assert_eq!((p.alpha, p.beta), (Q.int(-1), Q.int(-1)));
    }

    #[test]
    fn stabilizer_maps() {
        let tm = t(-1, -1);
        let d = fixed_subalgebra(&tm).unwrap();
        let a = anisotropic_complement_vector(&d).unwrap();
        let e = SplitOctonions::new(Q).unit();
        for k in [2, 3, -5] {
            let f = aut_fixing_subalgebra(&linalg::scale(&Q.int(k), &e), &e, &d, &a).unwrap();
            assert!(f.is_identity());
        }
        let dm = Octonion::new(Mat2::from_ints(Q, [[1, 0], [0, 2]]), Mat2::zero(Q)).coords();
        let f = aut_fixing_subalgebra(&dm, &e, &d, &a).unwrap();
        assert!(leaves_invariant(&f, &d) && commutes_with(&f, &tm));
        assert_eq!(f.apply(&e), e);
        let p = Octonion::new(Mat2::from_ints(Q, [[2, 3], [1, 2]]), Mat2::zero(Q)).coords();
        let g = aut_fixing_subalgebra(&e, &p, &d, &a).unwrap();
        for v in d.vectors() {
            assert_eq!(&g.apply(v), v);
        }
        let bad = Octonion::new(Mat2::from_ints(Q, [[1, 0], [0, 0]]), Mat2::zero(Q)).coords();
        assert!(aut_fixing_subalgebra(&bad, &e, &d, &a).is_err());
        assert!(aut_fixing_subalgebra(&e, &dm, &d, &a).is_err());
    }

    #[test]
    fn element_names() {
        assert_eq!(named_element("s", Q).unwrap(), s_element(Q));
        assert_eq!(named_element("t:1,-1", Q).unwrap(), t(1, -1));
        assert_eq!(
            named_element("st:1,-1", Q).unwrap(),
            s_element(Q).compose(&t(1, -1)).unwrap()
        );
        assert!(named_element("u:1", Q).is_err());
        assert!(named_element("t:1", Q).is_err());
    }

}
