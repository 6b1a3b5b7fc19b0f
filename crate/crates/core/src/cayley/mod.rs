//! Eight-dimensional Cayley algebras given by structure constants.
//!
//! An algebra stores its multiplication table sparsely, together with the
//! norm as a pair (basis norms, polar matrix). In characteristic 2 the polar
//! form does not determine the quadratic form, so both are kept.

mod canonical;
mod doubling;
mod isotropy;
mod laws;
mod peirce;
mod split;
mod subalgebra;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldElem};
use crate::linalg::Matrix;

pub use canonical::{complete_canonical_basis, find_nilpotent, verify_canonical_basis};
pub use doubling::{build_by_doubling, double, DoublingParams};
pub use isotropy::{find_isotropic, find_isotropic_in, Isotropy};
pub use laws::{law_check, law_holds, LawMode, LawReport, LawTally, LAW_NAMES};
pub use peirce::{peirce_components, PeirceDecomposition};
pub use split::{split_cayley, BASIS_NAMES, TABLE1};
pub use subalgebra::{restricted_form_is_regular, SubalgebraBasis};

pub const DIM: usize = 8;

pub type AlgebraRef = Arc<CayleyAlgebra>;

/// Sparse product of two basis elements: `b_i b_j = sum c_k b_k`.
pub type ProductTerms = Vec<(usize, FieldElem)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Columns of `canonical` are e1, e2, u1, u2, u3, v1, v2, v3 in algebra
    /// coordinates; their products reproduce the canonical table.
    Split {
        canonical: Matrix,
    },
    /// Anisotropic norm, with the stated reason.
    Division {
        reason: String,
    },
    Unclassified,
}

impl Classification {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::Split { .. } => "split",
            Classification::Division { .. } => "division",
            Classification::Unclassified => "unclassified",
        }
    }
}

#[derive(Clone)]
pub struct CayleyAlgebra {
    id: String,
    field: Field,
    table: Vec<ProductTerms>,
    norms: Vec<FieldElem>,
    polar: Matrix,
    unit: Vec<FieldElem>,
    class: Classification,
}

impl fmt::Debug for CayleyAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CayleyAlgebra")
            .field("id", &self.id)
            .field("field", &self.field)
            .field("class", &self.class.tag())
            .finish()
    }
}

impl CayleyAlgebra {
    /// Assembles an algebra without checking any algebra law; only shapes
    /// and field membership are validated. See [`CayleyAlgebra::validate`].
    pub fn from_raw_parts(
        id: impl Into<String>,
        field: Field,
        table: Vec<ProductTerms>,
        norms: Vec<FieldElem>,
        polar: Matrix,
        unit: Vec<FieldElem>,
        class: Classification,
    ) -> Result<AlgebraRef> {
        let bad = |m: &str| Err(Error::InvalidAlgebra(m.to_string()));
        if table.len() != DIM * DIM {
            return bad("structure constants must cover 64 basis pairs");
        }
        if norms.len() != DIM || unit.len() != DIM {
            return bad("basis norms and unit need 8 entries");
        }
        if polar.rows() != DIM || polar.cols() != DIM {
            return bad("polar matrix must be 8x8");
        }
        let in_field = |e: &FieldElem| e.field() == field;
        if !table.iter().flatten().all(|(k, c)| *k < DIM && in_field(c))
            || !norms.iter().all(in_field)
            || !unit.iter().all(in_field)
            || polar.field() != field
        {
            return bad("all data must lie in the algebra's field");
        }
        let table = table
            .into_iter()
            .map(|terms| normalize_terms(field, terms))
            .collect();
        Ok(Arc::new(CayleyAlgebra {
            id: id.into(),
            field,
            table,
            norms,
            polar,
            unit,
            class,
        }))
    }

    /// Builds an algebra and checks the identities that can be verified on
    /// basis elements: two-sided unit, symmetric polar matrix with diagonal
    /// `2 n_i`, nondegeneracy, the degree-2 equation and its linearization,
    /// and multiplicativity of the norm on basis pairs.
    pub fn from_parts(
        id: impl Into<String>,
        field: Field,
        table: Vec<ProductTerms>,
        norms: Vec<FieldElem>,
        polar: Matrix,
        unit: Vec<FieldElem>,
        class: Classification,
    ) -> Result<AlgebraRef> {
        let alg = Self::from_raw_parts(id, field, table, norms, polar, unit, class)?;
        alg.validate()?;
        Ok(alg)
    }

    pub fn validate(self: &AlgebraRef) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidAlgebra(m));
        let one = Octonion::one(self);
        let two = self.field.from_int(2);
        for i in 0..DIM {
            let b = Octonion::basis(self, i);
            if &one * &b != b || &b * &one != b {
                return fail(format!("unit is not a two-sided identity on b{i}"));
            }
            if self.polar[(i, i)] != &two * &self.norms[i] {
                return fail(format!("polar diagonal at {i} is not 2 n(b{i})"));
            }
            for j in 0..DIM {
                if self.polar[(i, j)] != self.polar[(j, i)] {
                    return fail(format!("polar matrix not symmetric at ({i},{j})"));
                }
            }
        }
        if self.polar.inverse().is_none() {
            return fail("polar form is degenerate".into());
        }
        for i in 0..DIM {
            let x = Octonion::basis(self, i);
            if !degree_two_holds(&x) {
                return fail(format!("b{i} violates the degree-2 equation"));
            }
            for j in 0..DIM {
                let y = Octonion::basis(self, j);
                if !linearized_identity_check(&x, &y)? {
                    return fail(format!("linearized identity fails on (b{i}, b{j})"));
                }
                if (&x * &y).norm() != x.norm() * y.norm() {
                    return fail(format!("norm not multiplicative on (b{i}, b{j})"));
                }
            }
        }
        Ok(())
    }

    /// Same data with a different classification tag.
    pub fn with_classification(&self, class: Classification) -> AlgebraRef {
        let mut a = self.clone();
        a.class = class;
        Arc::new(a)
    }

    pub fn id(&self) -> &str {
        &self.id
    }
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn basis_norms(&self) -> &[FieldElem] {
        &self.norms
    }
    pub fn polar_matrix(&self) -> &Matrix {
        &self.polar
    }
    pub fn unit_coords(&self) -> &[FieldElem] {
        &self.unit
    }
    pub fn classification(&self) -> &Classification {
        &self.class
    }
    pub fn is_split(&self) -> bool {
        matches!(self.class, Classification::Split { .. })
    }
    pub fn is_division(&self) -> bool {
        matches!(self.class, Classification::Division { .. })
    }

    pub fn product_terms(&self, i: usize, j: usize) -> &ProductTerms {
        &self.table[i * DIM + j]
    }

    /// Dense structure constant `c[i][j][k]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> FieldElem {
        self.product_terms(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(|| self.field.zero(), |(_, c)| c.clone())
    }

    /// Canonical basis (e1, e2, u1, u2, u3, v1, v2, v3) of a split-certified algebra.
    pub fn canonical_basis(self: &AlgebraRef) -> Result<Vec<Octonion>> {
        match &self.class {
            Classification::Split { canonical } => Ok((0..DIM)
                .map(|j| Octonion::from_coords_unchecked(self, canonical.column(j)))
                .collect()),
            _ => Err(Error::NotSplit),
        }
    }

    pub(crate) fn mul_coords(&self, x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem> {
        let mut z = vec![self.field.zero(); DIM];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let terms = &self.table[i * DIM + j];
                if terms.is_empty() {
                    continue;
                }
                let coef = xi * yj;
                for (k, c) in terms {
                    z[*k] += &coef * c;
                }
            }
        }
        z
    }

    pub(crate) fn norm_coords(&self, x: &[FieldElem]) -> FieldElem {
        let mut acc = self.field.zero();
        for i in 0..DIM {
            if x[i].is_zero() {
                continue;
            }
            if !self.norms[i].is_zero() {
                acc += &(&x[i] * &x[i]) * &self.norms[i];
            }
            for j in i + 1..DIM {
                let b = &self.polar[(i, j)];
                if !b.is_zero() && !x[j].is_zero() {
                    acc += &(&x[i] * &x[j]) * b;
                }
            }
        }
        acc
    }

    pub(crate) fn polar_coords(&self, x: &[FieldElem], y: &[FieldElem]) -> FieldElem {
        let mut acc = self.field.zero();
        for i in 0..DIM {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..DIM {
                let b = &self.polar[(i, j)];
                if !b.is_zero() && !y[j].is_zero() {
                    acc += &(&x[i] * b) * &y[j];
                }
            }
        }
        acc
    }

    /// Matrix of `y -> x y` (column j is `x b_j`).
    pub fn left_mul_matrix(&self, x: &Octonion) -> Matrix {
        let cols: Vec<Vec<FieldElem>> = (0..DIM)
            .map(|j| {
                let mut b = vec![self.field.zero(); DIM];
                b[j] = self.field.one();
                self.mul_coords(&x.c, &b)
            })
            .collect();
        Matrix::from_columns(self.field, DIM, &cols)
    }

    /// Matrix of `y -> y x`.
    pub fn right_mul_matrix(&self, x: &Octonion) -> Matrix {
        let cols: Vec<Vec<FieldElem>> = (0..DIM)
            .map(|j| {
                let mut b = vec![self.field.zero(); DIM];
                b[j] = self.field.one();
                self.mul_coords(&b, &x.c)
            })
            .collect();
        Matrix::from_columns(self.field, DIM, &cols)
    }
}

fn normalize_terms(field: Field, terms: ProductTerms) -> ProductTerms {
    let mut dense = vec![field.zero(); DIM];
    for (k, c) in terms {
        dense[k] += &c;
    }
    dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Recomputes the split/division certificate of a validated algebra.
pub fn classify(alg: &AlgebraRef) -> Result<AlgebraRef> {
    let class = match find_isotropic(alg)? {
        Isotropy::Anisotropic(reason) => Classification::Division { reason },
        Isotropy::Isotropic(_) => {
            canonical::certify_split(alg)?.unwrap_or(Classification::Unclassified)
        }
        Isotropy::Undetermined => Classification::Unclassified,
    };
    Ok(alg.with_classification(class))
}

/// Norm data implied by the multiplication table: the degree-2 equation
/// `x^2 - t(x) x + n(x) 1 = 0` on each basis element gives `t_i, n_i`, and its
/// linearization gives the off-diagonal polar values.
pub fn derive_norm_data(
    field: Field,
    table: &[ProductTerms],
    unit: &[FieldElem],
) -> Result<(Vec<FieldElem>, Matrix)> {
    let dense = |terms: &ProductTerms| {
        let mut v = vec![field.zero(); DIM];
        for (k, c) in terms {
            v[*k] += c;
        }
        v
    };
    let mut traces = Vec::with_capacity(DIM);
    let mut norms = Vec::with_capacity(DIM);
    for i in 0..DIM {
        let mut b = vec![field.zero(); DIM];
        b[i] = field.one();
        let sq = dense(&table[i * DIM + i]);
        // Solve sq = t b - n 1 for (t, n).
        let m = Matrix::from_columns(field, DIM, &[b.clone(), unit.iter().map(|u| -u).collect()]);
        if m.rank() == 2 {
            let sol = m
                .solve(&sq)
                .ok_or_else(|| Error::InvalidAlgebra(format!("b{i}^2 not in span(b{i}, 1)")))?;
            traces.push(sol[0].clone());
            norms.push(sol[1].clone());
        } else {
            // b_i = c * 1 with c the nonzero coordinate ratio.
            let c = unit
                .iter()
                .zip(&b)
                .find(|(u, _)| !u.is_zero())
                .map(|(u, bi)| bi / u)
                .ok_or_else(|| Error::InvalidAlgebra("zero unit".into()))?;
            traces.push(&field.from_int(2) * &c);
            norms.push(&c * &c);
        }
    }
    let mut polar = Matrix::zeros(field, DIM, DIM);
    for i in 0..DIM {
        polar[(i, i)] = &field.from_int(2) * &norms[i];
        for j in 0..DIM {
            if i == j {
                continue;
            }
            // n(b_i,b_j) 1 = t_i b_j + t_j b_i - b_i b_j - b_j b_i
            let mut v = dense(&table[i * DIM + j]);
            for (k, c) in &table[j * DIM + i] {
                v[*k] += c;
            }
            let mut rhs: Vec<FieldElem> = v.iter().map(|e| -e).collect();
            rhs[j] += &traces[i];
            rhs[i] += &traces[j];
            let lambda = scalar_multiple_of(&rhs, unit).ok_or_else(|| {
                Error::InvalidAlgebra(format!("linearized identity not scalar on (b{i}, b{j})"))
            })?;
            polar[(i, j)] = lambda;
        }
    }
    Ok((norms, polar))
}

/// `lambda` with `v = lambda * u`, if it exists.
fn scalar_multiple_of(v: &[FieldElem], u: &[FieldElem]) -> Option<FieldElem> {
    let (idx, pivot) = u.iter().enumerate().find(|(_, x)| !x.is_zero())?;
    let lambda = &v[idx] / pivot;
    v.iter()
        .zip(u)
        .all(|(a, b)| *a == &lambda * b)
        .then_some(lambda)
}

/// An element of a specific algebra, by coordinates in its basis.
#[derive(Clone)]
pub struct Octonion {
    alg: AlgebraRef,
    c: Vec<FieldElem>,
}

impl PartialEq for Octonion {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.c == other.c
    }
}
impl Eq for Octonion {}

impl std::hash::Hash for Octonion {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl fmt::Debug for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Octonion {
    pub fn from_coords(alg: &AlgebraRef, coords: Vec<FieldElem>) -> Result<Self> {
        if coords.len() != DIM || coords.iter().any(|c| c.field() != alg.field) {
            return Err(Error::InvalidAlgebra(format!(
                "octonion needs 8 coordinates in {}",
                alg.field
            )));
        }
        Ok(Self::from_coords_unchecked(alg, coords))
    }

    pub(crate) fn from_coords_unchecked(alg: &AlgebraRef, coords: Vec<FieldElem>) -> Self {
        debug_assert_eq!(coords.len(), DIM);
        Octonion {
            alg: alg.clone(),
            c: coords,
        }
    }

    /// Integer coordinates mapped into the field.
    pub fn from_ints(alg: &AlgebraRef, coords: [i64; DIM]) -> Self {
        let c = coords.iter().map(|&v| alg.field.from_int(v)).collect();
        Self::from_coords_unchecked(alg, c)
    }

    pub fn zero(alg: &AlgebraRef) -> Self {
        Self::from_coords_unchecked(alg, vec![alg.field.zero(); DIM])
    }

    pub fn one(alg: &AlgebraRef) -> Self {
        Self::from_coords_unchecked(alg, alg.unit.clone())
    }

    pub fn basis(alg: &AlgebraRef, i: usize) -> Self {
        let mut c = vec![alg.field.zero(); DIM];
        c[i] = alg.field.one();
        Self::from_coords_unchecked(alg, c)
    }

    pub fn scalar(alg: &AlgebraRef, s: &FieldElem) -> Self {
        Self::one(alg).scale(s)
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn coords(&self) -> &[FieldElem] {
        &self.c
    }

    pub fn into_coords(self) -> Vec<FieldElem> {
        self.c
    }

    pub fn field(&self) -> Field {
        self.alg.field
    }

    pub fn same_algebra(&self, other: &Octonion) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg)
    }

    fn check(&self, other: &Octonion) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|e| e.is_zero())
    }

    pub fn scale(&self, s: &FieldElem) -> Octonion {
        Self::from_coords_unchecked(&self.alg, self.c.iter().map(|e| e * s).collect())
    }

    pub fn try_mul(&self, other: &Octonion) -> Result<Octonion> {
        self.check(other)?;
        Ok(Self::from_coords_unchecked(
            &self.alg,
            self.alg.mul_coords(&self.c, &other.c),
        ))
    }

    pub fn try_add(&self, other: &Octonion) -> Result<Octonion> {
        self.check(other)?;
        Ok(Self::from_coords_unchecked(
            &self.alg,
            self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn norm(&self) -> FieldElem {
        self.alg.norm_coords(&self.c)
    }

    pub fn try_polar(&self, other: &Octonion) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.alg.polar_coords(&self.c, &other.c))
    }

    /// Polar form `n(x, y) = n(x+y) - n(x) - n(y)`; panics across algebras.
    pub fn polar(&self, other: &Octonion) -> FieldElem {
        self.try_polar(other)
            .expect("octonions from different algebras")
    }

    /// `t(x) = n(x, 1)`.
    pub fn trace(&self) -> FieldElem {
        self.alg.polar_coords(&self.c, &self.alg.unit)
    }

    /// `x -> n(x,1) 1 - x`.
    pub fn conj(&self) -> Octonion {
        &Octonion::scalar(&self.alg, &self.trace()) - self
    }

    /// `Some(lambda)` when `self = lambda * 1`.
    pub fn scalar_part(&self) -> Option<FieldElem> {
        scalar_multiple_of(&self.c, &self.alg.unit)
    }

    pub fn is_scalar(&self) -> bool {
        self.scalar_part().is_some()
    }
}

impl<'b> Add<&'b Octonion> for &Octonion {
    type Output = Octonion;
    fn add(self, rhs: &'b Octonion) -> Octonion {
        self.try_add(rhs)
            .expect("octonions from different algebras")
    }
}

impl<'b> Sub<&'b Octonion> for &Octonion {
    type Output = Octonion;
    fn sub(self, rhs: &'b Octonion) -> Octonion {
        assert!(self.same_algebra(rhs), "octonions from different algebras");
        Octonion::from_coords_unchecked(
            &self.alg,
            self.c.iter().zip(&rhs.c).map(|(a, b)| a - b).collect(),
        )
    }
}

/// Panics across algebras; [`Octonion::try_mul`] reports `AlgebraMismatch`.
impl<'b> Mul<&'b Octonion> for &Octonion {
    type Output = Octonion;
    fn mul(self, rhs: &'b Octonion) -> Octonion {
        self.try_mul(rhs)
            .expect("octonions from different algebras")
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion::from_coords_unchecked(&self.alg, self.c.iter().map(|e| -e).collect())
    }
}

macro_rules! forward_oct {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Octonion> for Octonion {
            type Output = Octonion;
            fn $m(self, rhs: Octonion) -> Octonion { (&self).$m(&rhs) }
        }
        impl<'b> $tr<&'b Octonion> for Octonion {
            type Output = Octonion;
            fn $m(self, rhs: &'b Octonion) -> Octonion { (&self).$m(rhs) }
        }
        impl $tr<Octonion> for &Octonion {
            type Output = Octonion;
            fn $m(self, rhs: Octonion) -> Octonion { self.$m(&rhs) }
        }
    )*};
}
forward_oct!(Add add, Sub sub, Mul mul);

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        -&self
    }
}

fn degree_two_holds(x: &Octonion) -> bool {
    let lhs = &(x * x) - &x.scale(&x.trace());
    let lhs = &lhs + &Octonion::scalar(x.algebra(), &x.norm());
    lhs.is_zero()
}

/// `xy + yx - n(x,1) y - n(y,1) x + n(x,y) 1 == 0`.
pub fn linearized_identity_check(x: &Octonion, y: &Octonion) -> Result<bool> {
    x.check(y)?;
    let alg = x.algebra();
    let mut v = &(x * y) + &(y * x);
    v = &v - &y.scale(&x.trace());
    v = &v - &x.scale(&y.trace());
    v = &v + &Octonion::scalar(alg, &x.polar(y));
    Ok(v.is_zero())
}

/// Every element of a finite-field algebra, in lexicographic index order.
pub fn enumerate_elements(alg: &AlgebraRef) -> Result<Vec<Octonion>> {
    let els = alg.field.elements()?;
    let q = els.len();
    let total = q
        .checked_pow(DIM as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| Error::TooLargeForExhaustive(format!("{}^8 elements", q)))?;
    Ok((0..total)
        .map(|mut idx| {
            let mut c = vec![alg.field.zero(); DIM];
            for slot in c.iter_mut().rev() {
                *slot = els[idx % q].clone();
                idx /= q;
            }
            Octonion::from_coords_unchecked(alg, c)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::gf(p).unwrap()
    }

    #[test]
    fn derived_norm_data_of_split_algebra() {
        let a = split_cayley(gf(5));
        let b = |i| Octonion::basis(&a, i);
        // u1^2 = 0 forces norm 0 and trace 0
        assert!(b(2).norm().is_zero());
        assert!(b(2).trace().is_zero());
        assert_eq!(b(2).polar(&b(5)), a.field().one());
        assert_eq!(b(0).polar(&b(1)), a.field().one());
    }

    #[test]
    fn conjugation_examples() {
        let a = split_cayley(gf(3));
        let one = Octonion::one(&a);
        assert_eq!(one.conj(), one);
        assert_eq!(Octonion::basis(&a, 0).conj(), Octonion::basis(&a, 1));
        assert_eq!(Octonion::basis(&a, 2).conj(), -Octonion::basis(&a, 2));
    }

    #[test]
    fn norm_polarization_identity() {
        let a = split_cayley(gf(7));
        let x = Octonion::from_ints(&a, [1, 2, 3, 4, 5, 6, 0, 1]);
        let y = Octonion::from_ints(&a, [3, 0, 1, 6, 2, 2, 5, 4]);
        assert_eq!((&x + &y).norm(), x.norm() + y.norm() + x.polar(&y));
        assert_eq!(x.polar(&y), y.polar(&x));
    }

    #[test]
    fn linearized_identity_examples() {
        let a = split_cayley(gf(2));
        let one = Octonion::one(&a);
        assert!(linearized_identity_check(&one, &one).unwrap());
        let (u1, v1) = (Octonion::basis(&a, 2), Octonion::basis(&a, 5));
        assert!(linearized_identity_check(&u1, &v1).unwrap());
        let other = split_cayley(gf(3));
        assert_eq!(
            linearized_identity_check(&u1, &Octonion::basis(&other, 0)),
            Err(Error::AlgebraMismatch)
        );
    }

    #[test]
    fn linearized_identity_on_all_gf2_pairs() {
        let a = split_cayley(gf(2));
        let els = enumerate_elements(&a).unwrap();
        assert_eq!(els.len(), 256);
        let mut n = 0;
        for x in &els {
            for y in &els {
                assert!(linearized_identity_check(x, y).unwrap());
                n += 1;
            }
        }
        assert_eq!(n, 65_536);
    }

    #[test]
    fn mismatched_algebras_rejected() {
        let a = split_cayley(gf(5));
        let b = split_cayley(gf(5));
        let x = Octonion::one(&a);
        let y = Octonion::one(&b);
        // distinct descriptors even over the same field
        assert_eq!(x.try_mul(&y), Err(Error::AlgebraMismatch));
    }

    #[test]
    fn scalar_part_detection() {
        let a = split_cayley(gf(5));
        let two = a.field().from_int(2);
        assert_eq!(Octonion::scalar(&a, &two).scalar_part(), Some(two));
        assert_eq!(Octonion::basis(&a, 0).scalar_part(), None);
    }

    #[test]
    fn raw_parts_shape_errors() {
        let f = gf(3);
        let r = CayleyAlgebra::from_raw_parts(
            "bad",
            f,
            vec![Vec::new(); 10],
            vec![f.zero(); DIM],
            Matrix::zeros(f, DIM, DIM),
            vec![f.zero(); DIM],
            Classification::Unclassified,
        );
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
    }
}
