use std::sync::Arc;

use super::{AlgebraRef, Octonion};
use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::linalg::{rank_of, Matrix};

/// A unital, regular composition subalgebra given by a basis.
#[derive(Clone, Debug)]
pub struct SubalgebraBasis {
    alg: AlgebraRef,
    basis: Vec<Octonion>,
}

impl PartialEq for SubalgebraBasis {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.basis == other.basis
    }
}
impl Eq for SubalgebraBasis {}

fn not_comp<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::NotCompositionSubalgebra(msg.into()))
}

impl SubalgebraBasis {
    /// Checks independence, dimension in {1, 2, 4, 8}, the unit, closure under
    /// products, and regularity of the restricted norm.
    pub fn new(basis: Vec<Octonion>) -> Result<Self> {
        let Some(first) = basis.first() else {
            return not_comp("empty basis");
        };
        let alg = first.algebra().clone();
        if basis.iter().any(|b| !Arc::ptr_eq(b.algebra(), &alg)) {
            return Err(Error::AlgebraMismatch);
        }
        let coords: Vec<Vec<FieldElem>> = basis.iter().map(|b| b.coords().to_vec()).collect();
        if rank_of(alg.field(), &coords) != basis.len() {
            return not_comp("basis is linearly dependent");
        }
        if ![1, 2, 4, 8].contains(&basis.len()) {
            return not_comp(format!("dimension {} is not 1, 2, 4 or 8", basis.len()));
        }
        let s = SubalgebraBasis { alg, basis };
        if !s.contains(&Octonion::one(&s.alg)) {
            return not_comp("unit not in span");
        }
        for x in &s.basis {
            for y in &s.basis {
                if !s.contains(&(x * y)) {
                    return not_comp("span not closed under multiplication");
                }
            }
        }
        if !restricted_form_is_regular(&s.basis) {
            return not_comp("restricted norm is singular");
        }
        Ok(s)
    }

    pub(crate) fn new_unchecked(alg: &AlgebraRef, basis: Vec<Octonion>) -> Self {
        SubalgebraBasis {
            alg: alg.clone(),
            basis,
        }
    }

    /// `F 1`.
    pub fn scalars(alg: &AlgebraRef) -> Self {
        Self::new_unchecked(alg, vec![Octonion::one(alg)])
    }

    /// `F 1 + F x`, required to be regular; for scalar `x` this is `F 1`.
    pub fn generated_by(x: &Octonion) -> Result<Self> {
        let alg = x.algebra();
        if x.is_scalar() {
            return Ok(Self::scalars(alg));
        }
        Self::new(vec![Octonion::one(alg), x.clone()])
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }
    pub fn basis(&self) -> &[Octonion] {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `x` in this basis, if `x` lies in the span.
    pub fn coords_of(&self, x: &Octonion) -> Option<Vec<FieldElem>> {
        let cols: Vec<Vec<FieldElem>> = self.basis.iter().map(|b| b.coords().to_vec()).collect();
        let m = Matrix::from_columns(self.alg.field(), super::DIM, &cols);
        m.solve(x.coords())
    }

    pub fn contains(&self, x: &Octonion) -> bool {
        self.coords_of(x).is_some()
    }

    pub fn is_orthogonal_to(&self, v: &Octonion) -> bool {
        self.basis.iter().all(|b| b.polar(v).is_zero())
    }

    /// Basis of the orthogonal complement in the whole algebra.
    pub fn orthogonal_complement(&self) -> Vec<Octonion> {
        let f = self.alg.field();
        let n = super::DIM;
        let rows: Vec<FieldElem> = self
            .basis
            .iter()
            .flat_map(|b| (0..n).map(move |i| b.polar(&Octonion::basis(b.algebra(), i))))
            .collect();
        Matrix::from_rows(f, self.basis.len(), n, rows)
            .nullspace()
            .into_iter()
            .map(|c| Octonion::from_coords_unchecked(&self.alg, c))
            .collect()
    }
}

/// Whether the norm restricted to the span of `vectors` is regular: the polar
/// radical is zero, or in characteristic 2 it is a line on which the norm is
/// nonzero.
pub fn restricted_form_is_regular(vectors: &[Octonion]) -> bool {
    let Some(first) = vectors.first() else {
        return true;
    };
    let f = first.field();
    let n = vectors.len();
    let mut g = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = vectors[i].polar(&vectors[j]);
        }
    }
    let rad = g.nullspace();
    match rad.len() {
        0 => true,
        1 if f.characteristic() == 2 => {
            let mut r = Octonion::zero(first.algebra());
            for (c, v) in rad[0].iter().zip(vectors) {
                r = &r + &v.scale(c);
            }
            !r.is_zero() && !r.norm().is_zero()
        }
        _ => false,
    }
}
