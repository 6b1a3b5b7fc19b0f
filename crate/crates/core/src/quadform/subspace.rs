use std::sync::Arc;

use crate::cayley::{AlgebraRef, Octonion, DIM};
use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::linalg::Matrix;

/// A subspace of the algebra, stored by its reduced row echelon basis so that
/// equal subspaces have equal bases.
#[derive(Clone, Debug)]
pub struct Subspace {
    alg: AlgebraRef,
    basis: Vec<Octonion>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.basis == other.basis
    }
}
impl Eq for Subspace {}

impl Subspace {
    pub fn span(alg: &AlgebraRef, vectors: &[Octonion]) -> Result<Self> {
        if vectors.iter().any(|v| !Arc::ptr_eq(v.algebra(), alg)) {
            return Err(Error::AlgebraMismatch);
        }
        let rows: Vec<Vec<FieldElem>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
        Ok(Self::from_rows(alg, &rows))
    }

    pub(crate) fn from_rows(alg: &AlgebraRef, rows: &[Vec<FieldElem>]) -> Self {
        let f = alg.field();
        if rows.is_empty() {
            return Subspace {
                alg: alg.clone(),
                basis: Vec::new(),
            };
        }
        let m = Matrix::from_rows(f, rows.len(), DIM, rows.iter().flatten().cloned().collect());
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len())
            .map(|i| Octonion::from_coords_unchecked(alg, r.row(i).to_vec()))
            .collect();
        Subspace {
            alg: alg.clone(),
            basis,
        }
    }

    pub fn zero(alg: &AlgebraRef) -> Self {
        Self::from_rows(alg, &[])
    }

    pub fn whole(alg: &AlgebraRef) -> Self {
        let rows: Vec<Vec<FieldElem>> = (0..DIM)
            .map(|i| Octonion::basis(alg, i).into_coords())
            .collect();
        Self::from_rows(alg, &rows)
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

    pub fn contains(&self, x: &Octonion) -> bool {
        if self.basis.is_empty() {
            return x.is_zero();
        }
        let mut rows: Vec<Vec<FieldElem>> =
            self.basis.iter().map(|b| b.coords().to_vec()).collect();
        rows.push(x.coords().to_vec());
        crate::linalg::rank_of(self.alg.field(), &rows) == self.basis.len()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let rows: Vec<Vec<FieldElem>> = self
            .basis
            .iter()
            .chain(&other.basis)
            .map(|b| b.coords().to_vec())
            .collect();
        Self::from_rows(&self.alg, &rows)
    }

    /// `{x : n(x, s) = 0 for all s}`.
    pub fn orthogonal_complement(&self) -> Subspace {
        let f = self.alg.field();
        if self.basis.is_empty() {
            return Self::whole(&self.alg);
        }
        let g = self.alg.polar_matrix();
        let rows: Vec<FieldElem> = self
            .basis
            .iter()
            .flat_map(|b| g.mul_vec(b.coords()))
            .collect();
        let ns = Matrix::from_rows(f, self.basis.len(), DIM, rows).nullspace();
        Self::from_rows(&self.alg, &ns)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // x in both iff x ⟂ (self^⊥ + other^⊥), the polar form being nondegenerate
        self.orthogonal_complement()
            .sum(&other.orthogonal_complement())
            .orthogonal_complement()
    }

    /// Polar form vanishes identically on the subspace.
    pub fn is_totally_isotropic(&self) -> bool {
        self.basis
            .iter()
            .all(|a| self.basis.iter().all(|b| a.polar(b).is_zero()))
    }

    /// Polar (Gram) matrix of the basis.
    pub fn gram(&self) -> Matrix {
        let n = self.basis.len();
        let mut g = Matrix::zeros(self.alg.field(), n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.basis[i].polar(&self.basis[j]);
            }
        }
        g
    }

    /// Regular restriction of the norm (see [`crate::cayley::restricted_form_is_regular`]).
    pub fn is_regular(&self) -> bool {
        crate::cayley::restricted_form_is_regular(&self.basis)
    }

    /// Coordinates of `x` in the echelon basis, if `x` lies in the subspace.
    pub fn coords_of(&self, x: &Octonion) -> Option<Vec<FieldElem>> {
        if self.basis.is_empty() {
            return x.is_zero().then(Vec::new);
        }
        let cols: Vec<Vec<FieldElem>> = self.basis.iter().map(|b| b.coords().to_vec()).collect();
        Matrix::from_columns(self.alg.field(), DIM, &cols).solve(x.coords())
    }
}
