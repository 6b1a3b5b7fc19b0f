use super::{AlgebraRef, Octonion};
use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::linalg::Matrix;

/// Outcome of an isotropic-vector search on a subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isotropy {
    Isotropic(Octonion),
    /// No nonzero isotropic vector exists, with the certificate used.
    Anisotropic(String),
    /// Bounded search found nothing and no certificate applies.
    Undetermined,
}

const RATIONAL_SEARCH: i64 = 6;

/// Isotropic vector of the whole algebra.
pub fn find_isotropic(alg: &AlgebraRef) -> Result<Isotropy> {
    let all: Vec<Octonion> = (0..super::DIM).map(|i| Octonion::basis(alg, i)).collect();
    find_isotropic_in(alg, &all)
}

/// Nonzero `x` in the span of `vectors` with `n(x) = 0`.
///
/// Over finite fields any form of dimension >= 3 is isotropic and the search
/// is exhaustive on the first three independent vectors. Over Q a definite
/// Gram matrix certifies anisotropy; otherwise a bounded search is run.
pub fn find_isotropic_in(alg: &AlgebraRef, vectors: &[Octonion]) -> Result<Isotropy> {
    if vectors
        .iter()
        .any(|v| !std::sync::Arc::ptr_eq(v.algebra(), alg))
    {
        return Err(Error::AlgebraMismatch);
    }
    let field = alg.field();
    let basis = independent(vectors);
    if basis.is_empty() {
        return Ok(Isotropy::Anisotropic("zero subspace".into()));
    }
    if let Some(v) = basis.iter().find(|v| v.norm().is_zero()) {
        return Ok(Isotropy::Isotropic(v.clone()));
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if let Some(x) = root_on_line(&basis[i], &basis[j]) {
                return Ok(Isotropy::Isotropic(x));
            }
        }
    }
    if field.is_finite() {
        if basis.len() >= 3 {
            for s in field.elements()? {
                let a = &basis[0] + &basis[1].scale(&s);
                if let Some(x) = root_on_line(&a, &basis[2]) {
                    return Ok(Isotropy::Isotropic(x));
                }
            }
            return Err(Error::Internal(
                "ternary form over a finite field without isotropic vector".into(),
            ));
        }
        return Ok(Isotropy::Anisotropic(format!(
            "exhaustive search on a {}-dimensional subspace",
            basis.len()
        )));
    }
    if let Some(sign) = definite_sign(&basis) {
        return Ok(Isotropy::Anisotropic(format!("{sign}-definite over ℚ")));
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            for k in j + 1..basis.len() {
                for s in -RATIONAL_SEARCH..=RATIONAL_SEARCH {
                    let a = &basis[i] + &basis[j].scale(&field.from_int(s));
                    if let Some(x) = root_on_line(&a, &basis[k]) {
                        return Ok(Isotropy::Isotropic(x));
                    }
                }
            }
        }
    }
    Ok(Isotropy::Undetermined)
}

/// `a + t b` with `n(a + t b) = 0`, or `b` itself when isotropic.
fn root_on_line(a: &Octonion, b: &Octonion) -> Option<Octonion> {
    let f = a.field();
    let roots = f.quadratic_roots(&b.norm(), &a.polar(b), &a.norm());
    let x = roots
        .into_iter()
        .map(|t| a + &b.scale(&t))
        .find(|x| !x.is_zero());
    x.or_else(|| b.norm().is_zero().then(|| b.clone()))
}

pub(crate) fn independent(vectors: &[Octonion]) -> Vec<Octonion> {
    let mut out: Vec<Octonion> = Vec::new();
    for v in vectors {
        let mut rows: Vec<Vec<FieldElem>> = out.iter().map(|o| o.coords().to_vec()).collect();
        rows.push(v.coords().to_vec());
        if crate::linalg::rank_of(v.field(), &rows) == rows.len() {
            out.push(v.clone());
        }
    }
    out
}

/// "positive" or "negative" when the Gram matrix over Q is definite.
fn definite_sign(basis: &[Octonion]) -> Option<&'static str> {
    let f = basis[0].field();
    let n = basis.len();
    let mut g = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = basis[i].polar(&basis[j]);
        }
    }
    let minors: Vec<FieldElem> = (1..=n)
        .map(|k| {
            let idx: Vec<usize> = (0..k).collect();
            g.submatrix(&idx, &idx).determinant()
        })
        .collect();
    if minors.iter().all(|m| m.is_positive()) {
        return Some("positive");
    }
    let alternating = minors.iter().enumerate().all(|(k, m)| {
        if k % 2 == 0 {
            (-m).is_positive()
        } else {
            m.is_positive()
        }
    });
    alternating.then_some("negative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build_by_doubling, split_cayley, DoublingParams};
    use crate::exactfield::Field;

    #[test]
    fn split_algebra_has_isotropic_basis_vector() {
        let a = split_cayley(Field::gf(5).unwrap());
        match find_isotropic(&a).unwrap() {
            Isotropy::Isotropic(x) => assert!(x.norm().is_zero() && !x.is_zero()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn definite_rational_algebra_is_anisotropic() {
        let q = Field::rationals();
        let m = q.from_int(-1);
        let a = build_by_doubling(
            q,
            DoublingParams::Standard {
                mu: [m.clone(), m.clone(), m],
            },
        )
        .unwrap();
        assert!(matches!(
            find_isotropic(&a).unwrap(),
            Isotropy::Anisotropic(_)
        ));
    }

    #[test]
    fn anisotropic_plane_over_gf3() {
        // span(1) in any algebra: n(t 1) = t^2 has no nonzero root
        let a = split_cayley(Field::gf(3).unwrap());
        let one = Octonion::one(&a);
        assert!(matches!(
            find_isotropic_in(&a, &[one]).unwrap(),
            Isotropy::Anisotropic(_)
        ));
    }
}
