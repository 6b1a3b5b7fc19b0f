//! Completing a nilpotent element to a canonical split basis.

use super::split::TABLE1;
use super::{find_isotropic_in, AlgebraRef, Classification, Isotropy, Octonion, DIM};
use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::linalg::{rank_of, Matrix};

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::CanonicalCompletionFailed(msg.into()))
}

/// Nonzero `z` with `z^2 = 0`, i.e. an isotropic vector of trace zero.
pub fn find_nilpotent(alg: &AlgebraRef) -> Result<Option<Octonion>> {
    let one = Octonion::one(alg);
    let row: Vec<FieldElem> = (0..DIM)
        .map(|i| one.polar(&Octonion::basis(alg, i)))
        .collect();
    let m = Matrix::from_rows(alg.field(), 1, DIM, row);
    let span: Vec<Octonion> = m
        .nullspace()
        .into_iter()
        .map(|c| Octonion::from_coords_unchecked(alg, c))
        .collect();
    Ok(match find_isotropic_in(alg, &span)? {
        Isotropy::Isotropic(z) => Some(z),
        _ => None,
    })
}

/// Extends a nonzero `z` with `z^2 = 0` to a basis (e1, e2, u1, u2, u3, v1, v2, v3)
/// with `u1 = z` whose products reproduce the canonical table.
pub fn complete_canonical_basis(z: &Octonion) -> Result<Vec<Octonion>> {
    let alg = z.algebra().clone();
    let f = alg.field();
    if z.is_zero() || !(z * z).is_zero() {
        return fail("seed must be a nonzero element with square zero");
    }
    let one = Octonion::one(&alg);
    let basis: Vec<Octonion> = (0..DIM).map(|i| Octonion::basis(&alg, i)).collect();
    // w with n(z, w) = 1 and t(w) = 0
    let rows: Vec<FieldElem> = basis
        .iter()
        .map(|b| z.polar(b))
        .chain(basis.iter().map(|b| one.polar(b)))
        .collect();
    let m = Matrix::from_rows(f, 2, DIM, rows);
    let Some(w) = m.solve(&[f.one(), f.zero()]) else {
        return fail("no partner with n(z, w) = 1 in the trace-zero space");
    };
    let w = Octonion::from_coords_unchecked(&alg, w);
    let v = &w - &z.scale(&w.norm());
    let e1 = -(z * &v);
    let e2 = -(&v * z);
    // U ∩ v^⊥: e1 x = x, x e2 = x, n(v, x) = 0
    let l = alg.left_mul_matrix(&e1);
    let r = alg.right_mul_matrix(&e2);
    let mut data = Vec::with_capacity(17 * DIM);
    for i in 0..DIM {
        for j in 0..DIM {
            let d = if i == j { f.one() } else { f.zero() };
            data.push(&l[(i, j)] - &d);
        }
    }
    for i in 0..DIM {
        for j in 0..DIM {
            let d = if i == j { f.one() } else { f.zero() };
            data.push(&r[(i, j)] - &d);
        }
    }
    data.extend(basis.iter().map(|b| v.polar(b)));
    let k2 = Matrix::from_rows(f, 2 * DIM + 1, DIM, data).nullspace();
    if k2.len() != 2 {
        return fail(format!(
            "complement of the seed in U has dimension {}",
            k2.len()
        ));
    }
    let u2 = Octonion::from_coords_unchecked(&alg, k2[0].clone());
    let u3p = Octonion::from_coords_unchecked(&alg, k2[1].clone());
    let p = &u2 * &u3p;
    let Some(c) = scalar_ratio(&p, &v) else {
        return fail("u2 u3' is not a multiple of v1");
    };
    if c.is_zero() {
        return fail("u2 u3' vanishes");
    }
    let u3 = u3p.scale(&c.inv()?);
    let v2 = &u3 * z;
    let v3 = z * &u2;
    let out = vec![e1, e2, z.clone(), u2, u3, v, v2, v3];
    verify_canonical_basis(&out)?;
    Ok(out)
}

/// `c` with `x = c y`, if any.
fn scalar_ratio(x: &Octonion, y: &Octonion) -> Option<FieldElem> {
    let (i, pivot) = y.coords().iter().enumerate().find(|(_, e)| !e.is_zero())?;
    let c = &x.coords()[i] / pivot;
    (*x == y.scale(&c)).then_some(c)
}

/// Checks that eight elements are independent and multiply as the canonical
/// split basis does, on all 64 ordered pairs.
pub fn verify_canonical_basis(b: &[Octonion]) -> Result<()> {
    if b.len() != DIM {
        return fail(format!("expected 8 elements, got {}", b.len()));
    }
    let alg = b[0].algebra();
    if b.iter().any(|x| !x.same_algebra(&b[0])) {
        return Err(Error::AlgebraMismatch);
    }
    let coords: Vec<Vec<FieldElem>> = b.iter().map(|x| x.coords().to_vec()).collect();
    if rank_of(alg.field(), &coords) != DIM {
        return fail("elements are linearly dependent");
    }
    for i in 0..DIM {
        for j in 0..DIM {
            let expected = TABLE1.iter().find(|t| t.0 == i && t.1 == j).map_or_else(
                || Octonion::zero(alg),
                |t| b[t.2].scale(&alg.field().from_int(t.3 as i64)),
            );
            if &b[i] * &b[j] != expected {
                return fail(format!("product of positions {i} and {j} disagrees"));
            }
        }
    }
    Ok(())
}

/// Split certificate for an algebra: a nilpotent element completed to a
/// canonical basis. `None` when no nilpotent element was found.
pub(crate) fn certify_split(alg: &AlgebraRef) -> Result<Option<Classification>> {
    let Some(z) = find_nilpotent(alg)? else {
        return Ok(None);
    };
    let b = complete_canonical_basis(&z)?;
    let cols: Vec<Vec<FieldElem>> = b.into_iter().map(Octonion::into_coords).collect();
    Ok(Some(Classification::Split {
        canonical: Matrix::from_columns(alg.field(), DIM, &cols),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::split_cayley;
    use crate::exactfield::Field;

    #[test]
    fn completion_from_u1_recovers_a_canonical_basis() {
        for f in [
            Field::gf(2).unwrap(),
            Field::gf(5).unwrap(),
            Field::rationals(),
        ] {
            let a = split_cayley(f);
            let b = complete_canonical_basis(&Octonion::basis(&a, 2)).unwrap();
            assert_eq!(b[2], Octonion::basis(&a, 2));
        }
    }

    #[test]
    fn completion_from_mixed_nilpotent() {
        let a = split_cayley(Field::gf(7).unwrap());
        // z = u1 + v2 : n = 0 (u1 ⊥ v2), trace 0
        let z = Octonion::from_ints(&a, [0, 0, 1, 0, 0, 0, 1, 0]);
        assert!((&z * &z).is_zero());
        let b = complete_canonical_basis(&z).unwrap();
        verify_canonical_basis(&b).unwrap();
    }

    #[test]
    fn non_nilpotent_seed_rejected() {
        let a = split_cayley(Field::gf(3).unwrap());
        assert!(matches!(
            complete_canonical_basis(&Octonion::basis(&a, 0)),
            Err(Error::CanonicalCompletionFailed(_))
        ));
    }

    #[test]
    fn permuted_basis_fails_verification() {
        let a = split_cayley(Field::gf(3).unwrap());
        let mut b: Vec<Octonion> = (0..DIM).map(|i| Octonion::basis(&a, i)).collect();
        verify_canonical_basis(&b).unwrap();
        b.swap(3, 4);
        assert!(verify_canonical_basis(&b).is_err());
    }
}
