use super::{derive_norm_data, AlgebraRef, CayleyAlgebra, Classification, ProductTerms, DIM};
use crate::exactfield::Field;
use crate::linalg::Matrix;

pub const BASIS_NAMES: [&str; DIM] = ["e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3"];

const E1: usize = 0;
const E2: usize = 1;
const U1: usize = 2;
const U2: usize = 3;
const U3: usize = 4;
const V1: usize = 5;
const V2: usize = 6;
const V3: usize = 7;

/// Nonzero products of the canonical split basis as (row, column, result, sign):
/// `b_row * b_col = sign * b_result`.
pub const TABLE1: [(usize, usize, usize, i8); 32] = [
    (E1, E1, E1, 1),
    (E1, U1, U1, 1),
    (E1, U2, U2, 1),
    (E1, U3, U3, 1),
    (E2, E2, E2, 1),
    (E2, V1, V1, 1),
    (E2, V2, V2, 1),
    (E2, V3, V3, 1),
    (U1, E2, U1, 1),
    (U1, U2, V3, 1),
    (U1, U3, V2, -1),
    (U1, V1, E1, -1),
    (U2, E2, U2, 1),
    (U2, U1, V3, -1),
    (U2, U3, V1, 1),
    (U2, V2, E1, -1),
    (U3, E2, U3, 1),
    (U3, U1, V2, 1),
    (U3, U2, V1, -1),
    (U3, V3, E1, -1),
    (V1, E1, V1, 1),
    (V1, U1, E2, -1),
    (V1, V2, U3, 1),
    (V1, V3, U2, -1),
    (V2, E1, V2, 1),
    (V2, U2, E2, -1),
    (V2, V1, U3, -1),
    (V2, V3, U1, 1),
    (V3, E1, V3, 1),
    (V3, U3, E2, -1),
    (V3, V1, U2, 1),
    (V3, V2, U1, -1),
];

pub(crate) fn table1_terms(field: Field) -> Vec<ProductTerms> {
    let mut table = vec![Vec::new(); DIM * DIM];
    for &(i, j, k, s) in TABLE1.iter() {
        table[i * DIM + j].push((k, field.from_int(s as i64)));
    }
    table
}

/// The split Cayley algebra over `field` in the canonical basis.
///
/// Every call returns a fresh descriptor; octonions from two calls do not mix.
pub fn split_cayley(field: Field) -> AlgebraRef {
    let table = table1_terms(field);
    let mut unit = vec![field.zero(); DIM];
    unit[E1] = field.one();
    unit[E2] = field.one();
    let (norms, polar) =
        derive_norm_data(field, &table, &unit).expect("canonical table is consistent");
    CayleyAlgebra::from_raw_parts(
        format!("split/{field}"),
        field,
        table,
        norms,
        polar,
        unit,
        Classification::Split {
            canonical: Matrix::identity(field, DIM),
        },
    )
    .expect("canonical table has valid shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::Octonion;

    #[test]
    fn split_algebras_validate_over_many_fields() {
        for f in [
            Field::gf(2).unwrap(),
            Field::gf(3).unwrap(),
            Field::gf(5).unwrap(),
            Field::gf(97).unwrap(),
            Field::gf_ext(2, 2).unwrap(),
            Field::gf_ext(3, 2).unwrap(),
            Field::rationals(),
        ] {
            let a = split_cayley(f);
            a.validate().unwrap();
            assert!(a.is_split());
        }
    }

    #[test]
    fn norm_matrix_is_hyperbolic() {
        let f = Field::rationals();
        let a = split_cayley(f);
        let p = a.polar_matrix();
        for (i, j) in [(0, 1), (2, 5), (3, 6), (4, 7)] {
            assert_eq!(p[(i, j)], f.one());
            assert_eq!(p[(j, i)], f.one());
        }
        let ones = p.entries().iter().filter(|e| !e.is_zero()).count();
        assert_eq!(ones, 8);
        assert!(a.basis_norms().iter().all(|n| n.is_zero()));
    }

    #[test]
    fn selected_products() {
        let a = split_cayley(Field::gf(7).unwrap());
        let b = |i| Octonion::basis(&a, i);
        assert_eq!(&b(U1) * &b(U2), b(V3));
        assert_eq!(&b(U2) * &b(U1), -b(V3));
        assert_eq!(&b(U1) * &b(V1), -b(E1));
        assert_eq!(&b(V1) * &b(U1), -b(E2));
        assert_eq!(&b(V2) * &b(V3), b(U1));
        assert!((&b(E1) * &b(E2)).is_zero());
        assert!((&b(U1) * &b(E1)).is_zero());
    }

    #[test]
    fn table_rows_have_four_entries() {
        for r in 0..DIM {
            assert_eq!(TABLE1.iter().filter(|t| t.0 == r).count(), 4);
        }
    }
}
