use super::{Octonion, SubalgebraBasis, DIM};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quadform::Subspace;

/// `C = K ⊕ U ⊕ V` for a proper idempotent `e`, with `K = F e + F (1 - e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeirceDecomposition {
    pub k: SubalgebraBasis,
    pub u: Subspace,
    pub v: Subspace,
}

/// Peirce components of `e` with `e^2 = e`, `t(e) = 1`, `n(e) = 0`:
/// `U = {x : e x = x = x (1-e)}` and `V = {x : (1-e) x = x = x e}`.
pub fn peirce_components(e: &Octonion) -> Result<PeirceDecomposition> {
    let alg = e.algebra();
    let f = alg.field();
    if &(e * e) != e || !e.trace().is_one() || !e.norm().is_zero() {
        return Err(Error::NotProperIdempotent(format!(
            "need e^2 = e, t(e) = 1, n(e) = 0 (got t = {}, n = {})",
            e.trace(),
            e.norm()
        )));
    }
    let e2 = &Octonion::one(alg) - e;
    let fixed_both = |left: &Octonion, right: &Octonion| {
        let l = alg.left_mul_matrix(left);
        let r = alg.right_mul_matrix(right);
        let mut data = Vec::with_capacity(2 * DIM * DIM);
        for m in [&l, &r] {
            for i in 0..DIM {
                for j in 0..DIM {
                    let d = if i == j { f.one() } else { f.zero() };
                    data.push(&m[(i, j)] - &d);
                }
            }
        }
        let ns = Matrix::from_rows(f, 2 * DIM, DIM, data).nullspace();
        Subspace::from_rows(alg, &ns)
    };
    let u = fixed_both(e, &e2);
    let v = fixed_both(&e2, e);
    if u.dim() != 3 || v.dim() != 3 {
        return Err(Error::Internal(format!(
            "Peirce components of dimensions {} and {}",
            u.dim(),
            v.dim()
        )));
    }
    let k = SubalgebraBasis::new_unchecked(alg, vec![e.clone(), e2]);
    Ok(PeirceDecomposition { k, u, v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::split_cayley;
    use crate::exactfield::Field;

    #[test]
    fn components_of_e1_and_e2() {
        let a = split_cayley(Field::gf(5).unwrap());
        let b = |i| Octonion::basis(&a, i);
        let d = peirce_components(&b(0)).unwrap();
        assert_eq!(d.u, Subspace::span(&a, &[b(2), b(3), b(4)]).unwrap());
        assert_eq!(d.v, Subspace::span(&a, &[b(5), b(6), b(7)]).unwrap());
        let d2 = peirce_components(&b(1)).unwrap();
        assert_eq!(d2.u, d.v);
        assert_eq!(d2.v, d.u);
    }

    #[test]
    fn unit_is_not_proper() {
        for p in [2, 3] {
            let a = split_cayley(Field::gf(p).unwrap());
            assert!(matches!(
                peirce_components(&Octonion::one(&a)),
                Err(Error::NotProperIdempotent(_))
            ));
        }
    }

    #[test]
    fn grading_rules_on_basis_products() {
        let a = split_cayley(Field::rationals());
        let d = peirce_components(&Octonion::basis(&a, 0)).unwrap();
        let k = Subspace::span(&a, d.k.basis()).unwrap();
        let parts = [&k, &d.u, &d.v];
        // K·K ⊆ K, K·U ⊆ U, K·V ⊆ V, U·U ⊆ V, V·V ⊆ U, U·V ⊆ K ...
        let target = |i: usize, j: usize| match (i, j) {
            (0, x) | (x, 0) => x,
            (1, 1) => 2,
            (2, 2) => 1,
            _ => 0,
        };
        for i in 0..3 {
            for j in 0..3 {
                let t = parts[target(i, j)];
                for x in parts[i].basis() {
                    for y in parts[j].basis() {
                        assert!(t.contains(&(x * y)), "part {i} times part {j}");
                    }
                }
            }
        }
    }
}
