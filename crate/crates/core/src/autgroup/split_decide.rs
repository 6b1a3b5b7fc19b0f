//! Deciding whether a local automorphism of a split algebra is an
//! automorphism, with a two-point certificate when it is not.

use super::{conjugating_automorphism, require_local, AutWitness};
use crate::cayley::{Octonion, BASIS_NAMES};
use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::linalg::Matrix;
use crate::quadform::{LinMap, Subspace};

/// Data of the normalization: the automorphisms applied, the matrix `A` of the
/// normalized map on `U = span(u1, u2, u3)`, `λ = det A`, and the action on `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitNormalForm {
    pub normalizers: Vec<LinMap>,
    pub a: Matrix,
    pub lambda: FieldElem,
    pub dual: Matrix,
}

/// A pair `(x, y)` on which no automorphism agrees with the candidate map:
/// `p q` lies in `span(1, x, y)` for `p, q ∈ {x, y}`, so an agreeing
/// automorphism would force `φ(p q) = φ(p) φ(q)`, which fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub x: Octonion,
    pub y: Octonion,
    pub left: Octonion,
    pub right: Octonion,
    pub product: Octonion,
    pub image_of_product: Octonion,
    pub product_of_images: Octonion,
}

impl Rejection {
    /// Searches the four ordered products of the pair for a contradiction.
    pub fn certify(phi: &LinMap, x: &Octonion, y: &Octonion) -> Option<Rejection> {
        let alg = phi.algebra();
        let span = Subspace::span(alg, &[Octonion::one(alg), x.clone(), y.clone()]).ok()?;
        for (p, q) in [(x, x), (x, y), (y, x), (y, y)] {
            let pq = p * q;
            if !span.contains(&pq) {
                continue;
            }
            let lhs = phi.apply(&pq);
            let rhs = &phi.apply(p) * &phi.apply(q);
            if lhs != rhs {
                return Some(Rejection {
                    x: x.clone(),
                    y: y.clone(),
                    left: p.clone(),
                    right: q.clone(),
                    product: pq,
                    image_of_product: lhs,
                    product_of_images: rhs,
                });
            }
        }
        None
    }

    /// Re-checks the recorded contradiction against `phi`.
    pub fn verify(&self, phi: &LinMap) -> bool {
        let alg = phi.algebra();
        let Ok(span) = Subspace::span(alg, &[Octonion::one(alg), self.x.clone(), self.y.clone()])
        else {
            return false;
        };
        let on_pair = [&self.x, &self.y];
        on_pair.contains(&&self.left)
            && on_pair.contains(&&self.right)
            && &self.left * &self.right == self.product
            && span.contains(&self.product)
            && phi.apply(&self.product) == self.image_of_product
            && &phi.apply(&self.left) * &phi.apply(&self.right) == self.product_of_images
            && self.image_of_product != self.product_of_images
    }

    pub fn transcript(&self) -> Vec<String> {
        vec![
            format!("x = {}", self.x),
            format!("y = {}", self.y),
            format!("p q = {} lies in span(1, x, y)", self.product),
            format!("phi(p q) = {}", self.image_of_product),
            format!("phi(p) phi(q) = {}", self.product_of_images),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoLocalVerdict {
    Automorphism {
        certificate: AutWitness,
        normal_form: SplitNormalForm,
    },
    Rejected {
        rejection: Rejection,
        explanation: String,
        normal_form: Option<SplitNormalForm>,
    },
}

impl TwoLocalVerdict {
    pub fn is_automorphism(&self) -> bool {
        matches!(self, TwoLocalVerdict::Automorphism { .. })
    }
    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            TwoLocalVerdict::Rejected { rejection, .. } => Some(rejection),
            _ => None,
        }
    }
}

fn block(
    f: crate::exactfield::Field,
    coords: &[Vec<FieldElem>],
    rows: std::ops::Range<usize>,
) -> Matrix {
    let mut m = Matrix::zeros(f, 3, 3);
    for (c, col) in coords.iter().enumerate() {
        for (r, idx) in rows.clone().enumerate() {
            m[(r, c)] = col[idx].clone();
        }
    }
    m
}

/// Normalizes `phi` by automorphisms until it fixes `e1`, `e2` and acts as
/// `A` on `U`. With `det A = 1` the map is an automorphism. Otherwise a
/// determinant-one correction leaves `u3 -> λ u3, v3 -> λ^-1 v3`, and the pair
/// `(v1 - u1, u3 + v2)` certifies the failure. If the normalized map moves `U`
/// or `V`, a pair `(e1, b)` with `b` a basis vector of that component does.
pub fn split_two_local_decide(phi: &LinMap) -> Result<TwoLocalVerdict> {
    let alg = phi.algebra();
    let f = alg.field();
    let b = alg.canonical_basis().map_err(|_| Error::NotSplit)?;
    require_local(phi)?;
    let (e1, e2) = (&b[0], &b[1]);
    let psi = conjugating_automorphism(e1, &phi.apply(e1))?.into_map();
    let psi_inv = psi
        .inverse()
        .ok_or_else(|| Error::Internal("automorphism not invertible".into()))?;
    let phi1 = psi_inv.compose(phi);
    if phi1.apply(e1) != *e1 || phi1.apply(e2) != *e2 {
        return Err(Error::Internal("normalized map moves e1 or e2".into()));
    }
    let cols: Vec<Vec<FieldElem>> = b.iter().map(|x| x.coords().to_vec()).collect();
    let c = Matrix::from_columns(f, 8, &cols);
    let c_inv = c
        .inverse()
        .ok_or_else(|| Error::Internal("canonical basis singular".into()))?;
    let canon = |x: &Octonion| c_inv.mul_vec(x.coords());

    let images: Vec<Vec<FieldElem>> = b.iter().map(|x| canon(&phi1.apply(x))).collect();
    for (k, img) in images.iter().enumerate().skip(2) {
        let inside = if k < 5 { 2..5 } else { 5..8 };
        let moved = (0..8).any(|i| !inside.contains(&i) && !img[i].is_zero());
        if moved {
            let rejection = Rejection::certify(phi, e1, &b[k]).ok_or_else(|| {
                Error::Internal(format!("no contradiction on (e1, {})", BASIS_NAMES[k]))
            })?;
            let part = if k < 5 { "U" } else { "V" };
            return Ok(TwoLocalVerdict::Rejected {
                rejection,
                explanation: format!(
                    "after matching e1 the map sends {} outside {part}",
                    BASIS_NAMES[k]
                ),
                normal_form: None,
            });
        }
    }
    let a = block(f, &images[2..5], 2..5);
    let dual = block(f, &images[5..8], 5..8);
    let lambda = a.determinant();
    let a_inv_t = a
        .inverse()
        .ok_or_else(|| Error::Internal("singular action on U".into()))?
        .transpose();
    if dual != a_inv_t {
        return Err(Error::Internal(
            "action on V is not the inverse transpose".into(),
        ));
    }
    if lambda.is_one() {
        let normal_form = SplitNormalForm {
            normalizers: vec![psi],
            a,
            lambda,
            dual,
        };
        let certificate = AutWitness::verified(phi.clone(), Vec::new())?;
        return Ok(TwoLocalVerdict::Automorphism {
            certificate,
            normal_form,
        });
    }
    // A-bar = A diag(1, 1, λ^-1) has determinant one
    let mut abar = a.clone();
    let li = lambda.inv()?;
    for r in 0..3 {
        abar[(r, 2)] = &abar[(r, 2)] * &li;
    }
    let abar_dual = abar
        .inverse()
        .ok_or_else(|| Error::Internal("singular correction".into()))?
        .transpose();
    let mut imgs = vec![e1.clone(), e2.clone()];
    for (m, range) in [(&abar, 2..5), (&abar_dual, 5..8)] {
        for col in 0..3 {
            let mut v = Octonion::zero(alg);
            for (r, idx) in range.clone().enumerate() {
                v = &v + &b[idx].scale(&m[(r, col)]);
            }
            imgs.push(v);
        }
    }
    let psi2 = LinMap::from_basis_images(&b, &imgs)?;
    if !psi2.is_automorphism() {
        return Err(Error::Internal(
            "determinant-one correction is not an automorphism".into(),
        ));
    }
    let phi2 = psi2.inverse().expect("automorphism").compose(&phi1);
    for (k, bk) in b.iter().enumerate() {
        let expected = match k {
            4 => bk.scale(&lambda),
            7 => bk.scale(&li),
            _ => bk.clone(),
        };
        if phi2.apply(bk) != expected {
            return Err(Error::Internal(format!(
                "normal form wrong at {}",
                BASIS_NAMES[k]
            )));
        }
    }
    let x = &b[5] - &b[2];
    let y = &b[4] + &b[6];
    if &x * &y != y {
        return Err(Error::Internal(
            "(v1 - u1)(u3 + v2) should equal u3 + v2".into(),
        ));
    }
    let rejection = Rejection::certify(phi, &x, &y)
        .ok_or_else(|| Error::Internal("no contradiction on (v1 - u1, u3 + v2)".into()))?;
    Ok(TwoLocalVerdict::Rejected {
        rejection,
        explanation: format!(
            "normal form scales u3 by {lambda} and v3 by its inverse; x y = y but phi(x) phi(y) != phi(y)"
        ),
        normal_form: Some(SplitNormalForm {
            normalizers: vec![psi, psi2],
            a,
            lambda,
            dual,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::random_automorphism;
    use crate::cayley::split_cayley;
    use crate::exactfield::Field;
    use crate::quadform::random_orthogonal_stab1;

    fn diag_u3_v3(p: u32, a: i64, b: i64) -> LinMap {
        let alg = split_cayley(Field::gf(p).unwrap());
        let f = alg.field();
        let mut m = Matrix::identity(f, 8);
        m[(4, 4)] = f.from_int(a);
        m[(7, 7)] = f.from_int(b);
        LinMap::new(&alg, m).unwrap()
    }

    #[test]
    fn scaling_u3_is_rejected_on_the_standard_pair() {
        let phi = diag_u3_v3(5, 2, 3);
        let v = split_two_local_decide(&phi).unwrap();
        let TwoLocalVerdict::Rejected {
            rejection,
            normal_form,
            ..
        } = &v
        else {
            panic!("expected rejection");
        };
        let alg = phi.algebra();
        let b = |i| Octonion::basis(alg, i);
        assert_eq!(rejection.x, &b(5) - &b(2));
        assert_eq!(rejection.y, &b(4) + &b(6));
        assert!(rejection.verify(&phi));
        assert_eq!(
            normal_form.as_ref().unwrap().lambda,
            alg.field().from_int(2)
        );
    }

    #[test]
    fn automorphisms_are_accepted() {
        for p in [2, 3, 5] {
            let a = split_cayley(Field::gf(p).unwrap());
            let m = random_automorphism(&a, 7, 2).unwrap();
            let v = split_two_local_decide(&m).unwrap();
            assert!(v.is_automorphism(), "gf({p})");
            let TwoLocalVerdict::Automorphism { normal_form, .. } = v else {
                unreachable!()
            };
            assert!(normal_form.lambda.is_one());
        }
    }

    #[test]
    fn verdict_matches_automorphism_check_on_stabilizer_samples() {
        for p in [2, 3] {
            let a = split_cayley(Field::gf(p).unwrap());
            for seed in 0..10 {
                let m = random_orthogonal_stab1(&a, seed, 3).unwrap();
                let v = split_two_local_decide(&m).unwrap();
                assert_eq!(
                    v.is_automorphism(),
                    m.is_automorphism(),
                    "gf({p}) seed {seed}"
                );
                if let Some(r) = v.rejection() {
                    assert!(r.verify(&m));
                }
            }
        }
    }

    #[test]
    fn non_local_maps_are_refused() {
        let phi = diag_u3_v3(5, 2, 1);
        assert!(matches!(
            split_two_local_decide(&phi),
            Err(Error::NotLocalAutomorphism(_))
        ));
    }
}
