//! Breadth-first enumeration of the group generated by invertible maps.

use std::collections::HashSet;
use std::sync::Arc;

use crate::cayley::{AlgebraRef, DIM};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quadform::LinMap;

/// 8x8 matrices over GF(2) packed into a `u64`, bit `8 r + c` holding entry
/// `(r, c)`. Vectors are bytes with bit `i` the `i`-th coordinate.
pub mod packed_gf2 {
    use super::*;
    use crate::cayley::Octonion;

    pub fn pack(m: &Matrix) -> u64 {
        let mut w = 0u64;
        for r in 0..DIM {
            for c in 0..DIM {
                if m[(r, c)].is_one() {
                    w |= 1 << (8 * r + c);
                }
            }
        }
        w
    }

    pub fn unpack(alg: &AlgebraRef, w: u64) -> LinMap {
        let f = alg.field();
        let mut m = Matrix::zeros(f, DIM, DIM);
        for r in 0..DIM {
            for c in 0..DIM {
                if w >> (8 * r + c) & 1 == 1 {
                    m[(r, c)] = f.one();
                }
            }
        }
        LinMap::new(alg, m).expect("8x8 over the algebra's field")
    }

    fn row(w: u64, r: usize) -> u8 {
        (w >> (8 * r)) as u8
    }

    /// `a b`.
    pub fn mul(a: u64, b: u64) -> u64 {
        let mut out = 0u64;
        for r in 0..DIM {
            let ar = row(a, r);
            let mut acc = 0u8;
            for k in 0..DIM {
                if ar >> k & 1 == 1 {
                    acc ^= row(b, k);
                }
            }
            out |= (acc as u64) << (8 * r);
        }
        out
    }

    pub fn apply(m: u64, x: u8) -> u8 {
        let mut out = 0u8;
        for r in 0..DIM {
            out |= (((row(m, r) & x).count_ones() & 1) as u8) << r;
        }
        out
    }

    pub fn pack_vector(x: &Octonion) -> u8 {
        x.coords()
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, c)| acc | ((c.is_one() as u8) << i))
    }

    pub fn is_invertible(m: u64) -> bool {
        let mut rows: Vec<u8> = (0..DIM).map(|r| row(m, r)).collect();
        for col in 0..DIM {
            let Some(p) = (col..DIM).find(|&r| rows[r] >> col & 1 == 1) else {
                return false;
            };
            rows.swap(col, p);
            for r in 0..DIM {
                if r != col && rows[r] >> col & 1 == 1 {
                    rows[r] ^= rows[col];
                }
            }
        }
        true
    }

    /// Norm values of all 256 vectors of an algebra over GF(2).
    pub struct NormTable {
        norms: [bool; 256],
        unit: u8,
    }

    impl NormTable {
        pub fn new(alg: &AlgebraRef) -> Result<Self> {
            if alg.field().order() != Some(2) {
                return Err(Error::WrongField("packed tables need GF(2)".into()));
            }
            let mut norms = [false; 256];
            for (x, n) in norms.iter_mut().enumerate() {
                let coords = (0..DIM).map(|i| (x >> i & 1) as i64).collect::<Vec<_>>();
                let v = Octonion::from_ints(alg, coords.try_into().expect("8 coordinates"));
                *n = v.norm().is_one();
            }
            Ok(NormTable {
                norms,
                unit: pack_vector(&Octonion::one(alg)),
            })
        }

        pub fn norm(&self, x: u8) -> bool {
            self.norms[x as usize]
        }

        pub fn polar(&self, x: u8, y: u8) -> bool {
            self.norm(x ^ y) ^ self.norm(x) ^ self.norm(y)
        }

        /// Isometry check on basis images: norms and pairwise polar values.
        pub fn is_isometry(&self, m: u64) -> bool {
            let imgs: Vec<u8> = (0..DIM).map(|i| apply(m, 1 << i)).collect();
            for i in 0..DIM {
                if self.norm(imgs[i]) != self.norm(1 << i) {
                    return false;
                }
                for j in i + 1..DIM {
                    if self.polar(imgs[i], imgs[j]) != self.polar(1 << i, 1 << j) {
                        return false;
                    }
                }
            }
            is_invertible(m)
        }

        pub fn fixes_unit(&self, m: u64) -> bool {
            apply(m, self.unit) == self.unit
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupElements {
    Packed(Vec<u64>),
    Generic(Vec<Matrix>),
}

/// The enumerated group in breadth-first discovery order, identity first.
#[derive(Clone, Debug)]
pub struct GroupClosure {
    alg: AlgebraRef,
    elements: GroupElements,
}

impl GroupClosure {
    pub fn order(&self) -> usize {
        match &self.elements {
            GroupElements::Packed(v) => v.len(),
            GroupElements::Generic(v) => v.len(),
        }
    }

    pub fn elements(&self) -> &GroupElements {
        &self.elements
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    /// Element `i` as a map.
    pub fn map(&self, i: usize) -> LinMap {
        match &self.elements {
            GroupElements::Packed(v) => packed_gf2::unpack(&self.alg, v[i]),
            GroupElements::Generic(v) => LinMap::new(&self.alg, v[i].clone()).expect("8x8"),
        }
    }
}

/// Closes `generators` under multiplication, failing once more than `cap`
/// elements are found. Maps over GF(2) are packed into single words.
pub fn group_closure(generators: &[LinMap], cap: usize) -> Result<GroupClosure> {
    let alg = generators
        .first()
        .ok_or_else(|| Error::PreconditionViolated("no generators".into()))?
        .algebra()
        .clone();
    if generators.iter().any(|g| !Arc::ptr_eq(g.algebra(), &alg)) {
        return Err(Error::AlgebraMismatch);
    }
    let f = alg.field();
    if !f.is_finite() {
        return Err(Error::Unsupported("closure needs a finite field".into()));
    }
    if let Some(g) = generators.iter().find(|g| !g.is_invertible()) {
        return Err(Error::PreconditionViolated(format!(
            "generator is singular: {g:?}"
        )));
    }
    let elements = if f.order() == Some(2) {
        let gens: Vec<u64> = generators
            .iter()
            .map(|g| packed_gf2::pack(g.matrix()))
            .collect();
        GroupElements::Packed(bfs(
            packed_gf2::pack(&Matrix::identity(f, DIM)),
            &gens,
            cap,
            |a, b| packed_gf2::mul(*a, *b),
        )?)
    } else {
        let gens: Vec<Matrix> = generators.iter().map(|g| g.matrix().clone()).collect();
        GroupElements::Generic(bfs(Matrix::identity(f, DIM), &gens, cap, |a, b| a.mul(b))?)
    };
    Ok(GroupClosure { alg, elements })
}

fn bfs<T: Clone + Eq + std::hash::Hash>(
    identity: T,
    gens: &[T],
    cap: usize,
    mul: impl Fn(&T, &T) -> T,
) -> Result<Vec<T>> {
    let mut seen: HashSet<T> = HashSet::new();
    seen.insert(identity.clone());
    let mut order = vec![identity];
    let mut start = 0;
    while start < order.len() {
        let end = order.len();
        for i in start..end {
            for s in gens {
                let h = mul(s, &order[i]);
                if seen.insert(h.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    order.push(h);
                }
            }
        }
        start = end;
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{split_cayley, Octonion};
    use crate::exactfield::Field;
    use crate::quadform::reflection;

    #[test]
    fn identity_generates_trivial_group() {
        let a = split_cayley(Field::gf(3).unwrap());
        let c = group_closure(&[LinMap::identity(&a)], 10).unwrap();
        assert_eq!(c.order(), 1);
    }

    #[test]
    fn packed_arithmetic_agrees_with_generic() {
        let a = split_cayley(Field::gf(2).unwrap());
        let b = |i| Octonion::basis(&a, i);
        let r1 = reflection(&(&b(2) + &b(5))).unwrap();
        let r2 = reflection(&(&b(3) + &b(6) + &b(2))).unwrap();
        let prod = r1.compose(&r2);
        let (p1, p2) = (packed_gf2::pack(r1.matrix()), packed_gf2::pack(r2.matrix()));
        assert_eq!(packed_gf2::mul(p1, p2), packed_gf2::pack(prod.matrix()));
        assert_eq!(packed_gf2::unpack(&a, p1), r1);
        let x = Octonion::from_ints(&a, [1, 0, 1, 1, 0, 0, 1, 0]);
        assert_eq!(
            packed_gf2::apply(p1, packed_gf2::pack_vector(&x)),
            packed_gf2::pack_vector(&r1.apply(&x))
        );
        let t = packed_gf2::NormTable::new(&a).unwrap();
        assert!(t.is_isometry(p1) && t.fixes_unit(p1));
    }

    #[test]
    fn two_reflections_generate_dihedral_group() {
        let a = split_cayley(Field::gf(3).unwrap());
        let b = |i| Octonion::basis(&a, i);
        let r1 = reflection(&(&b(2) + &b(5))).unwrap();
        let r2 = reflection(&(&b(3) + &b(6))).unwrap();
        // commuting reflections in orthogonal mirrors
        assert_eq!(group_closure(&[r1.clone(), r2], 100).unwrap().order(), 4);
        assert_eq!(group_closure(&[r1], 1).unwrap_err(), Error::CapExceeded(1));
    }
}
