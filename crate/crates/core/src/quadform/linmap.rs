use std::fmt;
use std::sync::{Arc, OnceLock};

use num::integer::Integer;
use num::{BigInt, One, Zero};

use crate::cayley::{AlgebraRef, Octonion, DIM};
use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::linalg::Matrix;

/// Outcome of a cached property check; failures keep the offending input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Holds,
    Fails(String),
}

impl Evidence {
    pub fn holds(&self) -> bool {
        matches!(self, Evidence::Holds)
    }
}

/// A linear endomorphism of an algebra; column `j` of the matrix is the image
/// of basis vector `j`.
#[derive(Clone)]
pub struct LinMap {
    alg: AlgebraRef,
    matrix: Matrix,
    isometry: OnceLock<Evidence>,
    fixes_unit: OnceLock<Evidence>,
    automorphism: OnceLock<Evidence>,
}

impl PartialEq for LinMap {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.matrix == other.matrix
    }
}
impl Eq for LinMap {}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinMap on {} ", self.alg.id())?;
        fmt::Debug::fmt(&self.matrix, f)
    }
}

impl LinMap {
    pub fn new(alg: &AlgebraRef, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != DIM || matrix.cols() != DIM {
            return Err(Error::InvalidAlgebra("maps are 8x8 matrices".into()));
        }
        if matrix.field() != alg.field() {
            return Err(Error::WrongField(format!(
                "matrix over {} for an algebra over {}",
                matrix.field(),
                alg.field()
            )));
        }
        Ok(Self::from_matrix(alg, matrix))
    }

    pub(crate) fn from_matrix(alg: &AlgebraRef, matrix: Matrix) -> Self {
        LinMap {
            alg: alg.clone(),
            matrix,
            isometry: OnceLock::new(),
            fixes_unit: OnceLock::new(),
            automorphism: OnceLock::new(),
        }
    }

    pub fn identity(alg: &AlgebraRef) -> Self {
        Self::from_matrix(alg, Matrix::identity(alg.field(), DIM))
    }

    /// Map sending basis vector `i` to `images[i]`.
    pub fn from_images(alg: &AlgebraRef, images: &[Octonion]) -> Result<Self> {
        if images.len() != DIM {
            return Err(Error::InvalidAlgebra("need 8 basis images".into()));
        }
        if images.iter().any(|x| !Arc::ptr_eq(x.algebra(), alg)) {
            return Err(Error::AlgebraMismatch);
        }
        let cols: Vec<Vec<FieldElem>> = images.iter().map(|x| x.coords().to_vec()).collect();
        Ok(Self::from_matrix(
            alg,
            Matrix::from_columns(alg.field(), DIM, &cols),
        ))
    }

    /// Unique linear map with `domain[i] -> images[i]` for a basis `domain`.
    pub fn from_basis_images(domain: &[Octonion], images: &[Octonion]) -> Result<Self> {
        let alg = domain
            .first()
            .ok_or_else(|| Error::InvalidAlgebra("empty basis".into()))?
            .algebra()
            .clone();
        let f = alg.field();
        if domain.len() != DIM || images.len() != DIM {
            return Err(Error::UnderdeterminedSpan(domain.len().min(images.len())));
        }
        let cols = |v: &[Octonion]| -> Vec<Vec<FieldElem>> {
            v.iter().map(|x| x.coords().to_vec()).collect()
        };
        let b = Matrix::from_columns(f, DIM, &cols(domain));
        let y = Matrix::from_columns(f, DIM, &cols(images));
        let binv = b.inverse().ok_or(Error::UnderdeterminedSpan(b.rank()))?;
        Ok(Self::from_matrix(&alg, y.mul(&binv)))
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &Octonion) -> Octonion {
        assert!(
            Arc::ptr_eq(x.algebra(), &self.alg),
            "map and element from different algebras"
        );
        Octonion::from_coords_unchecked(&self.alg, self.matrix.mul_vec(x.coords()))
    }

    pub fn try_apply(&self, x: &Octonion) -> Result<Octonion> {
        if !Arc::ptr_eq(x.algebra(), &self.alg) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.apply(x))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> LinMap {
        assert!(
            Arc::ptr_eq(&self.alg, &other.alg),
            "maps from different algebras"
        );
        Self::from_matrix(&self.alg, self.matrix.mul(&other.matrix))
    }

    pub fn inverse(&self) -> Option<LinMap> {
        self.matrix
            .inverse()
            .map(|m| Self::from_matrix(&self.alg, m))
    }

    /// Over Q a nonzero determinant modulo a large prime settles it without
    /// rational elimination; only a vanishing residue falls back to exact.
    pub fn is_invertible(&self) -> bool {
        if !self.alg.field().is_finite() && self.integral().1.is_some_and(|n| det_mod_p_nonzero(&n))
        {
            return true;
        }
        !self.matrix.determinant().is_zero()
    }

    /// `(d, d m)` with `d` the lcm of the denominators (rational fields only).
    fn integral(&self) -> (BigInt, Option<Vec<BigInt>>) {
        let Some(entries) = self
            .matrix
            .entries()
            .iter()
            .map(|e| e.as_rational())
            .collect::<Option<Vec<_>>>()
        else {
            return (BigInt::one(), None);
        };
        let d = entries.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let n = entries
            .iter()
            .map(|r| r.numer() * (&d / r.denom()))
            .collect();
        (d, Some(n))
    }

    pub fn image_of_basis(&self, i: usize) -> Octonion {
        Octonion::from_coords_unchecked(&self.alg, self.matrix.column(i))
    }

    /// Checks `n(m b_i) = n_i`, `n(m b_i, m b_j) = n(b_i, b_j)` and invertibility.
    pub fn isometry_evidence(&self) -> &Evidence {
        self.isometry.get_or_init(|| {
            let imgs: Vec<Octonion> = (0..DIM).map(|i| self.image_of_basis(i)).collect();
            for i in 0..DIM {
                if imgs[i].norm() != self.alg.basis_norms()[i] {
                    return Evidence::Fails(format!("norm of image of b{i}"));
                }
                for j in i + 1..DIM {
                    if imgs[i].polar(&imgs[j]) != self.alg.polar_matrix()[(i, j)] {
                        return Evidence::Fails(format!("polar pairing of b{i}, b{j}"));
                    }
                }
            }
            if !self.is_invertible() {
                return Evidence::Fails("singular matrix".into());
            }
            Evidence::Holds
        })
    }

    pub fn is_isometry(&self) -> bool {
        self.isometry_evidence().holds()
    }

    pub fn fixes_unit_evidence(&self) -> &Evidence {
        self.fixes_unit.get_or_init(|| {
            let one = Octonion::one(&self.alg);
            if self.apply(&one) == one {
                Evidence::Holds
            } else {
                Evidence::Fails(format!("image of 1 is {}", self.apply(&one)))
            }
        })
    }

    pub fn fixes_unit(&self) -> bool {
        self.fixes_unit_evidence().holds()
    }

    /// Checks `m(b_i b_j) = m(b_i) m(b_j)` on all 64 basis pairs and invertibility.
    pub fn automorphism_evidence(&self) -> &Evidence {
        self.automorphism.get_or_init(|| {
            let bad = if !self.alg.field().is_finite() {
                self.first_bad_product_integral()
            } else {
                self.first_bad_product()
            };
            if let Some((i, j)) = bad {
                return Evidence::Fails(format!("product of b{i} and b{j}"));
            }
            if !self.is_invertible() {
                return Evidence::Fails("singular matrix".into());
            }
            Evidence::Holds
        })
    }

    pub fn is_automorphism(&self) -> bool {
        self.automorphism_evidence().holds()
    }

    fn first_bad_product(&self) -> Option<(usize, usize)> {
        let imgs: Vec<Octonion> = (0..DIM).map(|i| self.image_of_basis(i)).collect();
        let pairs = (0..DIM).flat_map(|i| (0..DIM).map(move |j| (i, j)));
        pairs.into_iter().find(|&(i, j)| {
            let prod = Octonion::basis(&self.alg, i) * Octonion::basis(&self.alg, j);
            self.apply(&prod) != &imgs[i] * &imgs[j]
        })
    }

    /// Over Q: with `N = D m` and `s = L c` integral, `m` is multiplicative iff
    /// `sum N_ai N_bj s_abk = D sum_l s_ijl N_kl` for all `i, j, k`. Avoids the
    /// gcd in every rational product.
    fn first_bad_product_integral(&self) -> Option<(usize, usize)> {
        let rat = |e: &FieldElem| e.as_rational().expect("rational field").clone();
        let lcm_of =
            |it: &mut dyn Iterator<Item = BigInt>| it.fold(BigInt::one(), |l, d| l.lcm(&d));
        let (d, n) = self.integral();
        let n = n.expect("rational field");
        let col = |k: usize| -> Vec<&BigInt> { (0..DIM).map(|r| &n[r * DIM + k]).collect() };
        let cols: Vec<Vec<&BigInt>> = (0..DIM).map(col).collect();
        let terms = |i: usize, j: usize| {
            self.alg
                .product_terms(i, j)
                .iter()
                .map(|(k, c)| (*k, rat(c)))
        };
        let all =
            (0..DIM * DIM).flat_map(|p| terms(p / DIM, p % DIM).map(|(_, c)| c.denom().clone()));
        let l = lcm_of(&mut all.collect::<Vec<_>>().into_iter());
        let s: Vec<Vec<(usize, BigInt)>> = (0..DIM * DIM)
            .map(|p| {
                terms(p / DIM, p % DIM)
                    .map(|(k, c)| (k, c.numer() * (&l / c.denom())))
                    .collect()
            })
            .collect();
        for i in 0..DIM {
            for j in 0..DIM {
                let mut lhs = vec![BigInt::zero(); DIM];
                for a in 0..DIM {
                    if cols[i][a].is_zero() {
                        continue;
                    }
                    for b in 0..DIM {
                        if cols[j][b].is_zero() || s[a * DIM + b].is_empty() {
                            continue;
                        }
                        let ab = cols[i][a] * cols[j][b];
                        for (k, c) in &s[a * DIM + b] {
                            lhs[*k] += &ab * c;
                        }
                    }
                }
                let mut rhs = vec![BigInt::zero(); DIM];
                for (l, c) in &s[i * DIM + j] {
                    let dc = &d * c;
                    for (k, r) in rhs.iter_mut().enumerate() {
                        *r += &dc * cols[*l][k];
                    }
                }
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

const P61: u64 = (1 << 61) - 1;

fn det_mod_p_nonzero(n: &[BigInt]) -> bool {
    let p = BigInt::from(P61);
    let mut m: Vec<u64> = n
        .iter()
        .map(|x| {
            let r = x.mod_floor(&p);
            u64::try_from(r).expect("reduced below p")
        })
        .collect();
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % P61 as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    for c in 0..DIM {
        let Some(r) = (c..DIM).find(|&r| m[r * DIM + c] != 0) else {
            return false;
        };
        for k in 0..DIM {
            m.swap(r * DIM + k, c * DIM + k);
        }
        let inv = pow(m[c * DIM + c], P61 - 2);
        for r in c + 1..DIM {
            let f = mul(m[r * DIM + c], inv);
            if f == 0 {
                continue;
            }
            for k in c..DIM {
                let t = mul(f, m[c * DIM + k]);
                m[r * DIM + k] = (m[r * DIM + k] + P61 - t) % P61;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::split_cayley;
    use crate::exactfield::Field;

    fn diag_u3_v3(alg: &AlgebraRef, a: i64, b: i64) -> LinMap {
        let f = alg.field();
        let mut m = Matrix::identity(f, DIM);
        m[(4, 4)] = f.from_int(a);
        m[(7, 7)] = f.from_int(b);
        LinMap::new(alg, m).unwrap()
    }

    #[test]
    fn isometry_examples() {
        let a = split_cayley(Field::gf(5).unwrap());
        assert!(LinMap::identity(&a).is_isometry());
        assert!(diag_u3_v3(&a, 2, 3).is_isometry());
        assert!(!diag_u3_v3(&a, 2, 1).is_isometry());
        // u1 -> e1, others fixed
        let mut imgs: Vec<Octonion> = (0..DIM).map(|i| Octonion::basis(&a, i)).collect();
        imgs[2] = Octonion::basis(&a, 0);
        let m = LinMap::from_images(&a, &imgs).unwrap();
        assert!(!m.is_isometry());
        assert!(matches!(m.isometry_evidence(), Evidence::Fails(_)));
    }

    #[test]
    fn automorphism_examples() {
        let a = split_cayley(Field::gf(5).unwrap());
        assert!(LinMap::identity(&a).is_automorphism());
        let b = |i| Octonion::basis(&a, i);
        let cyc =
            LinMap::from_images(&a, &[b(0), b(1), b(3), b(4), b(2), b(6), b(7), b(5)]).unwrap();
        assert!(cyc.is_automorphism());
        assert!(!diag_u3_v3(&a, 2, 1).is_automorphism());
        assert!(!diag_u3_v3(&a, 2, 3).is_automorphism());
    }

    #[test]
    fn composition_and_inverse() {
        let a = split_cayley(Field::gf(7).unwrap());
        let m = diag_u3_v3(&a, 3, 5);
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv), LinMap::identity(&a));
        let x = Octonion::from_ints(&a, [1, 2, 3, 4, 5, 6, 0, 1]);
        assert_eq!(inv.apply(&m.apply(&x)), x);
    }
}
