//! Characteristic 2: restriction of the stabilizer of 1 to the trace-zero
//! hyperplane `C0 = F1 + W`, its kernel, the symplectic part of an isometry
//! of `C0`, and the Artin-Schreier condition for extending back.

use crate::cayley::{AlgebraRef, Octonion, DIM};
use crate::error::{Error, Result};
use crate::exactfield::{absolute_trace, artin_schreier_solve, frobenius_inverse, FieldElem};
use crate::linalg::Matrix;
use crate::quadform::LinMap;
use crate::sample::{random_elem, random_nonzero_elem, rng};

/// Dimension of `W`.
pub const W_DIM: usize = 6;
/// Dimension of `C0`.
pub const C0_DIM: usize = 7;

/// Anchor `a` with `n(a, 1) = 1`, `W = span(1, a)^⊥` and the basis
/// `(1, w1, ..., w6)` of `C0` in which maps on `C0` are written.
#[derive(Clone, Debug)]
pub struct Char2Context {
    alg: AlgebraRef,
    a: Octonion,
    w: Vec<Octonion>,
    c0: Vec<Octonion>,
    /// rows: coordinates in the basis `(a, 1, w1..w6)` of the algebra basis
    to_adapted: Matrix,
}

impl Char2Context {
    /// Takes for `a` the first basis vector with `n(b, 1) != 0`, rescaled.
    pub fn new(alg: &AlgebraRef) -> Result<Self> {
        let f = alg.field();
        if f.characteristic() != 2 {
            return Err(Error::WrongCharacteristic(format!(
                "{f} does not have characteristic 2"
            )));
        }
        let one = Octonion::one(alg);
        let b = (0..DIM)
            .map(|i| Octonion::basis(alg, i))
            .find(|b| !b.polar(&one).is_zero())
            .ok_or_else(|| Error::Internal("polar form vanishes on 1".into()))?;
        let a = b.scale(&b.polar(&one).inv()?);
        let k = crate::cayley::SubalgebraBasis::new(vec![one.clone(), a.clone()])?;
        let w = k.orthogonal_complement();
        if w.len() != W_DIM {
            return Err(Error::Internal(format!("W has dimension {}", w.len())));
        }
        let mut c0 = vec![one];
        c0.extend(w.iter().cloned());
        let mut adapted = vec![a.clone()];
        adapted.extend(c0.iter().cloned());
        let cols: Vec<Vec<FieldElem>> = adapted.iter().map(|v| v.coords().to_vec()).collect();
        let to_adapted = Matrix::from_columns(f, DIM, &cols)
            .inverse()
            .ok_or_else(|| Error::Internal("adapted basis is singular".into()))?;
        Ok(Char2Context {
            alg: alg.clone(),
            a,
            w,
            c0,
            to_adapted,
        })
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.alg
    }
    pub fn anchor(&self) -> &Octonion {
        &self.a
    }
    pub fn w_basis(&self) -> &[Octonion] {
        &self.w
    }
    pub fn c0_basis(&self) -> &[Octonion] {
        &self.c0
    }

    /// Coordinates in `(1, w1, ..., w6)`, if `x ∈ C0`.
    pub fn c0_coords(&self, x: &Octonion) -> Option<Vec<FieldElem>> {
        let c = self.to_adapted.mul_vec(x.coords());
        c[0].is_zero().then(|| c[1..].to_vec())
    }

    /// Coordinates in `(w1, ..., w6)`, if `x ∈ W`.
    pub fn w_coords(&self, x: &Octonion) -> Option<Vec<FieldElem>> {
        let c = self.c0_coords(x)?;
        c[0].is_zero().then(|| c[1..].to_vec())
    }

    pub fn w_vector(&self, coords: &[FieldElem]) -> Octonion {
        combine(&self.alg, &self.w, coords)
    }

    pub fn c0_vector(&self, coords: &[FieldElem]) -> Octonion {
        combine(&self.alg, &self.c0, coords)
    }

    /// Gram matrix of the (alternating) polar form on `W`.
    pub fn w_gram(&self) -> Matrix {
        gram(&self.alg, &self.w)
    }

    /// Applies a 6x6 matrix on `W`.
    pub fn apply_w(&self, sigma: &Matrix, w: &Octonion) -> Option<Octonion> {
        let c = self.w_coords(w)?;
        Some(self.w_vector(&sigma.mul_vec(&c)))
    }
}

fn combine(alg: &AlgebraRef, basis: &[Octonion], coords: &[FieldElem]) -> Octonion {
    basis
        .iter()
        .zip(coords)
        .filter(|(_, c)| !c.is_zero())
        .fold(Octonion::zero(alg), |acc, (b, c)| &acc + &b.scale(c))
}

fn gram(alg: &AlgebraRef, basis: &[Octonion]) -> Matrix {
    let n = basis.len();
    let mut g = Matrix::zeros(alg.field(), n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = basis[i].polar(&basis[j]);
        }
    }
    g
}

/// The restriction `Φ(φ)` as a 7x7 matrix in the basis `(1, w1, ..., w6)`.
pub fn restrict_to_c0(phi: &LinMap, ctx: &Char2Context) -> Result<Matrix> {
    if !std::sync::Arc::ptr_eq(phi.algebra(), &ctx.alg) {
        return Err(Error::AlgebraMismatch);
    }
    if !phi.is_isometry() || !phi.fixes_unit() {
        return Err(Error::NotStabilizer(format!(
            "isometry: {:?}, fixes 1: {:?}",
            phi.isometry_evidence(),
            phi.fixes_unit_evidence()
        )));
    }
    let f = ctx.alg.field();
    let cols = ctx
        .c0
        .iter()
        .map(|c| {
            ctx.c0_coords(&phi.apply(c))
                .ok_or_else(|| Error::Internal("stabilizer moved C0".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(f, C0_DIM, &cols))
}

/// Whether a 7x7 matrix preserves the norm on `C0` and is invertible.
pub fn is_orthogonal_on_c0(m: &Matrix, ctx: &Char2Context) -> bool {
    let imgs: Vec<Octonion> = (0..C0_DIM).map(|j| ctx.c0_vector(&m.column(j))).collect();
    for i in 0..C0_DIM {
        if imgs[i].norm() != ctx.c0[i].norm() {
            return false;
        }
        for j in i + 1..C0_DIM {
            if imgs[i].polar(&imgs[j]) != ctx.c0[i].polar(&ctx.c0[j]) {
                return false;
            }
        }
    }
    !m.determinant().is_zero()
}

/// The isometries fixing `C0` pointwise. Such a map sends `a` to `a + c` with
/// `c ∈ C0^⊥ = F1`; the norm condition on `a + μ1` is `μ^2 + μ = 0`.
pub fn kernel_phi(ctx: &Char2Context) -> Result<Vec<LinMap>> {
    let alg = &ctx.alg;
    let f = alg.field();
    // linear conditions n(x, c) = n(a, c) for c ∈ C0
    let rows: Vec<FieldElem> = ctx
        .c0
        .iter()
        .flat_map(|c| (0..DIM).map(move |i| c.polar(&Octonion::basis(alg, i))))
        .collect();
    let m = Matrix::from_rows(f, C0_DIM, DIM, rows);
    let rhs: Vec<FieldElem> = ctx.c0.iter().map(|c| ctx.a.polar(c)).collect();
    let x0 = m
        .solve(&rhs)
        .ok_or_else(|| Error::Internal("a does not satisfy its own constraints".into()))?;
    let x0 = Octonion::from_coords(alg, x0)?;
    let null: Vec<Octonion> = m
        .nullspace()
        .into_iter()
        .map(|c| Octonion::from_coords(alg, c))
        .collect::<Result<_>>()?;
    if null.len() != 1 {
        return Err(Error::Internal(format!(
            "solution space has dimension {}",
            null.len()
        )));
    }
    let els = f
        .elements()
        .map_err(|_| Error::Unsupported("kernel enumeration needs a finite field".into()))?;
    let mut out = Vec::new();
    for mu in els {
        let x = &x0 + &null[0].scale(&mu);
        if x.norm() != ctx.a.norm() {
            continue;
        }
        let mut domain = vec![ctx.a.clone()];
        domain.extend(ctx.c0.iter().cloned());
        let mut images = vec![x];
        images.extend(ctx.c0.iter().cloned());
        let k = LinMap::from_basis_images(&domain, &images)?;
        if k.is_isometry() {
            out.push(k);
        }
    }
    out.sort_by_key(|k| k != &LinMap::identity(alg));
    Ok(out)
}

/// `κ : a -> a + 1`, identity on `C0`.
pub fn kappa(ctx: &Char2Context) -> Result<LinMap> {
    let mut domain = vec![ctx.a.clone()];
    domain.extend(ctx.c0.iter().cloned());
    let mut images = vec![&ctx.a + &Octonion::one(&ctx.alg)];
    images.extend(ctx.c0.iter().cloned());
    LinMap::from_basis_images(&domain, &images)
}

/// `φ0(w) = σ(w) + n(w_σ, w) 1` on `W`. `sigma` is 6x6 in the `W` basis,
/// `w_sigma` and `alpha` are coordinate vectors (`alpha[j] = α(w_j)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SympDecomp {
    pub sigma: Matrix,
    pub w_sigma: Vec<FieldElem>,
    pub alpha: Vec<FieldElem>,
}

impl SympDecomp {
    /// Builds and checks: `σ` symplectic, `α(w) = n(w_σ, w)` and
    /// `n(w) - n(σ(w)) = α(w)^2` on the basis.
    pub fn checked(ctx: &Char2Context, sigma: Matrix, w_sigma: Vec<FieldElem>) -> Result<Self> {
        let d = SympDecomp::formal(ctx, sigma, w_sigma)?;
        d.check(ctx)?;
        Ok(d)
    }

    /// No consistency check between `σ` and `w_σ`; used to exhibit the
    /// extension obstruction for values no genuine isometry produces.
    pub fn formal(ctx: &Char2Context, sigma: Matrix, w_sigma: Vec<FieldElem>) -> Result<Self> {
        if sigma.rows() != W_DIM || sigma.cols() != W_DIM || w_sigma.len() != W_DIM {
            return Err(Error::PreconditionViolated(
                "need a 6x6 matrix and 6 coordinates".into(),
            ));
        }
        let ws = ctx.w_vector(&w_sigma);
        let alpha = ctx.w.iter().map(|w| ws.polar(w)).collect();
        Ok(SympDecomp {
            sigma,
            w_sigma,
            alpha,
        })
    }

    pub fn check(&self, ctx: &Char2Context) -> Result<()> {
        if !is_symplectic(&self.sigma, ctx)? {
            return Err(Error::NotOrthogonalOnC0("σ is not symplectic".into()));
        }
        for (j, w) in ctx.w.iter().enumerate() {
            let sw = ctx.apply_w(&self.sigma, w).expect("basis of W");
            if &w.norm() - &sw.norm() != &self.alpha[j] * &self.alpha[j] {
                return Err(Error::NotOrthogonalOnC0(format!(
                    "n(w) - n(σ(w)) != α(w)^2 at w{}",
                    j + 1
                )));
            }
        }
        Ok(())
    }

    pub fn w_sigma_vector(&self, ctx: &Char2Context) -> Octonion {
        ctx.w_vector(&self.w_sigma)
    }

    /// `φ0` as a 7x7 matrix on `C0`.
    pub fn to_c0_map(&self, ctx: &Char2Context) -> Matrix {
        let f = ctx.alg.field();
        let mut m = Matrix::zeros(f, C0_DIM, C0_DIM);
        m[(0, 0)] = f.one();
        for j in 0..W_DIM {
            m[(0, j + 1)] = self.alpha[j].clone();
            for i in 0..W_DIM {
                m[(i + 1, j + 1)] = self.sigma[(i, j)].clone();
            }
        }
        m
    }
}

pub fn is_symplectic(sigma: &Matrix, ctx: &Char2Context) -> Result<bool> {
    if ctx.alg.field().characteristic() != 2 {
        return Err(Error::WrongCharacteristic(
            "symplectic check is for characteristic 2".into(),
        ));
    }
    if sigma.rows() != W_DIM || sigma.cols() != W_DIM {
        return Ok(false);
    }
    let g = ctx.w_gram();
    Ok(sigma.transpose().mul(&g).mul(sigma) == g && !sigma.determinant().is_zero())
}

/// Splits an isometry of `C0` into its symplectic part on `W` and `w_σ`.
pub fn decompose(phi0: &Matrix, ctx: &Char2Context) -> Result<SympDecomp> {
    if phi0.rows() != C0_DIM || phi0.cols() != C0_DIM {
        return Err(Error::NotOrthogonalOnC0("need a 7x7 matrix".into()));
    }
    if !is_orthogonal_on_c0(phi0, ctx) {
        return Err(Error::NotOrthogonalOnC0(
            "norm not preserved or singular".into(),
        ));
    }
    if !phi0[(0, 0)].is_one() || (1..C0_DIM).any(|i| !phi0[(i, 0)].is_zero()) {
        return Err(Error::Internal("isometry of C0 moves 1".into()));
    }
    let sigma = phi0.submatrix(&[1, 2, 3, 4, 5, 6], &[1, 2, 3, 4, 5, 6]);
    let alpha: Vec<FieldElem> = (1..C0_DIM).map(|j| phi0[(0, j)].clone()).collect();
    // n(w_σ, w_j) = α_j
    let w_sigma = ctx
        .w_gram()
        .transpose()
        .solve(&alpha)
        .ok_or_else(|| Error::Internal("polar form on W is degenerate".into()))?;
    let d = SympDecomp {
        sigma,
        w_sigma,
        alpha,
    };
    d.check(ctx)
        .map_err(|e| Error::Internal(format!("decomposition invariant: {e}")))?;
    Ok(d)
}

/// Result of trying to extend an isometry of `C0` to the whole algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Extended { map: LinMap, mu: FieldElem },
    Obstructed { norm_w_sigma: FieldElem },
}

/// With `μ^2 + μ = n(w_σ)` the extension is `1 -> 1`,
/// `w -> σ(w) + α(w) 1`, `a -> μ1 + a + σ(w_σ)`.
pub fn extend_from_c0(d: &SympDecomp, ctx: &Char2Context) -> Result<Extension> {
    let alg = &ctx.alg;
    let ws = d.w_sigma_vector(ctx);
    let c = ws.norm();
    let Some(mu) = artin_schreier_solve(&c)? else {
        return Ok(Extension::Obstructed { norm_w_sigma: c });
    };
    let one = Octonion::one(alg);
    let mut domain = vec![ctx.a.clone(), one.clone()];
    let mut images = vec![
        &(&one.scale(&mu) + &ctx.a) + &ctx.apply_w(&d.sigma, &ws).expect("w_σ ∈ W"),
        one.clone(),
    ];
    for (j, w) in ctx.w.iter().enumerate() {
        domain.push(w.clone());
        images.push(&ctx.apply_w(&d.sigma, w).expect("basis of W") + &one.scale(&d.alpha[j]));
    }
    let map = LinMap::from_basis_images(&domain, &images)?;
    if !map.is_isometry() {
        return Err(Error::PreconditionViolated(
            "decomposition is inconsistent: the extension is not an isometry".into(),
        ));
    }
    Ok(Extension::Extended { map, mu })
}

/// Whether `n(w_σ)` has absolute trace zero, i.e. lies in `{μ^2 + μ}`.
pub fn extension_criterion(d: &SympDecomp, ctx: &Char2Context) -> Result<bool> {
    Ok(absolute_trace(&d.w_sigma_vector(ctx).norm())?.is_zero())
}

/// The isometry of `C0` with symplectic part `σ`: `α(w_j)` is the square
/// root of `n(w_j) - n(σ(w_j))`, which is additive in `w` since `σ` preserves
/// the polar form.
pub fn reconstruct_c0_map(sigma: &Matrix, ctx: &Char2Context) -> Result<Matrix> {
    if !is_symplectic(sigma, ctx)? {
        return Err(Error::PreconditionViolated("σ is not symplectic".into()));
    }
    let mut alpha = Vec::with_capacity(W_DIM);
    for w in &ctx.w {
        let sw = ctx.apply_w(sigma, w).expect("basis of W");
        alpha.push(frobenius_inverse(&(&w.norm() - &sw.norm()))?);
    }
    let g = ctx.w_gram();
    let w_sigma = g
        .transpose()
        .solve(&alpha)
        .ok_or_else(|| Error::Internal("polar form on W is degenerate".into()))?;
    Ok(SympDecomp {
        sigma: sigma.clone(),
        w_sigma,
        alpha,
    }
    .to_c0_map(ctx))
}

/// Symplectic transvection `w -> w + t n(w, c) c` as a 6x6 matrix.
pub fn transvection(ctx: &Char2Context, c: &Octonion, t: &FieldElem) -> Result<Matrix> {
    let f = ctx.alg.field();
    let cc = ctx
        .w_coords(c)
        .ok_or_else(|| Error::PreconditionViolated("transvection vector is not in W".into()))?;
    let cols: Vec<Vec<FieldElem>> = ctx
        .w
        .iter()
        .enumerate()
        .map(|(j, w)| {
            let s = t * &w.polar(c);
            (0..W_DIM)
                .map(|i| {
                    let d = if i == j { f.one() } else { f.zero() };
                    &d + &(&s * &cc[i])
                })
                .collect()
        })
        .collect();
    Ok(Matrix::from_columns(f, W_DIM, &cols))
}

/// Product of `length` transvections with seeded nonzero `c ∈ W` and `t`.
pub fn random_symplectic(ctx: &Char2Context, seed: u64, length: usize) -> Result<Matrix> {
    let f = ctx.alg.field();
    let mut r = rng(seed);
    let mut m = Matrix::identity(f, W_DIM);
    for _ in 0..length {
        let coords = loop {
            let c: Vec<FieldElem> = (0..W_DIM).map(|_| random_elem(f, &mut r)).collect();
            if c.iter().any(|x| !x.is_zero()) {
                break c;
            }
        };
        let t = random_nonzero_elem(f, &mut r);
        m = transvection(ctx, &ctx.w_vector(&coords), &t)?.mul(&m);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::split_cayley;
    use crate::exactfield::Field;
    use crate::quadform::{random_orthogonal_stab1, reflection};

    fn ctx(k: u32) -> Char2Context {
        let f = if k == 1 {
            Field::gf(2).unwrap()
        } else {
            Field::gf_ext(2, k).unwrap()
        };
        Char2Context::new(&split_cayley(f)).unwrap()
    }

    #[test]
    fn context_shape() {
        let c = ctx(1);
        assert_eq!(c.anchor(), &Octonion::basis(c.algebra(), 0));
        assert_eq!(c.w_basis().len(), 6);
        assert!(c
            .w_basis()
            .iter()
            .all(|w| w.trace().is_zero() && w.polar(c.anchor()).is_zero()));
        let odd = Char2Context::new(&split_cayley(Field::gf(3).unwrap()));
        assert!(matches!(odd, Err(Error::WrongCharacteristic(_))));
    }

    #[test]
    fn kernel_has_two_elements() {
        for k in [1, 2, 3] {
            let c = ctx(k);
            let ker = kernel_phi(&c).unwrap();
            assert_eq!(ker.len(), 2, "GF(2^{k})");
            assert_eq!(ker[0], LinMap::identity(c.algebra()));
            assert_eq!(ker[1], kappa(&c).unwrap());
            assert!(ker[1].is_isometry());
            let r = restrict_to_c0(&ker[1], &c).unwrap();
            assert_eq!(r, Matrix::identity(c.algebra().field(), C0_DIM));
        }
    }

    #[test]
    fn reflection_in_w_has_zero_w_sigma() {
        let c = ctx(1);
        let v = c
            .w_basis()
            .iter()
            .flat_map(|x| c.w_basis().iter().map(move |y| x + y))
            .find(|v| v.norm().is_one())
            .unwrap();
        let t = reflection(&v).unwrap();
        let d = decompose(&restrict_to_c0(&t, &c).unwrap(), &c).unwrap();
        assert!(d.w_sigma.iter().all(|x| x.is_zero()));
        assert!(is_symplectic(&d.sigma, &c).unwrap());
    }

    #[test]
    fn gf4_transvection_extends_with_omega() {
        let c = ctx(2);
        let f = c.algebra().field();
        let omega = f.generator().unwrap();
        // c ∈ W with n(c) = ω
        let cv = c
            .w_basis()
            .iter()
            .flat_map(|x| c.w_basis().iter().map(move |y| (x, y)))
            .map(|(x, y)| x + &y.scale(&omega))
            .find(|v| v.norm() == omega)
            .unwrap();
        let sigma = transvection(&c, &cv, &f.one()).unwrap();
        let phi0 = reconstruct_c0_map(&sigma, &c).unwrap();
        let d = decompose(&phi0, &c).unwrap();
        assert_eq!(d.w_sigma_vector(&c), cv.scale(&omega));
        assert!(d.w_sigma_vector(&c).norm().is_one());
        match extend_from_c0(&d, &c).unwrap() {
            Extension::Extended { map, mu } => {
                assert!(mu == omega || mu == &omega + &f.one());
                assert!(map.is_isometry() && map.fixes_unit());
            }
            other => panic!("expected extension, got {other:?}"),
        }
    }

    #[test]
    fn formal_obstruction_over_gf2() {
        let c = ctx(1);
        let f = c.algebra().field();
        let ws = c
            .w_basis()
            .iter()
            .flat_map(|x| c.w_basis().iter().map(move |y| x + y))
            .find(|v| v.norm().is_one())
            .unwrap();
        let d =
            SympDecomp::formal(&c, Matrix::identity(f, W_DIM), c.w_coords(&ws).unwrap()).unwrap();
        assert!(d.check(&c).is_err());
        assert_eq!(
            extend_from_c0(&d, &c).unwrap(),
            Extension::Obstructed {
                norm_w_sigma: f.one()
            }
        );
        assert!(!extension_criterion(&d, &c).unwrap());
    }

    #[test]
    fn roundtrip_recovers_phi_up_to_kappa() {
        for k in [1, 2] {
            let c = ctx(k);
            let kap = kappa(&c).unwrap();
            for seed in 0..10 {
                let phi = random_orthogonal_stab1(c.algebra(), seed, 4).unwrap();
                let d = decompose(&restrict_to_c0(&phi, &c).unwrap(), &c).unwrap();
                let Extension::Extended { map, .. } = extend_from_c0(&d, &c).unwrap() else {
                    panic!("stabilizer elements extend");
                };
                assert!(
                    map == phi || map == phi.compose(&kap),
                    "GF(2^{k}) seed {seed}"
                );
            }
        }
    }

    #[test]
    fn sampled_symplectic_maps_reconstruct() {
        let c = ctx(2);
        for seed in 0..5 {
            let s = random_symplectic(&c, seed, 4).unwrap();
            assert!(is_symplectic(&s, &c).unwrap());
            let phi0 = reconstruct_c0_map(&s, &c).unwrap();
            let d = decompose(&phi0, &c).unwrap();
            assert_eq!(d.sigma, s);
        }
        let f = c.algebra().field();
        let g = c.w_gram();
        // w_j -> w_j + w_0 with w_0 ⟂ w_j: w_0 still pairs with some other w_k
        let j = (1..W_DIM).find(|&j| g[(0, j)].is_zero()).unwrap();
        let mut shear = Matrix::identity(f, W_DIM);
        shear[(0, j)] = f.one();
        assert!(!is_symplectic(&shear, &c).unwrap());
    }
}
