//! Constructive Witt extension by a chain of elementary isometries.

use std::sync::Arc;

use super::{eichler, hyperbolic_scaling, reflection, LinMap, Subspace};
use crate::cayley::{AlgebraRef, Octonion, DIM};
use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::linalg::Matrix;

/// Default height bound for mirror coefficients over Q.
pub const DEFAULT_HEIGHT_CAP: u32 = 50;

/// An isometry of quadratic data between a subspace (echelon basis) and the
/// span of the listed images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialIsometry {
    domain: Subspace,
    images: Vec<Octonion>,
}

impl PartialIsometry {
    /// Accepts any independent `domain` with one image each and re-expresses
    /// the pairing on the echelon basis of the domain.
    pub fn new(domain: &[Octonion], images: &[Octonion]) -> Result<Self> {
        let Some(first) = domain.first().or(images.first()) else {
            return Err(Error::NotIsometric(
                "empty input; use PartialIsometry::empty".into(),
            ));
        };
        let alg = first.algebra().clone();
        if domain.len() != images.len() {
            return Err(Error::NotIsometric(format!(
                "{} domain vectors but {} images",
                domain.len(),
                images.len()
            )));
        }
        if domain
            .iter()
            .chain(images)
            .any(|v| !Arc::ptr_eq(v.algebra(), &alg))
        {
            return Err(Error::AlgebraMismatch);
        }
        let f = alg.field();
        let k = domain.len();
        // rows [d_i | e_i]; reducing yields R = T D in the left block and T on the right
        let mut data = Vec::with_capacity(k * (DIM + k));
        for (i, d) in domain.iter().enumerate() {
            data.extend(d.coords().iter().cloned());
            data.extend((0..k).map(|j| if i == j { f.one() } else { f.zero() }));
        }
        let (r, pivots) = Matrix::from_rows(f, k, DIM + k, data).rref();
        if pivots.iter().filter(|&&p| p < DIM).count() != k {
            return Err(Error::NotIsometric("domain vectors are dependent".into()));
        }
        let mut basis = Vec::with_capacity(k);
        let mut new_images = Vec::with_capacity(k);
        for row in 0..k {
            basis.push(Octonion::from_coords_unchecked(
                &alg,
                r.row(row)[..DIM].to_vec(),
            ));
            let mut img = Octonion::zero(&alg);
            for (j, y) in images.iter().enumerate() {
                let t = &r[(row, DIM + j)];
                if !t.is_zero() {
                    img = &img + &y.scale(t);
                }
            }
            new_images.push(img);
        }
        let p = PartialIsometry {
            domain: Subspace::span(&alg, &basis)?,
            images: new_images,
        };
        debug_assert_eq!(p.domain.basis(), &basis[..]);
        p.check()?;
        Ok(p)
    }

    pub fn empty(alg: &AlgebraRef) -> Self {
        PartialIsometry {
            domain: Subspace::zero(alg),
            images: Vec::new(),
        }
    }

    fn check(&self) -> Result<()> {
        let d = self.domain.basis();
        let y = &self.images;
        for i in 0..d.len() {
            if d[i].norm() != y[i].norm() {
                return Err(Error::NotIsometric(format!(
                    "norm mismatch at domain vector {i}"
                )));
            }
            for j in i + 1..d.len() {
                if d[i].polar(&d[j]) != y[i].polar(&y[j]) {
                    return Err(Error::NotIsometric(format!("polar mismatch at ({i},{j})")));
                }
            }
        }
        let coords: Vec<Vec<FieldElem>> = y.iter().map(|v| v.coords().to_vec()).collect();
        if crate::linalg::rank_of(self.domain.algebra().field(), &coords) != y.len() {
            return Err(Error::NotIsometric("images are linearly dependent".into()));
        }
        Ok(())
    }

    pub fn algebra(&self) -> &AlgebraRef {
        self.domain.algebra()
    }
    pub fn domain(&self) -> &Subspace {
        &self.domain
    }
    pub fn images(&self) -> &[Octonion] {
        &self.images
    }
    pub fn dim(&self) -> usize {
        self.images.len()
    }

    /// Whether `m` reproduces every domain/image pair.
    pub fn agrees_with(&self, m: &LinMap) -> bool {
        self.domain
            .basis()
            .iter()
            .zip(&self.images)
            .all(|(d, y)| m.apply(d) == *y)
    }
}

pub fn witt_extend(p: &PartialIsometry) -> Result<LinMap> {
    witt_extend_with(p, DEFAULT_HEIGHT_CAP)
}

/// Extends `p` to an isometry of the whole space. Domain vectors are matched
/// in echelon order; each step composes an isometry fixing the vectors already
/// matched:
/// 1. the reflection in `x - y` when it is anisotropic;
/// 2. two reflections `τ_{τ_c(x) - y} τ_c` with `c` the first anisotropic mirror
///    in `M^⊥` from a fixed candidate list (heights up to `height_cap` over Q);
/// 3. an Eichler transvection `E_{x-y, w}` with `w ∈ M^⊥ ∩ (x-y)^⊥`, `n(x, w) = 1`;
/// 4. otherwise `x ∈ M + F(x-y)`, and a hyperbolic scaling of `x - y` finishes.
pub fn witt_extend_with(p: &PartialIsometry, height_cap: u32) -> Result<LinMap> {
    witt_extend_from(p, &LinMap::identity(p.algebra()), height_cap)
}

/// As [`witt_extend_with`], correcting the isometry `start` instead of the
/// identity; a start that already agrees on much of the domain keeps the
/// number of mirrors, and so the coefficient growth, small.
pub fn witt_extend_from(p: &PartialIsometry, start: &LinMap, height_cap: u32) -> Result<LinMap> {
    correct(p, p.domain().basis(), p.images(), start, height_cap, true)
}

/// Matches `domain[i] -> images[i]` in the order given rather than on the
/// echelon basis, so a `start` agreeing on a prefix leaves it untouched.
pub fn witt_extend_in_order(
    domain: &[Octonion],
    images: &[Octonion],
    start: &LinMap,
    height_cap: u32,
) -> Result<LinMap> {
    let p = PartialIsometry::new(domain, images)?;
    correct(&p, domain, images, start, height_cap, true)
}

/// [`witt_extend_in_order`] without the closing isometry check, for callers
/// that verify a map built from the result.
pub(crate) fn witt_extend_in_order_unverified(
    domain: &[Octonion],
    images: &[Octonion],
    start: &LinMap,
    height_cap: u32,
) -> Result<LinMap> {
    let p = PartialIsometry::new(domain, images)?;
    correct(&p, domain, images, start, height_cap, false)
}

fn correct(
    p: &PartialIsometry,
    domain: &[Octonion],
    images: &[Octonion],
    start: &LinMap,
    height_cap: u32,
    verify: bool,
) -> Result<LinMap> {
    let alg = p.algebra().clone();
    if !Arc::ptr_eq(start.algebra(), &alg) {
        return Err(Error::AlgebraMismatch);
    }
    if !start.is_isometry() {
        return Err(Error::NotIsometric(
            "starting map is not an isometry".into(),
        ));
    }
    let mut sigma = start.clone();
    let mut matched: Vec<Octonion> = Vec::new();
    for (d, y) in domain.iter().zip(images) {
        let x = sigma.apply(d);
        if x != *y {
            let g = step(&alg, &matched, &x, y, height_cap)?;
            debug_assert_eq!(g.apply(&x), *y);
            sigma = g.compose(&sigma);
        }
        matched.push(y.clone());
    }
    if verify && (!sigma.is_isometry() || !p.agrees_with(&sigma)) {
        return Err(Error::Internal("Witt extension failed verification".into()));
    }
    Ok(sigma)
}

fn step(
    alg: &AlgebraRef,
    matched: &[Octonion],
    x: &Octonion,
    y: &Octonion,
    height_cap: u32,
) -> Result<LinMap> {
    let u = x - y;
    if !u.norm().is_zero() {
        return reflection(&u);
    }
    let mperp = Subspace::span(alg, matched)?.orthogonal_complement();
    for c in mirror_candidates(&mperp, height_cap) {
        if c.norm().is_zero() {
            continue;
        }
        let nc = c.norm();
        let xp = x - &c.scale(&(&x.polar(&c) / &nc));
        let u2 = &xp - y;
        if !u2.norm().is_zero() {
            return Ok(reflection(&u2)?.compose(&reflection(&c)?));
        }
    }
    // w ∈ M^⊥ with n(w, u) = 0 and n(w, x) = 1
    let f = alg.field();
    let b = mperp.basis();
    if !b.is_empty() {
        let rows: Vec<FieldElem> = b
            .iter()
            .map(|v| v.polar(&u))
            .chain(b.iter().map(|v| v.polar(x)))
            .collect();
        let m = Matrix::from_rows(f, 2, b.len(), rows);
        if let Some(coef) = m.solve(&[f.zero(), f.one()]) {
            let mut w = Octonion::zero(alg);
            for (c, v) in coef.iter().zip(b) {
                w = &w + &v.scale(c);
            }
            return eichler(&u, &w);
        }
    }
    // x = m0 + λ u with m0 ∈ span(M): scale u by (λ - 1)/λ
    let mut cols: Vec<Vec<FieldElem>> = matched.iter().map(|v| v.coords().to_vec()).collect();
    cols.push(u.coords().to_vec());
    let sol = Matrix::from_columns(f, DIM, &cols)
        .solve(x.coords())
        .ok_or_else(|| Error::ExtensionSearchFailed("no elementary isometry found".into()))?;
    let lambda = sol.last().expect("u column").clone();
    if lambda.is_zero() || lambda.is_one() {
        return Err(Error::ExtensionSearchFailed(
            "current vector lies in the matched span".into(),
        ));
    }
    let mu = &(&lambda - &f.one()) / &lambda;
    let d = b
        .iter()
        .find(|v| !v.polar(&u).is_zero())
        .ok_or_else(|| Error::ExtensionSearchFailed("u is radical in M^⊥".into()))?;
    let d = d.scale(&d.polar(&u).inv()?);
    hyperbolic_scaling(&u, &d, &mu)
}

/// Basis vectors of `space`, then `b_i + s b_j` for `i < j` with `s` running
/// over the nonzero field elements (finite fields) or `±1, ±2, ..., ±cap` (Q).
fn mirror_candidates(space: &Subspace, height_cap: u32) -> impl Iterator<Item = Octonion> + '_ {
    let f = space.algebra().field();
    let scalars: Vec<FieldElem> = match f.elements() {
        Ok(els) => els.into_iter().filter(|e| !e.is_zero()).collect(),
        Err(_) => (1..=height_cap as i64)
            .flat_map(|h| [f.from_int(h), f.from_int(-h)])
            .collect(),
    };
    let b = space.basis();
    let n = b.len();
    let singles = b.iter().cloned();
    let pairs = (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)));
    let scalars = Arc::new(scalars);
    let combos = pairs.flat_map(move |(i, j)| {
        let s = scalars.clone();
        (0..s.len()).map(move |k| &b[i] + &b[j].scale(&s[k]))
    });
    singles.chain(combos)
}
