//! Isomorphisms between composition subalgebras and their extension to
//! automorphisms; conjugation of elements with equal norm and trace.

use std::sync::Arc;

use super::AutWitness;
use crate::cayley::{
    complete_canonical_basis, restricted_form_is_regular, AlgebraRef, Octonion, SubalgebraBasis,
};
use crate::error::{Error, Result};
use crate::exactfield::{frobenius_inverse, FieldElem};
use crate::quadform::{witt_extend_in_order_unverified, LinMap, DEFAULT_HEIGHT_CAP};

/// An algebra isomorphism from a composition subalgebra onto the span of the
/// listed images, given on a basis of the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialIsomorphism {
    domain: SubalgebraBasis,
    images: Vec<Octonion>,
}

impl PartialIsomorphism {
    /// Checks that `domain` spans a composition subalgebra and that the images
    /// multiply with the same structure constants.
    pub fn new(domain: Vec<Octonion>, images: Vec<Octonion>) -> Result<Self> {
        if domain.len() != images.len() {
            return Err(Error::PreconditionViolated(format!(
                "{} domain vectors but {} images",
                domain.len(),
                images.len()
            )));
        }
        let s = SubalgebraBasis::new(domain)?;
        if images
            .iter()
            .any(|y| !Arc::ptr_eq(y.algebra(), s.algebra()))
        {
            return Err(Error::AlgebraMismatch);
        }
        let p = PartialIsomorphism { domain: s, images };
        p.check_multiplicative()?;
        Ok(p)
    }

    /// The identity on `F 1`.
    pub fn unit(alg: &AlgebraRef) -> Self {
        let one = Octonion::one(alg);
        PartialIsomorphism {
            domain: SubalgebraBasis::scalars(alg),
            images: vec![one],
        }
    }

    fn check_multiplicative(&self) -> Result<()> {
        let d = self.domain.basis();
        for i in 0..d.len() {
            for j in 0..d.len() {
                let prod = &d[i] * &d[j];
                if self.apply(&prod)? != &self.images[i] * &self.images[j] {
                    return Err(Error::PreconditionViolated(format!(
                        "images do not multiply like the domain at ({i},{j})"
                    )));
                }
            }
        }
        let coords: Vec<Vec<FieldElem>> = self.images.iter().map(|v| v.coords().to_vec()).collect();
        if crate::linalg::rank_of(self.algebra().field(), &coords) != self.images.len() {
            return Err(Error::PreconditionViolated("images are dependent".into()));
        }
        Ok(())
    }

    pub fn algebra(&self) -> &AlgebraRef {
        self.domain.algebra()
    }
    pub fn domain(&self) -> &SubalgebraBasis {
        &self.domain
    }
    pub fn images(&self) -> &[Octonion] {
        &self.images
    }
    pub fn dim(&self) -> usize {
        self.images.len()
    }

    /// Image of an element of the domain.
    pub fn apply(&self, x: &Octonion) -> Result<Octonion> {
        let c = self
            .domain
            .coords_of(x)
            .ok_or_else(|| Error::PreconditionViolated(format!("{x} is outside the domain")))?;
        let mut out = Octonion::zero(self.algebra());
        for (ci, y) in c.iter().zip(&self.images) {
            if !ci.is_zero() {
                out = &out + &y.scale(ci);
            }
        }
        Ok(out)
    }

    /// The whole-algebra map once the domain is everything.
    pub fn to_linmap(&self) -> Result<LinMap> {
        LinMap::from_basis_images(self.domain.basis(), &self.images)
    }
}

/// Extends `psi : S -> S'` to `S + S y -> S' + S' y2` by
/// `a + b y |-> psi(a) + psi(b) y2`.
pub fn extend_iso_doubling(
    psi: &PartialIsomorphism,
    y: &Octonion,
    y2: &Octonion,
) -> Result<PartialIsomorphism> {
    let p = double_unchecked(psi, y, y2)?;
    p.check_multiplicative().map_err(|e| match e {
        Error::PreconditionViolated(m) => Error::Internal(format!("doubling extension: {m}")),
        other => other,
    })?;
    Ok(p)
}

/// The doubling step with its hypotheses checked but not the products of the
/// result; callers verify the final automorphism once.
pub(crate) fn double_unchecked(
    psi: &PartialIsomorphism,
    y: &Octonion,
    y2: &Octonion,
) -> Result<PartialIsomorphism> {
    let alg = psi.algebra();
    if !Arc::ptr_eq(y.algebra(), alg) || !Arc::ptr_eq(y2.algebra(), alg) {
        return Err(Error::AlgebraMismatch);
    }
    if psi.dim() > 4 {
        return Err(Error::PreconditionViolated(
            "domain is already the whole algebra".into(),
        ));
    }
    if !psi.domain.is_orthogonal_to(y) {
        return Err(Error::NotOrthogonal(
            "y is not orthogonal to the domain".into(),
        ));
    }
    if psi.images.iter().any(|s| !s.polar(y2).is_zero()) {
        return Err(Error::NotOrthogonal(
            "y2 is not orthogonal to the image".into(),
        ));
    }
    if y.norm() != y2.norm() {
        return Err(Error::NormMismatch(format!(
            "n(y) = {}, n(y2) = {}",
            y.norm(),
            y2.norm()
        )));
    }
    if y.norm().is_zero() {
        return Err(Error::IsotropicDoubler);
    }
    let mut domain = psi.domain.basis().to_vec();
    domain.extend(psi.domain.basis().iter().map(|b| b * y));
    let mut images = psi.images.clone();
    images.extend(psi.images.iter().map(|b| b * y2));
    // S + S y is again a composition subalgebra once y is anisotropic and orthogonal to S
    Ok(PartialIsomorphism {
        domain: SubalgebraBasis::new_unchecked(alg, domain),
        images,
    })
}

/// First anisotropic vector among a basis of `S^⊥` and the pairwise sums of
/// its members. One always exists when `S` is a proper composition subalgebra:
/// otherwise the polar form would vanish on the regular space `S^⊥`.
pub(crate) fn anisotropic_in_complement(s: &SubalgebraBasis) -> Result<Octonion> {
    let b = s.orthogonal_complement();
    let singles = b.iter().cloned();
    let pairs = (0..b.len()).flat_map(|i| (i + 1..b.len()).map(move |j| (i, j)));
    singles
        .chain(pairs.map(|(i, j)| &b[i] + &b[j]))
        .find(|v| !v.norm().is_zero())
        .ok_or_else(|| Error::Internal("orthogonal complement is totally isotropic".into()))
}

/// Extends an isomorphism of composition subalgebras to an automorphism by
/// repeated doubling; each adjoined generator is carried over by a Witt
/// extension of the current partial map.
pub fn extend_to_automorphism(psi: &PartialIsomorphism) -> Result<LinMap> {
    extend_near(psi, &LinMap::identity(psi.algebra()))
}

/// [`extend_to_automorphism`] with every Witt extension started from the
/// isometry `hint`.
pub(crate) fn extend_near(psi: &PartialIsomorphism, hint: &LinMap) -> Result<LinMap> {
    let mut cur = psi.clone();
    while cur.dim() < crate::cayley::DIM {
        let c = anisotropic_in_complement(&cur.domain)?;
        let sigma = witt_extend_in_order_unverified(
            cur.domain.basis(),
            &cur.images,
            hint,
            DEFAULT_HEIGHT_CAP,
        )?;
        let c2 = sigma.apply(&c);
        cur = double_unchecked(&cur, &c, &c2)?;
    }
    cur.to_linmap()
}

/// An automorphism sending `x` to `y`, for non-scalar elements with equal
/// norm and trace. A regular `F1 + Fx` is carried to `F1 + Fy` and extended by
/// doubling. A singular one means `x = λ1 + z` with `z^2 = 0`; both nilpotent
/// parts are completed to canonical bases and matched.
pub fn conjugating_automorphism(x: &Octonion, y: &Octonion) -> Result<AutWitness> {
    let map = conjugating_map(x, y, None)?;
    AutWitness::verified(map, vec![(x.clone(), y.clone())])
}

/// Unverified; `hint` is an isometry fixing 1 that callers expect to be
/// close to an answer.
pub(crate) fn conjugating_map(x: &Octonion, y: &Octonion, hint: Option<&LinMap>) -> Result<LinMap> {
    if !x.same_algebra(y) {
        return Err(Error::AlgebraMismatch);
    }
    let alg = x.algebra();
    if x.is_scalar() || y.is_scalar() {
        return Err(Error::PreconditionViolated(
            "points must not be scalar".into(),
        ));
    }
    if x.norm() != y.norm() || x.trace() != y.trace() {
        return Err(Error::PreconditionViolated(format!(
            "norm/trace differ: ({}, {}) vs ({}, {})",
            x.norm(),
            x.trace(),
            y.norm(),
            y.trace()
        )));
    }
    if x == y {
        return Ok(LinMap::identity(alg));
    }
    let one = Octonion::one(alg);
    if restricted_form_is_regular(&[one.clone(), x.clone()]) {
        let psi = PartialIsomorphism::new(vec![one.clone(), x.clone()], vec![one, y.clone()])?;
        match hint {
            Some(h) => extend_near(&psi, h),
            None => extend_to_automorphism(&psi),
        }
    } else {
        let f = alg.field();
        let lambda = if f.characteristic() == 2 {
            frobenius_inverse(&x.norm())?
        } else {
            &x.trace() / &f.from_int(2)
        };
        let shift = Octonion::scalar(alg, &lambda);
        let bx = complete_canonical_basis(&(x - &shift))?;
        let by = complete_canonical_basis(&(y - &shift))?;
        LinMap::from_basis_images(&bx, &by)
    }
}
