//! Automorphisms agreeing with a local automorphism on two points.

use super::orbit::{
    conjugating_map, double_unchecked, extend_near, extend_to_automorphism, PartialIsomorphism,
};
use super::{require_local, AutWitness};
use crate::cayley::{Octonion, SubalgebraBasis};
use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::linalg::Matrix;
use crate::quadform::{witt_extend, LinMap, PartialIsometry, Subspace};

/// `Strict` requires a division-certified algebra. `Experimental` accepts any
/// algebra; outputs are still verified but no success guarantee is claimed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WitnessMode {
    #[default]
    Strict,
    Experimental,
}

/// Norms and polar value of a pair of trace-zero elements in characteristic 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionTableParams {
    pub alpha: FieldElem,
    pub beta: FieldElem,
    pub gamma: FieldElem,
}

impl QuaternionTableParams {
    pub fn of(x: &Octonion, y: &Octonion) -> Self {
        QuaternionTableParams {
            alpha: x.norm(),
            beta: y.norm(),
            gamma: x.polar(y),
        }
    }
}

/// Products of the basis `(1, xy, x, y)` in characteristic 2 when
/// `t(x) = t(y) = 0`; entry `[i][j]` holds the coordinates of `b_i b_j`.
pub fn quaternion_table(p: &QuaternionTableParams) -> Result<Vec<Vec<[FieldElem; 4]>>> {
    let f = p.alpha.field();
    if f.characteristic() != 2 {
        return Err(Error::WrongCharacteristic(
            "the table is for characteristic 2".into(),
        ));
    }
    let (a, b, g) = (&p.alpha, &p.beta, &p.gamma);
    let z = f.zero();
    let o = f.one();
    let unit = |k: usize| -> [FieldElem; 4] {
        let mut v = [z.clone(), z.clone(), z.clone(), z.clone()];
        v[k] = o.clone();
        v
    };
    let v = |c0: &FieldElem, c1: &FieldElem, c2: &FieldElem, c3: &FieldElem| {
        [c0.clone(), c1.clone(), c2.clone(), c3.clone()]
    };
    Ok(vec![
        vec![unit(0), unit(1), unit(2), unit(3)],
        vec![
            unit(1),
            v(&(a * b), g, &z, &z),
            v(&z, &z, g, a),
            v(&z, &z, b, &z),
        ],
        vec![unit(2), v(&z, &z, &z, a), v(a, &z, &z, &z), unit(1)],
        vec![unit(3), v(&z, &z, b, g), v(g, &o, &z, &z), v(b, &z, &z, &z)],
    ])
}

fn check_mode(phi: &LinMap, mode: WitnessMode) -> Result<()> {
    if mode == WitnessMode::Strict && !phi.algebra().is_division() {
        return Err(Error::NotDivision);
    }
    require_local(phi)
}

/// An automorphism agreeing with the local automorphism `phi` on the
/// two-dimensional composition subalgebra `k` and at `x`.
#[allow(non_snake_case)]
pub fn agree_on_K_and_x(phi: &LinMap, k: &SubalgebraBasis, x: &Octonion) -> Result<AutWitness> {
    agree_with_mode(phi, k, x, WitnessMode::Strict)
}

pub(crate) fn agree_with_mode(
    phi: &LinMap,
    k: &SubalgebraBasis,
    x: &Octonion,
    mode: WitnessMode,
) -> Result<AutWitness> {
    let psi = agree_map(phi, k, x, mode)?;
    let mut points: Vec<(Octonion, Octonion)> = k
        .basis()
        .iter()
        .map(|b| (b.clone(), phi.apply(b)))
        .collect();
    points.push((x.clone(), phi.apply(x)));
    AutWitness::verified(psi, points)
}

fn agree_map(phi: &LinMap, k: &SubalgebraBasis, x: &Octonion, mode: WitnessMode) -> Result<LinMap> {
    check_mode(phi, mode)?;
    if k.dim() != 2 {
        return Err(Error::NotCompositionSubalgebra(format!(
            "dimension {} is not 2",
            k.dim()
        )));
    }
    let alg = phi.algebra();
    let a = k
        .basis()
        .iter()
        .find(|b| !b.is_scalar())
        .ok_or_else(|| Error::NotCompositionSubalgebra("no non-scalar basis vector".into()))?;
    // x = b + y with b ∈ K, y ⟂ K
    let one = Octonion::one(alg);
    let kb = [one.clone(), a.clone()];
    let f = alg.field();
    let mut g = Matrix::zeros(f, 2, 2);
    for i in 0..2 {
        for j in 0..2 {
            g[(i, j)] = kb[i].polar(&kb[j]);
        }
    }
    let c = g
        .solve(&[x.polar(&kb[0]), x.polar(&kb[1])])
        .ok_or_else(|| Error::NotCompositionSubalgebra("restricted norm is singular".into()))?;
    let bpart = &one.scale(&c[0]) + &a.scale(&c[1]);
    let y = x - &bpart;
    // K -> phi(K), doubled by y -> phi(y), then completed near phi itself
    let on_k = PartialIsomorphism::new(kb.to_vec(), vec![one, phi.apply(a)])?;
    if y.is_zero() {
        extend_near(&on_k, phi)
    } else {
        extend_near(&double_unchecked(&on_k, &y, &phi.apply(&y))?, phi)
    }
}

/// An automorphism agreeing with the local automorphism `phi` at `x` and `y`
/// on a division-certified algebra.
pub fn two_point_witness(phi: &LinMap, x: &Octonion, y: &Octonion) -> Result<AutWitness> {
    two_point_witness_with(phi, x, y, WitnessMode::Strict)
}

/// Case split: a point in the span of 1 and the other reduces to one point;
/// a point with nonzero trace (or any point off characteristic 2) generates
/// a regular `K`; in characteristic 2 with both traces zero the pair spans a
/// quaternion subalgebra when `n(x, y) != 0`, and a totally isotropic space
/// otherwise, which is handled through an auxiliary `u` with `n(u, 1) = 1`.
pub fn two_point_witness_with(
    phi: &LinMap,
    x: &Octonion,
    y: &Octonion,
    mode: WitnessMode,
) -> Result<AutWitness> {
    check_mode(phi, mode)?;
    if !x.same_algebra(y) || !std::sync::Arc::ptr_eq(x.algebra(), phi.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let alg = phi.algebra();
    let one = Octonion::one(alg);
    let (xp, yp) = (phi.apply(x), phi.apply(y));
    let points = vec![(x.clone(), xp.clone()), (y.clone(), yp.clone())];
    let in_span = |p: &Octonion, q: &Octonion| {
        Subspace::span(alg, &[one.clone(), q.clone()]).map(|s| s.contains(p))
    };
    if x.is_scalar() && y.is_scalar() {
        return AutWitness::verified(LinMap::identity(alg), points);
    }
    if y.is_scalar() || in_span(y, x)? {
        return AutWitness::verified(conjugating_map(x, &xp, Some(phi))?, points);
    }
    if x.is_scalar() || in_span(x, y)? {
        return AutWitness::verified(conjugating_map(y, &yp, Some(phi))?, points);
    }
    let char2 = alg.field().characteristic() == 2;
    let regular_k = |p: &Octonion| SubalgebraBasis::new(vec![one.clone(), p.clone()]);
    if !char2 || !x.trace().is_zero() {
        if let Ok(k) = regular_k(x) {
            return AutWitness::verified(agree_map(phi, &k, y, mode)?, points);
        }
    }
    if !char2 || !y.trace().is_zero() {
        let k = regular_k(y)?;
        return AutWitness::verified(agree_map(phi, &k, x, mode)?, points);
    }
    let gamma = x.polar(y);
    let xy = x * y;
    let map = if !gamma.is_zero() {
        let q = vec![one.clone(), xy, x.clone(), y.clone()];
        let q2 = vec![one.clone(), &xp * &yp, xp.clone(), yp.clone()];
        extend_to_automorphism(&PartialIsomorphism::new(q, q2)?)?
    } else {
        let s = [one.clone(), x.clone(), y.clone(), xy.clone()];
        let s2 = [one.clone(), xp.clone(), yp.clone(), &xp * &yp];
        let sigma = witt_extend(&PartialIsometry::new(&s, &s2)?)?;
        let u = auxiliary_u(&one, x, y, &xy)?;
        let k = PartialIsomorphism::new(
            vec![one.clone(), u.clone()],
            vec![one.clone(), sigma.apply(&u)],
        )?;
        let k = double_unchecked(&k, x, &xp)?;
        double_unchecked(&k, y, &yp)?.to_linmap()?
    };
    AutWitness::verified(map, points)
}

/// `u` with `n(u, x) = n(u, y) = n(u, xy) = 0` and `n(u, 1) = 1`.
fn auxiliary_u(one: &Octonion, x: &Octonion, y: &Octonion, xy: &Octonion) -> Result<Octonion> {
    let alg = one.algebra();
    let f = alg.field();
    let conds = [x, y, xy, one];
    let data: Vec<FieldElem> = conds
        .iter()
        .flat_map(|c| (0..8).map(move |i| c.polar(&Octonion::basis(alg, i))))
        .collect();
    let m = Matrix::from_rows(f, 4, 8, data);
    let sol = m
        .solve(&[f.zero(), f.zero(), f.zero(), f.one()])
        .ok_or_else(|| Error::ExtensionSearchFailed("no auxiliary element u".into()))?;
    Octonion::from_coords(alg, sol)
}
