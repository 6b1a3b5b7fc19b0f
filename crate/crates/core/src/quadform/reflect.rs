//! Elementary isometries valid in every characteristic.

use super::LinMap;
use crate::cayley::{Octonion, DIM};
use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::linalg::Matrix;

fn map_from_fn(x: &Octonion, f: impl Fn(&Octonion) -> Octonion) -> LinMap {
    let alg = x.algebra();
    let cols: Vec<Vec<FieldElem>> = (0..DIM)
        .map(|j| f(&Octonion::basis(alg, j)).into_coords())
        .collect();
    LinMap::from_matrix(alg, Matrix::from_columns(alg.field(), DIM, &cols))
}

/// `τ_v(x) = x - (n(x, v) / n(v)) v`.
pub fn reflection(v: &Octonion) -> Result<LinMap> {
    let nv = v.norm();
    if nv.is_zero() {
        return Err(Error::IsotropicMirror);
    }
    let inv = nv.inv()?;
    Ok(map_from_fn(v, |x| x - &v.scale(&(&x.polar(v) * &inv))))
}

/// Eichler transvection `E_{u,w}(x) = x + n(x,u) w - n(x,w) u - n(w) n(x,u) u`
/// for isotropic `u` and `w ⟂ u`.
pub fn eichler(u: &Octonion, w: &Octonion) -> Result<LinMap> {
    if !u.norm().is_zero() {
        return Err(Error::PreconditionViolated(
            "Eichler vector u must be isotropic".into(),
        ));
    }
    if !u.polar(w).is_zero() {
        return Err(Error::NotOrthogonal(
            "Eichler vectors must be orthogonal".into(),
        ));
    }
    let nw = w.norm();
    Ok(map_from_fn(u, |x| {
        let xu = x.polar(u);
        let xw = x.polar(w);
        let coef_u = &(-&xw) - &(&nw * &xu);
        &(x + &w.scale(&xu)) + &u.scale(&coef_u)
    }))
}

/// For isotropic `u`, `d` with `n(u, d) = 1`: scales `u` by `mu` and the
/// isotropic partner `d - n(d) u` by `mu^-1`, fixing their orthogonal complement.
pub fn hyperbolic_scaling(u: &Octonion, d: &Octonion, mu: &FieldElem) -> Result<LinMap> {
    if !u.norm().is_zero() || !u.polar(d).is_one() {
        return Err(Error::PreconditionViolated(
            "need n(u) = 0 and n(u, d) = 1".into(),
        ));
    }
    let dp = d - &u.scale(&d.norm());
    let mu_inv = mu.inv()?;
    let one = mu.field().one();
    let a = mu - &one;
    let b = &mu_inv - &one;
    // x = (n(x,dp)) u + (n(x,u)) dp + rest
    Ok(map_from_fn(u, |x| {
        let cu = x.polar(&dp);
        let cd = x.polar(u);
        &(x + &u.scale(&(&cu * &a))) + &dp.scale(&(&cd * &b))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::split_cayley;
    use crate::exactfield::Field;

    #[test]
    fn reflection_examples() {
        let a = split_cayley(Field::gf(3).unwrap());
        let b = |i| Octonion::basis(&a, i);
        let v = &b(0) - &b(1);
        let t = reflection(&v).unwrap();
        assert_eq!(t.apply(&b(0)), b(1));
        assert_eq!(t.apply(&v), -&v);
        assert!(t.is_isometry());
        assert!(t.fixes_unit());
        assert_eq!(reflection(&b(2)).unwrap_err(), Error::IsotropicMirror);
    }

    #[test]
    fn char2_reflection_fixes_mirror() {
        let a = split_cayley(Field::gf(2).unwrap());
        let v = &Octonion::basis(&a, 2) + &Octonion::basis(&a, 5);
        let t = reflection(&v).unwrap();
        assert_eq!(t.apply(&v), v);
        assert!(t.is_isometry());
    }

    #[test]
    fn eichler_and_scaling_are_isometries() {
        for p in [2, 3, 5] {
            let a = split_cayley(Field::gf(p).unwrap());
            let b = |i| Octonion::basis(&a, i);
            let e = eichler(&b(2), &(&b(3) + &b(6))).unwrap();
            assert!(e.is_isometry(), "gf({p})");
            let two = a.field().from_int(if p == 2 { 1 } else { 2 });
            let h = hyperbolic_scaling(&b(4), &(&b(7) + &b(0)), &two).unwrap();
            assert!(h.is_isometry(), "gf({p})");
            assert_eq!(h.apply(&b(4)), b(4).scale(&two));
        }
    }
}
