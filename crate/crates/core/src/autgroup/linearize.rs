use std::sync::Arc;

use crate::cayley::{Octonion, DIM};
use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::linalg::rank_of;
use crate::quadform::LinMap;

/// The linear map sending each `x_i` to `y_i`, or `None` when the assignment
/// is not linear. The first eight independent `x_i` form the basis; norms are
/// checked at every point and polar values between the chosen basis points.
pub fn linearize_samples(pairs: &[(Octonion, Octonion)]) -> Result<Option<LinMap>> {
    let Some((first, _)) = pairs.first() else {
        return Err(Error::UnderdeterminedSpan(0));
    };
    let alg = first.algebra().clone();
    if pairs
        .iter()
        .any(|(x, y)| !Arc::ptr_eq(x.algebra(), &alg) || !Arc::ptr_eq(y.algebra(), &alg))
    {
        return Err(Error::AlgebraMismatch);
    }
    for (i, (x, y)) in pairs.iter().enumerate() {
        if x.norm() != y.norm() {
            return Err(Error::PreconditionViolated(format!(
                "norm differs at sample {i}"
            )));
        }
    }
    let f = alg.field();
    let mut chosen: Vec<usize> = Vec::new();
    let mut coords: Vec<Vec<FieldElem>> = Vec::new();
    for (i, (x, _)) in pairs.iter().enumerate() {
        if chosen.len() == DIM {
            break;
        }
        coords.push(x.coords().to_vec());
        if rank_of(f, &coords) == coords.len() {
            chosen.push(i);
        } else {
            coords.pop();
        }
    }
    if chosen.len() < DIM {
        return Err(Error::UnderdeterminedSpan(chosen.len()));
    }
    for (a, &i) in chosen.iter().enumerate() {
        for &j in &chosen[a + 1..] {
            if pairs[i].0.polar(&pairs[j].0) != pairs[i].1.polar(&pairs[j].1) {
                return Err(Error::PreconditionViolated(format!(
                    "polar value differs at samples ({i},{j})"
                )));
            }
        }
    }
    let domain: Vec<Octonion> = chosen.iter().map(|&i| pairs[i].0.clone()).collect();
    let images: Vec<Octonion> = chosen.iter().map(|&i| pairs[i].1.clone()).collect();
    let m = LinMap::from_basis_images(&domain, &images)?;
    Ok(pairs.iter().all(|(x, y)| m.apply(x) == *y).then_some(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::random_automorphism;
    use crate::cayley::split_cayley;
    use crate::exactfield::Field;

    #[test]
    fn recovers_automorphism_and_detects_inconsistency() {
        let a = split_cayley(Field::gf(3).unwrap());
        let m = random_automorphism(&a, 2, 2).unwrap();
        let m2 = random_automorphism(&a, 3, 2).unwrap();
        assert_ne!(m, m2);
        let mut pairs: Vec<(Octonion, Octonion)> = (0..DIM)
            .map(|i| {
                let b = Octonion::basis(&a, i);
                let img = m.apply(&b);
                (b, img)
            })
            .collect();
        assert_eq!(linearize_samples(&pairs).unwrap().unwrap(), m);
        let extra = Octonion::from_ints(&a, [1, 2, 0, 1, 1, 0, 2, 1]);
        pairs.push((extra.clone(), m.apply(&extra)));
        assert_eq!(linearize_samples(&pairs).unwrap().unwrap(), m);
        // ninth point taken from the other automorphism
        let extra = (0..)
            .map(|k| Octonion::from_ints(&a, [k, 1, 2, 0, 1, k + 1, 0, 2]))
            .find(|x| m.apply(x) != m2.apply(x))
            .unwrap();
        pairs[8] = (extra.clone(), m2.apply(&extra));
        assert_eq!(linearize_samples(&pairs).unwrap(), None);
    }

    #[test]
    fn errors() {
        let a = split_cayley(Field::gf(5).unwrap());
        let b = |i| Octonion::basis(&a, i);
        assert_eq!(
            linearize_samples(&[(b(2), b(3))]).unwrap_err(),
            Error::UnderdeterminedSpan(1)
        );
        assert!(matches!(
            linearize_samples(&[(b(0), Octonion::one(&a))]),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
