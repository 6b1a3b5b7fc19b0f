//! Automorphisms, local automorphisms and 2-local automorphisms.

mod closure;
mod division;
mod linearize;
mod orbit;
mod split_decide;
mod witness;

pub use closure::{group_closure, packed_gf2, GroupClosure, GroupElements};
pub use division::{
    agree_on_K_and_x, quaternion_table, two_point_witness, two_point_witness_with,
    QuaternionTableParams, WitnessMode,
};
pub use linearize::linearize_samples;
pub use orbit::{
    conjugating_automorphism, extend_iso_doubling, extend_to_automorphism, PartialIsomorphism,
};
pub use split_decide::{split_two_local_decide, Rejection, SplitNormalForm, TwoLocalVerdict};
pub use witness::AutWitness;

use crate::cayley::{AlgebraRef, Octonion};
use crate::error::{Error, Result};
use crate::quadform::{random_orthogonal_stab1, LinMap};
use crate::sample::{random_octonion, trial_rng};

/// Invertible and multiplicative on all 64 basis pairs.
pub fn is_automorphism(m: &LinMap) -> bool {
    m.is_automorphism()
}

/// An isometry of the norm fixing 1.
pub fn is_local_automorphism(m: &LinMap) -> bool {
    m.is_isometry() && m.fixes_unit()
}

pub(crate) fn require_local(m: &LinMap) -> Result<()> {
    if let crate::quadform::Evidence::Fails(e) = m.isometry_evidence() {
        return Err(Error::NotLocalAutomorphism(e.clone()));
    }
    if let crate::quadform::Evidence::Fails(e) = m.fixes_unit_evidence() {
        return Err(Error::NotLocalAutomorphism(e.clone()));
    }
    Ok(())
}

/// An automorphism agreeing with the local automorphism `phi` at `x`: the
/// identity for scalar `x`, otherwise a conjugation of `x` to `phi(x)`.
pub fn one_point_witness(phi: &LinMap, x: &Octonion) -> Result<AutWitness> {
    require_local(phi)?;
    let y = phi.apply(x);
    if x.is_scalar() {
        return AutWitness::verified(LinMap::identity(phi.algebra()), vec![(x.clone(), y)]);
    }
    let m = orbit::conjugating_map(x, &y, Some(phi))?;
    AutWitness::verified(m, vec![(x.clone(), y)])
}

/// A seeded automorphism: the product of `rounds` conjugations, each carrying
/// a random non-scalar point to its image under a random stabilizer of 1.
pub fn random_automorphism(alg: &AlgebraRef, seed: u64, rounds: usize) -> Result<LinMap> {
    let mut m = LinMap::identity(alg);
    for r in 0..rounds {
        let mut rng = trial_rng(seed, r as u64);
        let x = loop {
            let x = random_octonion(alg, &mut rng);
            if !x.is_scalar() {
                break x;
            }
        };
        let stab_seed = rand::Rng::gen::<u64>(&mut rng);
        let s = random_orthogonal_stab1(alg, stab_seed, 3)?;
        let w = orbit::conjugating_map(&x, &s.apply(&x), Some(&s))?;
        m = AutWitness::verified(w, vec![(x.clone(), s.apply(&x))])?
            .into_map()
            .compose(&m);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::split_cayley;
    use crate::exactfield::Field;
    use crate::linalg::Matrix;

    #[test]
    fn predicate_examples() {
        let a = split_cayley(Field::gf(5).unwrap());
        let f = a.field();
        let mut m = Matrix::identity(f, 8);
        m[(4, 4)] = f.from_int(2);
        m[(7, 7)] = f.from_int(3);
        let m = LinMap::new(&a, m).unwrap();
        assert!(is_local_automorphism(&m));
        assert!(!is_automorphism(&m));
        // 1 -> 1 + u1
        let mut imgs: Vec<Octonion> = (0..8).map(|i| Octonion::basis(&a, i)).collect();
        imgs[0] = &imgs[0] + &Octonion::basis(&a, 2);
        let m = LinMap::from_images(&a, &imgs).unwrap();
        assert_eq!(
            m.apply(&Octonion::one(&a)),
            &Octonion::one(&a) + &Octonion::basis(&a, 2)
        );
        assert!(!is_local_automorphism(&m));
    }

    #[test]
    fn random_automorphisms_are_automorphisms() {
        for p in [2, 3] {
            let a = split_cayley(Field::gf(p).unwrap());
            let m = random_automorphism(&a, 4, 3).unwrap();
            assert!(is_automorphism(&m) && is_local_automorphism(&m));
            assert_eq!(m, random_automorphism(&a, 4, 3).unwrap());
        }
    }

    #[test]
    fn one_point_witness_for_stabilizer() {
        let a = split_cayley(Field::gf(3).unwrap());
        let phi = random_orthogonal_stab1(&a, 11, 4).unwrap();
        let x = Octonion::from_ints(&a, [1, 2, 0, 1, 0, 2, 1, 0]);
        let w = one_point_witness(&phi, &x).unwrap();
        assert_eq!(w.map().apply(&x), phi.apply(&x));
    }
}
