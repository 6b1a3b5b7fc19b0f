//! Seeded sampling of field elements and octonions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cayley::{AlgebraRef, Octonion, DIM};
use crate::exactfield::{Field, FieldElem};

pub type SeededRng = ChaCha8Rng;

/// Rational samples are `p/q` with `|p| <= RATIONAL_HEIGHT`, `1 <= q <= RATIONAL_HEIGHT`.
pub const RATIONAL_HEIGHT: i64 = 20;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream for trial `index` of a run with `seed`; trials are independent of
/// how they are scheduled.
pub fn trial_rng(seed: u64, index: u64) -> SeededRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

pub fn random_elem(f: Field, rng: &mut impl Rng) -> FieldElem {
    match f.order() {
        Some(q) => f
            .from_index(rng.gen_range(0..q))
            .expect("index below field order"),
        None => {
            let p = rng.gen_range(-RATIONAL_HEIGHT..=RATIONAL_HEIGHT);
            let q = rng.gen_range(1..=RATIONAL_HEIGHT);
            f.fraction(p, q).expect("nonzero denominator")
        }
    }
}

pub fn random_nonzero_elem(f: Field, rng: &mut impl Rng) -> FieldElem {
    loop {
        let x = random_elem(f, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Small rational heights keep exact arithmetic cheap; finite fields are uniform.
pub fn random_octonion(alg: &AlgebraRef, rng: &mut impl Rng) -> Octonion {
    let c = (0..DIM).map(|_| random_elem(alg.field(), rng)).collect();
    Octonion::from_coords(alg, c).expect("coordinates lie in the field")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::split_cayley;

    #[test]
    fn same_seed_same_stream() {
        let a = split_cayley(Field::rationals());
        let x = random_octonion(&a, &mut rng(9));
        let y = random_octonion(&a, &mut rng(9));
        assert_eq!(x, y);
        assert_ne!(x, random_octonion(&a, &mut rng(10)));
    }

    #[test]
    fn trial_streams_differ() {
        let f = Field::gf(97).unwrap();
        let draw = |i| {
            let mut r = trial_rng(1, i);
            (0..8).map(|_| random_elem(f, &mut r)).collect::<Vec<_>>()
        };
        assert_eq!(draw(0), draw(0));
        assert_ne!(draw(0), draw(1));
    }

    #[test]
    fn rational_samples_have_bounded_height() {
        let q = Field::rationals();
        let mut r = rng(3);
        for _ in 0..200 {
            let x = random_elem(q, &mut r);
            let v = x.as_rational().unwrap();
            assert!(v.numer().magnitude() <= &20u32.into());
            assert!(v.denom() <= &20.into());
        }
    }
}
