use super::{reflection, LinMap, Subspace};
use crate::cayley::{AlgebraRef, Octonion};
use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::sample::{random_elem, rng};

const MIRROR_RETRIES: usize = 1000;
/// Mirror coordinates over Q are integers in `[-MIRROR_HEIGHT, MIRROR_HEIGHT]`
/// so products of reflections stay small.
const MIRROR_HEIGHT: i64 = 2;

/// `1^⊥`, the trace-zero hyperplane.
pub fn unit_complement(alg: &AlgebraRef) -> Subspace {
    Subspace::span(alg, &[Octonion::one(alg)])
        .expect("same algebra")
        .orthogonal_complement()
}

/// Product of `length` reflections in random anisotropic mirrors orthogonal to 1.
pub fn random_orthogonal_stab1(alg: &AlgebraRef, seed: u64, length: usize) -> Result<LinMap> {
    let mut r = rng(seed);
    let f = alg.field();
    let basis = unit_complement(alg).basis().to_vec();
    let mut m = LinMap::identity(alg);
    for _ in 0..length {
        let mut found = None;
        for _ in 0..MIRROR_RETRIES {
            let mut v = Octonion::zero(alg);
            for b in &basis {
                let c = if f.is_finite() {
                    random_elem(f, &mut r)
                } else {
                    f.from_int(rand::Rng::gen_range(&mut r, -MIRROR_HEIGHT..=MIRROR_HEIGHT))
                };
                v = &v + &b.scale(&c);
            }
            if !v.norm().is_zero() {
                found = Some(v);
                break;
            }
        }
        let v = found.ok_or(Error::SamplerExhausted(MIRROR_RETRIES))?;
        m = reflection(&v)?.compose(&m);
    }
    Ok(m)
}

/// Some `v ∈ S` with `n(v) = target`. Tries scaled basis vectors, then points
/// `a + t b` on lines through pairs of basis vectors, then (finite fields) an
/// exhaustive scan of at most 2^16 vectors.
pub fn represent_norm(s: &Subspace, target: &FieldElem) -> Option<Octonion> {
    let f = s.algebra().field();
    let b = s.basis();
    if target.is_zero() {
        return Some(Octonion::zero(s.algebra()));
    }
    for v in b {
        // n(t v) = t^2 n(v)
        let roots = f.quadratic_roots(&v.norm(), &f.zero(), &(-target));
        if let Some(t) = roots.into_iter().next() {
            return Some(v.scale(&t));
        }
    }
    for i in 0..b.len() {
        for j in 0..b.len() {
            if i == j {
                continue;
            }
            // n(b_i + t b_j) = n(b_i) + t n(b_i, b_j) + t^2 n(b_j)
            let c = &b[i].norm() - target;
            let roots = f.quadratic_roots(&b[j].norm(), &b[i].polar(&b[j]), &c);
            if let Some(t) = roots.into_iter().next() {
                return Some(&b[i] + &b[j].scale(&t));
            }
        }
    }
    let els = f.elements().ok()?;
    let q = els.len();
    let total = (q as u64).checked_pow(b.len() as u32)?;
    if total > 1 << 16 {
        return None;
    }
    (1..total).find_map(|mut idx| {
        let mut v = Octonion::zero(s.algebra());
        for bv in b {
            v = &v + &bv.scale(&els[(idx % q as u64) as usize]);
            idx /= q as u64;
        }
        (v.norm() == *target).then_some(v)
    })
}
