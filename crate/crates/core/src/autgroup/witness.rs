use crate::cayley::Octonion;
use crate::error::{Error, Result};
use crate::quadform::LinMap;

/// An automorphism together with the points it is claimed to send to given
/// targets. Construction re-verifies both the automorphism property and the
/// point agreement; a failure is an internal error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutWitness {
    points: Vec<(Octonion, Octonion)>,
    map: LinMap,
    products_checked: usize,
}

impl AutWitness {
    pub fn verified(map: LinMap, points: Vec<(Octonion, Octonion)>) -> Result<Self> {
        let w = AutWitness {
            points,
            map,
            products_checked: 64,
        };
        if let Err(msg) = w.check() {
            return Err(Error::Internal(format!(
                "witness failed verification: {msg}"
            )));
        }
        Ok(w)
    }

    fn check(&self) -> std::result::Result<(), String> {
        // fresh map so no cached flag is trusted
        let fresh = LinMap::new(self.map.algebra(), self.map.matrix().clone())
            .map_err(|e| e.to_string())?;
        if let crate::quadform::Evidence::Fails(e) = fresh.automorphism_evidence() {
            return Err(format!("not an automorphism ({e})"));
        }
        for (x, y) in &self.points {
            if fresh.apply(x) != *y {
                return Err(format!("sends {x} to {} instead of {y}", fresh.apply(x)));
            }
        }
        Ok(())
    }

    /// Re-runs the verification from scratch.
    pub fn verify(&self) -> bool {
        self.check().is_ok()
    }

    pub fn map(&self) -> &LinMap {
        &self.map
    }

    pub fn into_map(self) -> LinMap {
        self.map
    }

    pub fn points(&self) -> &[(Octonion, Octonion)] {
        &self.points
    }

    pub fn products_checked(&self) -> usize {
        self.products_checked
    }
}
