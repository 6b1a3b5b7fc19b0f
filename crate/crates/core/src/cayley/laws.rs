use serde::Serialize;

use super::{enumerate_elements, linearized_identity_check, AlgebraRef, Octonion};
use crate::error::{Error, Result};
use crate::sample::{random_octonion, trial_rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawMode {
    /// Every element and every ordered pair; at most 2^24 pairs.
    Exhaustive,
    Sample {
        trials: u64,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawTally {
    pub law: &'static str,
    pub checked: u64,
    pub failed: u64,
    /// First failing input (one or two elements), as coordinate strings.
    pub witness: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub algebra: String,
    pub mode: String,
    pub laws: Vec<LawTally>,
}

impl LawReport {
    pub fn all_pass(&self) -> bool {
        self.laws.iter().all(|t| t.failed == 0)
    }

    pub fn tally(&self, law: &str) -> Option<&LawTally> {
        self.laws.iter().find(|t| t.law == law)
    }
}

pub const UNIT: &str = "unit";
pub const DEGREE_TWO: &str = "degree-2";
pub const INVOLUTION: &str = "involution";
pub const MULTIPLICATIVITY: &str = "norm-multiplicativity";
pub const LINEARIZED: &str = "linearized-identity";
pub const ALTERNATIVITY: &str = "alternativity";

pub const LAW_NAMES: [&str; 6] = [
    UNIT,
    DEGREE_TWO,
    INVOLUTION,
    MULTIPLICATIVITY,
    LINEARIZED,
    ALTERNATIVITY,
];

struct Tallies(Vec<LawTally>);

impl Tallies {
    fn new() -> Self {
        Tallies(
            LAW_NAMES
                .iter()
                .map(|&law| LawTally {
                    law,
                    checked: 0,
                    failed: 0,
                    witness: None,
                })
                .collect(),
        )
    }

    fn record(&mut self, law: &str, ok: bool, inputs: &[&Octonion]) {
        let t = self.0.iter_mut().find(|t| t.law == law).expect("known law");
        t.checked += 1;
        if !ok {
            t.failed += 1;
            if t.witness.is_none() {
                t.witness = Some(
                    inputs
                        .iter()
                        .map(|x| x.coords().iter().map(|c| c.to_string()).collect())
                        .collect(),
                );
            }
        }
    }
}

fn check_one(t: &mut Tallies, x: &Octonion) {
    let alg = x.algebra();
    let one = Octonion::one(alg);
    t.record(UNIT, &one * x == *x && x * &one == *x, &[x]);
    let d2 = &(&(x * x) - &x.scale(&x.trace())) + &Octonion::scalar(alg, &x.norm());
    t.record(DEGREE_TWO, d2.is_zero(), &[x]);
    let c = x.conj();
    let n1 = Octonion::scalar(alg, &x.norm());
    t.record(
        INVOLUTION,
        c.conj() == *x && x * &c == n1 && &c * x == n1,
        &[x],
    );
}

fn check_pair(t: &mut Tallies, x: &Octonion, y: &Octonion) {
    let xy = x * y;
    t.record(MULTIPLICATIVITY, xy.norm() == x.norm() * y.norm(), &[x, y]);
    let lin = linearized_identity_check(x, y).unwrap_or(false);
    t.record(LINEARIZED, lin, &[x, y]);
    let xx = x * x;
    let left = &xx * y == x * &xy;
    let right = &(y * x) * x == y * &xx;
    t.record(ALTERNATIVITY, left && right, &[x, y]);
    let anti = xy.conj() == &y.conj() * &x.conj();
    t.record(INVOLUTION, anti && xy.trace() == (y * x).trace(), &[x, y]);
}

/// Re-runs one law on a recorded input: one element for the unit and
/// degree-2 laws, two for the others. The involution law accepts either.
pub fn law_holds(law: &str, inputs: &[Octonion]) -> Result<bool> {
    if !LAW_NAMES.contains(&law) {
        return Err(Error::PreconditionViolated(format!("unknown law {law:?}")));
    }
    let mut t = Tallies::new();
    match inputs {
        [x] => check_one(&mut t, x),
        [x, y] if x.same_algebra(y) => check_pair(&mut t, x, y),
        [_, _] => return Err(Error::AlgebraMismatch),
        _ => {
            return Err(Error::PreconditionViolated(
                "laws take one or two inputs".into(),
            ))
        }
    }
    let tally = t.0.iter().find(|t| t.law == law).expect("known law");
    if tally.checked == 0 {
        return Err(Error::PreconditionViolated(format!(
            "law {law:?} takes {} input(s)",
            if inputs.len() == 1 { 2 } else { 1 }
        )));
    }
    Ok(tally.failed == 0)
}

/// Counts pass/fail of the algebra laws on all elements (exhaustive mode) or
/// on seeded random samples; each trial draws a fresh pair from its own stream.
pub fn law_check(alg: &AlgebraRef, mode: LawMode) -> Result<LawReport> {
    let mut t = Tallies::new();
    let label = match mode {
        LawMode::Exhaustive => {
            let q = alg.field().order().unwrap_or(usize::MAX);
            let pairs = (q as u128).saturating_pow(16);
            if pairs > 1 << 24 {
                return Err(Error::TooLargeForExhaustive(format!(
                    "{} element pairs over {}",
                    if q == usize::MAX {
                        "infinitely many".to_string()
                    } else {
                        format!("{q}^16")
                    },
                    alg.field()
                )));
            }
            let els = enumerate_elements(alg)?;
            for x in &els {
                check_one(&mut t, x);
                for y in &els {
                    check_pair(&mut t, x, y);
                }
            }
            "exhaustive".to_string()
        }
        LawMode::Sample { trials, seed } => {
            for i in 0..trials {
                let mut r = trial_rng(seed, i);
                let x = random_octonion(alg, &mut r);
                let y = random_octonion(alg, &mut r);
                check_one(&mut t, &x);
                check_pair(&mut t, &x, &y);
            }
            format!("sample(n={trials}, seed={seed})")
        }
    };
    Ok(LawReport {
        algebra: alg.id().to_string(),
        mode: label,
        laws: t.0,
    })
}
