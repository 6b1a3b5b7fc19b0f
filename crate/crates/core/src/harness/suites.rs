use rand::Rng;

use crate::autgroup::{
    group_closure, is_automorphism, is_local_automorphism, one_point_witness, packed_gf2,
    random_automorphism, split_two_local_decide, two_point_witness, GroupElements, TwoLocalVerdict,
};
use crate::cayley::{law_check, law_holds, AlgebraRef, LawMode, Octonion, DIM, TABLE1};
use crate::char2lab::{
    decompose, extend_from_c0, extension_criterion, kappa, kernel_phi, random_symplectic,
    reconstruct_c0_map, restrict_to_c0, transvection, Char2Context, Extension, SympDecomp, W_DIM,
};
use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::linalg::Matrix;
use crate::quadform::{random_orthogonal_stab1, reflection, unit_complement, LinMap};
use crate::sample::{random_elem, random_octonion, trial_rng};

use super::config::{ClosureGenerators, Suite, SuiteConfig};
use super::report::{fail, pass, Check, Evidence, Report};
use super::serial::{algebra_doc, map_doc, map_from_doc, rejection_doc, rejection_from_doc};

/// Points drawn per stabilizer element in the local-automorphism suite.
pub const POINTS_PER_MAP: usize = 20;
/// Reflections in a stabilizer sample.
const STAB_LENGTH: usize = 4;

pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    let alg = cfg.load_algebra()?;
    cfg.validate(&alg)?;
    let checks = match cfg.suite {
        Suite::Laws => laws(cfg, &alg)?,
        Suite::LocalAut => local_aut(cfg, &alg)?,
        Suite::TwoLocalSplit => two_local_split(cfg, &alg)?,
        Suite::TwoLocalDivision => two_local_division(cfg, &alg)?,
        Suite::Char2 => char2(cfg, &alg)?,
        Suite::Closure => closure(cfg, &alg)?,
    };
    Ok(Report::new(cfg, algebra_doc(&alg), checks))
}

fn coords(x: &Octonion) -> Vec<String> {
    x.coords().iter().map(|c| c.to_string()).collect()
}

fn parse_point(alg: &AlgebraRef, v: &[String]) -> Result<Octonion> {
    let f = alg.field();
    let c = v
        .iter()
        .map(|s| f.parse_elem(s))
        .collect::<Result<Vec<_>>>()?;
    Octonion::from_coords(alg, c)
}

fn sub_seed(cfg: &SuiteConfig, trial: u64) -> (u64, crate::sample::SeededRng) {
    let mut r = trial_rng(cfg.seed, trial);
    (r.gen(), r)
}

fn non_scalar(alg: &AlgebraRef, r: &mut impl Rng) -> Octonion {
    loop {
        let x = random_octonion(alg, r);
        if !x.is_scalar() {
            return x;
        }
    }
}

/// Basis products that differ from the reference table, in the certified
/// canonical basis.
pub fn table_mismatches(alg: &AlgebraRef) -> Result<Vec<(usize, usize)>> {
    let b = alg.canonical_basis()?;
    let f = alg.field();
    let mut out = Vec::new();
    for i in 0..DIM {
        for j in 0..DIM {
            let mut expected = Octonion::zero(alg);
            for &(r, c, k, s) in TABLE1.iter() {
                if (r, c) == (i, j) {
                    expected = &expected + &b[k].scale(&f.from_int(s as i64));
                }
            }
            if &b[i] * &b[j] != expected {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

fn laws(cfg: &SuiteConfig, alg: &AlgebraRef) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    if alg.is_split() {
        let bad = table_mismatches(alg)?;
        checks.push(if bad.is_empty() {
            pass(
                "multiplication-table",
                "64 canonical basis products match the reference table",
            )
        } else {
            fail(
                "multiplication-table",
                format!("{} basis products differ", bad.len()),
                Evidence::Table { mismatches: bad },
            )
        });
    }
    let exhaustive = cfg.exhaustive.unwrap_or(alg.field().order() == Some(2));
    let mode = if exhaustive {
        LawMode::Exhaustive
    } else {
        LawMode::Sample {
            trials: cfg.trials,
            seed: cfg.seed,
        }
    };
    let report = law_check(alg, mode)?;
    for t in &report.laws {
        let detail = format!(
            "{} instances checked ({}), {} failed",
            t.checked, report.mode, t.failed
        );
        checks.push(match &t.witness {
            None => pass(t.law, detail),
            Some(w) => fail(
                t.law,
                detail,
                Evidence::Law {
                    law: t.law.to_string(),
                    inputs: w.clone(),
                },
            ),
        });
    }
    Ok(checks)
}

fn local_aut(cfg: &SuiteConfig, alg: &AlgebraRef) -> Result<Vec<Check>> {
    let mut first_failure = None;
    let mut checked = 0;
    for t in 0..cfg.trials {
        let (s, mut r) = sub_seed(cfg, t);
        let phi = random_orthogonal_stab1(alg, s, STAB_LENGTH)?;
        for _ in 0..POINTS_PER_MAP {
            let x = random_octonion(alg, &mut r);
            checked += 1;
            let outcome = one_point_witness(&phi, &x).and_then(|w| {
                if w.map().apply(&x) == phi.apply(&x) && is_automorphism(w.map()) {
                    Ok(())
                } else {
                    Err(Error::Internal("witness disagrees at the point".into()))
                }
            });
            if let (Err(e), None) = (outcome, &first_failure) {
                first_failure = Some(Evidence::PointWitness {
                    map: map_doc(&phi),
                    points: vec![coords(&x)],
                    error: e.to_string(),
                });
            }
        }
    }
    let name = "stabilizer-elements-are-local";
    let mut checks = vec![match first_failure {
        None => pass(
            name,
            format!(
                "{checked} points over {} maps have verified one-point witnesses",
                cfg.trials
            ),
        ),
        Some(e) => fail(name, "a point has no verified automorphism witness", e),
    }];
    let mut bad = None;
    for t in 0..cfg.trials {
        let (s, _) = sub_seed(cfg, cfg.trials + t);
        let m = random_automorphism(alg, s, 2)?;
        if !is_local_automorphism(&m) && bad.is_none() {
            bad = Some(m);
        }
    }
    let name = "automorphisms-are-local";
    checks.push(match bad {
        None => pass(
            name,
            format!(
                "{} sampled automorphisms fix 1 and preserve the norm",
                cfg.trials
            ),
        ),
        Some(m) => fail(
            name,
            "an automorphism is not a local automorphism",
            Evidence::Map {
                map: map_doc(&m),
                predicate: "local-automorphism".into(),
            },
        ),
    });
    Ok(checks)
}

/// `u3 -> λ u3, v3 -> λ^-1 v3` in the certified canonical basis.
pub fn diagonal_candidate(alg: &AlgebraRef, lambda: &FieldElem) -> Result<LinMap> {
    let b = alg.canonical_basis()?;
    let inv = lambda.inv()?;
    let mut images = b.clone();
    images[4] = b[4].scale(lambda);
    images[7] = b[7].scale(&inv);
    LinMap::from_basis_images(&b, &images)
}

fn two_local_split(cfg: &SuiteConfig, alg: &AlgebraRef) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut bad = None;
    for t in 0..cfg.trials {
        let (s, _) = sub_seed(cfg, t);
        let m = random_automorphism(alg, s, 2)?;
        let ok = match split_two_local_decide(&m)? {
            TwoLocalVerdict::Automorphism { certificate, .. } => {
                certificate.verify() && certificate.map() == &m
            }
            TwoLocalVerdict::Rejected { .. } => false,
        };
        if !ok && bad.is_none() {
            bad = Some(m);
        }
    }
    let name = "automorphisms-accepted";
    checks.push(match bad {
        None => pass(
            name,
            format!(
                "{} sampled automorphisms accepted with certificates",
                cfg.trials
            ),
        ),
        Some(m) => fail(
            name,
            "an automorphism was not certified",
            Evidence::Map {
                map: map_doc(&m),
                predicate: "two-local-accepts".into(),
            },
        ),
    });
    let (mut accepted, mut rejected, mut bad) = (0, 0, None);
    for t in 0..cfg.trials {
        let (s, _) = sub_seed(cfg, cfg.trials + t);
        let phi = random_orthogonal_stab1(alg, s, STAB_LENGTH)?;
        let verdict = split_two_local_decide(&phi)?;
        let ok = match &verdict {
            TwoLocalVerdict::Automorphism { .. } => {
                accepted += 1;
                is_automorphism(&phi)
            }
            TwoLocalVerdict::Rejected { rejection, .. } => {
                rejected += 1;
                rejection.verify(&phi) && !is_automorphism(&phi)
            }
        };
        if !ok && bad.is_none() {
            bad = Some(phi);
        }
    }
    let name = "stabilizer-verdicts";
    checks.push(match bad {
        None => pass(
            name,
            format!("{accepted} accepted, {rejected} rejected with verified contradictions"),
        ),
        Some(m) => fail(
            name,
            "verdict disagrees with the automorphism predicate",
            Evidence::Map {
                map: map_doc(&m),
                predicate: "verdict-consistent".into(),
            },
        ),
    });
    if let Some(lambda) = cfg.lambda(alg.field())? {
        let cand = diagonal_candidate(alg, &lambda)?;
        let name = "injected-candidate";
        checks.push(match split_two_local_decide(&cand)? {
            TwoLocalVerdict::Automorphism { .. } => pass(
                name,
                format!("diagonal candidate with λ = {lambda} is an automorphism"),
            ),
            TwoLocalVerdict::Rejected { rejection, .. } => {
                let b = alg.canonical_basis()?;
                let named = rejection.x == &b[5] - &b[2] && rejection.y == &b[4] + &b[6];
                fail(
                    name,
                    format!(
                        "diagonal candidate with λ = {lambda} rejected at the pair {}",
                        if named {
                            "(v1-u1, u3+v2)".to_string()
                        } else {
                            format!("({}, {})", rejection.x, rejection.y)
                        }
                    ),
                    Evidence::Rejection {
                        map: map_doc(&cand),
                        rejection: rejection_doc(&rejection),
                    },
                )
            }
        });
    }
    Ok(checks)
}

/// Proof branch exercised by a pair of points in characteristic 0.
fn branch(x: &Octonion, y: &Octonion) -> &'static str {
    if x.is_scalar() && y.is_scalar() {
        "both-scalar"
    } else if x.is_scalar() || y.is_scalar() {
        "one-scalar"
    } else if crate::linalg::rank_of(
        x.field(),
        &[
            Octonion::one(x.algebra()).into_coords(),
            x.coords().to_vec(),
            y.coords().to_vec(),
        ],
    ) < 3
    {
        "dependent"
    } else {
        "generic"
    }
}

/// The `t`-th division trial: a stabilizer element and two points, cycling
/// through generic, dependent and scalar configurations.
pub fn division_trial(alg: &AlgebraRef, seed: u64, t: u64) -> Result<(LinMap, Octonion, Octonion)> {
    let mut r = trial_rng(seed, t);
    let phi = random_orthogonal_stab1(alg, r.gen(), STAB_LENGTH)?;
    let f = alg.field();
    let one = Octonion::one(alg);
    let x = non_scalar(alg, &mut r);
    let (x, y) = match t % 5 {
        0 | 1 => (x, non_scalar(alg, &mut r)),
        2 => {
            let y = &one.scale(&random_elem(f, &mut r)) + &x.scale(&f.from_int(2));
            (x, y)
        }
        3 => (one.scale(&random_elem(f, &mut r)), x),
        _ => (
            one.scale(&random_elem(f, &mut r)),
            one.scale(&random_elem(f, &mut r)),
        ),
    };
    Ok((phi, x, y))
}

fn two_local_division(cfg: &SuiteConfig, alg: &AlgebraRef) -> Result<Vec<Check>> {
    let mut counts = std::collections::BTreeMap::new();
    let mut first_failure = None;
    for t in 0..cfg.trials {
        let (phi, x, y) = division_trial(alg, cfg.seed, t)?;
        *counts.entry(branch(&x, &y)).or_insert(0) += 1;
        let outcome = two_point_witness(&phi, &x, &y).and_then(|w| {
            let m = w.map();
            if m.apply(&x) == phi.apply(&x) && m.apply(&y) == phi.apply(&y) && is_automorphism(m) {
                Ok(())
            } else {
                Err(Error::Internal("witness disagrees with the map".into()))
            }
        });
        if let (Err(e), None) = (outcome, &first_failure) {
            first_failure = Some(Evidence::PointWitness {
                map: map_doc(&phi),
                points: vec![coords(&x), coords(&y)],
                error: e.to_string(),
            });
        }
    }
    let spread: Vec<String> = counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let name = "two-point-witnesses";
    Ok(vec![match first_failure {
        None => pass(
            name,
            format!("{} triples verified ({})", cfg.trials, spread.join(", ")),
        ),
        Some(e) => fail(name, "a pair has no verified two-point witness", e),
    }])
}

/// A genuine decomposition with `n(w_σ) = 1`, from a transvection
/// `w -> w + t n(w,c) c`; exists exactly when 1 is of the form `μ^2 + μ`.
pub fn norm_one_transvection(ctx: &Char2Context) -> Result<Option<SympDecomp>> {
    let alg = ctx.algebra();
    let f = alg.field();
    let scalars = f.elements()?;
    let w = ctx.w_basis();
    for i in 0..W_DIM {
        for j in i..W_DIM {
            for s in &scalars {
                let c = if i == j {
                    w[i].clone()
                } else {
                    &w[i] + &w[j].scale(s)
                };
                for t in scalars.iter().filter(|t| !t.is_zero()) {
                    let sigma = transvection(ctx, &c, t)?;
                    let d = decompose(&reconstruct_c0_map(&sigma, ctx)?, ctx)?;
                    if d.w_sigma_vector(ctx).norm().is_one() {
                        return Ok(Some(d));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `σ = id` with `n(w_σ) = 1`, not checked against any isometry.
pub fn formal_norm_one(ctx: &Char2Context) -> Result<SympDecomp> {
    let w = ctx.w_basis();
    let v = w
        .iter()
        .flat_map(|x| w.iter().map(move |y| x + y))
        .chain(w.iter().cloned())
        .find(|v| v.norm().is_one())
        .ok_or_else(|| Error::Internal("no norm-1 vector in W".into()))?;
    let f = ctx.algebra().field();
    SympDecomp::formal(
        ctx,
        Matrix::identity(f, W_DIM),
        ctx.w_coords(&v).expect("in W"),
    )
}

fn char2(cfg: &SuiteConfig, alg: &AlgebraRef) -> Result<Vec<Check>> {
    let ctx = Char2Context::new(alg)?;
    let f = alg.field();
    let mut checks = Vec::new();
    let ker = kernel_phi(&ctx)?;
    let kap = kappa(&ctx)?;
    let name = "kernel";
    checks.push(
        if ker.len() == 2 && ker[0] == LinMap::identity(alg) && ker[1] == kap {
            pass(name, "the restriction to C0 has kernel {1, κ}")
        } else {
            fail(
                name,
                format!("kernel has {} elements", ker.len()),
                Evidence::Note {
                    text: format!("kernel size {}", ker.len()),
                },
            )
        },
    );
    let mut bad = None;
    for t in 0..cfg.trials {
        let (s, _) = sub_seed(cfg, t);
        let phi = random_orthogonal_stab1(alg, s, STAB_LENGTH)?;
        let d = decompose(&restrict_to_c0(&phi, &ctx)?, &ctx)?;
        let ok = match extend_from_c0(&d, &ctx)? {
            Extension::Extended { map, .. } => map == phi || map == phi.compose(&kap),
            Extension::Obstructed { .. } => false,
        };
        if !ok && bad.is_none() {
            bad = Some(phi);
        }
    }
    let name = "round-trip";
    checks.push(match bad {
        None => pass(
            name,
            format!("{} stabilizer elements recovered up to κ", cfg.trials),
        ),
        Some(m) => fail(
            name,
            "decompose then extend lost the map",
            Evidence::Map {
                map: map_doc(&m),
                predicate: "c0-round-trip".into(),
            },
        ),
    });
    let mut bad = None;
    for t in 0..cfg.trials {
        let (s, _) = sub_seed(cfg, cfg.trials + t);
        let sigma = random_symplectic(&ctx, s, 4)?;
        let d = decompose(&reconstruct_c0_map(&sigma, &ctx)?, &ctx)?;
        let ok = d.sigma == sigma
            && matches!(extend_from_c0(&d, &ctx)?, Extension::Extended { ref map, .. } if map.fixes_unit());
        if !ok && bad.is_none() {
            bad = Some(s);
        }
    }
    let name = "symplectic-parts-extend";
    checks.push(match bad {
        None => pass(
            name,
            format!(
                "{} sampled symplectic maps lift to isometries fixing 1",
                cfg.trials
            ),
        ),
        Some(s) => fail(
            name,
            "a symplectic map did not lift",
            Evidence::Note {
                text: format!("random_symplectic seed {s}, length 4"),
            },
        ),
    });
    let formal = formal_norm_one(&ctx)?;
    let name = "norm-one-obstruction";
    checks.push(if extension_criterion(&formal, &ctx)? {
        match norm_one_transvection(&ctx)? {
            Some(d) => match extend_from_c0(&d, &ctx)? {
                Extension::Extended { mu, .. } => pass(
                    name,
                    format!("1 = μ^2 + μ over {f}; a transvection with n(w_σ) = 1 extends with μ = {mu}"),
                ),
                Extension::Obstructed { .. } => fail(
                    name,
                    "criterion holds but extension failed",
                    Evidence::Note { text: "norm-1 transvection obstructed".into() },
                ),
            },
            None => fail(
                name,
                "no transvection with n(w_σ) = 1 found",
                Evidence::Note { text: "search over pairs of W basis vectors".into() },
            ),
        }
    } else {
        match extend_from_c0(&formal, &ctx)? {
            Extension::Obstructed { .. } if formal.check(&ctx).is_err() => pass(
                name,
                format!("1 is not μ^2 + μ over {f}; the formal decomposition with n(w_σ) = 1 is obstructed"),
            ),
            _ => fail(
                name,
                "formal decomposition with n(w_σ) = 1 was not obstructed",
                Evidence::Note { text: "expected obstruction".into() },
            ),
        }
    });
    Ok(checks)
}

/// Expected orders for the two generator sets, when a formula applies.
pub fn expected_order(q: u128, generators: ClosureGenerators) -> u128 {
    let g2 = q.pow(6) * (q.pow(6) - 1) * (q * q - 1);
    match generators {
        ClosureGenerators::Automorphisms => g2,
        ClosureGenerators::Reflections => {
            2 * q.pow(9) * (q * q - 1) * (q.pow(4) - 1) * (q.pow(6) - 1)
        }
    }
}

/// Closure generators: four seeded automorphisms, or one reflection per
/// anisotropic line of `1^⊥` (all of them when there are at most 2^16
/// vectors, else `trials` random ones).
pub fn closure_generators(cfg: &SuiteConfig, alg: &AlgebraRef) -> Result<Vec<LinMap>> {
    match cfg.generators {
        ClosureGenerators::Automorphisms => (0..4)
            .map(|s| random_automorphism(alg, cfg.seed.wrapping_add(s), 2))
            .collect(),
        ClosureGenerators::Reflections => {
            let f = alg.field();
            let q = f.order().expect("finite field");
            let basis = unit_complement(alg).basis().to_vec();
            let dim = basis.len() as u32;
            let mut mirrors = Vec::new();
            if (q as u128).pow(dim) <= 1 << 16 {
                let els = f.elements()?;
                for idx in 1..q.pow(dim) {
                    let c: Vec<&FieldElem> = (0..dim).map(|i| &els[idx / q.pow(i) % q]).collect();
                    // one representative per line: last nonzero coordinate is 1
                    if !c
                        .iter()
                        .rev()
                        .find(|x| !x.is_zero())
                        .is_some_and(|x| x.is_one())
                    {
                        continue;
                    }
                    let mut v = Octonion::zero(alg);
                    for (b, x) in basis.iter().zip(c) {
                        v = &v + &b.scale(x);
                    }
                    if !v.norm().is_zero() {
                        mirrors.push(v);
                    }
                }
            } else {
                for t in 0..cfg.trials {
                    let mut r = trial_rng(cfg.seed, t);
                    loop {
                        let mut v = Octonion::zero(alg);
                        for b in &basis {
                            v = &v + &b.scale(&random_elem(f, &mut r));
                        }
                        if !v.norm().is_zero() {
                            mirrors.push(v);
                            break;
                        }
                    }
                }
            }
            mirrors.iter().map(reflection).collect()
        }
    }
}

fn closure(cfg: &SuiteConfig, alg: &AlgebraRef) -> Result<Vec<Check>> {
    let q = alg.field().order().expect("validated finite") as u128;
    let gens = closure_generators(cfg, alg)?;
    let expected = expected_order(q, cfg.generators);
    let g = match group_closure(&gens, cfg.closure_cap) {
        Ok(g) => g,
        Err(Error::CapExceeded(cap)) => {
            return Ok(vec![fail(
                "order",
                format!("more than {cap} elements; expected {expected}"),
                Evidence::Order {
                    achieved: cap,
                    expected: Some(expected),
                },
            )])
        }
        Err(e) => return Err(e),
    };
    let order = g.order();
    let mut checks = Vec::new();
    let label = match cfg.generators {
        ClosureGenerators::Automorphisms => "automorphism generators",
        ClosureGenerators::Reflections => "1-fixing reflections",
    };
    checks.push(if order as u128 == expected {
        pass(
            "order",
            format!("{} {label} generate a group of order {order}", gens.len()),
        )
    } else {
        fail(
            "order",
            format!(
                "{label}: achieved order {order}, expected {expected}{}",
                if expected % order as u128 == 0 {
                    " (proper subgroup)"
                } else {
                    ""
                }
            ),
            Evidence::Order {
                achieved: order,
                expected: Some(expected),
            },
        )
    });
    let (pred, predicate): (fn(&LinMap) -> bool, &str) = match cfg.generators {
        ClosureGenerators::Automorphisms => (is_automorphism, "automorphism"),
        ClosureGenerators::Reflections => (is_local_automorphism, "local-automorphism"),
    };
    let bad = match (g.elements(), cfg.generators) {
        (GroupElements::Packed(words), ClosureGenerators::Reflections) => {
            let table = packed_gf2::NormTable::new(alg)?;
            words
                .iter()
                .position(|&w| !(table.is_isometry(w) && table.fixes_unit(w)))
        }
        _ => (0..order).find(|&i| !pred(&g.map(i))),
    };
    let name = "membership";
    checks.push(match bad {
        None => pass(
            name,
            format!("all {order} elements satisfy the {predicate} predicate"),
        ),
        Some(i) => fail(
            name,
            format!("element {i} fails the {predicate} predicate"),
            Evidence::Map {
                map: map_doc(&g.map(i)),
                predicate: predicate.into(),
            },
        ),
    });
    Ok(checks)
}

/// Replays failure evidence through the originating verifier; `true` when
/// the failure reproduces. Orders and notes are reproduced by rerunning the
/// suite from the report's config.
pub fn replay(alg: &AlgebraRef, evidence: &Evidence) -> Result<bool> {
    match evidence {
        Evidence::Law { law, inputs } => {
            let pts = inputs
                .iter()
                .map(|v| parse_point(alg, v))
                .collect::<Result<Vec<_>>>()?;
            Ok(!law_holds(law, &pts)?)
        }
        Evidence::Table { .. } => Ok(!table_mismatches(alg)?.is_empty()),
        Evidence::PointWitness { map, points, .. } => {
            let phi = map_from_doc(alg, map)?;
            let pts = points
                .iter()
                .map(|v| parse_point(alg, v))
                .collect::<Result<Vec<_>>>()?;
            let w = match pts.as_slice() {
                [x] => one_point_witness(&phi, x),
                [x, y] => two_point_witness(&phi, x, y),
                _ => return Err(Error::PreconditionViolated("one or two points".into())),
            };
            Ok(match w {
                Err(_) => true,
                Ok(w) => pts.iter().any(|p| w.map().apply(p) != phi.apply(p)),
            })
        }
        Evidence::Map { map, predicate } => {
            let m = map_from_doc(alg, map)?;
            let holds = match predicate.as_str() {
                "automorphism" => is_automorphism(&m),
                "local-automorphism" => is_local_automorphism(&m),
                "two-local-accepts" => split_two_local_decide(&m)?.is_automorphism(),
                "verdict-consistent" => {
                    split_two_local_decide(&m)?.is_automorphism() == is_automorphism(&m)
                }
                "c0-round-trip" => {
                    let ctx = Char2Context::new(alg)?;
                    let d = decompose(&restrict_to_c0(&m, &ctx)?, &ctx)?;
                    match extend_from_c0(&d, &ctx)? {
                        Extension::Extended { map, .. } => {
                            map == m || map == m.compose(&kappa(&ctx)?)
                        }
                        Extension::Obstructed { .. } => false,
                    }
                }
                other => {
                    return Err(Error::PreconditionViolated(format!(
                        "unknown predicate {other:?}"
                    )))
                }
            };
            Ok(!holds)
        }
        Evidence::Rejection { map, rejection } => {
            let m = map_from_doc(alg, map)?;
            Ok(rejection_from_doc(alg, rejection)?.verify(&m))
        }
        Evidence::Samples { .. } | Evidence::Order { .. } | Evidence::Note { .. } => Err(
            Error::Unsupported("rerun the suite from the report's config".into()),
        ),
    }
}
