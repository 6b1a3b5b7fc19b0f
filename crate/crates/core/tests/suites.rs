use cayley_core::harness::{
    replay, run_suite, AlgebraSource, ClosureGenerators, Evidence, Suite, SuiteConfig,
};
use cayley_core::Error;

fn q_division() -> AlgebraSource {
    AlgebraSource::Doubling {
        c: None,
        mu: vec!["-1".into(), "-1".into(), "-1".into()],
    }
}

#[test]
fn laws_gf2_exhaustive() {
    let r = run_suite(&SuiteConfig::new("gf(2)", Suite::Laws)).unwrap();
    assert!(r.all_pass(), "{}", r.to_human());
    let m = r.check("norm-multiplicativity").unwrap();
    assert!(m.detail.starts_with("65536 instances"), "{}", m.detail);
    assert!(r.check("multiplication-table").unwrap().passed);
}

#[test]
fn injected_lambda_is_rejected_with_replayable_pair() {
    let mut cfg = SuiteConfig::new("gf(5)", Suite::TwoLocalSplit);
    cfg.trials = 5;
    cfg.inject_lambda = Some("2".into());
    let r = run_suite(&cfg).unwrap();
    assert_eq!(r.exit_code(), 1);
    let c = r.check("injected-candidate").unwrap();
    assert!(!c.passed);
    assert!(c.detail.contains("(v1-u1, u3+v2)"), "{}", c.detail);
    assert!(matches!(c.evidence, Some(Evidence::Rejection { .. })));
    assert_eq!(r.checks.iter().filter(|c| !c.passed).count(), 1);
    let alg = cfg.load_algebra().unwrap();
    assert!(replay(&alg, c.evidence.as_ref().unwrap()).unwrap());
    // no candidate: everything passes
    cfg.inject_lambda = None;
    assert!(run_suite(&cfg).unwrap().all_pass());
}

#[test]
fn reports_are_deterministic() {
    let mut cfg = SuiteConfig::new("gf(3)", Suite::LocalAut);
    cfg.trials = 3;
    cfg.seed = 17;
    let a = run_suite(&cfg).unwrap().to_structured();
    let b = run_suite(&cfg).unwrap().to_structured();
    assert_eq!(a, b);
    cfg.seed = 18;
    assert!(run_suite(&cfg).unwrap().all_pass());
}

#[test]
fn division_suite_over_rationals() {
    let mut cfg = SuiteConfig::new("q", Suite::TwoLocalDivision);
    cfg.algebra = q_division();
    cfg.trials = 10;
    let r = run_suite(&cfg).unwrap();
    assert!(r.all_pass(), "{}", r.to_human());
    let d = &r.check("two-point-witnesses").unwrap().detail;
    for b in ["generic", "dependent", "one-scalar", "both-scalar"] {
        assert!(d.contains(b), "{d}");
    }
}

#[test]
fn char2_suite() {
    for (field, extends) in [("gf(2)", false), ("gf(4)", true)] {
        let mut cfg = SuiteConfig::new(field, Suite::Char2);
        cfg.trials = 5;
        let r = run_suite(&cfg).unwrap();
        assert!(r.all_pass(), "{}", r.to_human());
        let d = &r.check("norm-one-obstruction").unwrap().detail;
        assert_eq!(d.contains("extends"), extends, "{d}");
    }
}

#[test]
fn closure_suite_gf2_automorphisms() {
    let r = run_suite(&SuiteConfig::new("gf(2)", Suite::Closure)).unwrap();
    assert!(r.all_pass(), "{}", r.to_human());
    assert!(r.check("order").unwrap().detail.ends_with("order 12096"));
}

#[test]
fn closure_cap_is_reported_as_failure() {
    let mut cfg = SuiteConfig::new("gf(2)", Suite::Closure);
    cfg.generators = ClosureGenerators::Reflections;
    cfg.closure_cap = 1000;
    let r = run_suite(&cfg).unwrap();
    assert_eq!(r.exit_code(), 1);
    assert!(matches!(
        r.check("order").unwrap().evidence,
        Some(Evidence::Order { achieved: 1000, .. })
    ));
}

#[test]
fn config_errors() {
    let cfg = SuiteConfig::new("gf(5)", Suite::Char2);
    assert!(matches!(run_suite(&cfg), Err(Error::ConfigInvalid(_))));
    let mut cfg = SuiteConfig::new("q", Suite::Laws);
    cfg.exhaustive = Some(true);
    assert!(matches!(run_suite(&cfg), Err(Error::ConfigInvalid(_))));
    let mut cfg = SuiteConfig::new("gf(3)", Suite::LocalAut);
    cfg.algebra = AlgebraSource::File {
        path: "/nonexistent/algebra.json".into(),
    };
    assert!(matches!(run_suite(&cfg), Err(Error::ConfigInvalid(_))));
}

#[test]
fn law_failure_replays() {
    use cayley_core::cayley::{split_cayley, CayleyAlgebra, Classification, DIM};
    use cayley_core::exactfield::Field;
    use cayley_core::harness::algebra_to_text;

    let f = Field::gf(3).unwrap();
    let a = split_cayley(f);
    let mut table: Vec<_> = (0..DIM * DIM)
        .map(|k| a.product_terms(k / DIM, k % DIM).clone())
        .collect();
    table[2 * DIM + 3] = vec![(7, f.from_int(2))];
    let bad = CayleyAlgebra::from_raw_parts(
        "corrupt",
        f,
        table,
        a.basis_norms().to_vec(),
        a.polar_matrix().clone(),
        a.unit_coords().to_vec(),
        Classification::Unclassified,
    )
    .unwrap();
    let dir = std::env::temp_dir().join(format!("cayley-suite-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corrupt.json");
    std::fs::write(&path, algebra_to_text(&bad)).unwrap();
    let mut cfg = SuiteConfig::new("gf(3)", Suite::Laws);
    cfg.algebra = AlgebraSource::File { path };
    cfg.trials = 100;
    let r = run_suite(&cfg).unwrap();
    assert_eq!(r.exit_code(), 1);
    let loaded = cfg.load_algebra().unwrap();
    for c in r.checks.iter().filter(|c| !c.passed) {
        assert!(
            replay(&loaded, c.evidence.as_ref().unwrap()).unwrap(),
            "{}",
            c.name
        );
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
